from typing import Optional


class ModelParsingError(ValueError):
    def __init__(self, msg="The model file could not be parsed", line: Optional[int] = None):
        self.line = line
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)

__all__ = [
    "parse_model",
    "format_model",
    "ModelFile",
    "exceptions",
]
from lib.parse._model import parse_model, format_model
from lib.parse.models import ModelFile

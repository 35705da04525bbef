__all__ = ["parse", "emit"]
import lib.parse
import lib.emit

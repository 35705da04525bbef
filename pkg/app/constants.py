import os
from collections import namedtuple

_Verbosity = namedtuple("Verbosity", ["quiet", "info", "debug"])


class ExitCode:
    OK = 0
    VERIFICATION_FAILED = 1
    INPUT_ERROR = 2
    RESOURCE_LIMIT = 3


VERBOSITY = _Verbosity("WARNING", "INFO", "DEBUG")

# oracle scale guard, overridable for bigger desk machines
DEFAULT_ENUMERATION_CAP = int(os.environ.get("PRNFOLD_ENUMERATION_CAP", 10**7))

DEFAULT_RANDOM_PARAM_CAP = 2048
DEFAULT_TRIALS = 100

LOG_FOLDER = "log"
LOG_FILE = "prnfold.log"

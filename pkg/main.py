"""
    This file serves as an entrypoint to prnfold.
    After ensuring a "log" folder, main.py runs the `prnfold` command group with a debug log file
    in that folder, so `python main.py unfold models/running.prn` behaves like the installed
    `prnfold unfold models/running.prn`.

    You can watch the logs by running `tail -f log/prnfold.log` on the command line.
"""
import os
import sys

from app.app import cli
from app.constants import LOG_FILE, LOG_FOLDER

if __name__ == "__main__":
    if not os.path.exists(LOG_FOLDER):
        os.makedirs(LOG_FOLDER)
    args = sys.argv[1:]
    if "--log-file" not in args:
        args = ["--log-file", os.path.join(LOG_FOLDER, LOG_FILE), *args]
    cli.main(args=args, prog_name="prnfold")

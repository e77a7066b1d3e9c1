"""
Opportunistic beamforming toolkit

Script entry point, equivalent to the installed `obsim` command.

    uv run python run.py table1
    uv run python run.py throughput --frame grassmannian:3x7 --k 8:1024 --slots 20000
"""

import sys

from app.cli import main
from app.config import config, logger

if __name__ == "__main__":
    logger.debug(f"Environment: {config.environment}, debug: {config.debug}")
    sys.exit(main())

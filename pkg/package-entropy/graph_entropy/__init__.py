import os
from importlib.metadata import version, PackageNotFoundError

from loguru import logger

PACKAGE_ROOT = os.path.dirname(__file__)
CONFIG_DIR = os.path.join(PACKAGE_ROOT, "config")

try:
    __version__ = version("graph_entropy")
except PackageNotFoundError:
    __version__ = "unknown"

# Library stays silent until an application enables it.
logger.disable("graph_entropy")

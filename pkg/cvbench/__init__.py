"""cvbench package init"""
from importlib.metadata import version, PackageNotFoundError
try:
    __version__ = version("cvbench")
except PackageNotFoundError:
    __version__ = "0.dev0"

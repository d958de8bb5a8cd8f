from .logger import app_logger
from .errors import CvbenchError

__all__ = ['app_logger', 'CvbenchError']

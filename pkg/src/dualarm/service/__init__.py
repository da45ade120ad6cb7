"""JSON/HTTP service wrapping the core package."""

from .api import RobotService
from .app import create_app
from .client import HttpClient, LocalClient

__all__ = ["RobotService", "create_app", "HttpClient", "LocalClient"]

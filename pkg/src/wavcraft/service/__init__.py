"""Session service: file-backed workspace and HTTP API."""

from .app import ApiException, ServiceConfig, create_app, run_server
from .workspace import Workspace, atomic_write_json

__all__ = [
    "ApiException",
    "ServiceConfig",
    "Workspace",
    "atomic_write_json",
    "create_app",
    "run_server",
]

"""Command line interface."""

from .main import cli, main
from .manifest import MANIFEST_SUFFIX, RunManifest, manifest_path

__all__ = ["cli", "main", "RunManifest", "manifest_path", "MANIFEST_SUFFIX"]

"""
File schema definitions for trace ingestion.
"""

from . import sidecar

__all__ = ['sidecar']

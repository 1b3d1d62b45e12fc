"""
Utility functions and helpers.

This package includes:
- Mathematical helpers
- Visualization tools (``src.utils.plotting``, imported on demand because it
  selects the non-interactive matplotlib backend)
"""

from .math_utils import *

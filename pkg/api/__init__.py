"""
arcade Python API
Programmatic access to the constructions, checks and games
"""

from api.core import ArcadeAPI
from utils.config import ENGINE_VERSION

__all__ = ['ArcadeAPI']
__version__ = ENGINE_VERSION

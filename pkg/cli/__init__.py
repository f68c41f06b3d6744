"""
CLI Module
Menu-driven game setup, play and replay for arcade
"""

from cli.interactive import InteractiveCLI

__all__ = ['InteractiveCLI']

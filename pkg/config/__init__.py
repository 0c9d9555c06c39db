"""
Configuration module for the isogeny sum verifier
"""

from .settings import Config

__all__ = ['Config']

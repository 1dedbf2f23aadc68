"""
Core package for dependency injection and service management
"""

from .service_container import ServiceContainer

__all__ = ['ServiceContainer']

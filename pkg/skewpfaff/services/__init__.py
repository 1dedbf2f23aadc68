"""
Services package: the algebra behind every command
"""

from .classifier_service import ClassifierService
from .tangent import TangentService
from .strata_service import StrataService
from .closure_service import ClosureService

__all__ = [
    'ClassifierService',
    'TangentService',
    'StrataService',
    'ClosureService'
]

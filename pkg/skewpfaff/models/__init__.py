"""
Data models for the skew Pfaffian toolkit
"""

from .polynomial import X_NAMES, NX, x_ring, extended_ring, monomial_basis
from .linear import DegreePiece, QMatrix
from .matrix import SkewLinMatrix, SyzygyMatrix, PointIdeal, upper_pairs
from .jet import JetPolynomial, JetMatrix
from .report import (
    LABELS, MatrixType, Fingerprint, NormalForm, TangentSystem, ConeQuadrics,
    ClosureVerdict, DeformationFamily, CheckResult, RunReport
)

__all__ = [
    'X_NAMES',
    'NX',
    'x_ring',
    'extended_ring',
    'monomial_basis',
    'DegreePiece',
    'QMatrix',
    'SkewLinMatrix',
    'SyzygyMatrix',
    'PointIdeal',
    'upper_pairs',
    'JetPolynomial',
    'JetMatrix',
    'LABELS',
    'MatrixType',
    'Fingerprint',
    'NormalForm',
    'TangentSystem',
    'ConeQuadrics',
    'ClosureVerdict',
    'DeformationFamily',
    'CheckResult',
    'RunReport'
]

"""
skewpfaff package

Exact verification toolkit for skew 6x6 matrices of linear forms on P^4 with vanishing Pfaffian.
"""

__version__ = "1.0.0"

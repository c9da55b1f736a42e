"""Abelian distribution: evaluation, sampling, fitting and criticality analysis."""

from ._abelian import *  # noqa: F401,F403
from ._abelian import __doc__  # noqa: F401

__version__ = "0.1.0"

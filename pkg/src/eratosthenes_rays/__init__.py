"""Eratosthenes rays: iterated nth-prime progressions, their matrix, and checks."""

from .errors import (
    CacheFormatError,
    EraError,
    NaturalOverflowError,
    ParameterError,
    RangeError,
    ResourceError,
    ResultOutOfBound,
)
from .primecore import PrimeIndexer, build_indexer
from .rays import (
    Column,
    MatrixCoord,
    Ray,
    RayMatrix,
    Truncation,
    build_matrix,
    classify,
    descend,
    extend_ray,
    nth_nonprime,
)
from .spiralweb import LayoutConfig, RadiusMode, SpiralLayout, export_table, layout, render_svg
from .verify import CheckResult, Status, VerificationReport, VerifyConfig, run_all

__version__ = "0.1.0"

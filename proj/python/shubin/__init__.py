"""Shubin symbol calculus: sharp products, parametrices, complex powers,
sectorial projections, Wodzicki residue, the Kontsevich-Vishik finite-part
integral, spectral zeta/eta functions, and a Hermite-basis spectral oracle.

The heavy lifting lives in the compiled extension ``shubin._core``.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
    from . import _core as core  # noqa: F401
except ImportError:  # in-tree builds put _core.so directly on sys.path
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401

__all__ = [n for n in dir(core) if not n.startswith("_")]
__version__ = "0.1.0"

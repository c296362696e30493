"""Two saturable two-level mirrors in a 1D waveguide: nonlinear Fabry-Perot
transport and optical rectification."""

try:
    from ._qfp import *  # noqa: F401,F403
    from ._qfp import __doc__  # noqa: F401
except ImportError:  # build-tree layout: extension lives next to the package
    from _qfp import *  # noqa: F401,F403

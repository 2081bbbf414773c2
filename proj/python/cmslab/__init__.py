"""Numerical laboratory for the calculus of moving surfaces."""

try:
    from ._cmslab import *  # noqa: F401,F403  (installed layout)
    from ._cmslab import __version__  # noqa: F401
except ImportError:  # in-tree builds put the module next to the package
    from _cmslab import *  # noqa: F401,F403
    from _cmslab import __version__  # noqa: F401

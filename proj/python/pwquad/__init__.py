"""Quadrature rules with jump corrections for piecewise-smooth integrands.

The heavy lifting lives in the compiled extension `_pwquad`; this package
re-exports its surface.
"""

try:
    from ._pwquad import *  # noqa: F401,F403
    from ._pwquad import __doc__ as _core_doc
except ImportError:  # build-tree layout: extension sits next to the package
    from _pwquad import *  # noqa: F401,F403
    from _pwquad import __doc__ as _core_doc

__doc__ = _core_doc or __doc__

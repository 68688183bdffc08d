"""Varying-exponent Lebesgue norms driven by a first-order ODE."""

try:
    from ._odelp import *  # noqa: F401,F403
    from ._odelp import __doc__ as _core_doc
except ImportError:  # in-build layout: extension sits next to the package
    from _odelp import *  # noqa: F401,F403
    from _odelp import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"

"""Finite-grid laboratory for weighted norm inequalities.

Everything lives in the compiled core; this package re-exports it.
"""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # in-tree builds keep the extension beside the build dir
    from _core import *  # noqa: F401,F403

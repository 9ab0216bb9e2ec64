"""Delta expansion, dual sums and shifted correlation sums.

Thin re-export of the compiled module.  Installed wheels carry the
extension inside this package; the in-tree test harness puts it on
sys.path next to the package instead, hence the fallback import.
"""

try:
    from ._shiftconv import *  # noqa: F401,F403
    from ._shiftconv import __doc__ as _core_doc  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _shiftconv import *  # noqa: F401,F403

__version__ = "0.1.0"

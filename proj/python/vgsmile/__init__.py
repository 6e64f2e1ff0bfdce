"""Variance-gamma mixture option pricing and smile-shape analysis."""

try:
    from ._vgsmile import *  # noqa: F401,F403  (installed wheel layout)
    from ._vgsmile import __version__  # noqa: F401
except ImportError:  # in-tree build: extension sits next to the package dir
    from _vgsmile import *  # noqa: F401,F403
    from _vgsmile import __version__  # noqa: F401

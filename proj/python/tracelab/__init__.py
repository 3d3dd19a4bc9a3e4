import os as _os

_here = _os.path.join(_os.path.dirname(__file__), "fixtures")
if _os.path.isdir(_here):
    _os.environ.setdefault("TRACE_LAB_FIXTURE_DIR", _here)

from ._core import *  # noqa: E402,F401,F403
from ._core import __doc__  # noqa: E402,F401

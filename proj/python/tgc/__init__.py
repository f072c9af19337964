"""Python interface to the theory-graph checker.

The heavy lifting lives in the compiled ``_core`` module; this wrapper turns
its JSON payloads into dictionaries.
"""

import json

from ._core import Session as _Session, format_source, __version__

__all__ = ["Workspace", "format_source", "__version__"]


class Workspace:
    """A loaded batch of .tg sources."""

    def __init__(self, paths=None, *, source=None, name="<memory>"):
        if (paths is None) == (source is None):
            raise ValueError("pass exactly one of paths= or source=")
        if source is not None:
            self._s = _Session.from_source(name, source)
        else:
            if isinstance(paths, str):
                paths = [paths]
            self._s = _Session.from_paths(list(paths))

    @property
    def ok(self):
        return self._s.ok

    @property
    def diagnostics(self):
        return self._s.diagnostics()

    @staticmethod
    def _unpack(result):
        code, payload = result
        doc = json.loads(payload)
        doc["exit_code"] = code
        return doc

    def check(self, allow_partial=False):
        return self._unpack(self._s.check(allow_partial))

    def paths(self, to, max_depth=3):
        return self._unpack(self._s.paths(to, max_depth))

    def transport(self, theory, theorem, via, allow_partial=False):
        return self._unpack(self._s.transport(theory, theorem, list(via), allow_partial))

    def crosscheck(self, id=None):
        return self._unpack(self._s.crosscheck(id))

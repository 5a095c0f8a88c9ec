"""Touch exploration of charts through speech, tones and haptics."""

import json
from pathlib import Path

from . import _core
from ._core import DatasetError, FormatError, TreeError, pitch_for_value, scan_update

__all__ = [
    "DatasetError",
    "Engine",
    "FormatError",
    "Session",
    "TreeError",
    "pitch_for_value",
    "scan_update",
]


class Engine:
    """A loaded chart: model, semantic tree and interaction rules."""

    def __init__(self, native):
        self._native = native

    @classmethod
    def load(cls, config_path):
        return cls(_core.Engine.load(str(config_path)))

    @classmethod
    def from_config(cls, config, base_dir="."):
        return cls(_core.Engine.from_json(json.dumps(config), str(base_dir)))

    @property
    def config_hash(self):
        return self._native.config_hash

    @property
    def point_count(self):
        return self._native.point_count

    def overview(self):
        return self._native.overview()

    def describe(self, max_depth=-1):
        return self._native.describe(max_depth)

    def replay(self, trace, force=False):
        """Replay a trace (dict or path); returns transcript records."""
        text = Path(trace).read_text() if isinstance(trace, (str, Path)) else json.dumps(trace)
        lines = self._native.replay(text, force).splitlines()
        return [json.loads(line) for line in lines[1:]]

    def render_svg(self, trace):
        return self._native.render_svg(json.dumps(trace))

    def session(self):
        return Session(self)


class Session:
    """One user's interaction state over an engine."""

    def __init__(self, engine):
        self._native = _core.Session(engine._native)

    def open(self):
        return json.loads(self._native.open())

    def dispatch(self, event):
        return json.loads(self._native.dispatch(json.dumps(event)))

    @property
    def state(self):
        return json.loads(self._native.state())

    def geometry(self):
        return json.loads(self._native.geometry())

    def check_invariants(self):
        return self._native.check_invariants()

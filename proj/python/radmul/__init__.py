"""Radial multipliers on amalgamated free products of finite crossed products."""

import json as _json

from ._core import ConfigError, Symbol, norm_c, ricard_xu_bound
from . import _core

__all__ = ["ConfigError", "Symbol", "norm_c", "ricard_xu_bound", "preset_algebra", "verify", "bound"]


def _dump(config):
    return config if isinstance(config, str) else _json.dumps(config)


def preset_algebra(name):
    """Algebra fragment for "DIH" or "MAT2" as a dict."""
    return _json.loads(_core.preset_algebra(name))


def verify(config, suite="all", seed=None):
    """Run a verification suite; returns the report as a dict."""
    return _json.loads(_core._verify(_dump(config), suite, seed))


def bound(config, seed=None):
    """Sampled norm ratio against the class norm."""
    return _core._bound(_dump(config), seed)

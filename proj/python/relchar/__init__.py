"""Verification laboratory for relative characters of p-adic PGL(2) x GL(1).

The heavy lifting lives in the compiled ``_core`` module; this package adds
thin JSON conveniences so job configs and reports are plain dicts.
"""

import json

from ._core import Pair, enumerate_pairs  # noqa: F401
from . import _core


def run(config, threads=1):
    """Run one job config and return the report as a list of dicts.

    ``config`` mirrors the CLI: ``{"cmd": "verify-main" | "verify-factors" |
    "verify-opcalc" | "sweep", ...}``.
    """
    body = _core.run_config(json.dumps(config), threads)
    return [json.loads(line) for line in body.splitlines()]


def corpus_render(config):
    """Deterministic NDJSON report body for a corpus case config (a dict)."""
    return _core.corpus_render(json.dumps(config))


def eps_half(p, m, exps, wpi="0", ext="base"):
    """eps(1/2) of the character with generator exponents ``exps`` at unit
    precision ``m`` digits and uniformizer phase ``wpi`` (a fraction string),
    over the base field or a quadratic extension (``ext`` = unram | ram)."""
    spec = json.dumps({"m": m, "exps": list(exps), "wpi": wpi})
    return _core.eps_half(p, spec, ext)

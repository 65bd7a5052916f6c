"""The hessian-profile/1 JSON interchange format.

One radial profile per file: dimensions, radius, boundary value, the
origin atom of its Hessian measure, and the node/value/slope arrays.
Floats are serialized with Python's shortest round-trip repr, so a
save/load cycle reproduces every number bitwise.  Unknown versions,
missing keys, and stray keys are all rejected: the format is versioned
precisely so readers never guess.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import HessianDim
from .errors import HessianLabError, ProfileFormatError
from .radial import RadialProfile, profile_from_slope, s_k_radial

FORMAT = "hessian-profile/1"

_KEYS = ("format", "n", "k", "R", "boundary", "atom", "nodes", "values", "slope")

__all__ = ["FORMAT", "save_profile", "load_profile"]


def save_profile(u: RadialProfile, path) -> None:
    payload = {
        "format": FORMAT,
        "n": u.dim.n,
        "k": u.dim.k,
        "R": u.R,
        "boundary": u.boundary,
        "atom": s_k_radial(u).atom,
        "nodes": [float(x) for x in u.nodes],
        "values": [float(x) for x in u.values],
        "slope": [float(x) for x in u.slope],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def load_profile(path) -> RadialProfile:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProfileFormatError(f"{path}: not valid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ProfileFormatError(f"{path}: expected a JSON object")
    if data.get("format") != FORMAT:
        raise ProfileFormatError(
            f"{path}: unsupported format {data.get('format')!r}; this reader handles {FORMAT!r}"
        )
    missing = [key for key in _KEYS if key not in data]
    if missing:
        raise ProfileFormatError(f"{path}: missing keys {missing}")
    extra = sorted(set(data) - set(_KEYS))
    if extra:
        raise ProfileFormatError(f"{path}: unknown keys {extra}")
    try:
        dim = HessianDim(int(data["n"]), int(data["k"]))
        atom = float(data["atom"])
        if not (np.isfinite(atom) and atom >= 0):
            raise ProfileFormatError(f"{path}: atom must be a nonnegative number")
        return profile_from_slope(
            dim=dim,
            R=float(data["R"]),
            nodes=np.asarray(data["nodes"], dtype=float),
            slope=np.asarray(data["slope"], dtype=float),
            boundary=float(data["boundary"]),
            values=np.asarray(data["values"], dtype=float),
        )
    except ProfileFormatError:
        raise
    except (HessianLabError, TypeError, ValueError) as exc:
        raise ProfileFormatError(f"{path}: invalid profile data: {exc}") from exc

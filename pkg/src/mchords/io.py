"""File formats: disk descriptions, curve CSVs, profiles, verdicts.

All floats are written with repr-exact %.17g so identical inputs give
byte-identical outputs.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import InvalidDiskError
from .normplane import DEFAULT_RESOLUTION, UnitDisk

_F = "%.17g"


def load_disk(token: str, resolution: int = DEFAULT_RESOLUTION) -> UnitDisk:
    """Disk from a CLI token: builtin:NAME, builtin:lp:P, or a JSON path."""
    if token.startswith("builtin:"):
        parts = token.split(":")
        name = parts[1] if len(parts) > 1 else ""
        if name == "euclidean":
            return UnitDisk.euclidean(resolution)
        if name == "square":
            return UnitDisk.square()
        if name == "hexagon":
            return UnitDisk.regular_hexagon()
        if name == "lp":
            if len(parts) != 3:
                raise InvalidDiskError("builtin:lp needs an exponent, e.g. builtin:lp:4")
            return UnitDisk.lp(float(parts[2]), resolution)
        raise InvalidDiskError(
            "unknown builtin disk %r (have: euclidean, square, hexagon, lp:P)"
            % (name,))
    if not os.path.exists(token):
        raise InvalidDiskError("disk file not found: %s" % token)
    with open(token, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return UnitDisk.from_spec(obj, resolution)


def disk_to_json(disk: UnitDisk) -> str:
    verts = ", ".join("[%s, %s]" % (_F % x, _F % y) for x, y in disk.vertices)
    return '{"kind": "polygon", "vertices": [%s]}' % verts


def curve_csv(points: np.ndarray, header=None) -> str:
    """CSV text for an (n, d) vertex array; header defaults to x,y or
    x1..xd depending on the dimension."""
    P = np.asarray(points, dtype=float)
    d = P.shape[1]
    if header is None:
        header = "x,y" if d == 2 else ",".join("x%d" % (i + 1) for i in range(d))
    rows = [header]
    for row in P:
        rows.append(",".join(_F % v for v in row))
    return "\n".join(rows) + "\n"


def read_curve_csv(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("curve file %s is empty" % path)
    start = 0
    first = lines[0].split(",")
    try:
        float(first[0])
    except ValueError:
        start = 1
    if start == len(lines):
        raise ValueError("curve file %s has a header but no rows" % path)
    data = [[float(v) for v in ln.split(",")] for ln in lines[start:]]
    width = {len(r) for r in data}
    if len(width) != 1:
        raise ValueError("curve file %s has ragged rows" % path)
    return np.array(data, dtype=float)


def involute_csv(thetas: np.ndarray, points: np.ndarray) -> str:
    rows = ["theta,x,y"]
    for th, (x, y) in zip(thetas, points):
        rows.append("%s,%s,%s" % (_F % th, _F % x, _F % y))
    return "\n".join(rows) + "\n"


def profile_csv(profile) -> str:
    rows = ["direction_rad,lm_value"]
    for d, v in zip(profile.directions, profile.values):
        rows.append("%s,%s" % (_F % d, _F % v))
    return "\n".join(rows) + "\n"


def profile_summary(profile) -> str:
    return ('{"min": %.6f, "argmin": %.6f, "max": %.6f, "argmax": %.6f}'
            % (profile.min, profile.argmin, profile.max, profile.argmax))


def report_json(report) -> str:
    return json.dumps(report.to_dict())


def maxmin_json(result) -> str:
    radii = ", ".join(_F % r for r in result.params.radii)
    angles = ", ".join(_F % a for a in result.params.angles)
    return ('{"radii": [%s], "angles": [%s], "objective": %s, '
            '"evaluations": %d}'
            % (radii, angles, _F % result.objective, result.evaluations))


def hexagon_json(hexagon) -> str:
    verts = ", ".join("[%s, %s]" % (_F % x, _F % y)
                      for x, y in hexagon.vertices)
    return ('{"vertices": [%s], "q_unique": %s}'
            % (verts, "true" if hexagon.q_unique else "false"))


def emit(text: str, out: str | None) -> None:
    """Write to the given path, or stdout when no path is given."""
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")

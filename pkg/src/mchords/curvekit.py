"""Polyline curves and the increasing chord property.

The chord checker uses the two-sided reduction: a curve has increasing
chords (a <= b <= c <= d on the curve implies ||a-d|| >= ||b-c||) exactly
when for all parameters i < j < k both gauge(f_i - f_k) >= gauge(f_i - f_j)
and gauge(f_i - f_k) >= gauge(f_j - f_k) hold.  Vertices are checked
pairwise; edge interiors are covered by a one-sided derivative test at
every edge start, sound because the gauge of an affine path is convex.

The scan routines are written against plain arrays plus a gauge callback
so that the d-dimensional Chebyshev module can reuse them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, UnsupportedDiskError
from .normplane import (UnitDisk, as_vec, gauge, gauge_many, _wedge_of,
                        _cross, TWO_PI)

_CHUNK_ELEMS = 2_000_000
_EDGE_STEP = 1e-6  # parameter step for the forward-difference edge test
_MAX_WITNESSES = 16


class Polyline:
    """Ordered point sequence; the curve representation used throughout.

    points is an (n, 2) read-only float array.  A closed polyline has an
    implicit last-to-first edge.
    """

    __slots__ = ("points", "closed")

    def __init__(self, points, closed: bool = False):
        P = np.array(points, dtype=float)
        if P.ndim != 2 or P.shape[1] != 2 or len(P) < 1:
            raise ValueError("Polyline: need an (n, 2) array with n >= 1")
        if not np.all(np.isfinite(P)):
            raise ValueError("Polyline: non-finite coordinates")
        scale = max(1.0, float(np.abs(P).max()))
        if len(P) > 1:
            steps = np.hypot(*(P[1:] - P[:-1]).T)
            if steps.min() <= 1e-12 * scale:
                k = int(np.argmin(steps))
                raise ValueError("Polyline: points %d and %d coincide" % (k, k + 1))
        if closed:
            if len(P) < 3:
                raise ValueError("Polyline: a closed curve needs >= 3 points")
            if math.hypot(*(P[0] - P[-1])) <= 1e-12 * scale:
                raise ValueError("Polyline: closed curve repeats its first point last")
        P.flags.writeable = False
        self.points = P
        self.closed = bool(closed)

    def __len__(self):
        return len(self.points)

    def edges(self) -> np.ndarray:
        if self.closed:
            return np.roll(self.points, -1, axis=0) - self.points
        return self.points[1:] - self.points[:-1]

    def __repr__(self):
        return "Polyline(n=%d, closed=%s)" % (len(self.points), self.closed)


@dataclass(frozen=True)
class Witness:
    """One violated inequality.

    quad is (a, b, c, d) with a <= b <= c <= d and gauge(f_a - f_d) <
    gauge(f_b - f_c); fractional entries denote points inside an edge
    (j + 1e-6 means just past vertex j).  For anchored checks, quad is
    (t1, t1, t2, t2) and anchor is the index of the offending anchor.
    """
    quad: tuple
    deficit: float
    anchor: int | None = None


@dataclass
class ChordReport:
    holds: bool
    max_deficit: float
    witnesses: list = field(default_factory=list)
    mode: str = "tolerance"
    tol: float = 1e-6

    def to_dict(self) -> dict:
        return {
            "holds": bool(self.holds),
            "max_deficit": float(self.max_deficit),
            "mode": self.mode,
            "tol": float(self.tol),
            "witnesses": [
                {"quad": [float(x) for x in w.quad], "deficit": float(w.deficit)}
                | ({} if w.anchor is None else {"anchor": int(w.anchor)})
                for w in self.witnesses
            ],
        }


@dataclass(frozen=True)
class BisectorSample:
    seg: tuple
    samples: Polyline


# -- scan engine ----------------------------------------------------------

def _chunks(total: int, width: int):
    step = max(1, _CHUNK_ELEMS // max(1, width))
    for a in range(0, total, step):
        yield a, min(a + step, total)


def _vertex_scan(P: np.ndarray, gaugef, tol: float):
    """Largest violation of: for every anchor i and i < j < k,
    gauge(P_i - P_k) >= gauge(P_i - P_j).  Returns (deficit, witnesses)."""
    n = len(P)
    best = 0.0
    wits = []
    if n < 3:
        return best, wits
    idx = np.arange(n)[None, :]
    for a0, a1 in _chunks(n - 2, n):
        A = np.arange(a0, a1)
        D = gaugef(P[None, :, :] - P[A, None, :])
        Dm = np.where(idx > A[:, None], D, -np.inf)
        run = np.maximum.accumulate(Dm, axis=1)
        prev = np.empty_like(run)
        prev[:, 0] = -np.inf
        prev[:, 1:] = run[:, :-1]
        viol = np.where(idx >= A[:, None] + 2, prev - D, -np.inf)
        rowmax = viol.max(axis=1)
        best = max(best, float(rowmax.max()))
        for r in np.nonzero(rowmax > tol)[0]:
            if len(wits) >= 4 * _MAX_WITNESSES:
                break
            i = int(A[r])
            k = int(np.argmax(viol[r]))
            j = i + 1 + int(np.argmax(Dm[r, i + 1:k]))
            wits.append(Witness((i, i, j, k), float(rowmax[r])))
    return best, wits


def _edge_scan(P: np.ndarray, anchors: np.ndarray, gaugef, dplusf,
               tol: float, after=None, anchor_ids=None):
    """Largest violation of: gauge(f(t) - anchor) is nondecreasing at the
    start of each edge.  `after`, when given, restricts anchor row m to
    edges starting at index >= after[m].  Deficits are reported as the
    negated derivative along the full edge vector (gauge units)."""
    n = len(P)
    best = 0.0
    wits = []
    if n < 2 or len(anchors) == 0:
        return best, wits
    E = P[1:] - P[:-1]
    starts = P[:-1]
    ecols = n - 1
    jdx = np.arange(ecols)[None, :]
    for a0, a1 in _chunks(len(anchors), ecols):
        A = anchors[a0:a1]
        W0 = starts[None, :, :] - A[:, None, :]
        if dplusf is None:
            G0 = gaugef(W0)
            Gh = gaugef(W0 + _EDGE_STEP * E[None, :, :])
            slope = (Gh - G0) / _EDGE_STEP
        else:
            slope = dplusf(W0, E)
        deficit = -slope
        if after is not None:
            deficit = np.where(jdx >= after[a0:a1, None], deficit, -np.inf)
        rowmax = deficit.max(axis=1)
        best = max(best, float(rowmax.max()))
        for r in np.nonzero(rowmax > tol)[0]:
            if len(wits) >= 4 * _MAX_WITNESSES:
                break
            j = int(np.argmax(deficit[r]))
            d = float(rowmax[r])
            if after is not None:
                i = a0 + r
                wits.append(Witness((i, i, j, j + _EDGE_STEP), d))
            else:
                aid = (a0 + r) if anchor_ids is None else anchor_ids[a0 + r]
                wits.append(Witness((j, j, j + _EDGE_STEP, j + _EDGE_STEP), d,
                                    anchor=int(aid)))
    return best, wits


def _remap_reversed(wits, n):
    out = []
    for w in wits:
        a, b, c, d = (n - 1 - x for x in w.quad)
        out.append(Witness((d, c, b, a), w.deficit, w.anchor))
    return out


def _run_two_sided(P: np.ndarray, gaugef, dplusf, tol: float):
    """Both halves of the reduction on an open polyline given as an array."""
    deficits = []
    wits = []
    after = np.arange(len(P) - 1)
    for flip in (False, True):
        Q = P[::-1] if flip else P
        dv, wv = _vertex_scan(Q, gaugef, tol)
        de, we = _edge_scan(Q, Q[:-1], gaugef, dplusf, tol, after=after)
        if flip:
            wv = _remap_reversed(wv, len(P))
            we = _remap_reversed(we, len(P))
        deficits += [dv, de]
        wits += wv + we
    wits.sort(key=lambda w: -w.deficit)
    return max(deficits), wits[:_MAX_WITNESSES]


def _dplus_disk_factory(disk: UnitDisk):
    """One-sided derivative of the gauge: D+ gauge(w; e), exact on the
    normal fan of a polygonal disk.  Returns None for sampled disks (the
    forward-difference path is used instead)."""
    if not disk.is_polygonal:
        return None
    V = disk.vertices
    G = disk._grad
    m = len(V)

    def dplus(W0, E):
        shape = W0.shape[:-1]
        flat = W0.reshape(-1, 2)
        e = np.broadcast_to(E[None, :, :], W0.shape).reshape(-1, 2)
        j = _wedge_of(disk, flat, values=False)
        s = np.einsum("ij,ij->i", G[j], e)
        # on the boundary ray of a cone the steeper neighbour governs
        scale = np.hypot(flat[:, 0], flat[:, 1])
        lo = np.abs(_cross(V[j], flat)) <= 1e-12 * scale * np.hypot(V[j, 0], V[j, 1])
        if lo.any():
            s2 = np.einsum("ij,ij->i", G[(j - 1) % m], e)
            s = np.where(lo, np.maximum(s, s2), s)
        hi = np.abs(_cross(V[(j + 1) % m], flat)) <= \
            1e-12 * scale * np.hypot(*V[(j + 1) % m].T)
        if hi.any():
            s3 = np.einsum("ij,ij->i", G[(j + 1) % m], e)
            s = np.where(hi, np.maximum(s, s3), s)
        zero = scale == 0.0
        if zero.any():
            s = np.where(zero, gauge_many(disk, e), s)
        return s.reshape(shape)

    return dplus


def _default_tol(disk: UnitDisk, tol):
    if tol is not None:
        return float(tol)
    return 1e-9 if disk.is_polygonal else 1e-6


# -- public operations ----------------------------------------------------

def arclength(disk: UnitDisk, curve: Polyline) -> float:
    """Length of the polyline in the norm of `disk` (sum of edge gauges)."""
    if len(curve) < 2:
        return 0.0
    return float(gauge_many(disk, curve.edges()).sum())


def check_increasing_chords(disk: UnitDisk, curve: Polyline,
                            tol: float | None = None) -> ChordReport:
    """Verdict for the increasing chord property of an open polyline.

    Mode is exact_polygonal for polygonal disks (edge behaviour decided
    from the normal fan, default tol 1e-9) and tolerance otherwise
    (forward differences, default tol 1e-6).
    """
    if curve.closed:
        raise ValueError("check_increasing_chords: curve must be open")
    if len(curve) < 2:
        raise ValueError("check_increasing_chords: need at least 2 points")
    tol = _default_tol(disk, tol)
    gaugef = lambda W: gauge_many(disk, W)
    dplusf = _dplus_disk_factory(disk)
    deficit, wits = _run_two_sided(curve.points, gaugef, dplusf, tol)
    mode = "exact_polygonal" if disk.is_polygonal else "tolerance"
    return ChordReport(holds=deficit <= tol, max_deficit=deficit,
                       witnesses=wits if deficit > tol else [],
                       mode=mode, tol=tol)


def check_increasing_wrt_set(disk: UnitDisk, curve: Polyline, anchors,
                             tol: float | None = None) -> ChordReport:
    """Verdict for: for every anchor p, gauge(f(t) - p) is nondecreasing
    in t along the whole curve."""
    if curve.closed:
        raise ValueError("check_increasing_wrt_set: curve must be open")
    if len(curve) < 2:
        raise ValueError("check_increasing_wrt_set: need at least 2 points")
    A = np.asarray(anchors, dtype=float)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2 or A.shape[1] != 2 or len(A) == 0:
        raise ValueError("check_increasing_wrt_set: anchors must be a "
                         "non-empty (m, 2) array")
    tol = _default_tol(disk, tol)
    gaugef = lambda W: gauge_many(disk, W)
    dplusf = _dplus_disk_factory(disk)
    P = curve.points
    n = len(P)
    best = 0.0
    wits = []
    idx = np.arange(n)[None, :]
    for a0, a1 in _chunks(len(A), n):
        D = gaugef(P[None, :, :] - A[a0:a1, None, :])
        run = np.maximum.accumulate(D, axis=1)
        prev = np.empty_like(run)
        prev[:, 0] = -np.inf
        prev[:, 1:] = run[:, :-1]
        viol = np.where(idx >= 1, prev - D, -np.inf)
        rowmax = viol.max(axis=1)
        best = max(best, float(rowmax.max()))
        for r in np.nonzero(rowmax > tol)[0]:
            if len(wits) >= 4 * _MAX_WITNESSES:
                break
            k = int(np.argmax(viol[r]))
            j = int(np.argmax(D[r, :k]))
            wits.append(Witness((j, j, k, k), float(rowmax[r]), anchor=a0 + r))
    de, we = _edge_scan(P, A, gaugef, dplusf, tol)
    best = max(best, de)
    wits += we
    wits.sort(key=lambda w: -w.deficit)
    mode = "exact_polygonal" if disk.is_polygonal else "tolerance"
    return ChordReport(holds=best <= tol, max_deficit=best,
                       witnesses=wits[:_MAX_WITNESSES] if best > tol else [],
                       mode=mode, tol=tol)


def bisector_sample(disk: UnitDisk, a, b, y_range, n: int) -> BisectorSample:
    """Points of the bisector {x : gauge(x-a) = gauge(x-b)}, one per line
    parallel to the segment ab, at n offsets spanning y_range.

    Offsets are measured from the segment midpoint along the Euclidean
    perpendicular of b - a.  Requires a strictly convex disk; polygonal
    norms can have two-dimensional bisectors.
    """
    if not disk.is_strictly_convex:
        raise UnsupportedDiskError(
            "bisector_sample: disk is not strictly convex; the bisector may "
            "contain two-dimensional pieces")
    a = as_vec(a)
    b = as_vec(b)
    u = b - a
    if math.hypot(*u) <= 1e-12 * max(1.0, float(np.abs(a).max()),
                                     float(np.abs(b).max())):
        raise ValueError("bisector_sample: a and b coincide")
    if n < 1:
        raise ValueError("bisector_sample: n must be >= 1")
    lo, hi = float(y_range[0]), float(y_range[1])
    perp = np.array([-u[1], u[0]]) / math.hypot(*u)
    mid = 0.5 * (a + b)
    gu = gauge(disk, u)

    def phi(base, s):
        x = base + s * u
        return gauge(disk, x - a) - gauge(disk, x - b)

    pts = np.empty((n, 2))
    offsets = np.linspace(lo, hi, n)
    for i, h in enumerate(offsets):
        base = mid + h * perp
        K = (gauge(disk, h * perp) + 2.0) / gu + 2.0
        slo, shi = -K, K
        for _ in range(60):
            if phi(base, slo) < 0.0 <= phi(base, shi):
                break
            slo *= 2.0
            shi *= 2.0
        else:
            raise GeometryError("bisector_sample: failed to bracket the root")
        # bisection to 1e-10 in the line parameter
        while shi - slo > 1e-10 / gu:
            smid = 0.5 * (slo + shi)
            if phi(base, smid) < 0.0:
                slo = smid
            else:
                shi = smid
        pts[i] = base + 0.5 * (slo + shi) * u
    return BisectorSample(seg=(a, b), samples=Polyline(pts) if n > 1
                          else Polyline(pts[[0]]))


def is_x_monotone(curve: Polyline) -> bool:
    """True when x strictly increases along every edge of the curve."""
    E = curve.edges()
    return bool(len(E) > 0 and np.all(E[:, 0] > 0.0))


def convexify(curve: Polyline) -> Polyline:
    """Rearrange the edge vectors of a strictly x-monotone curve by slope.

    Edges are sorted so their angles strictly decrease; exactly parallel
    edges are merged by vector addition.  The endpoints and the multiset
    of edge vectors (up to merging) are preserved, so the arclength in
    every norm is unchanged.  Already-sorted curves are returned as an
    identical copy.
    """
    if curve.closed or not is_x_monotone(curve):
        raise GeometryError("convexify: curve must be open and strictly "
                            "x-monotone")
    P = curve.points
    E = P[1:] - P[:-1]
    ang = np.arctan2(E[:, 1], E[:, 0])
    d = np.diff(ang)
    if np.all(d < 0) or len(E) == 1:
        return Polyline(P.copy())
    order = np.argsort(-ang, kind="stable")
    Es = E[order]
    merged = [Es[0]]
    for e in Es[1:]:
        last = merged[-1]
        if last[0] * e[1] - last[1] * e[0] == 0.0:
            merged[-1] = last + e
        else:
            merged.append(e)
    out = np.empty((len(merged) + 1, 2))
    out[0] = P[0]
    out[1:] = P[0] + np.cumsum(merged, axis=0)
    return Polyline(out)

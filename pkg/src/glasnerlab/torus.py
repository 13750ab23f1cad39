"""Finite point sets on the d-torus and the experiments that act on them.

The torus metric everywhere in this package is the l-infinity metric (max
over coordinates of circle distance); it matches the box geometry of the
Fourier statistic and makes the conservative grid certificate exact.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .checker import check_pair
from .errors import (
    BadEpsilon,
    BadMesh,
    DimensionMismatch,
    NotAViolation,
    NotExact,
    ZeroVector,
)
from .intmat import IntMat
from .polymat import PolyMat, bilinear_poly, poly_mat_eval

EXACT = "exact"
FLOAT = "float"


def _wrap_float(x: float) -> float:
    x = math.fmod(x, 1.0)
    return x + 1.0 if x < 0 else x


class TorusPointSet:
    """Distinct points of T^d, either all exact-rational or all float."""

    __slots__ = ("dim", "points", "kind")

    def __init__(self, dim: int, points, kind: str):
        if kind not in (EXACT, FLOAT):
            raise ValueError(f"bad kind {kind!r}")
        norm = []
        for p in points:
            if len(p) != dim:
                raise DimensionMismatch("point dimension mismatch")
            if kind == EXACT:
                norm.append(tuple(Fraction(x) % 1 for x in p))
            else:
                norm.append(tuple(_wrap_float(float(x)) for x in p))
        if len(set(norm)) != len(norm):
            raise ValueError("points must be distinct")
        self.dim = dim
        self.points = norm
        self.kind = kind

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"TorusPointSet(dim={self.dim}, k={len(self.points)}, kind={self.kind})"

    @classmethod
    def exact(cls, points) -> "TorusPointSet":
        points = [tuple(p) for p in points]
        return cls(len(points[0]), points, EXACT)

    @classmethod
    def floats(cls, points) -> "TorusPointSet":
        points = [tuple(p) for p in points]
        return cls(len(points[0]), points, FLOAT)

    @classmethod
    def random_floats(cls, k: int, dim: int, rng) -> "TorusPointSet":
        return cls(dim, [tuple(rng.random() for _ in range(dim)) for _ in range(k)], FLOAT)

    @classmethod
    def random_rationals(cls, k: int, dim: int, rng, max_den: int = 10**6) -> "TorusPointSet":
        pts = set()
        while len(pts) < k:
            p = tuple(
                Fraction(rng.randrange(max_den), max_den) for _ in range(dim)
            )
            pts.add(p)
        return cls(dim, sorted(pts), EXACT)

    def as_floats(self) -> List[Tuple[float, ...]]:
        if self.kind == FLOAT:
            return list(self.points)
        return [tuple(float(x) for x in p) for p in self.points]

    def transform(self, M: IntMat) -> "TorusPointSet":
        """Image under an integer matrix, mod 1.

        Exact for rational sets.  Float coordinates are converted to their
        exact binary rationals before the multiply, so the huge integer
        entries of M never magnify rounding error; coordinates colliding
        after reduction are merged.
        """
        if M.rows != self.dim or M.cols != self.dim:
            raise DimensionMismatch("matrix/point dimension mismatch")
        images = set()
        for p in self.points:
            exact = [Fraction(x) for x in p]
            img = tuple(v % 1 for v in M.mul_vec(exact))
            if self.kind == FLOAT:
                img = tuple(float(v) for v in img)
            images.add(img)
        return TorusPointSet(self.dim, sorted(images), self.kind)


def circle_dist(a: float, b: float) -> float:
    d = abs(a - b)
    return min(d, 1.0 - d)


def torus_dist(p, q) -> float:
    return max(circle_dist(float(a), float(b)) for a, b in zip(p, q))


@dataclass
class DensityReport:
    epsilon: float
    dense: bool
    covering_radius_estimate: float
    grid_mesh: float
    certificate: Optional[Tuple[float, ...]] = None
    inconclusive: bool = False

    def to_dict(self):
        return {
            "epsilon": self.epsilon,
            "dense": self.dense,
            "covering_radius_estimate": self.covering_radius_estimate,
            "grid_mesh": self.grid_mesh,
            "certificate": None if self.certificate is None else list(self.certificate),
            "inconclusive": self.inconclusive,
        }


def _grid_min_dists(ys: List[Tuple[float, ...]], dim: int, g: int, epsilon: float):
    """Yield (grid_point, min distance to ys), stopping after the first
    uncovered grid point (distance > epsilon)."""
    if dim == 1:
        # sorted + bisect fast path
        xs = sorted(p[0] for p in ys)
        ext = xs + [xs[0] + 1.0]
        for i in range(g):
            t = i / g
            j = bisect_left(ext, t)
            lo = ext[j - 1] if j else ext[-2] - 1.0
            hi = ext[j] if j < len(ext) else ext[0] + 1.0
            dist = min(t - lo, hi - t)
            yield (t,), dist
            if dist > epsilon:
                return
        return
    idx = [0] * dim
    while True:
        t = tuple(i / g for i in idx)
        dist = min(torus_dist(t, p) for p in ys)
        yield t, dist
        if dist > epsilon:
            return
        k = dim - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < g:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return


def eps_dense(Y: TorusPointSet, epsilon: float, mesh: Optional[float] = None) -> DensityReport:
    """Conservative grid test for epsilon-density in the l-infinity metric.

    A grid point farther than epsilon from every point of Y certifies
    non-density.  If every grid point is within epsilon - mesh/2, any point
    of the torus is within epsilon and the set is certified dense.  The gap
    in between is reported as inconclusive (not dense, no certificate).
    """
    if not 0 < epsilon < 0.5:
        raise BadEpsilon("need 0 < epsilon < 1/2")
    if mesh is None:
        mesh = epsilon / 4
    if not 0 < mesh <= epsilon:
        raise BadMesh("need 0 < mesh <= epsilon")
    g = math.ceil(1.0 / mesh)
    ys = Y.as_floats()
    worst = 0.0
    certificate = None
    for t, dist in _grid_min_dists(ys, Y.dim, g, epsilon):
        if dist > worst:
            worst = dist
        if dist > epsilon:
            certificate = t
            break
    if certificate is not None:
        return DensityReport(
            epsilon=epsilon,
            dense=False,
            covering_radius_estimate=worst,
            grid_mesh=mesh,
            certificate=certificate,
        )
    if worst <= epsilon - mesh / 2:
        return DensityReport(
            epsilon=epsilon,
            dense=True,
            covering_radius_estimate=worst,
            grid_mesh=mesh,
        )
    return DensityReport(
        epsilon=epsilon,
        dense=False,
        covering_radius_estimate=worst,
        grid_mesh=mesh,
        inconclusive=True,
    )


def orbit_density_search(
    A: PolyMat,
    Y: TorusPointSet,
    epsilon: float,
    n_min: int,
    n_max: int,
    mesh: Optional[float] = None,
) -> Optional[int]:
    """Smallest |n| in [n_min, n_max] (ties: positive first) with A(n)Y
    certified epsilon-dense; None if no such n exists in the range."""
    if Y.dim != A.dim:
        raise DimensionMismatch("point set and matrix dimensions differ")
    if n_min > n_max:
        raise ValueError("need n_min <= n_max")
    for n in sorted(range(n_min, n_max + 1), key=lambda n: (abs(n), n < 0)):
        image = Y.transform(poly_mat_eval(A, n))
        if eps_dense(image, epsilon, mesh).dense:
            return n
    return None


@dataclass
class PairSpectrum:
    d: int
    k: int
    counts: Dict[int, int] = field(default_factory=dict)
    rational_pairs: int = 0

    def cumulative(self, m: int) -> int:
        """H_m = sum of h_q for 2 <= q <= m."""
        return sum(c for q, c in self.counts.items() if 2 <= q <= m)

    def to_dict(self):
        return {
            "d": self.d,
            "k": self.k,
            "counts": {str(q): c for q, c in sorted(self.counts.items())},
            "rational_pairs": self.rational_pairs,
        }


def pair_spectrum(Y: TorusPointSet) -> PairSpectrum:
    """h_q = number of ordered pairs (i, j) whose difference has exact
    torsion order q in T^d; requires an exact-rational point set.

    The diagonal pairs (order 1) are not stored in counts but are included
    in rational_pairs, which equals k^2 for exact sets.
    """
    if Y.kind != EXACT:
        raise NotExact("pair spectrum needs exact rational coordinates")
    k = len(Y)
    spec = PairSpectrum(d=Y.dim, k=k, rational_pairs=k * k)
    for i, p in enumerate(Y.points):
        for j, r in enumerate(Y.points):
            if i == j:
                continue
            diff = [(a - b) % 1 for a, b in zip(p, r)]
            q = math.lcm(*(f.denominator for f in diff))
            spec.counts[q] = spec.counts.get(q, 0) + 1
    return spec


def weighted_spectrum_sum(S: PairSpectrum, r: float) -> float:
    """sum over q >= 2 of h_q * q^(-r)."""
    if r <= 0:
        raise ValueError("r must be positive")
    return sum(c * q ** (-r) for q, c in S.counts.items())


def _ball_points(d: int, M: int):
    """Nonzero integer vectors of l-infinity norm <= M."""
    def rec(prefix):
        if len(prefix) == d:
            if any(prefix):
                yield tuple(prefix)
            return
        for x in range(-M, M + 1):
            yield from rec(prefix + [x])

    yield from rec([])


def fourier_statistic(gammas: Sequence[IntMat], Y: TorusPointSet, epsilon: float) -> float:
    """The box-truncated Fourier pair statistic at M = floor(d/epsilon).

    Computed as sum over nonzero |m|_inf <= M of the average over the given
    matrices of |sum_i e(m . gamma x_i)|^2, which is the same triple sum
    over ordered pairs (i, j) and is real by the m <-> -m symmetry.  The
    unspecified dimensional prefactor is deliberately not applied.
    """
    if epsilon <= 0:
        raise BadEpsilon("epsilon must be positive")
    if not gammas:
        raise ValueError("need at least one matrix")
    d = Y.dim
    M = int(d / epsilon)
    N = len(gammas)
    images = []
    for g in gammas:
        if g.rows != d or g.cols != d:
            raise DimensionMismatch("matrix dimension mismatch")
        images.append([tuple(float(v % 1) for v in g.mul_vec(p)) for p in Y.points])
    total = 0.0
    for m in _ball_points(d, M):
        acc = 0.0
        for img in images:
            s = sum(cmath.exp(2j * math.pi * sum(mi * xi for mi, xi in zip(m, p))) for p in img)
            acc += abs(s) ** 2
        total += acc / N
    return total


@dataclass
class WitnessReport:
    Y: TorusPointSet
    band_direction: Tuple[int, ...]
    band_interval: Tuple[Fraction, Fraction]

    def to_dict(self):
        return {
            "points": [[str(x) for x in p] for p in self.Y.points],
            "band_direction": list(self.band_direction),
            "band_interval": [str(self.band_interval[0]), str(self.band_interval[1])],
        }


def _avoided_arc(c: int, size: int) -> Tuple[Fraction, Fraction]:
    """An open arc of the circle avoiding {c/m mod 1 : m <= size} and 0.

    For c = 0 this is the middle third (1/3, 2/3); otherwise the middle
    third of the longest arc complementary to the finite value set.
    """
    if c == 0:
        return (Fraction(1, 3), Fraction(2, 3))
    vals = sorted({Fraction(c, m) % 1 for m in range(1, size + 1)} | {Fraction(0)})
    best = None
    for a, b in zip(vals, vals[1:] + [vals[0] + 1]):
        if best is None or b - a > best[1] - best[0]:
            best = (a, b)
    a, b = best
    gap = b - a
    return ((a + gap / 3) % 1, (a + 2 * gap / 3) % 1)


def in_arc(value: Fraction, arc: Tuple[Fraction, Fraction]) -> bool:
    """Exact membership of a circle point in an open arc (lo, hi) mod 1."""
    lo, hi = Fraction(arc[0]) % 1, Fraction(arc[1]) % 1
    v = Fraction(value) % 1
    if lo < hi:
        return lo < v < hi
    return v > lo or v < hi


def non_glasner_witness(A: PolyMat, v, w, size: int) -> WitnessReport:
    """Infinite-family witness for a violating pair (v, w).

    Y is {w/m mod 1 : m = 1..size}; the open band {u : v . u in U} is never
    entered by any A(n)Y since v . A(n) (w/m) = c/m mod 1 stays on the
    avoided value set.
    """
    if not any(v) or not any(w):
        raise ZeroVector("v and w must be nonzero")
    if size < 1:
        raise ValueError("size must be >= 1")
    if check_pair(A, v, w):
        raise NotAViolation("v^t (A(x) - A(0)) w is not identically zero")
    c = int(bilinear_poly(A, v, w).constant_term())
    pts = []
    seen = set()
    for m in range(1, size + 1):
        p = tuple(Fraction(int(x), m) % 1 for x in w)
        if p not in seen:  # w/m values can coincide mod 1 for non-primitive w
            seen.add(p)
            pts.append(p)
    Y = TorusPointSet(A.dim, pts, EXACT)
    return WitnessReport(
        Y=Y, band_direction=tuple(int(x) for x in v), band_interval=_avoided_arc(c, size)
    )

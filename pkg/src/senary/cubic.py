"""Ground-truth enumeration of integer points on the senary cubic.

The box counter iterates y over the positive octant (sign symmetry gives a
factor 8), runs x1, x2 over the full box with numpy, and solves for x3 with an
exact divisibility test.  It is deliberately the simplest correct method and
serves as the oracle that the descent-based counter in :mod:`senary.torsor`
must reproduce exactly.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from senary.arith import gcd_many, integer_cube_root, moebius

COUNT_METHODS = (
    "naive",
    "torsor",
    "naive-primitive",
    "torsor-primitive",
    "degenerate",
    "slice",
)

# int64 safety: the largest intermediate is 2*P^3 (the x3 numerator).
_MAX_NAIVE_BOUND = 1_600_000


def cubic_form(x1: int, x2: int, x3: int, y1: int, y2: int, y3: int) -> int:
    return x1 * y2 * y3 + x2 * y1 * y3 + x3 * y1 * y2


def is_solution(sextuple) -> bool:
    """True iff the cubic form vanishes on the sextuple."""
    return cubic_form(*sextuple) == 0


@dataclass(frozen=True)
class SolutionSextuple:
    """An integer point on the cubic; validated on construction."""

    x1: int
    x2: int
    x3: int
    y1: int
    y2: int
    y3: int

    def __post_init__(self):
        if cubic_form(*self.coords) != 0:
            raise ValueError(f"not a solution: {self.coords}")
        if all(c == 0 for c in self.coords):
            raise ValueError("the zero sextuple is excluded")

    @property
    def coords(self) -> tuple[int, ...]:
        return (self.x1, self.x2, self.x3, self.y1, self.y2, self.y3)

    @property
    def is_degenerate(self) -> bool:
        return self.y1 * self.y2 * self.y3 == 0

    def normalized(self) -> "SolutionSextuple":
        """Divide by the gcd of all six coordinates and fix the overall sign
        so the first nonzero coordinate is positive."""
        g = gcd_many(self.coords)
        c = [v // g for v in self.coords]
        for v in c:
            if v != 0:
                if v < 0:
                    c = [-w for w in c]
                break
        return SolutionSextuple(*c)


@dataclass
class CountReport:
    bound: int
    method: str
    count: int
    elapsed: float

    def __post_init__(self):
        if self.method not in COUNT_METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.count < 0:
            raise ValueError("count must be >= 0")


def _check_box_bound(P: int):
    if P < 1:
        raise ValueError("box bound must be >= 1")
    if P > _MAX_NAIVE_BOUND:
        raise OverflowError(f"box bound {P} exceeds the int64-checked range")


def _octant_chunk(P: int, y1_lo: int, y1_hi: int) -> int:
    """Solutions with y in the positive octant, y1 in [y1_lo, y1_hi)."""
    xs = np.arange(-P, P + 1, dtype=np.int64)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    total = 0
    for y1 in range(y1_lo, y1_hi):
        for y2 in range(1, P + 1):
            d = y1 * y2
            base = X1 * y2 + X2 * y1
            for y3 in range(1, P + 1):
                num = base * (-y3)
                q, r = np.divmod(num, d)
                total += int(((r == 0) & (np.abs(q) <= P)).sum())
    return total


def _octant_primitive_chunk(P: int, y1_lo: int, y1_hi: int) -> int:
    xs = np.arange(-P, P + 1, dtype=np.int64)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    total = 0
    for y1 in range(y1_lo, y1_hi):
        for y2 in range(1, P + 1):
            d = y1 * y2
            gy12 = math.gcd(y1, y2)
            base = X1 * y2 + X2 * y1
            for y3 in range(1, P + 1):
                num = base * (-y3)
                q, r = np.divmod(num, d)
                ok = (r == 0) & (np.abs(q) <= P)
                if not ok.any():
                    continue
                g = np.gcd(np.gcd(np.abs(X1[ok]), np.abs(X2[ok])), np.abs(q[ok]))
                g = np.gcd(g, math.gcd(gy12, y3))
                total += int((g == 1).sum())
    return total


def _slice_chunk(P: int, z_tuple: tuple[int, ...], y1_lo: int, y1_hi: int) -> int:
    Z = set(z_tuple)
    xs = np.arange(-P, P + 1, dtype=np.int64)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    total = 0
    for y1 in range(y1_lo, y1_hi):
        for y2 in range(1, P + 1):
            d = y1 * y2
            base = X1 * y2 + X2 * y1
            for y3 in range(1, P + 1):
                if not (y1 in Z or y2 in Z or y3 in Z):
                    continue
                num = base * (-y3)
                q, r = np.divmod(num, d)
                total += int(((r == 0) & (np.abs(q) <= P)).sum())
    return total


def _run_partitioned(worker, P: int, args: tuple, threads: int) -> int:
    """Split the outermost y1 range into disjoint chunks; deterministic sum."""
    if threads <= 1 or P < 2 * threads:
        return worker(P, *args, 1, P + 1)
    bounds = np.linspace(1, P + 1, threads + 1, dtype=int)
    jobs = [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if a < b]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, P, *args, a, b) for a, b in jobs]
        return sum(f.result() for f in futures)


def naive_count_V(P: int, threads: int = 1) -> CountReport:
    """Exact count of integer sextuples in the box [-P, P]^6 on the cubic
    with y1*y2*y3 != 0 (no coprimality, both signs)."""
    _check_box_bound(P)
    t0 = time.perf_counter()
    total = 8 * _run_partitioned(_octant_chunk, P, (), threads)
    return CountReport(P, "naive", total, time.perf_counter() - t0)


def count_N(B: int, threads: int = 1) -> CountReport:
    """Number of rational points of height at most B away from the degenerate
    locus: unordered +/- pairs of primitive sextuples with y1*y2*y3 != 0 and
    max|coordinate| <= floor(B^(1/3))."""
    if B < 1:
        raise ValueError("height bound must be >= 1")
    R = integer_cube_root(B)
    _check_box_bound(R)
    t0 = time.perf_counter()
    total = 4 * _run_partitioned(_octant_primitive_chunk, R, (), threads)
    return CountReport(B, "naive-primitive", total, time.perf_counter() - t0)


def mobius_check(B: int, threads: int = 1) -> tuple[bool, int]:
    """Check 2*N(B) = sum_{d <= R} mu(d) * V(floor(R/d)) with R = floor(B^(1/3)).

    Returns (equal, 2*N - sum), evaluated with exact integers.
    """
    R = integer_cube_root(B)
    lhs = 2 * count_N(B, threads=threads).count
    rhs = 0
    for d in range(1, R + 1):
        mu = moebius(d)
        if mu:
            rhs += mu * naive_count_V(R // d, threads=threads).count
    return lhs == rhs, lhs - rhs


def group_compose(p: SolutionSextuple, q: SolutionSextuple) -> SolutionSextuple:
    """Product of two nondegenerate points: coordinate-wise mediant-style
    composition (x_i y_i' + x_i' y_i, ..., y_i y_i', ...)."""
    if p.is_degenerate or q.is_degenerate:
        raise ValueError("group law requires y1*y2*y3 != 0 on both points")
    return SolutionSextuple(
        p.x1 * q.y1 + q.x1 * p.y1,
        p.x2 * q.y2 + q.x2 * p.y2,
        p.x3 * q.y3 + q.x3 * p.y3,
        p.y1 * q.y1,
        p.y2 * q.y2,
        p.y3 * q.y3,
    )


def _primitive_count_by_moebius(R: int, box_count) -> int:
    """Primitive tuples in a box of radius R when the unrestricted count at
    radius m is box_count(m): standard Moebius sieve over the scaling d."""
    total = 0
    for d in range(1, R + 1):
        mu = moebius(d)
        if mu:
            total += mu * box_count(R // d)
    return total


def count_degenerate(B: int) -> CountReport:
    """Primitive +/- pairs on the degenerate locus y1*y2*y3 = 0 with
    max|coordinate|^3 <= B.  Split by which y vanish; each case is a free box
    count (the cubic forces x_i = 0 when only y_i = 0, and vanishes identically
    once two of the y are zero), made primitive by a Moebius sieve."""
    if B < 1:
        raise ValueError("height bound must be >= 1")
    t0 = time.perf_counter()
    R = integer_cube_root(B)
    one_zero = _primitive_count_by_moebius(R, lambda m: (2 * m + 1) ** 2 * (2 * m) ** 2)
    two_zero = _primitive_count_by_moebius(R, lambda m: (2 * m + 1) ** 3 * (2 * m))
    all_zero = _primitive_count_by_moebius(R, lambda m: (2 * m + 1) ** 3 - 1)
    total = 3 * one_zero + 3 * two_zero + all_zero
    assert total % 2 == 0
    return CountReport(B, "degenerate", total // 2, time.perf_counter() - t0)


def slice_count(P: int, Z, threads: int = 1) -> CountReport:
    """Solutions counted by V(P) with |y_j| in Z for at least one j."""
    _check_box_bound(P)
    Z = frozenset(Z)
    if any(z < 1 or z > P for z in Z):
        raise ValueError("Z must be a subset of {1..P}")
    t0 = time.perf_counter()
    if not Z:
        return CountReport(P, "slice", 0, time.perf_counter() - t0)
    total = 8 * _run_partitioned(_slice_chunk, P, (tuple(sorted(Z)),), threads)
    return CountReport(P, "slice", total, time.perf_counter() - t0)

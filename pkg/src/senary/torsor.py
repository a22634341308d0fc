"""Descent parametrization of the cubic and the counters built on it.

A nondegenerate solution (x, y) factors through ten descent coordinates
(u, u1, u2, u3, v1, v2, v3, w1, w2, w3): extract u = gcd(y1, y2, y3), then the
pairwise gcds u_j of the reduced y, leaving cofactors w_j; the cubic then
forces w_j | x_j and the quotients v_j satisfy the bilinear relation
u1*v1 + u2*v2 + u3*v3 = 0.  Replacing v by the lattice parameters (r1, r2, r3)
turns the whole solution set into a transparently enumerable family, which is
what the fast exact counter iterates over.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from senary.arith import integer_cube_root
from senary.cubic import CountReport, SolutionSextuple, _check_box_bound


# ---------------------------------------------------------------------------
# coprimality conditions


def pairwise_conditions(u1, u2, u3, w1, w2, w3) -> bool:
    """The elementary coprimality system: u pairwise coprime, (u_j; w_j) = 1,
    w pairwise coprime."""
    return (
        math.gcd(u1, u2) == 1
        and math.gcd(u2, u3) == 1
        and math.gcd(u3, u1) == 1
        and math.gcd(u1, w1) == 1
        and math.gcd(u2, w2) == 1
        and math.gcd(u3, w3) == 1
        and math.gcd(w1, w2) == 1
        and math.gcd(w2, w3) == 1
        and math.gcd(w3, w1) == 1
    )


def monomial_gcd_condition(u1, u2, u3, w1, w2, w3) -> bool:
    """gcd of the six torsor monomials u_i u_k w_j w_k over all permutations
    (i, j, k) of (1, 2, 3) equals 1; equivalent to pairwise_conditions."""
    us = {1: u1, 2: u2, 3: u3}
    ws = {1: w1, 2: w2, 3: w3}
    g = 0
    for i, j, k in itertools.permutations((1, 2, 3)):
        g = math.gcd(g, us[i] * us[k] * ws[j] * ws[k])
    return g == 1


def _primitivity_condition(u, v1, v2, v3, w1, w2, w3) -> bool:
    return math.gcd(math.gcd(u, v1 * w1), math.gcd(v2 * w2, v3 * w3)) == 1


# ---------------------------------------------------------------------------
# tuple types


@dataclass(frozen=True)
class TorsorTupleA:
    """Descent coordinates with explicit v; bijective with nondegenerate
    solutions."""

    u: int
    u1: int
    u2: int
    u3: int
    v1: int
    v2: int
    v3: int
    w1: int
    w2: int
    w3: int

    def __post_init__(self):
        if min(self.u, self.u1, self.u2, self.u3) < 1:
            raise ValueError("u and u_j must be positive")
        if self.w1 == 0 or self.w2 == 0 or self.w3 == 0:
            raise ValueError("w_j must be nonzero")
        if self.u1 * self.v1 + self.u2 * self.v2 + self.u3 * self.v3 != 0:
            raise ValueError("bilinear relation u1*v1 + u2*v2 + u3*v3 = 0 violated")
        if not pairwise_conditions(self.u1, self.u2, self.u3, self.w1, self.w2, self.w3):
            raise ValueError("coprimality conditions violated")


@dataclass(frozen=True)
class TorsorTupleB:
    """Descent coordinates with v replaced by lattice parameters r."""

    u: int
    u1: int
    u2: int
    u3: int
    w1: int
    w2: int
    w3: int
    r1: int
    r2: int
    r3: int

    def __post_init__(self):
        if min(self.u, self.u1, self.u2, self.u3) < 1:
            raise ValueError("u and u_j must be positive")
        if self.w1 == 0 or self.w2 == 0 or self.w3 == 0:
            raise ValueError("w_j must be nonzero")
        if not 1 <= self.r1 <= self.u1:
            raise ValueError("r1 must lie in the residue set {1..u1}")
        if not pairwise_conditions(self.u1, self.u2, self.u3, self.w1, self.w2, self.w3):
            raise ValueError("coprimality conditions violated")

    @property
    def v(self) -> tuple[int, int, int]:
        return (
            self.u2 * self.r3 - self.u3 * self.r2,
            self.u3 * self.r1 - self.u1 * self.r3,
            self.u1 * self.r2 - self.u2 * self.r1,
        )


@dataclass(frozen=True)
class PrimitiveTorsorTuple(TorsorTupleA):
    """TorsorTupleA whose image is a primitive sextuple: additionally
    gcd(u, v1*w1, v2*w2, v3*w3) = 1 (the monomial gcd condition is already
    implied by the pairwise conditions)."""

    def __post_init__(self):
        super().__post_init__()
        if not _primitivity_condition(self.u, self.v1, self.v2, self.v3, self.w1, self.w2, self.w3):
            raise ValueError("primitivity gcd condition violated")


@dataclass(frozen=True)
class TriProjectivePoint:
    """A point of the resolved variety in P^5 x P^2 x P^2."""

    x: tuple[int, int, int]
    y: tuple[int, int, int]
    Y: tuple[int, int, int]
    Z: tuple[int, int, int]

    def __post_init__(self):
        if all(c == 0 for c in self.x + self.y) or all(c == 0 for c in self.Y) or all(c == 0 for c in self.Z):
            raise ValueError("no projective block may vanish entirely")
        if sum(self.x[i] * self.Z[i] for i in range(3)) != 0:
            raise ValueError("linear relation x . Z = 0 violated")
        for i in range(3):
            for j in range(i + 1, 3):
                if self.y[i] * self.Y[j] != self.y[j] * self.Y[i]:
                    raise ValueError("proportionality y ~ Y violated")
        p = self.Y[0] * self.Z[0]
        if self.Y[1] * self.Z[1] != p or self.Y[2] * self.Z[2] != p:
            raise ValueError("Y_i Z_i must be independent of i")

    def same_point(self, other: "TriProjectivePoint") -> bool:
        """Blockwise equality up to scalars (the coordinates are projective)."""

        def proportional(a, b):
            return all(
                a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a))
            )

        return (
            proportional(self.x + self.y, other.x + other.y)
            and proportional(self.Y, other.Y)
            and proportional(self.Z, other.Z)
        )


# ---------------------------------------------------------------------------
# bijections


def params_to_solution_A(t: TorsorTupleA) -> SolutionSextuple:
    """Forward map: (w1*v1, w2*v2, w3*v3, u*u2*u3*w1, u*u1*u3*w2, u*u1*u2*w3)."""
    return SolutionSextuple(
        t.w1 * t.v1,
        t.w2 * t.v2,
        t.w3 * t.v3,
        t.u * t.u2 * t.u3 * t.w1,
        t.u * t.u1 * t.u3 * t.w2,
        t.u * t.u1 * t.u2 * t.w3,
    )


def solution_to_params_A(s: SolutionSextuple) -> TorsorTupleA:
    """Inverse map via the gcd recipe; round-trips exactly."""
    if s.is_degenerate:
        raise ValueError("descent coordinates need y1*y2*y3 != 0")
    u = math.gcd(s.y1, s.y2, s.y3)
    z1, z2, z3 = s.y1 // u, s.y2 // u, s.y3 // u
    u1 = math.gcd(z2, z3)
    u2 = math.gcd(z3, z1)
    u3 = math.gcd(z1, z2)
    w1, rem1 = divmod(z1, u2 * u3)
    w2, rem2 = divmod(z2, u1 * u3)
    w3, rem3 = divmod(z3, u1 * u2)
    assert rem1 == rem2 == rem3 == 0
    v1, rv1 = divmod(s.x1, w1)
    v2, rv2 = divmod(s.x2, w2)
    v3, rv3 = divmod(s.x3, w3)
    assert rv1 == rv2 == rv3 == 0, "w_j must divide x_j on a solution"
    return TorsorTupleA(u, u1, u2, u3, v1, v2, v3, w1, w2, w3)


def params_to_solution_B(t: TorsorTupleB) -> SolutionSextuple:
    """Compose the lattice parametrization of v with the forward map."""
    v1, v2, v3 = t.v
    return params_to_solution_A(
        TorsorTupleA(t.u, t.u1, t.u2, t.u3, v1, v2, v3, t.w1, t.w2, t.w3)
    )


def lift_to_X(s: SolutionSextuple) -> TriProjectivePoint:
    """Lift a nondegenerate solution to the resolved variety."""
    t = solution_to_params_A(s)
    Y = (t.u2 * t.u3 * t.w1, t.u1 * t.u3 * t.w2, t.u1 * t.u2 * t.w3)
    Z = (t.u1 * t.w2 * t.w3, t.u2 * t.w1 * t.w3, t.u3 * t.w1 * t.w2)
    return TriProjectivePoint(x=(s.x1, s.x2, s.x3), y=(s.y1, s.y2, s.y3), Y=Y, Z=Z)


# ---------------------------------------------------------------------------
# enumeration helpers

_PRUNE_FACTOR = 8  # cap |r_i u_j w_k| <= 8P for the four products that are
# unconditional consequences of the box constraints (the remaining two hold
# only under an extra balance assumption, so they are not used for pruning)


def _uw_tuples(P: int, u_lo: int, u_hi: int):
    """All (u, u1, u2, u3, w1, w2, w3) with positive entries, coprimality, and
    the y-box constraints u*u2*u3*w1 <= P, u*u1*u3*w2 <= P, u*u1*u2*w3 <= P."""
    for u in range(u_lo, u_hi):
        Pu = P // u
        for u1 in range(1, Pu + 1):
            for u2 in range(1, Pu // u1 + 1):
                if math.gcd(u1, u2) != 1:
                    continue
                for u3 in range(1, min(Pu // u1, Pu // u2) + 1):
                    if math.gcd(u1, u3) != 1 or math.gcd(u2, u3) != 1:
                        continue
                    for w1 in range(1, Pu // (u2 * u3) + 1):
                        if math.gcd(w1, u1) != 1:
                            continue
                        for w2 in range(1, Pu // (u1 * u3) + 1):
                            if math.gcd(w2, u2) != 1 or math.gcd(w2, w1) != 1:
                                continue
                            for w3 in range(1, Pu // (u1 * u2) + 1):
                                if (
                                    math.gcd(w3, u3) != 1
                                    or math.gcd(w3, w1) != 1
                                    or math.gcd(w3, w2) != 1
                                ):
                                    continue
                                yield u, u1, u2, u3, w1, w2, w3


def _r_pair_count(P, u1, u2, u3, q1, q2, q3) -> int:
    """Count (r1 in {1..u1}, r2, r3) with |u1 r2 - u2 r1| <= q3,
    |u3 r1 - u1 r3| <= q2 and |u2 r3 - u3 r2| <= q1, iterating the shorter of
    the two decoupled intervals and intersecting the coupled one."""
    total = 0
    for r1 in range(1, u1 + 1):
        r2lo = -((q3 - u2 * r1) // u1)
        r2hi = (u2 * r1 + q3) // u1
        r3lo = -((q2 - u3 * r1) // u1)
        r3hi = (u3 * r1 + q2) // u1
        if r2hi < r2lo or r3hi < r3lo:
            continue
        if r2hi - r2lo <= r3hi - r3lo:
            for r2 in range(r2lo, r2hi + 1):
                lo = -((q1 - u3 * r2) // u2)
                hi = (u3 * r2 + q1) // u2
                if lo < r3lo:
                    lo = r3lo
                if hi > r3hi:
                    hi = r3hi
                if hi >= lo:
                    total += hi - lo + 1
        else:
            for r3 in range(r3lo, r3hi + 1):
                lo = -((q1 - u2 * r3) // u3)
                hi = (u2 * r3 + q1) // u3
                if lo < r2lo:
                    lo = r2lo
                if hi > r2hi:
                    hi = r2hi
                if hi >= lo:
                    total += hi - lo + 1
    return total


def _torsor_V_chunk(P: int, prune: bool, u_lo: int, u_hi: int) -> int:
    total = 0
    cap = _PRUNE_FACTOR * P
    for u, u1, u2, u3, w1, w2, w3 in _uw_tuples(P, u_lo, u_hi):
        q1, q2, q3 = P // w1, P // w2, P // w3
        if prune:
            # unconditional consequences of the box constraints
            if u2 * w3 > cap or u3 * w2 > cap:  # |r1 u2 w3|, |r1 u3 w2| with r1 >= 1
                continue
            total += _r_pair_count_pruned(P, u1, u2, u3, w1, w2, w3, q1, q2, q3)
        else:
            total += _r_pair_count(P, u1, u2, u3, q1, q2, q3)
    return total


def _r_pair_count_pruned(P, u1, u2, u3, w1, w2, w3, q1, q2, q3) -> int:
    """Same count with the interval endpoints additionally clipped by the
    unconditional |r1 u2 w3|, |r1 u3 w2| <= 8P and |r2 u1 w3|, |r3 u1 w2| <= 8P."""
    cap = _PRUNE_FACTOR * P
    r1_cap = min(cap // (u2 * w3), cap // (u3 * w2), u1)
    r2_cap = cap // (u1 * w3)
    r3_cap = cap // (u1 * w2)
    total = 0
    for r1 in range(1, r1_cap + 1):
        r2lo = max(-((q3 - u2 * r1) // u1), -r2_cap)
        r2hi = min((u2 * r1 + q3) // u1, r2_cap)
        r3lo = max(-((q2 - u3 * r1) // u1), -r3_cap)
        r3hi = min((u3 * r1 + q2) // u1, r3_cap)
        if r2hi < r2lo or r3hi < r3lo:
            continue
        if r2hi - r2lo <= r3hi - r3lo:
            for r2 in range(r2lo, r2hi + 1):
                lo = max(-((q1 - u3 * r2) // u2), r3lo)
                hi = min((u3 * r2 + q1) // u2, r3hi)
                if hi >= lo:
                    total += hi - lo + 1
        else:
            for r3 in range(r3lo, r3hi + 1):
                lo = max(-((q1 - u2 * r3) // u3), r2lo)
                hi = min((u2 * r3 + q1) // u3, r2hi)
                if hi >= lo:
                    total += hi - lo + 1
    return total


def _run_u_partitioned(worker, bound: int, args: tuple, threads: int) -> int:
    if threads <= 1 or bound < 2 * threads:
        return worker(bound, *args, 1, bound + 1)
    splits = np.linspace(1, bound + 1, threads + 1, dtype=int)
    jobs = [(int(a), int(b)) for a, b in zip(splits, splits[1:]) if a < b]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, bound, *args, a, b) for a, b in jobs]
        return sum(f.result() for f in futures)


def torsor_count_V(P: int, threads: int = 1, prune: bool = False) -> CountReport:
    """Exact V(P) through the descent parametrization: enumerate positive
    (u, u1, u2, u3, w1, w2, w3) under the y-box and coprimality constraints,
    count lattice parameters (r1, r2, r3) meeting the x-box constraints, and
    multiply by 8 for the w-sign orbits."""
    _check_box_bound(P)
    t0 = time.perf_counter()
    total = 8 * _run_u_partitioned(_torsor_V_chunk, P, (prune,), threads)
    return CountReport(P, "torsor", total, time.perf_counter() - t0)


def _torsor_N_chunk(R: int, u_lo: int, u_hi: int) -> int:
    total = 0
    for u, u1, u2, u3, w1, w2, w3 in _uw_tuples(R, u_lo, u_hi):
        m1, m2, m3 = R // w1, R // w2, R // w3
        for v1 in range(-m1, m1 + 1):
            a = u1 * v1
            for v2 in range(-m2, m2 + 1):
                s = a + u2 * v2
                if s % u3:
                    continue
                v3 = -(s // u3)
                if v3 > m3 or v3 < -m3:
                    continue
                if math.gcd(math.gcd(u, abs(v1) * w1), math.gcd(abs(v2) * w2, abs(v3) * w3)) == 1:
                    total += 1
    return total


def torsor_count_N(B: int, threads: int = 1) -> CountReport:
    """Exact N(B) by enumerating primitive torsor tuples.  Each rational point
    corresponds to exactly two tuples sharing v with opposite w; fixing all
    w_j > 0 and weighting the four sign classes of (w2, w3) gives the factor 4."""
    if B < 1:
        raise ValueError("height bound must be >= 1")
    R = integer_cube_root(B)
    _check_box_bound(R)
    t0 = time.perf_counter()
    total = 4 * _run_u_partitioned(_torsor_N_chunk, R, (), threads)
    return CountReport(B, "torsor-primitive", total, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# bijection verification


def _uw_tuples_no_w_coprimality(P: int):
    """Variant dropping the (u_j; w_j) and (w_i; w_j) conditions; negative
    control for the bijection check."""
    for u in range(1, P + 1):
        Pu = P // u
        for u1 in range(1, Pu + 1):
            for u2 in range(1, Pu // u1 + 1):
                if math.gcd(u1, u2) != 1:
                    continue
                for u3 in range(1, min(Pu // u1, Pu // u2) + 1):
                    if math.gcd(u1, u3) != 1 or math.gcd(u2, u3) != 1:
                        continue
                    for w1 in range(1, Pu // (u2 * u3) + 1):
                        for w2 in range(1, Pu // (u1 * u3) + 1):
                            for w3 in range(1, Pu // (u1 * u2) + 1):
                                yield u, u1, u2, u3, w1, w2, w3


def verify_bijection(P: int, drop_w_coprimality: bool = False) -> bool:
    """Enumerate every lattice-parametrized tuple with image in the P-box,
    map forward, and compare the multiset of images with naive enumeration.
    True iff the map is a bijection onto the box solutions."""
    from senary.cubic import naive_count_V

    source = _uw_tuples_no_w_coprimality(P) if drop_w_coprimality else _uw_tuples(P, 1, P + 1)
    images: dict[tuple, int] = {}
    n_tuples = 0
    for u, u1, u2, u3, w1, w2, w3 in source:
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    a1, a2, a3 = s1 * w1, s2 * w2, s3 * w3
                    q1, q2, q3 = P // w1, P // w2, P // w3
                    y = (u * u2 * u3 * a1, u * u1 * u3 * a2, u * u1 * u2 * a3)
                    for r1 in range(1, u1 + 1):
                        r2lo = -((q3 - u2 * r1) // u1)
                        r2hi = (u2 * r1 + q3) // u1
                        r3lo = -((q2 - u3 * r1) // u1)
                        r3hi = (u3 * r1 + q2) // u1
                        for r2 in range(r2lo, r2hi + 1):
                            lo = max(-((q1 - u3 * r2) // u2), r3lo)
                            hi = min((u3 * r2 + q1) // u2, r3hi)
                            for r3 in range(lo, hi + 1):
                                x = (
                                    a1 * (u2 * r3 - u3 * r2),
                                    a2 * (u3 * r1 - u1 * r3),
                                    a3 * (u1 * r2 - u2 * r1),
                                )
                                n_tuples += 1
                                key = x + y
                                images[key] = images.get(key, 0) + 1
    # Images satisfy the cubic and the box constraints by construction, so it
    # suffices to check: no collisions, and the image count matches the naive
    # enumeration (a subset of equal finite size is the whole set).
    expected = naive_count_V(P).count
    no_collision = all(c == 1 for c in images.values())
    return no_collision and len(images) == expected and n_tuples == expected


# ---------------------------------------------------------------------------
# finite-field point counts


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def count_O_Fp(p: int) -> int:
    """Brute-force count of F_p points of the ten-coordinate descent scheme:
    (u, v, u_j, w_j) with u1 v1 + u2 v2 + u3 v3 = 0, some monomial
    u_i u_k w_j w_k nonzero, and (u, v) != 0.  The (u, v) block is counted by
    the kernel dimension of the linear form v -> u . v, reducing the loop to
    the six (u_j, w_j) variables."""
    if not _is_prime(p) or p > 31:
        raise ValueError("p must be a prime <= 31")
    rng = np.arange(p, dtype=np.int64)
    total = 0
    for u1 in range(p):  # chunk the 6D grid over u1 to bound memory
        U2, U3, W1, W2, W3 = np.meshgrid(rng, rng, rng, rng, rng, indexing="ij", sparse=True)
        us = {1: u1, 2: U2, 3: U3}
        ws = {1: W1, 2: W2, 3: W3}
        mono = False
        for i, j, k in itertools.permutations((1, 2, 3)):
            mono = mono | (((us[i] * us[k]) % p != 0) & ((ws[j] * ws[k]) % p != 0))
        u_nonzero = (u1 != 0) | (U2 != 0) | (U3 != 0)
        block = np.where(u_nonzero, p * p**2 - 1, p * p**3 - 1)
        total += int((block * mono).sum())
    return total


def _projective_reps(n: int, p: int):
    """Representatives of P^(n-1)(F_p): first nonzero coordinate equals 1."""
    for lead in range(n):
        prefix = (0,) * lead + (1,)
        for tail in itertools.product(range(p), repeat=n - 1 - lead):
            yield prefix + tail


def count_X_Fp(p: int) -> int:
    """Brute-force count of F_p points of the resolved variety in
    P^5 x P^2 x P^2, enumerating projective representatives and testing the
    three defining equation families."""
    if not _is_prime(p) or p > 7:
        raise ValueError("p must be a prime <= 7")
    P2 = list(_projective_reps(3, p))
    P5 = list(_projective_reps(6, p))
    count = 0
    for Y in P2:
        for Z in P2:
            d = Y[0] * Z[0]
            if (Y[1] * Z[1] - d) % p or (Y[2] * Z[2] - d) % p:
                continue
            for xy in P5:
                x, y = xy[:3], xy[3:]
                if (x[0] * Z[0] + x[1] * Z[1] + x[2] * Z[2]) % p:
                    continue
                if (
                    (y[0] * Y[1] - y[1] * Y[0]) % p
                    or (y[0] * Y[2] - y[2] * Y[0]) % p
                    or (y[1] * Y[2] - y[2] * Y[1]) % p
                ):
                    continue
                count += 1
    return count

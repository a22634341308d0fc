"""Dirichlet series with pairwise coprimality constraints read off a graph.

A finite simple graph on vertices 1..r encodes which pairs of summation
variables must be coprime.  Dividing the constrained series by the product of
the r zeta factors leaves an Euler product whose p-factor is the multilinear
subset polynomial S_G evaluated at (p^-s1, ..., p^-sr); at s = 1 the factor
collapses to an integer combination sum_k b_k p^-k.  This module computes the
polynomial and the b-vector exactly, evaluates the Euler product with a
rigorous tail bound, and cross-checks the identity against direct truncation
of the constrained series.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import zeta as _scipy_zeta

from senary.arith import primes_up_to

_MAX_EDGES = 24  # 2^|E| subset enumeration cap


@dataclass(frozen=True)
class CoprimalityGraph:
    """Simple graph on vertices 1..r; edges mark coprime pairs."""

    r: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one vertex")
        seen = set()
        for e in self.edges:
            k, l = e
            if k == l:
                raise ValueError(f"loop at vertex {k}")
            if not (1 <= k < l <= self.r):
                raise ValueError(f"edge {e} out of range or not sorted")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)

    @classmethod
    def from_edges(cls, r: int, edges) -> "CoprimalityGraph":
        return cls(r, frozenset(tuple(sorted(e)) for e in edges))

    @classmethod
    def parse(cls, spec: str) -> "CoprimalityGraph":
        """Parse 'r=6;edges=1-2,1-3,...' or the built-in name 'senary'."""
        if spec == "senary":
            return SENARY_GRAPH
        r = None
        edges = []
        for part in spec.split(";"):
            key, _, val = part.partition("=")
            if key == "r":
                r = int(val)
            elif key == "edges":
                if val:
                    for e in val.split(","):
                        a, _, b = e.partition("-")
                        edges.append((int(a), int(b)))
            else:
                raise ValueError(f"unknown graph field {key!r}")
        if r is None:
            raise ValueError("graph spec must set r=<vertices>")
        return cls.from_edges(r, edges)

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


SENARY_GRAPH = CoprimalityGraph.from_edges(
    6, [(1, 2), (1, 3), (2, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)]
)


def vertex_set(edge_subset) -> frozenset[int]:
    """Union of the endpoints of the given edges."""
    out: set[int] = set()
    for k, l in edge_subset:
        out.add(k)
        out.add(l)
    return frozenset(out)


@dataclass(frozen=True)
class SubsetPolynomial:
    """Multilinear integer polynomial, stored as bitmask -> coefficient.

    Bit j-1 of a mask stands for the variable attached to vertex j.
    """

    r: int
    terms: tuple[tuple[int, int], ...]  # sorted (mask, coefficient) pairs

    def __post_init__(self):
        d = dict(self.terms)
        if d.get(0) != 1:
            raise ValueError("the empty-set coefficient must be 1")

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def evaluate(self, values):
        """Evaluate at one value per vertex (floats, Fractions, ...)."""
        if len(values) != self.r:
            raise ValueError("need one value per vertex")
        total = 0
        for mask, coeff in self.terms:
            prod = coeff
            m = mask
            j = 0
            while m:
                if m & 1:
                    prod = prod * values[j]
                m >>= 1
                j += 1
            total = total + prod
        return total


@dataclass(frozen=True)
class BVector:
    """Coefficients b_0..b_r of the Euler factor at s = (1, ..., 1)."""

    b: tuple[int, ...]

    def __post_init__(self):
        if self.b[0] != 1:
            raise ValueError("b_0 must be 1")
        if len(self.b) >= 2 and self.b[1] != 0:
            raise ValueError("b_1 must be 0")


@dataclass(frozen=True)
class EvaluationPoint:
    """One real exponent per vertex.

    Euler products need every s_j > 1/2 with all edge sums > 1; direct series
    truncation needs every s_j > 1.  The stricter checks are applied by the
    operations themselves.
    """

    s: tuple[float, ...]

    def __post_init__(self):
        if not self.s:
            raise ValueError("need at least one coordinate")

    @classmethod
    def ones(cls, r: int) -> "EvaluationPoint":
        return cls((1.0,) * r)


def _exponents(s) -> tuple[float, ...]:
    if isinstance(s, EvaluationPoint):
        return s.s
    return tuple(float(v) for v in s)


def _subset_masks(G: CoprimalityGraph):
    edges = G.edge_list
    if len(edges) > _MAX_EDGES:
        raise ValueError(f"too many edges ({len(edges)} > {_MAX_EDGES})")
    # vertex bitmask of each edge
    emasks = [(1 << (k - 1)) | (1 << (l - 1)) for k, l in edges]
    for bits in range(1 << len(edges)):
        vmask = 0
        m = bits
        i = 0
        sign = 1
        while m:
            if m & 1:
                vmask |= emasks[i]
                sign = -sign
            m >>= 1
            i += 1
        yield vmask, sign


def sg_polynomial(G: CoprimalityGraph) -> SubsetPolynomial:
    """S_G = sum over edge subsets U of (-1)^|U| * prod of x_j over the
    vertices touched by U, by direct 2^|E| enumeration."""
    coeffs: dict[int, int] = {}
    for vmask, sign in _subset_masks(G):
        coeffs[vmask] = coeffs.get(vmask, 0) + sign
    terms = tuple(sorted((m, c) for m, c in coeffs.items() if c != 0))
    return SubsetPolynomial(G.r, terms)


def b_coefficients(G: CoprimalityGraph) -> BVector:
    """b_k = sum over edge subsets touching exactly k vertices of (-1)^|U|."""
    b = [0] * (G.r + 1)
    for vmask, sign in _subset_masks(G):
        b[bin(vmask).count("1")] += sign
    return BVector(tuple(b))


def _check_euler_region(G: CoprimalityGraph, s) -> float:
    """Validate the absolute-convergence region; return the minimal exponent
    sum m over (single-edge) vertex sets."""
    s = _exponents(s)
    if len(s) != G.r:
        raise ValueError("need one exponent per vertex")
    if any(sj <= 0.5 for sj in s):
        raise ValueError("each exponent must exceed 1/2")
    if not G.edges:
        return math.inf
    m = min(s[k - 1] + s[l - 1] for k, l in G.edges)
    if m <= 1:
        raise ValueError("every edge's exponent sum must exceed 1")
    return m


def euler_factor(G: CoprimalityGraph, p: int, s, weights=None) -> float:
    """One Euler factor: S_G evaluated at x_j = alpha_j(p) * p^-s_j.

    ``weights`` is an optional per-vertex completely multiplicative weight,
    called as weights(j, p) with j in 1..r; default is the constant 1.
    """
    s = _exponents(s)
    vals = []
    for j in range(1, G.r + 1):
        a = 1.0 if weights is None else weights(j, p)
        vals.append(a * p ** (-s[j - 1]))
    return sg_polynomial(G).evaluate(vals)


def euler_factor_exact(G: CoprimalityGraph, p: int, s) -> Fraction:
    """Exact rational Euler factor for integer exponents."""
    if any(int(sj) != sj for sj in s):
        raise ValueError("exact evaluation needs integer exponents")
    vals = [Fraction(1, p ** int(sj)) for sj in s]
    return sg_polynomial(G).evaluate(vals)


def xi(G: CoprimalityGraph, s, prime_limit: int) -> tuple[float, float]:
    """Euler product of the S_G factors over p <= prime_limit, with a rigorous
    absolute tail bound.

    The log of each omitted factor is bounded by 2 * C * p^-m with C = 2^|E|
    and m the minimal exponent sum over edges; summing over p > L is bounded
    by the integral of t^-m scaled by 1/log 2.
    """
    s = _exponents(s)
    m = _check_euler_region(G, s)
    poly = sg_polynomial(G)
    primes = np.array(primes_up_to(max(prime_limit, 2)).primes, dtype=np.float64)
    product = np.ones_like(primes)
    for mask, coeff in poly.terms:
        if mask == 0:
            continue
        expo = sum(s[j] for j in range(G.r) if mask >> j & 1)
        product += coeff * primes ** (-expo)
    value = float(np.prod(product))
    if math.isinf(m):
        return value, 0.0
    C = 2 ** len(G.edges)
    if C * prime_limit ** (-m) > 0.5:
        raise ValueError("prime_limit too small for a rigorous tail bound")
    tail_log = 2.0 * C * prime_limit ** (1.0 - m) / ((m - 1.0) * math.log(2.0))
    tail = abs(value) * math.expm1(tail_log)
    return value, tail


def _radical_table(N: int) -> tuple[np.ndarray, list[int]]:
    """Map each n in 1..N to the index of its radical; return also the list of
    distinct radicals."""
    sieve = np.ones(N + 1, dtype=bool)
    sieve[: min(2, N + 1)] = False
    rads = np.ones(N + 1, dtype=np.int64)
    for p in range(2, N + 1):
        if sieve[p]:
            sieve[2 * p :: p] = False
            rads[p::p] *= p
    radicals = sorted(set(int(v) for v in rads[1:]))
    index = {v: i for i, v in enumerate(radicals)}
    idx = np.array([index[int(v)] for v in rads[1:]], dtype=np.int64)
    return idx, radicals


def truncated_DG(G: CoprimalityGraph, s, N: int) -> tuple[float, float]:
    """Truncation of the coprimality-constrained series over n in {1..N}^r,
    plus a rigorous tail bound for the infinite series.

    Terms are grouped by the radical of each n_j (coprimality only sees
    radicals); the sum runs over radical tuples by depth-first search with
    precomputed coprimality masks, with the last two vertices contracted into
    a matrix-vector product.
    """
    s = _exponents(s)
    if any(sj <= 1 for sj in s):
        raise ValueError("each exponent must exceed 1 for a convergent tail")
    if len(s) != G.r:
        raise ValueError("need one exponent per vertex")
    if N > 10_000:
        raise ValueError("truncation capped at N = 10^4 (radical-table size)")
    idx, radicals = _radical_table(N)
    R = len(radicals)
    # per-vertex weights: W[j][i] = sum of n^-s_j over n <= N with radical i
    ns = np.arange(1, N + 1, dtype=np.float64)
    W = []
    for j in range(G.r):
        wj = np.zeros(R)
        np.add.at(wj, idx, ns ** (-s[j]))
        W.append(wj)
    rad_arr = np.array(radicals, dtype=np.int64)
    coprime = np.empty((R, R), dtype=bool)
    step = max(1, 2_000_000 // max(R, 1))
    for lo in range(0, R, step):
        coprime[lo : lo + step] = np.gcd.outer(rad_arr[lo : lo + step], rad_arr) == 1
    # order: vertices sorted by decreasing constraint degree for early pruning
    order = sorted(range(1, G.r + 1), key=lambda v: -sum(1 for e in G.edges if v in e))
    adj = {v: set() for v in order}
    for k, l in G.edges:
        adj[k].add(l)
        adj[l].add(k)

    total = 0.0
    if G.r == 1:
        return float(W[0].sum()), _dg_tail(G, s, N)

    head, v_last2, v_last1 = order[:-2], order[-2], order[-1]
    Wa = W[v_last2 - 1]
    Wb = W[v_last1 - 1]
    cross = coprime if v_last1 in adj[v_last2] else np.ones((R, R), dtype=bool)
    assigned: dict[int, int] = {}

    def masks_for(v) -> np.ndarray:
        m = np.ones(R, dtype=bool)
        for u in adj[v]:
            if u in assigned:
                m &= coprime[assigned[u]]
        return m

    def dfs(depth: int, weight: float):
        nonlocal total
        if depth == len(head):
            wa = Wa * masks_for(v_last2)
            wb = Wb * masks_for(v_last1)
            total += weight * float(wa @ cross @ wb)
            return
        v = head[depth]
        mask = masks_for(v)
        wv = W[v - 1]
        for i in np.nonzero(mask)[0]:
            assigned[v] = int(i)
            dfs(depth + 1, weight * wv[i])
        assigned.pop(v, None)

    dfs(0, 1.0)
    return total, _dg_tail(G, s, N)


def _dg_tail(G: CoprimalityGraph, s, N: int) -> float:
    """Union bound: some n_j > N, others unconstrained."""
    tail = 0.0
    for j in range(G.r):
        rest = 1.0
        for k in range(G.r):
            if k != j:
                rest *= float(_scipy_zeta(s[k]))
        tail += N ** (1.0 - s[j]) / (s[j] - 1.0) * rest
    return tail


def zeta_truncated(s: float, prime_limit: int) -> tuple[float, float]:
    """Euler product for zeta(s) over p <= prime_limit with a tail bound on
    the multiplicative error."""
    if s <= 1:
        raise ValueError("need s > 1")
    primes = np.array(primes_up_to(max(prime_limit, 2)).primes, dtype=np.float64)
    value = float(np.prod(1.0 / (1.0 - primes ** (-s))))
    tail_log = 2.0 * prime_limit ** (1.0 - s) / ((s - 1.0) * math.log(2.0))
    return value, value * math.expm1(tail_log)


def verify_theorem3(G: CoprimalityGraph, s, N: int, prime_limit: int):
    """Compare the truncated constrained series against the product of
    truncated zeta factors and the Euler product, within the combined tails.

    Returns (ok, residual, allowance).
    """
    s = _exponents(s)
    lhs, lhs_tail = truncated_DG(G, s, N)
    xi_val, xi_tail = xi(G, s, prime_limit)
    zfac = 1.0
    zrel = 1.0
    for sj in s:
        zv, zt = zeta_truncated(sj, prime_limit)
        zfac *= zv
        zrel *= 1.0 + zt / zv
    rhs = zfac * xi_val
    rhs_err = zfac * (zrel * (abs(xi_val) + xi_tail) - abs(xi_val))
    residual = lhs - rhs
    allowance = lhs_tail + rhs_err
    return abs(residual) <= allowance, residual, allowance


def tg_series_check(G: CoprimalityGraph, degree_cap: int) -> bool:
    """Exact check of the product identity behind the Euler factor: expanding
    the generating series of the pairwise-vanishing indicator against the
    (1 - x_j) product must reproduce S_G coefficientwise.

    Compares integer coefficients up to total degree ``degree_cap``.
    """
    if degree_cap > 8 or G.r > 6:
        raise ValueError("degree_cap <= 8 and r <= 6 required")
    r = G.r
    edges = G.edge_list
    # T coefficients: indicator that every edge has a zero endpoint
    tg: dict[tuple[int, ...], int] = {}
    for n in itertools.product(range(degree_cap + 1), repeat=r):
        if sum(n) > degree_cap:
            continue
        if all(n[k - 1] == 0 or n[l - 1] == 0 for k, l in edges):
            tg[n] = 1
    # multiply by prod_j (1 - x_j)
    prod: dict[tuple[int, ...], int] = dict(tg)
    for j in range(r):
        new: dict[tuple[int, ...], int] = {}
        for expo, c in prod.items():
            new[expo] = new.get(expo, 0) + c
            shifted = list(expo)
            shifted[j] += 1
            if sum(shifted) <= degree_cap:
                key = tuple(shifted)
                new[key] = new.get(key, 0) - c
        prod = new
    lhs = {e: c for e, c in prod.items() if c != 0 and sum(e) <= degree_cap}
    rhs: dict[tuple[int, ...], int] = {}
    for mask, coeff in sg_polynomial(G).terms:
        expo = tuple(1 if mask >> j & 1 else 0 for j in range(r))
        if sum(expo) <= degree_cap:
            rhs[expo] = coeff
    return lhs == rhs

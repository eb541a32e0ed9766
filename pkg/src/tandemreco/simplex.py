"""Constant-weight codes in the half-Manhattan metric on integer simplices.

The ambient space is the set of nonnegative integer vectors of length m+1
with coordinate sum r.  Distance between two such points is half their L1
distance (always an integer).  This module enumerates the simplex, computes
the minimum code distance a given reconstruction budget demands, and builds
codes three ways: exact maximum (branch-and-bound clique search), greedy
(a Gilbert-Varshamov baseline), and congruence classes driven by Sidon sets.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .entropy import binary_entropy, cal_H
from .errors import (
    DimensionMismatchError,
    DomainError,
    ResourceCapError,
    SearchBudgetError,
    WeightMismatchError,
)

SimplexPoint = tuple[int, ...]

DEFAULT_ENUM_CAP = 1_000_000


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient, zero outside Pascal's triangle."""
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def simplex_size(m: int, r: int) -> int:
    return binom(r + m, m)


def enumerate_simplex(m: int, r: int, cap: int | None = None) -> list[SimplexPoint]:
    """All compositions of r into m+1 nonnegative parts, ascending lex order."""
    if m < 0 or r < 0:
        raise DomainError("dimension and weight must be nonnegative")
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    total = simplex_size(m, r)
    if total > cap:
        raise ResourceCapError(f"simplex has {total} points, above cap {cap}")

    out: list[SimplexPoint] = []

    def rec(prefix: list[int], remaining: int, parts_left: int):
        if parts_left == 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for first in range(remaining + 1):
            prefix.append(first)
            rec(prefix, remaining - first, parts_left - 1)
            prefix.pop()

    rec([], r, m + 1)
    return out


def half_manhattan(u: SimplexPoint, v: SimplexPoint) -> int:
    """Half the L1 distance; an integer whenever the coordinate sums agree."""
    if len(u) != len(v):
        raise DimensionMismatchError(f"lengths differ: {len(u)} vs {len(v)}")
    if sum(u) != sum(v):
        raise WeightMismatchError(f"coordinate sums differ: {sum(u)} vs {sum(v)}")
    total = sum(abs(a - b) for a, b in zip(u, v))
    assert total % 2 == 0
    return total // 2


def required_distance(N: int, t: int, m: int) -> int:
    """Smallest code distance that caps shared t-descendant counts at N.

    Scans d = 0, 1, ... until binom(t - d + m, m) <= N.  With the
    zero-outside-triangle convention, N = 0 yields t + 1.
    """
    if N < 0 or t < 0 or m < 0:
        raise DomainError("arguments must be nonnegative")
    d = 0
    while binom(t - d + m, m) > N:
        d += 1
    return d


def required_distance_upper_entropy(N: int, t: int, m: int) -> int:
    """Entropy-threshold upper bound on :func:`required_distance` (needs N > m > 0)."""
    if not N > m > 0:
        raise DomainError(f"need N > m > 0, got N={N}, m={m}")
    if t < 1:
        raise DomainError("need t >= 1")
    threshold = math.log2(N) / m
    d = 0
    while d < t and cal_H(1.0 + (t - d) / m) > threshold:
        d += 1
    return d


def required_distance_upper_log(N: int, t: int, m: int) -> int:
    """Closed-form upper bound max(1, t - floor(log2(N)^2 / (4m))) (needs N > m > 0)."""
    if not N > m > 0:
        raise DomainError(f"need N > m > 0, got N={N}, m={m}")
    if t < 1:
        raise DomainError("need t >= 1")
    return max(1, t - math.floor(math.log2(N) ** 2 / (4 * m)))


def min_half_distance(points: list[SimplexPoint]) -> int | None:
    """Minimum pairwise distance, or None for fewer than two points."""
    if len(points) < 2:
        return None
    return min(half_manhattan(u, v) for u, v in combinations(points, 2))


@dataclass(frozen=True)
class SimplexCode:
    """A set of equal-weight points with its recorded minimum distance."""

    m: int
    r: int
    points: tuple[SimplexPoint, ...]
    min_half_distance: int | None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        for p in self.points:
            if len(p) != self.m + 1 or sum(p) != self.r or any(c < 0 for c in p):
                raise DomainError(f"point {p} not in the ({self.m},{self.r})-simplex")

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def build(cls, m: int, r: int, points: list[SimplexPoint]) -> "SimplexCode":
        pts = tuple(sorted(set(tuple(p) for p in points)))
        return cls(m, r, pts, min_half_distance(list(pts)))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "d": self.min_half_distance,
            "points": [list(p) for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplexCode":
        return cls.build(data["m"], data["r"], [tuple(p) for p in data["points"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# --- exact maximum codes via clique search ---

def max_clique_bitset(adjacency: list[int]) -> list[int]:
    """Exact maximum clique of a graph given as per-vertex neighbor bitmasks.

    Deterministic branch-and-bound with a greedy-coloring bound; vertices
    are explored in index order, so ties resolve lexicographically.  Only
    meant for the desk-scale graphs this library produces.
    """
    n = len(adjacency)
    if n == 0:
        return []

    # greedy seed: lexicographic scan
    best: list[int] = []
    for v in range(n):
        if all(adjacency[v] >> u & 1 for u in best):
            best.append(v)

    def color_sort(cand: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        remaining = cand
        while remaining:
            color += 1
            avail = remaining
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append(v)
                bounds.append(color)
                remaining &= ~(1 << v)
                avail &= ~adjacency[v]
                avail &= ~(1 << v)
        return order, bounds

    current: list[int] = []

    def expand(cand: int):
        nonlocal best
        order, bounds = color_sort(cand)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= len(best):
                return
            v = order[idx]
            current.append(v)
            nxt = cand & adjacency[v]
            if nxt:
                expand(nxt)
            elif len(current) > len(best):
                best = current.copy()
            current.pop()
            cand &= ~(1 << v)

    expand((1 << n) - 1)
    return sorted(best)


def exact_max_code(m: int, r: int, d: int, max_points: int = 2000) -> SimplexCode:
    """A maximum code of the requested distance, by exhaustive clique search.

    Exactness is only offered while the simplex has at most ``max_points``
    points; larger instances raise rather than silently degrade.
    """
    if d < 0:
        raise DomainError("distance must be nonnegative")
    pts = enumerate_simplex(m, r, cap=max_points)
    if d <= 1:
        return SimplexCode.build(m, r, pts)
    n = len(pts)
    adjacency = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if half_manhattan(pts[i], pts[j]) >= d:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    chosen = max_clique_bitset(adjacency)
    return SimplexCode.build(m, r, [pts[i] for i in chosen])


def greedy_code(m: int, r: int, d: int, cap: int | None = None) -> SimplexCode:
    """Lexicographic greedy code; meets the covering lower bound by construction."""
    if d < 0:
        raise DomainError("distance must be nonnegative")
    pts = enumerate_simplex(m, r, cap)
    chosen: list[SimplexPoint] = []
    for p in pts:
        if all(half_manhattan(p, c) >= d for c in chosen):
            chosen.append(p)
    if d >= 1 and m >= 1:
        # every point sits within d-1 of some chosen point
        assert len(chosen) * ball_size(m, d - 1) >= simplex_size(m, r)
    return SimplexCode.build(m, r, chosen)


# --- Sidon sets and congruence codes ---

def is_sidon_set(elements: tuple[int, ...], h: int, modulus: int) -> bool:
    """True iff all h-element multisets of ``elements`` have distinct sums mod modulus."""
    seen: set[int] = set()
    for combo in combinations_with_replacement(elements, h):
        s = sum(combo) % modulus
        if s in seen:
            return False
        seen.add(s)
    return True


def sidon_set(
    h: int,
    size: int,
    modulus_hint: int | None = None,
    budget: int = 500_000,
) -> tuple[tuple[int, ...], int]:
    """Find ``size`` residues whose h-multiset sums are pairwise distinct.

    Searches moduli upward from the counting lower bound (or the hint),
    growing the set greedily with backtracking.  Returns (elements, modulus).
    """
    if h < 1 or size < 1:
        raise DomainError("order and size must be positive")
    if h == 1:
        modulus = max(size, modulus_hint or size)
        return tuple(range(size)), modulus

    start = max(size, binom(size + h - 1, h), modulus_hint or 0)
    checks = 0

    def dfs(current: list[int], begin: int, modulus: int) -> tuple[int, ...] | None:
        nonlocal checks
        if len(current) == size:
            return tuple(current)
        for e in range(begin, modulus):
            checks += 1
            if checks > budget:
                raise SearchBudgetError(f"Sidon search exceeded {budget} attempts")
            current.append(e)
            if is_sidon_set(tuple(current), h, modulus):
                found = dfs(current, e + 1, modulus)
                if found:
                    return found
            current.pop()
        return None

    modulus = start
    while True:
        found = dfs([0], 1, modulus)
        if found is not None:
            assert is_sidon_set(found, h, modulus)
            return found, modulus
        modulus += 1


def congruence_class_sizes(m: int, r: int, weights: tuple[int, ...], modulus: int) -> list[int]:
    """Count simplex points by weighted coordinate sum mod ``modulus``.

    Dynamic program over coordinates; entry c of the result is the number
    of points x with sum(weights[i] * x[i]) = c (mod modulus).
    """
    if len(weights) != m + 1:
        raise DimensionMismatchError(f"need {m + 1} weights, got {len(weights)}")
    dp = [[0] * modulus for _ in range(r + 1)]
    dp[0][0] = 1
    for w in weights:
        ndp = [[0] * modulus for _ in range(r + 1)]
        for s in range(r + 1):
            prev = dp[s]
            row = ndp[s]
            if s == 0:
                row[:] = prev
                continue
            below = ndp[s - 1]
            for c in range(modulus):
                row[c] = prev[c] + below[(c - w) % modulus]
        dp = ndp
    return dp[r]


def sidon_code(m: int, r: int, d: int, cap: int | None = None) -> SimplexCode:
    """Largest congruence class of a Sidon weighting; distance re-verified.

    Weights come from a Sidon set of order d-1: two points closer than d
    would force two distinct small multisets of weights to share a sum.
    Order 0 (d = 1) degenerates to the whole simplex.
    """
    if d < 1:
        raise DomainError("distance must be >= 1")
    pts = enumerate_simplex(m, r, cap)
    if d == 1:
        return SimplexCode.build(m, r, pts)
    weights, modulus = sidon_set(d - 1, m + 1)
    buckets: dict[int, list[SimplexPoint]] = {}
    for p in pts:
        residue = sum(w * c for w, c in zip(weights, p)) % modulus
        buckets.setdefault(residue, []).append(p)
    best_residue = min(buckets, key=lambda a: (-len(buckets[a]), a))
    code = SimplexCode.build(m, r, buckets[best_residue])
    assert code.min_half_distance is None or code.min_half_distance >= d
    return code


def sidon_code_size(m: int, r: int, d: int) -> int:
    """Size of :func:`sidon_code` output, computed by counting instead of listing."""
    if d < 1:
        raise DomainError("distance must be >= 1")
    if d == 1:
        return simplex_size(m, r)
    weights, modulus = sidon_set(d - 1, m + 1)
    return max(congruence_class_sizes(m, r, weights, modulus))


# --- ball sizes and asymptotics ---

def ball_size(m: int, d: int) -> int:
    """Points within distance d of a center that is at least d away from every face."""
    if m < 1 or d < 0:
        raise DomainError("need m >= 1 and d >= 0")
    return sum(binom(m, j) * binom(d, j) * binom(d + m - j, d) for j in range(0, d + 1))


def ball_size_bruteforce(
    m: int, r: int, center: SimplexPoint, d: int, cap: int | None = None
) -> int:
    """Ball size by simplex enumeration; the oracle for :func:`ball_size`."""
    if len(center) != m + 1 or sum(center) != r or any(c < 0 for c in center):
        raise DomainError(f"center {center} not in the ({m},{r})-simplex")
    return sum(1 for p in enumerate_simplex(m, r, cap) if half_manhattan(p, center) <= d)


def asymptotic_simplex_rate(mu: float, rho: float) -> float:
    """Limit exponent (bits per symbol) of maximum code size at fixed distance.

    ``mu`` and ``rho`` are the limiting ratios of dimension and weight to
    the block length.
    """
    if not 0.0 < mu < 1.0:
        raise DomainError(f"dimension ratio must be in (0,1), got {mu}")
    if rho <= 0.0:
        raise DomainError(f"weight ratio must be positive, got {rho}")
    return (mu + rho) * binary_entropy(1.0 / (1.0 + rho / mu))

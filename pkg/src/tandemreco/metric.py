"""The duplication distance and descendant-cone counting.

Within one root's cone the distance has a closed form (half the L1 gap of
the cone coordinates); across cones it is infinite.  Every closed form here
is paired with a literal breadth-first oracle.
"""

from __future__ import annotations

import math

from .duplication import (
    Word,
    _expand_layer,
    _effective_cap,
    _same_params,
    cone_dimension,
    is_irreducible,
    mu_sigma,
    phi,
    psi,
    psi_inv,
    root,
)
from .errors import ConeMismatchError, NotIrreducibleError, WordLengthError
from .simplex import binom


def duplication_distance(x: Word, y: Word) -> int | float:
    """Closed-form distance between equal-length words; math.inf across cones."""
    _same_params(x, y)
    if len(x) != len(y):
        raise WordLengthError(f"length mismatch: {len(x)} vs {len(y)}")
    if root(x) != root(y):
        return math.inf
    _, sx = mu_sigma(phi(x).diff)
    _, sy = mu_sigma(phi(y).diff)
    total = sum(abs(a - b) for a, b in zip(sx, sy))
    assert total % 2 == 0
    return total // 2


def duplication_distance_bfs(
    x: Word, y: Word, t_max: int, cap: int | None = None
) -> int | None:
    """Distance by layered double expansion up to t_max; the oracle for the closed form."""
    _same_params(x, y)
    if len(x) != len(y):
        raise WordLengthError(f"length mismatch: {len(x)} vs {len(y)}")
    cap = _effective_cap(cap)
    k = x.params.k
    lx = {x.symbols}
    ly = {y.symbols}
    for t in range(t_max + 1):
        if lx & ly:
            return t
        lx = _expand_layer(lx, k, cap)
        ly = _expand_layer(ly, k, cap)
    return None


def descendant_count(x: Word, t: int) -> int:
    """Exact size of the t-th descendant layer of an irreducible word."""
    if not is_irreducible(x):
        raise NotIrreducibleError(f"{x!r} is not irreducible")
    m = cone_dimension(x)
    return binom(t + m, m)


def cone_intersection_size(y: Word, y2: Word, t: int) -> int:
    """Number of common t-descendants of two equal-length cone mates."""
    d = duplication_distance(y, y2)
    if math.isinf(d):
        raise ConeMismatchError(
            "words have different roots; their descendant sets never meet"
        )
    if t < d:
        return 0
    m = cone_dimension(root(y))
    return binom(t - d + m, m)


def join_meet(y: Word, y2: Word) -> tuple[Word, Word]:
    """Least common descendant and greatest common ancestor within one cone."""
    _same_params(y, y2)
    r0 = root(y)
    if root(y2) != r0:
        raise ConeMismatchError("words have different roots")
    u = psi(r0, y)
    v = psi(r0, y2)
    join = psi_inv(r0, tuple(max(a, b) for a, b in zip(u, v)))
    meet = psi_inv(r0, tuple(min(a, b) for a, b in zip(u, v)))
    return join, meet

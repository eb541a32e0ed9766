"""Entropy helpers used by both the code-size and the capacity machinery."""

import math

from .errors import DomainError


def binary_entropy(p: float) -> float:
    """Binary entropy in bits, with the 0*log(0) = 0 convention."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability out of range: {p}")
    out = 0.0
    if p > 0.0:
        out -= p * math.log2(p)
    if p < 1.0:
        out -= (1.0 - p) * math.log2(1.0 - p)
    return out


def q_ary_entropy(xi: float, q: int) -> float:
    """q-ary entropy in base-q units."""
    if q < 2:
        raise DomainError("alphabet size must be >= 2")
    if not 0.0 <= xi <= 1.0:
        raise DomainError(f"argument out of range: {xi}")
    lq = math.log(q)
    out = 0.0
    if xi > 0.0:
        out += -xi * math.log(xi) / lq + xi * math.log(q - 1) / lq
    if xi < 1.0:
        out += -(1.0 - xi) * math.log(1.0 - xi) / lq
    return out


def cal_H(x: float) -> float:
    """x * binary_entropy(1/x) for x >= 1; grows like log2(x) + log2(e)."""
    if x < 1.0:
        raise DomainError(f"argument must be >= 1, got {x}")
    return x * binary_entropy(1.0 / x)

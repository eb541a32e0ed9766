"""Numerical capacity engine.

Irreducible words correspond, through the prefix/difference transform, to
strings whose zero runs are shorter than k.  That constrained system has a
k-state transfer graph; its dominant eigenvalue fixes the growth rate of
irreducible words, and the stationary Markov chain on the graph fixes the
typical density of nonzero symbols.  On top of those two numbers sits a
one-parameter rate curve for reconstruction codes, maximized here by a
contraction fixed point with an independent bisection cross-check.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .duplication import DupParams, Word
from .entropy import binary_entropy, cal_H, q_ary_entropy
from .errors import (
    DegenerateParamsError,
    DomainError,
    InvertedIntervalError,
    NonConvergenceError,
    RegimeParamsError,
)
from .simplex import required_distance, required_distance_upper_log

__all__ = [
    "binary_entropy",
    "q_ary_entropy",
    "cal_H",
    "perron_lambda",
    "irr_capacity",
    "pi1",
    "default_theta",
    "ConstraintGraph",
    "build_chain",
    "sample_rll",
    "rate_R",
    "rate_R_alt",
    "rate_R_prime",
    "fixed_point_map",
    "x0_solve",
    "x0_bisect",
    "x0_bounds",
    "refine_bounds",
    "hamming_fraction_bound",
    "regime_distance",
    "CapacityProfile",
    "capacity_profile",
]


def _char_poly(x: float, q: int, k: int) -> float:
    return x ** (k + 1) - q * x**k + (q - 1)


def perron_lambda(params: DupParams) -> float:
    """Dominant eigenvalue of the k-state zero-run-limited transfer graph.

    For k = 1 the graph has a single state and the eigenvalue is q - 1
    exactly (degenerate when q = 2: the constrained system then holds one
    word per length).  For k >= 2, bisection on the sign change of
    x^(k+1) - q x^k + (q-1) between max(1, q-1) and q.
    """
    q, k = params.q, params.k
    if k == 1:
        return float(q - 1)
    lo, hi = max(1.0, float(q - 1)), float(q)
    while hi - lo > 1e-13:
        mid = (lo + hi) / 2.0
        if _char_poly(mid, q, k) < 0.0:
            lo = mid
        else:
            hi = mid
    # Newton polish to machine precision (the root is simple and well away
    # from the derivative's zeros on this bracket)
    lam = (lo + hi) / 2.0
    for _ in range(4):
        slope = (k + 1) * lam**k - q * k * lam ** (k - 1)
        step = _char_poly(lam, q, k) / slope
        lam -= step
        if abs(step) < 1e-15 * lam:
            break
    return lam


def irr_capacity(params: DupParams) -> float:
    """Growth exponent (base-q) of the number of irreducible words."""
    return math.log(perron_lambda(params)) / math.log(params.q)


def pi1(params: DupParams) -> float:
    """Stationary probability of the zero-run-reset state; in (1/2, 1)."""
    if params.k < 2:
        raise DegenerateParamsError("stationary weight density needs k >= 2")
    lam = perron_lambda(params)
    return (lam - 1.0) / (lam - params.k * (params.q - lam))


def default_theta(params: DupParams) -> float:
    """Default target weight density: just under the stationary density."""
    return pi1(params) - 0.01


@dataclass(frozen=True)
class ConstraintGraph:
    """Transfer graph of the zero-run constraint plus its stationary chain."""

    params: DupParams
    adjacency: tuple[tuple[int, ...], ...]
    right_eig: tuple[float, ...]
    left_eig: tuple[float, ...]
    transition: tuple[tuple[float, ...], ...]
    stationary: tuple[float, ...]


def build_chain(params: DupParams) -> ConstraintGraph:
    """Adjacency matrix, eigenvectors, transition matrix and stationary law.

    State i remembers a running block of i zeros; from state i one of the
    q-1 nonzero symbols returns to state 0 and the zero symbol advances to
    state i+1 (impossible from state k-1).
    """
    q, k = params.q, params.k
    lam = perron_lambda(params)

    adjacency = tuple(
        tuple((q - 1 if j == 0 else (1 if j == i + 1 else 0)) for j in range(k))
        for i in range(k)
    )
    # right eigenvector by the stable backward recurrence
    # v[k-1] = (q-1)/lambda, v[j] = (v[j+1] + q - 1)/lambda (v[0] comes out 1);
    # the equivalent closed form lam^j - (q-1)(lam^j-1)/(lam-1) cancels badly
    # at larger k.  The left eigenvector is geometric.
    right = [0.0] * k
    right[k - 1] = (q - 1) / lam
    for j in range(k - 2, -1, -1):
        right[j] = (right[j + 1] + (q - 1)) / lam
    left = [lam ** (k - 1 - j) for j in range(k)]

    transition = tuple(
        tuple(adjacency[i][j] * right[j] / (lam * right[i]) for j in range(k))
        for i in range(k)
    )
    unnormalized = [left[j] * right[j] for j in range(k)]
    total = sum(unnormalized)
    stationary = tuple(p / total for p in unnormalized)

    for i in range(k):
        assert abs(sum(transition[i]) - 1.0) < 1e-12
        assert right[i] > 0.0 and left[i] > 0.0
    for j in range(k):
        back = sum(stationary[i] * transition[i][j] for i in range(k))
        assert abs(back - stationary[j]) < 1e-10

    return ConstraintGraph(
        params, adjacency, tuple(right), tuple(left), transition, stationary
    )


def sample_rll(params: DupParams, length: int, seed: int) -> Word:
    """Walk the stationary chain to emit a zero-run-limited word; seeded."""
    if length < 0:
        raise DomainError("length must be nonnegative")
    chain = build_chain(params)
    rng = random.Random(seed)
    q, k = params.q, params.k

    # start from the stationary law
    u = rng.random()
    state = 0
    acc = 0.0
    for j, p in enumerate(chain.stationary):
        acc += p
        if u < acc:
            state = j
            break

    symbols = []
    for _ in range(length):
        u = rng.random()
        if state + 1 < k and u < chain.transition[state][state + 1]:
            symbols.append(0)
            state += 1
        else:
            symbols.append(rng.randrange(1, q))
            state = 0
    return Word(tuple(symbols), params)


def _check_rate_domain(gamma: float, theta: float, params: DupParams) -> None:
    if params.k < 2:
        raise DegenerateParamsError("rate analysis needs k >= 2")
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"gamma must be in (0,1), got {gamma}")
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must be in (0,1), got {theta}")
    if params.k * theta <= 1.0:
        raise DomainError(f"need k*theta > 1, got {params.k * theta}")


def rate_R(gamma: float, theta: float, params: DupParams) -> float:
    """Rate of root-fraction gamma: entropy of roots plus in-cone code rate."""
    _check_rate_domain(gamma, theta, params)
    cap = irr_capacity(params)
    k = params.k
    arg = 1.0 + (1.0 - gamma) / (k * theta * gamma)
    return gamma * cap + theta * gamma / math.log2(params.q) * cal_H(arg)


def rate_R_alt(gamma: float, theta: float, params: DupParams) -> float:
    """Same curve written with base-q logarithms; must agree with :func:`rate_R`."""
    _check_rate_domain(gamma, theta, params)
    cap = irr_capacity(params)
    lq = math.log(params.q)
    u = (1.0 - gamma) / gamma / (params.k * theta)
    bracket = (1.0 + u) * math.log(1.0 + u) / lq - u * math.log(u) / lq
    return gamma * cap + theta * gamma * bracket


def rate_R_prime(gamma: float, theta: float, params: DupParams) -> float:
    """Closed-form derivative of the rate curve."""
    _check_rate_domain(gamma, theta, params)
    cap = irr_capacity(params)
    k = params.k
    lq = math.log(params.q)
    u = (1.0 - gamma) / gamma / (k * theta)
    return cap + ((k * theta - 1.0) * math.log(1.0 + u) + math.log(u)) / (k * lq)


def fixed_point_map(z: float, theta: float, params: DupParams) -> float:
    """One step of the contraction whose fixed point maximizes the rate curve."""
    if params.k * theta <= 1.0:
        raise DomainError(f"need k*theta > 1, got {params.k * theta}")
    e = params.k * theta - 1.0
    a = perron_lambda(params) ** (-params.k)
    return a / (1.0 + a / (1.0 + z) ** e) ** e


def x0_solve(
    theta: float, params: DupParams, tol: float = 1e-12
) -> tuple[float, float, int]:
    """Maximizing point of the rate curve by fixed-point iteration.

    Returns (x0, gamma0, iterations) where gamma0 = 1 / (1 + x0).  The
    iteration starts at 1/2 and is a contraction, so the convergence guard
    never fires for valid parameters.
    """
    if params.k < 2:
        raise DegenerateParamsError("rate analysis needs k >= 2")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    z = 0.5
    for iteration in range(1, 501):
        nxt = fixed_point_map(z, theta, params)
        if abs(nxt - z) < tol:
            z = nxt
            x0 = params.k * theta * z
            return x0, 1.0 / (1.0 + x0), iteration
        z = nxt
    raise NonConvergenceError("fixed-point iteration did not settle in 500 steps")


def x0_bisect(theta: float, params: DupParams, tol: float = 1e-12) -> float:
    """Independent root of the stationarity equation; cross-check for the solver."""
    if params.k < 2:
        raise DegenerateParamsError("rate analysis needs k >= 2")
    kt = params.k * theta
    if kt <= 1.0:
        raise DomainError(f"need k*theta > 1, got {kt}")
    a = perron_lambda(params) ** (-params.k)

    def residual(x: float) -> float:
        return (1.0 + x / kt) ** (kt - 1.0) * (x / kt) - a

    lo, hi = 0.0, kt
    while hi - lo > tol / 10.0:
        mid = (lo + hi) / 2.0
        if residual(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def x0_bounds(theta: float, params: DupParams) -> tuple[float, float]:
    """A priori sandwich around the maximizing point."""
    if params.k < 2:
        raise DegenerateParamsError("rate analysis needs k >= 2")
    kt = params.k * theta
    if kt <= 1.0:
        raise DomainError(f"need k*theta > 1, got {kt}")
    q, k = params.q, params.k
    cap = irr_capacity(params)
    a = perron_lambda(params) ** (-k)  # equals q**(-cap*k)
    lower = kt / ((2.0**theta * q**cap) ** k - 1.0)
    upper_root = 0.5 * (
        math.sqrt((1.0 - a) ** 2 + kt * q**2 * a) - (1.0 - a)
    )
    upper_coarse = kt * q**2 / (4.0 * (q ** (cap * k) - 1.0))
    return lower, min(upper_root, upper_coarse)


def refine_bounds(
    z_lower: float,
    z_upper: float,
    theta: float,
    params: DupParams,
    steps: int,
) -> tuple[float, float]:
    """Tighten a sandwich (in the normalized variable z = x/(k*theta)).

    The map is monotone and contracts by at least 9/16 per step, so a valid
    sandwich stays valid and shrinks geometrically.
    """
    if z_lower > z_upper:
        raise InvertedIntervalError(f"inverted interval: [{z_lower}, {z_upper}]")
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    lo, hi = z_lower, z_upper
    for _ in range(steps):
        lo = fixed_point_map(lo, theta, params)
        hi = fixed_point_map(hi, theta, params)
    return lo, hi


def hamming_fraction_bound(n: int, xi: float, params: DupParams) -> float:
    """Upper bound on the fraction of low-weight difference strings."""
    q, k = params.q, params.k
    if n <= k:
        raise DomainError(f"need n > k, got n={n}, k={k}")
    if not 0.0 < xi < 1.0 - 1.0 / q:
        raise DomainError(f"xi must be in (0, 1 - 1/q), got {xi}")
    return q ** ((n - k) * (q_ary_entropy(xi, q) - 1.0))


def regime_distance(
    params: DupParams,
    theta: float,
    gamma: float,
    n: int,
    regime: int,
    regime_params: dict,
) -> int:
    """Required code distance at block length n under an asymptotic regime.

    Regime 1 fixes the duplication count t and takes the uncertainty N
    directly; regime 2 scales N = 2^(alpha n) and t = beta n.  Returns the
    exact required distance for the derived (N, t, m).
    """
    if not 0.0 < gamma < 1.0 or not 0.0 < theta < 1.0:
        raise RegimeParamsError("theta and gamma must be in (0,1)")
    if n < 1:
        raise RegimeParamsError("block length must be positive")
    m_n = math.ceil(theta * gamma * n)
    r_n = (1.0 - gamma) * n / params.k - 1.0
    if r_n < 0.0:
        raise RegimeParamsError(f"no room for duplications at n={n}, gamma={gamma}")

    if regime == 1:
        try:
            big_n, t_n = int(regime_params["N"]), int(regime_params["t"])
        except KeyError as missing:
            raise RegimeParamsError(f"regime 1 needs parameter {missing}") from None
        if big_n < 0 or t_n < 1:
            raise RegimeParamsError("regime 1 needs N >= 0 and t >= 1")
    elif regime == 2:
        try:
            alpha, beta = float(regime_params["alpha"]), float(regime_params["beta"])
        except KeyError as missing:
            raise RegimeParamsError(f"regime 2 needs parameter {missing}") from None
        if alpha <= 0.0 or beta <= 0.0:
            raise RegimeParamsError("regime 2 needs alpha, beta > 0")
        exponent = alpha * n
        # exact floor for moderate exponents; huge N only matters through log2(N)
        big_n = int(2.0**exponent) if exponent < 960 else 1 << math.floor(exponent)
        t_n = max(1, round(beta * n))
    else:
        raise RegimeParamsError(f"unknown regime {regime!r}")

    d = required_distance(big_n, t_n, m_n)
    if 1 <= big_n <= m_n:
        assert d == t_n
    if big_n > m_n > 0:
        assert d <= required_distance_upper_log(big_n, t_n, m_n)
    return d


@dataclass(frozen=True)
class CapacityProfile:
    """Everything the rate analysis produces for one parameter pair."""

    params: DupParams
    lambda_: float
    cap_irr: float
    pi1: float
    theta: float
    x0: float
    gamma0: float
    rate_at_gamma0: float

    def to_json(self) -> dict:
        return {
            "q": self.params.q,
            "k": self.params.k,
            "lambda": self.lambda_,
            "cap_irr": self.cap_irr,
            "pi1": self.pi1,
            "theta": self.theta,
            "x0": self.x0,
            "gamma0": self.gamma0,
            "rate_at_gamma0": self.rate_at_gamma0,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def capacity_profile(
    params: DupParams, theta: float | None = None, tol: float = 1e-12
) -> CapacityProfile:
    """Run the whole engine: eigenvalue, stationary density, rate maximum."""
    q, k = params.q, params.k
    lam = perron_lambda(params)
    cap = irr_capacity(params)
    p1 = pi1(params)
    theta = default_theta(params) if theta is None else theta
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must be in (0,1), got {theta}")
    if k * theta <= 1.0:
        raise DomainError(f"need k*theta > 1, got {k * theta}")
    x0, gamma0, _ = x0_solve(theta, params, tol)

    # positivity of pi1 gives lam > q*k/(k+1); pi1 < 1 gives lam > q - 1/k
    assert max(q - q / (k + 1), q - 1.0 / k) < lam < q
    assert 0.5 < p1 < 1.0
    assert 0.0 < x0 < k * theta

    return CapacityProfile(
        params=params,
        lambda_=lam,
        cap_irr=cap,
        pi1=p1,
        theta=theta,
        x0=x0,
        gamma0=gamma0,
        rate_at_gamma0=rate_R(gamma0, theta, params),
    )

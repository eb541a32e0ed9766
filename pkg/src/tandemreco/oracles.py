"""Brute-force cross-check suites.

Each suite pits a closed form against literal enumeration over a bounded
range and reports every mismatch.  The command line exposes them; the
acceptance tests run them at their contractual ranges.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .duplication import DupParams, Word, descendants
from .metric import (
    cone_intersection_size,
    descendant_count,
    duplication_distance,
    duplication_distance_bfs,
)
from .simplex import (
    ball_size,
    ball_size_bruteforce,
    enumerate_simplex,
    min_half_distance,
    required_distance,
    required_distance_upper_entropy,
    required_distance_upper_log,
    sidon_code,
)
from .utr import UtrCode, irreducible_words, is_utr_code_direct, is_utr_code_reduced

MAX_REPORTED = 5


@dataclass
class OracleResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, condition: bool, describe) -> None:
        self.checks += 1
        if not condition and len(self.failures) < MAX_REPORTED:
            self.failures.append(describe())

    def summary(self) -> str:
        status = "OK" if self.ok else "FAIL"
        line = f"{self.name}: {self.checks} checks, {status}"
        for f in self.failures:
            line += f"\n  counterexample: {f}"
        return line


def _all_roots(q: int, k: int, max_len: int) -> list[Word]:
    params = DupParams(q, k)
    out: list[Word] = []
    for length in range(k, max_len + 1):
        out.extend(irreducible_words(params, length))
    return out


def suite_cone_count(
    qs=(2, 3), ks=(1, 2), max_root_len: int = 6, max_t: int = 3
) -> OracleResult:
    """Descendant-layer sizes against the balls-in-bins closed form."""
    result = OracleResult("cone-count")
    for q in qs:
        for k in ks:
            for x in _all_roots(q, k, max_root_len):
                for t in range(max_t + 1):
                    got = len(descendants(x, t))
                    want = descendant_count(x, t)
                    result.record(
                        got == want,
                        lambda x=x, t=t, got=got, want=want: (
                            f"|descendants({x!r}, {t})| = {got}, formula says {want}"
                        ),
                    )
    return result


def suite_intersection(
    qs=(2, 3), ks=(1, 2), max_root_len: int = 6, max_s: int = 2, max_t: int = 3
) -> OracleResult:
    """Pairwise intersection sizes against the shifted-cone closed form."""
    result = OracleResult("intersection")
    for q in qs:
        for k in ks:
            for x in _all_roots(q, k, max_root_len):
                layer = {x}
                for s in range(max_s + 1):
                    members = sorted(layer, key=lambda w: w.symbols)
                    tables = {
                        w: [descendants(w, t) for t in range(max_t + 1)]
                        for w in members
                    }
                    for i in range(len(members)):
                        for j in range(i + 1, len(members)):
                            y, y2 = members[i], members[j]
                            for t in range(max_t + 1):
                                got = len(tables[y][t] & tables[y2][t])
                                want = cone_intersection_size(y, y2, t)
                                result.record(
                                    got == want,
                                    lambda y=y, y2=y2, t=t, got=got, want=want: (
                                        f"|D^{t}({y!r}) & D^{t}({y2!r})| = {got},"
                                        f" formula says {want}"
                                    ),
                                )
                    if s < max_s:
                        layer = descendants(x, s + 1)
    return result


def suite_distance(
    qs=(2, 3), ks=(1, 2), max_root_len: int = 5, max_s: int = 2
) -> OracleResult:
    """Closed-form distance against layered search, plus cross-cone pairs."""
    result = OracleResult("distance")
    for q in qs:
        for k in ks:
            roots = _all_roots(q, k, max_root_len)
            for x in roots:
                for s in range(max_s + 1):
                    members = sorted(descendants(x, s), key=lambda w: w.symbols)
                    for i in range(len(members)):
                        for j in range(i, len(members)):
                            y, y2 = members[i], members[j]
                            want = duplication_distance(y, y2)
                            got = duplication_distance_bfs(y, y2, t_max=max_s * k + 2)
                            result.record(
                                got == want,
                                lambda y=y, y2=y2, got=got, want=want: (
                                    f"distance({y!r}, {y2!r}): bfs {got} vs formula {want}"
                                ),
                            )
            # a few cross-root pairs of equal length must be unreachable
            by_len: dict[int, list[Word]] = {}
            for x in roots:
                by_len.setdefault(len(x), []).append(x)
            for length, group in by_len.items():
                for a, b in zip(group, group[1:]):
                    want = duplication_distance(a, b)
                    got = duplication_distance_bfs(a, b, t_max=3)
                    result.record(
                        math.isinf(want) and got is None,
                        lambda a=a, b=b, got=got, want=want: (
                            f"cross-cone pair {a!r}, {b!r}: bfs {got}, formula {want}"
                        ),
                    )
    return result


def _random_code(
    rng: random.Random, params: DupParams, n: int, N: int, t: int
) -> UtrCode:
    q = params.q
    total = q**n
    size = rng.randint(1, min(5, total))
    picks = rng.sample(range(total), size)
    words = []
    for value in picks:
        digits = []
        v = value
        for _ in range(n):
            digits.append(v % q)
            v //= q
        words.append(Word(tuple(reversed(digits)), params))
    return UtrCode(params, n, N, t, tuple(words))


def suite_checker(
    qs=(2, 3),
    ks=(1, 2),
    max_n: int = 6,
    ts=(1, 2),
    max_N: int = 3,
    samples: int = 100,
    seed: int = 20240,
) -> OracleResult:
    """Direct and reduced validity checkers must agree on random codes."""
    result = OracleResult("checker")
    rng = random.Random(seed)
    for q in qs:
        for k in ks:
            params = DupParams(q, k)
            for n in range(1, max_n + 1):
                for t in ts:
                    for N in range(0, max_N + 1):
                        for _ in range(samples):
                            code = _random_code(rng, params, n, N, t)
                            direct = is_utr_code_direct(code)
                            reduced = is_utr_code_reduced(code)
                            result.record(
                                direct.ok == reduced.ok,
                                lambda code=code, direct=direct, reduced=reduced: (
                                    f"checkers disagree on {code.to_json()}:"
                                    f" direct={direct.ok} reduced={reduced.ok}"
                                ),
                            )
    return result


def suite_ball(max_m: int = 4, max_d: int = 3) -> OracleResult:
    """Interior ball sizes against enumeration, all interior centers."""
    result = OracleResult("ball")
    for m in range(1, max_m + 1):
        for d in range(0, max_d + 1):
            r = (m + 1) * d + 2
            for center in enumerate_simplex(m, r):
                if min(center) < d:
                    continue
                got = ball_size_bruteforce(m, r, center, d)
                want = ball_size(m, d)
                result.record(
                    got == want,
                    lambda m=m, d=d, center=center, got=got, want=want: (
                        f"ball(m={m}, d={d}, center={center}): brute {got} vs formula {want}"
                    ),
                )
    return result


def suite_bounds(
    samples: int = 10_000, triv_samples: int = 1_000, seed: int = 51423
) -> OracleResult:
    """Distance-requirement bound ordering and the small-N collapse."""
    result = OracleResult("bounds")
    rng = random.Random(seed)
    for _ in range(samples):
        m = rng.randint(1, 40)
        t = rng.randint(1, 50)
        big_n = rng.randint(m + 1, 2**20)
        exact = required_distance(big_n, t, m)
        ent = required_distance_upper_entropy(big_n, t, m)
        log = required_distance_upper_log(big_n, t, m)
        result.record(
            exact <= ent <= log,
            lambda m=m, t=t, big_n=big_n, exact=exact, ent=ent, log=log: (
                f"(N={big_n}, t={t}, m={m}): exact {exact}, entropy {ent}, log {log}"
            ),
        )
    for _ in range(triv_samples):
        m = rng.randint(1, 60)
        t = rng.randint(1, 50)
        big_n = rng.randint(1, m)
        exact = required_distance(big_n, t, m)
        result.record(
            exact == t,
            lambda m=m, t=t, big_n=big_n, exact=exact: (
                f"(N={big_n} <= m={m}, t={t}): exact {exact}, expected {t}"
            ),
        )
    return result


def suite_sidon(max_m: int = 5, max_r: int = 8, max_d: int = 3) -> OracleResult:
    """Congruence-class codes must deliver their promised distance."""
    result = OracleResult("sidon")
    for m in range(1, max_m + 1):
        for r in range(0, max_r + 1):
            for d in range(1, max_d + 1):
                code = sidon_code(m, r, d)
                dist = min_half_distance(list(code.points))
                result.record(
                    dist is None or dist >= d,
                    lambda m=m, r=r, d=d, dist=dist: (
                        f"sidon_code({m},{r},{d}) has distance {dist}"
                    ),
                )
    return result


ALL_SUITES = {
    "cone-count": suite_cone_count,
    "intersection": suite_intersection,
    "distance": suite_distance,
    "checker": suite_checker,
    "ball": suite_ball,
    "bounds": suite_bounds,
    "sidon": suite_sidon,
}

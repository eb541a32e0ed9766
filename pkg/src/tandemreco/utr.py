"""Reconstruction codes for the uniform tandem-duplication channel.

A code with uncertainty N at duplication count t is a set of equal-length
words whose distinct members never share more than N common t-step
descendants; any N+1 distinct reads then pin the codeword down.  Validity
can be checked literally (expand descendant sets) or through the cone
reduction (per-root minimum distance of the coordinate images); both
checkers live here, along with size accounting, a code construction built
on the capacity engine, the decoder, and a channel simulation harness.
"""

from __future__ import annotations

import json
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple

from .capacity import capacity_profile
from .duplication import (
    DupParams,
    Word,
    _same_params,
    channel_sample,
    cone_dimension,
    descendants,
    is_irreducible,
    phi_inv,
    PhiImage,
    psi,
    psi_inv,
    root,
)
from .errors import (
    AmbiguityError,
    ConeMismatchError,
    DomainError,
    InfeasibleGeometryError,
    NoCandidateError,
    ParamsMismatchError,
    ResourceCapError,
    WordLengthError,
)
from .metric import descendant_count
from .simplex import (
    exact_max_code,
    greedy_code,
    half_manhattan,
    max_clique_bitset,
    required_distance,
    sidon_code,
    sidon_code_size,
)


@dataclass(frozen=True)
class UtrCode:
    """An (N, t) reconstruction code: equal-length codewords plus its budget."""

    params: DupParams
    n: int
    N: int
    t: int
    codewords: tuple[Word, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("codeword length must be positive")
        if self.N < 0 or self.t < 0:
            raise DomainError("uncertainty and duplication count must be nonnegative")
        ordered = tuple(sorted(set(self.codewords), key=lambda w: w.symbols))
        object.__setattr__(self, "codewords", ordered)
        for w in ordered:
            if w.params != self.params:
                raise ParamsMismatchError(f"codeword {w!r} carries {w.params}")
            if len(w) != self.n:
                raise WordLengthError(f"codeword {w!r} does not have length {self.n}")

    def __len__(self) -> int:
        return len(self.codewords)

    def rate(self) -> float:
        if not self.codewords:
            return float("-inf")
        return math.log(len(self.codewords), self.params.q) / self.n

    @cached_property
    def cone_index(self) -> dict[Word, list[tuple[Word, tuple[int, ...]]]]:
        """Codewords grouped by root, each with its cone coordinates."""
        index: dict[Word, list[tuple[Word, tuple[int, ...]]]] = defaultdict(list)
        for w in self.codewords:
            if len(w) >= self.params.k:
                r = root(w)
                index[r].append((w, psi(r, w)))
        return dict(index)

    def to_json(self) -> dict:
        return {
            "q": self.params.q,
            "k": self.params.k,
            "n": self.n,
            "N": self.N,
            "t": self.t,
            "codewords": [w.text() for w in self.codewords],
        }

    @classmethod
    def from_json(cls, data: dict) -> "UtrCode":
        params = DupParams(data["q"], data["k"])
        words = tuple(Word.parse(s, params) for s in data["codewords"])
        return cls(params, data["n"], data["N"], data["t"], words)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "UtrCode":
        return cls.from_json(json.loads(text))


class UtrCheck(NamedTuple):
    """Checker verdict; on failure, the violating pair and the number seen."""

    ok: bool
    witness: tuple[Word, Word] | None = None
    detail: int | None = None


def is_utr_code_direct(code: UtrCode, cap: int | None = None) -> UtrCheck:
    """Definition checked literally: expand and intersect every pair's descendants."""
    words = code.codewords
    desc = [descendants(w, code.t, cap) for w in words]
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            shared = len(desc[i] & desc[j])
            if shared > code.N:
                return UtrCheck(False, (words[i], words[j]), shared)
    return UtrCheck(True)


def is_utr_code_reduced(code: UtrCode) -> UtrCheck:
    """Definition checked through the cone reduction.

    Words with different roots never share descendants; within one root's
    cone the shared-descendant bound is equivalent to a minimum distance on
    the coordinate images.  Must agree with :func:`is_utr_code_direct`.
    """
    if code.n < code.params.k:
        return UtrCheck(True)
    k = code.params.k
    for r, members in code.cone_index.items():
        rr = (code.n - len(r)) // k
        assert (code.n - len(r)) % k == 0 and rr < code.n // k
        if len(members) < 2:
            continue
        need = required_distance(code.N, code.t, cone_dimension(r))
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                dist = half_manhattan(members[i][1], members[j][1])
                if dist < need:
                    return UtrCheck(False, (members[i][0], members[j][0]), dist)
    return UtrCheck(True)


def count_rll_weight(l: int, m: int, params: DupParams) -> int:
    """Words of length l, weight m, with every zero run shorter than k."""
    if l < 0 or m < 0:
        raise DomainError("length and weight must be nonnegative")
    q, k = params.q, params.k
    # dp keyed by (trailing zero-run length, weight so far)
    dp: dict[tuple[int, int], int] = {(0, 0): 1}
    for _ in range(l):
        ndp: dict[tuple[int, int], int] = defaultdict(int)
        for (run, w), count in dp.items():
            if run + 1 < k:
                ndp[(run + 1, w)] += count
            if w < m:
                ndp[(0, w + 1)] += count * (q - 1)
        dp = dict(ndp)
    return sum(count for (run, w), count in dp.items() if w == m)


def irreducible_count(params: DupParams, n: int) -> int:
    """Number of irreducible words of length n."""
    if n < params.k:
        return 0
    l = n - params.k
    return params.q**params.k * sum(
        count_rll_weight(l, m, params) for m in range(l + 1)
    )


SizeFn = Callable[[int, int, int], int]


def exact_size(m: int, r: int, d: int) -> int:
    return len(exact_max_code(m, r, d))


def greedy_size(m: int, r: int, d: int) -> int:
    return len(greedy_code(m, r, max(d, 0)))


def sidon_size(m: int, r: int, d: int) -> int:
    return sidon_code_size(m, r, max(d, 1))


def utr_size_formula(
    n: int, N: int, t: int, params: DupParams, code_size_fn: SizeFn
) -> int:
    """Total code size over all cones, for a pluggable per-cone code size.

    Sums code_size_fn(m, r, required_distance(N, t, m)) over every root
    shape reachable at length n, weighted by how many roots have that shape.
    """
    q, k = params.q, params.k
    total = 0
    for r in range(0, n // k):
        l = n - (r + 1) * k
        for m in range(l + 1):
            cnt = count_rll_weight(l, m, params)
            if cnt:
                total += code_size_fn(m, r, required_distance(N, t, m)) * q**k * cnt
    return total


def irreducible_words(
    params: DupParams,
    length: int,
    min_weight: int = 0,
    cap: int | None = None,
) -> list[Word]:
    """All irreducible words of one length (weight filter optional), lex by transform.

    Enumerates prefixes against zero-run-limited difference strings; returns
    [] for lengths below k, where irreducibility is not defined.
    """
    if length < params.k:
        return []
    q, k = params.q, params.k
    l = length - params.k
    cap = 10**6 if cap is None else cap

    diffs: list[tuple[int, ...]] = []

    def rec(acc: list[int], run: int, weight: int):
        if len(acc) == l:
            if weight >= min_weight:
                diffs.append(tuple(acc))
                if len(diffs) > cap:
                    raise ResourceCapError(f"irreducible enumeration above cap {cap}")
            return
        remaining = l - len(acc)
        if weight + remaining < min_weight:
            return
        if run + 1 < k:
            acc.append(0)
            rec(acc, run + 1, weight)
            acc.pop()
        for s in range(1, q):
            acc.append(s)
            rec(acc, 0, weight + 1)
            acc.pop()

    rec([], 0, 0)

    out: list[Word] = []
    prefix_count = q**k
    for p in range(prefix_count):
        digits = []
        value = p
        for _ in range(k):
            digits.append(value % q)
            value //= q
        prefix = Word(tuple(reversed(digits)), params)
        for diff in diffs:
            out.append(phi_inv(PhiImage(prefix, Word(diff, params))))
            if len(out) > cap:
                raise ResourceCapError(f"irreducible enumeration above cap {cap}")
    return out


def construction_a(
    params: DupParams,
    n: int,
    t: int,
    N: int,
    theta: float | None = None,
    roots: Iterable[Word] | None = None,
    max_root_enum_len: int = 20,
) -> UtrCode:
    """Build a reconstruction code from the rate-maximizing geometry.

    The capacity engine fixes the optimal root-length fraction; roots of
    that length with enough nonzero difference symbols are enumerated (or
    supplied), and each cone is filled with a congruence-class code at the
    required distance, mapped back to words.  The result is re-verified.
    """
    if params.k < 2:
        raise DomainError("construction needs k >= 2 (rate analysis is undefined at k = 1)")
    profile = capacity_profile(params, theta)
    k = params.k
    r_n = round((1.0 - profile.gamma0) * n / k - 1.0)
    if r_n < 0:
        raise InfeasibleGeometryError(
            f"n={n} leaves no duplication budget at gamma0={profile.gamma0:.4f}"
        )
    root_len = n - r_n * k
    if root_len < k:
        raise InfeasibleGeometryError(f"derived root length {root_len} is below k={k}")
    m_n = math.ceil(profile.theta * profile.gamma0 * n)

    if roots is None:
        if root_len > max_root_enum_len:
            raise ResourceCapError(
                f"root length {root_len} above enumeration limit; pass roots=..."
            )
        pool = irreducible_words(params, root_len, min_weight=m_n)
    else:
        pool = [x for x in roots if len(x) == root_len and is_irreducible(x)]
    qualifying = [x for x in pool if cone_dimension(x) >= m_n]
    if not qualifying:
        raise InfeasibleGeometryError(
            f"no roots of length {root_len} with weight >= {m_n}"
        )

    codewords: list[Word] = []
    for x in qualifying:
        m = cone_dimension(x)
        code = sidon_code(m, r_n, required_distance(N, t, m))
        codewords.extend(psi_inv(x, p) for p in code.points)

    out = UtrCode(params, n, N, t, tuple(codewords))
    check = is_utr_code_reduced(out)
    assert check.ok, f"construction produced an invalid code: {check}"
    return out


def max_utr_code_bruteforce(
    params: DupParams, n: int, N: int, t: int, cap: int = 4096
) -> UtrCode:
    """Largest valid code over the whole space, by exact clique search.

    The compatibility graph joins two words when their t-step descendant
    sets share at most N members; a maximum code is a maximum clique.
    Independent of the per-cone accounting, so it serves as its oracle.
    """
    q = params.q
    total = q**n
    if total > cap:
        raise ResourceCapError(f"{total} words exceed the cap of {cap}")
    words = []
    for value in range(total):
        digits = []
        v = value
        for _ in range(n):
            digits.append(v % q)
            v //= q
        words.append(Word(tuple(reversed(digits)), params))
    desc = [descendants(w, t) for w in words]
    adjacency = [0] * total
    for i in range(total):
        for j in range(i + 1, total):
            if len(desc[i] & desc[j]) <= N:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    chosen = max_clique_bitset(adjacency)
    return UtrCode(params, n, N, t, tuple(words[i] for i in chosen))


def _validated_reads(code: UtrCode, reads: Iterable[Word]) -> list[Word]:
    out = sorted(set(reads), key=lambda w: w.symbols)
    if not out:
        raise NoCandidateError("no reads given")
    _same_params(code.codewords[0] if code.codewords else out[0], *out)
    lengths = {len(r) for r in out}
    if len(lengths) != 1:
        raise NoCandidateError(f"reads have mixed lengths {sorted(lengths)}")
    (length,) = lengths
    extra = length - code.n
    if extra < 0 or extra % code.params.k != 0:
        raise NoCandidateError(
            f"read length {length} unreachable from codeword length {code.n}"
        )
    return out


def reconstruct(code: UtrCode, reads: Iterable[Word]) -> Word:
    """Decode by intersecting cone coordinates.

    All reads must descend from one codeword, hence share its root; the
    componentwise minimum of their coordinates dominates the codeword and
    nothing closer, so exactly one codeword survives when enough distinct
    reads are supplied (N+1 for a valid code).  Fewer reads still decode
    whenever the survivor happens to be unique.
    """
    read_list = _validated_reads(code, reads)
    if len(read_list[0]) < code.params.k:
        # too short to carry a duplication: a read must be the codeword itself
        if len(read_list) == 1 and read_list[0] in code.codewords:
            return read_list[0]
        raise NoCandidateError("reads below the duplication length match no codeword")
    roots = {root(r) for r in read_list}
    if len(roots) != 1:
        raise ConeMismatchError("reads do not share a root")
    (shared_root,) = roots
    vectors = [psi(shared_root, r) for r in read_list]
    meet = tuple(min(col) for col in zip(*vectors))
    candidates = [
        w
        for w, coords in code.cone_index.get(shared_root, [])
        if all(a <= b for a, b in zip(coords, meet))
    ]
    if not candidates:
        raise NoCandidateError("no codeword is an ancestor of all reads")
    if len(candidates) > 1:
        raise AmbiguityError(f"{len(candidates)} codewords fit the reads")
    return candidates[0]


def reconstruct_scan(code: UtrCode, reads: Iterable[Word], cap: int | None = None) -> Word:
    """Oracle decoder: test read containment in literally expanded descendant sets."""
    read_list = _validated_reads(code, reads)
    extra = (len(read_list[0]) - code.n) // code.params.k
    candidates = []
    for w in code.codewords:
        pool = descendants(w, extra, cap)
        if all(r in pool for r in read_list):
            candidates.append(w)
    if not candidates:
        raise NoCandidateError("no codeword is an ancestor of all reads")
    if len(candidates) > 1:
        raise AmbiguityError(f"{len(candidates)} codewords fit the reads")
    return candidates[0]


@dataclass(frozen=True)
class SimulationReport:
    """Outcome counts of a seeded end-to-end channel experiment."""

    trials: int
    successes: int
    wrong: int
    ambiguous: int
    undecodable: int
    short_cone_trials: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "wrong": self.wrong,
            "ambiguous": self.ambiguous,
            "undecodable": self.undecodable,
            "short_cone_trials": self.short_cone_trials,
            "success_rate": self.success_rate,
        }


def simulate_reconstruction(code: UtrCode, trials: int, seed: int) -> SimulationReport:
    """Draw codewords, sample N+1 distinct reads through the channel, decode.

    When a cone holds fewer than N+1 distinct t-descendants the trial
    decodes with all of them instead of failing; such trials are counted
    separately.  Deterministic for a fixed seed.
    """
    if trials < 0:
        raise DomainError("trials must be nonnegative")
    if not code.codewords:
        raise DomainError("cannot simulate an empty code")
    if code.n < code.params.k:
        raise DomainError("codewords below the duplication length never mutate")
    rng = random.Random(seed)
    words = code.codewords
    successes = wrong = ambiguous = undecodable = short_cones = 0
    needed = code.N + 1
    for _ in range(trials):
        c = words[rng.randrange(len(words))]
        cone_total = descendant_count(root(c), code.t)
        if cone_total < needed:
            reads = set(descendants(c, code.t))
            short_cones += 1
        else:
            reads = set()
            attempts = 0
            while len(reads) < needed:
                reads.add(channel_sample(c, code.t, seed=rng.randrange(2**32)))
                attempts += 1
                if attempts > 1000 * needed:
                    raise ResourceCapError("rejection sampling budget exhausted")
        try:
            decoded = reconstruct(code, reads)
        except AmbiguityError:
            ambiguous += 1
            continue
        except NoCandidateError:
            undecodable += 1
            continue
        if decoded == c:
            successes += 1
        else:
            wrong += 1
    return SimulationReport(
        trials, successes, wrong, ambiguous, undecodable, short_cones
    )

"""Simplex codes: enumeration, distance requirements, constructions, balls."""

import itertools
import math
import random

import pytest

from tandemreco import (
    DomainError,
    SimplexCode,
    WeightMismatchError,
    asymptotic_simplex_rate,
    ball_size,
    ball_size_bruteforce,
    binom,
    binary_entropy,
    congruence_class_sizes,
    enumerate_simplex,
    exact_max_code,
    greedy_code,
    half_manhattan,
    is_sidon_set,
    min_half_distance,
    required_distance,
    required_distance_upper_entropy,
    required_distance_upper_log,
    sidon_code,
    sidon_code_size,
    sidon_set,
    simplex_size,
)


def test_binom_convention():
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert binom(-1, 0) == 0
    assert binom(3, -1) == 0


def test_enumerate_simplex_examples():
    assert enumerate_simplex(1, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(enumerate_simplex(2, 1)) == 3
    pts = enumerate_simplex(2, 3)
    assert len(pts) == 10 == simplex_size(2, 3)
    assert pts == sorted(pts)
    assert all(sum(p) == 3 for p in pts)


def test_enumeration_caps():
    from tandemreco import ResourceCapError

    with pytest.raises(ResourceCapError):
        enumerate_simplex(10, 50, cap=1000)
    with pytest.raises(ResourceCapError):
        exact_max_code(10, 50, 2)  # simplex above the 2000-point limit


def test_half_manhattan_examples():
    assert half_manhattan((1, 0, 0), (0, 0, 1)) == 1
    assert half_manhattan((2, 1), (2, 1)) == 0
    assert half_manhattan((3, 0, 1), (0, 2, 2)) == 3
    with pytest.raises(WeightMismatchError):
        half_manhattan((1, 0), (1, 1))


def test_required_distance_examples():
    assert required_distance(1, 2, 1) == 2
    assert required_distance(5, 3, 2) == 2
    assert required_distance(0, 3, 2) == 4


def test_required_distance_monotone():
    for m in (1, 2, 5):
        for t in (1, 3, 7):
            values = [required_distance(N, t, m) for N in range(0, 40)]
            assert values == sorted(values, reverse=True)
        for N in (1, 4, 20):
            values = [required_distance(N, t, m) for t in range(1, 12)]
            assert values == sorted(values)
    # small uncertainty forces the full budget as distance
    for m in range(1, 12):
        for N in range(1, m + 1):
            for t in (1, 2, 9):
                assert required_distance(N, t, m) == t


def test_distance_bound_examples():
    assert required_distance_upper_log(16, 10, 2) == 8
    assert required_distance_upper_log(2**20, 5, 4) == 1
    with pytest.raises(DomainError):
        required_distance_upper_log(3, 5, 3)
    # entropy bound at a hand-scanned point
    assert required_distance_upper_entropy(16, 10, 2) >= required_distance(16, 10, 2)
    assert required_distance_upper_entropy(3, 1, 2) in (0, 1)


def test_bound_ordering_sampled():
    rng = random.Random(7)
    for _ in range(500):
        m = rng.randint(1, 30)
        t = rng.randint(1, 40)
        N = rng.randint(m + 1, 2**20)
        exact = required_distance(N, t, m)
        ent = required_distance_upper_entropy(N, t, m)
        log = required_distance_upper_log(N, t, m)
        assert exact <= ent <= log, (N, t, m)


def test_exact_max_code_examples():
    assert len(exact_max_code(1, 4, 2)) == 3
    assert len(exact_max_code(2, 2, 3)) == 1
    for m, r in ((1, 3), (2, 2), (3, 1)):
        assert len(exact_max_code(m, r, 1)) == simplex_size(m, r)


def test_exact_max_code_is_maximum():
    # brute-force maximum over all subsets on very small instances
    for m, r, d in ((1, 3, 2), (2, 2, 2), (2, 3, 2), (1, 5, 3)):
        pts = enumerate_simplex(m, r)
        best = 0
        for size in range(len(pts), 0, -1):
            found = False
            for combo in itertools.combinations(pts, size):
                dist = min_half_distance(list(combo))
                if dist is None or dist >= d:
                    found = True
                    break
            if found:
                best = size
                break
        assert len(exact_max_code(m, r, d)) == best


def test_code_size_orderings():
    for m in (1, 2, 3):
        for r in range(0, 5):
            if simplex_size(m, r) > 60:
                continue
            for d in (1, 2, 3):
                exact = exact_max_code(m, r, d)
                greedy = greedy_code(m, r, d)
                sidon = sidon_code(m, r, d)
                assert len(greedy) <= len(exact)
                assert len(sidon) <= len(exact)
                for code in (exact, greedy, sidon):
                    dist = code.min_half_distance
                    assert dist is None or dist >= d


def test_greedy_examples():
    assert len(greedy_code(2, 3, 1)) == 10
    assert len(greedy_code(1, 4, 2)) == 3
    code = greedy_code(3, 4, 2)
    assert code.min_half_distance >= 2
    assert len(code) * ball_size(3, 1) >= simplex_size(3, 4)


def test_sidon_set_examples():
    elems, modulus = sidon_set(1, 5)
    assert elems == (0, 1, 2, 3, 4) and modulus == 5
    elems, modulus = sidon_set(2, 3)
    assert elems == (0, 1, 3) and modulus == 7
    assert is_sidon_set(elems, 2, modulus)
    for h, size in ((2, 4), (2, 6), (3, 3)):
        elems, modulus = sidon_set(h, size)
        assert len(elems) == size
        assert is_sidon_set(elems, h, modulus)


def test_sidon_code_examples():
    assert len(sidon_code(2, 3, 1)) == 10
    code = sidon_code(2, 4, 2)
    assert code.min_half_distance >= 2
    _, modulus = sidon_set(1, 3)
    assert len(code) * modulus >= simplex_size(2, 4)


def test_sidon_code_size_matches_enumeration():
    for m in (1, 2, 3, 4):
        for r in (0, 2, 5):
            for d in (1, 2, 3):
                assert sidon_code_size(m, r, d) == len(sidon_code(m, r, d))


def test_congruence_class_sizes_total():
    sizes = congruence_class_sizes(2, 4, (0, 1, 2), 3)
    assert sum(sizes) == simplex_size(2, 4)
    assert max(sizes) == sidon_code_size(2, 4, 2)


def test_ball_size_examples():
    assert ball_size(3, 1) == 13
    assert ball_size(2, 0) == 1
    assert ball_size(5, 0) == 1


def test_ball_size_bruteforce_examples():
    # interior center reproduces the closed form
    assert ball_size_bruteforce(2, 6, (2, 2, 2), 2) == ball_size(2, 2)
    # a vertex center sees a truncated ball
    assert ball_size_bruteforce(2, 4, (4, 0, 0), 1) == 3
    # radius past the diameter swallows the whole simplex
    assert ball_size_bruteforce(2, 2, (1, 1, 0), 4) == simplex_size(2, 2)


def test_ball_size_interior_centers():
    for m in (1, 2, 3, 4):
        for d in (0, 1, 2, 3):
            r = (m + 1) * d + 1
            center = tuple([d] * m + [r - m * d])
            assert ball_size_bruteforce(m, r, center, d) == ball_size(m, d)


def test_binomial_entropy_sandwich():
    for n in range(2, 61):
        for k in range(1, n):
            log_c = math.log2(math.comb(n, k))
            upper = n * binary_entropy(k / n)
            lower = upper - 0.5 * math.log2(2 * n)
            assert lower <= log_c < upper, (n, k)


def test_half_manhattan_parity():
    rng = random.Random(3)
    for _ in range(200):
        m = rng.randint(1, 5)
        r = rng.randint(1, 8)
        pts = enumerate_simplex(m, r)
        u, v = rng.choice(pts), rng.choice(pts)
        total = sum(abs(a - b) for a, b in zip(u, v))
        assert total % 2 == 0


def test_asymptotic_rate_examples():
    assert asymptotic_simplex_rate(0.3, 0.3) == pytest.approx(0.6)
    assert asymptotic_simplex_rate(0.25, 0.25) == pytest.approx(0.5)
    expected = 0.75 * binary_entropy(2 / 3)
    assert asymptotic_simplex_rate(0.5, 0.25) == pytest.approx(expected)
    with pytest.raises(DomainError):
        asymptotic_simplex_rate(1.5, 0.2)


def test_simplex_code_json_roundtrip():
    code = sidon_code(2, 4, 2)
    back = SimplexCode.from_json(code.to_json())
    assert back == code

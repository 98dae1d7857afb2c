"""Squares, power factors, and power-class decompositions."""

import json
import random

import pytest

from circsq.squares import (
    PowerClass,
    SquareSet,
    class_decomposition,
    decomposition_report,
    distinct_squares,
    distinct_squares_circular,
    distinct_squares_circular_via_doubling,
    odd_even_counts,
    power_factors,
    power_factors_circular,
)
from circsq.words import CircularWord, canonical_rotation, is_primitive, rotations

from conftest import (
    brute_circular_squares,
    brute_power_factors,
    brute_squares,
    words_over,
)

P3 = "abacabacabac"


def test_distinct_squares_examples():
    assert distinct_squares("aabaa").squares == {"aa"}
    assert brute_squares("aabaa") == {"aa"}
    assert distinct_squares("ab").count == 0
    got = distinct_squares(P3)
    assert got.squares == brute_squares(P3)
    assert got.squares == {q + q for q in rotations("abac")}
    assert got.count == 4


def test_distinct_squares_matches_brute_exhaustively():
    for n in range(1, 11):
        for w in words_over(2, n):
            assert distinct_squares(w).squares == brute_squares(w), w
    for n in range(1, 8):
        for w in words_over(3, n):
            assert distinct_squares(w).squares == brute_squares(w), w


def test_distinct_squares_circular_examples():
    assert distinct_squares_circular(CircularWord("ab")).count == 0
    assert distinct_squares_circular(CircularWord("aabb")).squares == {"aa", "bb"}
    assert distinct_squares_circular(CircularWord("aa")).squares == {"aa"}


def test_via_doubling_examples():
    assert distinct_squares_circular_via_doubling(CircularWord("aabb")).squares == {"aa", "bb"}
    assert distinct_squares_circular_via_doubling(CircularWord("ab")).count == 0
    assert distinct_squares_circular_via_doubling(CircularWord("aaa")).squares == {"aa"}


def test_circular_routes_agree_with_brute_exhaustively():
    for n in range(1, 11):
        for w in words_over(2, n):
            cw = CircularWord(w)
            expected = brute_circular_squares(w)
            assert distinct_squares_circular(cw).squares == expected, w
            assert distinct_squares_circular_via_doubling(cw).squares == expected, w


def test_circular_count_invariant_under_symmetries():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 14)
        w = "".join(rng.choice("abc") for _ in range(n))
        base = distinct_squares_circular(CircularWord(w)).count
        rot = w[n // 2 :] + w[: n // 2]
        assert distinct_squares_circular(CircularWord(rot)).count == base
        perm = dict(zip("abc", "cab"))
        permuted = "".join(perm[ch] for ch in w)
        assert distinct_squares_circular(CircularWord(permuted)).count == base
        assert distinct_squares_circular(CircularWord(w[::-1])).count == base


def test_linear_square_count_at_most_length():
    for n in range(1, 15):
        for w in words_over(2, n):
            assert distinct_squares(w).count <= n, w
    for n in range(1, 11):
        for w in words_over(3, n):
            assert distinct_squares(w).count <= n, w


def test_square_set_validates_shape():
    with pytest.raises(ValueError):
        SquareSet(frozenset({"aba"}))
    with pytest.raises(ValueError):
        SquareSet(frozenset({"ab"}))
    assert sorted(SquareSet(frozenset({"bb", "aa"}))) == ["aa", "bb"]


def test_power_factors_examples():
    assert power_factors("aaa") == {"aa", "aaa"}
    assert power_factors("abab") == {"abab"}
    assert brute_power_factors("abab") == {"abab"}
    assert power_factors("abc") == set()


def test_power_factors_matches_brute():
    for n in range(1, 10):
        for w in words_over(2, n):
            assert power_factors(w) == brute_power_factors(w), w


def test_power_factors_circular_examples():
    assert power_factors_circular(CircularWord("abab")) == {"abab", "baba"}
    assert power_factors_circular(CircularWord("abc")) == set()
    assert power_factors_circular(CircularWord("aaa")) == {"aa", "aaa"}


def test_class_decomposition_single_letter_run():
    decomp = class_decomposition("aaaaaa")
    assert len(decomp.classes) == 1
    pc = decomp.classes[0]
    assert pc.root == "a"
    assert pc.t == 5
    assert pc.even == {"aa", "aaaa", "aaaaaa"}
    assert pc.odd == {"aaa", "aaaaa"}


def test_class_decomposition_conjugate_squares():
    decomp = class_decomposition(P3)
    assert len(decomp.classes) == 1
    pc = decomp.classes[0]
    assert pc.root == canonical_rotation("abac") == "abac"
    assert pc.t == 5
    assert len(pc.even) == 4
    assert len(pc.odd) == 1
    assert pc.odd == {P3}


def test_class_decomposition_square_free_word():
    assert class_decomposition("abc").classes == ()


def test_class_decomposition_structure_exhaustive():
    for n in range(1, 11):
        for w in words_over(2, n):
            decomp = class_decomposition(w)
            members = set()
            roots = []
            total_even = 0
            for pc in decomp.classes:
                assert pc.even | pc.odd == pc.members
                assert not pc.even & pc.odd
                members |= pc.members
                roots.append(pc.root)
                total_even += len(pc.even)
            assert members == power_factors(w), w
            # roots are canonical and pairwise non-conjugate
            assert len(set(roots)) == len(roots)
            assert all(canonical_rotation(r) == r and is_primitive(r) for r in roots)
            # distinct squares are exactly the even-exponent powers
            assert total_even == distinct_squares(w).count, w


def test_class_parity_bounds_exhaustive():
    for n in range(1, 11):
        for w in words_over(2, n):
            for pc in class_decomposition(w).classes:
                n_odd, n_even, l, t = len(pc.odd), len(pc.even), pc.root_length, pc.t
                assert n_odd <= n_even <= n_odd + l, (w, pc.root)
                assert 2 * n_odd >= t - l, (w, pc.root)
    for n in range(1, 9):
        for w in words_over(3, n):
            for pc in class_decomposition(w).classes:
                n_odd, n_even, l, t = len(pc.odd), len(pc.even), pc.root_length, pc.t
                assert n_odd <= n_even <= n_odd + l, (w, pc.root)
                assert 2 * n_odd >= t - l, (w, pc.root)


def test_odd_even_counts_examples():
    assert odd_even_counts(5, 1) == (2, 3)
    assert odd_even_counts(5, 4) == (1, 4)
    assert odd_even_counts(0, 3) == (0, 0)
    with pytest.raises(ValueError):
        odd_even_counts(-1, 2)
    with pytest.raises(ValueError):
        odd_even_counts(3, 0)


def test_odd_even_counts_match_full_power_hosts():
    # hosts u^K carry one class with the full level structure
    for u in ["a", "ab", "abc", "aab", "abac"]:
        for big in range(2, 6):
            host = u * big
            decomp = class_decomposition(host)
            pcs = [pc for pc in decomp.classes if pc.root == canonical_rotation(u)]
            assert len(pcs) == 1
            pc = pcs[0]
            assert (len(pc.odd), len(pc.even)) == odd_even_counts(pc.t, pc.root_length), host


def test_power_class_validation():
    with pytest.raises(ValueError):
        PowerClass("ba", frozenset({"abab"}), frozenset({"abab"}), frozenset())
    with pytest.raises(ValueError):
        PowerClass("ab", frozenset({"abab"}), frozenset(), frozenset({"abab"}))
    with pytest.raises(ValueError):
        PowerClass("ab", frozenset({"abab"}), frozenset({"abab"}), frozenset({"abab"}))


def test_nonprimitive_circular_bound_small():
    # proper powers stay well within three halves of their length; the
    # verify suite pushes the same bound out to length 16
    for n in range(2, 10):
        for l in range(1, n):
            if n % l:
                continue
            for u in words_over(2, l):
                if not is_primitive(u):
                    continue
                w = u * (n // l)
                s = distinct_squares_circular_via_doubling(CircularWord(w)).count
                assert 2 * s <= 3 * n, w


def test_decomposition_report_roundtrip():
    report = decomposition_report("abacabacabac")
    assert report["n"] == 12
    assert report["sq"] == 4
    assert report["sq_circular"] == 4
    assert report["classes"] == [{"root": "abac", "l": 4, "t": 5, "even": 4, "odd": 1}]
    assert json.loads(json.dumps(report)) == report

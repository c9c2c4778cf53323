"""Closed-form evaluators vs. independently enumerated construction counts."""

from itertools import combinations
from math import comb

import pytest

import hyperturan as ht
from hyperturan import constructions as cons
from hyperturan.errors import CapacityError, InternalCheckError, ValidationError


def brute_turan_partite(n, parts, r):
    if parts > n:
        sizes = [1] * n + [0] * (parts - n)
    else:
        sizes = ht.hypergraph.balanced_part_sizes(n, parts)
    of = []
    for i, size in enumerate(sizes):
        of.extend([i] * size)
    return sum(1 for e in combinations(range(n), r) if len({of[v] for v in e}) == r)


class TestTuranPartiteCount:
    def test_examples(self):
        assert cons.turan_partite_count(6, 3, 3) == 8
        assert cons.turan_partite_count(900, 2, 2) == 202500
        assert cons.turan_partite_count(7, 3, 2) == 16

    def test_against_enumeration(self):
        for n in range(0, 13):
            for parts in range(1, n + 3):
                for r in range(1, 5):
                    assert cons.turan_partite_count(n, parts, r) == brute_turan_partite(
                        n, parts, r
                    ), (n, parts, r)

    def test_matches_generator(self):
        for n in range(1, 16):
            for parts in range(1, n + 1):
                for r in range(1, min(parts, 4) + 1):
                    G = ht.complete_multipartite(n, parts, r)
                    assert G.num_edges == cons.turan_partite_count(n, parts, r)


class TestEmcValue:
    def test_examples(self):
        assert cons.emc_value(7, 3, 1).value == 15
        assert cons.emc_value(10, 3, 2).value == 64
        assert cons.emc_value(12, 4, 0).value == 0

    def test_window_flag(self):
        assert cons.emc_value(8, 3, 1).window_ok
        assert not cons.emc_value(7, 3, 1).window_ok

    def test_vandermonde_grid(self):
        # the two computation paths must agree everywhere; emc_value raises
        # InternalCheckError itself if they ever differ
        for n in range(0, 41):
            for r in range(1, 9):
                for s in range(0, n + 1):
                    res = cons.emc_value(n, r, s)
                    assert res.value >= 0


class TestSmallS:
    def test_case_i(self):
        res = cons.small_s_value(20, 3, 4, 6)
        assert (res.value, res.case) == (546, "i")

    def test_case_ii(self):
        res = cons.small_s_value(20, 3, 5, 9)
        assert (res.value, res.case) == (495, "ii")

    def test_case_iii(self):
        res = cons.small_s_value(30, 3, 7, 17)
        assert (res.value, res.case) == (1446, "iii")

    def test_case_iv(self):
        res = cons.small_s_value(12, 3, 4, 4)
        assert res.case == "iv"
        assert res.value == 4 * comb(8, 2) + 4 * comb(8, 1)
        assert "slack" in res.note

    def test_case_v(self):
        res = cons.small_s_value(10, 3, 4, 2)
        assert (res.value, res.case) == (64, "v")

    def test_not_covered_large_s(self):
        res = cons.small_s_value(20, 3, 5, 20)
        assert not res.covered and res.case == "not-covered"

    def test_case_iii_window_needs_large_l(self):
        # s in the case-iii window but l below 2r+1: explicit refusal
        res = cons.small_s_value(30, 3, 5, 8)
        assert not res.covered
        assert "2r+1" in res.note

    def test_windows_partition_the_small_s_line(self):
        # below (l*l-1)/2 every s must fall in exactly one case, except the
        # case-iii window when l < 2r+1
        for r in (3, 4):
            for l in range(r, 9):
                for s in range(0, (l * l - 1) // 2 + 1):
                    if 2 * s >= l * l - 1:
                        continue
                    res = cons.small_s_value(40, r, l, s)
                    c_lm1 = comb(l - 1, 2)
                    in_iii_gap = (
                        2 + c_lm1 <= s < c_lm1 + r and l < 2 * r + 1
                    )
                    l_eq_r_gap = l == r and s >= l and not (
                        any(
                            l + 1 - t + comb(t, 2) <= s < l - t + comb(t + 1, 2)
                            for t in range(2, l - 1)
                        )
                        or 2 + c_lm1 <= s < c_lm1 + r
                    )
                    if in_iii_gap or l_eq_r_gap:
                        assert not res.covered, (r, l, s, res)
                    else:
                        assert res.covered, (r, l, s, res)

    def test_rejects_bad_uniformity(self):
        with pytest.raises(ValidationError):
            cons.small_s_value(10, 2, 4, 2)


class TestLargeS:
    def test_examples(self):
        assert cons.large_s_value(1000, 3, 3, 100).value == 20_250_000
        assert cons.large_s_value(11, 3, 3, 2).value == 40
        assert cons.large_s_value(9, 3, 4, 0).value == 0

    def test_window_unknown(self):
        assert cons.large_s_value(11, 3, 3, 2).window_ok is None

    def test_n_below_s(self):
        with pytest.raises(ValidationError):
            cons.large_s_value(5, 3, 3, 6)


class TestRainbowValue:
    def test_small_k(self):
        assert cons.rainbow_value(10, 3, 4, 3).value == 360
        assert cons.rainbow_value(10, 3, 4, 6).value == 600

    def test_large_k(self):
        res = cons.rainbow_value(12, 3, 4, 20)
        assert res.value == 20 * 64
        assert res.window_ok is None

    def test_regime_boundary(self):
        # at k = C(l,2)-1 the min{} branch and the layered generator agree
        for l in (3, 4, 5):
            for n in range(l + 2, l + 6):
                k = comb(l, 2) - 1
                val = cons.rainbow_value(n, 3, l, k).value
                inst = cons.generate_rainbow_layers("complete_plus_empty", n, 3, l, k)
                assert val == inst.total_size() == k * comb(n, 3)


class TestGCountAndGtz:
    def test_g_count(self):
        assert cons.alon_frankl_g_count(10, 2, 2) == 16

    def test_g_count_enumeration(self):
        for n in range(2, 12):
            for l in range(2, 5):
                for s in range(0, n + 1):
                    sizes = [n - s] + ht.hypergraph.balanced_part_sizes(s, l - 1)
                    of = []
                    for i, size in enumerate(sizes):
                        of.extend([i] * size)
                    brute = sum(
                        1 for a, b in combinations(range(n), 2) if of[a] != of[b]
                    )
                    assert cons.alon_frankl_g_count(n, l, s) == brute

    def test_gtz_with_complete_5(self):
        res = cons.gtz_value(10, 3, 4, ht.complete_hypergraph(5, 3))
        assert res.value == 96

    def test_gtz_inner_term_nontrivial(self):
        # family of the complete 6-vertex 3-graph = complete 3-graphs on
        # 4, 5, 6 vertices, so the inner term at s=4 is ex_3(4, K_4^(3)) = 3
        K6 = ht.complete_hypergraph(6, 3)
        res = cons.gtz_value(10, 3, 4, K6)
        assert res.value == comb(10, 3) - comb(6, 3) - comb(4, 3) + 3

    def test_gtz_rejects_bipartite_like(self):
        # complete 4-vertex 3-graph splits 2+2 with no monochromatic triple
        K4 = ht.complete_hypergraph(4, 3)
        assert ht.weak_chromatic_number(K4) == 2
        assert not cons.gtz_value(9, 3, 4, K4).covered

    def test_gtz_hypothesis_violation(self):
        one = ht.make_hypergraph(3, 3, [[0, 1, 2]])
        res = cons.gtz_value(10, 3, 4, one)
        assert not res.covered and res.case == "hypothesis-violated"

    def test_gtz_capacity(self):
        with pytest.raises(CapacityError):
            cons.gtz_value(30, 3, 20, ht.complete_hypergraph(5, 3))


# ---------------------------------------------------------------------------
# generators vs formulas, via independent edge predicates


def brute_g1_count(n, r, l, s):
    lo = s - comb(l - 1, 2)
    cnt = 0
    for e in combinations(range(n), r):
        inside = sum(1 for v in e if v < s)
        if inside == 1:
            cnt += 1
        elif 0 in e and inside - 1 >= lo:
            cnt += 1
    return cnt


def brute_g2_count(n, r, l, s, t):
    parts = ht.hypergraph.balanced_parts(s, l - t)
    of = {}
    for i, rng in enumerate(parts):
        for v in rng:
            of[v] = i
    cnt = 0
    for e in combinations(range(n), r):
        inner = [v for v in e if v < s]
        if len(inner) == 1:
            cnt += 1
        elif len(inner) == 2 and of[inner[0]] != of[inner[1]]:
            cnt += 1
    return cnt


class TestGenerators:
    def test_g3_count(self):
        assert cons.generate_construction("g3", 10, 3, l=3, s=2).num_edges == 64

    def test_one_point_count(self):
        assert cons.generate_construction("one_point", 20, 3, s=6).num_edges == 546

    def test_yzz_count(self):
        assert cons.generate_construction("yzz", 11, 3, l=3, s=2).num_edges == 40

    def test_g2_example(self):
        G = cons.generate_construction("g2", 12, 3, l=4, s=4)
        assert G.num_edges == 144 == brute_g2_count(12, 3, 4, 4, 2)

    def test_g1_matches_case_iii_formula(self):
        G = cons.generate_construction("g1", 30, 3, l=7, s=17)
        assert G.num_edges == 1446 == brute_g1_count(30, 3, 7, 17)

    def test_g1_against_brute_grid(self):
        for r in (3, 4):
            for l in range(r, 8):
                c = comb(l - 1, 2)
                for s in range(2 + c, r + c):
                    for n in (s + r, s + r + 3):
                        G = cons.generate_construction("g1", n, r, l=l, s=s)
                        assert G.num_edges == brute_g1_count(n, r, l, s)
                        assert G.num_edges == cons.construction_count(
                            "g1", n, r, l, s
                        )

    def test_g2_against_brute_grid(self):
        for r in (3, 4):
            for l in range(4, 8):
                for s in range(l, 2 + comb(l - 1, 2)):
                    t = cons.derive_g2_t(l, s)
                    for n in (s + r, s + r + 4):
                        G = cons.generate_construction("g2", n, r, l=l, s=s)
                        assert G.num_edges == brute_g2_count(n, r, l, s, t)
                        assert G.num_edges == cons.construction_count(
                            "g2", n, r, l, s
                        )

    def test_window_violations_name_inequality(self):
        with pytest.raises(ValidationError, match="g3 needs s < l"):
            cons.generate_construction("g3", 10, 3, l=3, s=5)
        with pytest.raises(ValidationError, match="2\\+C\\(l-1,2\\)"):
            cons.generate_construction("g1", 10, 3, l=4, s=2)
        with pytest.raises(ValidationError, match="no t in"):
            cons.generate_construction("g2", 12, 3, l=4, s=9)

    def test_g2_t_windows_tile(self):
        # consecutive t-windows abut: every s in [l, 2+C(l-1,2)) has unique t
        for l in range(4, 10):
            for s in range(l, 2 + comb(l - 1, 2)):
                t = cons.derive_g2_t(l, s)
                assert 2 <= t <= l - 2
                assert l + 1 - t + comb(t, 2) <= s < l - t + comb(t + 1, 2)

    def test_rainbow_layer_generators(self):
        L = cons.generate_rainbow_layers("identical_turan", 9, 3, 4, 10)
        assert L.k == 10 and all(x.num_edges == 27 for x in L.layers)
        assert L.total_size() == 270
        L = cons.generate_rainbow_layers("complete_plus_empty", 8, 3, 4, 7)
        assert [x.num_edges for x in L.layers] == [56] * 5 + [0] * 2
        L = cons.generate_rainbow_layers("complete_plus_empty", 8, 3, 4, 2)
        assert [x.num_edges for x in L.layers] == [56, 56]

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            cons.generate_construction("g9", 10, 3, l=3, s=1)

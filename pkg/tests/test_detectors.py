"""Detector behavior: witnesses, refusals, and agreement with naive oracles."""

import random
from itertools import combinations, permutations

import pytest

import hyperturan as ht
from hyperturan.detectors import (
    HallViolator,
    expansion_embeddings,
    make_weight_matrix,
)
from hyperturan.errors import PreconditionError, ValidationError


def naive_contains_expansion(H, l):
    """Double enumeration: all core l-subsets x all ordered edge tuples."""
    pair_list = list(combinations(range(l), 2))
    for core in combinations(range(H.n), l):
        core_set = set(core)
        for sel in permutations(H.edges, len(pair_list)):
            used = set()
            ok = True
            for (i, j), e in zip(pair_list, sel):
                es = set(e)
                if es & core_set != {core[i], core[j]}:
                    ok = False
                    break
                extras = es - {core[i], core[j]}
                if extras & used:
                    ok = False
                    break
                used |= extras
            if ok:
                return True
    return False


class TestExpansionClique:
    def test_complete_7_has_k3(self):
        emb = ht.contains_expansion_clique(ht.complete_hypergraph(7, 3), 3)
        assert emb is not None and len(emb.core) == 3

    def test_turan_is_free(self):
        assert ht.contains_expansion_clique(ht.complete_multipartite(9, 3, 3), 4) is None

    def test_star_is_k3_free(self):
        H = ht.star_cover(8, 3, 1)
        assert ht.contains_expansion_clique(H, 3) is None
        assert not naive_contains_expansion(H, 3)

    def test_agrees_with_naive_on_random_graphs(self):
        rng = random.Random(5)
        universe = list(combinations(range(6), 3))
        for _ in range(40):
            edges = rng.sample(universe, rng.randint(0, 6))
            H = ht.make_hypergraph(6, 3, edges)
            got = ht.contains_expansion_clique(H, 3) is not None
            assert got == naive_contains_expansion(H, 3)

    def test_graph_case_triangle(self):
        tri = ht.make_hypergraph(4, 2, [[0, 1], [1, 2], [0, 2]])
        emb = ht.contains_expansion_clique(tri, 3)
        assert emb is not None and emb.core == (0, 1, 2)

    def test_anchored_enumeration_only_through_edge(self):
        H = ht.complete_hypergraph(7, 3)
        e0 = (0, 1, 2)
        for emb in expansion_embeddings(H, 3, require_edge=e0):
            assert e0 in emb.edges

    def test_witness_validates(self):
        # returned embeddings satisfy the invariants by construction; break
        # one on purpose to show the validator is active
        from hyperturan.detectors import Embedding, _validate_expansion_embedding
        from hyperturan.errors import InternalCheckError

        H = ht.complete_hypergraph(7, 3)
        emb = ht.contains_expansion_clique(H, 3)
        bad = Embedding(emb.core, tuple(list(emb.pair_edges[:-1]) + [((0, 1), emb.pair_edges[-1][1])]))
        with pytest.raises(InternalCheckError):
            _validate_expansion_embedding(H, bad, 3)


class TestCoveringClique:
    def test_star_covers_k4(self):
        emb = ht.contains_covering_clique(ht.star_cover(7, 3, 1), 4)
        assert emb is not None
        core = emb.core
        for (i, j), e in emb.pair_edges:
            assert core[i] in e and core[j] in e

    def test_turan_is_covering_free(self):
        assert ht.contains_covering_clique(ht.complete_multipartite(8, 4, 3), 5) is None

    def test_single_edge_covers_its_triple(self):
        one = ht.make_hypergraph(3, 3, [[0, 1, 2]])
        assert ht.contains_covering_clique(one, 3) is not None


class TestSunflower:
    def test_core_one_three_petals(self):
        H = ht.make_hypergraph(8, 3, [[1, 2, 3], [1, 4, 5], [1, 6, 7]])
        core, petals = ht.find_sunflower(H, 1, 3)
        assert core == (1,) and len(petals) == 3

    def test_matching_has_no_core_one(self):
        M = ht.make_hypergraph(9, 3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
        assert ht.find_sunflower(M, 1, 2) is None

    def test_matching_is_core_zero_sunflower(self):
        M = ht.make_hypergraph(9, 3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
        core, petals = ht.find_sunflower(M, 0, 3)
        assert core == () and len(petals) == 3

    def test_kernel_exactness(self):
        # petals disjoint forces pairwise intersections to equal the core
        H = ht.make_hypergraph(9, 3, [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 5, 6]])
        core, petals = ht.find_sunflower(H, 2, 3)
        assert core == (0, 1)
        for a, b in combinations(petals, 2):
            assert set(a) & set(b) == set(core)


class TestHeavyMatching:
    def test_tied_matrix(self):
        perm = ht.heavy_matching([[2, 2], [2, 2]], 4)
        assert sorted(perm) == [0, 1]

    def test_diagonal_wins(self):
        W = [[3, 1], [1, 3]]
        perm = ht.heavy_matching(W, 4)
        assert perm == (0, 1)
        assert sum(W[i][perm[i]] for i in range(2)) == 6

    def test_single_cell(self):
        assert ht.heavy_matching([[5]], 5) == (0,)

    def test_refusal_names_row(self):
        with pytest.raises(PreconditionError, match="row 1"):
            ht.heavy_matching([[9, 9], [1, 1]], 5)

    def test_500_random_matrices_meet_min_row_sum(self):
        rng = random.Random(20)
        for _ in range(500):
            t = rng.randint(1, 6)
            W = [[rng.uniform(0, 10) for _ in range(t)] for _ in range(t)]
            s = min(sum(row) for row in W)
            perm = ht.heavy_matching(W, s)
            assert sorted(perm) == list(range(t))
            assert sum(W[i][perm[i]] for i in range(t)) >= s

    def test_rejects_non_square(self):
        with pytest.raises(ValidationError):
            make_weight_matrix([[1, 2], [3]])


class TestRainbowAssignment:
    def test_identity(self):
        assert ht.rainbow_assignment([[1], [2], [3]]) == [1, 2, 3]

    def test_pigeonhole_violator(self):
        v = ht.rainbow_assignment([[1, 2], [1, 2], [1, 2]])
        assert isinstance(v, HallViolator)
        assert len(v.positions) == 3 and len(v.colors) == 2

    def test_forbidden_color(self):
        v = ht.rainbow_assignment([[1, 2, 3]] * 3, forbidden_color=3)
        assert isinstance(v, HallViolator)

    def test_violator_certificate_is_sound(self):
        rng = random.Random(3)
        for _ in range(200):
            sets = [
                sorted(rng.sample(range(6), rng.randint(0, 3))) for _ in range(5)
            ]
            res = ht.rainbow_assignment(sets)
            if isinstance(res, HallViolator):
                union = set()
                for p in res.positions:
                    union |= set(sets[p])
                assert len(union) < len(res.positions)
                assert union == set(res.colors)
            else:
                assert len(set(res)) == len(sets)
                for p, c in enumerate(res):
                    assert c in sets[p]


def complete_layers(n, r, k):
    edges = [list(e) for e in ht.complete_hypergraph(n, r).edges]
    return ht.make_layered(n, r, [edges] * k)


class TestRainbowDetectors:
    def test_three_complete_layers_have_rainbow(self):
        emb = ht.contains_rainbow_expansion_clique(complete_layers(9, 3, 3), 3)
        assert emb is not None
        colors = dict(emb.edge_colors)
        assert len(set(colors.values())) == 3

    def test_two_layers_cannot_be_rainbow(self):
        assert ht.contains_rainbow_expansion_clique(complete_layers(9, 3, 2), 3) is None

    def test_identical_turan_layers_are_free(self):
        L = ht.make_layered(
            12, 3, [[list(e) for e in ht.complete_multipartite(12, 2, 3).edges]] * 5
        )
        assert ht.contains_rainbow_expansion_clique(L, 3) is None

    def test_super_rainbow_threshold(self):
        assert ht.contains_super_rainbow(complete_layers(9, 3, 4), 3) is not None
        assert ht.contains_super_rainbow(complete_layers(9, 3, 3), 3) is None

    def test_super_rainbow_single_layer(self):
        assert ht.contains_super_rainbow(complete_layers(9, 3, 1), 3) is None

    def test_super_rainbow_implies_rainbow(self):
        rng = random.Random(11)
        universe = list(combinations(range(7), 3))
        for _ in range(200):
            k = rng.randint(2, 5)
            layers = [
                rng.sample(universe, rng.randint(0, 12)) for _ in range(k)
            ]
            L = ht.make_layered(7, 3, layers)
            if ht.contains_super_rainbow(L, 3) is not None:
                assert ht.contains_rainbow_expansion_clique(L, 3) is not None

    def test_adding_edges_is_monotone(self):
        rng = random.Random(13)
        universe = list(combinations(range(7), 3))
        for _ in range(60):
            layers = [rng.sample(universe, rng.randint(0, 10)) for _ in range(3)]
            L = ht.make_layered(7, 3, layers)
            before = ht.contains_rainbow_expansion_clique(L, 3)
            li = rng.randrange(3)
            extra = rng.choice(universe)
            enlarged = [list(map(list, lay)) for lay in layers]
            enlarged[li].append(list(extra))
            L2 = ht.make_layered(7, 3, enlarged)
            after = ht.contains_rainbow_expansion_clique(L2, 3)
            if before is not None:
                assert after is not None


def lemma_hypothesis_instances(rng, l, count):
    """Random per-edge multiplicities on the complete graph K_l meeting the
    rainbow-clique lemma hypotheses, realized as random color subsets."""
    npairs = l * (l - 1) // 2
    out = []
    while len(out) < count:
        k = rng.randint(npairs, npairs + 4)
        m = {}
        pairs = list(combinations(range(l), 2))
        m[(0, 1)] = rng.randint(npairs, k)
        ok = True
        for i in range(2, l):
            row = [(j, i) for j in range(i)]
            need = (i) * (npairs - 1)  # prefix-sum threshold for core i+1... see below
            # thresholds use 1-based core indices: for core index i (0-based),
            # sum over j < i must reach i*(C(l,2)-1)
            vals = [rng.randint(1, k) for _ in row]
            deficit = need - sum(vals)
            tries = 0
            while deficit > 0 and tries < 200:
                pos = rng.randrange(len(vals))
                bump = min(k - vals[pos], deficit)
                vals[pos] += bump
                deficit = need - sum(vals)
                tries += 1
            if deficit > 0:
                ok = False
                break
            for (j, ii), v in zip(row, vals):
                m[(j, ii)] = v
        if not ok:
            continue
        sets = []
        for j, i in combinations(range(l), 2):
            sets.append(sorted(rng.sample(range(k), m[(j, i)])))
        out.append(sets)
    return out


def test_lemma_style_multiplicities_always_admit_rainbow():
    rng = random.Random(2024)
    for l in (3, 4, 5):
        for sets in lemma_hypothesis_instances(rng, l, 70):
            res = ht.rainbow_assignment(sets)
            assert not isinstance(res, HallViolator)

"""Exact brute-force oracles: extremal edge counts under forbidden
structures, extremal layered totals under rainbow-freeness, and the
partition edit-distance used as a stability metric.

The oracles are the ground truth the formulas and constructions are judged
against at desk scale, so they must stay independent of those formulas:
nothing here assumes any extremal value, only the structure definitions.
Branching orders and tie-breaks are fixed, so runs are reproducible; the
incumbent may be warmed from a generated construction, which only
strengthens pruning and never changes the proven value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial, floor

from . import caps
from .errors import CapacityError, InternalCheckError, ValidationError
from .hypergraph import Hypergraph, balanced_part_sizes, mask_of
from .detectors import (
    HallViolator,
    LayeredInstance,
    contains_covering_clique,
    contains_rainbow_expansion_clique,
    expansion_embeddings,
    rainbow_assignment,
)


@dataclass(frozen=True)
class ForbiddenItem:
    """One forbidden structure: expansion_clique(l), matching(m) (m pairwise
    disjoint edges), covering_clique(q), or a raw pattern hypergraph."""

    kind: str
    param: int = 0
    pattern: Hypergraph | None = None

    def label(self) -> str:
        if self.kind == "raw":
            assert self.pattern is not None
            return f"raw(n={self.pattern.n},e={self.pattern.num_edges})"
        return f"{self.kind}({self.param})"


def expansion_clique(l: int) -> ForbiddenItem:
    return ForbiddenItem("expansion_clique", l)


def matching(m: int) -> ForbiddenItem:
    return ForbiddenItem("matching", m)


def covering_clique(q: int) -> ForbiddenItem:
    return ForbiddenItem("covering_clique", q)


def raw_pattern(P: Hypergraph) -> ForbiddenItem:
    return ForbiddenItem("raw", 0, P)


@dataclass(frozen=True)
class ForbiddenSpec:
    items: tuple[ForbiddenItem, ...]

    def validate(self, n: int, r: int) -> None:
        if not self.items:
            raise ValidationError("forbidden spec must be nonempty")
        for item in self.items:
            if item.kind == "matching":
                if item.param < 1:
                    raise ValidationError(
                        "forbidding a matching of size 0 leaves nothing admissible"
                    )
            elif item.kind in ("expansion_clique", "covering_clique"):
                if item.param < 2:
                    raise ValidationError(f"{item.kind} size must be at least 2")
            elif item.kind == "raw":
                assert item.pattern is not None
                if item.pattern.r != r:
                    raise ValidationError(
                        f"raw pattern uniformity {item.pattern.r} != {r}"
                    )
                if item.pattern.num_edges == 0 and item.pattern.n <= n:
                    raise ValidationError(
                        "forbidding an edgeless pattern that fits leaves nothing admissible"
                    )
            else:
                raise ValidationError(f"unknown forbidden item kind {item.kind!r}")


@dataclass(frozen=True)
class SearchOutcome:
    value: int
    witness: Hypergraph | LayeredInstance
    nodes_explored: int
    proven_optimal: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "proven_optimal": self.proven_optimal,
            "nodes": self.nodes_explored,
            "witness": self.witness.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# freeness checks


def contains_pattern(H: Hypergraph, P: Hypergraph) -> bool:
    """Subhypergraph containment by backtracking vertex injection (tiny
    instances only; this backs the raw forbidden items of the oracle)."""
    if P.num_edges == 0:
        return P.n <= H.n
    if P.n > H.n or P.num_edges > H.num_edges:
        return False
    host_edges = H.edge_set
    p_deg = P.degrees()
    order = sorted(range(P.n), key=lambda v: -p_deg[v])
    pos_of = {v: i for i, v in enumerate(order)}
    # pattern edges become checkable once their last vertex (in `order`) maps
    edges_by_last = [[] for _ in range(P.n)]
    for e in P.edges:
        edges_by_last[max(pos_of[v] for v in e)].append(e)
    image = {}

    def rec(i: int, used: set[int]) -> bool:
        if i == P.n:
            return True
        v = order[i]
        for cand in range(H.n):
            if cand in used:
                continue
            image[v] = cand
            ok = True
            for e in edges_by_last[i]:
                if tuple(sorted(image[u] for u in e)) not in host_edges:
                    ok = False
                    break
            if ok and rec(i + 1, used | {cand}):
                return True
        image.pop(v, None)
        return False

    return rec(0, set())


def _packing_with_masks(masks: list[int], new_mask: int, size: int) -> bool:
    """True iff `size` pairwise-disjoint masks exist among masks + [new_mask]
    with new_mask forced in."""
    if size <= 1:
        return True
    rest = [m for m in masks if not m & new_mask]
    need = size - 1

    def rec(start: int, used: int, have: int) -> bool:
        if have == need:
            return True
        if need - have > len(rest) - start:
            return False
        for pos in range(start, len(rest)):
            m = rest[pos]
            if m & used:
                continue
            if rec(pos + 1, used | m, have + 1):
                return True
        return False

    return rec(0, 0, 0)


def _graph_of(n: int, r: int, edges: list[tuple[int, ...]]) -> Hypergraph:
    return Hypergraph(n, r, tuple(sorted(edges)))


def _has_clique_in(adj: dict[int, int], cand: int, k: int) -> bool:
    """k mutually adjacent vertices inside the candidate bitmask."""
    if k <= 0:
        return True
    m = cand
    while m:
        if m.bit_count() < k:
            return False
        low = m & -m
        w = low.bit_length() - 1
        m ^= low
        if _has_clique_in(adj, m & adj.get(w, 0), k - 1):
            return True
    return False


class _IncrementalChecker:
    """Anchored freeness checks for the oracle: given a spec-free chosen set,
    does adding one more edge create a forbidden copy?  Any new copy passes
    through the new edge, which keeps the per-node work local.

    `refresh` hoists chosen-set state (adjacency, codegree shadow) once per
    node so that filtering the whole candidate list stays cheap.
    """

    def __init__(self, n: int, r: int, spec: ForbiddenSpec):
        self.n, self.r, self.spec = n, r, spec
        self.cliques_r2 = sorted(
            i.param for i in spec.items if i.kind == "expansion_clique" and r == 2
        )
        self.expansions = [
            i.param
            for i in spec.items
            if i.kind == "expansion_clique"
            and r >= 3
            and i.param + (r - 2) * comb(i.param, 2) <= n
        ]
        self.matchings = sorted(i.param for i in spec.items if i.kind == "matching")
        self.coverings = sorted(
            i.param for i in spec.items if i.kind == "covering_clique"
        )
        self.patterns = [i.pattern for i in spec.items if i.kind == "raw"]
        self.adj: dict[int, int] = {}
        self.shadow: dict[int, int] = {}

    def refresh(self, edges: list[tuple[int, ...]]) -> None:
        if self.cliques_r2:
            self.adj = {}
            for a, b in edges:
                self.adj[a] = self.adj.get(a, 0) | (1 << b)
                self.adj[b] = self.adj.get(b, 0) | (1 << a)
        if self.coverings:
            self.shadow = {}
            for e in edges:
                for a, b in combinations(e, 2):
                    self.shadow[a] = self.shadow.get(a, 0) | (1 << b)
                    self.shadow[b] = self.shadow.get(b, 0) | (1 << a)

    def creates(
        self,
        edges: list[tuple[int, ...]],
        masks: list[int],
        new_edge: tuple[int, ...],
        new_mask: int,
    ) -> bool:
        for m in self.matchings:
            if _packing_with_masks(masks, new_mask, m):
                return True
        for l in self.cliques_r2:
            u, v = new_edge
            common = self.adj.get(u, 0) & self.adj.get(v, 0)
            if _has_clique_in(self.adj, common, l - 2):
                return True
        for q in self.coverings:
            aug = dict(self.shadow)
            for a, b in combinations(new_edge, 2):
                aug[a] = aug.get(a, 0) | (1 << b)
                aug[b] = aug.get(b, 0) | (1 << a)
            for a, b in combinations(new_edge, 2):
                if _has_clique_in(aug, aug.get(a, 0) & aug.get(b, 0), q - 2):
                    return True
        if self.expansions or self.patterns:
            G = _graph_of(self.n, self.r, edges + [new_edge])
            for l in self.expansions:
                if len(edges) + 1 >= comb(l, 2) and any(
                    True
                    for _ in expansion_embeddings(
                        G, l, require_edge=new_edge, max_n=self.n
                    )
                ):
                    return True
            for P in self.patterns:
                assert P is not None
                if contains_pattern(G, P):
                    return True
        return False


def creates_forbidden(
    n: int,
    r: int,
    spec: ForbiddenSpec,
    edges: list[tuple[int, ...]],
    masks: list[int],
    new_edge: tuple[int, ...],
    new_mask: int,
) -> bool:
    """Does adding new_edge to a spec-free edge set create a forbidden copy?"""
    checker = _IncrementalChecker(n, r, spec)
    checker.refresh(edges)
    return checker.creates(edges, masks, new_edge, new_mask)


def is_free(H: Hypergraph, spec: ForbiddenSpec) -> bool:
    """Full (non-incremental) freeness check used to vet warm starts and
    re-validate witnesses."""
    from .hypergraph import has_matching

    for item in spec.items:
        if item.kind == "matching":
            if has_matching(H, item.param):
                return False
        elif item.kind == "expansion_clique":
            for _ in expansion_embeddings(H, item.param, max_n=H.n):
                return False
        elif item.kind == "covering_clique":
            if contains_covering_clique(H, item.param) is not None:
                return False
        else:
            assert item.pattern is not None
            if contains_pattern(H, item.pattern):
                return False
    return True


# ---------------------------------------------------------------------------
# warm starts


def _clique_block(n: int, r: int, m: int) -> Hypergraph:
    m = min(m, n)
    return Hypergraph(n, r, tuple(combinations(range(m), r)))


def _warm_start_candidates(n: int, r: int, spec: ForbiddenSpec) -> list[Hypergraph]:
    from . import constructions as cons
    from .hypergraph import complete_multipartite, star_cover

    matchings = [i.param for i in spec.items if i.kind == "matching"]
    expansions = [i.param for i in spec.items if i.kind == "expansion_clique"]
    coverings = [i.param for i in spec.items if i.kind == "covering_clique"]
    out: list[Hypergraph] = [Hypergraph(n, r, ())]
    s = min(matchings) - 1 if matchings else None
    if s is not None:
        if 0 <= s <= n and r <= n:
            out.append(star_cover(n, r, s))
        out.append(_clique_block(n, r, (s + 1) * r - 1))
    for L in expansions + [q for q in coverings]:
        if 1 <= L - 1 <= n:
            out.append(complete_multipartite(n, L - 1, r))
    if s is not None and expansions:
        l = min(expansions) - 1
        for kind in ("g1", "g2", "g3", "one_point", "yzz"):
            try:
                out.append(cons.generate_construction(kind, n, r, l=l, s=s))
            except (ValidationError, CapacityError):
                pass
        c = comb(l, 2)
        if c <= n and l >= 2:
            try:
                out.append(cons.generate_construction("one_point", n, r, s=c))
            except (ValidationError, CapacityError):
                pass
    return out


# ---------------------------------------------------------------------------
# prefix symmetry rejection


def _prefix_symmetry_accept(universe: list[tuple[int, ...]]) -> dict[frozenset, bool] | None:
    """Orbit-minimal chosen-subsets of the first three universe edges under
    the stabilizer of that edge triple; rejecting non-minimal ones merges
    isomorphic shallow subtrees without affecting the optimal value."""
    if len(universe) < 3:
        return None
    prefix = universe[:3]
    support = sorted({v for e in prefix for v in e})
    if factorial(len(support)) > 50000:
        return None
    prefix_set = set(prefix)
    stab = []
    for perm in permutations(support):
        sigma = dict(zip(support, perm))
        if all(tuple(sorted(sigma[v] for v in e)) in prefix_set for e in prefix):
            stab.append(sigma)
    index_of = {e: i for i, e in enumerate(prefix)}
    accept: dict[frozenset, bool] = {}
    for size in range(4):
        for chosen in combinations(range(3), size):
            cset = frozenset(chosen)
            images = []
            for sigma in stab:
                img = frozenset(
                    index_of[tuple(sorted(sigma[v] for v in prefix[i]))] for i in cset
                )
                images.append(tuple(sorted(img)))
            accept[cset] = tuple(sorted(cset)) == min(images)
    return accept


# ---------------------------------------------------------------------------
# the edge-count oracle


def max_edges_avoiding(
    n: int,
    r: int,
    spec: ForbiddenSpec,
    budget: int | None = None,
    use_symmetry: bool = True,
    max_n: int | None = None,
) -> SearchOutcome:
    """Exact maximum edge count of an n-vertex r-graph avoiding every item
    of the spec, with an attaining witness.

    Branch and bound over edges in lexicographic order: each node either
    includes the next still-addable edge or excludes it; candidate lists are
    re-filtered after every inclusion, so the incremental freeness check
    only ever looks at copies through the newly added edge.  The bound is
    current + remaining candidates; the incumbent is warm-started from the
    best applicable generated construction.  With a node budget the search
    may stop early and flags the outcome as not proven optimal.
    """
    if r < 1 or n < 0:
        raise ValidationError("need r >= 1 and n >= 0")
    spec.validate(n, r)
    cap = caps.vertex_cap(caps.ORACLE_PROVEN_MAX_N, max_n)
    if n > cap and budget is None:
        raise CapacityError(
            f"proven-optimal search capped at n <= {cap}; pass a budget for "
            f"best-effort search at n={n}"
        )
    universe = list(combinations(range(n), r))
    umasks = [mask_of(e) for e in universe]

    best_graph = Hypergraph(n, r, ())
    for cand in _warm_start_candidates(n, r, spec):
        if cand.num_edges > best_graph.num_edges and is_free(cand, spec):
            best_graph = cand
    best = best_graph.num_edges

    accept = _prefix_symmetry_accept(universe) if use_symmetry else None
    # exclusion branches are skippable when every conflict is pairwise,
    # i.e. the only forbidden item is a 2-matching
    pairwise_only = all(
        i.kind == "matching" and i.param == 2 for i in spec.items
    )
    # lex-minimal labelings of a graph have N(0) = {1..deg(0)} and
    # deg(0) = max degree, so for r = 2 the search may demand both: some
    # optimal labeled graph always survives the restriction
    lexmin_graph = use_symmetry and r == 2 and n >= 2
    star_count = n - 1 if lexmin_graph else 0
    min_matching_size = min(
        (i.param for i in spec.items if i.kind == "matching"), default=None
    )

    nodes = 0
    aborted = False
    chosen_edges: list[tuple[int, ...]] = []
    chosen_masks: list[int] = []
    chosen_idx: list[int] = []
    checker = _IncrementalChecker(n, r, spec)

    def addable(idx: int) -> bool:
        return not checker.creates(
            chosen_edges, chosen_masks, universe[idx], umasks[idx]
        )

    def packing_groups_bound(cands: list[int]) -> int:
        """Edge-disjoint groups of min_matching_size pairwise-disjoint
        candidates; each group forces at least one exclusion."""
        assert min_matching_size is not None
        groups = 0
        used = 0
        got = 0
        for c in cands:
            m = umasks[c]
            if not m & used:
                used |= m
                got += 1
                if got == min_matching_size:
                    groups += 1
                    used = 0
                    got = 0
        return groups

    def lexmin_degree_ok(cands: list[int]) -> bool:
        """Degree dominance for r=2: no vertex may exceed the degree vertex 0
        can still reach (current degree plus remaining star candidates)."""
        deg = [0] * n
        for a, b in chosen_edges:
            deg[a] += 1
            deg[b] += 1
        decided_star = min(cands[0] if cands else len(universe), star_count)
        if decided_star > deg[0]:
            cap = deg[0]  # a star edge was skipped, so the star is frozen
        else:
            cap = deg[0] + sum(1 for c in cands if c < star_count)
        return max(deg[1:], default=0) <= cap

    def dfs(cands: list[int], sym_pending: bool) -> None:
        nonlocal best, best_graph, nodes, aborted
        if aborted:
            return
        nodes += 1
        if budget is not None and nodes > budget:
            aborted = True
            return
        if len(chosen_edges) > best:
            best = len(chosen_edges)
            best_graph = Hypergraph(n, r, tuple(sorted(chosen_edges)))
        bound = len(chosen_edges) + len(cands)
        if bound <= best:
            return
        if min_matching_size is not None and cands:
            if bound - packing_groups_bound(cands) <= best:
                return
        if lexmin_graph and not lexmin_degree_ok(cands):
            return
        if sym_pending and (not cands or cands[0] >= 3):
            key = frozenset(i for i in chosen_idx if i < 3)
            if accept is not None and not accept[key]:
                return
            sym_pending = False
        if not cands:
            return
        e = cands[0]
        skip_include = False
        if lexmin_graph and e < star_count:
            # star edges at vertex 0 must form a prefix: once one is skipped
            # (explicitly or by filtering) no later one may be included
            star_chosen = sum(1 for i in chosen_idx if i < star_count)
            if e != star_chosen:
                skip_include = True
        if not skip_include:
            # include e
            chosen_edges.append(universe[e])
            chosen_masks.append(umasks[e])
            chosen_idx.append(e)
            checker.refresh(chosen_edges)
            survivors = [c for c in cands[1:] if addable(c)]
            dfs(survivors, sym_pending)
            chosen_edges.pop()
            chosen_masks.pop()
            chosen_idx.pop()
            checker.refresh(chosen_edges)
            if pairwise_only and len(survivors) == len(cands) - 1:
                # e conflicts with nothing ahead: any maximal completion keeps it
                return
        # exclude e
        dfs(cands[1:], sym_pending)

    checker.refresh(chosen_edges)
    roots = [i for i in range(len(universe)) if addable(i)]
    dfs(roots, accept is not None)

    if not is_free(best_graph, spec):
        raise InternalCheckError("search produced a witness violating its spec")
    return SearchOutcome(best, best_graph, nodes, not aborted)


# ---------------------------------------------------------------------------
# the rainbow oracle


def _rainbow_copy_cap(npairs: int, k: int) -> int | None:
    """Largest multiplicity total a single copy can carry while staying
    uncolorable; exceeding it forces an injective assignment to exist.
    None means no constraint (k below the number of copy edges)."""
    if k < npairs:
        return None
    return (npairs - 1) * max(k, npairs)


def rainbow_max_sum(
    n: int,
    r: int,
    k: int,
    l: int,
    budget: int | None = None,
    max_n: int | None = None,
    max_k: int | None = None,
) -> SearchOutcome:
    """Exact maximum of the layered edge total over k-layer instances with
    no rainbow l-clique-expansion, with an attaining witness.

    State space: each r-set gets a color subset of the k layers, decided in
    lexicographic edge order, subsets tried largest first; the first edge's
    subset is restricted to prefixes of the color list, which factors out
    the color permutation symmetry at the root.  Per-copy Hall checks run
    when a copy's last edge is decided; partially decided copies prune
    through the copy multiplicity cap and a fractional knapsack bound over
    the remaining copy slack.
    """
    if not (l >= 2 and r >= 1 and k >= 1 and n >= 0):
        raise ValidationError("need l >= 2, r >= 1, k >= 1, n >= 0")
    ncap = caps.vertex_cap(caps.RAINBOW_ORACLE_MAX_N, max_n)
    kcap = max_k if max_k is not None else caps.RAINBOW_ORACLE_MAX_K
    if (n > ncap or k > kcap) and budget is None:
        raise CapacityError(
            f"proven-optimal rainbow search capped at n <= {ncap}, k <= {kcap}"
        )
    universe = list(combinations(range(n), r))
    m_edges = len(universe)
    index_of = {e: i for i, e in enumerate(universe)}
    npairs = l * (l - 1) // 2

    # copies in the complete r-graph, as index sets
    from .hypergraph import complete_hypergraph

    copies: list[tuple[int, ...]] = []
    cap_per_copy = _rainbow_copy_cap(npairs, k)
    if cap_per_copy is not None:
        seen = set()
        for emb in expansion_embeddings(
            complete_hypergraph(n, r), l, max_n=max(n, 1)
        ):
            key = frozenset(index_of[e] for e in emb.edges)
            if key not in seen:
                seen.add(key)
                copies.append(tuple(sorted(key)))
    copies_of_edge: list[list[int]] = [[] for _ in range(m_edges)]
    copies_by_last: list[list[int]] = [[] for _ in range(m_edges)]
    for ci, copy in enumerate(copies):
        for e in copy:
            copies_of_edge[e].append(ci)
        copies_by_last[copy[-1]].append(ci)
    cover = [len(copies_of_edge[e]) for e in range(m_edges)]
    by_cover = sorted(range(m_edges), key=lambda e: (cover[e], e))

    # warm start from the two layered generators (verified rainbow-free)
    from . import constructions as cons

    best = 0
    best_sets: list[frozenset[int]] = [frozenset()] * m_edges
    for kind in ("identical_turan", "complete_plus_empty"):
        try:
            inst = cons.generate_rainbow_layers(kind, n, r, l, k)
        except (ValidationError, CapacityError):
            continue
        if contains_rainbow_expansion_clique(inst, l, max_n=max(n, 1)) is None:
            if inst.total_size() > best:
                best = inst.total_size()
                csets = inst.color_sets
                best_sets = [
                    frozenset(csets.get(e, frozenset())) for e in universe
                ]

    subsets_desc = sorted(
        (tuple(ss) for size in range(k, -1, -1) for ss in combinations(range(k), size)),
        key=lambda t: (-len(t), t),
    )
    root_subsets = [tuple(range(size)) for size in range(k, -1, -1)]

    slack = [cap_per_copy] * len(copies) if cap_per_copy is not None else []
    sets: list[tuple[int, ...] | None] = [None] * m_edges
    sizes = [0] * m_edges
    total_slack = sum(slack)
    nodes = 0
    aborted = False

    def future_bound(next_idx: int, slack_left: int, current: int) -> int:
        ub = 0.0
        budget_left = float(slack_left)
        for e in by_cover:
            if e < next_idx or sets[e] is not None:
                continue
            if cover[e] == 0:
                ub += k
            elif budget_left > 0:
                take = min(float(k), budget_left / cover[e])
                ub += take
                budget_left -= take * cover[e]
            else:
                break
        return current + floor(ub + 1e-9)

    def dfs(i: int, current: int, slack_left: int) -> None:
        nonlocal best, best_sets, nodes, aborted
        if aborted:
            return
        nodes += 1
        if budget is not None and nodes > budget:
            aborted = True
            return
        if i == m_edges:
            if current > best:
                best = current
                best_sets = [frozenset(s or ()) for s in sets]
            return
        if future_bound(i, slack_left, current) <= best:
            return
        options = root_subsets if i == 0 else subsets_desc
        for S in options:
            m = len(S)
            ok = True
            if cap_per_copy is not None and m:
                for ci in copies_of_edge[i]:
                    if slack[ci] < m:
                        ok = False  # copy total would exceed the cap: rainbow forced
                        break
            if not ok:
                continue
            sets[i] = S
            sizes[i] = m
            if cap_per_copy is not None:
                if m:
                    for ci in copies_of_edge[i]:
                        slack[ci] -= m
                rainbow = False
                for ci in copies_by_last[i]:
                    members = copies[ci]
                    if all(sizes[e] > 0 for e in members):
                        res = rainbow_assignment([sets[e] for e in members])
                        if not isinstance(res, HallViolator):
                            rainbow = True
                            break
                if not rainbow:
                    dfs(i + 1, current + m, slack_left - m * cover[i])
                if m:
                    for ci in copies_of_edge[i]:
                        slack[ci] += m
            else:
                dfs(i + 1, current + m, slack_left)
            sets[i] = None
            sizes[i] = 0

    dfs(0, 0, total_slack)

    layers = tuple(
        Hypergraph(
            n, r, tuple(e for e, s in zip(universe, best_sets) if c in s)
        )
        for c in range(k)
    )
    witness = LayeredInstance(n, r, layers)
    if witness.total_size() != best:
        raise InternalCheckError("rainbow witness total disagrees with value")
    if contains_rainbow_expansion_clique(witness, l, max_n=max(n, 1)) is not None:
        raise InternalCheckError("rainbow search witness contains a rainbow copy")
    return SearchOutcome(best, witness, nodes, not aborted)


# ---------------------------------------------------------------------------
# stability metric


def partition_distance(
    H: Hypergraph, parts: int, max_n: int | None = None
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Minimum symmetric difference between E(H) and the complete balanced
    multipartite r-graph over all arrangements of the balanced part sizes;
    returns (distance, optimal partition).

    The target always carries the balanced sizes (so the distance of the
    empty graph is the full multipartite edge count); only the assignment of
    vertices to parts varies.  Equal-size parts are enumerated once, in
    order of their smallest element.
    """
    cap = caps.vertex_cap(caps.PARTITION_DISTANCE_MAX_N, max_n)
    if H.n > cap:
        raise CapacityError(f"partition_distance capped at n <= {cap}, got n={H.n}")
    if parts < 1:
        raise ValidationError("need at least one part")
    n, r = H.n, H.r
    sizes = balanced_part_sizes(n, parts)
    from .constructions import turan_partite_count

    t_count = turan_partite_count(n, parts, r)

    best_trans = -1
    best_partition: tuple[tuple[int, ...], ...] | None = None
    part_of = [0] * n
    assignment: list[tuple[int, ...]] = []
    edges = H.edges
    # a part's anchor (its minimum) may exceed the smallest remaining vertex
    # only if a later part starts a fresh size-run to absorb it
    future_run_start = [
        any(sizes[j] != sizes[j - 1] for j in range(pi + 1, parts))
        for pi in range(parts)
    ]

    def transversal_count() -> int:
        cnt = 0
        for e in edges:
            seen = 0
            ok = True
            for v in e:
                bit = 1 << part_of[v]
                if seen & bit:
                    ok = False
                    break
                seen |= bit
            if ok:
                cnt += 1
        return cnt

    def rec(pi: int, remaining: tuple[int, ...], prev_anchor: int) -> None:
        nonlocal best_trans, best_partition
        if pi == parts:
            cnt = transversal_count()
            if cnt > best_trans:
                best_trans = cnt
                best_partition = tuple(assignment)
            return
        size = sizes[pi]
        if size == 0:
            assignment.append(())
            rec(pi + 1, remaining, -1)
            assignment.pop()
            return
        floor = prev_anchor if pi > 0 and sizes[pi - 1] == size else -1
        anchors = [v for v in remaining if v > floor]
        if anchors and not future_run_start[pi]:
            anchors = anchors[:1]
        for anchor in anchors:
            pool = [v for v in remaining if v > anchor]
            for others in combinations(pool, size - 1):
                block = (anchor,) + others
                for v in block:
                    part_of[v] = pi
                assignment.append(block)
                rec(
                    pi + 1,
                    tuple(v for v in remaining if v not in block),
                    anchor,
                )
                assignment.pop()

    rec(0, tuple(range(n)), -1)
    assert best_partition is not None
    distance = H.num_edges + t_count - 2 * best_trans
    return distance, best_partition

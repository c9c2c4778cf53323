"""Decision procedures with witnesses for the forbidden and sought structures:
expansion cliques, covering cliques, sunflowers, heavy matchings, and rainbow
copies across layered instances.

Every detector is a pure function over immutable inputs and enumerates
candidates in a fixed, documented order, so results are deterministic; a
returned witness is re-validated by an independent checker before being
surfaced.  The candidate-core loops have independent iterations and are
safe to parallelize provided the reduction keeps the first witness of the
serial order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from . import caps
from .errors import (
    CapacityError,
    InternalCheckError,
    PreconditionError,
    ValidationError,
)
from .hypergraph import Hypergraph, bits_of, make_hypergraph, mask_of


@dataclass(frozen=True)
class Embedding:
    """Witness of a found pattern.

    `core` lists the core vertices in increasing order; `pair_edges` maps
    index pairs (i, j) with i < j into the host edge covering cores i and j;
    `edge_colors`, when present, is an injective edge -> layer assignment.
    """

    core: tuple[int, ...]
    pair_edges: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    edge_colors: tuple[tuple[tuple[int, ...], int], ...] | None = None

    def edge_of(self, i: int, j: int) -> tuple[int, ...]:
        for (a, b), e in self.pair_edges:
            if (a, b) == (i, j):
                return e
        raise KeyError((i, j))

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for _, e in self.pair_edges)

    def to_dict(self) -> dict:
        d: dict = {
            "core": list(self.core),
            "edge_assignment": [
                {"pair": [i, j], "edge": list(e)} for (i, j), e in self.pair_edges
            ],
        }
        if self.edge_colors is not None:
            d["color_assignment"] = [
                {"edge": list(e), "layer": c} for e, c in self.edge_colors
            ]
        return d


@dataclass(frozen=True)
class LayeredInstance:
    """An ordered sequence of r-graphs on one shared vertex set."""

    n: int
    r: int
    layers: tuple[Hypergraph, ...]

    def __post_init__(self):
        if len(self.layers) < 1:
            raise ValidationError("a layered instance needs at least one layer")
        for i, layer in enumerate(self.layers):
            if (layer.n, layer.r) != (self.n, self.r):
                raise ValidationError(
                    f"layer {i} has (n, r)=({layer.n}, {layer.r}), "
                    f"expected ({self.n}, {self.r})"
                )

    @property
    def k(self) -> int:
        return len(self.layers)

    @cached_property
    def color_sets(self) -> dict[tuple[int, ...], frozenset[int]]:
        """edge -> set of layer indices containing it (multiplicity support)."""
        acc: dict[tuple[int, ...], set[int]] = {}
        for i, layer in enumerate(self.layers):
            for e in layer.edges:
                acc.setdefault(e, set()).add(i)
        return {e: frozenset(s) for e, s in acc.items()}

    @cached_property
    def union_graph(self) -> Hypergraph:
        return Hypergraph(self.n, self.r, tuple(sorted(self.color_sets)))

    def multiplicity(self, edge: Sequence[int]) -> int:
        return len(self.color_sets.get(tuple(sorted(edge)), ()))

    def total_size(self) -> int:
        return sum(layer.num_edges for layer in self.layers)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "layers": [[list(e) for e in layer.edges] for layer in self.layers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def make_layered(n: int, r: int, layer_edges: Sequence[Sequence[Sequence[int]]]) -> LayeredInstance:
    return LayeredInstance(
        n, r, tuple(make_hypergraph(n, r, edges) for edges in layer_edges)
    )


def layered_from_dict(data: dict) -> LayeredInstance:
    return make_layered(int(data["n"]), int(data["r"]), data["layers"])


def layered_from_json(text: str) -> LayeredInstance:
    return layered_from_dict(json.loads(text))


@dataclass(frozen=True)
class WeightMatrix:
    """Square real weight matrix for the heavy-matching routine."""

    t: int
    w: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if self.t < 1:
            raise ValidationError("weight matrix side must be at least 1")
        if len(self.w) != self.t or any(len(row) != self.t for row in self.w):
            raise ValidationError(f"weight matrix must be {self.t}x{self.t}")
        for row in self.w:
            for x in row:
                if x != x or x in (float("inf"), float("-inf")):
                    raise ValidationError("weights must be finite")


def make_weight_matrix(rows: Sequence[Sequence[float]]) -> WeightMatrix:
    return WeightMatrix(len(rows), tuple(tuple(float(x) for x in row) for row in rows))


# ---------------------------------------------------------------------------
# expansion cliques


def _vertices_needed(clique_size: int, r: int) -> int:
    return clique_size + (r - 2) * (clique_size * (clique_size - 1) // 2)


def _shadow(H: Hypergraph) -> dict[tuple[int, int], list[int]]:
    """pair (u, v) with u < v -> indices of edges containing both."""
    codeg: dict[tuple[int, int], list[int]] = {}
    for idx, e in enumerate(H.edges):
        for p in combinations(e, 2):
            codeg.setdefault(p, []).append(idx)
    return codeg


def _validate_expansion_embedding(H: Hypergraph, emb: Embedding, clique_size: int) -> None:
    """Independent re-check of every embedding invariant; raises on any failure."""
    core = emb.core
    if len(core) != clique_size or len(set(core)) != clique_size:
        raise InternalCheckError("embedding core is not a clique-size vertex set")
    core_set = set(core)
    pairs_seen = set()
    used_extras: set[int] = set()
    edge_set = H.edge_set
    for (i, j), e in emb.pair_edges:
        if e not in edge_set:
            raise InternalCheckError(f"assigned edge {e} not in host")
        if not (0 <= i < j < clique_size):
            raise InternalCheckError(f"bad pair indices ({i}, {j})")
        pairs_seen.add((i, j))
        inter = core_set & set(e)
        if inter != {core[i], core[j]}:
            raise InternalCheckError(
                f"edge {e} meets core in {sorted(inter)}, expected pair"
            )
        extras = set(e) - {core[i], core[j]}
        if extras & used_extras:
            raise InternalCheckError("expansion extras overlap across pairs")
        used_extras |= extras
    if pairs_seen != set(combinations(range(clique_size), 2)):
        raise InternalCheckError("embedding does not cover every core pair")
    if len({e for _, e in emb.pair_edges}) != len(emb.pair_edges):
        raise InternalCheckError("pair edges are not distinct")


def expansion_embeddings(
    H: Hypergraph,
    clique_size: int,
    require_edge: tuple[int, ...] | None = None,
    max_n: int | None = None,
) -> Iterator[Embedding]:
    """Enumerate clique-expansion copies: `clique_size` cores, one edge per
    core pair meeting the core exactly in that pair, all leftover vertices
    pairwise disjoint.

    Cores are grown over the codegree shadow graph with vertices tried in
    descending shadow-degree order (ties by index); pair edges are assigned
    scarcest-pair-first.  With `require_edge` only copies using that edge as
    one of their pair edges are produced.
    """
    if clique_size < 2:
        raise ValidationError("expansion clique size must be at least 2")
    cap = caps.vertex_cap(caps.EXPANSION_DETECTOR_MAX_N, max_n)
    if H.n > cap:
        raise CapacityError(
            f"expansion detector capped at n <= {cap}, got n={H.n}"
        )
    l, r = clique_size, H.r
    npairs = l * (l - 1) // 2
    if _vertices_needed(l, r) > H.n or H.num_edges < npairs:
        return
    codeg = _shadow(H)
    adj: dict[int, set[int]] = {}
    for u, v in codeg:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(adj) < l:
        return
    priority = sorted(adj, key=lambda v: (-len(adj[v]), v))
    rank = {v: i for i, v in enumerate(priority)}
    masks = H.edge_masks
    edges = H.edges

    def assign_pairs(core: list[int], preassigned, reserved: int):
        """Backtrack one edge per core pair; yields pair->edge maps."""
        core_sorted = sorted(core)
        core_mask = mask_of(core_sorted)
        jobs = []
        for i, j in combinations(range(l), 2):
            u, v = core_sorted[i], core_sorted[j]
            if preassigned is not None and {u, v} == preassigned[0]:
                continue
            pmask = (1 << u) | (1 << v)
            cands = [
                k
                for k in codeg.get((u, v), ())
                if masks[k] & core_mask == pmask and not masks[k] & reserved
            ]
            if not cands:
                return
            jobs.append(((i, j), pmask, cands))
        jobs.sort(key=lambda job: len(job[2]))
        chosen: list[tuple[tuple[int, int], int]] = []

        def fill(pos: int, used: int):
            if pos == len(jobs):
                yield list(chosen)
                return
            (i, j), pmask, cands = jobs[pos]
            blocked = core_mask | used | reserved
            for k in cands:
                extras = masks[k] & ~pmask
                if extras & blocked:
                    continue
                chosen.append(((i, j), k))
                yield from fill(pos + 1, used | extras)
                chosen.pop()

        yield from fill(0, 0)

    def finish(core: list[int], preassigned, reserved: int):
        core_sorted = sorted(core)
        for assignment in assign_pairs(core, preassigned, reserved):
            pair_edges = {pe: edges[k] for pe, k in assignment}
            if preassigned is not None:
                pair_set, e0 = preassigned
                u, v = sorted(pair_set)
                pair_edges[(core_sorted.index(u), core_sorted.index(v))] = e0
            emb = Embedding(
                tuple(core_sorted),
                tuple(sorted(pair_edges.items())),
            )
            _validate_expansion_embedding(H, emb, l)
            yield emb

    def grow(core: list[int], cands: list[int], preassigned, reserved: int):
        if len(core) == l:
            yield from finish(core, preassigned, reserved)
            return
        need = l - len(core)
        for idx, v in enumerate(cands):
            if len(cands) - idx < need:
                return
            nxt = [u for u in cands[idx + 1 :] if u in adj[v]]
            yield from grow(core + [v], nxt, preassigned, reserved)

    if require_edge is None:
        yield from grow([], priority, None, 0)
    else:
        e0 = tuple(sorted(require_edge))
        if e0 not in H.edge_set:
            return
        e0_mask = mask_of(e0)
        for u, v in combinations(e0, 2):
            reserved = e0_mask & ~((1 << u) | (1 << v))
            base = [u, v]
            cands = [
                w
                for w in priority
                if w not in base
                and not (1 << w) & e0_mask
                and w in adj.get(u, ())
                and w in adj.get(v, ())
            ]
            yield from grow(base, cands, ({u, v}, e0), reserved)


def contains_expansion_clique(
    H: Hypergraph, clique_size: int, max_n: int | None = None
) -> Embedding | None:
    """First clique-expansion copy found, or None after exhaustive search."""
    for emb in expansion_embeddings(H, clique_size, max_n=max_n):
        return emb
    return None


# ---------------------------------------------------------------------------
# covering cliques


def contains_covering_clique(H: Hypergraph, q: int) -> Embedding | None:
    """q vertices with every pair lying in some edge (edges may repeat and
    may contain further core vertices); equivalently a q-clique in the
    codegree shadow graph."""
    if q < 2:
        raise ValidationError("covering clique size must be at least 2")
    codeg = _shadow(H)
    adj: dict[int, set[int]] = {}
    for u, v in codeg:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(adj) < q:
        return None
    priority = sorted(adj, key=lambda v: (-len(adj[v]), v))

    def grow(core: list[int], cands: list[int]):
        if len(core) == q:
            return list(core)
        need = q - len(core)
        for idx, v in enumerate(cands):
            if len(cands) - idx < need:
                return None
            got = grow(core + [v], [u for u in cands[idx + 1 :] if u in adj[v]])
            if got is not None:
                return got
        return None

    core = grow([], priority)
    if core is None:
        return None
    core_sorted = sorted(core)
    pair_edges = []
    for i, j in combinations(range(q), 2):
        u, v = core_sorted[i], core_sorted[j]
        k = min(codeg[(u, v)])
        pair_edges.append(((i, j), H.edges[k]))
    emb = Embedding(tuple(core_sorted), tuple(pair_edges))
    for (i, j), e in emb.pair_edges:
        if core_sorted[i] not in e or core_sorted[j] not in e:
            raise InternalCheckError("covering edge misses its pair")
    return emb


# ---------------------------------------------------------------------------
# sunflowers


def find_sunflower(
    H: Hypergraph, t: int, k: int
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None:
    """k distinct edges sharing a common t-set with pairwise disjoint
    remainders; returns (core, petal edges) or None.  t = 0 asks for k
    pairwise disjoint edges."""
    if t < 0 or k < 1:
        raise ValidationError("sunflower needs t >= 0 and k >= 1")
    masks = H.edge_masks
    edges = H.edges

    def packing(cand: list[int], blocked: int) -> list[int] | None:
        """k indices from cand whose masks minus `blocked` are pairwise disjoint."""
        picked: list[int] = []

        def rec(start: int, used: int) -> bool:
            if len(picked) == k:
                return True
            if len(picked) + len(cand) - start < k:
                return False
            for pos in range(start, len(cand)):
                m = masks[cand[pos]] & ~blocked
                if m & used:
                    continue
                picked.append(cand[pos])
                if rec(pos + 1, used | m):
                    return True
                picked.pop()
            return False

        return list(picked) if rec(0, 0) else None

    if t == 0:
        got = packing(list(range(len(edges))), 0)
        return ((), tuple(edges[i] for i in got)) if got is not None else None

    counts: dict[tuple[int, ...], list[int]] = {}
    for idx, e in enumerate(edges):
        for core in combinations(e, t):
            counts.setdefault(core, []).append(idx)
    cores = sorted(
        (c for c, lst in counts.items() if len(lst) >= k),
        key=lambda c: (-len(counts[c]), c),
    )
    for core in cores:
        got = packing(counts[core], mask_of(core))
        if got is not None:
            return (core, tuple(edges[i] for i in got))
    return None


# ---------------------------------------------------------------------------
# heavy matchings (constructive greedy from the weighted K_{t,t} lemma)


def heavy_matching(W: WeightMatrix | Sequence[Sequence[float]], s: float) -> tuple[int, ...]:
    """Perfect matching of the t x t weight matrix with total weight >= s.

    Requires every row sum >= s; refuses otherwise, naming the deficient
    row.  Procedure: repeatedly take the maximum-weight surviving cell
    (ties: smallest row, then smallest column) and delete its row and
    column.  Returns the column matched to each row.
    """
    if not isinstance(W, WeightMatrix):
        W = make_weight_matrix(W)
    for i, row in enumerate(W.w):
        if sum(row) < s:
            raise PreconditionError(
                f"row {i} has sum {sum(row)} < {s}; the hypothesis requires "
                f"every row sum to be at least the threshold"
            )
    rows = list(range(W.t))
    cols = list(range(W.t))
    match = [-1] * W.t
    while rows:
        bi, bj = rows[0], cols[0]
        for i in rows:
            for j in cols:
                if W.w[i][j] > W.w[bi][bj]:
                    bi, bj = i, j
        match[bi] = bj
        rows.remove(bi)
        cols.remove(bj)
    total = sum(W.w[i][match[i]] for i in range(W.t))
    if total < s:
        raise InternalCheckError(
            f"greedy matching weight {total} fell below {s} despite the row-sum "
            f"hypothesis; this contradicts the guarantee"
        )
    return tuple(match)


# ---------------------------------------------------------------------------
# rainbow assignments (systems of distinct representatives)


@dataclass(frozen=True)
class HallViolator:
    """Positions whose joint color support is smaller than their number."""

    positions: tuple[int, ...]
    colors: tuple[int, ...]


def rainbow_assignment(
    color_sets: Sequence[Sequence[int]], forbidden_color: int | None = None
) -> list[int] | HallViolator:
    """Injective position -> color assignment (a system of distinct
    representatives), or a Hall violator certifying none exists.

    `forbidden_color`, when given, is removed from every set first.
    """
    sets = [
        sorted(c for c in s if c != forbidden_color) for s in color_sets
    ]
    owner: dict[int, int] = {}
    assign: list[int] = [-1] * len(sets)

    def augment(p: int, visited_colors: set[int]) -> bool:
        for c in sets[p]:
            if c in visited_colors:
                continue
            visited_colors.add(c)
            if c not in owner or augment(owner[c], visited_colors):
                owner[c] = p
                assign[p] = c
                return True
        return False

    for p in range(len(sets)):
        visited: set[int] = set()
        if not augment(p, visited):
            positions = sorted({p} | {owner[c] for c in visited})
            return HallViolator(tuple(positions), tuple(sorted(visited)))
    return assign


# ---------------------------------------------------------------------------
# rainbow copies across layers


def _copy_iter(L: LayeredInstance, clique_size: int, max_n: int | None):
    """Distinct expansion copies of the union graph, deduplicated by edge set."""
    union = L.union_graph
    seen: set[frozenset] = set()
    for emb in expansion_embeddings(union, clique_size, max_n=max_n):
        key = frozenset(emb.edges)
        if key in seen:
            continue
        seen.add(key)
        yield emb


def contains_rainbow_expansion_clique(
    L: LayeredInstance, clique_size: int, max_n: int | None = None
) -> Embedding | None:
    """A clique-expansion copy in the union whose edges admit an injective
    layer assignment, or None.  Copies are enumerated first, colors second;
    colorability is an exact per-copy Hall check."""
    if clique_size < 2:
        raise ValidationError("clique size must be at least 2")
    npairs = clique_size * (clique_size - 1) // 2
    if L.k < npairs:
        return None
    csets = L.color_sets
    for emb in _copy_iter(L, clique_size, max_n):
        copy_edges = emb.edges
        res = rainbow_assignment([sorted(csets[e]) for e in copy_edges])
        if isinstance(res, HallViolator):
            continue
        colors = tuple((e, res[i]) for i, e in enumerate(copy_edges))
        if len({c for _, c in colors}) != len(colors):
            raise InternalCheckError("rainbow assignment is not injective")
        for e, c in colors:
            if e not in L.layers[c].edge_set:
                raise InternalCheckError("rainbow color not supported by layer")
        return Embedding(emb.core, emb.pair_edges, colors)
    return None


def contains_super_rainbow(
    L: LayeredInstance, clique_size: int, max_n: int | None = None
) -> Embedding | None:
    """A single copy that stays rainbow-colorable after excluding any one
    layer: for every layer i some injective assignment avoids i.  Returns
    that copy (without a color map) or None."""
    if clique_size < 2:
        raise ValidationError("clique size must be at least 2")
    if L.k < 2:
        return None
    npairs = clique_size * (clique_size - 1) // 2
    if L.k - 1 < npairs:
        return None
    csets = L.color_sets
    for emb in _copy_iter(L, clique_size, max_n):
        sets = [sorted(csets[e]) for e in emb.edges]
        if all(
            not isinstance(rainbow_assignment(sets, forbidden_color=i), HallViolator)
            for i in range(L.k)
        ):
            return emb
    return None

"""Uniform hypergraphs on labeled vertices: representation, generators, invariants.

Vertices are 0..n-1.  Edges are strictly increasing r-tuples, stored
deduplicated in lexicographic order, with a bitmask per edge for the
disjointness and containment tests that dominate detector and search
runtime.  All values are immutable and every function is pure, so
everything here is safe under unrestricted concurrent use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from . import caps
from .errors import CapacityError, ValidationError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph.

    Construct through :func:`make_hypergraph` for validated input; the raw
    constructor trusts its arguments to be normalized (sorted, in-range,
    deduplicated) and is used by generators that build edges by design.
    """

    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(e) for e in self.edges)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for e in self.edges:
            for v in e:
                d[v] += 1
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(e) for e in self.edges]}


def make_hypergraph(n: int, r: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Build a validated, normalized hypergraph.

    Edges are sorted and deduplicated; a malformed edge raises a
    ValidationError naming it (wrong arity, repeated vertex, index out of
    range).
    """
    if n < 0:
        raise ValidationError(f"vertex count must be nonnegative, got {n}")
    if r < 1:
        raise ValidationError(f"uniformity must be at least 1, got {r}")
    normalized = set()
    for e in edges:
        t = tuple(sorted(e))
        if len(t) != r:
            raise ValidationError(f"edge {list(e)} has {len(t)} vertices, expected {r}")
        for a, b in zip(t, t[1:]):
            if a == b:
                raise ValidationError(f"edge {list(e)} repeats vertex {a}")
        if t and (t[0] < 0 or t[-1] >= n):
            bad = t[0] if t[0] < 0 else t[-1]
            raise ValidationError(f"edge {list(e)}: vertex {bad} out of range for n={n}")
        normalized.add(t)
    return Hypergraph(n, r, tuple(sorted(normalized)))


def from_dict(data: dict) -> Hypergraph:
    return make_hypergraph(int(data["n"]), int(data["r"]), data["edges"])


def from_json(text: str) -> Hypergraph:
    return from_dict(json.loads(text))


def expansion(F: Hypergraph, r: int) -> Hypergraph:
    """Blow a graph up to uniformity r by giving each edge r-2 fresh vertices.

    The first |V(F)| indices of the result are the core vertices; the fresh
    vertices of distinct edges are pairwise disjoint blocks appended after
    the core, so the result has |V(F)| + (r-2)*e(F) vertices and e(F) edges.
    """
    if F.r != 2:
        raise ValidationError(f"expansion expects a 2-uniform input, got r={F.r}")
    if r < 2:
        raise ValidationError(f"expansion uniformity must be at least 2, got {r}")
    extra = r - 2
    n_out = F.n + extra * F.num_edges
    edges = []
    nxt = F.n
    for e in F.edges:
        edges.append(tuple(sorted(e + tuple(range(nxt, nxt + extra)))))
        nxt += extra
    return Hypergraph(n_out, r, tuple(sorted(edges)))


def balanced_part_sizes(n: int, parts: int) -> list[int]:
    """Sizes of a balanced partition into `parts` classes, larger parts first."""
    q, rem = divmod(n, parts)
    return [q + 1] * rem + [q] * (parts - rem)


def balanced_parts(n: int, parts: int) -> list[tuple[int, ...]]:
    """Contiguous index ranges realizing the balanced partition, larger first."""
    out, start = [], 0
    for size in balanced_part_sizes(n, parts):
        out.append(tuple(range(start, start + size)))
        start += size
    return out


def complete_multipartite(n: int, parts: int, r: int) -> Hypergraph:
    """Complete balanced multipartite r-graph: edges are the r-sets meeting
    every part in at most one vertex.  With r > parts no r-set fits and the
    edge set is empty (not an error)."""
    if r < 1:
        raise ValidationError(f"uniformity must be at least 1, got {r}")
    if not 1 <= parts <= n:
        raise ValidationError(f"part count {parts} must satisfy 1 <= parts <= n={n}")
    if r > parts:
        return Hypergraph(n, r, ())
    ranges = balanced_parts(n, parts)
    edges = []
    for chosen in combinations(ranges, r):
        for combo in product(*chosen):
            edges.append(tuple(sorted(combo)))
    return Hypergraph(n, r, tuple(sorted(edges)))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, tuple(combinations(range(n), r)))


def star_cover(n: int, r: int, s: int) -> Hypergraph:
    """All r-sets meeting the fixed cover {0,..,s-1}; C(n,r) - C(n-s,r) edges."""
    if r < 1:
        raise ValidationError(f"uniformity must be at least 1, got {r}")
    if not 0 <= s <= n:
        raise ValidationError(f"cover size {s} must satisfy 0 <= s <= n={n}")
    if r > n:
        raise ValidationError(f"uniformity {r} exceeds vertex count {n}")
    # a sorted r-tuple meets {0..s-1} iff its first entry does
    edges = tuple(e for e in combinations(range(n), r) if e and e[0] < s)
    return Hypergraph(n, r, edges)


def _packing_search(masks: Sequence[int], target: int | None) -> int:
    """Maximum number of pairwise disjoint masks; early exit at `target`.

    Branches on the lowest vertex still present in some available edge:
    either one of its edges joins the packing or the vertex goes unused.
    Pruned with the counting bound min(#available, support_size // r).
    """
    if not masks:
        return 0
    r = bin(masks[0]).count("1") if masks[0] else 1
    best = 0

    def rec(avail: list[int], current: int) -> None:
        nonlocal best
        if current > best:
            best = current
        if not avail or (target is not None and best >= target):
            return
        support = 0
        for m in avail:
            support |= m
        if current + min(len(avail), support.bit_count() // max(r, 1)) <= best:
            return
        v_bit = support & -support
        through = [m for m in avail if m & v_bit]
        rest = [m for m in avail if not (m & v_bit)]
        for m in through:
            rec([x for x in rest if not (x & m)], current + 1)
            if target is not None and best >= target:
                return
        rec(rest, current)

    rec(list(masks), 0)
    return best


def matching_number(H: Hypergraph) -> int:
    """Exact maximum number of pairwise disjoint edges (branch and bound)."""
    return _packing_search(H.edge_masks, None)


def has_matching(H: Hypergraph, size: int) -> bool:
    """True iff H contains `size` pairwise disjoint edges (early-exit search)."""
    if size <= 0:
        return True
    return _packing_search(H.edge_masks, size) >= size


def degree(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges containing the whole set S; degree(H, ()) = e(H)."""
    sm = mask_of(S)
    return sum(1 for m in H.edge_masks if m & sm == sm)


def link(H: Hypergraph, v: int) -> Hypergraph:
    """The (r-1)-uniform link of v: remainders of the edges through v.

    The vertex set is unchanged; v is isolated in the result.
    """
    if H.r < 2:
        raise ValidationError("link requires uniformity at least 2")
    if not 0 <= v < H.n:
        raise ValidationError(f"vertex {v} out of range for n={H.n}")
    edges = tuple(sorted(tuple(u for u in e if u != v) for e in H.edges if v in e))
    return Hypergraph(H.n, H.r - 1, edges)


def induced(H: Hypergraph, S: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced on S, relabeled order-preservingly to 0..|S|-1."""
    sv = sorted(set(S))
    if sv and (sv[0] < 0 or sv[-1] >= H.n):
        raise ValidationError(f"induced set {sv} not within [0, {H.n})")
    sm = mask_of(sv)
    relabel = {v: i for i, v in enumerate(sv)}
    edges = tuple(
        sorted(
            tuple(relabel[v] for v in e)
            for e, m in zip(H.edges, H.edge_masks)
            if m & sm == m
        )
    )
    return Hypergraph(len(sv), H.r, edges)


def delete_vertices(H: Hypergraph, U: Iterable[int]) -> Hypergraph:
    us = set(U)
    return induced(H, (v for v in range(H.n) if v not in us))


def weak_chromatic_number(H: Hypergraph, max_n: int | None = None) -> int:
    """Fewest colors leaving no edge monochromatic; exact backtracking.

    Returns 1 on empty edge sets.  Capped (default n <= 16) because the
    search is exponential; raise the cap explicitly for larger instances.
    """
    cap = caps.vertex_cap(caps.WEAK_CHROMATIC_MAX_N, max_n)
    if H.n > cap:
        raise CapacityError(f"weak_chromatic_number capped at n <= {cap}, got n={H.n}")
    if H.num_edges == 0:
        return 1
    if H.r == 1:
        raise ValidationError("1-uniform edges are always monochromatic")

    # only vertices on edges matter; relabel to compress
    used = sorted({v for e in H.edges for v in e})
    relabel = {v: i for i, v in enumerate(used)}
    edges = [tuple(relabel[v] for v in e) for e in H.edges]
    m = len(used)
    incident = [[] for _ in range(m)]
    for e in edges:
        incident[max(e)].append(e)

    def colorable(c: int) -> bool:
        colors = [-1] * m

        def place(v: int, used_count: int) -> bool:
            if v == m:
                return True
            limit = min(c, used_count + 1)
            for col in range(limit):
                colors[v] = col
                ok = True
                for e in incident[v]:
                    first = colors[e[0]]
                    if first == col and all(colors[u] == col for u in e[1:]):
                        ok = False
                        break
                if ok and place(v + 1, max(used_count, col + 1)):
                    return True
            colors[v] = -1
            return False

        return place(0, 0)

    for c in range(2, m + 1):
        if colorable(c):
            return c
    return m


def independent_deletion_family(
    H: Hypergraph, max_n: int | None = None
) -> list[Hypergraph]:
    """Induced subgraphs H[S] over all S whose complement spans no edge.

    Equivalently S ranges over the vertex covers (transversals) of H.  The
    family is deduplicated by canonical form and returned as canonical
    representatives in a deterministic order.
    """
    cap = caps.vertex_cap(caps.INDEPENDENT_DELETION_MAX_N, max_n)
    if H.n > cap:
        raise CapacityError(
            f"independent_deletion_family capped at n <= {cap}, got n={H.n}"
        )
    from .canonical import canonical_form

    masks = H.edge_masks
    seen: dict[tuple, Hypergraph] = {}
    for smask in range(1 << H.n):
        if any(m & smask == 0 for m in masks):
            continue
        sub = induced(H, bits_of(smask))
        cf = canonical_form(sub)
        key = (sub.n, sub.r, cf.edges)
        if key not in seen:
            seen[key] = Hypergraph(sub.n, sub.r, cf.edges)
    return [seen[k] for k in sorted(seen, key=lambda k: (k[0], len(k[2]), k[2]))]

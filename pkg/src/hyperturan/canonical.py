"""Exact canonical labeling and isomorphism testing for small hypergraphs.

Color refinement partitions the vertices into an isomorphism-invariant
ordered list of cells; backtracking then tries every cell-respecting
relabeling and keeps the one whose edge list is minimal in colex order.
Colex is the order that makes the completed edges a growing prefix as
vertices are placed one by one, which is what lets partial relabelings be
pruned against the incumbent.  No hashing shortcuts: correctness over
speed, since instances stay small.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .hypergraph import Hypergraph


@dataclass(frozen=True)
class CanonicalForm:
    """relabeling[old_vertex] = new_vertex; edges = relabeled edge list, lex-sorted."""

    relabeling: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]


def _refine_colors(H: Hypergraph) -> list[int]:
    """Iterated color refinement; the final coloring is relabeling-invariant."""
    n = H.n
    incident: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(H.edges):
        for v in e:
            incident[v].append(idx)
    colors = [0] * n
    while True:
        sigs = []
        for v in range(n):
            through = sorted(
                tuple(sorted(colors[u] for u in H.edges[k])) for k in incident[v]
            )
            sigs.append((colors[v], tuple(through)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _colex_key(edge: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(edge))


def canonical_form(H: Hypergraph) -> CanonicalForm:
    n = H.n
    if n == 0:
        return CanonicalForm((), ())
    colors = _refine_colors(H)
    # cells ordered by refined color; positions are filled cell by cell
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    cell_order = [cells[c] for c in sorted(cells)]
    cell_of_position = []
    for cell in cell_order:
        cell_of_position.extend([cell] * len(cell))

    incident: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(H.edges):
        for v in e:
            incident[v].append(idx)

    new_label = [-1] * n
    placed_count = [0]
    best: list[tuple[int, ...]] | None = None
    best_perm: tuple[int, ...] | None = None

    def completed_keys(u: int, pos: int) -> list[tuple[int, ...]] | None:
        """Colex keys of edges finished by placing u at position pos."""
        out = []
        for k in incident[u]:
            relabeled = []
            ok = True
            for v in H.edges[k]:
                lbl = pos if v == u else new_label[v]
                if lbl < 0:
                    ok = False
                    break
                relabeled.append(lbl)
            if ok:
                relabeled.sort(reverse=True)
                out.append(tuple(relabeled))
        out.sort()
        return out

    def dfs(pos: int, prefix: list[tuple[int, ...]]) -> None:
        nonlocal best, best_perm
        if pos == n:
            if best is None or prefix < best:
                best = list(prefix)
                best_perm = tuple(new_label)
            return
        for u in cell_of_position[pos]:
            if new_label[u] >= 0:
                continue
            ext = completed_keys(u, pos)
            cand = prefix + ext
            if best is not None and cand > best[: len(cand)]:
                continue
            new_label[u] = pos
            dfs(pos + 1, cand)
            new_label[u] = -1

    dfs(0, [])
    assert best is not None and best_perm is not None
    edges = tuple(sorted(tuple(sorted(k)) for k in best))
    return CanonicalForm(best_perm, edges)


def is_isomorphic(H1: Hypergraph, H2: Hypergraph) -> bool:
    """Exact isomorphism: equal (n, r) and equal canonical edge lists."""
    if (H1.n, H1.r, H1.num_edges) != (H2.n, H2.r, H2.num_edges):
        return False
    if sorted(H1.degrees()) != sorted(H2.degrees()):
        return False
    if sorted(_refine_colors(H1)) != sorted(_refine_colors(H2)):
        return False
    return canonical_form(H1).edges == canonical_form(H2).edges


def codegree_multiset(H: Hypergraph) -> list[int]:
    """Multiset of pair codegrees; a cheap isomorphism invariant used in tests."""
    counts: dict[tuple[int, int], int] = {}
    for e in H.edges:
        for p in combinations(e, 2):
            counts[p] = counts.get(p, 0) + 1
    return sorted(counts.values())

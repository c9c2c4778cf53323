"""Closed-form extremal values and the lower-bound constructions that attain
them, kept in bit-exact agreement with each other.

Every evaluator validates its own parameter window and never extrapolates:
parameters outside every window produce an explicit not-covered result.
Windows that the underlying statements leave unquantified (thresholds in s
or k that exist but are not pinned down) are reported as window_ok=None.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import caps
from .errors import CapacityError, InternalCheckError, ValidationError
from .hypergraph import (
    Hypergraph,
    balanced_part_sizes,
    balanced_parts,
    complete_hypergraph,
    complete_multipartite,
    star_cover,
    weak_chromatic_number,
)
from .detectors import LayeredInstance


def choose(n: int, k: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class FormulaResult:
    """Exact integer value plus window bookkeeping.

    value is None when the parameters fall in no covered window (the
    evaluators refuse to guess).  window_ok is True when the stated
    parameter window holds, False when it provably fails, and None when the
    statement's threshold is unquantified so membership cannot be decided.
    """

    value: int | None
    case: str
    window_ok: bool | None
    note: str = ""

    @property
    def covered(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        d: dict = {"value": self.value, "case": self.case, "window_ok": self.window_ok}
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def turan_partite_count(n: int, parts: int, r: int) -> int:
    """Edge count of the complete balanced multipartite r-graph: the degree-r
    elementary symmetric polynomial of the balanced part sizes (0 when
    r > parts).  Allows parts > n via empty parts, which generators reject."""
    if parts < 1:
        raise ValidationError(f"part count must be at least 1, got {parts}")
    if r < 0 or n < 0:
        raise ValidationError("n and r must be nonnegative")
    if r > parts:
        return 0
    sizes = balanced_part_sizes(n, parts)
    # DP over elementary symmetric polynomials
    esp = [0] * (r + 1)
    esp[0] = 1
    for size in sizes:
        for j in range(r, 0, -1):
            esp[j] += esp[j - 1] * size
    return esp[r]


def emc_value(n: int, r: int, s: int) -> FormulaResult:
    """Extremal edge count under a forbidden matching of size s+1, cross
    computed two ways (a Vandermonde identity) that must agree."""
    if n < 0 or r < 1 or s < 0:
        raise ValidationError("need n >= 0, r >= 1, s >= 0")
    direct = choose(n, r) - choose(n - s, r) if s <= n else choose(n, r)
    summed = sum(choose(s, i) * choose(n - s, r - i) for i in range(1, s + 1))
    if s <= n and direct != summed:
        raise InternalCheckError(
            f"matching-bound forms disagree: {direct} vs {summed} at (n={n}, r={r}, s={s})"
        )
    window = n >= (2 * s + 1) * r - s
    return FormulaResult(
        direct,
        "emc",
        window,
        "" if window else "below the quantified window n >= (2s+1)r - s",
    )


def _small_s_case(r: int, l: int, s: int) -> tuple[str, int | None]:
    """Case label for the five-window bounded-matching formula; t for case iv."""
    if s < l:
        return "v", None
    c_lm1 = choose(l - 1, 2)
    for t in range(2, l - 1):
        if l + 1 - t + choose(t, 2) <= s < l - t + choose(t + 1, 2):
            return "iv", t
    if 2 + c_lm1 <= s < c_lm1 + r:
        return "iii", None
    if l > r and c_lm1 + r <= s < choose(l, 2):
        return "ii", None
    if l > r and choose(l, 2) <= s and 2 * s < l * l - 1:
        return "i", None
    return "not-covered", None


def small_s_value(n: int, r: int, l: int, s: int) -> FormulaResult:
    """Exact extremal count forbidding both the (l+1)-clique expansion and a
    matching of size s+1, in the small-s regime.  Five disjoint parameter
    windows; anything outside them (including the window of case iii when
    l < 2r+1) is reported as not covered rather than guessed."""
    if not (l >= r >= 3):
        raise ValidationError(f"need l >= r >= 3, got l={l}, r={r}")
    if n < 0 or s < 0:
        raise ValidationError("need n >= 0 and s >= 0")
    case, t = _small_s_case(r, l, s)
    note_asym = "exact only for sufficiently large n (threshold unquantified)"
    if case == "v":
        return FormulaResult(choose(n, r) - choose(n - s, r), "v", True, note_asym)
    if case == "iv":
        assert t is not None
        val = s * choose(n - s, r - 1) + turan_partite_count(s, l - t, 2) * choose(
            n - s, r - 2
        )
        return FormulaResult(
            val,
            "iv",
            True,
            f"two displayed terms only (t={t}); the statement carries "
            f"O(n^(r-3)) slack on top of them",
        )
    if case == "iii":
        if l < 2 * r + 1:
            return FormulaResult(
                None,
                "not-covered",
                False,
                f"window 2+C(l-1,2) <= s < C(l-1,2)+r requires l >= 2r+1; "
                f"l={l} < {2 * r + 1} is not covered",
            )
        lo = s - choose(l - 1, 2) + 1
        tail = sum(
            choose(s - 1, i - 1) * choose(n - s, r - i) for i in range(lo, r + 1)
        )
        return FormulaResult(s * choose(n - s, r - 1) + tail, "iii", True, note_asym)
    if case == "ii":
        return FormulaResult(s * choose(n - s, r - 1), "ii", True, note_asym)
    if case == "i":
        c = choose(l, 2)
        return FormulaResult(c * choose(n - c, r - 1), "i", True, note_asym)
    return FormulaResult(
        None,
        "not-covered",
        False,
        f"(r={r}, l={l}, s={s}) falls in no stated window "
        f"(s >= (l*l-1)/2 belongs to the large-s regime)",
    )


def large_s_value(n: int, r: int, l: int, s: int) -> FormulaResult:
    """Large-s extremal count s * t_{r-1}(n-s, l-1); the s-threshold above
    which this is exact exists but is unquantified, so window_ok is None."""
    if not (l >= r >= 3):
        raise ValidationError(f"need l >= r >= 3, got l={l}, r={r}")
    if s < 0:
        raise ValidationError("need s >= 0")
    if n < s:
        raise ValidationError(f"need n >= s, got n={n} < s={s}")
    val = s * turan_partite_count(n - s, l - 1, r - 1)
    return FormulaResult(
        val,
        "large-s",
        None,
        "valid for s above an unquantified threshold s0(l, r) and "
        "sufficiently large n",
    )


def rainbow_value(n: int, r: int, l: int, k: int) -> FormulaResult:
    """Extremal layered total with no rainbow l-clique expansion.

    Small k (2k < l*l-1): min{k, C(l,2)-1} * C(n,r).  Large k: k * t_r(n,l-1),
    valid above an unquantified threshold k0(r,l); the gap between the two
    regimes is open, so window_ok is None there.
    """
    if not (l >= r >= 3):
        raise ValidationError(f"need l >= r >= 3, got l={l}, r={r}")
    if k < 1:
        raise ValidationError(f"need k >= 1, got k={k}")
    if n < 0:
        raise ValidationError("need n >= 0")
    if 2 * k < l * l - 1:
        val = min(k, choose(l, 2) - 1) * choose(n, r)
        return FormulaResult(
            val, "k-small", True, "exact for sufficiently large n"
        )
    val = k * turan_partite_count(n, l - 1, r)
    return FormulaResult(
        val,
        "k-large",
        None,
        "valid for k above an unquantified threshold k0(r, l); the regime "
        "between (l*l-1)/2 and k0 is open",
    )


def alon_frankl_g_count(n: int, l: int, s: int) -> int:
    """Edges of the complete l-partite graph with one part of size n-s and
    the other l-1 parts splitting s as evenly as possible."""
    if l < 2:
        raise ValidationError(f"need at least 2 parts, got l={l}")
    if not 0 <= s <= n:
        raise ValidationError(f"need 0 <= s <= n, got s={s}, n={n}")
    sizes = [n - s] + balanced_part_sizes(s, l - 1)
    total = 0
    acc = 0
    for size in sizes:
        total += acc * size
        acc += size
    return total


def gtz_value(n: int, r: int, s: int, H: Hypergraph, max_s: int | None = None) -> FormulaResult:
    """Bounded-matching extremal count for an arbitrary forbidden r-graph H
    with weak chromatic number above 2: a closed form plus an exact inner
    extremal term over the independent-deletion family of H, delegated to
    the brute-force oracle (no closed form exists for general H)."""
    if r < 2 or s < 1:
        raise ValidationError("need r >= 2 and s >= 1")
    if H.r != r:
        raise ValidationError(f"forbidden graph uniformity {H.r} != {r}")
    chi = weak_chromatic_number(H)
    if chi <= 2:
        return FormulaResult(
            None,
            "hypothesis-violated",
            False,
            f"weak chromatic number is {chi}; the statement needs it above 2",
        )
    cap = max_s if max_s is not None else caps.GTZ_INNER_MAX_S
    if s > cap:
        raise CapacityError(f"inner exact oracle capped at s <= {cap}, got s={s}")
    from .hypergraph import independent_deletion_family
    from .search import ForbiddenSpec, max_edges_avoiding, raw_pattern

    family = [A for A in independent_deletion_family(H) if A.n <= s]
    if family:
        spec = ForbiddenSpec(tuple(raw_pattern(A) for A in family))
        inner = max_edges_avoiding(s, r, spec).value
    else:
        inner = choose(s, r)
    val = choose(n, r) - choose(n - s, r) - choose(s, r) + inner
    return FormulaResult(val, "gtz", True, "exact for sufficiently large n")


# ---------------------------------------------------------------------------
# generators

CONSTRUCTION_KINDS = (
    "g1",
    "g2",
    "g3",
    "one_point",
    "yzz",
    "turan_partite",
    "star_cover",
)


def _window(cond: bool, desc: str) -> None:
    if not cond:
        raise ValidationError(f"parameter window violated: {desc}")


def derive_g2_t(l: int, s: int) -> int:
    """The unique t with 2 <= t <= l-2 whose window contains s."""
    for t in range(2, l - 1):
        if l + 1 - t + choose(t, 2) <= s < l - t + choose(t + 1, 2):
            return t
    raise ValidationError(
        f"no t in [2, {l - 2}] satisfies l+1-t+C(t,2) <= {s} < l-t+C(t+1,2)"
    )


def generate_construction(
    kind: str,
    n: int,
    r: int,
    l: int | None = None,
    s: int | None = None,
) -> Hypergraph:
    """Build a lower-bound construction.

    The distinguished vertex set (A / V0 / the cover) always occupies
    indices 0..s-1, its special vertex u is index 0, and partitions of it
    are contiguous with larger parts first, so outputs are reproducible.
    """
    kind = kind.replace("-", "_").lower()
    if kind not in CONSTRUCTION_KINDS:
        raise ValidationError(f"unknown construction kind {kind!r}")

    if kind == "turan_partite":
        _window(l is not None, "turan_partite needs l")
        return complete_multipartite(n, l, r)

    if kind == "star_cover":
        _window(s is not None, "star_cover needs s")
        return star_cover(n, r, s)

    _window(s is not None and s >= 0, "s must be given and nonnegative")
    _window(n >= s, f"n >= s needed, got n={n}, s={s}")

    if kind == "one_point":
        # hyperedges meeting the s-set in exactly one vertex
        _window(1 <= s, "one_point needs s >= 1")
        edges = [
            (a,) + rest
            for a in range(s)
            for rest in combinations(range(s, n), r - 1)
        ]
        return Hypergraph(n, r, tuple(sorted(edges)))

    if kind == "g3":
        _window(l is not None and s < l, f"g3 needs s < l, got s={s}, l={l}")
        return star_cover(n, r, s)

    if kind == "g1":
        assert l is not None and s is not None
        c = choose(l - 1, 2)
        _window(
            2 + c <= s < r + c,
            f"g1 needs 2+C(l-1,2) <= s < r+C(l-1,2), got s={s} with l={l}, r={r}",
        )
        edges = set()
        for a in range(s):
            for rest in combinations(range(s, n), r - 1):
                edges.add(tuple(sorted((a,) + rest)))
        # plus edges through u=0 with at least s - C(l-1,2) other vertices of A
        lo = s - c
        for i in range(max(lo + 1, 2), r + 1):
            for inner in combinations(range(1, s), i - 1):
                for outer in combinations(range(s, n), r - i):
                    edges.add(tuple(sorted((0,) + inner + outer)))
        return Hypergraph(n, r, tuple(sorted(edges)))

    if kind == "g2":
        assert l is not None and s is not None
        t = derive_g2_t(l, s)
        parts = balanced_parts(s, l - t)
        edges = set()
        for a in range(s):
            for rest in combinations(range(s, n), r - 1):
                edges.add(tuple(sorted((a,) + rest)))
        for pi, pj in combinations(parts, 2):
            for u in pi:
                for v in pj:
                    for rest in combinations(range(s, n), r - 2):
                        edges.add(tuple(sorted((u, v) + rest)))
        return Hypergraph(n, r, tuple(sorted(edges)))

    if kind == "yzz":
        assert l is not None and s is not None
        _window(l >= 2, "yzz needs l >= 2")
        _window(r >= 2, "yzz needs r >= 2")
        _window(1 <= s, "yzz needs s >= 1")
        _window(
            n - s >= l - 1,
            f"yzz needs n-s >= l-1 parts to be nonempty, got n-s={n - s}, l-1={l - 1}",
        )
        base = complete_multipartite(n - s, l - 1, r - 1)
        edges = []
        for v0 in range(s):
            for e in base.edges:
                edges.append(tuple(sorted((v0,) + tuple(s + u for u in e))))
        return Hypergraph(n, r, tuple(sorted(edges)))

    raise AssertionError("unreachable")


RAINBOW_KINDS = ("identical_turan", "complete_plus_empty")


def generate_rainbow_layers(
    kind: str, n: int, r: int, l: int, k: int
) -> LayeredInstance:
    """Layered lower-bound instances for the rainbow problem: k identical
    copies of the balanced (l-1)-partite r-graph, or min(k, C(l,2)-1)
    complete layers with the rest empty."""
    kind = kind.replace("-", "_").lower()
    if kind not in RAINBOW_KINDS:
        raise ValidationError(f"unknown rainbow construction kind {kind!r}")
    if k < 1:
        raise ValidationError(f"need k >= 1, got k={k}")
    if kind == "identical_turan":
        layer = complete_multipartite(n, l - 1, r)
        return LayeredInstance(n, r, (layer,) * k)
    full = min(k, choose(l, 2) - 1)
    complete = complete_hypergraph(n, r)
    empty = Hypergraph(n, r, ())
    return LayeredInstance(n, r, (complete,) * full + (empty,) * (k - full))


def construction_count(kind: str, n: int, r: int, l: int | None, s: int | None) -> int:
    """Formula-side edge count for a construction, computed without building it."""
    kind = kind.replace("-", "_").lower()
    if kind == "turan_partite":
        assert l is not None
        return turan_partite_count(n, l, r)
    if kind == "star_cover" or kind == "g3":
        assert s is not None
        return choose(n, r) - choose(n - s, r)
    if kind == "one_point":
        assert s is not None
        return s * choose(n - s, r - 1)
    if kind == "g1":
        assert l is not None and s is not None
        c = choose(l - 1, 2)
        tail = sum(
            choose(s - 1, i - 1) * choose(n - s, r - i)
            for i in range(s - c + 1, r + 1)
        )
        return s * choose(n - s, r - 1) + tail
    if kind == "g2":
        assert l is not None and s is not None
        t = derive_g2_t(l, s)
        return s * choose(n - s, r - 1) + turan_partite_count(s, l - t, 2) * choose(
            n - s, r - 2
        )
    if kind == "yzz":
        assert l is not None and s is not None
        return s * turan_partite_count(n - s, l - 1, r - 1)
    raise ValidationError(f"unknown construction kind {kind!r}")

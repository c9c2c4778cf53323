"""Command-line front end.

Verbs: eval, gen, check, oracle, rainbow-oracle, report.  JSON goes to
stdout, a one-line human summary to stderr.  Exit codes: 0 success,
1 claim check failed, 2 usage error (including formula windows the theory
does not cover), 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from . import constructions as cons
from . import detectors as det
from . import hypergraph as hg
from . import search
from .errors import CapacityError, ValidationError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out_path and out_path != "-":
        with open(out_path, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def _read_input(path: str) -> dict:
    if path == "-":
        return json.loads(sys.stdin.read())
    with open(path) as f:
        return json.load(f)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _parse_forbid(values: list[str]) -> search.ForbiddenSpec:
    items = []
    for v in values:
        name, _, param = v.partition(":")
        name = name.replace("-", "_").lower()
        if not param:
            raise ValidationError(f"--forbid needs name:param, got {v!r}")
        p = int(param)
        if name == "expansion_clique":
            items.append(search.expansion_clique(p))
        elif name == "matching":
            items.append(search.matching(p))
        elif name == "covering_clique":
            items.append(search.covering_clique(p))
        else:
            raise ValidationError(f"unknown forbidden structure {name!r}")
    return search.ForbiddenSpec(tuple(items))


def _cmd_eval(args) -> int:
    formula = args.formula.replace("-", "_").lower()
    if formula == "turan_partite":
        value = cons.turan_partite_count(args.n, args.l, args.r)
        _emit({"value": value, "case": "turan-partite"}, args.out)
        return EXIT_OK
    if formula == "g_count":
        value = cons.alon_frankl_g_count(args.n, args.l, args.s)
        _emit({"value": value, "case": "g-count"}, args.out)
        return EXIT_OK
    if formula == "emc":
        res = cons.emc_value(args.n, args.r, args.s)
    elif formula == "small_s":
        res = cons.small_s_value(args.n, args.r, args.l, args.s)
    elif formula == "large_s":
        res = cons.large_s_value(args.n, args.r, args.l, args.s)
    elif formula == "rainbow":
        res = cons.rainbow_value(args.n, args.r, args.l, args.k)
    elif formula == "gtz":
        if not args.infile:
            raise ValidationError("--formula gtz needs --in with the forbidden r-graph")
        H = hg.from_dict(_read_input(args.infile))
        res = cons.gtz_value(args.n, args.r, args.s, H)
    else:
        raise ValidationError(f"unknown formula {args.formula!r}")
    _emit(res.to_dict(), args.out)
    if not res.covered:
        _say(f"window not covered: {res.note}")
        return EXIT_USAGE
    _say(f"{formula} = {res.value} (case {res.case})")
    return EXIT_OK


def _generate(args):
    kind = args.kind.replace("-", "_").lower()
    if kind in cons.RAINBOW_KINDS:
        return cons.generate_rainbow_layers(kind, args.n, args.r, args.l, args.k)
    return cons.generate_construction(kind, args.n, args.r, l=args.l, s=args.s)


def _cmd_gen(args) -> int:
    obj = _generate(args)
    _emit(obj.to_dict(), args.out)
    if isinstance(obj, det.LayeredInstance):
        _say(f"{args.kind}: k={obj.k} layers, total size {obj.total_size()}")
    else:
        _say(f"{args.kind}: n={obj.n}, r={obj.r}, {obj.num_edges} edges")
    return EXIT_OK


def _run_checks(obj, forbid: list[str]) -> tuple[list[dict], bool]:
    checks = []
    all_ok = True
    for item in forbid:
        name, _, param = item.partition(":")
        name = name.replace("-", "_").lower()
        p = int(param) if param else 0
        witness = None
        if isinstance(obj, det.LayeredInstance):
            if name == "rainbow_expansion_clique":
                found = det.contains_rainbow_expansion_clique(obj, p)
            elif name == "super_rainbow":
                found = det.contains_super_rainbow(obj, p)
            else:
                raise ValidationError(
                    f"{name!r} does not apply to layered instances"
                )
            ok = found is None
            witness = found.to_dict() if found else None
        elif name == "expansion_clique":
            found = det.contains_expansion_clique(obj, p)
            ok = found is None
            witness = found.to_dict() if found else None
        elif name == "matching":
            ok = not hg.has_matching(obj, p)
        elif name == "covering_clique":
            found = det.contains_covering_clique(obj, p)
            ok = found is None
            witness = found.to_dict() if found else None
        else:
            raise ValidationError(f"unknown forbidden structure {name!r}")
        checks.append({"forbid": item, "passed": ok, "witness": witness})
        all_ok = all_ok and ok
    return checks, all_ok


def _cmd_check(args) -> int:
    if args.construction:
        args.kind = args.construction
        obj = _generate(args)
    elif args.infile:
        data = _read_input(args.infile)
        obj = (
            det.layered_from_dict(data)
            if "layers" in data
            else hg.from_dict(data)
        )
    else:
        raise ValidationError("check needs --in or --construction")
    checks, all_ok = _run_checks(obj, args.forbid)
    _emit({"checks": checks, "all_passed": all_ok}, args.out)
    _say("all checks passed" if all_ok else "CHECK FAILED")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _cmd_oracle(args) -> int:
    spec = _parse_forbid(args.forbid)
    outcome = search.max_edges_avoiding(
        args.n, args.r, spec, budget=args.budget
    )
    _emit(outcome.to_dict(), args.out)
    _say(
        f"ex_{args.r}({args.n}, {{{', '.join(i.label() for i in spec.items)}}}) "
        f"= {outcome.value}"
        + ("" if outcome.proven_optimal else " (budget exhausted, not proven)")
    )
    return EXIT_OK


def _cmd_rainbow_oracle(args) -> int:
    outcome = search.rainbow_max_sum(
        args.n, args.r, args.k, args.l, budget=args.budget
    )
    _emit(outcome.to_dict(), args.out)
    _say(
        f"rainbow max sum (n={args.n}, r={args.r}, k={args.k}, l={args.l}) "
        f"= {outcome.value}"
        + ("" if outcome.proven_optimal else " (budget exhausted, not proven)")
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# report


def _construction_for_case(case: str) -> str | None:
    return {
        "v": "g3",
        "iv": "g2",
        "iii": "g1",
        "ii": "one_point",
        "i": "one_point",
    }.get(case)


def report_row(n: int, r: int, l: int, s: int, with_oracle: bool) -> dict:
    """One grid point: formula values, matching construction, freeness
    flags, optional oracle value, and a three-valued agreement class."""
    row: dict = {"params": {"n": n, "r": r, "l": l, "s": s}}
    small = cons.small_s_value(n, r, l, s)
    large = cons.large_s_value(n, r, l, s)
    row["small_s"] = small.to_dict()
    row["large_s"] = large.to_dict()

    construction = None
    kind = _construction_for_case(small.case)
    if kind is not None:
        if kind == "one_point":
            size = s if small.case == "ii" else (l * (l - 1)) // 2
            params: dict = {"s": size, "l": None}
        else:
            params = {"s": s, "l": l}
        try:
            G = cons.generate_construction(kind, n, r, **params)
            construction = {"kind": kind, "count": G.num_edges}
            free_exp = det.contains_expansion_clique(G, l + 1) is None
            free_match = not hg.has_matching(G, s + 1)
            row["freeness"] = {
                "expansion_free": free_exp,
                "matching_bounded": free_match,
            }
            construction["matches_formula"] = (
                small.covered and G.num_edges == small.value
            )
        except (ValidationError, CapacityError) as exc:
            row["construction_error"] = str(exc)
    row["construction"] = construction

    if with_oracle:
        try:
            spec = search.ForbiddenSpec(
                (search.expansion_clique(l + 1), search.matching(s + 1))
            )
            outcome = search.max_edges_avoiding(n, r, spec)
            row["oracle"] = {
                "value": outcome.value,
                "proven_optimal": outcome.proven_optimal,
                "nodes": outcome.nodes_explored,
            }
        except CapacityError as exc:
            row["oracle"] = {"error": str(exc)}

    oracle_value = row.get("oracle", {}).get("value")
    if not small.covered:
        row["agreement"] = "not-covered"
    elif oracle_value is None:
        row["agreement"] = "match" if construction is None or construction[
            "matches_formula"
        ] else "gap-recorded"
    elif oracle_value == small.value:
        row["agreement"] = "match"
        row["gap"] = 0
    else:
        row["agreement"] = "gap-recorded"
        row["gap"] = oracle_value - small.value
    return row


def run_report(
    r: int,
    l: int,
    n_range: tuple[int, int],
    s_range: tuple[int, int],
    with_oracle: bool,
    jobs: int = 1,
) -> dict:
    grid = [
        (n, r, l, s)
        for n in range(n_range[0], n_range[1] + 1)
        for s in range(s_range[0], s_range[1] + 1)
    ]
    start = time.monotonic()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(lambda p: report_row(*p, with_oracle), grid)
            )
    else:
        rows = [report_row(*p, with_oracle) for p in grid]
    elapsed = time.monotonic() - start
    summary = {
        "rows": len(rows),
        "match": sum(1 for x in rows if x["agreement"] == "match"),
        "gap_recorded": sum(1 for x in rows if x["agreement"] == "gap-recorded"),
        "not_covered": sum(1 for x in rows if x["agreement"] == "not-covered"),
        "freeness_failures": sum(
            1
            for x in rows
            if x.get("freeness") and not all(x["freeness"].values())
        ),
    }
    return {
        "meta": {
            "toolkit_version": __version__,
            "grid": {
                "r": r,
                "l": l,
                "n": list(n_range),
                "s": list(s_range),
                "oracle": with_oracle,
            },
            "wall_time_s": round(elapsed, 3),
        },
        "rows": rows,
        "summary": summary,
    }


def _cmd_report(args) -> int:
    payload = run_report(
        args.r,
        args.l,
        (args.n_min, args.n_max),
        (args.s_min, args.s_max),
        args.with_oracle,
        jobs=args.jobs,
    )
    _emit(payload, args.out)
    s = payload["summary"]
    _say(
        f"{s['rows']} rows: {s['match']} match, {s['gap_recorded']} gap-recorded, "
        f"{s['not_covered']} not-covered, {s['freeness_failures']} freeness failures"
    )
    return EXIT_CHECK_FAILED if s["freeness_failures"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperturan",
        description="exact desk-scale toolkit for clique-expansion extremal "
        "problems on uniform hypergraphs",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, flags=("n", "r", "l", "s", "k")):
        if "n" in flags:
            sp.add_argument("--n", type=int, default=0)
        if "r" in flags:
            sp.add_argument("--r", type=int, default=3)
        if "l" in flags:
            sp.add_argument("--l", type=int, default=None)
        if "s" in flags:
            sp.add_argument("--s", type=int, default=None)
        if "k" in flags:
            sp.add_argument("--k", type=int, default=None)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("eval", help="evaluate a closed-form extremal value")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--in", dest="infile", default=None)
    common(sp)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("gen", help="generate a construction as JSON")
    sp.add_argument("--kind", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("check", help="run freeness detectors against an instance")
    sp.add_argument("--in", dest="infile", default=None)
    sp.add_argument("--construction", default=None)
    sp.add_argument("--forbid", action="append", default=[], metavar="NAME:PARAM")
    common(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("oracle", help="exact maximum edges avoiding a spec")
    sp.add_argument("--forbid", action="append", default=[], metavar="NAME:PARAM")
    sp.add_argument("--budget", type=int, default=None)
    common(sp, flags=("n", "r"))
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("rainbow-oracle", help="exact maximum layered total")
    sp.add_argument("--budget", type=int, default=None)
    common(sp)
    sp.set_defaults(func=_cmd_rainbow_oracle)

    sp = sub.add_parser("report", help="grid report: formulas vs constructions vs oracle")
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--l", type=int, default=3)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--s-min", type=int, default=0)
    sp.add_argument("--s-max", type=int, default=2)
    sp.add_argument("--with-oracle", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_report)
    return p


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValidationError as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE
    except CapacityError as exc:
        _say(f"capacity error: {exc}")
        return EXIT_CAPACITY


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

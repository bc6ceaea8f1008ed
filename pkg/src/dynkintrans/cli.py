"""Command-line front end: catalogs, membership checks, single transformations.

Exit codes: 0 success (or membership yes), 1 membership no or failed
verification, 2 usage or parse errors.  All text output is UTF-8,
line-oriented and sorted, so runs diff cleanly.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import (
    CACHE_ENV_VAR,
    QueryNotADE,
    SINGULARITY_CLASSES,
    build_catalog,
    catalog_to_json,
    default_cache_dir,
    milnor_bound_check,
    membership,
    singularity_class,
)
from .graphs import (
    DynkinGraph,
    ParseError,
    canonical_name,
    classify,
    extend,
    gram,
    parse_name,
    realize,
)
from .lattice import determinant, root_count
from .transforms import (
    ElementaryChoice,
    TransformStep,
    elementary_all,
    tie_all,
)

USAGE_ERROR = 2


def _display_name(name: str) -> str:
    return name if name else "(empty)"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_graph_arg(text: str) -> DynkinGraph:
    try:
        return parse_name(text)
    except ParseError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _parse_class_arg(symbol: str):
    try:
        return singularity_class(symbol)
    except KeyError as exc:
        raise SystemExit(_usage_error(exc.args[0]))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _cache_kwargs(args) -> dict:
    kwargs = {"cache": not args.no_cache}
    if args.cache_dir:
        kwargs["cache_dir"] = Path(args.cache_dir)
    return kwargs


def _cmd_catalog(args) -> int:
    cls = _parse_class_arg(args.symbol)
    catalog = build_catalog(cls, **_cache_kwargs(args))
    if args.json:
        text = catalog_to_json(catalog)
    else:
        lines = [_display_name(name) for name in catalog.names()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _describe_step(step: TransformStep) -> str:
    ext = extend(step.input)
    ids = [v.id for v in ext.base.vertices]

    def show(indices) -> str:
        return "{" + ", ".join(ids[i] for i in indices) + "}"

    choice = step.choice
    if isinstance(choice, ElementaryChoice):
        detail = f"remove {show(choice.removed)}"
    else:
        detail = f"A = {show(choice.a)}, B = {show(choice.b)}"
    return (
        f"{step.kind} on {_display_name(step.input.name)}: {detail}"
        f" -> {_display_name(step.output.name)}"
    )


def _cmd_check(args) -> int:
    cls = _parse_class_arg(args.symbol)
    g = _parse_graph_arg(args.graph)
    try:
        witness = membership(cls, g, **_cache_kwargs(args))
    except QueryNotADE as exc:
        return _usage_error(str(exc))
    if witness is None:
        print(f"no: {_display_name(g.name)} is not reachable from {cls.symbol}")
        return 1
    print(f"yes: {_display_name(g.name)} is reachable from {cls.symbol} ({cls.basic.name})")
    for k, step in enumerate(witness, start=1):
        print(f"  step {k}: {_describe_step(step)}")
    return 0


def _cmd_transform(args) -> int:
    g = _parse_graph_arg(args.graph)
    results = elementary_all(g) if args.op == "elementary" else tie_all(g)
    if args.json:
        payload = {
            "input": g.name,
            "op": args.op,
            "results": [
                {
                    "name": out.name,
                    "choice": (
                        {"removed": list(choice.removed)}
                        if isinstance(choice, ElementaryChoice)
                        else {"a": list(choice.a), "b": list(choice.b)}
                    ),
                }
                for out, choice in results
            ],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(_display_name(out.name) for out, _ in results) + "\n"
    _emit(text, args.out)
    return 0


def _verify_checks(full: bool, cache_kwargs: dict):
    """Yield (name, ok, detail) tuples for the regression suite."""
    table = {
        "E12": ("E8", 12), "Z11": ("E7", 11), "Q10": ("E6", 10),
        "E13": ("E8+BC1", 13), "Z12": ("E7+BC1", 12), "Q11": ("E6+BC1", 11),
        "E14": ("E8+G2", 14), "Z13": ("E7+G2", 13), "Q12": ("E6+G2", 12),
    }
    ok = all(
        SINGULARITY_CLASSES[s].basic.name == basic
        and SINGULARITY_CLASSES[s].milnor == mu
        for s, (basic, mu) in table.items()
    ) and set(SINGULARITY_CLASSES) == set(table)
    yield "basic-graph-table", ok, "nine classes, basic graphs and Milnor numbers"

    from .graphs import A, BC1, D, E, G1, G2, check_extension_identity

    try:
        for ct in (A(1), A(5), D(4), D(7), E(6), E(7), E(8), G2, G1, BC1):
            check_extension_identity(ct)
        yield "extension-coefficients", True, "added vertex realizes minus the maximal root"
    except AssertionError as exc:
        yield "extension-coefficients", False, str(exc)

    sample = [parse_name(s) for s in ("A5", "D6", "E8", "E7+G2", "BC1+A2", "G1+A1")]
    ok = all(classify(realize(g)) == g for g in sample)
    ok = ok and all(parse_name(canonical_name(g)) == g for g in sample)
    yield "recognition-round-trip", ok, "classify(realize(g)) == g on sample graphs"

    dets = {
        "A4": Fraction(5), "D5": Fraction(4),
        "E6": Fraction(3), "E7": Fraction(2), "E8": Fraction(1),
    }
    ok = all(determinant(gram(realize(parse_name(k)))) == v for k, v in dets.items())
    yield "determinant-values", ok, "root lattice determinants"

    counts = {"A2": 6, "A3": 12, "D4": 24, "E6": 72}
    ok = all(root_count(parse_name(k)) == v for k, v in counts.items())
    yield "root-counts", ok, "norm-2 vector counts by complete enumeration"

    e7g2, e8g2 = parse_name("E7+G2"), parse_name("E8+G2")
    tie1 = {out.name for out, _ in tie_all(e7g2)}
    tie2 = {out.name for out, _ in tie_all(e8g2)}
    elem2 = {out.name for out, _ in elementary_all(e8g2)}
    ok = "E8+G2" in tie1 and "A7+A4" in tie2 and "D8+A2" in elem2
    yield "worked-example-chain", ok, "E7+G2 -tie-> E8+G2 -tie-> A7+A4, -elem-> D8+A2"

    symbols = list(SINGULARITY_CLASSES) if full else ["Z13"]
    for symbol in symbols:
        catalog = build_catalog(symbol, **cache_kwargs)
        report = milnor_bound_check(catalog)
        ok = report.max_vertices <= report.bound
        yield (
            f"vertex-bound-{symbol}",
            ok,
            f"{len(catalog)} members, max {report.max_vertices} <= {report.bound} vertices",
        )
        replayed = all(
            m.witness[0].replay() == m.witness[0].output
            and m.witness[1].replay() == m.graph
            and m.witness[0].output == m.witness[1].input
            for m in catalog.members
        )
        yield f"witness-replay-{symbol}", replayed, "every stored witness replays"
        again = catalog_to_json(catalog)
        ok = again == catalog_to_json(build_catalog(symbol, **cache_kwargs))
        yield f"serialization-stable-{symbol}", ok, "byte-identical JSON"

    z13 = build_catalog("Z13", **cache_kwargs)
    ok = z13.get("A7+A4") is not None and z13.get("D8+A2") is not None
    yield "worked-example-membership", ok, "A7+A4 and D8+A2 reachable from Z13"


def _cmd_verify(args) -> int:
    failures = 0
    checks = _verify_checks(args.full, _cache_kwargs(args))
    while True:
        try:
            name, ok, detail = next(checks)
        except StopIteration:
            break
        except Exception as exc:  # a crashed check is a failed check
            print(f"FAIL verify-crashed: {type(exc).__name__}: {exc}")
            failures += 1
            break
        status = "ok  " if ok else "FAIL"
        print(f"{status} {name}: {detail}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynkintrans",
        description=(
            "Dynkin-graph transformation catalogs for the nine E/Z/Q "
            "triangle singularity classes"
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cache_flags(p) -> None:
        p.add_argument("--no-cache", action="store_true", help="compute without the disk cache")
        p.add_argument(
            "--cache-dir",
            default=None,
            help=f"cache directory (default: ${CACHE_ENV_VAR} or {default_cache_dir()})",
        )

    p = sub.add_parser("catalog", help="write the full catalog of one class")
    p.add_argument("symbol", help="class symbol, e.g. Z13")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    add_cache_flags(p)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("check", help="membership query with a two-step witness")
    p.add_argument("symbol")
    p.add_argument("graph", help="graph name, e.g. A7+A4")
    add_cache_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("transform", help="apply one kind of transformation exhaustively")
    p.add_argument("graph")
    p.add_argument("--op", choices=("elementary", "tie"), required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("verify", help="run the regression suite")
    p.add_argument("--full", action="store_true", help="verify all nine classes")
    add_cache_flags(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else USAGE_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

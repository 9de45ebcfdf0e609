"""The `qgr` command-line tool.

Batch front end over the library: expression normalization, minors, relation
discovery, Maya-diagram utilities, ladder projections, the check suites, and
a small report generator.  Exit codes: 0 pass, 1 a check failed, 2 usage or
parse error, 3 size cap exceeded (override with --force).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from .scalars import Q
from .qmatrix import LevelIndex, NCPoly, level_project_E, render_word
from .qsl import (
    det_centrality_items,
    hopf_check,
    phi_project,
    phi_square_items,
    quantum_minor,
)
from .grassmann import (
    MinorExpr,
    e_project,
    graded_dimension,
    r_embed,
    relation_basis,
)
from .limits import (
    LimitElement,
    density_approx,
    parse_maya,
    maya_from_rows,
    maya_truncate,
    random_diagram,
    rho_project,
    tower_compat_items,
    tower_from_finite,
)
from .coact import (
    cauchy_binet_items,
    coaction_axiom_items,
    coaction_square_items,
    coinvariant_basis,
    is_coinvariant,
)
from .parser import ParseError, parse_expr
from .result import CheckItem, Report


class UsageError(Exception):
    pass


class SizeCapError(Exception):
    pass


DEFAULT_CAPS = {"total": 5, "degree": 3}


# ---------------------------------------------------------------------------
# small plumbing


def parse_level(text: str, rect: bool = False) -> LevelIndex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"level must be M,N, got {text!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"level must be two integers, got {text!r}")
    try:
        return LevelIndex(m, n, rect=rect)
    except ValueError as err:
        raise UsageError(str(err))


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}")


def load_config(path: str) -> dict:
    """Flat key = value reader with [section] prefixes; ints, bools, strings."""
    data: dict[str, object] = {}
    section = ""
    try:
        lines = open(path).read().splitlines()
    except OSError as err:
        raise UsageError(f"cannot read config: {err}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip() + "."
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip()
        if value.startswith('"') and value.endswith('"') and len(value) >= 2:
            data[section + key] = value[1:-1]
        elif value in ("true", "false"):
            data[section + key] = value == "true"
        else:
            try:
                data[section + key] = int(value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: unsupported value {value!r}")
    return data


def resolve_caps(args) -> dict:
    caps = dict(DEFAULT_CAPS)
    if getattr(args, "config", None):
        cfg = load_config(args.config)
        for key in caps:
            for name in (f"caps.{key}", key):
                if name in cfg:
                    if not isinstance(cfg[name], int):
                        raise UsageError(f"config cap {name} must be an integer")
                    caps[key] = cfg[name]
                    break
    return caps


def guard_level(level: LevelIndex, caps: dict, force: bool) -> None:
    total = level.m + level.n
    if total > caps["total"] and not force:
        raise SizeCapError(
            f"level {level} has total size {total} > cap {caps['total']}; "
            "pass --force to override"
        )


def guard_degree(degree: int, caps: dict, force: bool) -> None:
    if degree > caps["degree"] and not force:
        raise SizeCapError(
            f"degree {degree} > cap {caps['degree']}; pass --force to override"
        )


def emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# value rendering, including the q = 1 specialization


def _q1_pairs(x) -> list[tuple[Fraction, str]]:
    out = []
    for w, c in x.terms_sorted():
        word = render_word(w) if isinstance(x, NCPoly) else w.render()
        out.append((c.specialize(Fraction(1)), word or "1"))
    return out


def _join_q1(pairs: list[tuple[Fraction, str]]) -> str:
    pairs = [(c, w) for c, w in pairs if c]
    if not pairs:
        return "0"
    parts = []
    for idx, (c, w) in enumerate(pairs):
        mag = abs(c)
        if w == "1":
            body = str(mag)
        elif mag == 1:
            body = w
        else:
            body = f"{mag}*{w}"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def render_value(x, q1: bool) -> str:
    if q1:
        return _join_q1(_q1_pairs(x))
    return x.render()


def value_json(x, q1: bool) -> dict:
    if not q1:
        return x.to_json()
    if isinstance(x, NCPoly):
        return {
            "level": x.level.to_json(),
            "q": 1,
            "terms": [
                {"coeff": str(c.specialize(Fraction(1))), "word": [list(l) for l in w]}
                for w, c in x.terms_sorted()
            ],
        }
    return {
        "level": [x.level.m, x.level.n],
        "q": 1,
        "terms": [
            {
                "coeff": str(c.specialize(Fraction(1))),
                "factors": [list(rows) for rows in w.factors],
            }
            for w, c in x.terms_sorted()
        ],
    }


def finish_report(args, command: str, items: list[CheckItem], start: float) -> int:
    rep = Report(command, items, time.perf_counter() - start)
    emit(args, rep.render(args.format))
    return 0 if rep.all_passed() else 1


# ---------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> int:
    caps = resolve_caps(args)
    level = parse_level(args.level)
    guard_level(level, caps, args.force)
    x = parse_expr(args.expr, level)
    if args.format == "json":
        emit(args, json.dumps(value_json(x, args.q1), indent=2))
    else:
        emit(args, render_value(x, args.q1))
    return 0


def cmd_minor(args) -> int:
    caps = resolve_caps(args)
    level = parse_level(args.level)
    guard_level(level, caps, args.force)
    rows = parse_int_list(args.rows)
    cols = parse_int_list(args.cols) if args.cols else tuple(range(-level.m, 0))
    x = quantum_minor(level, rows, cols)
    if args.format == "json":
        emit(args, json.dumps(value_json(x, args.q1), indent=2))
    else:
        emit(args, render_value(x, args.q1))
    return 0


def cmd_relations(args) -> int:
    caps = resolve_caps(args)
    level = parse_level(args.level)
    guard_level(level, caps, args.force)
    guard_degree(args.degree, caps, args.force)
    rels = relation_basis(level, args.degree)
    if args.format == "json":
        payload = {
            "level": [level.m, level.n],
            "degree": args.degree,
            "count": len(rels),
            "relations": [],
        }
        for rel in rels:
            if args.q1:
                payload["relations"].append(
                    {
                        "degree": rel.degree,
                        "terms": [
                            {
                                "coeff": str(c.specialize(Fraction(1))),
                                "factors": [list(r) for r in w.factors],
                            }
                            for w, c in zip(rel.support, rel.coeffs)
                        ],
                    }
                )
            else:
                payload["relations"].append(rel.to_json())
        emit(args, json.dumps(payload, indent=2))
    else:
        lines = [f"{len(rels)} relations at level {level}, degree {args.degree}"]
        for rel in rels:
            lines.append("  " + render_value(rel.as_expr(), args.q1))
        emit(args, "\n".join(lines))
    return 0


def cmd_maya(args) -> int:
    ops = args.operands
    if args.action == "order":
        if len(ops) != 1:
            raise UsageError("maya order takes one diagram argument")
        d = parse_maya(ops[0])
        payload = {"diagram": d.render(), "order": d.order}
        emit(args, json.dumps(payload) if args.format == "json" else str(d.order))
        return 0
    if args.action == "truncate":
        if len(ops) != 2:
            raise UsageError("maya truncate takes a diagram and a depth")
        d = parse_maya(ops[0])
        try:
            m = int(ops[1])
        except ValueError:
            raise UsageError(f"depth must be an integer, got {ops[1]!r}")
        entries = maya_truncate(d, m)
        if args.format == "json":
            emit(args, json.dumps({"diagram": d.render(), "m": m, "entries": list(entries)}))
        else:
            emit(args, ",".join(str(e) for e in entries))
        return 0
    if args.action == "from-rows":
        if len(ops) not in (1, 2):
            raise UsageError("maya from-rows takes a row list and an optional depth")
        rows = parse_int_list(ops[0])
        m = len(rows)
        if len(ops) == 2:
            try:
                m = int(ops[1])
            except ValueError:
                raise UsageError(f"depth must be an integer, got {ops[1]!r}")
        d = maya_from_rows(rows, m)
        payload = {"rows": list(rows), "m": m, "diagram": d.render(), "order": d.order}
        emit(args, json.dumps(payload) if args.format == "json" else d.render())
        return 0
    raise UsageError(f"unknown maya action {args.action!r}")


def cmd_project(args) -> int:
    caps = resolve_caps(args)
    to_level = parse_level(args.to)
    guard_level(to_level, caps, args.force)

    if args.map == "rho":
        d = parse_maya(args.expr)
        x = rho_project(LimitElement.generator(d), to_level)
        emit_value(args, x)
        return 0

    if not args.source:
        raise UsageError(f"project {args.map} needs --from M,N")
    from_level = parse_level(args.source)
    guard_level(from_level, caps, args.force)
    value = parse_expr(args.expr, from_level)

    if args.map in ("e", "r"):
        if isinstance(value, NCPoly):
            raise UsageError(f"project {args.map} acts on D[...] expressions")
        moved = e_project(value, to_level) if args.map == "e" else r_embed(value, to_level)
        emit_value(args, moved)
        return 0

    if isinstance(value, MinorExpr):
        from .grassmann import eval_embed

        value = eval_embed(value)
    if args.map == "E":
        emit_value(args, level_project_E(value, to_level))
    else:
        emit_value(args, phi_project(value, to_level))
    return 0


def emit_value(args, x) -> None:
    if args.format == "json":
        emit(args, json.dumps(value_json(x, args.q1), indent=2))
    else:
        emit(args, render_value(x, args.q1))


def _default_low(level: LevelIndex) -> LevelIndex:
    return LevelIndex(max(1, level.m - 1), max(1, level.n - 1))


def cmd_check(args) -> int:
    caps = resolve_caps(args)
    start = time.perf_counter()
    rng = random.Random(args.seed)

    if args.suite == "towers":
        items: list[CheckItem] = []
        pairs = [
            (LevelIndex(4, 5), LevelIndex(3, 4)),
            (LevelIndex(3, 4), LevelIndex(2, 3)),
            (LevelIndex(2, 3), LevelIndex(1, 2)),
        ]
        for idx in range(3):
            x = LimitElement.generator(random_diagram(rng, 4, -3)) + LimitElement.generator(
                random_diagram(rng, 4, -3)
            ).scale(Q)
            t = tower_from_finite(x)
            for item in tower_compat_items(t, pairs):
                items.append(
                    CheckItem(f"element {idx}: {item.name}", item.passed, item.witness)
                )
        return finish_report(args, "check towers", items, start)

    if not args.level:
        raise UsageError(f"check {args.suite} needs --level M,N")
    level = parse_level(args.level)
    guard_level(level, caps, args.force)

    if args.suite == "hopf":
        items = hopf_check(level) + det_centrality_items(level)
        return finish_report(args, f"check hopf {level}", items, start)

    if args.suite == "coaction":
        items = coaction_axiom_items(level, rng=rng, samples=4)
        items += cauchy_binet_items(level)
        return finish_report(args, f"check coaction {level}", items, start)

    if args.suite == "coinvariant":
        degree = args.degree if args.degree is not None else level.m
        guard_degree(degree, caps, args.force)
        basis = coinvariant_basis(level, degree)
        items = []
        if degree % level.m == 0:
            want = graded_dimension(level, degree // level.m)
            ok = len(basis) == want
            items.append(
                CheckItem(
                    f"dimension at degree {degree} is {want}",
                    ok,
                    "" if ok else f"got {len(basis)}",
                )
            )
        else:
            items.append(
                CheckItem(
                    f"no coinvariants at degree {degree}",
                    not basis,
                    "" if not basis else f"got {len(basis)}",
                )
            )
        bad = None
        for x in basis:
            if not is_coinvariant(x):
                bad = render_value(x, False)
                break
        items.append(CheckItem("basis elements are coinvariant", bad is None, bad or ""))
        return finish_report(args, f"check coinvariant {level}", items, start)

    if args.suite == "squares":
        low = parse_level(args.to) if args.to else _default_low(level)
        guard_level(low, caps, args.force)
        items = phi_square_items(level, low) + coaction_square_items(level, low)
        return finish_report(args, f"check squares {level}->{low}", items, start)

    raise UsageError(f"unknown check suite {args.suite!r}")


def cmd_coinvariants(args) -> int:
    caps = resolve_caps(args)
    level = parse_level(args.level)
    guard_level(level, caps, args.force)
    guard_degree(args.degree, caps, args.force)
    basis = coinvariant_basis(level, args.degree)
    if args.format == "json":
        payload = {
            "level": [level.m, level.n],
            "degree": args.degree,
            "columns": "rect",
            "dimension": len(basis),
            "basis": [value_json(x, args.q1) for x in basis],
        }
        emit(args, json.dumps(payload, indent=2))
    else:
        lines = [
            f"coinvariant dimension {len(basis)} at level {level}, degree {args.degree}"
        ]
        for x in basis:
            lines.append("  " + render_value(x, args.q1))
        emit(args, "\n".join(lines))
    return 0


def cmd_approx(args) -> int:
    caps = resolve_caps(args)
    k = args.k
    if k < 1:
        raise UsageError("--k must be at least 1")
    level = LevelIndex(k, k)
    guard_level(level, caps, args.force)
    start = time.perf_counter()
    rng = random.Random(args.seed)
    x = LimitElement.generator(random_diagram(rng, k + 1, 1 - k))
    x = x + LimitElement.generator(random_diagram(rng, k + 1, 1 - k)).scale(Q)
    t = tower_from_finite(x)
    approx = density_approx(t, k)
    resid = rho_project(approx, level) - t.slice(level)
    item = CheckItem(
        f"density approximation re-projects at {level}",
        resid.is_mapping_zero(),
        "" if resid.is_mapping_zero() else resid.render(),
    )
    if args.format == "text":
        emit(
            args,
            "\n".join(
                [
                    f"element: {x.render()}",
                    f"approximation at k={k}: {approx.render()}",
                    item.render_text(),
                ]
            ),
        )
        return 0 if item.passed else 1
    rep = Report(f"approx k={k}", [item], time.perf_counter() - start)
    payload = rep.to_json()
    payload["element"] = x.render()
    payload["approximation"] = approx.render()
    emit(args, json.dumps(payload, indent=2))
    return 0 if item.passed else 1


def cmd_report(args) -> int:
    caps = resolve_caps(args)
    level = parse_level(args.level)
    guard_level(level, caps, args.force)
    guard_degree(args.degree, caps, args.force)
    from .figures import dimension_figure, relation_figure, write_table

    out_dir = args.out or "qgr-report"
    os.makedirs(out_dir, exist_ok=True)
    degrees = list(range(args.degree + 1))
    ladder = [LevelIndex(i, level.n - level.m + i) for i in range(1, level.m + 1)]
    series = {str(lv): [graded_dimension(lv, d) for d in degrees] for lv in ladder}
    rel_counts = [len(relation_basis(level, d)) for d in degrees]

    csv_path = os.path.join(out_dir, "dimensions.csv")
    header = ["degree"] + [str(lv) for lv in ladder] + ["relations"]
    rows = [
        [d] + [series[str(lv)][d] for lv in ladder] + [rel_counts[d]] for d in degrees
    ]
    write_table(csv_path, header, rows)

    dim_png = os.path.join(out_dir, "dimensions.png")
    dimension_figure(dim_png, degrees, series)
    rel_png = os.path.join(out_dir, "relations.png")
    relation_figure(rel_png, degrees, rel_counts, series[str(level)])

    summary = {
        "level": [level.m, level.n],
        "degrees": degrees,
        "dimensions": series,
        "relations": rel_counts,
        "files": [csv_path, dim_png, rel_png],
    }
    json_path = os.path.join(out_dir, "report.json")
    with open(json_path, "w") as fh:
        json.dump(summary, fh, indent=2)

    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        print(f"report for level {level} up to degree {args.degree}")
        for path in summary["files"] + [json_path]:
            print(f"  wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# argument wiring


def _add_common(sp, level_required=False, level_default=None, degree=None):
    sp.add_argument("--level", required=level_required, default=level_default)
    if degree is not None:
        required, default = degree
        sp.add_argument("--degree", type=int, required=required, default=default)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out")
    sp.add_argument("--config")
    sp.add_argument("--force", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--q1", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgr",
        description="Exact symbolic tool for quantum matrix levels, minors, and limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("normalize", help="normalize an expression at a level")
    sp.add_argument("expr")
    _add_common(sp, level_required=True)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("minor", help="expand a quantum minor")
    sp.add_argument("--rows", required=True)
    sp.add_argument("--cols")
    _add_common(sp, level_required=True)
    sp.set_defaults(func=cmd_minor)

    sp = sub.add_parser("relations", help="kernel basis of the evaluation map")
    _add_common(sp, level_required=True, degree=(True, None))
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("maya", help="Maya diagram utilities")
    sp.add_argument("action", choices=("order", "truncate", "from-rows"))
    sp.add_argument("operands", nargs="*")
    _add_common(sp)
    sp.set_defaults(func=cmd_maya)

    sp = sub.add_parser("project", help="ladder and window maps")
    sp.add_argument("map", choices=("e", "r", "E", "phi", "rho"))
    sp.add_argument("expr")
    sp.add_argument("--from", dest="source")
    sp.add_argument("--to", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("check", help="run a verification suite")
    sp.add_argument("suite", choices=("hopf", "coaction", "coinvariant", "squares", "towers"))
    sp.add_argument("--to")
    _add_common(sp, degree=(False, None))
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("coinvariants", help="basis of the coinvariant subspace")
    sp.add_argument("--columns", choices=("rect",), default="rect")
    _add_common(sp, level_required=True, degree=(True, None))
    sp.set_defaults(func=cmd_coinvariants)

    sp = sub.add_parser("approx", help="density approximation of a seeded tower")
    sp.add_argument("--k", type=int, default=2)
    _add_common(sp)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("report", help="tables and figures for a level ladder")
    _add_common(sp, level_required=True, degree=(False, 2))
    sp.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except SizeCapError as err:
        print(f"size cap: {err}", file=sys.stderr)
        return 3
    except (UsageError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

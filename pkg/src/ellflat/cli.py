"""Command-line front end (``ellflat``)."""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import collision as coll
from .errors import EllflatError
from .kodaira import (
    FiberType,
    classify_from_orders,
    coefficient_a,
    euler_characteristic,
    j_behavior_of,
    monodromy_of,
    pole_order,
)
from .logsurface import mmp_drive
from .monodromy import order_of
from .scenario import evaluate, load_scenario
from .weierstrass import DEFAULT_MAX_BLOWUPS, analyze, collision_report, discriminant, parse_weierstrass

GOOD_MARK, TERMINAL_MARK = "•", "∘"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _orders(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated orders o_a,o_b,o_d")
    out = []
    for p in parts:
        p = p.strip()
        if p in ("inf", "oo"):
            out.append(math.inf)
            continue
        if not p.isdigit():
            raise argparse.ArgumentTypeError(f"bad order {p!r}")
        out.append(int(p))
    return tuple(out)


def _positive(text: str) -> int:
    if not text.isdigit() or int(text) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellflat", description="Kodaira fibers, collisions and flat models of elliptic threefolds.")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", dest="json_sub", action="store_true", help="emit a JSON report")
        return sp

    sp = add("classify-fiber", "fiber type from vanishing orders, or the data of a type")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--orders", type=_orders, metavar="O_A,O_B,O_D")
    g.add_argument("--type", dest="type_name", metavar="NAME")

    sp = add("collide", "blow up the crossing of two fiber types")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--n1", type=_positive)
    sp.add_argument("--n2", type=_positive)
    sp.add_argument("--ngamma", type=_positive)

    sp = add("resolve", "resolve a collision by repeated blow-ups")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = add("tables", "regenerate the collision tables")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cor46", action="store_true", help="the two same-J collision tables")
    g.add_argument("--miranda3", action="store_true", help="the Miranda collision table")

    sp = add("weierstrass", "resolve the discriminant of y^2 = x^3 + a x + b")
    sp.add_argument("--a", required=True, metavar="EXPR")
    sp.add_argument("--b", required=True, metavar="EXPR")
    sp.add_argument("--max-blowups", type=int, default=DEFAULT_MAX_BLOWUPS)

    sp = add("scenario", "evaluate a JSON scenario file")
    sp.add_argument("file")
    return p


# individual commands ------------------------------------------------------


def _fiber(text: str) -> FiberType:
    return FiberType.parse(text)


def cmd_classify_fiber(args):
    if args.orders is not None:
        t = classify_from_orders(*args.orders)
        return {"orders": [o if o != math.inf else "inf" for o in args.orders], "fiber_type": str(t)}, str(t)
    t = _fiber(args.type_name)
    mat = monodromy_of(t)
    order = order_of(mat)
    data = {
        "fiber_type": str(t),
        "a": str(coefficient_a(t)),
        "euler": euler_characteristic(t),
        "monodromy": mat.to_list(),
        "monodromy_order": "inf" if order == math.inf else order,
        "j": str(j_behavior_of(t)),
        "pole_order": pole_order(t),
    }
    text = (
        f"{t}: a = {data['a']}, χ = {data['euler']}, monodromy {mat}, "
        f"order {data['monodromy_order']}, J: {data['j']}"
    )
    return data, text


def _collide_text(o: coll.CollisionOutcome) -> str:
    verdict = coll.Verdict.BAD if o.alpha >= 1 else coll.Verdict.GOOD
    return f"β = {o.beta}, Γ: {o.gamma_type}, α = {o.alpha}, δ = {o.delta}, verdict: {verdict.value}"


def cmd_collide(args):
    o = coll.collide(_fiber(args.left), _fiber(args.right), n_left=args.n1, n_right=args.n2, n_gamma=args.ngamma)
    verdict = coll.Verdict.BAD if o.alpha >= 1 else coll.Verdict.GOOD
    existence = coll.equidimensional_verdict(o)
    data = dict(o.to_dict(), verdict=verdict.value, log_extremal=coll.log_extremal_verdict(o),
                equidimensional=existence.value)
    text = _collide_text(o) + (
        f"\na(Γ) = {o.a_gamma}, J pole on Γ = {o.gamma_pole}, monodromy {o.gamma_monodromy}, "
        f"log-extremal: {str(data['log_extremal']).lower()}, equidimensional: {existence.value}"
    )
    return data, text


def cmd_resolve(args):
    tree = coll.resolve(_fiber(args.left), _fiber(args.right))
    text = tree.render() + f"\nblow-ups: {tree.blowup_count}, depth: {tree.depth}"
    return tree.to_dict(), text


def _cell_text(o: coll.CollisionOutcome, label: str | None = None) -> str:
    return f"{o.beta} ({label or o.gamma_type})"


def _grid(title, header, rows) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([title, fmt(header)] + [fmt(r) for r in rows])


def _axis_label(t: FiberType) -> str:
    return f"{coefficient_a(t)} ({t})"


_FIXED_NAMES = {str(t) for t in coll.COR46_J0[0] + coll.COR46_J1[0]}


def cmd_tables(args):
    if args.cor46:
        data, blocks = [], []
        for title, (rows, cols) in (("J = 1", coll.COR46_J1), ("J = 0", coll.COR46_J0)):
            grid = coll.cor46_table(rows, cols)
            data.append({
                "family": title,
                "rows": [str(r) for r in rows],
                "cols": [str(c) for c in cols],
                "cells": [[{"beta": str(o.beta), "gamma_type": str(o.gamma_type)} for o in line] for line in grid],
            })
            blocks.append(_grid(
                title,
                [""] + [_axis_label(c) for c in cols],
                [[_axis_label(r)] + [_cell_text(o) for o in line] for r, line in zip(rows, grid)],
            ))
        return {"tables": data}, "\n\n".join(blocks)

    cells = coll.miranda_cells()
    data, rows, cols = [], {}, {}
    for c in cells:
        mark = ""
        if c.verdict is coll.Verdict.GOOD:
            mark = GOOD_MARK
            # parametric row names are not type strings; those cells are never terminal
            if c.row in _FIXED_NAMES and c.col in _FIXED_NAMES:
                if coll.miranda_model_smoothness(c.row, c.col) is coll.Smoothness.TERMINAL_NOT_SMOOTH:
                    mark = TERMINAL_MARK
        data.append({
            "row": c.row, "col": c.col, "beta": str(c.outcome.beta), "gamma_type": c.label,
            "verdict": c.verdict.value,
            "marker": {GOOD_MARK: "good", TERMINAL_MARK: "good-terminal", "": "bad"}[mark],
        })
        # the two same-J blocks each have their own I0* column
        rows.setdefault((c.block, c.row), {})[(c.block, c.col)] = f"{mark} {c.label}" if mark else f"  {c.label}"
        cols.setdefault((c.block, c.col), None)
    header = [""] + [name for _, name in cols]
    grid = [[r] + [cells_.get(col, "") for col in cols] for (_, r), cells_ in rows.items()]
    legend = f"{GOOD_MARK} good, smooth Miranda model; {TERMINAL_MARK} good, terminal not smooth; unmarked: bad"
    return {"cells": data}, _grid("Miranda collision table", header, grid) + "\n" + legend


def cmd_weierstrass(args):
    a, b = parse_weierstrass(args.a, args.b)
    res = analyze(a, b, max_blowups=args.max_blowups)
    report = collision_report(res)
    data = res.to_dict()
    lines = [f"a = {a}", f"b = {b}", f"Δ = {discriminant(a, b)}", "divisors:"]
    for d in res.divisors:
        where = d.polynomial if d.polynomial else "exceptional"
        orders = ", ".join("inf" if o == math.inf else str(o) for o in (d.ord_a, d.ord_b, d.ord_delta))
        lines.append(f"  {d.name}: {where}; orders ({orders}); type {d.fiber_type}; Λ coefficient {d.lambda_coefficient}")
    lines.append(f"blow-ups: {res.blowups}")
    for st in res.steps:
        lines.append(
            f"  {st.index}. {st.exceptional} at {st.location}: pulled-back coefficient "
            f"{st.pulled_back_coefficient}, own coefficient {st.lambda_coefficient}, "
            f"pullback {'holds' if st.pullback_holds else 'fails'}; J-pole pullback "
            f"{'holds' if st.j_pole_pullback_holds else 'fails'}"
        )
    lines.append(f"collisions: {len(report)}")
    for c in report:
        count = f" [{c.point.count} points]" if c.point.count > 1 else ""
        body = _collide_text(c.outcome) if c.outcome else f"error: {c.error}"
        lines.append(f"  {c.point.left} x {c.point.right} ({c.left_type} x {c.right_type}){count}: {body}")
    lines.append(f"SNC: {str(res.snc).lower()}")
    surface, lam = res.surface()
    mmp = mmp_drive(surface, lam)
    data["mmp"] = {"contracted": mmp.contracted, "blocked": list(mmp.blocked), "status": mmp.status.value}
    lines.append(
        f"mmp: contracted [{', '.join(mmp.contracted)}], blocked [{', '.join(mmp.blocked)}], status {mmp.status.value}"
    )
    return data, "\n".join(lines)


def cmd_scenario(args):
    rep = evaluate(load_scenario(args.file))
    lines = [f"Λ = {rep.lam_curves}", f"Λ in basis = {rep.lam}"]
    for b in rep.blowdowns:
        lines.append(
            f"contract {b.exceptional}: (K + Λ).{b.exceptional} = {b.k_plus_lambda_dot_gamma}, "
            f"δ = {b.delta}, log-extremal: {str(b.log_extremal).lower()}, verdict: {b.verdict.value}"
        )
    m = rep.mmp
    lines.append(
        f"mmp: contracted [{', '.join(m.contracted)}], blocked [{', '.join(m.blocked)}], status {m.status.value}"
    )
    return rep.to_dict(), "\n".join(lines)


COMMANDS = {
    "classify-fiber": cmd_classify_fiber,
    "collide": cmd_collide,
    "resolve": cmd_resolve,
    "tables": cmd_tables,
    "weierstrass": cmd_weierstrass,
    "scenario": cmd_scenario,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    as_json = args.json or args.json_sub
    try:
        data, text = COMMANDS[args.command](args)
    except (EllflatError, OSError) as exc:
        name = type(exc).__name__
        if as_json:
            print(json.dumps({"error": name, "message": str(exc)}, indent=2, ensure_ascii=False))
        else:
            print(f"error: {name}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(data, indent=2, ensure_ascii=False) if as_json else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

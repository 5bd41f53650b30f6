"""Command-line front end.

Exit codes: 0 = everything verified, 2 = a conjecture counterexample was
found, 1 = execution error or failed check. Usage errors also exit 1 so
that 2 stays reserved for the one outcome CI must never misread.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import analysis, catalog, sol, suite
from .perm import CapExceededError, ParseError, parse_permutation


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _comma_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _comma_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in _comma_list(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--cap", type=int, default=None, help="element enumeration cap")
    p.add_argument("--workers", type=int, default=None, help="worker processes (0 = all cores)")
    p.add_argument("--seed", type=int, default=None, help="sampling seed, recorded in reports")
    p.add_argument("--format", choices=("text", "json", "csv"), default=None)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--config", default=None, help="JSON file with RunConfig fields")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grouplab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sol = sub.add_parser("sol", help="solubilizer of one element")
    p_sol.add_argument("--group", required=True, help="catalog name, e.g. S:7 or PGL2:7")
    pick = p_sol.add_mutually_exclusive_group(required=True)
    pick.add_argument("--element", help='cycle string, e.g. "(1,2)(3,4)"')
    pick.add_argument("--order", type=int, help="use a class representative of this order")
    _add_common(p_sol)

    p_t1 = sub.add_parser("table1", help="reproduce the 14-group trivial-Fitting table")
    _add_common(p_t1)

    p_scan = sub.add_parser("scan", help="conjecture falsification scan")
    p_scan.add_argument("--groups", type=_comma_list, default=None, help="comma-separated names")
    p_scan.add_argument("--orders", type=_comma_ints, default=None,
                        help="restrict to class representatives of these orders")
    _add_common(p_scan)

    p_suite = sub.add_parser("suite", help="full lemma/theorem regression battery")
    p_suite.add_argument("--groups", type=_comma_list, default=None)
    p_suite.add_argument("--orders", type=_comma_ints, default=None)
    p_suite.add_argument("--include-psl31", action="store_true", default=None,
                         help="add the degree-32 PSL(2,31) exploration")
    p_suite.add_argument("--product-powers", type=int, default=None, metavar="M",
                         help="check C_(2^m) x PGL(2,7) for m = 1..M (max 3)")
    _add_common(p_suite)

    p_cat = sub.add_parser("catalog", help="list and validate the group catalog")
    p_cat.add_argument("--include-psl31", action="store_true", default=None)
    _add_common(p_cat)
    return parser


def _load_config(args) -> suite.RunConfig:
    data: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    overrides = {
        "groups": getattr(args, "groups", None),
        "orders": getattr(args, "orders", None),
        "cap": args.cap,
        "workers": args.workers,
        "seed": args.seed,
        "format": args.format,
        "out": args.out,
        "include_psl31": getattr(args, "include_psl31", None),
        "product_powers": getattr(args, "product_powers", None),
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if data.get("orders") and "selector" not in data:
        data["selector"] = "orders"
    return suite.RunConfig.from_json(data)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _SolView:
    """Rendering adapter so a single-element query reuses render()."""

    def __init__(self, group: str, result: sol.SolResult, ell: sol.EllReport, seed: int):
        self.group = group
        self.result = result
        self.ell = ell
        self.seed = seed

    def to_json(self) -> dict:
        return {
            "schema": suite.SCHEMA,
            "kind": "sol",
            "seed": self.seed,
            "group": self.group,
            "result": self.result.to_json(),
            "ell": self.ell.to_json(),
            "meta": {"finished": datetime.now(timezone.utc).isoformat()},
        }


def _render_sol_text(view: _SolView) -> str:
    r = view.result
    lines = [
        f"group: {view.group} (order {r.ambient.order_factored})",
        f"element: {r.x.cycle_string()}  (order {r.x.order()})",
        f"|Sol| = {r.order}",
        f"subgroup: {'yes' if r.is_subgroup else 'no'}",
        f"structure: {r.structure.label if r.structure else '-'}",
        f"normalizer order: {r.normalizer_order}",
        f"centralizer order: {r.centralizer_order}",
        f"ell: {view.ell.ell if view.ell.ell is not None else '-'}"
        f"  dichotomy: {view.ell.dichotomy}",
    ]
    return "\n".join(lines) + "\n"


def _render_sol_csv(view: _SolView) -> str:
    r = view.result
    head = "group,representative,check,status,detail\n"
    detail = (
        f"sol_order={r.order.value};is_subgroup={r.is_subgroup}"
        f";structure={r.structure.label if r.structure else ''}"
        f";normalizer={r.normalizer_order.value};centralizer={r.centralizer_order.value}"
        f";ell={view.ell.ell};dichotomy={view.ell.dichotomy}"
    )
    return head + f'{view.group},"{r.x.cycle_string()}",sol,reported,{detail}\n'


def cmd_sol(args) -> int:
    config = _load_config(args)
    cap = config.cap
    G = catalog.build_named_group(args.group, cap)
    if args.element is not None:
        x = parse_permutation(args.element, G.degree)
        if not G.contains(x):
            print(f"error: element {args.element} is not in {args.group}", file=sys.stderr)
            return 1
    else:
        table = G.conjugacy_classes(cap)
        x = next(
            (c.representative for c in table.classes if c.element_order == args.order), None
        )
        if x is None:
            have = sorted({c.element_order for c in table.classes})
            print(
                f"error: no class representative of order {args.order} in {args.group}"
                f" (element orders: {have})",
                file=sys.stderr,
            )
            return 1
    result = sol.solubilizer(G, x, cap, workers=config.resolved_workers())
    ell = sol.ell_invariant(G, x, result, cap)
    view = _SolView(args.group, result, ell, config.seed)
    if config.format == "json":
        text = json.dumps(view.to_json(), indent=2, ensure_ascii=False) + "\n"
    elif config.format == "csv":
        text = _render_sol_csv(view)
    else:
        text = _render_sol_text(view)
    _emit(text, config.out)
    return 0


def cmd_table1(args) -> int:
    config = _load_config(args)
    report = suite.run_table1(config)
    _emit(suite.render(report, config.format), config.out)
    return 0 if report.all_ok else 1


def cmd_scan(args) -> int:
    config = _load_config(args)
    report = suite.run_conjecture_scan(config)
    _emit(suite.render(report, config.format), config.out)
    return 2 if report.counterexamples else 0


def cmd_suite(args) -> int:
    config = _load_config(args)
    report = suite.run_full_suite(config)
    _emit(suite.render(report, config.format), config.out)
    return 0 if report.all_passed else 1


class _CatalogView:
    def __init__(self, rows: list[dict]):
        self.rows = rows

    def to_json(self) -> dict:
        return {"schema": suite.SCHEMA, "kind": "catalog", "rows": self.rows}


def cmd_catalog(args) -> int:
    config = _load_config(args)
    names = list(catalog.TABLE1_NAMES)
    if config.include_psl31:
        names.append("PSL2:31")
    rows = []
    for name in names:
        G = catalog.build_named_group(name, config.cap)
        rows.append(
            {
                "group": name,
                "degree": G.degree,
                "order": G.order_factored.to_json(),
                "insoluble": not analysis.is_soluble(G),
                "fitting_order": analysis.fitting_subgroup(G, config.cap).order,
            }
        )
    view = _CatalogView(rows)
    if config.format == "json":
        text = json.dumps(view.to_json(), indent=2, ensure_ascii=False) + "\n"
    elif config.format == "csv":
        lines = ["group,representative,check,status,detail"]
        for r in rows:
            lines.append(
                f"{r['group']},,catalog_row,ok,"
                f"degree={r['degree']};order={r['order']['value']}"
                f";insoluble={r['insoluble']};fitting={r['fitting_order']}"
            )
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{'group':14s} {'degree':>6s} {'order':>8s} {'insoluble':>9s} {'|Fit|':>6s}"]
        for r in rows:
            lines.append(
                f"{r['group']:14s} {r['degree']:6d} {r['order']['value']:8d}"
                f" {str(r['insoluble']):>9s} {r['fitting_order']:6d}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, config.out)
    return 0


_COMMANDS = {
    "sol": cmd_sol,
    "table1": cmd_table1,
    "scan": cmd_scan,
    "suite": cmd_suite,
    "catalog": cmd_catalog,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, CapExceededError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

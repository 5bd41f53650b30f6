"""Batch runners: the 14-group table reproduction, the lemma/theorem
regression suite, and the conjecture falsification scan, with deterministic
JSON/CSV/text rendering.

Reports are deterministic for a fixed (config, seed): everything that varies
between runs (timestamps, wall times) lives under the "meta" key and nowhere
else.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import analysis, catalog, sol
from .perm import DEFAULT_CAP, FactoredInteger, PermGroup, parse_permutation, prime_power_base

SCHEMA = "grouplab-report/1"

_SELECTORS = ("all_class_reps", "orders", "explicit")
_FORMATS = ("text", "json", "csv")


def available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except (AttributeError, OSError):
        return os.cpu_count() or 1


@dataclass(frozen=True)
class RunConfig:
    groups: tuple[str, ...] = catalog.TABLE1_NAMES
    selector: str = "all_class_reps"
    orders: tuple[int, ...] = ()
    elements: tuple[str, ...] = ()
    cap: int = DEFAULT_CAP
    workers: int = 0  # 0 = all available cores
    seed: int = 0
    format: str = "text"
    out: str | None = None
    include_psl31: bool = False
    product_powers: int = 0

    def __post_init__(self):
        if self.selector not in _SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}; expected one of {_SELECTORS}")
        if self.format not in _FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {_FORMATS}")
        if self.cap <= 0:
            raise ValueError("cap must be positive")
        if self.workers < 0:
            raise ValueError("workers must be >= 0")
        if not 0 <= self.product_powers <= 3:
            raise ValueError("product_powers must be between 0 and 3")
        if self.selector == "orders" and not self.orders:
            raise ValueError("selector 'orders' requires a nonempty order list")
        if self.selector == "explicit" and not self.elements:
            raise ValueError("selector 'explicit' requires explicit elements")
        for name in self.groups:
            spec = catalog.group_spec(name)
            if spec.expected_order.value > self.cap:
                raise ValueError(
                    f"group {name} has order {spec.expected_order.value} over the cap {self.cap}"
                )

    def resolved_workers(self) -> int:
        return self.workers if self.workers > 0 else available_workers()

    def to_json(self) -> dict:
        return {
            "groups": list(self.groups),
            "selector": self.selector,
            "orders": list(self.orders),
            "elements": list(self.elements),
            "cap": self.cap,
            "workers": self.workers,
            "seed": self.seed,
            "format": self.format,
            "out": self.out,
            "include_psl31": self.include_psl31,
            "product_powers": self.product_powers,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        extra = set(data) - set(cls.__dataclass_fields__)
        if extra:
            raise ValueError(f"unknown config fields: {sorted(extra)}")
        for key in ("groups", "orders", "elements"):
            if key in known:
                known[key] = tuple(known[key])
        return cls(**known)


@dataclass(frozen=True)
class ConjectureScanRecord:
    group: str
    representative: str
    x_order: int
    sol_order: FactoredInteger
    conjecture: int
    status: str  # hypothesis_not_triggered | verified | COUNTEREXAMPLE
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "representative": self.representative,
            "x_order": self.x_order,
            "sol_order": self.sol_order.to_json(),
            "conjecture": self.conjecture,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# ----------------------------------------------------------------- helpers


def _rep_indices(G: PermGroup, config: RunConfig) -> list[int]:
    table = G.conjugacy_classes(config.cap)
    if config.selector == "all_class_reps":
        return list(range(len(table.classes)))
    if config.selector == "orders":
        wanted = set(config.orders)
        return [i for i, c in enumerate(table.classes) if c.element_order in wanted]
    # explicit cycle strings; every element must resolve to its class
    out = []
    for text in config.elements:
        x = parse_permutation(text, G.degree)
        if not G.contains(x):
            raise ValueError(f"element {text} is not in the group")
        target = min(table.class_members(x)._raws)
        for i, c in enumerate(table.classes):
            if c.representative._raw == target:
                out.append(i)
                break
    return sorted(set(out))


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _run_tasks(tasks: list[tuple], workers: int) -> list:
    """Execute heterogeneous task tuples, preserving input order."""
    if workers <= 1 or len(tasks) <= 1:
        return [_task_main(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(_task_main, tasks, chunksize=1))


def _task_main(task: tuple):
    kind = task[0]
    if kind == "lemma":
        _, name, rep_idx, seed, cap, full = task
        G = catalog.build_named_group(name, cap)
        records = sol.lemma_checks_for_rep(G, rep_idx, name, seed, cap, full_equivariance=full)
        thm = [] if analysis.is_soluble(G) else sol.theorem_checks_for_rep(G, rep_idx, cap)
        return records, thm
    if kind == "scan":
        _, name, rep_idx, cap = task
        return _scan_records_for_rep(name, rep_idx, cap)
    if kind == "table1":
        _, name, cap = task
        return _table1_row(name, cap)
    if kind == "quotient":
        _, name, mode, rep_idx, cap = task
        G = catalog.build_named_group(name, cap)
        N = analysis.center(G, cap) if mode == "center" else analysis.derived_subgroup(G)
        x = G.conjugacy_classes(cap).classes[rep_idx].representative
        return sol.quotient_sol_check(G, N, x, cap)
    if kind == "product":
        _, m, cap = task
        pgl = catalog.build_named_group("PGL2:7", cap)
        x8 = next(
            c.representative
            for c in pgl.conjugacy_classes(cap).classes
            if c.element_order == 8
        )
        A = catalog.build_named_group(f"C:{2 ** m}", cap)
        report = sol.direct_product_sol_check(A, pgl, x8, cap)
        return f"C:{2 ** m} x PGL2:7", report
    if kind == "explore":
        _, name, rep_idx, cap = task
        G = catalog.build_named_group(name, cap)
        cls = G.conjugacy_classes(cap).classes[rep_idx]
        result = sol.solubilizer(G, cls.representative, cap)
        payload = result.to_json()
        payload["is_two_group"] = prime_power_base(result.order.value) == 2
        return payload
    raise ValueError(f"unknown task kind {kind!r}")


# ------------------------------------------------------------------ table1


def _table1_row(name: str, cap: int) -> dict:
    spec = catalog.group_spec(name)
    started = time.monotonic()
    G = catalog.build_named_group(name, cap)
    insoluble = not analysis.is_soluble(G)
    fit = analysis.fitting_subgroup(G, cap).order
    radical = analysis.soluble_radical(G, cap).radical.order
    ok = (
        G.order == spec.expected_order.value
        and insoluble
        and fit == 1
        and radical == 1
    )
    return {
        "group": name,
        "degree": G.degree,
        "order": G.order_factored.to_json(),
        "expected_order": spec.expected_order.value,
        "insoluble": insoluble,
        "fitting_order": fit,
        "radical_order": radical,
        "ok": ok,
        "_wall": time.monotonic() - started,
    }


@dataclass(frozen=True)
class Table1Report:
    rows: tuple[dict, ...]
    seed: int
    meta: dict = field(compare=False)

    @property
    def all_ok(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "table1",
            "seed": self.seed,
            "all_ok": self.all_ok,
            "rows": [{k: v for k, v in r.items() if not k.startswith("_")} for r in self.rows],
            "meta": self.meta,
        }


def run_table1(config: RunConfig | None = None) -> Table1Report:
    """Reproduce the 14-row trivial-Fitting table: order, insolubility,
    |Fit(G)| = 1 and |R(G)| = 1 for every catalog group."""
    config = config or RunConfig()
    started = _utc_now()
    names = catalog.TABLE1_NAMES
    rows = _run_tasks([("table1", n, config.cap) for n in names], config.resolved_workers())
    meta = {
        "started": started,
        "finished": _utc_now(),
        "wall_times": {r["group"]: round(r["_wall"], 3) for r in rows},
    }
    return Table1Report(tuple(rows), config.seed, meta)


# -------------------------------------------------------------------- scan


def _scan_records_for_rep(name: str, rep_idx: int, cap: int) -> list[ConjectureScanRecord]:
    G = catalog.build_named_group(name, cap)
    cls = G.conjugacy_classes(cap).classes[rep_idx]
    x = cls.representative
    rep = x.cycle_string()
    result = sol.solubilizer(G, x, cap)
    s = result.order.value
    records = []

    def emit(conj: int, status: str, witness: dict | None = None):
        records.append(
            ConjectureScanRecord(name, rep, cls.element_order, result.order, conj, status, witness)
        )

    counterexample = {"group": name, "element": rep, "sol_order": s}

    # C1: |Sol| = 2^n implies Sol is a subgroup
    if prime_power_base(s) == 2:
        emit(1, "verified" if result.is_subgroup else "COUNTEREXAMPLE",
             None if result.is_subgroup else counterexample)
    else:
        emit(1, "hypothesis_not_triggered")

    # C2: |Sol| is never a power of an odd prime
    base = prime_power_base(s)
    odd_power = base is not None and base != 2
    emit(2, "COUNTEREXAMPLE" if odd_power else "verified", counterexample if odd_power else None)

    # C3: |N_G(<x>)| divides |Sol|
    n_order = result.normalizer_order.value
    divides = s % n_order == 0
    emit(3, "verified" if divides else "COUNTEREXAMPLE",
         None if divides else {**counterexample, "normalizer_order": n_order})
    return records


@dataclass(frozen=True)
class ConjectureScanReport:
    records: tuple[ConjectureScanRecord, ...]
    seed: int
    meta: dict = field(compare=False)

    @property
    def counterexamples(self) -> list[ConjectureScanRecord]:
        return [r for r in self.records if r.status == "COUNTEREXAMPLE"]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "conjecture_scan",
            "seed": self.seed,
            "counterexamples": len(self.counterexamples),
            "records": [r.to_json() for r in self.records],
            "meta": self.meta,
        }


def run_conjecture_scan(config: RunConfig | None = None) -> ConjectureScanReport:
    """Falsification scan for the three open conjectures over every selected
    class representative. Soluble groups satisfy all three trivially and are
    skipped with hypothesis_not_triggered markers."""
    config = config or RunConfig()
    started = _utc_now()
    tasks: list[tuple] = []
    skipped: list[ConjectureScanRecord] = []
    for name in config.groups:
        if catalog.group_spec(name).flags.get("soluble", False):
            one = FactoredInteger.from_int(1)
            for conj in (1, 2, 3):
                skipped.append(
                    ConjectureScanRecord(
                        name, "", 0, one, conj, "hypothesis_not_triggered",
                        {"reason": "soluble ambient group"},
                    )
                )
            continue
        G = catalog.build_named_group(name, config.cap)
        tasks.extend(
            ("scan", name, rep_idx, config.cap) for rep_idx in _rep_indices(G, config)
        )
    results = _run_tasks(tasks, config.resolved_workers())
    records = list(skipped)
    for chunk in results:
        records.extend(chunk)
    meta = {"started": started, "finished": _utc_now()}
    return ConjectureScanReport(tuple(records), config.seed, meta)


# -------------------------------------------------------------- full suite


# quotient exercises shipped with the default suite: a soluble kernel
# (center of SL(2,7), equality expected) and an insoluble one (derived
# subgroup of S5, containment only)
_QUOTIENT_SECTIONS = (("SL2:7", "center"), ("S:5", "derived"))


@dataclass(frozen=True)
class FullSuiteReport:
    config: RunConfig
    groups: tuple[dict, ...]
    quotient_checks: tuple[dict, ...]
    product_checks: tuple[dict, ...]
    exploration: tuple[dict, ...]
    meta: dict = field(compare=False)

    @property
    def all_passed(self) -> bool:
        return (
            all(g["all_passed"] for g in self.groups)
            and all(q["passed"] for q in self.quotient_checks)
            and all(p["passed"] for p in self.product_checks)
        )

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "full_suite",
            "seed": self.config.seed,
            "config": self.config.to_json(),
            "all_passed": self.all_passed,
            "groups": list(self.groups),
            "quotient_checks": list(self.quotient_checks),
            "product_checks": list(self.product_checks),
            "exploration": list(self.exploration),
            "meta": self.meta,
        }


def run_full_suite(config: RunConfig | None = None) -> FullSuiteReport:
    """The full regression battery: every lemma item and theorem instance at
    every selected representative of every selected group, plus the quotient
    and direct-product exercises, assembled in catalog order."""
    config = config or RunConfig()
    started = _utc_now()
    walls: dict[str, float] = {}

    group_names = list(config.groups)
    if config.include_psl31 and "PSL2:31" not in group_names:
        group_names.append("PSL2:31")

    tasks: list[tuple] = []
    group_slices: list[tuple[str, int, int, list[int]]] = []
    for name in group_names:
        t0 = time.monotonic()
        G = catalog.build_named_group(name, config.cap)
        indices = _rep_indices(G, config)
        full_idx = sol.full_equivariance_index(G, config.cap)
        walls[f"prepare:{name}"] = round(time.monotonic() - t0, 3)
        start = len(tasks)
        tasks.extend(
            ("lemma", name, rep_idx, config.seed, config.cap, rep_idx == full_idx)
            for rep_idx in indices
        )
        group_slices.append((name, start, len(tasks), indices))

    quotient_tasks: list[tuple] = []
    if config.selector == "all_class_reps" and tuple(config.groups) == catalog.TABLE1_NAMES:
        for name, mode in _QUOTIENT_SECTIONS:
            G = catalog.build_named_group(name, config.cap)
            quotient_tasks.extend(
                ("quotient", name, mode, rep_idx, config.cap)
                for rep_idx in range(len(G.conjugacy_classes(config.cap).classes))
            )
    product_tasks = [("product", m, config.cap) for m in range(1, config.product_powers + 1)]

    explore_names = ["PSL2:31"] if config.include_psl31 else []
    explore_tasks: list[tuple] = []
    for name in explore_names:
        G = catalog.build_named_group(name, config.cap)
        explore_tasks.extend(
            ("explore", name, rep_idx, config.cap) for rep_idx in _rep_indices(G, config)
        )

    t0 = time.monotonic()
    all_tasks = tasks + quotient_tasks + product_tasks + explore_tasks
    results = _run_tasks(all_tasks, config.resolved_workers())
    walls["checks"] = round(time.monotonic() - t0, 3)

    groups: list[dict] = []
    for name, start, end, indices in group_slices:
        lemma_records: list[sol.CheckRecord] = []
        theorem_records: list[sol.CheckRecord] = []
        for lemma, thm in results[start:end]:
            lemma_records.extend(lemma)
            theorem_records.extend(thm)
        spec = catalog.group_spec(name)
        groups.append(
            {
                "group": name,
                "order": spec.expected_order.to_json(),
                "representatives": len(indices),
                "all_passed": all(r.passed for r in lemma_records + theorem_records),
                "lemma_checks": [r.to_json() for r in lemma_records],
                "theorem_checks": [r.to_json() for r in theorem_records],
            }
        )

    offset = len(tasks)
    quotients = []
    for task, rep in zip(quotient_tasks, results[offset : offset + len(quotient_tasks)]):
        payload = rep.to_json()
        payload["group"] = task[1]
        payload["kernel"] = task[2]
        payload["passed"] = rep.passed
        quotients.append(payload)
    offset += len(quotient_tasks)

    products = []
    for label, rep in results[offset : offset + len(product_tasks)]:
        payload = rep.to_json()
        payload["product"] = label
        products.append(payload)
    offset += len(product_tasks)

    exploration = []
    for task, payload in zip(explore_tasks, results[offset:]):
        payload["group"] = task[1]
        exploration.append(payload)

    meta = {"started": started, "finished": _utc_now(), "wall_times": walls}
    return FullSuiteReport(
        config, tuple(groups), tuple(quotients), tuple(products), tuple(exploration), meta
    )


# --------------------------------------------------------------- rendering


def render_json(report) -> str:
    return json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"


def _csv_rows(doc: dict) -> list[list[str]]:
    rows: list[list[str]] = [["group", "representative", "check", "status", "detail"]]

    def detail(d: dict, skip=()) -> str:
        parts = []
        for k, v in d.items():
            if k in skip or isinstance(v, (dict, list)):
                continue
            parts.append(f"{k}={v}")
        return ";".join(parts)

    kind = doc.get("kind")
    if kind == "table1":
        for r in doc["rows"]:
            rows.append(
                [
                    r["group"],
                    "",
                    "table1_row",
                    "pass" if r["ok"] else "FAIL",
                    detail(r, skip=("group", "ok", "order")) + f";order={r['order']['value']}",
                ]
            )
    elif kind == "conjecture_scan":
        for r in doc["records"]:
            rows.append(
                [
                    r["group"],
                    r["representative"],
                    f"conjecture_{r['conjecture']}",
                    r["status"],
                    f"x_order={r['x_order']};sol_order={r['sol_order']['value']}",
                ]
            )
    elif kind == "full_suite":
        for g in doc["groups"]:
            for section, key in (("lemma", "lemma_checks"), ("theorem", "theorem_checks")):
                for c in g[key]:
                    status = (
                        "pass" if c["passed"] else "FAIL"
                    ) if c["triggered"] else "not_triggered"
                    rows.append([g["group"], c["rep"], f"{section}:{c['item']}", status, ""])
        for q in doc["quotient_checks"]:
            rows.append(
                [
                    q["group"],
                    q["rep"],
                    f"quotient:{q['kernel']}",
                    "pass" if q["passed"] else "FAIL",
                    detail(q, skip=("group", "rep", "kernel", "passed")),
                ]
            )
        for p in doc["product_checks"]:
            rows.append(
                [
                    p["product"],
                    p["rep"],
                    "product",
                    "pass" if p["passed"] else "FAIL",
                    detail(p, skip=("product", "rep", "passed")),
                ]
            )
        for e in doc["exploration"]:
            rows.append(
                [
                    e["group"],
                    e["element"],
                    "exploration",
                    "reported",
                    f"sol_order={e['order']['value']};is_subgroup={e['is_subgroup']}"
                    f";is_two_group={e['is_two_group']}",
                ]
            )
    else:
        raise ValueError(f"no CSV layout for report kind {kind!r}")
    return rows


def render_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(_csv_rows(report.to_json()))
    return buf.getvalue()


def render_text(report) -> str:
    doc = report.to_json()
    kind = doc.get("kind")
    lines: list[str] = []
    if kind == "table1":
        lines.append(f"{'group':14s} {'order':>8s} {'insoluble':>9s} {'|Fit|':>6s} {'|R|':>4s} ok")
        for r in doc["rows"]:
            lines.append(
                f"{r['group']:14s} {r['order']['value']:8d} {str(r['insoluble']):>9s}"
                f" {r['fitting_order']:6d} {r['radical_order']:4d} {'pass' if r['ok'] else 'FAIL'}"
            )
        lines.append(f"table1: {'all rows pass' if doc['all_ok'] else 'MISMATCH'}")
    elif kind == "conjecture_scan":
        counts: dict[str, int] = {}
        for r in doc["records"]:
            counts[r["status"]] = counts.get(r["status"], 0) + 1
            if r["status"] == "COUNTEREXAMPLE":
                lines.append(
                    f"COUNTEREXAMPLE conjecture {r['conjecture']}: group={r['group']}"
                    f" element={r['representative']} |Sol|={r['sol_order']['value']}"
                )
        lines.append(
            "scan: "
            + ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
        )
    elif kind == "full_suite":
        for g in doc["groups"]:
            n_checks = len(g["lemma_checks"]) + len(g["theorem_checks"])
            failed = [
                c
                for c in g["lemma_checks"] + g["theorem_checks"]
                if not c["passed"]
            ]
            lines.append(
                f"{g['group']:14s} reps={g['representatives']:3d} checks={n_checks:4d} "
                + ("pass" if g["all_passed"] else f"FAIL ({len(failed)})")
            )
            for c in failed:
                lines.append(f"  FAIL {c['item']} at {c['rep']}: {c.get('witness')}")
        for q in doc["quotient_checks"]:
            lines.append(
                f"quotient {q['group']}/{q['kernel']} at {q['rep']}: "
                + ("pass" if q["passed"] else "FAIL")
            )
        for p in doc["product_checks"]:
            lines.append(
                f"product {p['product']} at {p['rep']}: |Sol|={p['sol_in_product']} "
                + ("pass" if p["passed"] else "FAIL")
            )
        for e in doc["exploration"]:
            lines.append(
                f"exploration {e['group']} at {e['element']} (|x|={e['element_order']}):"
                f" |Sol|={e['order']['value']} subgroup={e['is_subgroup']}"
                f" two_group={e['is_two_group']}"
            )
        lines.append(f"suite: {'all passed' if doc['all_passed'] else 'FAILURES PRESENT'}")
    else:
        raise ValueError(f"no text layout for report kind {kind!r}")
    return "\n".join(lines) + "\n"


def render(report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    return render_text(report)

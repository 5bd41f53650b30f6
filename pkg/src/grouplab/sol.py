"""Solubilizer computation and the lemma/theorem property batteries.

Sol_G(x) = { y in G : <x, y> is soluble }. It contains <x>, the normalizer
of <x>, and the soluble radical, and its size is divisible by |x|, |C_G(x)|,
and |R(G)|; but it is a subgroup only in special situations, which is what
most of the checks in this module probe.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import analysis, catalog
from .perm import (
    DEFAULT_CAP,
    ElementSet,
    FactoredInteger,
    PermGroup,
    Permutation,
    _group_from_raws,
    _raw_conj,
    _raw_identity,
    _raw_inv,
    _raw_mult,
    _raw_order,
    closure_test,
    is_prime,
    prime_power_base,
)

_SOL_CHUNK = 1024


@dataclass(frozen=True)
class StructureTag:
    """Isomorphism label for a group of order <= 64, decided by fingerprint.

    fingerprint = (order, abelian, exponent, element-order histogram,
    |center|, |derived subgroup|); the histogram is a sorted tuple of
    (element order, count) pairs.
    """

    label: str
    fingerprint: tuple

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "fingerprint": {
                "order": self.fingerprint[0],
                "abelian": self.fingerprint[1],
                "exponent": self.fingerprint[2],
                "order_histogram": [list(pair) for pair in self.fingerprint[3]],
                "center_order": self.fingerprint[4],
                "derived_order": self.fingerprint[5],
            },
        }


@dataclass(frozen=True)
class SolResult:
    ambient: PermGroup
    x: Permutation
    members: ElementSet
    order: FactoredInteger
    is_subgroup: bool
    subgroup: PermGroup | None
    structure: StructureTag | None
    normalizer_order: FactoredInteger
    centralizer_order: FactoredInteger

    def to_json(self) -> dict:
        return {
            "element": self.x.cycle_string(),
            "element_order": self.x.order(),
            "order": self.order.to_json(),
            "is_subgroup": self.is_subgroup,
            "structure": self.structure.to_json() if self.structure else None,
            "normalizer_order": self.normalizer_order.to_json(),
            "centralizer_order": self.centralizer_order.to_json(),
        }


def _cyclic_raws(xraw, n: int) -> frozenset:
    ident = _raw_identity(n)
    out = {ident}
    cur = xraw
    while cur != ident:
        out.add(cur)
        cur = _raw_mult(cur, xraw)
    return frozenset(out)


def _normalizer_of_cyclic_raws(G: PermGroup, xraw, cap: int) -> frozenset:
    """{g : <x>^g = <x>} as raw tables; cached per (group, element)."""
    key = ("ncyc", xraw)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    n = G.degree
    powers = _cyclic_raws(xraw, n)
    keep = []
    for g in G._elements_raw(cap):
        g_inv = _raw_inv(g, n)
        if _raw_conj(xraw, g, g_inv) in powers:
            keep.append(g)
    result = frozenset(keep)
    G._cache[key] = result
    return result


def _centralizer_order(G: PermGroup, xraw, cap: int) -> int:
    key = ("cent", xraw)
    cached = G._cache.get(key)
    if cached is None:
        cached = sum(
            1 for g in G._elements_raw(cap) if _raw_mult(g, xraw) == _raw_mult(xraw, g)
        )
        G._cache[key] = cached
    return cached


def _sol_chunk_worker(args) -> list:
    n, xraw, chunk = args
    return [y for y in chunk if analysis._soluble_raw(n, (xraw, y))]


def _sol_member_raws(G: PermGroup, xraw, cap: int, workers: int) -> list:
    elements = G._elements_raw(cap)
    n = G.degree
    if workers <= 1 or len(elements) <= _SOL_CHUNK:
        return [y for y in elements if analysis._soluble_raw(n, (xraw, y))]
    chunks = [elements[i : i + _SOL_CHUNK] for i in range(0, len(elements), _SOL_CHUNK)]
    out: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sol_chunk_worker, [(n, xraw, c) for c in chunks]):
            out.extend(part)
    return out


def solubilizer(
    G: PermGroup, x: Permutation, cap: int = DEFAULT_CAP, workers: int = 1
) -> SolResult:
    """Exhaustive Sol_G(x) with its structural trimmings.

    The full invariant battery from the underlying theory is asserted on
    every call; a violation is an implementation bug, not a finding.
    """
    if not G.contains(x):
        raise ValueError("element is not in the group")
    key = ("sol", x._raw)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    n = G.degree
    xraw = x._raw
    member_raws = _sol_member_raws(G, xraw, cap, workers)
    member_set = frozenset(member_raws)
    members = ElementSet._from_raws(G, member_set)
    order = FactoredInteger.from_int(len(member_set))

    is_sub = closure_test(members)
    subgroup = _group_from_raws(n, sorted(member_set)) if is_sub else None
    structure = None
    if is_sub and len(member_set) <= 64:
        structure = identify_small_group(subgroup)

    norm_set = _normalizer_of_cyclic_raws(G, xraw, cap)
    cent_order = _centralizer_order(G, xraw, cap)
    radical = analysis.soluble_radical(G, cap).radical

    # containment and divisibility invariants
    if not _cyclic_raws(xraw, n) <= member_set:
        raise RuntimeError("solubilizer does not contain the cyclic subgroup")
    if not norm_set <= member_set:
        raise RuntimeError("solubilizer does not contain the normalizer")
    if not set(radical._elements_raw(cap)) <= member_set:
        raise RuntimeError("solubilizer does not contain the soluble radical")
    for d in (x.order(), cent_order, radical.order):
        if order.value % d:
            raise RuntimeError(f"divisor invariant broken: {d} does not divide {order.value}")
    if not analysis.is_soluble(G):
        if is_prime(order.value):
            raise RuntimeError("solubilizer of prime size in an insoluble group")
        p = prime_power_base(order.value)
        if p is not None and order.value == p * p:
            raise RuntimeError("solubilizer of prime-square size in an insoluble group")

    result = SolResult(
        ambient=G,
        x=x,
        members=members,
        order=order,
        is_subgroup=is_sub,
        subgroup=subgroup,
        structure=structure,
        normalizer_order=FactoredInteger.from_int(len(norm_set)),
        centralizer_order=FactoredInteger.from_int(cent_order),
    )
    G._cache[key] = result
    return result


# ---------------------------------------------------------------- structure


def _order_histogram(H: PermGroup, cap: int) -> tuple:
    counts: dict[int, int] = {}
    for g in H._elements_raw(cap):
        o = _raw_order(g, H.degree)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def _fingerprint(H: PermGroup, cap: int = DEFAULT_CAP) -> tuple:
    hist = _order_histogram(H, cap)
    exponent = analysis.exponent_of_group(H, cap)
    center_order = analysis.center(H, cap).order
    derived_order = analysis.derived_subgroup(H).order
    abelian = derived_order == 1
    return (H.order, abelian, exponent, hist, center_order, derived_order)


def _abelian_invariants(order: int, hist: tuple) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an abelian group, recovered from
    its element-order histogram.

    For each prime p, the partition (a_1 >= a_2 >= ...) of the p-part obeys
    #{x : x^(p^k) = 1} = p^(sum_i min(a_i, k)); the partial sums determine
    the partition by double differencing.
    """
    per_prime: dict[int, list[int]] = {}
    for p, _ in FactoredInteger.from_int(order).factor_pairs:
        sums = [0]
        k = 1
        while True:
            total = sum(c for o, c in hist if p ** k % o == 0)
            e = 0
            t = total
            while t > 1:
                t //= p
                e += 1
            if p**e != total:
                raise RuntimeError("histogram is not that of an abelian group")
            sums.append(e)
            if e == sums[-2]:
                sums.pop()
                break
            k += 1
        steps = [sums[i + 1] - sums[i] for i in range(len(sums) - 1)]
        # steps[k] = number of parts >= k+1; recover multiplicities
        parts = []
        for i in range(len(steps)):
            parts += [i + 1] * (steps[i] - (steps[i + 1] if i + 1 < len(steps) else 0))
        per_prime[p] = sorted(parts, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        d = 1
        for p, parts in per_prime.items():
            if i < len(parts):
                d *= p ** parts[i]
        factors.append(d)
    return sorted(factors)


_REFERENCE_LABELS = (
    ("D:{0}", "dihedral {0}", lambda m: m >= 6 and m % 2 == 0),
    ("SD:{0}", "semidihedral {0}", lambda m: m in (16, 32, 64)),
    ("Q:{0}", "generalized_quaternion {0}", lambda m: m in (8, 16, 32, 64)),
    ("C7:C3", "C7:C3", lambda m: m == 21),
    ("A:4", "A4", lambda m: m == 12),
    ("S:4", "S4", lambda m: m == 24),
)


def identify_small_group(H: PermGroup, cap: int = DEFAULT_CAP) -> StructureTag:
    """Fingerprint-table identification for |H| <= 64."""
    if H.order > 64:
        raise ValueError(f"identification supports orders <= 64, got {H.order}")
    fp = _fingerprint(H, cap)
    order, abelian, exponent, hist, _, _ = fp
    if abelian:
        if any(o == order for o, _ in hist):
            return StructureTag(f"cyclic {order}", fp)
        if is_prime(exponent):
            return StructureTag(f"elementary_abelian {order}", fp)
        invariants = _abelian_invariants(order, hist)
        return StructureTag("abelian " + "x".join(str(d) for d in invariants), fp)
    for name_pat, label_pat, applies in _REFERENCE_LABELS:
        if not applies(order):
            continue
        ref = catalog.build_named_group(name_pat.format(order))
        if _fingerprint(ref, cap) == fp:
            return StructureTag(label_pat.format(order), fp)
    return StructureTag("other", fp)


# ------------------------------------------------------------ ell invariant


@dataclass(frozen=True)
class EllReport:
    x_order: int
    ell: int | None
    # normalizer_equals_sol | strict_bound | undefined (N_G(<x>) = G) | violated
    dichotomy: str
    sol_order: int
    normalizer_order: int

    def to_json(self) -> dict:
        return {
            "x_order": self.x_order,
            "ell": self.ell,
            "dichotomy": self.dichotomy,
            "sol_order": self.sol_order,
            "normalizer_order": self.normalizer_order,
        }


def ell_invariant(
    G: PermGroup, x: Permutation, sol: SolResult | None = None, cap: int = DEFAULT_CAP
) -> EllReport:
    """ell = min over y outside N_G(<x>) of the index |<x> : <x> meet <x^y>|,
    and which arm of the dichotomy (N = Sol, or |Sol| > ell*|x|) holds."""
    if sol is None:
        sol = solubilizer(G, x, cap)
    n = G.degree
    xraw = x._raw
    norm_set = _normalizer_of_cyclic_raws(G, xraw, cap)
    if len(norm_set) == G.order:
        return EllReport(x.order(), None, "undefined", sol.order.value, len(norm_set))
    powers = _cyclic_raws(xraw, n)
    x_order = len(powers)
    ell = x_order
    for y in G._elements_raw(cap):
        if y in norm_set:
            continue
        y_inv = _raw_inv(y, n)
        shared = len(powers & _cyclic_raws(_raw_conj(xraw, y, y_inv), n))
        index = x_order // shared
        if index < ell:
            ell = index
    if sol.members._raws == norm_set:
        status = "normalizer_equals_sol"
    elif sol.order.value > ell * x_order:
        status = "strict_bound"
    else:
        status = "violated"
    return EllReport(x.order(), ell, status, sol.order.value, len(norm_set))


# ----------------------------------------------------------- check reports


@dataclass(frozen=True)
class CheckRecord:
    """One verified statement instance: an item id, the element it was
    checked at, the outcome, and a concrete witness when it failed."""

    item: str
    rep: str
    passed: bool
    triggered: bool = True
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "item": self.item,
            "rep": self.rep,
            "passed": self.passed,
            "triggered": self.triggered,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class LemmaSuiteReport:
    group: str
    seed: int
    checks: tuple[CheckRecord, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _sampled_elements(G: PermGroup, label: str, seed: int, cap: int, count: int = 8) -> list:
    """Deterministic sample: every generator plus `count` seeded picks."""
    elements = G._elements_raw(cap)
    rng = random.Random(f"{seed}:{label}")
    picks = [elements[rng.randrange(len(elements))] for _ in range(count)]
    return G._gen_raws() + picks


def _suite_context(G: PermGroup, cap: int) -> dict:
    """Group-level facts shared by every per-representative check run."""
    ctx = G._cache.get("suite_ctx")
    if ctx is None:
        radical = analysis.soluble_radical(G, cap).radical
        ctx = {
            "insoluble": not analysis.is_soluble(G),
            "radical_order": radical.order,
            "radical_set": frozenset(radical._elements_raw(cap)),
            "sylow_exp": {
                p: analysis.exponent_of_group(analysis.sylow_subgroup(G, p, cap), cap)
                for p, _ in G.order_factored.factor_pairs
            },
        }
        G._cache["suite_ctx"] = ctx
    return ctx


def lemma_checks_for_rep(
    G: PermGroup,
    rep_idx: int,
    name: str = "",
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    full_equivariance: bool = False,
) -> list[CheckRecord]:
    """All lemma-level checks at one conjugacy-class representative."""
    n = G.degree
    ident = _raw_identity(n)
    ctx = _suite_context(G, cap)
    insoluble = ctx["insoluble"]
    cls = G.conjugacy_classes(cap).classes[rep_idx]

    x = cls.representative
    rep = x.cycle_string()
    xraw = x._raw
    x_order = cls.element_order
    sol = solubilizer(G, x, cap)
    sol_set = sol.members._raws
    sol_order = sol.order.value
    norm_set = _normalizer_of_cyclic_raws(G, xraw, cap)
    sample = _sampled_elements(G, f"{name}:{rep_idx}", seed, cap)
    checks: list[CheckRecord] = []

    def record(item: str, passed: bool, witness: dict | None = None, triggered: bool = True):
        checks.append(CheckRecord(item, rep, passed, triggered, None if passed else witness))

    # (2) |x| divides |Sol|
    record("order_divides", sol_order % x_order == 0, {"x_order": x_order, "sol": sol_order})

    # (10) |C_G(x)| divides |Sol|
    c_order = sol.centralizer_order.value
    record(
        "centralizer_divides",
        sol_order % c_order == 0,
        {"centralizer": c_order, "sol": sol_order},
    )

    # (1) <x> + N_G(<x>) + R(G) inside Sol; membership spot-check of the
    # union-of-soluble-subgroups description
    cyc = _cyclic_raws(xraw, n)
    contained = cyc <= sol_set and norm_set <= sol_set and ctx["radical_set"] <= sol_set
    spot_ok = all(analysis._soluble_raw(n, (xraw, y)) == (y in sol_set) for y in sample)
    record("containment", contained and spot_ok, {"rep": rep})

    # (5) |R(G)| divides |Sol|
    record(
        "radical_divides",
        sol_order % ctx["radical_order"] == 0,
        {"radical": ctx["radical_order"], "sol": sol_order},
    )

    # (6) insoluble G: <x> is proper in Sol
    if insoluble:
        record("cyclic_proper", len(cyc) < sol_order, {"x_order": x_order, "sol": sol_order})
    else:
        record("cyclic_proper", True, triggered=False)

    # (7) |Sol| is not prime (insoluble ambient; soluble gives Sol = G)
    if insoluble:
        record("order_not_prime", not is_prime(sol_order), {"sol": sol_order})
    else:
        record("order_not_prime", True, triggered=False)

    # (9) Sol(x^g) = Sol(x)^g: membership equivariance at sampled pairs,
    # plus one full recomputation on the designated representative
    equi_ok = True
    equi_witness = None
    for g in sample[: len(G.generators) + 2]:
        g_inv = _raw_inv(g, n)
        xg = _raw_conj(xraw, g, g_inv)
        for y in sample:
            lhs = y in sol_set
            rhs = analysis._soluble_raw(n, (xg, _raw_conj(y, g, g_inv)))
            if lhs != rhs:
                equi_ok = False
                equi_witness = {"g": Permutation._from_raw(g, n).cycle_string()}
                break
        if not equi_ok:
            break
    if equi_ok and full_equivariance and x_order > 1:
        g = next((s for s in sample if s != ident and s not in cyc), None)
        if g is not None:
            g_inv = _raw_inv(g, n)
            xg = Permutation._from_raw(_raw_conj(xraw, g, g_inv), n)
            direct = solubilizer(G, xg, cap).members._raws
            conjugated = frozenset(_raw_conj(y, g, g_inv) for y in sol_set)
            if direct != conjugated:
                equi_ok = False
                equi_witness = {"g": Permutation._from_raw(g, n).cycle_string(), "full": True}
    record("conjugation_equivariance", equi_ok, equi_witness)

    # either N_G(<x>) = Sol as sets or |Sol| strictly exceeds ell * |x|
    ell = ell_invariant(G, x, sol, cap)
    record(
        "normalizer_dichotomy",
        ell.dichotomy != "violated",
        {"ell": ell.ell, "sol": sol_order, "normalizer": ell.normalizer_order},
    )

    # when |x| equals the exponent of its Sylow p-subgroup the same
    # dichotomy holds with the sharper bound p * |x|
    p = prime_power_base(x_order) if x_order > 1 else None
    if p is not None and ctx["sylow_exp"].get(p) == x_order:
        holds = sol.members._raws == norm_set or sol_order > p * x_order
        record(
            "exponent_dichotomy",
            holds,
            {"p": p, "exp": x_order, "sol": sol_order, "normalizer": len(norm_set)},
        )
    else:
        record("exponent_dichotomy", True, triggered=False)

    # |Sol| is never the square of a prime in an insoluble group
    if insoluble:
        base = prime_power_base(sol_order)
        record(
            "order_not_prime_square",
            base is None or sol_order != base * base,
            {"sol": sol_order},
        )
    else:
        record("order_not_prime_square", True, triggered=False)

    # A nilpotent subgroup-Sol in an insoluble group has a non-abelian
    # Sylow 2-subgroup of order >= 16. Nilpotency is what lets the
    # underlying maximal-subgroup solubility criterion bite; without it
    # the statement is false (Sol of a 5-cycle in A5 is dihedral of
    # order 10 with a Sylow 2-subgroup of order 2).
    if insoluble and sol.is_subgroup and analysis.is_nilpotent(sol.subgroup):
        syl2 = analysis.sylow_subgroup(sol.subgroup, 2, cap)
        ok = syl2.order >= 16 and analysis.derived_subgroup(syl2).order > 1
        record("sylow2_of_sol_nonabelian_ge16", ok, {"sylow2_order": syl2.order})
    else:
        record("sylow2_of_sol_nonabelian_ge16", True, triggered=False)

    # no self-normalizing prime-order cyclic subgroup in an insoluble group
    if insoluble and is_prime(x_order):
        record(
            "no_self_normalizing_prime_cyclic",
            len(norm_set) > x_order,
            {"x_order": x_order, "normalizer": len(norm_set)},
        )
    else:
        record("no_self_normalizing_prime_cyclic", True, triggered=False)

    # involution class sits inside the normal core of a subgroup-Sol
    if x_order == 2:
        core_rep = sol_core_check(G, x, seed=seed, cap=cap)
        record(
            "involution_class_in_core",
            core_rep.passed,
            core_rep.witness,
            triggered=core_rep.applicable,
        )
    else:
        record("involution_class_in_core", True, triggered=False)

    return checks


def full_equivariance_index(G: PermGroup, cap: int = DEFAULT_CAP) -> int | None:
    """Designated representative for the one full Sol(x^g) = Sol(x)^g
    set-equality recomputation per group: the first non-identity class."""
    for idx, cls in enumerate(G.conjugacy_classes(cap).classes):
        if cls.element_order > 1:
            return idx
    return None


def check_lemma_suite(
    G: PermGroup, name: str = "", seed: int = 0, cap: int = DEFAULT_CAP
) -> LemmaSuiteReport:
    """Every lemma-level statement, checked at every conjugacy-class
    representative. All of them are proved facts: a failure here means the
    implementation is wrong, and the record carries the witness."""
    full_idx = full_equivariance_index(G, cap)
    checks: list[CheckRecord] = []
    for rep_idx in range(len(G.conjugacy_classes(cap).classes)):
        checks.extend(
            lemma_checks_for_rep(
                G, rep_idx, name, seed, cap, full_equivariance=rep_idx == full_idx
            )
        )
    return LemmaSuiteReport(name, seed, tuple(checks))


@dataclass(frozen=True)
class CoreCheckReport:
    rep: str
    applicable: bool  # Sol is a subgroup, so the lemma's hypothesis holds
    passed: bool
    core_order: int | None
    class_size: int | None
    companion_checked: int
    witness: dict | None

    def to_json(self) -> dict:
        return {
            "rep": self.rep,
            "applicable": self.applicable,
            "passed": self.passed,
            "core_order": self.core_order,
            "class_size": self.class_size,
            "companion_checked": self.companion_checked,
        }


def sol_core_check(
    G: PermGroup, x: Permutation, seed: int = 0, cap: int = DEFAULT_CAP
) -> CoreCheckReport:
    """For an involution with Sol a subgroup: x^G sits inside Core_G(Sol).
    The companion fact x in Sol_G(x^g) (as <x, x^g> is cyclic or dihedral)
    is verified for sampled g regardless of subgroup-ness."""
    if x.order() != 2:
        raise ValueError("the core check applies to involutions only")
    n = G.degree
    xraw = x._raw
    sol = solubilizer(G, x, cap)

    companion = 0
    witness = None
    ok = True
    for g in _sampled_elements(G, f"core:{x.cycle_string()}", seed, cap):
        g_inv = _raw_inv(g, n)
        companion += 1
        if not analysis._soluble_raw(n, (xraw, _raw_conj(xraw, g, g_inv))):
            ok = False
            witness = {"g": Permutation._from_raw(g, n).cycle_string(), "companion": True}
            break

    if not sol.is_subgroup:
        return CoreCheckReport(x.cycle_string(), False, ok, None, None, companion, witness)

    core = analysis.core(G, sol.subgroup, cap)
    core_set = set(core._elements_raw(cap))
    class_raws = G.conjugacy_classes(cap).class_members(x)._raws
    if ok and not class_raws <= core_set:
        ok = False
        witness = {"core_order": core.order, "class_size": len(class_raws)}
    return CoreCheckReport(
        x.cycle_string(), True, ok, core.order, len(class_raws), companion, witness
    )


def _is_simple_cached(G: PermGroup, cap: int) -> bool:
    cached = G._cache.get("simple")
    if cached is None:
        cached = analysis.is_simple(G, cap)
        G._cache["simple"] = cached
    return cached


def theorem_checks_for_rep(G: PermGroup, rep_idx: int, cap: int = DEFAULT_CAP) -> list[CheckRecord]:
    """Theorem-instance checks at one representative of an insoluble group."""
    cls = G.conjugacy_classes(cap).classes[rep_idx]
    records: list[CheckRecord] = []
    two_part = 2 ** G.order_factored.factors.get(2, 0)
    x = cls.representative
    rep = x.cycle_string()
    sol = solubilizer(G, x, cap)
    s = sol.order.value
    norm_set = _normalizer_of_cyclic_raws(G, x._raw, cap)
    factors = sol.order.factor_pairs

    # |Sol| = 2p, p odd prime -> G simple and N_G(<x>) = Sol
    if len(factors) == 2 and factors[0] == (2, 1) and factors[1][1] == 1:
        passed = _is_simple_cached(G, cap) and norm_set == sol.members._raws
        records.append(CheckRecord("sol_2p", rep, passed, True, None if passed else {"sol": s}))
    else:
        records.append(CheckRecord("sol_2p", rep, True, False))

    # |Sol| = pq with |x| = q > p -> G simple and N_G(<x>) = Sol
    if (
        len(factors) == 2
        and factors[0][1] == 1
        and factors[1][1] == 1
        and cls.element_order == factors[1][0]
    ):
        passed = _is_simple_cached(G, cap) and norm_set == sol.members._raws
        records.append(CheckRecord("sol_pq", rep, passed, True, None if passed else {"sol": s}))
    else:
        records.append(CheckRecord("sol_pq", rep, True, False))

    # |Sol| = 16 -> Sol is a subgroup
    if s == 16:
        records.append(
            CheckRecord("sol_16", rep, sol.is_subgroup, True, None if sol.is_subgroup else {"sol": s})
        )
    else:
        records.append(CheckRecord("sol_16", rep, True, False))

    # Sol a 2-group -> it is a full Sylow 2-subgroup, and |x| >= 8
    if sol.is_subgroup and prime_power_base(s) == 2:
        passed = s == two_part and cls.element_order >= 8
        records.append(
            CheckRecord(
                "sol_2group",
                rep,
                passed,
                True,
                None if passed else {"sol": s, "two_part": two_part, "x_order": cls.element_order},
            )
        )
    else:
        records.append(CheckRecord("sol_2group", rep, True, False))
    return records


def theorem_instance_checks(
    G: PermGroup, name: str = "", cap: int = DEFAULT_CAP
) -> list[CheckRecord]:
    """Scan class representatives for the named theorems' hypotheses and
    verify the conclusions wherever one fires. All hypotheses presuppose an
    insoluble ambient group; a soluble input yields no triggered records."""
    if analysis.is_soluble(G):
        return []
    records: list[CheckRecord] = []
    for rep_idx in range(len(G.conjugacy_classes(cap).classes)):
        records.extend(theorem_checks_for_rep(G, rep_idx, cap))
    return records


@dataclass(frozen=True)
class QuotientCheckReport:
    rep: str
    n_order: int
    n_soluble: bool
    sol_order: int
    quotient_sol_order: int
    passed: bool
    witness: dict | None

    def to_json(self) -> dict:
        return {
            "rep": self.rep,
            "n_order": self.n_order,
            "n_soluble": self.n_soluble,
            "sol_order": self.sol_order,
            "quotient_sol_order": self.quotient_sol_order,
            "passed": self.passed,
        }


def quotient_sol_check(
    G: PermGroup, N: PermGroup, x: Permutation, cap: int = DEFAULT_CAP
) -> QuotientCheckReport:
    """Sol in the quotient versus the projected Sol.

    For soluble N the two agree exactly and |Sol| is divisible by |N|; for an
    insoluble N only the containment (projected Sol inside quotient Sol) is
    claimed, and that is what gets verified.
    """
    Q, project = analysis.quotient_group(G, N, cap)
    sol_g = solubilizer(G, x, cap)
    sol_q = solubilizer(Q, project(x), cap)
    projected = frozenset(project(y)._raw for y in sol_g.members)
    n_soluble = analysis.is_soluble(N)
    witness: dict | None = None
    if n_soluble:
        passed = (
            projected == sol_q.members._raws
            and sol_g.order.value % N.order == 0
            and sol_q.order.value == sol_g.order.value // N.order
        )
        if not passed:
            witness = {
                "projected": len(projected),
                "quotient_sol": sol_q.order.value,
                "sol": sol_g.order.value,
                "n": N.order,
            }
    else:
        passed = projected <= sol_q.members._raws
        if not passed:
            witness = {"projected": len(projected), "quotient_sol": sol_q.order.value}
    return QuotientCheckReport(
        x.cycle_string(),
        N.order,
        n_soluble,
        sol_g.order.value,
        sol_q.order.value,
        passed,
        witness,
    )


@dataclass(frozen=True)
class ProductCheckReport:
    rep: str
    factor_order: int
    sol_in_factor: int
    sol_in_product: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "rep": self.rep,
            "factor_order": self.factor_order,
            "sol_in_factor": self.sol_in_factor,
            "sol_in_product": self.sol_in_product,
            "passed": self.passed,
        }


def direct_product_sol_check(
    A: PermGroup, H: PermGroup, x: Permutation, cap: int = DEFAULT_CAP, workers: int = 1
) -> ProductCheckReport:
    """Sol_{A x H}(x) = A x Sol_H(x), checked as literal sets."""
    G, embed_left, embed_right = catalog.direct_product(A, H)
    x_in_g = embed_right(x)
    sol_h = solubilizer(H, x, cap)
    sol_g = solubilizer(G, x_in_g, cap, workers)
    expected = frozenset(
        _raw_mult(embed_left(a)._raw, embed_right(s)._raw)
        for a in A.elements(cap)
        for s in sol_h.members
    )
    passed = (
        expected == sol_g.members._raws
        and sol_g.order.value == A.order * sol_h.order.value
    )
    return ProductCheckReport(
        x.cycle_string(), A.order, sol_h.order.value, sol_g.order.value, passed
    )

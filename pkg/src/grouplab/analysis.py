"""Structural computations: series, solubility, centralizers, normalizers,
cores, Sylow subgroups, the Fitting subgroup, the soluble radical, quotient
groups, and exponents.

Everything here is a pure function of immutable inputs. The solubility test
walks the derived series of the generated subgroup directly, one normal
closure at a time, without ever building a stabilizer chain for the subgroup
itself; that keeps the per-pair cost low enough for exhaustive solubilizer
loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Sequence

from .perm import (
    DEFAULT_CAP,
    CapExceededError,
    FactoredInteger,
    PermGroup,
    Permutation,
    _Chain,
    _group_from_raws,
    _raw_commutator,
    _raw_conj,
    _raw_identity,
    _raw_inv,
    _raw_mult,
    _raw_order,
    is_prime,
    prime_power_base,
)


@dataclass(frozen=True)
class SeriesReport:
    """A normal series run to stabilization.

    terms holds the orders G = T_0 >= T_1 >= ...; when the series stalls above
    the trivial group the repeated order is kept as the last entry, so the
    stall is visible in the report itself.
    """

    kind: str  # "derived" or "lower_central"
    terms: tuple[FactoredInteger, ...]
    stabilized: bool
    length: int

    def __post_init__(self):
        values = [t.value for t in self.terms]
        if any(a < b for a, b in zip(values, values[1:])):
            raise RuntimeError(f"series orders increased: {values}")

    @property
    def reaches_trivial(self) -> bool:
        return self.terms[-1].value == 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [t.to_json() for t in self.terms],
            "stabilized": self.stabilized,
            "length": self.length,
        }


@dataclass(frozen=True)
class RadicalCertificate:
    """R(G) together with the number of two-generated solubility tests spent."""

    radical: PermGroup
    witness_checks: int


def _pair_commutators(n: int, gens: Sequence) -> list:
    ident = _raw_identity(n)
    out = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = _raw_commutator(gens[i], gens[j], n)
            if c != ident:
                out.append(c)
    return out


def _normal_closure_raws(n: int, ambient_gens: Sequence, seeds: Sequence, stop_at: int | None = None):
    """Chain for <seeds^<ambient_gens>>, plus the generators that grew it.

    stop_at: bail out early (returning the partial chain) as soon as the
    closure order reaches this value; used by the solubility walk where
    reaching the previous term's order already decides the answer.
    """
    ch = _Chain(n)
    found = []
    for s in seeds:
        if ch.extend(s):
            found.append(s)
    pairs = [(g, _raw_inv(g, n)) for g in ambient_gens]
    qi = 0
    while qi < len(found):
        a = found[qi]
        qi += 1
        for g, g_inv in pairs:
            b = _raw_conj(a, g, g_inv)
            if ch.extend(b):
                found.append(b)
                if stop_at is not None and ch.order() >= stop_at:
                    return ch, found
    return ch, found


def _soluble_raw(n: int, gens: Sequence) -> bool:
    """Derived-series termination test for <gens>."""
    ident = _raw_identity(n)
    cur = [g for g in gens if g != ident]
    prev = None
    while True:
        comms = _pair_commutators(n, cur)
        if not comms:
            return True
        ch, found = _normal_closure_raws(n, cur, comms, stop_at=prev)
        o = ch.order()
        if o == 1:
            return True
        if prev is not None and o >= prev:
            # the derived subgroup filled the whole term: perfect group below
            return False
        prev = o
        cur = found


def is_soluble(G: PermGroup) -> bool:
    return _soluble_raw(G.degree, G._gen_raws())


def normal_closure(G: PermGroup, seeds: Sequence[Permutation]) -> PermGroup:
    """<seeds^G>, the smallest normal subgroup of G containing the seeds."""
    ch, found = _normal_closure_raws(G.degree, G._gen_raws(), [s._raw for s in seeds])
    return _group_from_raws(G.degree, found)


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G._gen_raws()
    comms = _pair_commutators(G.degree, gens)
    if not comms:
        return PermGroup([G.identity()])
    _, found = _normal_closure_raws(G.degree, gens, comms)
    return _group_from_raws(G.degree, found)


def _series(G: PermGroup, kind: str, step: Callable[[PermGroup], PermGroup]) -> SeriesReport:
    terms = [G.order_factored]
    cur = G
    while cur.order > 1:
        nxt = step(cur)
        if nxt.order == cur.order:
            terms.append(nxt.order_factored)  # stalled above 1: show the repeat
            break
        terms.append(nxt.order_factored)
        cur = nxt
    return SeriesReport(kind, tuple(terms), True, len(terms) - 1)


def derived_series(G: PermGroup) -> SeriesReport:
    return _series(G, "derived", derived_subgroup)


def lower_central_series(G: PermGroup) -> SeriesReport:
    n = G.degree
    ident = _raw_identity(n)
    g_gens = G._gen_raws()

    def step(term: PermGroup) -> PermGroup:
        # [term, G] as the normal closure of generator-pair commutators
        seeds = []
        for a in term._gen_raws():
            for b in g_gens:
                c = _raw_commutator(a, b, n)
                if c != ident:
                    seeds.append(c)
        if not seeds:
            return PermGroup([G.identity()])
        _, found = _normal_closure_raws(n, g_gens, seeds)
        return _group_from_raws(n, found)

    return _series(G, "lower_central", step)


def is_nilpotent(G: PermGroup) -> bool:
    return lower_central_series(G).reaches_trivial


def nilpotency_class(G: PermGroup) -> int:
    report = lower_central_series(G)
    if not report.reaches_trivial:
        raise ValueError("group is not nilpotent")
    return report.length


def centralizer(G: PermGroup, x: Permutation, cap: int = DEFAULT_CAP) -> PermGroup:
    if not G.contains(x):
        raise ValueError("element is not in the group")
    xr = x._raw
    keep = [g for g in G._elements_raw(cap) if _raw_mult(g, xr) == _raw_mult(xr, g)]
    return _group_from_raws(G.degree, keep)


def center(G: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = G._gen_raws()
    keep = [
        g
        for g in G._elements_raw(cap)
        if all(_raw_mult(g, s) == _raw_mult(s, g) for s in gens)
    ]
    return _group_from_raws(G.degree, keep)


def _require_subgroup(G: PermGroup, H: PermGroup):
    if H.degree != G.degree or not all(G.contains(h) for h in H.generators):
        raise ValueError("not a subgroup of the ambient group")


def normalizer(G: PermGroup, H: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    _require_subgroup(G, H)
    n = G.degree
    h_gens = [h._raw for h in H.generators]
    keep = []
    for g in G._elements_raw(cap):
        g_inv = _raw_inv(g, n)
        if all(H._chain.contains(_raw_conj(h, g, g_inv)) for h in h_gens):
            keep.append(g)
    return _group_from_raws(n, keep)


def core(G: PermGroup, H: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """Largest normal subgroup of G inside H, i.e. the intersection of all
    conjugates of H.

    Because H is a subgroup, that intersection is exactly the set of x in H
    whose whole conjugation orbit stays inside H (products of conjugates never
    leave H), so one orbit walk per element suffices; orbits that escape are
    abandoned at the first witness.
    """
    _require_subgroup(G, H)
    n = G.degree
    h_set = frozenset(H._elements_raw(cap))
    gen_pairs = [(g, _raw_inv(g, n)) for g in G._gen_raws()]
    status: dict = {}
    for x in sorted(h_set):
        if x in status:
            continue
        orbit = {x}
        queue = [x]
        escaped = False
        while queue and not escaped:
            a = queue.pop()
            for g, g_inv in gen_pairs:
                b = _raw_conj(a, g, g_inv)
                if b not in h_set:
                    escaped = True
                    break
                if b not in orbit:
                    orbit.add(b)
                    queue.append(b)
        for m in orbit:
            status[m] = not escaped
    kept = sorted(x for x, ok in status.items() if ok)
    out = _group_from_raws(n, kept)
    if out.order != len(kept):
        raise RuntimeError("core set is not closed; intersection logic is wrong")
    return out


def sylow_subgroup(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> PermGroup:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cached = G._cache.get(("sylow", p))
    if cached is not None:
        return cached
    exp_p = G.order_factored.factors.get(p, 0)
    if exp_p == 0:
        result = PermGroup([G.identity()])
        G._cache[("sylow", p)] = result
        return result
    target = p**exp_p
    seed = None
    for cls in G.conjugacy_classes(cap).classes:  # ascending element order
        if cls.element_order > 1 and prime_power_base(cls.element_order) == p:
            seed = cls.representative
    cur = PermGroup([seed])
    while cur.order < target:
        norm = normalizer(G, cur, cap)
        grown = False
        for g in norm._elements_raw(cap):
            o = _raw_order(g, G.degree)
            if o > 1 and prime_power_base(o) == p and not cur._chain.contains(g):
                cur = PermGroup(list(cur.generators) + [Permutation._from_raw(g, G.degree)])
                grown = True
                break
        if not grown:
            raise RuntimeError("Sylow growth stalled below the full p-part")
    for g in cur._elements_raw(cap):
        o = _raw_order(g, G.degree)
        if o > 1 and prime_power_base(o) != p:
            raise RuntimeError("Sylow subgroup contains a non-p element")
    G._cache[("sylow", p)] = cur
    return cur


def p_core(G: PermGroup, p: int, cap: int = DEFAULT_CAP) -> PermGroup:
    return core(G, sylow_subgroup(G, p, cap), cap)


def fitting_subgroup(G: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    cached = G._cache.get("fitting")
    if cached is not None:
        return cached
    gens: list[Permutation] = []
    for p, _ in G.order_factored.factor_pairs:
        sub = p_core(G, p, cap)
        if sub.order > 1:
            gens.extend(sub.generators)
    result = G.subgroup(gens, check=False) if gens else PermGroup([G.identity()])
    if not is_nilpotent(result):
        raise RuntimeError("Fitting subgroup computed non-nilpotent")
    G._cache["fitting"] = result
    return result


def _radical_scan(G: PermGroup, xraw, cap: int) -> tuple[bool, int]:
    """Is x radical in G?  Generators are tried first: for an insoluble group
    they are the likeliest witnesses, so failures are found almost at once."""
    n = G.degree
    checks = 0
    for y in G._gen_raws():
        checks += 1
        if not _soluble_raw(n, (xraw, y)):
            return False, checks
    for y in G._elements_raw(cap):
        checks += 1
        if not _soluble_raw(n, (xraw, y)):
            return False, checks
    return True, checks


def is_radical_element(G: PermGroup, g: Permutation, cap: int = DEFAULT_CAP) -> bool:
    if not G.contains(g):
        raise ValueError("element is not in the group")
    return _radical_scan(G, g._raw, cap)[0]


def soluble_radical(G: PermGroup, cap: int = DEFAULT_CAP) -> RadicalCertificate:
    cached = G._cache.get("radical")
    if cached is not None:
        return cached
    n = G.degree
    table = G.conjugacy_classes(cap)
    radical_raws: set = set()
    checks = 0
    for cls in table.classes:
        ok, k = _radical_scan(G, cls.representative._raw, cap)
        checks += k
        if ok:
            radical_raws |= table.class_members(cls.representative)._raws
    radical = _group_from_raws(n, sorted(radical_raws))
    if set(radical._elements_raw(cap)) != radical_raws:
        raise RuntimeError("radical elements do not form the group they generate")
    cert = RadicalCertificate(radical, checks)
    G._cache["radical"] = cert
    return cert


def quotient_group(
    G: PermGroup, N: PermGroup, cap: int = DEFAULT_CAP
) -> tuple[PermGroup, Callable[[Permutation], Permutation]]:
    """The coset action of G on N's right cosets, plus the projection map.

    N must be normal; the action has kernel exactly N, so the result is G/N
    as a permutation group of degree |G : N|.
    """
    _require_subgroup(G, N)
    n = G.degree
    gen_raws = G._gen_raws()
    for s in gen_raws:
        s_inv = _raw_inv(s, n)
        for t in N._gen_raws():
            if not N._chain.contains(_raw_conj(t, s, s_inv)):
                raise ValueError("subgroup is not normal")
    if G.order % N.order:
        raise RuntimeError("subgroup order does not divide the group order")
    index = G.order // N.order
    if index > cap:
        raise CapExceededError(f"index {index} exceeds cap {cap}")
    n_raws = N._elements_raw(cap)

    def coset_key(graw):
        return min(_raw_mult(nr, graw) for nr in n_raws)

    ident = _raw_identity(n)
    index_of = {coset_key(ident): 0}
    reps = [ident]
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for s in gen_raws:
            t = _raw_mult(r, s)
            key = coset_key(t)
            if key not in index_of:
                index_of[key] = len(reps)
                reps.append(t)
    if len(reps) != index:
        raise RuntimeError("coset walk did not reach every coset")

    def project(g: Permutation) -> Permutation:
        if g.degree != n or not G.contains(g):
            raise ValueError("element is not in the group being projected")
        images = [0] * index
        for i, r in enumerate(reps):
            images[i] = index_of[coset_key(_raw_mult(r, g._raw))] + 1
        return Permutation(images)

    Q = PermGroup([project(g) for g in G.generators])
    if Q.order * N.order != G.order:
        raise RuntimeError("coset action kernel differs from the given subgroup")
    return Q, project


def exponent_of_group(P: PermGroup, cap: int = DEFAULT_CAP) -> int:
    out = 1
    for g in P._elements_raw(cap):
        out = lcm(out, _raw_order(g, P.degree))
    return out


def is_simple(G: PermGroup, cap: int = DEFAULT_CAP) -> bool:
    """Exact test: no class representative generates a proper nontrivial
    normal closure."""
    if G.order == 1:
        return False
    for cls in G.conjugacy_classes(cap).classes:
        if cls.element_order == 1:
            continue
        ncl, _ = _normal_closure_raws(G.degree, G._gen_raws(), [cls.representative._raw])
        if ncl.order() < G.order:
            return False
    return True

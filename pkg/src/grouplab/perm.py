"""Permutations and the deterministic base/strong-generating-set engine.

A degree-n permutation acts on the points 1..n. Internally it is a 0-based
image table: for degrees up to 256 a ``bytes`` object of length 256,
identity-padded past the degree, so that ``a.translate(b)`` composes two
permutations in a single C call; above 256 a plain tuple. Products apply the
left factor first: ``(a*b)(p) == b(a(p))``, and ``x.conjugate(g)`` is
``g^-1 * x * g``.

All group machinery (order, membership, element enumeration, conjugacy
classes) sits on a Schreier-Sims stabilizer chain built without any
randomization; base points are always the smallest moved points, so two
builds from the same generator list agree bit for bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP = 20000

_BYTES_DEGREE = 256
_IDENT = bytes(range(_BYTES_DEGREE))


class ParseError(ValueError):
    """Malformed cycle notation."""


class DegreeMismatchError(ValueError):
    """Operands act on different point sets."""


class CapExceededError(RuntimeError):
    """A group was larger than the enumeration cap allows."""


def _raw_identity(n: int):
    return _IDENT if n <= _BYTES_DEGREE else tuple(range(n))


def _raw_mult(a, b):
    # apply a, then b
    if type(a) is bytes:
        return a.translate(b)
    return tuple(b[v] for v in a)


def _raw_inv(a, n: int):
    if type(a) is bytes:
        out = bytearray(_IDENT)
        for i in range(n):
            out[a[i]] = i
        return bytes(out)
    out = [0] * n
    for i in range(n):
        out[a[i]] = i
    return tuple(out)


def _raw_conj(x, g, g_inv):
    # g^-1 x g
    return _raw_mult(_raw_mult(g_inv, x), g)


def _raw_commutator(x, y, n: int):
    # x^-1 y^-1 x y; note inv(y*x) == x^-1 y^-1 under left-first products
    return _raw_mult(_raw_inv(_raw_mult(y, x), n), _raw_mult(x, y))


def _raw_order(a, n: int) -> int:
    out = 1
    seen = bytearray(n)
    for s in range(n):
        if seen[s] or a[s] == s:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        out = lcm(out, length)
    return out


def _raw_cycles(a, n: int) -> list[list[int]]:
    seen = bytearray(n)
    cycles = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = 1
        if a[s] == s:
            continue
        cyc = [s]
        j = a[s]
        while j != s:
            seen[j] = 1
            cyc.append(j)
            j = a[j]
        cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization."""

    value: int
    factor_pairs: tuple

    @classmethod
    def from_int(cls, value: int) -> "FactoredInteger":
        if value < 1:
            raise ValueError("factorization requires a positive integer")
        pairs = []
        m = value
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                pairs.append((d, e))
            d += 1 if d == 2 else 2
        if m > 1:
            pairs.append((m, 1))
        return cls(value, tuple(pairs))

    @property
    def factors(self) -> dict[int, int]:
        return dict(self.factor_pairs)

    def __str__(self) -> str:
        if self.value == 1:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factor_pairs)

    def to_json(self) -> dict:
        return {"value": self.value, "factors": {str(p): e for p, e in self.factor_pairs}}


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def prime_power_base(m: int) -> int | None:
    """The prime p with m == p^k (k >= 1), or None if m is not a prime power."""
    if m < 2:
        return None
    pairs = FactoredInteger.from_int(m).factor_pairs
    return pairs[0][0] if len(pairs) == 1 else None


class Permutation:
    """An element of Sym({1..n}); immutable, hashable, degree-aware."""

    __slots__ = ("_raw", "_degree")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise ValueError("a permutation needs at least one point")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError("images must be a rearrangement of 1..n")
        zero = [v - 1 for v in images]
        raw = bytes(zero) + _IDENT[n:] if n <= _BYTES_DEGREE else tuple(zero)
        self._raw = raw
        self._degree = n

    @classmethod
    def _from_raw(cls, raw, degree: int) -> "Permutation":
        obj = object.__new__(cls)
        obj._raw = raw
        obj._degree = degree
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls._from_raw(_raw_identity(degree), degree)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._raw[i] + 1 for i in range(self._degree))

    def __call__(self, point: int) -> int:
        if not 1 <= point <= self._degree:
            raise ValueError(f"point {point} outside 1..{self._degree}")
        return self._raw[point - 1] + 1

    def _require_same_degree(self, other: "Permutation"):
        if self._degree != other._degree:
            raise DegreeMismatchError(
                f"degree {self._degree} vs {other._degree}"
            )

    def __mul__(self, other: "Permutation") -> "Permutation":
        self._require_same_degree(other)
        return Permutation._from_raw(_raw_mult(self._raw, other._raw), self._degree)

    def inverse(self) -> "Permutation":
        return Permutation._from_raw(_raw_inv(self._raw, self._degree), self._degree)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = _raw_identity(self._degree)
        sq = self._raw
        while k:
            if k & 1:
                result = _raw_mult(result, sq)
            sq = _raw_mult(sq, sq)
            k >>= 1
        return Permutation._from_raw(result, self._degree)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """self^g = g^-1 * self * g."""
        self._require_same_degree(g)
        g_inv = _raw_inv(g._raw, self._degree)
        return Permutation._from_raw(_raw_conj(self._raw, g._raw, g_inv), self._degree)

    def commutator(self, other: "Permutation") -> "Permutation":
        self._require_same_degree(other)
        return Permutation._from_raw(
            _raw_commutator(self._raw, other._raw, self._degree), self._degree
        )

    def order(self) -> int:
        return _raw_order(self._raw, self._degree)

    def is_identity(self) -> bool:
        return self._raw == _raw_identity(self._degree)

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self._degree) if self._raw[i] != i)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(p + 1 for p in c) for c in _raw_cycles(self._raw, self._degree))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Permutation)
            and self._degree == other._degree
            and self._raw == other._raw
        )

    def __hash__(self) -> int:
        return hash((self._degree, self._raw))

    def __lt__(self, other: "Permutation") -> bool:
        # stable, representation-level order; used only for deterministic listings
        self._require_same_degree(other)
        return self._raw < other._raw

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self._degree})"


_TOKEN_RE = re.compile(r"\(([0-9,\s]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation, e.g. "(1,2)(3,4)"; "()" is the identity."""
    if degree < 1:
        raise ParseError("degree must be positive")
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty permutation string")
    rest = _TOKEN_RE.sub("", stripped)
    if rest.strip():
        raise ParseError(f"unparseable cycle notation: {text!r}")
    mapping = list(range(degree))
    seen: set[int] = set()
    for body in _TOKEN_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        try:
            points = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad cycle {body!r}") from exc
        if len(points) < 2:
            raise ParseError(f"cycle {body!r} needs at least two points")
        for p in points:
            if not 1 <= p <= degree:
                raise ParseError(f"point {p} outside 1..{degree}")
            if p - 1 in seen:
                raise ParseError(f"point {p} repeated")
            seen.add(p - 1)
        for a, b in zip(points, points[1:]):
            mapping[a - 1] = b - 1
        mapping[points[-1] - 1] = points[0] - 1
    raw = bytes(mapping) + _IDENT[degree:] if degree <= _BYTES_DEGREE else tuple(mapping)
    return Permutation._from_raw(raw, degree)


class _Chain:
    """Stabilizer chain; all mutation goes through extend()."""

    __slots__ = ("n", "ident", "base", "sgens", "trans")

    def __init__(self, n: int):
        self.n = n
        self.ident = _raw_identity(n)
        self.base: list[int] = []
        self.sgens: list[list] = []  # sgens[i]: [(g, g_inv)] fixing base[:i]
        self.trans: list[dict] = []  # trans[i]: {point: (t, t_inv)}, base[i]^t = point

    def order(self) -> int:
        o = 1
        for tr in self.trans:
            o *= len(tr)
        return o

    def _strip(self, g, start: int):
        for i in range(start, len(self.base)):
            p = g[self.base[i]]
            entry = self.trans[i].get(p)
            if entry is None:
                return g, i
            g = _raw_mult(g, entry[1])
        return g, len(self.base)

    def sift(self, g):
        return self._strip(g, 0)[0]

    def contains(self, g) -> bool:
        return self.sift(g) == self.ident

    def extend(self, g) -> bool:
        """Adjoin g; True iff the generated group grew."""
        h, lvl = self._strip(g, 0)
        if h == self.ident:
            return False
        self._insert(h, lvl)
        self._fixup(lvl)
        return True

    def _insert(self, h, depth: int):
        if depth == len(self.base):
            pt = min(i for i in range(self.n) if h[i] != i)
            self.base.append(pt)
            self.sgens.append([])
            self.trans.append({pt: (self.ident, self.ident)})
        pair = (h, _raw_inv(h, self.n))
        for i in range(depth + 1):
            self.sgens[i].append(pair)

    def _orbit(self, i: int):
        bp = self.base[i]
        gens = self.sgens[i]
        tr = {bp: (self.ident, self.ident)}
        queue = [bp]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            t, t_inv = tr[a]
            for s, s_inv in gens:
                b = s[a]
                if b not in tr:
                    tr[b] = (_raw_mult(t, s), _raw_mult(s_inv, t_inv))
                    queue.append(b)
        self.trans[i] = tr

    def _close(self, i: int):
        # first Schreier generator that fails to sift, or None when level i is closed
        tr = self.trans[i]
        gens = self.sgens[i]
        bi = self.base[i]
        for t, _ in list(tr.values()):
            for s, _ in gens:
                u = _raw_mult(t, s)
                t2_inv = tr[u[bi]][1]
                sch = _raw_mult(u, t2_inv)
                if sch == self.ident:
                    continue
                res, d = self._strip(sch, i + 1)
                if res != self.ident:
                    return res, d
        return None

    def _fixup(self, start: int):
        i = start
        while i >= 0:
            self._orbit(i)
            hit = self._close(i)
            if hit is None:
                i -= 1
            else:
                res, d = hit
                self._insert(res, d)
                i = d

    def elements_raw(self, cap: int) -> list:
        o = self.order()
        if o > cap:
            raise CapExceededError(f"group order {o} exceeds cap {cap}")
        cur = [self.ident]
        for i in reversed(range(len(self.base))):
            tr = self.trans[i]
            cur = [_raw_mult(h, tr[p][0]) for p in sorted(tr) for h in cur]
        return cur


def _chain_from_raws(n: int, raws: Iterable) -> _Chain:
    ch = _Chain(n)
    for r in raws:
        ch.extend(r)
    return ch


class PermGroup:
    """A finite permutation group generated by explicit permutations."""

    __slots__ = (
        "_degree",
        "_generators",
        "_chain",
        "_order_f",
        "_elements",
        "_classes",
        "_cache",
    )

    def __init__(self, generators: Sequence[Permutation]):
        gens = list(generators)
        if not gens:
            raise ValueError("at least one generator is required")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError("generators act on different point sets")
        self._degree = degree
        self._generators = tuple(gens)
        self._chain = _chain_from_raws(degree, (g._raw for g in gens))
        self._order_f = FactoredInteger.from_int(self._chain.order())
        self._elements = None
        self._classes = None
        self._cache = {}  # lazily filled by the analysis layer (sylow, radical, ...)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._generators

    @property
    def order(self) -> int:
        return self._order_f.value

    @property
    def order_factored(self) -> FactoredInteger:
        return self._order_f

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(p + 1 for p in self._chain.base)

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, g: Permutation) -> bool:
        if g.degree != self._degree:
            return False
        return self._chain.contains(g._raw)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def _gen_raws(self) -> list:
        return [g._raw for g in self._generators]

    def _elements_raw(self, cap: int = DEFAULT_CAP) -> list:
        if self._elements is None or len(self._elements) > cap:
            self._elements = self._chain.elements_raw(cap)
        return self._elements

    def elements(self, cap: int = DEFAULT_CAP) -> list[Permutation]:
        """All elements, in deterministic transversal-product order."""
        return [Permutation._from_raw(r, self._degree) for r in self._elements_raw(cap)]

    def subgroup(self, generators: Sequence[Permutation], check: bool = True) -> "PermGroup":
        if check:
            for g in generators:
                if not self.contains(g):
                    raise ValueError(f"{g!r} is not in the ambient group")
        return PermGroup(list(generators) or [self.identity()])

    def conjugacy_classes(self, cap: int = DEFAULT_CAP) -> "ConjugacyClassTable":
        if self._classes is None:
            elems = self._elements_raw(cap)
            n = self._degree
            gen_pairs = [(r, _raw_inv(r, n)) for r in self._gen_raws()]
            seen: set = set()
            rows = []
            for e in elems:
                if e in seen:
                    continue
                orbit = {e}
                queue = [e]
                while queue:
                    a = queue.pop()
                    for g, g_inv in gen_pairs:
                        b = _raw_conj(a, g, g_inv)
                        if b not in orbit:
                            orbit.add(b)
                            queue.append(b)
                seen |= orbit
                rows.append((min(orbit), len(orbit), _raw_order(e, n)))
            if sum(r[1] for r in rows) != self.order:
                raise RuntimeError("class sizes do not sum to the group order")
            rows.sort(key=lambda r: (r[2], r[1], r[0]))
            self._classes = ConjugacyClassTable(
                self,
                tuple(
                    ConjugacyClass(Permutation._from_raw(rep, n), size, ordr)
                    for rep, size, ordr in rows
                ),
            )
        return self._classes

    def __repr__(self) -> str:
        return f"PermGroup(degree={self._degree}, order={self.order})"


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    element_order: int


class ConjugacyClassTable:
    """Conjugacy classes with canonical (minimal) representatives, sorted by
    (element order, class size, representative)."""

    __slots__ = ("ambient", "classes")

    def __init__(self, ambient: PermGroup, classes: tuple[ConjugacyClass, ...]):
        self.ambient = ambient
        self.classes = classes

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[ConjugacyClass]:
        return iter(self.classes)

    def representatives(self) -> list[Permutation]:
        return [c.representative for c in self.classes]

    def class_members(self, representative: Permutation) -> "ElementSet":
        """The full conjugacy class of the given element, recomputed by orbit BFS."""
        n = self.ambient.degree
        gen_pairs = [(r, _raw_inv(r, n)) for r in self.ambient._gen_raws()]
        e = representative._raw
        orbit = {e}
        queue = [e]
        while queue:
            a = queue.pop()
            for g, g_inv in gen_pairs:
                b = _raw_conj(a, g, g_inv)
                if b not in orbit:
                    orbit.add(b)
                    queue.append(b)
        return ElementSet._from_raws(self.ambient, frozenset(orbit))


class ElementSet:
    """A set of elements inside a fixed ambient group."""

    __slots__ = ("ambient", "_raws")

    def __init__(self, ambient: PermGroup, members: Iterable[Permutation], check: bool = True):
        raws = set()
        for m in members:
            if check and not ambient.contains(m):
                raise ValueError(f"{m!r} is not in the ambient group")
            raws.add(m._raw)
        self.ambient = ambient
        self._raws = frozenset(raws)

    @classmethod
    def _from_raws(cls, ambient: PermGroup, raws: frozenset) -> "ElementSet":
        obj = object.__new__(cls)
        obj.ambient = ambient
        obj._raws = raws
        return obj

    def __len__(self) -> int:
        return len(self._raws)

    def __contains__(self, g: Permutation) -> bool:
        return g.degree == self.ambient.degree and g._raw in self._raws

    def __iter__(self) -> Iterator[Permutation]:
        n = self.ambient.degree
        return (Permutation._from_raw(r, n) for r in sorted(self._raws))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.ambient.degree == other.ambient.degree
            and self._raws == other._raws
        )

    def __hash__(self) -> int:
        return hash(self._raws)

    def conjugated(self, g: Permutation) -> "ElementSet":
        n = self.ambient.degree
        g_inv = _raw_inv(g._raw, n)
        return ElementSet._from_raws(
            self.ambient, frozenset(_raw_conj(r, g._raw, g_inv) for r in self._raws)
        )

    def __repr__(self) -> str:
        return f"ElementSet(size={len(self._raws)}, degree={self.ambient.degree})"


def group_from_generators(generators: Sequence[Permutation]) -> PermGroup:
    return PermGroup(generators)


def group_order(G: PermGroup) -> FactoredInteger:
    return G.order_factored


def group_contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def enumerate_elements(G: PermGroup, cap: int = DEFAULT_CAP) -> list[Permutation]:
    return G.elements(cap)


def subgroup_generated(ambient: PermGroup, generators: Sequence[Permutation]) -> PermGroup:
    return ambient.subgroup(generators)


def conjugacy_class_reps(G: PermGroup, cap: int = DEFAULT_CAP) -> ConjugacyClassTable:
    return G.conjugacy_classes(cap)


def _set_raws(S) -> tuple[int, frozenset]:
    """(degree, raw tables) from an ElementSet or any iterable of Permutation."""
    if isinstance(S, ElementSet):
        return S.ambient.degree, S._raws
    members = list(S)
    if not members:
        return 0, frozenset()
    degree = members[0].degree
    if any(p.degree != degree for p in members):
        raise DegreeMismatchError("mixed degrees in element collection")
    return degree, frozenset(p._raw for p in members)


def closure_test(S) -> bool:
    """True iff S is literally a subgroup: nonempty and |<S>| == |S|."""
    n, raws = _set_raws(S)
    if not raws:
        return False
    ch = _chain_from_raws(n, sorted(raws))
    return ch.order() == len(raws)


def group_from_element_set(S) -> PermGroup:
    """The subgroup generated by S, with a small deterministic generating set."""
    n, raws = _set_raws(S)
    if not raws:
        raise ValueError("cannot build a group from an empty element set")
    return _group_from_raws(n, sorted(raws))


def _group_from_raws(n: int, raws: Iterable) -> PermGroup:
    """Build a PermGroup from raw tables, keeping only chain-growing generators.

    The input order must be deterministic; pass sorted() output when the
    source is an unordered set.
    """
    ch = _Chain(n)
    kept = []
    for r in raws:
        if ch.extend(r):
            kept.append(r)
    if not kept:
        kept = [_raw_identity(n)]
    return PermGroup([Permutation._from_raw(r, n) for r in kept])

"""Finite groupoids given by explicit tables.

Conventions: ``tgt`` is the target (left) map and ``src`` the source (right)
map, and ``compose(a, b)`` is ``a ∘ b``, defined exactly when
``src[a] == tgt[b]``. All iteration happens in lexicographic id order so
that reported witnesses are stable.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Mapping

from .errors import BadParams, InvalidGroupoid, MalformedTable
from .report import ElemId, ReportBuilder, ValidationReport

PAIR_LETTERS = string.ascii_lowercase
GROUP_OBJECT = "*"


def pair_id(*parts: ElemId) -> ElemId:
    """Canonical id of a tuple of ids, e.g. ``pair_id("a", "b") == "(a,b)"``."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple[ElemId, ...]
    arrows: tuple[ElemId, ...]
    src: Mapping[ElemId, ElemId]
    tgt: Mapping[ElemId, ElemId]
    unit: Mapping[ElemId, ElemId]
    inv: Mapping[ElemId, ElemId]
    mul: frozenset[tuple[ElemId, ElemId, ElemId]]
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        objects = tuple(sorted(set(self.objects)))
        arrows = tuple(sorted(set(self.arrows)))
        for label, ids in (("objects", objects), ("arrows", arrows)):
            if any(not isinstance(x, str) or not x for x in ids):
                raise MalformedTable(f"{label}: ids must be non-empty strings", label)
        set_ = object.__setattr__
        set_(self, "objects", objects)
        set_(self, "arrows", arrows)
        obj_set, arr_set = set(objects), set(arrows)
        for label, mapping, keys, values in (
            ("src", self.src, arr_set, obj_set),
            ("tgt", self.tgt, arr_set, obj_set),
            ("unit", self.unit, obj_set, arr_set),
            ("inv", self.inv, arr_set, arr_set),
        ):
            mapping = dict(mapping)
            missing = sorted(keys - mapping.keys())
            if missing:
                raise MalformedTable(f"{label} is not total: no entry for {missing[0]!r}",
                                     label, missing[0])
            for k in sorted(mapping):
                if k not in keys:
                    raise MalformedTable(f"{label} references unknown id {k!r}", label, k)
                if mapping[k] not in values:
                    raise MalformedTable(f"{label}[{k!r}] references unknown id {mapping[k]!r}",
                                         label, mapping[k])
            set_(self, label, mapping)
        table: dict[tuple[ElemId, ElemId], ElemId] = {}
        mul = frozenset(tuple(t) for t in self.mul)
        for a, b, c in sorted(mul):
            for x in (a, b, c):
                if x not in arr_set:
                    raise MalformedTable(f"mul triple ({a}, {b}, {c}) references unknown id {x!r}",
                                         "mul", x)
            if table.setdefault((a, b), c) != c:
                raise MalformedTable(f"mul has conflicting triples for ({a}, {b})", "mul", a)
        set_(self, "mul", mul)
        set_(self, "_table", table)

    def compose(self, a: ElemId, b: ElemId) -> ElemId | None:
        """``a ∘ b`` or None when the table has no entry."""
        return self._table.get((a, b))

    @cached_property
    def arrows_by_tgt(self) -> dict[ElemId, tuple[ElemId, ...]]:
        out: dict[ElemId, list[ElemId]] = {x: [] for x in self.objects}
        for a in self.arrows:
            out[self.tgt[a]].append(a)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def arrows_by_src(self) -> dict[ElemId, tuple[ElemId, ...]]:
        out: dict[ElemId, list[ElemId]] = {x: [] for x in self.objects}
        for a in self.arrows:
            out[self.src[a]].append(a)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def unit_arrows(self) -> frozenset[ElemId]:
        return frozenset(self.unit.values())

    def composable_pairs(self):
        """Pairs ``(a, b)`` with ``src(a) == tgt(b)``, in lexicographic order."""
        for a in self.arrows:
            for b in self.arrows_by_tgt[self.src[a]]:
                yield a, b

    @cached_property
    def report(self) -> ValidationReport:
        return _validate(self)

    def renamed(self, name: str) -> FiniteGroupoid:
        return FiniteGroupoid(self.objects, self.arrows, self.src, self.tgt,
                              self.unit, self.inv, self.mul, name=name)

    def __repr__(self) -> str:
        return f"FiniteGroupoid({self.name!r}, objects={len(self.objects)}, arrows={len(self.arrows)})"


@dataclass(frozen=True)
class GroupoidHom:
    arrow_map: Mapping[ElemId, ElemId]
    object_map: Mapping[ElemId, ElemId]


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    """Exhaustively check the groupoid axioms.

    Law names: ``mul-domain``, ``mul-source-target``, ``associativity``,
    ``unit-source-target``, ``unit-law``, ``inverse-source-target``,
    ``inverse-law``, ``inverse-involution``. The result is cached on ``G``.
    """
    return G.report


def _validate(G: FiniteGroupoid) -> ValidationReport:
    rb = ReportBuilder()
    src, tgt, unit, inv = G.src, G.tgt, G.unit, G.inv

    for a, b in sorted(G._table):
        if src[a] != tgt[b]:
            rb.fail("mul-domain", a, b)
    for a, b in G.composable_pairs():
        c = G.compose(a, b)
        if c is None:
            rb.fail("mul-domain", a, b)
        elif tgt[c] != tgt[a] or src[c] != src[b]:
            rb.fail("mul-source-target", a, b)

    for a, b in G.composable_pairs():
        ab = G.compose(a, b)
        if ab is None:
            continue
        for c in G.arrows_by_tgt[src[b]]:
            bc = G.compose(b, c)
            if bc is None:
                continue
            if G.compose(ab, c) != G.compose(a, bc):
                rb.fail("associativity", a, b, c)
                break
        if rb.failed("associativity"):
            break

    for x in G.objects:
        u = unit[x]
        if src[u] != x or tgt[u] != x:
            rb.fail("unit-source-target", x)
    for a in G.arrows:
        if G.compose(a, unit[src[a]]) != a or G.compose(unit[tgt[a]], a) != a:
            rb.fail("unit-law", a)

    for a in G.arrows:
        b = inv[a]
        if src[b] != tgt[a] or tgt[b] != src[a]:
            rb.fail("inverse-source-target", a)
        if G.compose(a, b) != unit[tgt[a]] or G.compose(b, a) != unit[src[a]]:
            rb.fail("inverse-law", a)
        if inv[b] != a:
            rb.fail("inverse-involution", a)
    return rb.build()


def check_homomorphism(F: GroupoidHom, G1: FiniteGroupoid, G2: FiniteGroupoid) -> ValidationReport:
    """Check that ``F`` commutes with src, tgt, unit, inv and preserves mul."""
    amap, omap = dict(F.arrow_map), dict(F.object_map)
    for label, mapping, keys, values in (
        ("arrow_map", amap, G1.arrows, G2.arrows),
        ("object_map", omap, G1.objects, G2.objects),
    ):
        values = set(values)
        for k in keys:
            if k not in mapping:
                raise MalformedTable(f"{label} is not total: no entry for {k!r}")
            if mapping[k] not in values:
                raise MalformedTable(f"{label}[{k!r}] = {mapping[k]!r} is not in the codomain")

    rb = ReportBuilder()
    for a in G1.arrows:
        if omap[G1.src[a]] != G2.src[amap[a]]:
            rb.fail("source-preservation", a)
        if omap[G1.tgt[a]] != G2.tgt[amap[a]]:
            rb.fail("target-preservation", a)
    for x in G1.objects:
        if amap[G1.unit[x]] != G2.unit[omap[x]]:
            rb.fail("unit-preservation", x)
    for a in G1.arrows:
        if amap[G1.inv[a]] != G2.inv[amap[a]]:
            rb.fail("inverse-preservation", a)
    for a, b in G1.composable_pairs():
        ab = G1.compose(a, b)
        if ab is None:
            continue
        if G2.compose(amap[a], amap[b]) != amap[ab]:
            rb.fail("mul-preservation", a, b)
            break
    return rb.build()


def require_valid(G: FiniteGroupoid) -> None:
    report = validate_groupoid(G)
    if not report.ok:
        first = report.violations[0]
        raise InvalidGroupoid(f"{G.name} is not a groupoid: {first}", report)


# -- builders ---------------------------------------------------------------

def pair_groupoid(objects: Iterable[ElemId], name: str | None = None) -> FiniteGroupoid:
    """Pair groupoid: one arrow ``(x,y)`` from ``y`` to ``x`` for each pair."""
    objs = sorted(set(objects))
    if not objs:
        raise BadParams("pair groupoid needs at least one object")
    arrows = {(x, y): pair_id(x, y) for x in objs for y in objs}
    return FiniteGroupoid(
        objects=tuple(objs),
        arrows=tuple(arrows.values()),
        src={a: y for (x, y), a in arrows.items()},
        tgt={a: x for (x, y), a in arrows.items()},
        unit={x: arrows[x, x] for x in objs},
        inv={a: arrows[y, x] for (x, y), a in arrows.items()},
        mul=frozenset((arrows[x, y], arrows[y, z], arrows[x, z])
                      for x in objs for y in objs for z in objs),
        name=name or f"Pair({len(objs)})",
    )


def group_groupoid(elements: Iterable[ElemId], table: Mapping[tuple[ElemId, ElemId], ElemId],
                   name: str = "group") -> FiniteGroupoid:
    """One-object groupoid from a Cayley table ``{(a, b): a*b}``."""
    elems = sorted(set(elements))
    if not elems:
        raise BadParams("a group needs at least one element")
    elem_set = set(elems)
    for a, b in cartesian(elems, repeat=2):
        if table.get((a, b)) not in elem_set:
            raise BadParams(f"Cayley table is not closed at ({a}, {b})")
    for a, b, c in cartesian(elems, repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise BadParams(f"Cayley table is not associative at ({a}, {b}, {c})")
    units = [e for e in elems if all(table[e, a] == a == table[a, e] for a in elems)]
    if not units:
        raise BadParams("Cayley table has no identity element")
    e = units[0]
    inverse = {}
    for a in elems:
        found = [b for b in elems if table[a, b] == e == table[b, a]]
        if not found:
            raise BadParams(f"element {a!r} has no inverse")
        inverse[a] = found[0]
    return FiniteGroupoid(
        objects=(GROUP_OBJECT,),
        arrows=tuple(elems),
        src={a: GROUP_OBJECT for a in elems},
        tgt={a: GROUP_OBJECT for a in elems},
        unit={GROUP_OBJECT: e},
        inv=inverse,
        mul=frozenset((a, b, table[a, b]) for a, b in cartesian(elems, repeat=2)),
        name=name,
    )


def cyclic_group(k: int) -> FiniteGroupoid:
    """Z_k as a one-object groupoid with arrows ``"0" .. str(k-1)``."""
    if k < 1:
        raise BadParams("cyclic group order must be positive")
    elems = [str(i) for i in range(k)]
    table = {(str(i), str(j)): str((i + j) % k) for i in range(k) for j in range(k)}
    return group_groupoid(elems, table, name=f"Z{k}")


def fixture_pair(n: int) -> FiniteGroupoid:
    """Pair(n): the pair groupoid on objects ``a, b, c, ...``."""
    if not 1 <= n <= len(PAIR_LETTERS):
        raise BadParams(f"Pair(n) needs 1 <= n <= {len(PAIR_LETTERS)}")
    return pair_groupoid(PAIR_LETTERS[:n], name=f"Pair({n})")


def trivial_groupoid(objects: Iterable[ElemId], name: str | None = None) -> FiniteGroupoid:
    objs = tuple(sorted(set(objects)))
    if not objs:
        raise BadParams("trivial groupoid needs at least one object")
    ident = {x: x for x in objs}
    return FiniteGroupoid(objs, objs, ident, ident, ident, ident,
                          frozenset((x, x, x) for x in objs),
                          name=name or f"trivial({len(objs)})")


def product_groupoid(G1: FiniteGroupoid, G2: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product; ids are ``pair_id`` of the components."""
    amap = {(a, b): pair_id(a, b) for a in G1.arrows for b in G2.arrows}
    omap = {(x, y): pair_id(x, y) for x in G1.objects for y in G2.objects}
    mul = set()
    for a1, b1 in G1.composable_pairs():
        c1 = G1.compose(a1, b1)
        if c1 is None:
            continue
        for a2, b2 in G2.composable_pairs():
            c2 = G2.compose(a2, b2)
            if c2 is not None:
                mul.add((amap[a1, a2], amap[b1, b2], amap[c1, c2]))
    return FiniteGroupoid(
        objects=tuple(omap.values()),
        arrows=tuple(amap.values()),
        src={c: omap[G1.src[a], G2.src[b]] for (a, b), c in amap.items()},
        tgt={c: omap[G1.tgt[a], G2.tgt[b]] for (a, b), c in amap.items()},
        unit={z: amap[G1.unit[x], G2.unit[y]] for (x, y), z in omap.items()},
        inv={c: amap[G1.inv[a], G2.inv[b]] for (a, b), c in amap.items()},
        mul=frozenset(mul),
        name=f"{G1.name}×{G2.name}",
    )


def disjoint_union(G1: FiniteGroupoid, G2: FiniteGroupoid) -> FiniteGroupoid:
    """Disjoint union; ids of the summands are tagged ``0.`` and ``1.``."""
    src, tgt, unit, inv, mul = {}, {}, {}, {}, set()
    objects, arrows = [], []
    for tag, G in (("0.", G1), ("1.", G2)):
        objects += [tag + x for x in G.objects]
        arrows += [tag + a for a in G.arrows]
        for a in G.arrows:
            src[tag + a] = tag + G.src[a]
            tgt[tag + a] = tag + G.tgt[a]
            inv[tag + a] = tag + G.inv[a]
        for x in G.objects:
            unit[tag + x] = tag + G.unit[x]
        mul |= {(tag + a, tag + b, tag + c) for a, b, c in G.mul}
    return FiniteGroupoid(tuple(objects), tuple(arrows), src, tgt, unit, inv,
                          frozenset(mul), name=f"{G1.name}⊔{G2.name}")


def build_groupoid(kind: str, *args, **kwargs) -> FiniteGroupoid:
    """Dispatch to a builder by name.

    ``pair(objects)``, ``group(elements, table)``, ``trivial(objects)``,
    ``product(G1, G2)`` and ``disjoint_union(G1, G2)``. The result is
    validated before it is returned.
    """
    builders = {
        "pair": pair_groupoid,
        "group": group_groupoid,
        "trivial": trivial_groupoid,
        "product": product_groupoid,
        "disjoint_union": disjoint_union,
    }
    if kind not in builders:
        raise BadParams(f"unknown groupoid kind {kind!r}")
    if kind in ("product", "disjoint_union"):
        for g in args:
            if not isinstance(g, FiniteGroupoid):
                raise BadParams(f"{kind} takes two FiniteGroupoid arguments")
            require_valid(g)
    try:
        G = builders[kind](*args, **kwargs)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {kind}: {exc}") from exc
    require_valid(G)
    return G

"""Finite relations between labelled carriers.

A relation ``R: A -> B`` is a set of pairs in ``A × B``. ``compose_relations(R, S)``
is the composite "R then S" (written ``S ∘ R``); it also reports whether every
composite pair had a unique middle witness. Product carriers use ``pair_id``
for their elements, and orientation reversal is carried as metadata only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .errors import CarrierMismatch, InvalidGroupoid, MalformedRelation
from .fingrpd import FiniteGroupoid, pair_id, validate_groupoid
from .report import ElemId, ReportBuilder, ValidationReport


@dataclass(frozen=True)
class Carrier:
    name: str = field(compare=False)
    elements: frozenset[ElemId]
    reversed: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def bar(self) -> Carrier:
        """The same set with the orientation flag flipped."""
        return Carrier(self.name, self.elements, not self.reversed)

    def label(self) -> str:
        return f"{self.name}̅" if self.reversed else self.name


PT = Carrier("pt", frozenset({"pt"}))


@lru_cache(maxsize=256)
def _product_elements(A: frozenset[ElemId], B: frozenset[ElemId]) -> frozenset[ElemId]:
    return frozenset(pair_id(a, b) for a in A for b in B)


def product_carrier(A: Carrier, B: Carrier) -> Carrier:
    return Carrier(f"{A.label()}×{B.label()}", _product_elements(A.elements, B.elements))


@dataclass(frozen=True)
class FinRelation:
    dom: Carrier
    cod: Carrier
    pairs: frozenset[tuple[ElemId, ElemId]]

    def __post_init__(self):
        pairs = frozenset(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        dom, cod = self.dom.elements, self.cod.elements
        for a, b in pairs:
            if a not in dom or b not in cod:
                raise MalformedRelation(
                    f"pair ({a}, {b}) is not in {self.dom.label()} × {self.cod.label()}")

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[ElemId, ElemId]]:
        return sorted(self.pairs)

    def image(self, a: ElemId) -> set[ElemId]:
        return {b for x, b in self.pairs if x == a}

    def domain(self) -> set[ElemId]:
        return {a for a, _ in self.pairs}

    def range(self) -> set[ElemId]:
        return {b for _, b in self.pairs}

    def as_map(self) -> dict[ElemId, ElemId]:
        """The partial map this relation is the graph of; raises if multivalued."""
        out: dict[ElemId, ElemId] = {}
        for a, b in sorted(self.pairs):
            if out.setdefault(a, b) != b:
                raise MalformedRelation(f"relation is multivalued at {a!r}")
        return out


class Composition(NamedTuple):
    relation: FinRelation
    witness_unique: bool


RelationTriple = tuple[FinRelation, FinRelation, FinRelation]


def relation(dom: Carrier, cod: Carrier, pairs: Iterable[tuple[ElemId, ElemId]]) -> FinRelation:
    return FinRelation(dom, cod, frozenset(pairs))


def identity_relation(A: Carrier) -> FinRelation:
    return FinRelation(A, A, frozenset((a, a) for a in A.elements))


def graph_relation(dom: Carrier, cod: Carrier, mapping: Mapping[ElemId, ElemId]) -> FinRelation:
    return FinRelation(dom, cod, frozenset(mapping.items()))


def compose_relations(R: FinRelation, S: FinRelation) -> Composition:
    """``R`` then ``S``: pairs ``(a, c)`` with some ``b``, ``(a,b) ∈ R``, ``(b,c) ∈ S``."""
    if R.cod != S.dom:
        raise CarrierMismatch(
            f"cannot compose {R.dom.label()}→{R.cod.label()} with {S.dom.label()}→{S.cod.label()}")
    forward: dict[ElemId, list[ElemId]] = {}
    for b, c in S.pairs:
        forward.setdefault(b, []).append(c)
    counts: dict[tuple[ElemId, ElemId], int] = {}
    for a, b in R.pairs:
        for c in forward.get(b, ()):
            counts[a, c] = counts.get((a, c), 0) + 1
    unique = all(n == 1 for n in counts.values())
    return Composition(FinRelation(R.dom, S.cod, frozenset(counts)), unique)


def compose(*relations: FinRelation) -> FinRelation:
    """Left-to-right composite of a chain of relations, dropping diagnostics."""
    out = relations[0]
    for nxt in relations[1:]:
        out = compose_relations(out, nxt).relation
    return out


def transpose_relation(R: FinRelation) -> FinRelation:
    return FinRelation(R.cod, R.dom, frozenset((b, a) for a, b in R.pairs))


def product_relation(R: FinRelation, S: FinRelation) -> FinRelation:
    """``R × S: dom(R)×dom(S) -> cod(R)×cod(S)`` componentwise."""
    return FinRelation(
        product_carrier(R.dom, S.dom),
        product_carrier(R.cod, S.cod),
        frozenset((pair_id(a, c), pair_id(b, e)) for a, b in R.pairs for c, e in S.pairs),
    )


def swap_relation(A: Carrier, B: Carrier) -> FinRelation:
    """σ: A×B -> B×A exchanging components."""
    return FinRelation(product_carrier(A, B), product_carrier(B, A),
                       frozenset((pair_id(a, b), pair_id(b, a)) for a in A.elements for b in B.elements))


def diagonal_relation(A: Carrier, second: Carrier | None = None) -> FinRelation:
    """pt -> A×A picking out the diagonal; ``second`` may carry the barred copy."""
    second = second or A
    if second.elements != A.elements:
        raise CarrierMismatch("diagonal needs two copies of the same set")
    return FinRelation(PT, product_carrier(A, second),
                       frozenset(("pt", pair_id(a, a)) for a in A.elements))


def associator(A: Carrier, B: Carrier, C: Carrier) -> FinRelation:
    """(A×B)×C -> A×(B×C)."""
    return FinRelation(
        product_carrier(product_carrier(A, B), C),
        product_carrier(A, product_carrier(B, C)),
        frozenset((pair_id(pair_id(a, b), c), pair_id(a, pair_id(b, c)))
                  for a in A.elements for b in B.elements for c in C.elements),
    )


def left_unitor(A: Carrier) -> FinRelation:
    """A -> pt×A."""
    return FinRelation(A, product_carrier(PT, A), frozenset((a, pair_id("pt", a)) for a in A.elements))


def right_unitor(A: Carrier) -> FinRelation:
    """A -> A×pt."""
    return FinRelation(A, product_carrier(A, PT), frozenset((a, pair_id(a, "pt")) for a in A.elements))


@dataclass(frozen=True)
class RelationFlags:
    surjective: bool
    coinjective: bool
    map_like: bool
    total_on_dom: bool
    reduction: bool
    coreduction: bool


def classify_relation(R: FinRelation) -> RelationFlags:
    surjective = R.range() == set(R.cod.elements)
    total = R.domain() == set(R.dom.elements)
    coinjective = len(R.domain()) == len(R.pairs)
    injective = len(R.range()) == len(R.pairs)
    return RelationFlags(
        surjective=surjective,
        coinjective=coinjective,
        map_like=coinjective,
        total_on_dom=total,
        reduction=surjective and coinjective,
        coreduction=total and injective,
    )


def first_difference(lhs: FinRelation, rhs: FinRelation) -> tuple[ElemId, ElemId] | None:
    """Smallest pair in exactly one of the two relations, or None if equal."""
    diff = lhs.pairs ^ rhs.pairs
    return min(diff) if diff else None


def _expect_equal(rb: ReportBuilder, law: str, lhs: FinRelation, rhs: FinRelation) -> None:
    w = first_difference(lhs, rhs)
    if w is not None:
        rb.fail(law, *w)


def _chain(rb: ReportBuilder, label: str, *relations: FinRelation) -> FinRelation:
    out = relations[0]
    for i, nxt in enumerate(relations[1:], start=1):
        out, unique = compose_relations(out, nxt)
        rb.diagnose(f"{label}#{i}", unique)
    return out


def _check_signature(S: Carrier, m: FinRelation, e: FinRelation) -> None:
    SS = product_carrier(S, S)
    if m.dom != SS or m.cod != S:
        raise CarrierMismatch("product must be a relation S×S -> S")
    if e.dom != PT or e.cod != S:
        raise CarrierMismatch("unit must be a relation pt -> S")


def check_monoid(S: Carrier, m: FinRelation, e: FinRelation) -> ValidationReport:
    """Associativity and unit diagrams as exact relation equalities.

    Laws: ``associativity``, ``left-unit``, ``right-unit``. Diagnostics record
    witness uniqueness of every composition in the diagrams.
    """
    _check_signature(S, m, e)
    rb = ReportBuilder()
    ident = identity_relation(S)
    lhs = _chain(rb, "assoc:lhs", product_relation(m, ident), m)
    rhs = _chain(rb, "assoc:rhs", associator(S, S, S), product_relation(ident, m), m)
    _expect_equal(rb, "associativity", lhs, rhs)
    left = _chain(rb, "left-unit", left_unitor(S), product_relation(e, ident), m)
    _expect_equal(rb, "left-unit", left, ident)
    right = _chain(rb, "right-unit", right_unitor(S), product_relation(ident, e), m)
    _expect_equal(rb, "right-unit", right, ident)
    return rb.build()


def check_star_monoid(S: Carrier, m: FinRelation, e: FinRelation, s: FinRelation) -> ValidationReport:
    """Check that ``s`` is a strongly positive *-structure on ``(S, m, e)``.

    Laws: ``star-involution`` (s∘s = id), ``star-antihomomorphism``
    (m∘(s×s)∘σ = s∘m) and ``strong-positivity`` (m∘(id×s)∘diag = e).
    The positivity equality is checked on the outer square only.
    """
    _check_signature(S, m, e)
    if s.dom != S or s.cod != S:
        raise CarrierMismatch("*-structure must be a relation S -> S")
    flags = classify_relation(s)
    if not (flags.total_on_dom and flags.map_like):
        raise MalformedRelation("*-structure must be total and single valued")
    rb = ReportBuilder()
    ident = identity_relation(S)
    _expect_equal(rb, "star-involution", _chain(rb, "star-involution", s, s), ident)
    lhs = _chain(rb, "sigma:lhs", swap_relation(S.bar(), S.bar()), product_relation(s, s), m)
    rhs = _chain(rb, "sigma:rhs", m, s)
    _expect_equal(rb, "star-antihomomorphism", lhs, rhs)
    positive = _chain(rb, "positivity", diagonal_relation(S, S.bar()), product_relation(ident, s), m)
    _expect_equal(rb, "strong-positivity", positive, e)
    return rb.build()


def monoid_from_groupoid(G: FiniteGroupoid, carrier_name: str | None = None) -> RelationTriple:
    """The product, unit and *-structure relations of a valid groupoid."""
    report = validate_groupoid(G)
    if not report.ok:
        raise InvalidGroupoid(f"{G.name} is not a groupoid: {report.violations[0]}", report)
    S = Carrier(carrier_name or G.name, frozenset(G.arrows))
    m = FinRelation(product_carrier(S, S), S,
                    frozenset((pair_id(a, b), G.compose(a, b)) for a, b in G.composable_pairs()))
    e = FinRelation(PT, S, frozenset(("pt", u) for u in G.unit.values()))
    s = graph_relation(S, S, G.inv)
    return m, e, s

"""The core of a double groupoid as a leaf space, and its structure as relations.

Each of the four "coisotropic" subsets is the preimage of a unit set under
one side map:

========  =====================  ============================================
kind      subset                 leaf through ``s``
========  =====================  ============================================
X         top side is a unit     ``stack(s, h_identity(λ))``, ``tgt_H λ = m``
Y         right side is a unit   ``juxtapose(s, v_identity(λ))``, ``tgt_V λ = m``
Z         bottom side is a unit  ``stack(h_identity(λ), s)``, ``src_H λ = m``
W         left side is a unit    ``juxtapose(v_identity(λ), s)``, ``src_V λ = m``
========  =====================  ============================================

where ``m`` is the corner shared by the unit side and the side varied along
the leaf. X and Y leaves meet the core once; Z and W leaves meet the left-core
once, and the left-core is carried onto the core by both inverses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .dblgrpd import (
    DoubleGroupoid,
    _core,
    core_groupoid_bm,
    core_unit,
    require_valid_double,
)
from .errors import NotAPartition, NotInCoisotropic, SectionFailure
from .relalg import (
    PT,
    Carrier,
    FinRelation,
    classify_relation,
    check_monoid,
    check_star_monoid,
    compose_relations,
    first_difference,
    graph_relation,
    identity_relation,
    monoid_from_groupoid,
    product_relation,
    transpose_relation,
)
from .report import ElemId, ReportBuilder, ValidationReport


class CoisotropicKind(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"
    W = "W"

    @property
    def uses_left_core(self) -> bool:
        return self in (CoisotropicKind.Z, CoisotropicKind.W)


KINDS = tuple(CoisotropicKind)


def _kind(kind: CoisotropicKind | str) -> CoisotropicKind:
    return kind if isinstance(kind, CoisotropicKind) else CoisotropicKind(kind)


@dataclass(frozen=True)
class LeafPartition:
    """Leaves of one subset, smallest representative first.

    ``crossing[i]`` is where leaf ``i`` meets the core (X, Y) or the
    left-core (Z, W); ``section[i]`` is the matching core square.
    """

    kind: CoisotropicKind
    subset: tuple[ElemId, ...]
    leaves: tuple[tuple[ElemId, ...], ...]
    crossing: tuple[ElemId, ...]
    section: tuple[ElemId, ...]

    def leaf_of(self, s: ElemId) -> int:
        for i, leaf in enumerate(self.leaves):
            if s in leaf:
                return i
        raise NotInCoisotropic(f"{s} is not in the {self.kind.value} subset")

    def section_map(self) -> dict[ElemId, ElemId]:
        return {s: c for leaf, c in zip(self.leaves, self.section) for s in leaf}


# -- the four subsets and their leaves ------------------------------------

def _in_subset(D: DoubleGroupoid, kind: CoisotropicKind, s: ElemId) -> bool:
    if kind is CoisotropicKind.X:
        return D.top_side(s) in D.V.unit_arrows
    if kind is CoisotropicKind.Y:
        return D.right_side(s) in D.H.unit_arrows
    if kind is CoisotropicKind.Z:
        return D.bottom_side(s) in D.V.unit_arrows
    return D.left_side(s) in D.H.unit_arrows


def coisotropic(D: DoubleGroupoid, kind: CoisotropicKind | str) -> tuple[ElemId, ...]:
    require_valid_double(D)
    kind = _kind(kind)
    return tuple(s for s in D.squares if _in_subset(D, kind, s))


def _leaf(D: DoubleGroupoid, kind: CoisotropicKind, s: ElemId) -> frozenset[ElemId]:
    if kind is CoisotropicKind.X:
        m = D.V.src[D.top_side(s)]
        out = (D.stack(s, D.h_identity(lam)) for lam in D.H.arrows_by_tgt[m])
    elif kind is CoisotropicKind.Y:
        m = D.H.src[D.right_side(s)]
        out = (D.juxtapose(s, D.v_identity(lam)) for lam in D.V.arrows_by_tgt[m])
    elif kind is CoisotropicKind.Z:
        m = D.V.tgt[D.bottom_side(s)]
        out = (D.stack(D.h_identity(lam), s) for lam in D.H.arrows_by_src[m])
    else:
        m = D.H.tgt[D.left_side(s)]
        out = (D.juxtapose(D.v_identity(lam), s) for lam in D.V.arrows_by_src[m])
    leaf = frozenset(out)
    if None in leaf:
        raise SectionFailure(f"{kind.value}-leaf through {s} has an undefined composite", (s,))
    return leaf


def leaf(D: DoubleGroupoid, kind: CoisotropicKind | str, s: ElemId) -> frozenset[ElemId]:
    """The characteristic leaf through ``s``."""
    require_valid_double(D)
    kind = _kind(kind)
    if s not in D.top.src or not _in_subset(D, kind, s):
        raise NotInCoisotropic(f"{s} is not in the {kind.value} subset of {D.name}")
    return _leaf(D, kind, s)


def _crossing(D: DoubleGroupoid, kind: CoisotropicKind, s: ElemId) -> ElemId | None:
    """The point where the leaf through ``s`` meets the (left-)core."""
    if kind is CoisotropicKind.X:
        return D.stack(s, D.h_identity(D.H.inv[D.right_side(s)]))
    if kind is CoisotropicKind.Y:
        return D.juxtapose(s, D.v_identity(D.V.inv[D.top_side(s)]))
    if kind is CoisotropicKind.Z:
        return D.stack(D.h_identity(D.H.inv[D.left_side(s)]), s)
    return D.juxtapose(D.v_identity(D.V.inv[D.bottom_side(s)]), s)


def left_to_right_core(D: DoubleGroupoid, s: ElemId) -> ElemId:
    """Carry a left-core square to the core by the two inverses."""
    return D.left.inv[D.top.inv[s]]


def _section_point(D: DoubleGroupoid, kind: CoisotropicKind, s: ElemId) -> ElemId:
    p = _crossing(D, kind, s)
    if p is None:
        raise SectionFailure(f"{kind.value}-section of {s} is undefined", (s,))
    return left_to_right_core(D, p) if kind.uses_left_core else p


def _left_core(D: DoubleGroupoid) -> frozenset[ElemId]:
    v_units, h_units = D.V.unit_arrows, D.H.unit_arrows
    return frozenset(s for s in D.squares
                     if D.bottom_side(s) in v_units and D.left_side(s) in h_units)


def leaf_partition(D: DoubleGroupoid, kind: CoisotropicKind | str) -> LeafPartition:
    """Partition a subset into leaves and pick each leaf's core point.

    Raises NotAPartition if two leaves overlap without coinciding, and
    SectionFailure if a leaf does not meet the relevant core exactly once.
    """
    require_valid_double(D)
    kind = _kind(kind)
    subset = tuple(s for s in D.squares if _in_subset(D, kind, s))
    members = set(subset)
    target = _left_core(D) if kind.uses_left_core else frozenset(_core(D))
    assigned: dict[ElemId, int] = {}
    leaves, crossing, section = [], [], []
    for s in subset:
        if s in assigned:
            continue
        L = _leaf(D, kind, s)
        for t in sorted(L):
            if t not in members:
                raise NotAPartition(f"{kind.value}-leaf through {s} leaves the subset at {t}", (s, t))
            if t in assigned or _leaf(D, kind, t) != L:
                raise NotAPartition(f"{kind.value}-leaves through {s} and {t} overlap but differ", (s, t))
            assigned[t] = len(leaves)
        hits = sorted(L & target)
        if len(hits) != 1:
            raise SectionFailure(
                f"{kind.value}-leaf through {s} meets the core in {len(hits)} squares", (s,))
        if _crossing(D, kind, s) != hits[0]:
            raise SectionFailure(f"{kind.value}-section formula disagrees on the leaf through {s}", (s,))
        leaves.append(tuple(sorted(L)))
        crossing.append(hits[0])
        section.append(left_to_right_core(D, hits[0]) if kind.uses_left_core else hits[0])
    return LeafPartition(kind, subset, tuple(leaves), tuple(crossing), tuple(section))


# -- reduction relations --------------------------------------------------

def square_carrier(D: DoubleGroupoid) -> Carrier:
    return Carrier("D", frozenset(D.squares))


def core_carrier(D: DoubleGroupoid) -> Carrier:
    return Carrier("C", frozenset(_core(D)))


def reduction_relation(D: DoubleGroupoid, kind: CoisotropicKind | str = CoisotropicKind.X) -> FinRelation:
    """The relation ``D -> C`` sending each square of the subset to its core point."""
    require_valid_double(D)
    kind = _kind(kind)
    pairs = {(s, _section_point(D, kind, s)) for s in D.squares if _in_subset(D, kind, s)}
    return FinRelation(square_carrier(D), core_carrier(D), frozenset(pairs))


def coreduction_formula(D: DoubleGroupoid) -> FinRelation:
    """``C -> D``: each core square to every ``stack(c, h_identity(λ))``."""
    require_valid_double(D)
    pairs = set()
    for c in _core(D):
        m = D.V.src[D.top_side(c)]
        for lam in D.H.arrows_by_tgt[m]:
            pairs.add((c, D.stack(c, D.h_identity(lam))))
    return FinRelation(core_carrier(D), square_carrier(D), frozenset(pairs))


def coreduction_relation(D: DoubleGroupoid) -> FinRelation:
    """Transpose of the X reduction, checked against its explicit formula."""
    lam_t = transpose_relation(reduction_relation(D, CoisotropicKind.X))
    w = first_difference(lam_t, coreduction_formula(D))
    if w is not None:
        raise SectionFailure(f"transpose of the reduction disagrees with its formula at {w}", tuple(w))
    return lam_t


def h_identity_relation(D: DoubleGroupoid) -> FinRelation:
    """``pt -> D``: the image of the identity squares over ``H``."""
    return FinRelation(PT, square_carrier(D),
                       frozenset(("pt", D.h_identity(h)) for h in D.H.arrows))


def left_product_relation(D: DoubleGroupoid) -> FinRelation:
    m, _, _ = monoid_from_groupoid(D.left, carrier_name="D")
    return m


def left_inverse_relation(D: DoubleGroupoid) -> FinRelation:
    Dc = square_carrier(D)
    return graph_relation(Dc.bar(), Dc, D.left.inv)


class CoreStructure(NamedTuple):
    m: FinRelation
    e: FinRelation
    s: FinRelation
    diagnostics: tuple[tuple[str, bool], ...] = ()


def composed_core_structure(D: DoubleGroupoid) -> CoreStructure:
    """Product, unit and star on the core, obtained by composing relations:

    m = (Λᵗ×Λᵗ) then left product then Λ,  e = identity squares over H then Λ,
    s = Λᵗ then left inverse then Λ, with Λ the X reduction.
    """
    require_valid_double(D)
    lam = reduction_relation(D, CoisotropicKind.X)
    lam_t = coreduction_relation(D)
    diags = []

    def chain(label, *rels):
        out = rels[0]
        for i, nxt in enumerate(rels[1:], start=1):
            out, unique = compose_relations(out, nxt)
            diags.append((f"{label}#{i}", unique))
        return out

    m = chain("product", product_relation(lam_t, lam_t), left_product_relation(D), lam)
    e = chain("unit", h_identity_relation(D), lam)
    s = chain("star", lam_t, left_inverse_relation(D), lam)
    return CoreStructure(m, e, s, tuple(diags))


# -- identities and the comparison with the core groupoid ------------------

def _expect(rb: ReportBuilder, law: str, lhs: FinRelation, rhs: FinRelation) -> None:
    w = first_difference(lhs, rhs)
    if w is not None:
        rb.fail(law, *w)


def leaf_equivalence(D: DoubleGroupoid, kind: CoisotropicKind | str = CoisotropicKind.X) -> FinRelation:
    P = leaf_partition(D, kind)
    Dc = square_carrier(D)
    return FinRelation(Dc, Dc, frozenset((s, t) for L in P.leaves for s in L for t in L))


def core_units_relation(D: DoubleGroupoid) -> FinRelation:
    """``pt -> C``: the base ``M`` sitting in the core as its unit squares."""
    return FinRelation(PT, core_carrier(D), frozenset(("pt", core_unit(D, m)) for m in D.M))


def check_core_identities(D: DoubleGroupoid, star: FinRelation | None = None) -> ValidationReport:
    """Exact relation identities satisfied by the X reduction ``Λ``.

    Laws: ``section`` (Λ∘Λᵗ = id), ``leaf-equivalence`` (Λᵗ∘Λ relates
    squares on a common leaf), ``unit-image`` (Λ∘H = M), ``unit-leaf``
    (Λᵗ∘Λ∘H = H), ``star-intertwine`` (Λ∘ĩ = s∘Λ), ``star-involution``
    (s∘s = id) and ``leaf-preservation`` (the left inverse maps leaves onto
    leaves). ``star`` overrides the composed star relation.
    """
    require_valid_double(D)
    rb = ReportBuilder()
    lam = reduction_relation(D, CoisotropicKind.X)
    lam_t = coreduction_relation(D)
    C = core_carrier(D)
    Dc = square_carrier(D)
    s = star if star is not None else composed_core_structure(D).s
    H = h_identity_relation(D)
    inv = graph_relation(Dc, Dc, D.left.inv)

    def comp(R, S):
        return compose_relations(R, S).relation

    _expect(rb, "section", comp(lam_t, lam), identity_relation(C))
    _expect(rb, "leaf-equivalence", comp(lam, lam_t), leaf_equivalence(D, CoisotropicKind.X))
    unit_image = comp(H, lam)
    _expect(rb, "unit-image", unit_image, core_units_relation(D))
    _expect(rb, "unit-leaf", comp(unit_image, lam_t), H)
    _expect(rb, "star-intertwine", comp(inv, lam), comp(lam, s))
    _expect(rb, "star-involution", comp(s, s), identity_relation(C))

    P = leaf_partition(D, CoisotropicKind.X)
    leaves = set(frozenset(L) for L in P.leaves)
    for L in P.leaves:
        if frozenset(D.left.inv[t] for t in L) not in leaves:
            rb.fail("leaf-preservation", L[0])
            break
    return rb.build()


def compare_core_structures(D: DoubleGroupoid, alternate: bool = True) -> ValidationReport:
    """Compare the composed core structure with the core groupoid.

    Laws: ``core-product``, ``core-unit``, ``core-inverse``, the monoid and
    *-monoid laws prefixed ``monoid:`` and ``star:``, ``quotient-count:<K>``
    and ``quotient-section:<K>`` for each subset kind, and, when
    ``alternate`` is set, ``alternate:<law>`` for the same structure computed
    on the transposed double.
    """
    require_valid_double(D)
    rb = ReportBuilder()
    composed = composed_core_structure(D)
    for name, flag in composed.diagnostics:
        rb.diagnose(name, flag)
    C = core_carrier(D)
    bm_m, bm_e, bm_s = monoid_from_groupoid(core_groupoid_bm(D), carrier_name="C")
    _expect(rb, "core-product", composed.m, bm_m)
    _expect(rb, "core-unit", composed.e, bm_e)
    _expect(rb, "core-inverse", composed.s, bm_s)
    rb.extend(check_monoid(C, composed.m, composed.e), prefix="monoid:")
    flags = classify_relation(composed.s)
    if flags.map_like and flags.total_on_dom:
        rb.extend(check_star_monoid(C, composed.m, composed.e, composed.s), prefix="star:")
    else:
        bad = next(c for c in C if len(composed.s.image(c)) != 1)
        rb.fail("star:not-a-map", bad)

    core = set(C.elements)
    for kind in KINDS:
        P = leaf_partition(D, kind)
        if len(P.leaves) != len(core):
            rb.fail(f"quotient-count:{kind.value}", str(len(P.leaves)), str(len(core)))
        if set(P.section) != core or len(set(P.section)) != len(P.section):
            rb.fail(f"quotient-section:{kind.value}", *sorted(core ^ set(P.section))[:1])

    if alternate:
        T = D.transposed
        other = composed_core_structure(T)
        _expect(rb, "alternate:core-product", composed.m, other.m)
        _expect(rb, "alternate:core-unit", composed.e, other.e)
        _expect(rb, "alternate:core-inverse", composed.s, other.s)
    return rb.build()

"""Finite double groupoids.

A double groupoid is one set of squares ``D`` with two groupoid structures:

* ``top``: ``D ⇉ V`` (vertical stacking), with source = top side and
  target = bottom side of a square;
* ``left``: ``D ⇉ H`` (horizontal juxtaposition), with source = right side
  and target = left side;

over side groupoids ``V ⇉ M`` and ``H ⇉ M``. ``stack(s, t)`` puts ``t``
on top of ``s`` and ``juxtapose(s, t)`` puts ``t`` to the right of ``s``;
these are products in the top and left groupoids respectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import BadParams, CoreAxiomFailure, InvalidDouble, MalformedStructure, MalformedTable
from .fingrpd import (
    FiniteGroupoid,
    GroupoidHom,
    check_homomorphism,
    pair_groupoid,
    product_groupoid,
    require_valid,
    trivial_groupoid,
    validate_groupoid,
)
from .report import ElemId, ReportBuilder, ValidationReport


@dataclass(frozen=True)
class DoubleGroupoid:
    V: FiniteGroupoid
    H: FiniteGroupoid
    top: FiniteGroupoid
    left: FiniteGroupoid
    name: str = field(default="D", compare=False)

    def __post_init__(self):
        if self.top.arrows != self.left.arrows:
            raise MalformedStructure("top and left groupoids must share one set of squares")
        if self.top.objects != self.V.arrows:
            raise MalformedStructure("objects of the top groupoid must be the arrows of V")
        if self.left.objects != self.H.arrows:
            raise MalformedStructure("objects of the left groupoid must be the arrows of H")
        if self.V.objects != self.H.objects:
            raise MalformedStructure("V and H must share the base M")

    @property
    def squares(self) -> tuple[ElemId, ...]:
        return self.top.arrows

    @property
    def M(self) -> tuple[ElemId, ...]:
        return self.V.objects

    # sides of a square
    def top_side(self, s: ElemId) -> ElemId:
        return self.top.src[s]

    def bottom_side(self, s: ElemId) -> ElemId:
        return self.top.tgt[s]

    def right_side(self, s: ElemId) -> ElemId:
        return self.left.src[s]

    def left_side(self, s: ElemId) -> ElemId:
        return self.left.tgt[s]

    def stack(self, lower: ElemId, upper: ElemId) -> ElemId | None:
        return self.top.compose(lower, upper)

    def juxtapose(self, west: ElemId, east: ElemId) -> ElemId | None:
        return self.left.compose(west, east)

    def v_identity(self, v: ElemId) -> ElemId:
        """Unit of the top groupoid over ``v ∈ V``."""
        return self.top.unit[v]

    def h_identity(self, h: ElemId) -> ElemId:
        """Unit of the left groupoid over ``h ∈ H``."""
        return self.left.unit[h]

    @cached_property
    def report(self) -> ValidationReport:
        return _validate(self)

    @cached_property
    def transposed(self) -> DoubleGroupoid:
        T = DoubleGroupoid(V=self.H, H=self.V, top=self.left, left=self.top, name=f"{self.name}ᵗ")
        T.__dict__["transposed"] = self
        return T

    def __repr__(self) -> str:
        return f"DoubleGroupoid({self.name!r}, squares={len(self.squares)})"


@dataclass(frozen=True)
class SquareView:
    square: ElemId
    top_side: ElemId
    bottom_side: ElemId
    right_side: ElemId
    left_side: ElemId


def square_view(D: DoubleGroupoid, s: ElemId) -> SquareView:
    return SquareView(s, D.top_side(s), D.bottom_side(s), D.right_side(s), D.left_side(s))


def validate_double(D: DoubleGroupoid) -> ValidationReport:
    """Full axiom scan; cached on ``D``.

    Laws are prefixed by the structure they concern: ``V:``, ``H:``, ``top:``,
    ``left:`` for groupoid axioms, ``compat:<map>:`` for the homomorphism
    compatibilities, then ``interchange`` and ``double-source``. Interchange
    witnesses are ``(a, b, c, d)`` for the array with ``a`` bottom-left,
    ``b`` bottom-right, ``c`` top-left and ``d`` top-right.
    """
    return D.report


def require_valid_double(D: DoubleGroupoid) -> None:
    report = validate_double(D)
    if not report.ok:
        raise InvalidDouble(f"{D.name} is not a double groupoid: {report.violations[0]}", report)


def _homomorphisms(D: DoubleGroupoid):
    V, H, top, left = D.V, D.H, D.top, D.left
    # structure maps of the top groupoid, paired with those of H, are maps left -> V
    yield "top.src", GroupoidHom(top.src, H.src), left, V
    yield "top.tgt", GroupoidHom(top.tgt, H.tgt), left, V
    yield "top.unit", GroupoidHom(top.unit, H.unit), V, left
    yield "top.inv", GroupoidHom(top.inv, H.inv), left, left
    # and symmetrically for the left groupoid
    yield "left.src", GroupoidHom(left.src, V.src), top, H
    yield "left.tgt", GroupoidHom(left.tgt, V.tgt), top, H
    yield "left.unit", GroupoidHom(left.unit, V.unit), H, top
    yield "left.inv", GroupoidHom(left.inv, V.inv), top, top


def _validate(D: DoubleGroupoid) -> ValidationReport:
    rb = ReportBuilder()
    for label, G in (("V", D.V), ("H", D.H), ("top", D.top), ("left", D.left)):
        rb.extend(validate_groupoid(G), prefix=f"{label}:")
    for label, F, G1, G2 in _homomorphisms(D):
        try:
            rb.extend(check_homomorphism(F, G1, G2), prefix=f"compat:{label}:")
        except MalformedTable as exc:
            raise MalformedStructure(f"{label}: {exc}") from exc
    _scan_interchange(D, rb)
    _scan_double_source(D, rb)
    return rb.build()


def _scan_interchange(D: DoubleGroupoid, rb: ReportBuilder) -> None:
    by_left: dict[ElemId, list[ElemId]] = {}
    by_bottom: dict[ElemId, list[ElemId]] = {}
    by_bottom_left: dict[tuple[ElemId, ElemId], list[ElemId]] = {}
    for s in D.squares:
        by_left.setdefault(D.left_side(s), []).append(s)
        by_bottom.setdefault(D.bottom_side(s), []).append(s)
        by_bottom_left.setdefault((D.bottom_side(s), D.left_side(s)), []).append(s)
    stack, juxtapose = D.stack, D.juxtapose
    for a in D.squares:
        for b in by_left.get(D.right_side(a), ()):
            ab = juxtapose(a, b)
            if ab is None:
                continue
            for c in by_bottom.get(D.top_side(a), ()):
                ac = stack(a, c)
                if ac is None:
                    continue
                for d in by_bottom_left.get((D.top_side(b), D.right_side(c)), ()):
                    cd, bd = juxtapose(c, d), stack(b, d)
                    if cd is None or bd is None:
                        continue
                    lhs = stack(ab, cd)
                    rhs = juxtapose(ac, bd)
                    if lhs is None or lhs != rhs:
                        rb.fail("interchange", a, b, c, d)
                        return


def _scan_double_source(D: DoubleGroupoid, rb: ReportBuilder) -> None:
    hit = {(D.right_side(s), D.top_side(s)) for s in D.squares}
    for h in D.H.arrows:
        for v in D.V.arrows_by_src[D.H.src[h]]:
            if (h, v) not in hit:
                rb.fail("double-source", h, v)
                return


def transpose_double(D: DoubleGroupoid) -> DoubleGroupoid:
    """Swap the roles of top/left and of V/H."""
    require_valid_double(D)
    return D.transposed


def build_double(kind: str, G: FiniteGroupoid) -> DoubleGroupoid:
    """``dmain`` or ``dinertia`` double groupoid built from ``G``.

    dmain: squares are the arrows of G; the left and right sides carry G,
    the top and bottom are trivial.
    dinertia: squares are pairs ``(g,h)`` of arrows; the top is the pair
    groupoid on the arrows of G, the left is ``G × G`` over the pair
    groupoid of the objects.
    """
    require_valid(G)
    if kind == "dmain":
        D = DoubleGroupoid(
            V=G,
            H=trivial_groupoid(G.objects, name=f"trivial({G.name})"),
            top=trivial_groupoid(G.arrows, name=f"trivial({G.name})"),
            left=G,
            name=f"DMain({G.name})",
        )
    elif kind == "dinertia":
        D = DoubleGroupoid(
            V=G,
            H=pair_groupoid(G.objects, name=f"pair({G.name} objects)"),
            top=pair_groupoid(G.arrows, name=f"pair({G.name} arrows)"),
            left=product_groupoid(G, G),
            name=f"DInertia({G.name})",
        )
    else:
        raise BadParams(f"unknown double groupoid kind {kind!r}")
    require_valid_double(D)
    return D


def core_set(D: DoubleGroupoid) -> tuple[ElemId, ...]:
    """Squares whose top and right sides are both units."""
    require_valid_double(D)
    return _core(D)


def _core(D: DoubleGroupoid) -> tuple[ElemId, ...]:
    v_units, h_units = D.V.unit_arrows, D.H.unit_arrows
    return tuple(s for s in D.squares if D.top_side(s) in v_units and D.right_side(s) in h_units)


def left_core_set(D: DoubleGroupoid) -> tuple[ElemId, ...]:
    """Squares whose bottom and left sides are both units."""
    require_valid_double(D)
    v_units, h_units = D.V.unit_arrows, D.H.unit_arrows
    return tuple(s for s in D.squares if D.bottom_side(s) in v_units and D.left_side(s) in h_units)


def core_unit(D: DoubleGroupoid, m: ElemId) -> ElemId:
    return D.v_identity(D.V.unit[m])


def core_source(D: DoubleGroupoid, s: ElemId) -> ElemId:
    """Top-right corner of a core square."""
    return D.H.src[D.right_side(s)]


def core_target(D: DoubleGroupoid, s: ElemId) -> ElemId:
    """Bottom-left corner: target of the left side, equal to that of the bottom side."""
    return D.H.tgt[D.left_side(s)]


def core_product(D: DoubleGroupoid, s: ElemId, t: ElemId) -> ElemId:
    """Core product of ``s`` after ``t`` from the 2×2 array

        [ h_identity(left_side(t))   t                        ]
        [ s                          v_identity(bottom_side(t)) ]

    evaluated both ways round; the two must agree.
    """
    upper_left = D.h_identity(D.left_side(t))
    lower_right = D.v_identity(D.bottom_side(t))
    col_left = D.stack(s, upper_left)
    col_right = D.stack(lower_right, t)
    row_low = D.juxtapose(s, lower_right)
    row_up = D.juxtapose(upper_left, t)
    if None in (col_left, col_right, row_low, row_up):
        raise CoreAxiomFailure(f"core array for ({s}, {t}) is not composable")
    vh = D.juxtapose(col_left, col_right)
    hv = D.stack(row_low, row_up)
    if vh is None or vh != hv:
        raise CoreAxiomFailure(f"core array for ({s}, {t}) violates interchange")
    return vh


def core_inverse(D: DoubleGroupoid, s: ElemId) -> ElemId:
    """Left-groupoid inverse of ``s``, stacked under the identity square on
    the inverse of its left side."""
    out = D.stack(D.left.inv[s], D.h_identity(D.H.inv[D.left_side(s)]))
    if out is None:
        raise CoreAxiomFailure(f"core inverse of {s} is not composable")
    return out


def core_groupoid_bm(D: DoubleGroupoid) -> FiniteGroupoid:
    """The core as a groupoid over the base ``M``."""
    require_valid_double(D)
    core = _core(D)
    core_set_ = set(core)
    src, tgt = {}, {}
    for s in core:
        src[s] = core_source(D, s)
        tgt[s] = core_target(D, s)
        if tgt[s] != D.V.tgt[D.bottom_side(s)]:
            raise CoreAxiomFailure(f"bottom-left corner of {s} is not well defined")
    unit = {}
    for m in D.M:
        u = core_unit(D, m)
        if u != D.h_identity(D.H.unit[m]):
            raise CoreAxiomFailure(f"the two identity squares over {m} differ")
        unit[m] = u
    inv = {s: core_inverse(D, s) for s in core}
    mul = set()
    for s in core:
        for t in core:
            if src[s] == tgt[t]:
                mul.add((s, t, core_product(D, s, t)))
    for label, values in (("unit", unit.values()), ("inverse", inv.values()),
                          ("product", (c for _, _, c in mul))):
        stray = sorted(set(values) - core_set_)
        if stray:
            raise CoreAxiomFailure(f"core {label} {stray[0]} is not a core square")
    C = FiniteGroupoid(D.M, core, src, tgt, unit, inv, frozenset(mul), name=f"core({D.name})")
    report = validate_groupoid(C)
    if not report.ok:
        raise CoreAxiomFailure(f"core structure is not a groupoid: {report.violations[0]}")
    return C

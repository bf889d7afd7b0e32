from __future__ import annotations

from functools import lru_cache

import pytest

from dgc.dblgrpd import DoubleGroupoid, build_double
from dgc.fingrpd import (FiniteGroupoid, cyclic_group, disjoint_union, fixture_pair,
                         product_groupoid, trivial_groupoid)

# the seven groupoids named by the acceptance criteria
CORE_GROUPOIDS = ("Z2", "Z3", "Z4", "Pair(2)", "Pair(3)", "Pair(4)", "Pair(2)×Z2")
EXTRA_GROUPOIDS = ("Z1", "Pair(1)", "trivial(2)", "Pair(2)⊔Z3", "Z2×Z2")


@lru_cache(maxsize=None)
def groupoid(name: str) -> FiniteGroupoid:
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("Pair(") and name.endswith(")") and name[5:-1].isdigit():
        return fixture_pair(int(name[5:-1]))
    if name == "trivial(2)":
        return trivial_groupoid("ab", name="trivial(2)")
    if "×" in name:
        a, b = name.split("×")
        return product_groupoid(groupoid(a), groupoid(b))
    if "⊔" in name:
        a, b = name.split("⊔")
        return disjoint_union(groupoid(a), groupoid(b))
    raise KeyError(name)


@lru_cache(maxsize=None)
def double(kind: str, name: str, transposed: bool = False) -> DoubleGroupoid:
    D = build_double(kind, groupoid(name))
    return D.transposed if transposed else D


FIXTURE_DOUBLES = [(k, g, t) for g in CORE_GROUPOIDS + ("Pair(2)⊔Z3",)
                   for k in ("dmain", "dinertia") for t in (False, True)]


def double_id(case) -> str:
    kind, name, transposed = case
    return f"{kind}:{name}{':T' if transposed else ''}"


@pytest.fixture(params=CORE_GROUPOIDS + EXTRA_GROUPOIDS)
def any_groupoid(request) -> FiniteGroupoid:
    return groupoid(request.param)


@pytest.fixture(params=FIXTURE_DOUBLES, ids=double_id)
def any_double(request) -> DoubleGroupoid:
    return double(*request.param)


def with_table(G: FiniteGroupoid, **changes) -> FiniteGroupoid:
    """Copy of ``G`` with some tables replaced (no validation)."""
    fields = dict(objects=G.objects, arrows=G.arrows, src=G.src, tgt=G.tgt, unit=G.unit,
                  inv=G.inv, mul=G.mul, name=G.name)
    fields.update(changes)
    return FiniteGroupoid(**fields)


def redirect_mul(G: FiniteGroupoid, a: str, b: str, c: str) -> FiniteGroupoid:
    mul = {t for t in G.mul if t[:2] != (a, b)} | {(a, b, c)}
    return with_table(G, mul=frozenset(mul))


def delete_mul(G: FiniteGroupoid, a: str, b: str) -> FiniteGroupoid:
    return with_table(G, mul=frozenset(t for t in G.mul if t[:2] != (a, b)))


def relabel_arrows(G: FiniteGroupoid, perm: dict[str, str]) -> FiniteGroupoid:
    """Rename arrows by a permutation; objects are unchanged."""
    p = lambda a: perm.get(a, a)  # noqa: E731
    return with_table(
        G,
        arrows=tuple(p(a) for a in G.arrows),
        src={p(a): x for a, x in G.src.items()},
        tgt={p(a): x for a, x in G.tgt.items()},
        unit={x: p(u) for x, u in G.unit.items()},
        inv={p(a): p(b) for a, b in G.inv.items()},
        mul=frozenset((p(a), p(b), p(c)) for a, b, c in G.mul),
    )

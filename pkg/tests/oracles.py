"""Brute-force reference computations, written without the library's shortcuts.

Each oracle re-derives a quantity from raw tables by plain enumeration so the
tests compare two independent routes to the same answer.
"""

from __future__ import annotations

from itertools import product

from dgc.fingrpd import FiniteGroupoid, pair_id


def naive_compose(R, S) -> set[tuple[str, str]]:
    """Relation composite by looping over every (a, b, c) in the carriers."""
    out = set()
    for a in R.dom.elements:
        for b in R.cod.elements:
            if (a, b) not in R.pairs:
                continue
            for c in S.cod.elements:
                if (b, c) in S.pairs:
                    out.add((a, c))
    return out


def naive_witness_counts(R, S) -> dict[tuple[str, str], int]:
    counts = {}
    for a, b in R.pairs:
        for b2, c in S.pairs:
            if b == b2:
                counts[a, c] = counts.get((a, c), 0) + 1
    return counts


def is_groupoid(G: FiniteGroupoid) -> bool:
    """Axioms checked straight from the triple set ``mul``."""
    table = {(a, b): c for a, b, c in G.mul}
    if len(table) != len(G.mul):
        return False
    arrows = G.arrows
    for a, b in product(arrows, repeat=2):
        if ((a, b) in table) != (G.src[a] == G.tgt[b]):
            return False
        if (a, b) in table:
            c = table[a, b]
            if G.tgt[c] != G.tgt[a] or G.src[c] != G.src[b]:
                return False
    for a, b, c in product(arrows, repeat=3):
        if (a, b) in table and (b, c) in table:
            if table.get((table[a, b], c)) != table.get((a, table[b, c])):
                return False
    for x in G.objects:
        u = G.unit[x]
        if G.src[u] != x or G.tgt[u] != x:
            return False
    for a in arrows:
        if table.get((a, G.unit[G.src[a]])) != a or table.get((G.unit[G.tgt[a]], a)) != a:
            return False
        b = G.inv[a]
        if table.get((a, b)) != G.unit[G.tgt[a]] or table.get((b, a)) != G.unit[G.src[a]]:
            return False
    return True


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> set[frozenset]:
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return {frozenset(v) for v in out.values()}


def _subset(D, kind):
    vu, hu = set(D.V.unit.values()), set(D.H.unit.values())
    test = {
        "X": lambda s: D.top.src[s] in vu,
        "Y": lambda s: D.left.src[s] in hu,
        "Z": lambda s: D.top.tgt[s] in vu,
        "W": lambda s: D.left.tgt[s] in hu,
    }[kind]
    return [s for s in D.squares if test(s)]


def orbit_leaves(D, kind: str) -> set[frozenset]:
    """Leaves as connected components of the action of identity squares.

    X: stack any horizontal identity on top; Y: juxtapose any vertical
    identity on the right; Z and W are the mirror images. Every composable
    move is a generator, and classes are closed under repeated moves.
    """
    members = _subset(D, kind)
    uf = UnionFind(members)
    top, left = D.top, D.left
    h_ids = [left.unit[h] for h in D.H.arrows]
    v_ids = [top.unit[v] for v in D.V.arrows]
    for s in members:
        if kind == "X":
            moves = [top.compose(s, i) for i in h_ids if top.src[s] == top.tgt[i]]
        elif kind == "Y":
            moves = [left.compose(s, i) for i in v_ids if left.src[s] == left.tgt[i]]
        elif kind == "Z":
            moves = [top.compose(i, s) for i in h_ids if top.src[i] == top.tgt[s]]
        else:
            moves = [left.compose(i, s) for i in v_ids if left.src[i] == left.tgt[s]]
        for t in moves:
            assert t in uf.parent, f"move from {s} leaves the {kind} subset"
            uf.union(s, t)
    return uf.classes()


def brute_core(D) -> set[str]:
    vu, hu = set(D.V.unit.values()), set(D.H.unit.values())
    return {s for s in D.squares if D.top.src[s] in vu and D.left.src[s] in hu}


def leaf_picking_product(D) -> set[tuple[str, str, str]]:
    """Core product computed as ``c ∘ c' = core point of the leaf of d ∘̃ d'``.

    ``d'`` ranges over the X-leaf of ``c'`` and ``d`` over the X-leaf of
    ``c``; the result must not depend on the choice, and for each ``d'``
    exactly one ``d`` may be juxtaposable.
    """
    leaves = orbit_leaves(D, "X")
    core = brute_core(D)
    core_of = {}
    for L in leaves:
        (c,) = L & core
        for s in L:
            core_of[s] = c
    leaf_of_core = {min(L & core): L for L in leaves}
    triples = set()
    for c in core:
        for c2 in core:
            results = set()
            for d2 in leaf_of_core[c2]:
                partners = [d for d in leaf_of_core[c] if D.left.src[d] == D.left.tgt[d2]]
                assert len(partners) <= 1, (c, c2, d2, partners)
                for d in partners:
                    results.add(core_of[D.left.compose(d, d2)])
            assert len(results) <= 1, (c, c2, results)
            if results:
                triples.add((c, c2, results.pop()))
    return triples


# -- closed forms for the two example families ----------------------------

def dinertia_core(G) -> set[str]:
    return {pair_id(g, G.unit[G.src[g]]) for g in G.arrows}


def dinertia_x_leaves(G) -> set[frozenset]:
    return {frozenset(pair_id(g, G.unit[m]) for m in G.objects) for g in G.arrows}


def dinertia_core_product(G) -> set[tuple[str, str, str]]:
    return {(pair_id(g, G.unit[G.src[g]]), pair_id(h, G.unit[G.src[h]]),
             pair_id(G.compose(g, h), G.unit[G.src[h]]))
            for g, h in G.composable_pairs()}


def dinertia_y_section(G) -> dict[str, str]:
    """Y subset: (g, h) with src g = src h; the section is (g h⁻¹, 1)."""
    out = {}
    for g in G.arrows:
        for h in G.arrows_by_src[G.src[g]]:
            k = G.compose(g, G.inv[h])
            out[pair_id(g, h)] = pair_id(k, G.unit[G.src[k]])
    return out


def dinertia_z_section(G) -> dict[str, str]:
    """Z subset: (1, h); the section is (h⁻¹, 1)."""
    out = {}
    for m in G.objects:
        for h in G.arrows:
            k = G.inv[h]
            out[pair_id(G.unit[m], h)] = pair_id(k, G.unit[G.src[k]])
    return out


def dinertia_w_section(G) -> dict[str, str]:
    """W subset: (g, h) with tgt g = tgt h; the section is (h⁻¹ g, 1)."""
    out = {}
    for g in G.arrows:
        for h in G.arrows_by_tgt[G.tgt[g]]:
            k = G.compose(G.inv[h], g)
            out[pair_id(g, h)] = pair_id(k, G.unit[G.src[k]])
    return out


def dmain_leaves(G, kind: str) -> set[frozenset]:
    if kind in ("X", "Z"):
        return {frozenset([u]) for u in G.unit.values()}
    by = G.tgt if kind == "Y" else G.src
    out = {}
    for a in G.arrows:
        out.setdefault(by[a], set()).add(a)
    return {frozenset(v) for v in out.values()}

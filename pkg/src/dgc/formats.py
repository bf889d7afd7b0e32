"""Reading and writing structures: canonical JSON, builder shorthand, DOT.

Canonical JSON for a groupoid has exactly the keys ``objects``, ``arrows``,
``src``, ``tgt``, ``unit``, ``inv`` and ``mul``; id lists are sorted and
``mul`` is a sorted list of ``[a, b, a∘b]`` triples. A double groupoid has
the keys ``squares``, ``M``, ``V``, ``H``, ``top`` and ``left``, the last
four in groupoid form. Output is ``json.dumps(..., sort_keys=True,
indent=2)`` plus a trailing newline, so equal structures give equal bytes.

Shorthand is ``kind:arg(:arg)*`` with kinds ``pair:<n>``, ``group:z<k>``,
``trivial:<n>``, ``product:<g>:<g>``, ``disjoint_union:<g>:<g>``,
``dmain:<g>``, ``dinertia:<g>`` and ``transpose:<double>``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .dblgrpd import DoubleGroupoid, _core, build_double, validate_double
from .errors import (BadParams, InvalidGroupoid, MalformedStructure, MalformedTable,
                     ParseError, UnsupportedFormat, ValidationError)
from .fingrpd import (PAIR_LETTERS, FiniteGroupoid, build_groupoid, cyclic_group,
                      fixture_pair, validate_groupoid)
from .report import ValidationReport

Structure = Union[FiniteGroupoid, DoubleGroupoid]

GROUPOID_KEYS = ("objects", "arrows", "src", "tgt", "unit", "inv", "mul")
DOUBLE_KEYS = ("squares", "M", "V", "H", "top", "left")
SHORTHAND_KINDS = ("pair", "group", "trivial", "product", "disjoint_union",
                   "dmain", "dinertia", "transpose")
CORE_FILL = "lightgoldenrod"


# -- canonical JSON -------------------------------------------------------

def groupoid_to_dict(G: FiniteGroupoid) -> dict[str, Any]:
    return {
        "objects": list(G.objects),
        "arrows": list(G.arrows),
        "src": dict(G.src),
        "tgt": dict(G.tgt),
        "unit": dict(G.unit),
        "inv": dict(G.inv),
        "mul": [list(t) for t in sorted(G.mul)],
    }


def double_to_dict(D: DoubleGroupoid) -> dict[str, Any]:
    return {
        "squares": list(D.squares),
        "M": list(D.M),
        "V": groupoid_to_dict(D.V),
        "H": groupoid_to_dict(D.H),
        "top": groupoid_to_dict(D.top),
        "left": groupoid_to_dict(D.left),
    }


def to_json(X: Structure) -> str:
    data = double_to_dict(X) if isinstance(X, DoubleGroupoid) else groupoid_to_dict(X)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _line_of(text: str, ident: str | None) -> int | None:
    if ident is None:
        return None
    needle = json.dumps(ident, ensure_ascii=False)
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def _require_keys(data: Any, keys: tuple[str, ...], where: str) -> None:
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", field=where or None)
    for key in keys:
        if key not in data:
            raise ParseError("missing required key", field=f"{where}{key}")
    extra = sorted(set(data) - set(keys))
    if extra:
        raise ParseError("unexpected key", field=f"{where}{extra[0]}")


def _id_list(value: Any, field: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError("expected a list of string ids", field=field)
    if len(set(value)) != len(value):
        raise ParseError("duplicate id", field=field)
    return value


def _id_map(value: Any, field: str) -> dict[str, str]:
    if not isinstance(value, dict) or not all(isinstance(v, str) for v in value.values()):
        raise ParseError("expected an object mapping ids to ids", field=field)
    return value


def _groupoid_from_dict(data: Any, text: str, where: str, name: str) -> FiniteGroupoid:
    _require_keys(data, GROUPOID_KEYS, where)
    mul = data["mul"]
    if not isinstance(mul, list) or not all(
            isinstance(t, list) and len(t) == 3 and all(isinstance(x, str) for x in t) for t in mul):
        raise ParseError("expected a list of [a, b, a∘b] id triples", field=f"{where}mul")
    try:
        return FiniteGroupoid(
            objects=tuple(_id_list(data["objects"], f"{where}objects")),
            arrows=tuple(_id_list(data["arrows"], f"{where}arrows")),
            src=_id_map(data["src"], f"{where}src"),
            tgt=_id_map(data["tgt"], f"{where}tgt"),
            unit=_id_map(data["unit"], f"{where}unit"),
            inv=_id_map(data["inv"], f"{where}inv"),
            mul=frozenset(tuple(t) for t in mul),
            name=name,
        )
    except MalformedTable as exc:
        raise ParseError(str(exc), line=_line_of(text, exc.ident),
                         field=f"{where}{exc.field}" if exc.field else None) from exc


def _double_from_dict(data: dict, text: str, name: str) -> DoubleGroupoid:
    _require_keys(data, DOUBLE_KEYS, "")
    parts = {key: _groupoid_from_dict(data[key], text, f"{key}.", f"{name}.{key}")
             for key in ("V", "H", "top", "left")}
    squares = tuple(sorted(_id_list(data["squares"], "squares")))
    base = tuple(sorted(_id_list(data["M"], "M")))
    if squares != parts["top"].arrows:
        raise ParseError("squares must be the arrows of top and left", field="squares")
    if base != parts["V"].objects:
        raise ParseError("M must be the objects of V and H", field="M")
    try:
        return DoubleGroupoid(name=name, **parts)
    except MalformedStructure as exc:
        raise ParseError(str(exc), field="squares") from exc


def from_json(text: str, name: str = "input") -> Structure:
    """Parse canonical JSON without validating the axioms."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if isinstance(data, dict) and "squares" in data:
        return _double_from_dict(data, text, name)
    return _groupoid_from_dict(data, text, "", name)


# -- shorthand ------------------------------------------------------------

def _positive_int(token: str, kind: str) -> int:
    if not token.isdigit() or int(token) < 1:
        raise ParseError(f"{kind} expects a positive integer, got {token!r}", line=1, field=kind)
    return int(token)


def _take(tokens: list[str], kind: str) -> str:
    if not tokens:
        raise ParseError(f"{kind} is missing an argument", line=1, field=kind)
    return tokens.pop(0)


def _parse_groupoid_term(tokens: list[str]) -> FiniteGroupoid:
    X = _parse_term(tokens)
    if not isinstance(X, FiniteGroupoid):
        raise ParseError("expected a groupoid, got a double groupoid", line=1, field=X.name)
    return X


def _parse_term(tokens: list[str]) -> Structure:
    kind = _take(tokens, "shorthand")
    try:
        if kind == "pair":
            return fixture_pair(_positive_int(_take(tokens, kind), kind))
        if kind == "group":
            arg = _take(tokens, kind)
            if not (arg.startswith("z") and arg[1:].isdigit()):
                raise ParseError(f"group expects z<k>, got {arg!r}", line=1, field=kind)
            return cyclic_group(_positive_int(arg[1:], kind))
        if kind == "trivial":
            n = _positive_int(_take(tokens, kind), kind)
            if n > len(PAIR_LETTERS):
                raise ParseError(f"trivial supports at most {len(PAIR_LETTERS)} objects",
                                 line=1, field=kind)
            return build_groupoid("trivial", PAIR_LETTERS[:n], name=f"trivial({n})")
        if kind in ("product", "disjoint_union"):
            first = _parse_groupoid_term(tokens)
            second = _parse_groupoid_term(tokens)
            return build_groupoid(kind, first, second)
        if kind in ("dmain", "dinertia"):
            return build_double(kind, _parse_groupoid_term(tokens))
        if kind == "transpose":
            inner = _parse_term(tokens)
            if not isinstance(inner, DoubleGroupoid):
                raise ParseError("transpose expects a double groupoid", line=1, field=kind)
            return inner.transposed
    except (BadParams, InvalidGroupoid) as exc:
        raise ParseError(str(exc), line=1, field=kind) from exc
    raise ParseError(f"unknown shorthand kind {kind!r}", line=1, field=kind)


def from_shorthand(text: str) -> Structure:
    tokens = text.strip().split(":")
    X = _parse_term(tokens)
    if tokens:
        raise ParseError(f"unexpected trailing arguments {':'.join(tokens)!r}", line=1)
    return X


# -- entry points ---------------------------------------------------------

def _structure_report(X: Structure) -> ValidationReport:
    return validate_double(X) if isinstance(X, DoubleGroupoid) else validate_groupoid(X)


def parse_text(text: str, name: str = "input", validate: bool = True) -> Structure:
    body = text.strip()
    X = from_json(text, name) if body.startswith("{") else from_shorthand(body)
    if validate:
        report = _structure_report(X)
        if not report.ok:
            raise ValidationError(f"{X.name} failed validation: {report.violations[0]}", report)
    return X


def parse_input(path: str | Path, validate: bool = True) -> Structure:
    """Load a structure from a file, or from an inline shorthand string.

    A ``path`` naming no file is read as shorthand itself, so
    ``parse_input("dinertia:pair:2")`` works without a file on disk.
    Raises ParseError (with line and field where known) for malformed input,
    OSError when an existing file cannot be read, and ValidationError
    carrying the report when ``validate`` is set and an axiom fails.
    """
    p = Path(path)
    if p.is_file():
        try:
            text = p.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{p} is not UTF-8") from exc
        return parse_text(text, name=p.stem, validate=validate)
    text = str(path)
    if text.split(":", 1)[0] not in SHORTHAND_KINDS:
        raise ParseError(f"no such file and not a shorthand form: {text!r}")
    return parse_text(text, validate=validate)


# -- DOT ------------------------------------------------------------------

def _quote(ident: str) -> str:
    return '"' + ident.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _generator_edges(G: FiniteGroupoid) -> list[tuple[str, str, str]]:
    units = G.unit_arrows
    return [(a, b, G.compose(a, b)) for a, b in G.composable_pairs()
            if a not in units and b not in units and G.compose(a, b) is not None]


def _double_dot(D: DoubleGroupoid) -> str:
    core = set(_core(D))
    lines = [f"digraph {_quote(D.name)} {{", "  node [shape=box];"]
    for s in D.squares:
        extra = f', class="core", style=filled, fillcolor="{CORE_FILL}"' if s in core else ""
        lines.append(f"  {_quote(s)} [label={_quote(s)}{extra}];")
    for style, G in (("solid", D.top), ("dashed", D.left)):
        for a, b, c in _generator_edges(G):
            lines.append(f"  {_quote(a)} -> {_quote(b)} [style={style}, label={_quote(c)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _groupoid_dot(G: FiniteGroupoid) -> str:
    lines = [f"digraph {_quote(G.name)} {{", "  node [shape=circle];"]
    lines += [f"  {_quote(x)};" for x in G.objects]
    for a in G.arrows:
        if a not in G.unit_arrows:
            lines.append(f"  {_quote(G.src[a])} -> {_quote(G.tgt[a])} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_structure(X: Structure, format: str) -> str:
    """Render ``X`` as canonical ``json`` or as a ``dot`` graph.

    For a double groupoid the graph has one node per square with core
    squares filled, a solid edge ``a -> b`` labelled ``a∘b`` for each
    vertically stackable pair of non-identity squares and a dashed edge for
    each horizontally juxtaposable pair. A groupoid is drawn as its objects
    with one edge per non-unit arrow, source to target.
    """
    if format == "json":
        return to_json(X)
    if format == "dot":
        return _double_dot(X) if isinstance(X, DoubleGroupoid) else _groupoid_dot(X)
    raise UnsupportedFormat(f"cannot export as {format!r}; choose json or dot")

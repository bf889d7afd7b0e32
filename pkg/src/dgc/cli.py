"""Command-line front end: ``dgc <command> [options] <input>``.

Commands are ``validate``, ``core``, ``leaves``, ``reduce``, ``check`` and
``export``. The input is a JSON file or a shorthand form such as
``dinertia:pair:2``. Exit status is 0 when every stage is clean, 1 when a
law is violated and 2 for unreadable input or a bad invocation. The report
is a pure function of the input, so repeated runs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .corered import (KINDS, CoisotropicKind, check_core_identities, classify_relation,
                      compare_core_structures, core_carrier, leaf_partition, reduction_relation)
from .dblgrpd import DoubleGroupoid, _core, core_groupoid_bm, square_view, validate_double
from .errors import DGCError, ParseError, UnsupportedFormat, WitnessedError
from .fingrpd import FiniteGroupoid, validate_groupoid
from .formats import Structure, export_structure, parse_input
from .relalg import check_monoid, check_star_monoid, monoid_from_groupoid
from .report import ValidationReport, Violation, format_witness

COMMANDS = ("validate", "core", "leaves", "reduce", "check", "export")
FORMATS = ("text", "json", "dot")
EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(DGCError):
    """The invocation itself is inconsistent."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    kind: CoisotropicKind | None = None
    format: str = "text"
    fail_fast: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if isinstance(self.kind, str):
            try:
                object.__setattr__(self, "kind", CoisotropicKind(self.kind))
            except ValueError:
                raise UsageError(f"unknown subset kind {self.kind!r}") from None
        if self.command in ("leaves", "reduce") and self.kind is None:
            raise UsageError(f"{self.command} requires --kind")
        if self.command == "export" and self.format == "text":
            raise UsageError("export supports --format json or dot")
        if self.command != "export" and self.format == "dot":
            raise UsageError("--format dot is only available for export")


@dataclass
class Stage:
    name: str
    lines: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations and not self.skipped

    def absorb(self, report: ValidationReport, prefix: str = "", fail_fast: bool = False) -> None:
        found = [Violation(prefix + v.law, v.witness) for v in report.violations]
        self.violations.extend(found[:1] if fail_fast else found)

    def fail(self, law: str, witness: tuple[str, ...] = ()) -> None:
        self.violations.append(Violation(law, tuple(witness)))


def _describe(X: Structure) -> list[str]:
    if isinstance(X, DoubleGroupoid):
        return [f"structure: double groupoid {X.name}",
                f"squares: {len(X.squares)}, base: {len(X.M)}, "
                f"V arrows: {len(X.V.arrows)}, H arrows: {len(X.H.arrows)}"]
    return [f"structure: groupoid {X.name}",
            f"objects: {len(X.objects)}, arrows: {len(X.arrows)}"]


def _validate_stage(X: Structure, config: RunConfig) -> Stage:
    stage = Stage("VALIDATE", _describe(X))
    report = validate_double(X) if isinstance(X, DoubleGroupoid) else validate_groupoid(X)
    stage.absorb(report, fail_fast=config.fail_fast)
    return stage


def _guarded(stage: Stage, law: str, action: Callable[[], None]) -> Stage:
    try:
        action()
    except WitnessedError as exc:
        stage.lines.append(f"error: {exc}")
        stage.fail(law, exc.witness)
    except DGCError as exc:
        stage.lines.append(f"error: {exc}")
        stage.fail(law)
    return stage


def _leaf_summary(D: DoubleGroupoid, kind: CoisotropicKind, stage: Stage) -> int:
    P = leaf_partition(D, kind)
    sizes = "/".join(str(len(L)) for L in P.leaves)
    stage.lines.append(f"{kind.value}: subset {len(P.subset)}, leaves {len(P.leaves)}, "
                       f"sizes {sizes}, one core point per leaf")
    return len(P.leaves)


def _leaves_all_stage(D: DoubleGroupoid, counts: dict[str, int], config: RunConfig) -> Stage:
    stage = Stage("LEAVES")
    for kind in KINDS:
        _guarded(stage, f"leaf-partition:{kind.value}",
                 lambda kind=kind: counts.__setitem__(kind.value, _leaf_summary(D, kind, stage)))
        if config.fail_fast and stage.violations:
            break
    return stage


def _identities_stage(D: DoubleGroupoid, config: RunConfig) -> Stage:
    stage = Stage("IDENTITIES", ["Λ∘Λᵗ = id, Λᵗ∘Λ = leaf equivalence, Λ∘H = M, Λᵗ∘Λ∘H = H, "
                                 "Λ∘ĩ = s∘Λ, s∘s = id, ĩ preserves leaves"])
    return _guarded(stage, "core-identities",
                    lambda: stage.absorb(check_core_identities(D), fail_fast=config.fail_fast))


def _compare_stage(D: DoubleGroupoid, config: RunConfig) -> Stage:
    stage = Stage("COMPARE", ["composed (m, e, s) against the core groupoid; monoid and "
                              "*-monoid laws; quotient counts; transposed construction"])

    def run():
        report = compare_core_structures(D)
        stage.absorb(report, fail_fast=config.fail_fast)
        unique = sum(1 for _, flag in report.diagnostics if flag)
        stage.lines.append(f"unique-witness compositions: {unique}/{len(report.diagnostics)}")

    return _guarded(stage, "core-comparison", run)


def _star_monoid_stage(G: FiniteGroupoid, config: RunConfig) -> Stage:
    stage = Stage("STAR-MONOID", ["product, unit and inverse as relations"])

    def run():
        m, e, s = monoid_from_groupoid(G)
        stage.absorb(check_monoid(m.cod, m, e), "monoid:", config.fail_fast)
        stage.absorb(check_star_monoid(m.cod, m, e, s), "star:", config.fail_fast)

    return _guarded(stage, "star-monoid", run)


def _core_stage(D: DoubleGroupoid) -> Stage:
    stage = Stage("CORE")

    def run():
        C = core_groupoid_bm(D)
        stage.lines.append(f"core squares: {len(C.arrows)} over {len(C.objects)} objects")
        for s in C.arrows:
            v = square_view(D, s)
            stage.lines.append(f"{s}: {C.src[s]} -> {C.tgt[s]}  inverse {C.inv[s]}  "
                               f"(top {v.top_side}, bottom {v.bottom_side}, "
                               f"right {v.right_side}, left {v.left_side})")
        for x in C.objects:
            stage.lines.append(f"unit {x}: {C.unit[x]}")
        for a, b, c in sorted(C.mul):
            stage.lines.append(f"{a} ∘ {b} = {c}")

    return _guarded(stage, "core-groupoid", run)


def _leaves_stage(D: DoubleGroupoid, kind: CoisotropicKind) -> Stage:
    stage = Stage(f"LEAVES {kind.value}")

    def run():
        P = leaf_partition(D, kind)
        stage.lines.append(f"subset: {len(P.subset)} squares, leaves: {len(P.leaves)}")
        for i, (L, hit, c) in enumerate(zip(P.leaves, P.crossing, P.section), start=1):
            via = f" via {hit}" if hit != c else ""
            stage.lines.append(f"leaf {i} (size {len(L)}): {', '.join(L)} | core {c}{via}")

    return _guarded(stage, f"leaf-partition:{kind.value}", run)


def _reduce_stage(D: DoubleGroupoid, kind: CoisotropicKind) -> Stage:
    stage = Stage(f"REDUCE {kind.value}")

    def run():
        R = reduction_relation(D, kind)
        flags = classify_relation(R)
        names = ("surjective", "coinjective", "map_like", "total_on_dom", "reduction", "coreduction")
        stage.lines.append(", ".join(f"{n}={'yes' if getattr(flags, n) else 'no'}" for n in names))
        stage.lines.append(f"pairs: {len(R)} from {len(R.dom)} squares onto {len(core_carrier(D))} core squares")
        stage.lines += [f"{a} -> {b}" for a, b in R.sorted_pairs()]
        if not flags.reduction:
            stage.fail(f"reduction:{kind.value}")

    return _guarded(stage, f"reduction:{kind.value}", run)


def _run_stages(X: Structure, config: RunConfig) -> tuple[list[Stage], str | None]:
    stages = [_validate_stage(X, config)]
    is_double = isinstance(X, DoubleGroupoid)
    if config.command in ("core", "leaves", "reduce") and not is_double:
        raise UsageError(f"{config.command} needs a double groupoid")
    if config.command == "validate":
        return stages, None

    planned: list[tuple[str, Callable[[], Stage]]]
    counts: dict[str, int] = {}
    if config.command == "core":
        planned = [("CORE", lambda: _core_stage(X))]
    elif config.command == "leaves":
        planned = [(f"LEAVES {config.kind.value}", lambda: _leaves_stage(X, config.kind))]
    elif config.command == "reduce":
        planned = [(f"REDUCE {config.kind.value}", lambda: _reduce_stage(X, config.kind))]
    elif is_double:
        planned = [("LEAVES", lambda: _leaves_all_stage(X, counts, config)),
                   ("IDENTITIES", lambda: _identities_stage(X, config)),
                   ("COMPARE", lambda: _compare_stage(X, config))]
    else:
        planned = [("STAR-MONOID", lambda: _star_monoid_stage(X, config))]

    valid = stages[0].ok
    for name, make in planned:
        if not valid:
            stages.append(Stage(name, ["skipped: the structure is not valid"], skipped=True))
        elif config.fail_fast and not all(s.ok for s in stages):
            stages.append(Stage(name, ["skipped: --fail-fast"], skipped=True))
        else:
            stages.append(make())

    summary = None
    if config.command == "check" and all(s.ok for s in stages):
        if is_double:
            leaves = "/".join(str(counts[k.value]) for k in KINDS)
            summary = (f"ALL CHECKS PASSED (|D|={len(X.squares)}, |C|={len(_core(X))}, "
                       f"leaves: {leaves})")
        else:
            summary = f"ALL CHECKS PASSED (|G|={len(X.arrows)}, |M|={len(X.objects)})"
    return stages, summary


def _first_failure(stages: list[Stage]) -> tuple[Stage, Violation] | None:
    for stage in stages:
        if stage.violations:
            return stage, stage.violations[0]
    return None


def _render_text(X: Structure, config: RunConfig, stages: list[Stage], summary: str | None) -> str:
    out = [f"dgc {config.command}: {X.name}"]
    for stage in stages:
        out.append(f"[{stage.name}]")
        out += [f"  {line}" for line in stage.lines]
        if stage.skipped:
            continue
        if stage.violations:
            out.append(f"  violations: {len(stage.violations)}")
            out += [f"    FAIL {v.law} {format_witness(v.witness)}" for v in stage.violations]
        else:
            out.append("  violations: none")
    failure = _first_failure(stages)
    if failure:
        stage, v = failure
        out.append(f"FAILED: [{stage.name}] {v.law} {format_witness(v.witness)}")
    elif summary:
        out.append(summary)
    else:
        out.append("OK")
    return "\n".join(out) + "\n"


def _render_json(X: Structure, config: RunConfig, stages: list[Stage], summary: str | None) -> str:
    failure = _first_failure(stages)
    data = {
        "command": config.command,
        "structure": X.name,
        "ok": failure is None,
        "summary": summary,
        "first_failure": None if failure is None else
        {"stage": failure[0].name, "law": failure[1].law, "witness": list(failure[1].witness)},
        "stages": [{
            "stage": s.name,
            "ok": s.ok,
            "skipped": s.skipped,
            "details": s.lines,
            "violations": [{"law": v.law, "witness": list(v.witness)} for v in s.violations],
        } for s in stages],
    }
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_cli(config: RunConfig) -> tuple[int, str]:
    """Run one command and return ``(exit_code, report_text)``."""
    try:
        X = parse_input(config.input_path, validate=False)
    except (ParseError, UnsupportedFormat) as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    except OSError as exc:
        return EXIT_INPUT, f"error: cannot read {config.input_path}: {exc.strerror or exc}\n"
    except DGCError as exc:
        return EXIT_INPUT, f"error: {exc}\n"

    if config.command == "export":
        stage = _validate_stage(X, config)
        if not stage.ok:
            return EXIT_VIOLATION, _render_text(X, config, [stage], None)
        return EXIT_OK, export_structure(X, config.format)

    try:
        stages, summary = _run_stages(X, config)
    except UsageError as exc:
        return EXIT_INPUT, f"error: {exc}\n"
    render = _render_json if config.format == "json" else _render_text
    code = EXIT_OK if all(s.ok for s in stages) else EXIT_VIOLATION
    return code, render(X, config, stages, summary)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgc", description="Verify finite double groupoids and their core reductions.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", help="JSON file or shorthand such as dinertia:pair:2")
    parser.add_argument("--kind", choices=[k.value for k in KINDS])
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="text or json for reports (default text); json or dot for export "
                             "(default json)")
    parser.add_argument("--fail-fast", action="store_true",
                        help="stop after the first failing stage")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("json" if args.command == "export" else "text")
    try:
        config = RunConfig(args.command, args.input, args.kind, fmt, args.fail_fast)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, text = run_cli(config)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

    trisectlab invariants DIAGRAM
    trisectlab cover SPEC
    trisectlab pullback DIAGRAM SPEC [MODELS] | --fixture NAME
    trisectlab braid WORD-OR-DESCRIPTOR [--strands N]
    trisectlab verify-examples [--diagram FILE]

DIAGRAM may be a JSON file or a fixture name.  Every command accepts
``--json`` for machine output and ``--out PATH`` to write the JSON result
(``pullback`` writes the lifted diagram).  Exit codes: 0 success, 1 domain
error, 2 parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .algebra import Word, evaluate, verify_representation
from .braid import (
    BraidedSurfaceDescriptor,
    BraidWord,
    SingularEvent,
    identify_closure,
    total_monodromy,
    underlying_permutation,
)
from .cover import BranchedCoverSpec, build_cover, euler_char_cover, lift_curve, lift_curve_class, validate_spec
from .trisect import (
    FIXTURE_NAMES,
    BridgeData,
    SingularModelTag,
    TrisectionDiagram,
    algebraic_degree,
    branch_strata,
    chi_branched_cover_4d,
    euler_characteristic,
    get_fixture,
    homology_summary,
    parameters,
    parameters_chi,
    pullback_trisection,
    quartic_complement_presentation,
    seam_link,
    stabilize,
    validate_diagram,
)

REPORT_SCHEMA = "trisectlab.report/1"


class ParseError(Exception):
    pass


class DomainError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs_digest: str
    results: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if self.errors else 0

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": self.results,
            "warnings": self.warnings,
            "errors": self.errors,
            "exit_code": self.exit_code,
        }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _digest(*parts: Any) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(json.dumps(p, sort_keys=True, separators=(",", ":")).encode())
    return "sha256:" + h.hexdigest()


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _is_fixture(name: str) -> bool:
    return name in FIXTURE_NAMES or re.fullmatch(r"cyclic_Sd\(\d+\)", name) is not None


def _parse(kind: str, fn: Callable, data: Any):
    try:
        return fn(data)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"{kind} does not match the schema: {exc}") from None


def load_diagram(arg: str) -> TrisectionDiagram:
    if not Path(arg).exists() and _is_fixture(arg):
        try:
            return get_fixture(arg).diagram
        except ValueError as exc:
            raise DomainError(str(exc)) from None
    return _parse("diagram", TrisectionDiagram.from_json, _read_json(arg))


def load_spec(arg: str) -> BranchedCoverSpec:
    if not Path(arg).exists() and _is_fixture(arg):
        fx = get_fixture(arg)
        if fx.cover is None:
            raise DomainError(f"fixture {arg} has no cover")
        return fx.cover
    return _parse("cover spec", BranchedCoverSpec.from_json, _read_json(arg))


def load_models(arg: str | None) -> tuple[list[SingularModelTag], BridgeData | None]:
    if arg is None:
        return [], None
    data = _read_json(arg)

    def build(d):
        models = [SingularModelTag.parse(m) for m in d.get("models", [])]
        bridge = BridgeData.from_json(d["bridge"]) if d.get("bridge") else None
        return models, bridge

    return _parse("models file", build, data)


# -- commands ----------------------------------------------------------------------


def cmd_invariants(diagram: TrisectionDiagram) -> RunReport:
    report = RunReport("invariants", _digest(diagram.to_json()))
    check = validate_diagram(diagram)
    report.results["validation"] = check.as_dict()
    if not check.passed:
        report.errors += [f"{k}: {v}" for k, vs in check.violations.items() for v in vs]
        return report
    try:
        p = parameters(diagram)
    except ValueError as exc:
        report.errors.append(str(exc))
        return report
    h = homology_summary(diagram)
    report.results.update(
        {
            "genus": diagram.genus,
            "parameters": p.to_json(),
            "parameters_text": str(p),
            "homology": h.to_json(),
            "euler_characteristic": parameters_chi(p),
        }
    )
    if parameters_chi(p) != h.betti_chi() and not h.h1_torsion:
        report.warnings.append(f"χ from parameters {parameters_chi(p)} differs from Betti count {h.betti_chi()}")
    return report


def cmd_cover(spec: BranchedCoverSpec, curves: list[str] | None = None) -> RunReport:
    report = RunReport("cover", _digest(spec.to_json(), curves or []))
    try:
        check = validate_spec(spec)
    except ValueError as exc:
        report.errors.append(str(exc))
        return report
    report.results["validation"] = check.as_dict()
    if not check.passed:
        report.errors.append(f"surface relator {spec.relator()} maps to {check.relator_image}, not the identity")
        return report
    cover = build_cover(spec)
    report.results["euler_characteristic"] = {"riemann_hurwitz": euler_char_cover(spec), "cells": cover.euler_characteristic}
    report.results["components"] = [c.to_json() for c in cover.components]
    table = []
    for text in (curves or list(spec.base.handle_names)):
        w = Word.parse(text)
        lifted = lift_curve_class(spec, w, cover)
        table.append(
            {
                "curve": str(w),
                "lifts": [
                    dict(l.as_dict(), homology=list(c.coordinates)) for l, c in zip(lifted.lifts, lifted.classes)
                ],
            }
        )
    report.results["lift_table"] = table
    return report


def cmd_pullback(
    diagram: TrisectionDiagram,
    spec: BranchedCoverSpec,
    models: list[SingularModelTag],
    bridge: BridgeData | None = None,
) -> tuple[RunReport, TrisectionDiagram | None]:
    inputs = [diagram.to_json(), spec.to_json(), [m.kind for m in models], bridge.as_dict() if bridge else None]
    report = RunReport("pullback", _digest(*inputs))
    try:
        out, params, rep = pullback_trisection(diagram, spec, models, bridge)
    except ValueError as exc:
        report.errors.append(str(exc))
        return report, None
    report.results = {"diagram": out.to_json(), "parameters_text": str(params), "report": rep.as_dict()}
    report.warnings += rep.warnings
    return report, out


_EVENT_MODELS = {"tangency": "tangency", "positive_node": "node_positive", "negative_node": "node_negative", "cusp": "cusp"}


def cmd_braid(item: BraidWord | BraidedSurfaceDescriptor) -> RunReport:
    if isinstance(item, BraidedSurfaceDescriptor):
        word = total_monodromy(item)
        events = [e.kind for e in item.sequence if isinstance(e, SingularEvent)]
        source = {"strands": item.strands, "sequence": [str(e) if isinstance(e, BraidWord) else [e.kind, e.position] for e in item.sequence]}
    else:
        word, events, source = item, [], str(item)
    report = RunReport("braid", _digest(source, word.strands))
    try:
        ident = identify_closure(word)
    except ValueError as exc:
        report.errors.append(str(exc))
        return report
    report.results = {
        "monodromy": str(word),
        "strands": word.strands,
        "permutation": str(underlying_permutation(word)),
        "components": ident.components,
        "link": ident.as_dict(),
    }
    if events:
        report.results["seam_link"] = seam_link([_EVENT_MODELS[e] for e in events]).as_dict()
    return report


# -- regression over the stored examples --------------------------------------------


@dataclass
class Check:
    anchor: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {"anchor": self.anchor, "expected": self.expected, "actual": self.actual, "passed": self.passed}


def _probe(fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except Exception as exc:  # reported, never raised: one broken pipeline must not hide the others
        return f"error: {exc}"


def run_example_checks(base: TrisectionDiagram | None = None) -> list[Check]:
    """Every stored example, recomputed.  ``base`` replaces the CP^2 fixture's classes."""
    quartic = get_fixture("cp2_tricuspidal_quartic")
    cp2 = quartic.diagram
    if base is not None:
        cp2 = TrisectionDiagram(base.genus, base.alpha, base.beta, base.gamma, words=base.words or cp2.words, labels=cp2.labels)
    checks: list[Check] = []

    def add(anchor, expected, fn):
        checks.append(Check(anchor, expected, _probe(fn)))

    add("cp2 diagram: valid", True, lambda: validate_diagram(cp2).passed)
    add("cp2 diagram: gamma = -alpha - beta", True, lambda: cp2.gamma[0] == -(cp2.alpha[0] + cp2.beta[0]))
    add("cp2 diagram: parameters", "(1; 0,0,0)", lambda: str(parameters(cp2)))
    add("cp2 diagram: H2 rank", 1, lambda: homology_summary(cp2).h2_rank)
    add("cp2 diagram: H1 trivial", True, lambda: homology_summary(cp2).h1_trivial)
    add("cp2 diagram: euler characteristic", 3, lambda: euler_characteristic(cp2))

    raw, simplified = quartic_complement_presentation()
    spec = quartic.cover
    add("quartic group: two-generator presentation holds", True, lambda: verify_representation(simplified, spec.rep).passed)
    add("quartic group: image transitive", True, lambda: verify_representation(simplified, spec.rep).transitive)
    add("quartic group: image order", 6, lambda: verify_representation(simplified, spec.rep).image_order)
    add("quartic group: raw relators hold", True, lambda: verify_representation(raw, spec.rep).passed)
    add("quartic group: a trivial and x = y", True, lambda: evaluate(Word.parse("a"), spec.rep).is_identity() and spec.rep["x"] == spec.rep["y"])

    add("quartic cover: Riemann-Hurwitz euler characteristic", -2, lambda: euler_char_cover(spec))
    add("quartic cover: cell complex euler characteristic", -2, lambda: build_cover(spec).euler_characteristic)
    add("quartic cover: connected genus", [2], lambda: build_cover(spec).total_genus)
    add("quartic cover: lift degrees of b", [1, 2], lambda: sorted(l.degree for l in lift_curve(spec, Word.parse("b"))))
    for k in ("alpha", "beta", "gamma"):
        add(f"quartic cover: {k} lifts to three curves", 3, lambda k=k: len(lift_curve_class(spec, cp2.words[k][0]).classes))
        add(
            f"quartic cover: {k} has one parallel pair",
            1,
            lambda k=k: _parallel_pairs([c.coordinates for c in lift_curve_class(spec, cp2.words[k][0]).classes]),
        )

    add("local model: s1 closes to", "unknot", lambda: identify_closure(BraidWord.parse("s1")).tag)
    add("local model: s1^2 closes to", "hopf_link_positive", lambda: identify_closure(BraidWord.parse("s1^2")).tag)
    add("local model: s1^3 closes to", "trefoil_right", lambda: identify_closure(BraidWord.parse("s1^3")).tag)
    add("local model: node cover components", 2, lambda: SingularModelTag.node().local_cover_components())
    add("local model: cusp cover components", 1, lambda: SingularModelTag.cusp().local_cover_components())
    add("local model: cyclic cover link", "unknot", lambda: SingularModelTag.cyclic(2).link)

    add("quartic bridge: patch links", ["trefoil_right"] * 3, lambda: [identify_closure(p[0].braid).tag for p in quartic.bridge.patches])
    add("quartic bridge: surface is a sphere", 2, lambda: quartic.bridge.surface_euler_characteristic())
    add("quartic bridge: degree after perturbation", 4, lambda: algebraic_degree(quartic.perturbed_bridge, "phi"))

    pulled = _probe(lambda: pullback_trisection(cp2, spec, quartic.models, quartic.bridge))
    ok = not isinstance(pulled, str)

    def from_pull(fn):
        return lambda: fn(*pulled) if ok else pulled

    add("quartic pullback: genus", 2, from_pull(lambda d, p, r: d.genus))
    add("quartic pullback: valid", True, from_pull(lambda d, p, r: validate_diagram(d).passed))
    add("quartic pullback: parameters", "(2; 0,0,0)", from_pull(lambda d, p, r: str(p)))
    add("quartic pullback: H1 trivial", True, from_pull(lambda d, p, r: r.homology.h1_trivial))
    add("quartic pullback: H2 rank", 2, from_pull(lambda d, p, r: r.homology.h2_rank))
    add("quartic pullback: euler characteristic from parameters", 4, from_pull(lambda d, p, r: r.chi_trisection))
    add("quartic pullback: euler characteristic from Betti numbers", 4, from_pull(lambda d, p, r: r.chi_betti))
    add("quartic pullback: euler characteristic of branched cover", 4, from_pull(lambda d, p, r: r.chi_branched))
    add(
        "quartic pullback: one lift deleted per system",
        [1, 1, 1],
        from_pull(lambda d, p, r: [len(r.deleted[k]) for k in ("alpha", "beta", "gamma")]),
    )
    add(
        "branched cover count: quartic with three cusps",
        4,
        lambda: chi_branched_cover_4d(3, 3, branch_strata(spec, quartic.bridge, quartic.models)),
    )

    cyc = get_fixture("cyclic_Sd(2)")
    add(
        "cyclic double cover: euler characteristic agrees",
        True,
        lambda: (lambda r: r.chi_trisection == r.chi_branched == r.chi_betti)(pullback_trisection(cyc.diagram, cyc.cover, cyc.models, cyc.bridge)[2]),
    )

    add("stabilization: three stabilizations of cp2", "(4; 1,1,1)", lambda: str(parameters(stabilize(stabilize(stabilize(cp2, 1), 2), 3))))
    return checks


def _parallel_pairs(classes) -> int:
    seen, pairs = [], 0
    for c in classes:
        if any(c == s or c == tuple(-x for x in s) for s in seen):
            pairs += 1
        else:
            seen.append(c)
    return pairs


def cmd_verify_examples(base: TrisectionDiagram | None = None) -> RunReport:
    report = RunReport("verify-examples", _digest(base.to_json() if base else None))
    checks = run_example_checks(base)
    report.results = {
        "checks": [c.as_dict() for c in checks],
        "passed": sum(c.passed for c in checks),
        "failed": sum(not c.passed for c in checks),
    }
    report.errors = [f"mismatch at {c.anchor!r}: expected {c.expected!r}, got {c.actual!r}" for c in checks if not c.passed]
    return report


# -- text rendering ------------------------------------------------------------------


def render_text(report: RunReport) -> str:
    lines = [f"{report.command}: {'ok' if report.exit_code == 0 else 'FAILED'}"]
    r = report.results
    if report.command == "verify-examples":
        for c in r.get("checks", []):
            lines.append(f"  {'PASS' if c['passed'] else 'FAIL'}  {c['anchor']}: expected {c['expected']!r}, got {c['actual']!r}")
        lines.append(f"  {r.get('passed', 0)} passed, {r.get('failed', 0)} failed")
    elif report.command == "invariants" and "parameters_text" in r:
        h = r["homology"]
        h1 = "0" if not h["h1_free_rank"] and not h["h1_torsion"] else f"Z^{h['h1_free_rank']} + torsion {h['h1_torsion']}"
        lines.append(f"  parameters {r['parameters_text']}, H1 = {h1}, H2 rank {h['h2_rank']}, chi = {r['euler_characteristic']}")
    elif report.command == "cover" and "components" in r:
        for c in r["components"]:
            lines.append(f"  component {c['index'] + 1}: sheets {c['sheets']}, genus {c['genus']}, chi {c['euler_characteristic']}")
        for row in r["lift_table"]:
            degs = ", ".join(f"deg {l['degree']} on {l['sheets']} -> {l['homology']}" for l in row["lifts"])
            lines.append(f"  lift of {row['curve']}: {degs}")
    elif report.command == "pullback" and "diagram" in r:
        rep = r["report"]
        lines.append(f"  genus {rep['genus']} cover of degree {rep['degree']}, parameters {r['parameters_text']}")
        lines.append(f"  H2 rank {rep['homology']['h2_rank']}, chi {rep['chi']}")
        for k in ("alpha", "beta", "gamma"):
            lines.append(f"  {k}: {r['diagram'][k]}  deleted {rep['deleted'][k]}")
    elif report.command == "braid" and "link" in r:
        lines.append(f"  monodromy {r['monodromy']} on {r['strands']} strands, permutation {r['permutation']}")
        lines.append(f"  closure: {r['components']} component(s), {r['link']['tag']}")
        if "seam_link" in r:
            lines.append(f"  seam link pieces: {[p['tag'] for p in r['seam_link']['pieces']]}")
    for w in report.warnings:
        lines.append(f"  warning: {w}")
    for e in report.errors:
        lines.append(f"  error: {e}")
    return "\n".join(lines) + "\n"


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine readable report")
    common.add_argument("--out", metavar="PATH", help="write the JSON result to PATH")
    parser = argparse.ArgumentParser(prog="trisectlab", description="Trisection diagram and branched cover toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("invariants", parents=[common], help="parameters and homology of a diagram")
    p.add_argument("diagram", help="diagram JSON file or fixture name")
    p = sub.add_parser("cover", parents=[common], help="build a branched cover of a surface")
    p.add_argument("spec", help="cover spec JSON file or fixture name")
    p.add_argument("--curve", action="append", help="word to lift (repeatable); defaults to the handle generators")
    p = sub.add_parser("pullback", parents=[common], help="lift a diagram along a branched cover")
    p.add_argument("diagram", nargs="?")
    p.add_argument("spec", nargs="?")
    p.add_argument("models", nargs="?", help='JSON with "models" and optional "bridge"')
    p.add_argument("--fixture", help="run a stored pipeline instead of files")
    p = sub.add_parser("braid", parents=[common], help="monodromy and closure of a braid or braided surface")
    p.add_argument("word", help='braid word such as "s1^3", or a descriptor JSON file')
    p.add_argument("--strands", type=int)
    p = sub.add_parser("verify-examples", parents=[common], help="recompute every stored example")
    p.add_argument("--diagram", help="replace the CP^2 fixture classes by this diagram")
    return parser


def _dispatch(args) -> tuple[RunReport, Any]:
    if args.command == "invariants":
        return cmd_invariants(load_diagram(args.diagram)), None
    if args.command == "cover":
        return cmd_cover(load_spec(args.spec), args.curve), None
    if args.command == "pullback":
        if args.fixture:
            fx = get_fixture(args.fixture)
            if fx.cover is None:
                raise DomainError(f"fixture {args.fixture} has no cover")
            rep, out = cmd_pullback(fx.diagram, fx.cover, list(fx.models), fx.bridge)
        else:
            if not (args.diagram and args.spec):
                raise ParseError("pullback needs DIAGRAM and SPEC, or --fixture")
            models, bridge = load_models(args.models)
            rep, out = cmd_pullback(load_diagram(args.diagram), load_spec(args.spec), models, bridge)
        return rep, (out.to_json() if out is not None else None)
    if args.command == "braid":
        if Path(args.word).is_file():
            item = _parse("braid descriptor", BraidedSurfaceDescriptor.from_json, _read_json(args.word))
        else:
            item = _parse("braid word", lambda w: BraidWord.parse(w, args.strands), args.word)
        return cmd_braid(item), None
    if args.command == "verify-examples":
        return cmd_verify_examples(load_diagram(args.diagram) if args.diagram else None), None
    raise ParseError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, artifact = _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, KeyError, ValueError) as exc:
        report, artifact = RunReport(args.command, _digest(None), errors=[str(exc).strip("'\"")]), None
    if args.out:
        payload = artifact if artifact is not None else report.to_json()
        Path(args.out).write_text(dumps(payload))
    sys.stdout.write(dumps(report.to_json()) if args.json else render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

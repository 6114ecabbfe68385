"""Command-line front end: verify, wedge, commute, level, reduce, diagram."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .calculus import DegenerateCommutator, OracleMismatch, Tag, classify_commutator, commutator_eval
from .congruence import congruence_predicates, in_wedge_image, reduce_matrix
from .diagram import FORMATS, DiagramError, DiagramSpec, emit_diagram
from .indexing import WedgeSpec
from .level import RuleSet, compute_level, parse_generator
from .matrices import ExactMatrix, MatrixError
from .rings import FiniteIdeal, Ring, RingError, parse_ring
from .suite import run_all
from .terms import Transvection
from .wedge import wedge_matrix, wedge_transvection_formula

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit(obj, as_json: bool, text: str, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _spec(args) -> WedgeSpec:
    if args.n is None or args.m is None:
        raise UsageError("--n and --m are required")
    return WedgeSpec(args.n, args.m)


def _load_matrix(path: str, ring: Ring | None) -> ExactMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return ExactMatrix.from_json(obj, ring)


def _format_word(word, spec: WedgeSpec) -> list[str]:
    return [f.describe(spec.n) for f in word]


# --- subcommands ------------------------------------------------------------


def cmd_verify(args) -> int:
    report = run_all(args.filter, jobs=args.jobs)
    if not len(report):
        raise UsageError(f"no checks match {args.filter!r}")
    lines = []
    for r in report.reports:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.id:<10} {r.ms:8.1f} ms  {r.anchor}"
        if r.diff:
            line += f"\n     {r.diff}"
        lines.append(line)
    lines.append(f"{len(report) - len(report.failures)}/{len(report)} checks passed")
    _emit(report.to_json(), args.json, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_wedge(args) -> int:
    spec = _spec(args)
    if (args.matrix is None) == (args.transvection is None):
        raise UsageError("give exactly one of --matrix or --transvection")
    if args.matrix is not None:
        ring = parse_ring(args.ring) if args.ring else None
        g = _load_matrix(args.matrix, ring)
        image = wedge_matrix(spec, g)
        _emit(image.to_json(), args.json, image.format())
        return EXIT_OK
    parts = [p.strip() for p in args.transvection.split(",")]
    if len(parts) != 3:
        raise UsageError("--transvection expects i,j,arg")
    i, j = int(parts[0]), int(parts[1])
    ring = parse_ring(args.ring or "poly:xi")
    xi = ring.parse(parts[2])
    word = wedge_transvection_formula(spec, i, j, xi)
    factors = _format_word(word, spec)
    obj = {"n": spec.n, "m": spec.m, "i": i, "j": j, "count": len(factors), "factors": factors}
    _emit(obj, args.json, "\n".join(factors))
    return EXIT_OK


def _parse_pair(text: str, spec: WedgeSpec, ring: Ring):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected A,B,arg, got {text!r}")
    return parts[0], parts[1], ring.parse(parts[2])


def cmd_commute(args) -> int:
    spec = _spec(args)
    ring = parse_ring(args.ring)
    I, J, xi = _parse_pair(args.t, spec, ring)
    I, J = spec.index(I), spec.index(J)
    j, i, zeta = _parse_pair(args.wedge, spec, ring)
    j, i = int(j), int(i)
    cls = classify_commutator(I, J, j, i)
    obj: dict = {"class": cls.tag.value, "row_hit": cls.row_hit, "col_hit": cls.col_hit}
    lines = [f"class: {cls.tag.value}"]
    code = EXIT_OK
    if cls.tag is Tag.DEGENERATE:
        lines.append("no short form: the commutator is [t_{I,J}, t_{J,I}]")
    else:
        try:
            word = commutator_eval(Transvection(I, J, xi), j, i, zeta, spec, checked=args.checked)
            factors = _format_word(word, spec)
            obj["factors"] = factors
            lines.append("factors: " + (" ".join(factors) if factors else "e"))
            if args.checked:
                obj["oracle"] = "agree"
                lines.append("oracle: agree")
        except OracleMismatch as exc:
            obj["oracle"] = f"mismatch: {exc}"
            lines.append(f"oracle: mismatch: {exc}")
            code = EXIT_FAIL
        except DegenerateCommutator as exc:  # pragma: no cover - tag checked above
            lines.append(str(exc))
    _emit(obj, args.json, "\n".join(lines))
    return code


def cmd_level(args) -> int:
    spec = _spec(args)
    ring = parse_ring(args.ring)
    gens = [parse_generator(g, spec, ring) for g in args.gen]
    rules = RuleSet.parse(args.rules) if args.rules else None
    run = compute_level(spec, ring, gens, rules)
    obj = run.to_json(with_trace=False)
    if args.trace:
        Path(args.trace).write_text(json.dumps(run.to_json(with_trace=True), indent=2, sort_keys=True) + "\n")
    v = run.verdict
    lines = [f"mode: {v.mode}"]
    if v.ideal is not None:
        lines.append(f"level: {v.ideal}  elements {v.ideal.sorted_elements()}")
    for k, A in zip(v.heights, v.chain):
        lines.append(f"  A_{k} = {A}")
    for item in v.audit:
        lines.append(f"  audit {'ok ' if item.passed else 'BAD'} {item.name}" + (f": {item.detail}" if item.detail else ""))
    if run.literal_verdict is not None:
        lines.append(f"literal rules reach the same chain: {run.literal_suffices}")
    _emit(obj, args.json, "\n".join(lines))
    return EXIT_OK if v.audit_passed else EXIT_FAIL


def cmd_reduce(args) -> int:
    ring = Ring.modular(args.q)
    A = FiniteIdeal(ring, args.ideal)
    h = _load_matrix(args.matrix, ring)
    r = reduce_matrix(h, A)
    flags = congruence_predicates(h, A)
    obj: dict = {"reduced": r.to_json(), **flags.to_json()}
    lines = [r.format(), f"principal congruence: {flags.principal_congruence}", f"full congruence: {flags.full_congruence}"]
    code = EXIT_OK
    if args.recognize:
        spec = _spec(args)
        verdict = in_wedge_image(r, spec)
        obj.update(verdict.to_json())
        lines.append(f"tag: {verdict.tag}")
        if verdict.lam is not None:
            lines.append(f"lambda: {verdict.lam}")
        if verdict.witness is not None:
            lines.append("witness:\n" + verdict.witness.format())
        if not verdict.recognized:
            code = EXIT_FAIL
    _emit(obj, args.json, "\n".join(lines))
    return code


def cmd_diagram(args) -> int:
    classify = None
    if args.classify:
        spec = WedgeSpec(args.n, args.m)
        parts = args.classify.split(",") if args.n <= 9 else args.classify.split(";")
        if len(parts) != 2:
            raise UsageError("--classify expects I,J (I;J when n > 9)")
        classify = (spec.index(parts[0]), spec.index(parts[1]))
    fmt = "json" if args.json else args.format
    if classify is not None and fmt != "json":
        raise UsageError("--classify annotations need --format json")
    doc = emit_diagram(DiagramSpec(args.n, args.m, args.root, fmt, classify))
    if args.out:
        Path(args.out).write_text(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wedgelevel", description="Exact calculus for exterior powers of GL_n.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, nm=True, required=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if nm:
            sp.add_argument("--n", type=int, required=required)
            sp.add_argument("--m", type=int, required=required)

    sp = sub.add_parser("verify", help="run the identity suite")
    common(sp, nm=False)
    sp.add_argument("--filter", help="only checks whose id starts with this prefix")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("wedge", help="exterior power of a matrix or a transvection")
    common(sp, required=True)
    sp.add_argument("--matrix", help="matrix JSON file")
    sp.add_argument("--transvection", help="i,j,arg")
    sp.add_argument("--ring", help="ring for the argument (default poly:xi)")
    sp.set_defaults(func=cmd_wedge)

    sp = sub.add_parser("commute", help="[t_{I,J}(xi), W t_{j,i}(zeta)]")
    common(sp, required=True)
    sp.add_argument("--t", required=True, help="I,J,xi")
    sp.add_argument("--wedge", required=True, help="j,i,zeta")
    sp.add_argument("--ring", default="poly:xi,zeta")
    sp.add_argument("--checked", action="store_true", help="compare against the matrix oracle")
    sp.set_defaults(func=cmd_commute)

    sp = sub.add_parser("level", help="saturate a net of ideals from generators")
    common(sp, required=True)
    sp.add_argument("--ring", default="z/9")
    sp.add_argument("--gen", action="append", default=[], help='generator "I,J:value" (repeatable)')
    sp.add_argument("--rules", help="full, claimed, literal, or a comma list of rule names")
    sp.add_argument("--trace", help="write the verdict with its derivation trace to this JSON file")
    sp.set_defaults(func=cmd_level)

    sp = sub.add_parser("reduce", help="reduce a matrix modulo an ideal of Z/q")
    common(sp)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--ideal", type=int, required=True, help="generator d of the ideal (d) with d | q")
    sp.add_argument("--matrix", required=True, help="matrix JSON file")
    sp.add_argument("--recognize", action="store_true", help="test membership in the exterior power image")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("diagram", help="weight diagram of the m-th fundamental representation")
    common(sp, required=True)
    sp.add_argument("--format", choices=FORMATS, default="dot")
    sp.add_argument("--root", type=int, help="simple root k to highlight")
    sp.add_argument("--classify", help="I,J: annotate commutator classes per simple root (JSON)")
    sp.add_argument("--out", help="write to this file instead of standard output")
    sp.set_defaults(func=cmd_diagram)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, RingError, MatrixError, DiagramError, ValueError, KeyError) as exc:
        print(f"wedgelevel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command line entry point: ``python -m gradedbrackets <command> ...``.

Exit status is 0 when every checked identity holds, 1 when one fails and 2
for unreadable or inconsistent input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebroid import algebroid_validate, sn_bracket
from .bialgebroid import bialgebroid_check
from .docs import (StructureDoc, doc_from_first_order, doc_from_tensors,
                   load_doc, print_doc)
from .errors import GradedBracketError
from .generators import SuiteConfig
from .jacobi import jacobi_structure_check, sj_bracket
from .koszul import koszul_bracket
from .lifts import (TotalSpace, complete_lift, jacobi_lift, poisson_lift, poissonization_algebroid,
                    poissonization_embed, vertical_lift)
from .multilinear import nr_bracket
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _doc(path: str) -> StructureDoc:
    try:
        return load_doc(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e
    except GradedBracketError as e:
        raise InputError(f"{path}: {e}") from e


def _tensor(doc: StructureDoc, name: str, A=None):
    try:
        return doc.tensor(name, A)
    except KeyError as e:
        raise InputError(e.args[0]) from e


def _emit(doc: StructureDoc, out):
    out.write(print_doc(doc))


def cmd_check_algebroid(args, out) -> int:
    doc = _doc(args.doc)
    rep = algebroid_validate(doc.algebroid(), stop_at_first=not args.all)
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_check_jacobi(args, out) -> int:
    doc = _doc(args.doc)
    A = doc.algebroid()
    lam = _tensor(doc, args.bivector, A)
    gamma = _tensor(doc, args.vector, A) if args.vector in doc.tensors else A.sections.zero()
    rep = jacobi_structure_check(lam, gamma, A)
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bracket(args, out) -> int:
    doc = _doc(args.doc)
    left, right = args.left, args.right
    if args.kind == "nr":
        for name in (left, right):
            if name not in doc.operators:
                raise InputError(f"document has no operator {name!r}")
        result = nr_bracket(doc.operators[left], doc.operators[right])
        res = StructureDoc("tensor", doc.chart)
        res.with_operator("result", result)
        _emit(res, out)
        return EXIT_OK
    if args.kind == "sj":
        J = doc.jacobi_algebroid()
        A = J.algebroid
        result = sj_bracket(_tensor(doc, left, A), _tensor(doc, right, A), J)
        _emit(doc_from_tensors(A, {"result": result}, cocycle=J.cocycle), out)
        return EXIT_OK
    A = doc.algebroid()
    x, y = _tensor(doc, left, A), _tensor(doc, right, A)
    if args.kind == "sn":
        result = sn_bracket(x, y, A)
    else:
        lam = _tensor(doc, args.bivector, A)
        result = koszul_bracket(x, y, lam, A)
    _emit(doc_from_tensors(A, {"result": result}), out)
    return EXIT_OK


def cmd_lift(args, out) -> int:
    doc = _doc(args.doc)
    if args.kind in ("jacobi", "poisson"):
        J = doc.jacobi_algebroid()
        A = J.algebroid
    else:
        J = None
        A = doc.algebroid()
    x = _tensor(doc, args.tensor, A)
    T = TotalSpace(A)
    if args.kind == "vertical":
        _emit(doc_from_tensors(T.tangent, {"result": vertical_lift(x, T)}), out)
    elif args.kind == "complete":
        _emit(doc_from_tensors(T.tangent, {"result": complete_lift(x, T)}), out)
    elif args.kind == "poisson":
        _emit(doc_from_tensors(T.tangent, {"result": poisson_lift(x, J, T)}), out)
    else:
        _emit(doc_from_first_order(jacobi_lift(x, J, T), T.tangent), out)
    return EXIT_OK


def cmd_poissonize(args, out) -> int:
    doc = _doc(args.doc)
    J = doc.jacobi_algebroid()
    if J.chart.exp_coord is None:
        raise InputError("poissonize needs a chart with an exp: coordinate")
    x = _tensor(doc, args.tensor, J.algebroid)
    target = poissonization_algebroid(J.algebroid)
    _emit(doc_from_tensors(target, {"result": poissonization_embed(x, J, target)}), out)
    return EXIT_OK


def cmd_bialgebroid_check(args, out) -> int:
    doc = _doc(args.doc)
    if doc.kind != "dual-pair":
        raise InputError(f"expected a dual-pair document, got {doc.kind}")
    rep = bialgebroid_check(doc.dual_pair(), depth=args.depth, seed=args.seed,
                            coefficient_degree=args.coefficient_degree, cases=args.cases)
    for line in rep.lines():
        print(line, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    if args.list:
        for name in sorted(SUITES):
            print(f"{name}: {SUITES[name].description}", file=out)
        return EXIT_OK
    if args.suite is None:
        raise InputError("verify needs --suite NAME (or --list)")
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}")
    options = {}
    if args.doc:
        options["doc"] = _doc(args.doc)
        options["doc_label"] = Path(args.doc).stem
    if args.instance:
        options["instance"] = args.instance
    config = SuiteConfig(suite=args.suite, seed=args.seed, cases=args.cases,
                         max_tensor_degree=args.max_tensor_degree, max_coeff_degree=args.max_coeff_degree,
                         options=options)
    try:
        report = run_suite(config)
    except KeyError as e:
        raise InputError(e.args[0]) from e
    out.write(report.text())
    if args.repro_dir and not report.ok:
        target = Path(args.repro_dir)
        target.mkdir(parents=True, exist_ok=True)
        for name, text in report.failure_docs().items():
            (target / name).write_text(text)
            print(f"wrote {target / name}", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedbrackets", description="Exact checks of graded Lie brackets over Q.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-algebroid", help="validate anchor and bracket of an algebroid document")
    c.add_argument("doc")
    c.add_argument("--all", action="store_true", help="report every failure, not just the first")
    c.set_defaults(func=cmd_check_algebroid)

    c = sub.add_parser("check-jacobi", help="check that (Lambda, Gamma) is a Jacobi structure")
    c.add_argument("doc")
    c.add_argument("--bivector", default="Lambda")
    c.add_argument("--vector", default="Gamma")
    c.set_defaults(func=cmd_check_jacobi)

    c = sub.add_parser("bracket", help="bracket two tensors or operators of a document")
    c.add_argument("doc")
    c.add_argument("--kind", choices=("sn", "sj", "nr", "koszul"), required=True)
    c.add_argument("--left", default="X")
    c.add_argument("--right", default="Y")
    c.add_argument("--bivector", default="Lambda", help="Poisson bivector for --kind koszul")
    c.set_defaults(func=cmd_bracket)

    c = sub.add_parser("lift", help="lift a multisection to the total space of the bundle")
    c.add_argument("doc")
    c.add_argument("--kind", choices=("vertical", "complete", "jacobi", "poisson"), required=True)
    c.add_argument("--tensor", default="X")
    c.set_defaults(func=cmd_lift)

    c = sub.add_parser("poissonize", help="embed a multisection into the line-extended algebroid")
    c.add_argument("doc")
    c.add_argument("--tensor", default="X")
    c.set_defaults(func=cmd_poissonize)

    c = sub.add_parser("bialgebroid-check", help="two-stage derivation check for a dual pair")
    c.add_argument("doc")
    c.add_argument("--depth", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--coefficient-degree", type=int, default=1)
    c.add_argument("--cases", type=int, default=8)
    c.set_defaults(func=cmd_bialgebroid_check)

    c = sub.add_parser("verify", help="run a named identity suite")
    c.add_argument("--suite")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cases", type=int, default=100)
    c.add_argument("--max-tensor-degree", type=int, default=3)
    c.add_argument("--max-coeff-degree", type=int, default=2)
    c.add_argument("--doc", help="run on the structure in this document instead of the built-in instances")
    c.add_argument("--instance", help="restrict to one built-in instance")
    c.add_argument("--repro-dir", help="write a reproduction document per failing case here")
    c.add_argument("--list", action="store_true", help="list suite names")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GradedBracketError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

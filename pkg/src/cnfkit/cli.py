"""Command-line driver.

Subcommands: prep (preprocess a CNF), encode (circuit to CNF), gen (benchmark
families), verify (equisatisfiability / reconstruction checks), solve (oracle
or external solver).

Exit codes: 0 success / agreement, 1 usage or backend error, 2 verification
disagreement, 10 satisfiable, 20 unsatisfiable (or empty clause derived by
prep).  All file outputs are written atomically.  The environment variable
CNFKIT_ORACLE_BOUND overrides the default oracle variable bound.
"""

import argparse
import json
import os
import sys

from . import bench, oracle
from .circuit import CircuitError, normalize_circuit, simplify_fixpoint
from .elim import PipelineConfig, TechniqueId, run_pipeline
from .encode import plaisted_greenbaum, tseitin
from .formula import satisfies
from .io import (CircuitFormatError, DimacsError, SolverParseFailure,
                 SpawnFailure, atomic_write, parse_circuit,
                 parse_dimacs_with_report, render_stats, run_external_solver,
                 write_dimacs)
from .reconstruct import ReconstructionStack, StackFormatError, reconstruct_model

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DISAGREE = 2
EXIT_SAT = 10
EXIT_UNSAT = 20


def _oracle_bound(args):
    if getattr(args, "bound", None) is not None:
        return args.bound
    env = os.environ.get("CNFKIT_ORACLE_BOUND")
    return int(env) if env else oracle.DEFAULT_BOUND


def _read(path):
    with open(path) as handle:
        return handle.read()


def _load_cnf(path, strict=False):
    formula, report = parse_dimacs_with_report(_read(path), strict=strict)
    for warning in report.warnings:
        print(f"c warning: {path}: {warning}", file=sys.stderr)
    return formula


def cmd_prep(args):
    techniques = [t.strip() for t in args.techniques.split(",") if t.strip()]
    try:
        order = [TechniqueId(t) for t in techniques]
    except ValueError as exc:
        print(f"error: unknown technique: {exc}", file=sys.stderr)
        return EXIT_ERROR
    config = PipelineConfig(global_fixpoint=args.fixpoint,
                            strict_parsing=args.strict,
                            ve_growth_bound=args.ve_bound)
    formula = _load_cnf(args.input, strict=args.strict)
    formula, stack, report = run_pipeline(formula, order, config)
    # compact the declared variable count to what the result mentions
    formula.num_vars = formula.max_mentioned_var()
    atomic_write(args.output, write_dimacs(formula))
    if args.stack:
        atomic_write(args.stack, stack.to_text())
    if args.stats:
        atomic_write(args.stats, render_stats(report))
    return EXIT_UNSAT if formula.has_empty_clause else EXIT_OK


def cmd_encode(args):
    circuit = parse_circuit(_read(args.input))
    fixed = {}
    if args.simplify:
        passes = tuple(p.strip() for p in args.simplify.split(",") if p.strip())
        for p in passes:
            if p not in ("coi", "nsi", "mir"):
                print(f"error: unknown simplification pass {p!r}", file=sys.stderr)
                return EXIT_ERROR
        circuit, fixed = simplify_fixpoint(circuit, passes)
    circuit = normalize_circuit(circuit)
    if args.encoding == "tst":
        formula, vm = tseitin(circuit)
    else:
        formula, vm = plaisted_greenbaum(circuit)
    vm.fixed_inputs.update(fixed)
    atomic_write(args.output, write_dimacs(formula))
    doc = {"schema": "cnfkit-varmap/1",
           "vars": vm.gate_to_var,
           "fixed_inputs": vm.fixed_inputs}
    atomic_write(args.map or args.output + ".map",
                 json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_gen(args):
    try:
        if args.family == "php":
            formula = bench.gen_php(args.n)
        elif args.family == "ephp":
            formula = bench.gen_ephp(args.n)
        else:
            formula = bench.gen_xor_unsat(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    atomic_write(args.output, write_dimacs(formula))
    return EXIT_OK


def _read_model(path):
    model = {}
    for line in _read(path).splitlines():
        stripped = line.strip()
        if not stripped or stripped[0] in "cs":
            continue
        tokens = stripped.split()
        if tokens[0] == "v":
            tokens = tokens[1:]
        for tok in tokens:
            lit = int(tok)
            if lit:
                model[abs(lit)] = lit > 0
    return model


def cmd_verify(args):
    if args.reconstruct:
        stack_path, model_path, original_path = args.reconstruct
        stack = ReconstructionStack.from_text(_read(stack_path))
        model = _read_model(model_path)
        original = _load_cnf(original_path)
        repaired = reconstruct_model(stack, model, original.num_vars)
        if satisfies(original, repaired):
            print("c reconstruction ok")
            return EXIT_OK
        print("c reconstructed model does not satisfy the original")
        return EXIT_DISAGREE
    bound = _oracle_bound(args)
    fa = _load_cnf(args.formulas[0])
    fb = _load_cnf(args.formulas[1])
    try:
        agree = oracle.equisat(fa, fb, bound)
    except oracle.BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if agree:
        print("c equisatisfiable")
        return EXIT_OK
    print("c satisfiability differs")
    return EXIT_DISAGREE


def cmd_solve(args):
    formula = _load_cnf(args.input)
    if args.oracle:
        try:
            model = oracle.brute_force_sat(formula, _oracle_bound(args))
        except oracle.BoundExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        if model is None:
            print("s UNSATISFIABLE")
            return EXIT_UNSAT
        print("s SATISFIABLE")
        lits = [v if model[v] else -v for v in sorted(model)]
        print("v " + " ".join(str(l) for l in lits) + " 0")
        return EXIT_SAT
    result = run_external_solver(args.solver, formula, timeout=args.timeout)
    if result.status == "sat":
        print("s SATISFIABLE")
        if result.model:
            lits = [v if result.model[v] else -v for v in sorted(result.model)]
            print("v " + " ".join(str(l) for l in lits) + " 0")
        return EXIT_SAT
    if result.status == "unsat":
        print("s UNSATISFIABLE")
        return EXIT_UNSAT
    print(f"s UNKNOWN ({result.reason})")
    return EXIT_ERROR


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cnfkit",
        description="CNF preprocessing and circuit encoding toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="preprocess a DIMACS file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--techniques", required=True,
                   help="comma-separated, e.g. te,se,bce")
    p.add_argument("--fixpoint", action="store_true",
                   help="repeat the whole technique order until stable")
    p.add_argument("--ve-bound", type=int, default=0,
                   help="variable elimination growth bound")
    p.add_argument("--stack", help="write the reconstruction stack here")
    p.add_argument("--stats", help="write the stats document here")
    p.add_argument("--strict", action="store_true",
                   help="treat header count mismatches as errors")
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("encode", help="encode a circuit file as CNF")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--encoding", choices=("tst", "pg"), default="tst")
    p.add_argument("--simplify", default="",
                   help="comma-separated subset of coi,nsi,mir")
    p.add_argument("--map", help="gate-to-variable sidecar path "
                                 "(default: OUTPUT.map)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("gen", help="generate a benchmark family instance")
    p.add_argument("family", choices=("php", "ephp", "xorring"))
    p.add_argument("n", type=int)
    p.add_argument("output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="equisatisfiability or reconstruction check")
    p.add_argument("formulas", nargs="*", metavar="CNF")
    p.add_argument("--reconstruct", nargs=3,
                   metavar=("STACK", "MODEL", "ORIGINAL"))
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="decide satisfiability")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--oracle", action="store_true")
    group.add_argument("--solver", help="path to an external solver")
    p.add_argument("--timeout", type=float)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # keep the documented exit-code contract: usage errors are 1
        code = 0 if exc.code in (0, None) else EXIT_ERROR
        if argv is None:
            sys.exit(code)
        return code
    if args.command == "verify" and not args.reconstruct and len(args.formulas) != 2:
        print("error: verify needs two CNF files or --reconstruct", file=sys.stderr)
        return _finish(EXIT_ERROR, argv)
    try:
        code = args.func(args)
    except (DimacsError, CircuitError, CircuitFormatError, StackFormatError,
            SpawnFailure, SolverParseFailure, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_ERROR
    return _finish(code, argv)


def _finish(code, argv):
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

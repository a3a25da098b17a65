"""``majorana`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 not found or partial result.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog, gates, search, synthesis
from .core import run_program
from .encoding import PHASE_EPS, Encoding, encoding_for, restrict_to_logical, trace_fidelity
from .errors import CapExceeded, MajoranaError, UnknownGate
from .serialization import dumps, load_program, matrix_to_document, program_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc) -> None:
    print(dumps(doc))


def _parse_angle(text: str):
    """``3/4pi`` or ``0.75pi`` means a multiple of pi; plain numbers are radians."""
    t = text.strip().lower()
    if t.endswith("pi"):
        body = t[:-2].rstrip("*") or "1"
        try:
            return Fraction(body)
        except ValueError as exc:
            raise UsageError(f"bad angle {text!r}") from exc
    try:
        value = float(t)
    except ValueError as exc:
        raise UsageError(f"bad angle {text!r}") from exc
    # zero is exact in either reading, so it must not demote an exact phase list
    return Fraction(0) if value == 0 else value


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    names = catalog.entry_names() if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in catalog.CATALOG:
        raise UsageError(f"unknown catalog entry {args.name!r}")
    ok = True
    for name in names:
        r = catalog.verify_entry(name, eps=args.eps)
        ok &= r["pass"]
        _emit({"name": name, "fidelity": r["fidelity"], "pass": r["pass"]})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- synth

def _synth_program(args):
    kind = args.kind
    if kind == "diag":
        if not args.phases:
            raise UsageError("synth diag needs --phases")
        phases = [_parse_angle(p) for p in args.phases.split(",")]
        n = len(phases).bit_length() - 1
        if len(phases) < 2 or 1 << n != len(phases):
            raise UsageError("--phases needs a power-of-two count of at least 2")
        exact = [p for p in phases if isinstance(p, Fraction)]
        target = synthesis.DiagonalTarget.of(phases if len(exact) == len(phases) else
                                             [float(p) * np.pi if isinstance(p, Fraction) else p for p in phases])
        return synthesis.synth_diagonal(target), np.diag(target.diagonal()), n
    if kind in ("cnz", "cnnot", "cnswap"):
        if args.n is None or args.n < 1:
            raise UsageError(f"synth {kind} needs --n >= 1")
        if kind == "cnz":
            return synthesis.synth_cn_z(args.n), gates.cn_z(args.n), args.n + 1
        if kind == "cnnot":
            return (synthesis.synth_cn_not(args.n, args.target),
                    gates.cn_not(args.n, target=args.target), args.n + 1)
        return synthesis.synth_cn_swap(args.n), gates.cn_swap(args.n), args.n + 2
    if kind == "cu":
        beta, gamma, delta = (_parse_angle(x) for x in (args.beta, args.gamma, args.delta))
        as_rad = [float(x) * np.pi if isinstance(x, Fraction) else x for x in (beta, gamma, delta)]
        return synthesis.synth_controlled_unitary(beta, gamma, delta), gates.controlled_unitary(*as_rad), 2
    raise UsageError(f"unknown synth kind {kind!r}")


def cmd_synth(args) -> int:
    program, reference, n_logical = _synth_program(args)
    enc = Encoding(n_logical)
    text = program_to_json(program, enc.num_majoranas)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.check:
        U = restrict_to_logical(enc, run_program(enc.space, program))
        fid = trace_fidelity(U, reference)
        passed = fid >= 1 - args.eps
        print(dumps({"fidelity": fid, "pass": passed}), file=sys.stderr if not args.out else sys.stdout)
        return EXIT_OK if passed else EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- search / enumerate / orbit

def _target_matrix(spec: str, n_logical: int) -> np.ndarray:
    path = Path(spec)
    if path.suffix == ".json" and path.exists():
        program = load_program(path)
        enc = Encoding(n_logical)
        return restrict_to_logical(enc, run_program(enc.space, program))
    try:
        if spec in catalog.CATALOG and catalog.get_entry(spec).kind == "gate":
            return catalog.catalog_reference(spec)
        return gates.reference_gate(spec)
    except UnknownGate as exc:
        raise UsageError(str(exc)) from exc


def _encoding(args) -> Encoding:
    if args.logical is not None:
        return Encoding(args.logical)
    if args.majoranas is not None:
        return encoding_for(args.majoranas)
    raise UsageError("give --logical or --majoranas")


def cmd_search(args) -> int:
    enc = _encoding(args)
    target = _target_matrix(args.target, enc.num_logical)
    if target.shape != (enc.logical_dimension,) * 2:
        raise UsageError(f"target {args.target} is {target.shape[0]}-dimensional, "
                         f"{enc.num_logical} logical qubits need {enc.logical_dimension}")
    try:
        result = search.search_word(enc, target, args.depth, _generators(args), eps=args.eps,
                                    element_cap=args.cap)
    except CapExceeded as exc:
        result = exc.partial
    if isinstance(result, search.NotFound):
        _emit({"found": False, "depth": result.depth, "group_closed": result.exhausted,
               "explored": result.explored})
        return EXIT_PARTIAL
    _emit({"found": True, "word": search.word_to_strings(result), "length": len(result)})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.majoranas is None:
        raise UsageError("enumerate needs --majoranas")
    mode = "exact" if args.exact else args.mode
    try:
        result = search.enumerate_group(args.majoranas, _generators(args), mode=mode, element_cap=args.cap)
    except CapExceeded as exc:
        _emit(exc.partial.to_document())
        return EXIT_PARTIAL
    _emit(result.to_document())
    return EXIT_OK


def cmd_orbit(args) -> int:
    enc = _encoding(args)
    try:
        orbit = search.orbit_states(enc, args.state, _generators(args), element_cap=args.cap)
    except CapExceeded as exc:
        orbit = exc.partial
    _emit({"count": orbit.count, "completed": orbit.completed, "amplitude_counts": orbit.amplitude_counts()})
    return EXIT_OK if orbit.completed else EXIT_PARTIAL


def _generators(args):
    if not getattr(args, "generators", None):
        return None
    try:
        return [int(g.strip().lstrip("Bb")) for g in args.generators.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad generator list {args.generators!r}") from exc


# ---------------------------------------------------------------- dump

def cmd_dump(args) -> int:
    if args.program:
        program = load_program(args.program)
        m = program.num_majoranas or max(program.max_index() + program.max_index() % 2, 2)
        enc = encoding_for(m)
        U = run_program(enc.space, program)
        if args.basis == "logical":
            U = restrict_to_logical(enc, U)
        _emit(matrix_to_document(U, args.basis))
        return EXIT_OK
    if not args.name:
        raise UsageError("dump needs a gate name or --program")
    # a named gate in the logical basis is its reference matrix; the physical
    # basis shows the full Fock-space unitary of its braid program
    if args.name in catalog.CATALOG:
        entry = catalog.get_entry(args.name)
        if entry.kind != "gate":
            raise UsageError(f"{args.name} is a state, not a gate")
        if args.basis == "logical":
            U = catalog.catalog_reference(args.name)
        else:
            enc = Encoding(entry.num_logical)
            U = run_program(enc.space, catalog.catalog_program(args.name))
        _emit(matrix_to_document(U, args.basis))
        return EXIT_OK
    if args.basis == "physical":
        raise UsageError(f"{args.name} has no braid program; only --basis logical is available")
    try:
        U = gates.reference_gate(args.name)
    except UnknownGate as exc:
        raise UsageError(str(exc)) from exc
    _emit(matrix_to_document(U, "logical"))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--eps", type=float, default=PHASE_EPS, help="numerical tolerance (default 1e-9)")

    p = _Parser(prog="majorana", description="Majorana braiding and many-body rotation toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="check catalog entries against reference matrices")
    v.add_argument("name", help="catalog entry name or 'all'")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("synth", parents=[common], help="synthesize a rotation program")
    s.add_argument("kind", choices=["diag", "cnz", "cnnot", "cnswap", "cu"])
    s.add_argument("--phases", help="comma-separated diagonal phases; '1/2pi' style means a multiple of pi")
    s.add_argument("--n", type=int, help="number of controls")
    s.add_argument("--target", type=int, default=1, help="target qubit for cnnot")
    s.add_argument("--beta", default="0")
    s.add_argument("--gamma", default="0")
    s.add_argument("--delta", default="0")
    s.add_argument("--out", help="write the program document here")
    s.add_argument("--check", action="store_true", help="simulate the program and report fidelity")
    s.set_defaults(func=cmd_synth)

    def group_flags(q, need_target=False):
        q.add_argument("--majoranas", type=int)
        q.add_argument("--logical", type=int)
        q.add_argument("--generators", help="comma-separated braid indices, e.g. 1,2,3")
        q.add_argument("--cap", type=int, default=search.DEFAULT_ELEMENT_CAP)
        if need_target:
            q.add_argument("--target", required=True, help="gate name or program JSON file")
            q.add_argument("--depth", type=int, default=12)

    se = sub.add_parser("search", parents=[common], help="shortest braid word for a target gate")
    group_flags(se, need_target=True)
    se.set_defaults(func=cmd_search)

    en = sub.add_parser("enumerate", parents=[common], help="order of the braid group image")
    group_flags(en)
    en.add_argument("--exact", action="store_true", help="exact ring arithmetic (the default mode)")
    en.add_argument("--mode", choices=["exact", "float", "clifford"], default="exact")
    en.set_defaults(func=cmd_enumerate)

    o = sub.add_parser("orbit", parents=[common], help="states reachable from a logical basis state")
    group_flags(o)
    o.add_argument("--state", type=int, default=0)
    o.set_defaults(func=cmd_orbit)

    d = sub.add_parser("dump", parents=[common], help="print a gate or program as a matrix document")
    d.add_argument("name", nargs="?")
    d.add_argument("--program", help="program JSON file")
    d.add_argument("--basis", choices=["physical", "logical"], default="logical")
    d.set_defaults(func=cmd_dump)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"majorana: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MajoranaError, json.JSONDecodeError, OSError) as exc:
        print(f"majorana: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

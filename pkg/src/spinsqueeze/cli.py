"""Command-line front end: generate, analyze, sweep, verify.

Exit codes: 0 success, 1 verification failure, 2 input or usage error.
"""

import argparse
import math
import os
import sys

import numpy as np

from ._version import __version__
from .entanglement import concurrence_pure, invariant_I
from .errors import ValidationError
from .report import analyze_state, render_text
from .reductions import is_exchange_symmetric
from .squeezing import xi_standard, xi_tilde_general, xi_tilde_symmetric
from .statefile import (
    document_to_state,
    dumps,
    load_document,
    realize,
    render_json,
    save_state,
    state_to_document,
)
from .states import (
    PureState,
    coherent_spin_state,
    dicke_state,
    embed_symmetric,
    one_axis_twisted_state,
    product_state,
    random_separable_terms,
)
from .verification import SUITES, run_suite


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinsqueeze",
        description="Spin-squeezing parameters and entanglement witnesses "
                    "for small multiqubit states.")
    parser.add_argument("--version", action="version", version=f"spinsqueeze {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a state file")
    gen.add_argument("kind", choices=["css", "twisted", "product", "random-separable", "dicke"])
    gen.add_argument("--n", type=int, help="number of qubits")
    gen.add_argument("--theta", type=float, default=0.0, help="polar angle (css)")
    gen.add_argument("--phi", type=float, default=0.0, help="azimuthal angle (css)")
    gen.add_argument("--mu", type=float, default=0.0, help="twisting strength (twisted)")
    gen.add_argument("--k", type=int, default=0, help="Dicke index (dicke)")
    gen.add_argument("--terms", type=int, default=1,
                     help="number of product terms (random-separable)")
    gen.add_argument("--qubit", action="append", metavar="THETA,PHI",
                     help="one Bloch direction per qubit (product); repeatable")
    gen.add_argument("--seed", type=int, default=0, help="sampler seed")
    gen.add_argument("--output", help="output path (default: stdout)")
    gen.set_defaults(func=_cmd_generate)

    ana = sub.add_parser("analyze", help="full squeezing/entanglement report")
    ana.add_argument("input", help="state file to analyze")
    ana.add_argument("--format", choices=["text", "machine"], default="text")
    ana.add_argument("--output", help="output path (default: stdout)")
    ana.set_defaults(func=_cmd_analyze)

    swp = sub.add_parser("sweep", help="parameter sweep to CSV")
    swp.add_argument("kind", choices=["schmidt", "css", "twisted"])
    swp.add_argument("--start", type=float, required=True)
    swp.add_argument("--stop", type=float, required=True)
    swp.add_argument("--points", type=int, required=True)
    swp.add_argument("--n", type=int, default=2, help="number of qubits (css, twisted)")
    swp.add_argument("--phi", type=float, default=0.0, help="azimuthal angle (css)")
    swp.add_argument("--output", help="CSV path (default: stdout)")
    swp.set_defaults(func=_cmd_sweep)

    ver = sub.add_parser("verify", help="run a property suite")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--format", choices=["text", "machine"], default="text")
    ver.add_argument("--output", help="directory for replay files (default: cwd)")
    ver.set_defaults(func=_cmd_verify)
    return parser


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _require(condition, message):
    if not condition:
        raise ValidationError(message)


def _cmd_generate(args):
    kind = args.kind
    if kind == "css":
        _require(args.n is not None, "--n is required for css")
        state = coherent_spin_state(args.n, args.theta, args.phi)
    elif kind == "twisted":
        _require(args.n is not None, "--n is required for twisted")
        state = one_axis_twisted_state(args.n, args.mu)
    elif kind == "dicke":
        _require(args.n is not None, "--n is required for dicke")
        state = dicke_state(args.n, args.k)
    elif kind == "product":
        _require(args.qubit, "product needs at least one --qubit THETA,PHI")
        factors = []
        for spec in args.qubit:
            parts = spec.split(",")
            _require(len(parts) == 2, f"--qubit {spec!r} is not THETA,PHI")
            try:
                theta, phi = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise ValidationError(f"--qubit {spec!r} is not numeric") from exc
            factors.append(np.array([math.cos(theta / 2),
                                     math.sin(theta / 2) * np.exp(1j * phi)]))
        state = product_state(factors)
    else:  # random-separable
        _require(args.n is not None, "--n is required for random-separable")
        state = random_separable_terms(args.n, args.terms, args.seed)
    text = dumps(state_to_document(state))
    _write_text(args.output, text)
    return 0


def _cmd_analyze(args):
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input!r}: {exc}") from exc
    document = load_document(args.input)
    parsed = document_to_state(document)
    state = realize(parsed)
    input_kind = document.get("kind")
    report = analyze_state(state, source_path=args.input, source_bytes=raw,
                           input_kind=input_kind)
    if args.format == "machine":
        _write_text(args.output, render_json(report) + "\n")
    else:
        _write_text(args.output, render_text(report))
    return 0


def _fmt_cell(value):
    return "" if value is None else format(float(value), ".17g")


def _sweep_state(kind, value, args):
    if kind == "schmidt":
        return PureState(2, np.array([math.cos(value), 0.0, 0.0, math.sin(value)]))
    if kind == "css":
        return coherent_spin_state(args.n, value, args.phi)
    return one_axis_twisted_state(args.n, value)


def _cmd_sweep(args):
    _require(args.points >= 1, "--points must be >= 1")
    values = np.linspace(args.start, args.stop, args.points)
    rows = []
    for value in values:
        state = _sweep_state(args.kind, float(value), args)
        std = xi_standard(state)
        symmetric = state.num_qubits >= 2 and is_exchange_symmetric(state)
        tilde = xi_tilde_symmetric(state) if symmetric else xi_tilde_general(state)
        conc = None
        if isinstance(state, PureState) and state.num_qubits == 2:
            conc = concurrence_pure(state)
        elif symmetric and state.num_qubits == 2:
            conc = concurrence_pure(embed_symmetric(state))
        inv = invariant_I(state) if symmetric else None
        rows.append([float(value), std.xi1, std.xi2, tilde.xi1_tilde,
                     tilde.xi2_tilde, conc, inv])
    lines = ["parameter,xi1,xi2,xi1_tilde,xi2_tilde,concurrence,invariant_i"]
    lines += [",".join(_fmt_cell(cell) for cell in row) for row in rows]
    text = "\n".join(lines) + "\n"
    try:
        _write_text(args.output, text)
    except OSError as exc:
        raise ValidationError(f"cannot write {args.output!r}: {exc}") from exc
    return 0


def _cmd_verify(args):
    result = run_suite(args.suite, args.seed)
    replay_dir = args.output or "."
    replay_paths = []
    if not result.passed:
        os.makedirs(replay_dir, exist_ok=True)
        for label, state in result.failures:
            path = os.path.join(replay_dir, f"spinsqueeze-replay-{result.suite}-{label}.json")
            save_state(path, state)
            replay_paths.append(path)
    if args.format == "machine":
        doc = {
            "suite": result.suite,
            "seed": args.seed,
            "passed": result.passed,
            "checks": [
                {"name": c.name, "instances": c.instances, "worst": c.worst,
                 "tolerance": c.tolerance, "passed": c.passed, "note": c.note}
                for c in result.checks
            ],
            "replay_files": replay_paths,
        }
        sys.stdout.write(render_json(doc) + "\n")
    else:
        print(f"suite {result.suite} (seed {args.seed})")
        for c in result.checks:
            status = "PASS" if c.passed else "FAIL"
            line = (f"  {c.name}: {c.instances} instances, "
                    f"worst {c.worst:.3g} (tolerance {c.tolerance:.3g}) -> {status}")
            print(line)
            if c.note:
                print(f"    note: {c.note}")
        for path in replay_paths:
            print(f"  replay file: {path}")
        print(f"result: {'PASS' if result.passed else 'FAIL'}")
    return 0 if result.passed else 1


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point():
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()

"""Command-line front end.

Subcommands:

* genspec   write the standard coefficient spec for (n, base) as JSON
* compile   circuit JSON -> normalized schedule JSON
* simulate  run a schedule on a state, or score it against an ideal circuit
* report    fidelity/bound table as CSV plus figures, with property checks
* search    grid scan for a phase coincidence, result as JSON

Exit codes: 0 success; 2 usage or unreadable/unparseable input; 3 dimension
or configuration errors; 4 property-check or tolerance failures.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .compiler import Circuit, CompilerConfig, compile_circuit, circuit_unitary, standard_coefficients
from .hamiltonians import HamiltonianSpec
from .qcore import (
    DimensionError,
    StateVector,
    fidelity_phase_invariant,
    spectral_distance_up_to_phase,
)
from .search import CoincidenceProblem, scan_coincidence
from .simulator import Schedule, run_schedule, schedule_unitary
from . import report as report_mod

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_CHECK = 4


class ParseError(Exception):
    """Unreadable or malformed input file."""


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _write_json(path: str, data: dict) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def _parse_floats(text: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"{flag} expects comma-separated numbers, got {text!r}") from exc


def cmd_genspec(args) -> int:
    config = CompilerConfig(n=args.n, base=args.base)
    spec = standard_coefficients(config)
    _write_json(args.out, spec.to_dict())
    print(f"wrote {args.out} (n={spec.n}, base={args.base})")
    return EXIT_OK


def cmd_compile(args) -> int:
    circuit = Circuit.from_dict(_read_json(args.circuit))
    config = CompilerConfig(n=circuit.n, base=args.base)
    schedule = compile_circuit(circuit, config)
    _write_json(args.out, schedule.to_dict())
    print(f"wrote {args.out}")
    print(f"segments: {len(schedule)}")
    print(f"total duration: {schedule.total_duration():.17g}")
    return EXIT_OK


def _simulate_unitary(spec: HamiltonianSpec, schedule: Schedule, args) -> int:
    circuit = Circuit.from_dict(_read_json(args.circuit))
    if circuit.n != spec.n:
        raise DimensionError(f"circuit has n={circuit.n} but spec has n={spec.n}")
    compiled = schedule_unitary(spec, schedule)
    ideal = circuit_unitary(circuit)
    fid = fidelity_phase_invariant(compiled, ideal)
    dist = spectral_distance_up_to_phase(compiled, ideal)
    print(f"fidelity = {fid:.17g}")
    print(f"distance = {dist:.17g}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("fidelity,distance\n")
            fh.write(f"{fid:.17g},{dist:.17g}\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def _simulate_state(spec: HamiltonianSpec, schedule: Schedule, args) -> int:
    if args.init == "zero":
        state = StateVector.zero(spec.n)
    else:
        state = StateVector.random(spec.n, np.random.default_rng(args.seed))
    final = run_schedule(spec, schedule, state)
    print("index bitstring re im prob")
    lines = []
    for idx, amp in enumerate(final.amplitudes):
        bits = format(idx, f"0{spec.n}b")
        prob = abs(amp) ** 2
        lines.append((idx, bits, amp.real, amp.imag, prob))
        print(f"{idx} {bits} {amp.real:.17g} {amp.imag:.17g} {prob:.17g}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("index,bitstring,re,im,prob\n")
            for idx, bits, re, im, prob in lines:
                fh.write(f"{idx},{bits},{re:.17g},{im:.17g},{prob:.17g}\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = HamiltonianSpec.from_dict(_read_json(args.spec))
    schedule = Schedule.from_dict(_read_json(args.schedule))
    if args.circuit:
        return _simulate_unitary(spec, schedule, args)
    return _simulate_state(spec, schedule, args)


def cmd_report(args) -> int:
    bases = tuple(int(b) for b in _parse_floats(args.bases, "--bases"))
    rows = report_mod.build_report(args.n, bases)
    report_mod.write_csv(rows, args.out)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_figures:
        from .plots import render_report_figures

        for path in render_report_figures(rows, args.out):
            print(f"wrote {path}")
    problems = report_mod.check_report(rows)
    for message in problems:
        print(f"CHECK FAILED: {message}", file=sys.stderr)
    if problems:
        return EXIT_CHECK
    print("checks passed: bound soundness, base monotonicity")
    return EXIT_OK


def cmd_search(args) -> int:
    problem = CoincidenceProblem(
        coefficients=_parse_floats(args.coeffs, "--coeffs"),
        targets=_parse_floats(args.targets, "--targets"),
        tolerance=args.tolerance,
        t_max=args.tmax,
        resolution=args.resolution,
    )
    result = scan_coincidence(problem)
    payload = result.to_dict()
    print(json.dumps(payload, indent=2))
    if args.out:
        _write_json(args.out, payload)
        print(f"wrote {args.out}")
    if not result.met_tolerance:
        print(
            f"best error {result.error:.6g} exceeds tolerance {problem.tolerance:.6g}",
            file=sys.stderr,
        )
        return EXIT_CHECK
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamweave",
        description="Compile {H, T, CNOT} circuits into two-Hamiltonian switching "
        "schedules and simulate them exactly.",
    )
    sub = parser.add_subparsers(required=True, metavar="command")

    p = sub.add_parser("genspec", help="write the standard coefficient spec as JSON")
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--base", type=int, default=16, help="coefficient base B (power of two, >= 16)")
    p.add_argument("--out", required=True, help="output spec JSON path")
    p.set_defaults(func=cmd_genspec)

    p = sub.add_parser("compile", help="compile a circuit JSON into a schedule JSON")
    p.add_argument("--circuit", required=True, help="input circuit JSON path")
    p.add_argument("--base", type=int, default=16, help="coefficient base B (power of two, >= 16)")
    p.add_argument("--out", required=True, help="output schedule JSON path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser(
        "simulate",
        help="run a schedule on a state, or compare it to an ideal circuit with --circuit",
    )
    p.add_argument("--spec", required=True, help="Hamiltonian spec JSON path")
    p.add_argument("--schedule", required=True, help="schedule JSON path")
    p.add_argument("--circuit", help="ideal circuit JSON; switches to fidelity mode")
    p.add_argument("--init", choices=("zero", "random"), default="zero", help="initial state")
    p.add_argument("--seed", type=int, default=0, help="seed for --init random")
    p.add_argument("--out", help="optional CSV output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="fidelity/bound table across bases, as CSV plus figures")
    p.add_argument("--n", type=int, required=True, help="qubit count (<= 6)")
    p.add_argument("--bases", default="16,64,256", help="comma-separated bases")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG figures")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("search", help="scan for a phase coincidence")
    p.add_argument("--coeffs", required=True, help="comma-separated positive coefficients")
    p.add_argument("--targets", required=True, help="comma-separated target phases in [0, pi)")
    p.add_argument("--tolerance", type=float, default=0.05, help="acceptable max residual (rad)")
    p.add_argument("--tmax", type=float, required=True, help="search horizon")
    p.add_argument("--resolution", type=float, default=1e-3, help="grid step")
    p.add_argument("--out", help="optional result JSON path")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Command-line front end.

Single-shot computations print one JSON object on stdout; remainder
sweeps print CSV with a header row.  Exit codes: 0 success, 2 domain
error (the message names the violated inequality), 3 verification
failure, 64 malformed usage.  Identical argv and seed produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import oracle
from .approximations import (
    SERIES_OPS,
    a_inv_series,
    a_series,
    compose_series,
    energy_series,
    energy_series_corrected,
    invert_series,
    remainder_order_check,
    subtract_series,
    sync_check,
)
from .errors import KinematicsError
from .metric_momentum import (
    CoMomentum,
    MassShellQuery,
    dispersion_energy,
    hamiltonian,
    kinematic_length,
    momentum_from_velocity,
)
from .transforms import FourVector, boost_matrix, transform
from .velocity_algebra import Velocity3, compose, invert, subtract
from .verification import SUITES, run_all, run_suite

__all__ = ["CliConfig", "run", "console_entry"]

ATOL_ENV = "ANISOKIN_ATOL"
RTOL_ENV = "ANISOKIN_RTOL"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Abbreviation matching is off so subcommand flags like --s cannot
    # collide with the global --samples/--seed.
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    """Run configuration; the single source of truth for tolerance defaults.

    The environment variables ANISOKIN_ATOL and ANISOKIN_RTOL override the
    built-in tolerance defaults; explicit flags override both.
    """

    atol: float = 1e-14
    rtol: float = 1e-12
    samples: int = 1000
    seed: int = 0
    fmt: str = "json"
    unchecked: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise _UsageError(f"--samples must be at least 1, got {self.samples}")
        if not (self.atol > 0.0 and self.rtol > 0.0):
            raise _UsageError("tolerances must be positive")
        if self.fmt not in ("json", "csv"):
            raise _UsageError(f"--format must be json or csv, got {self.fmt!r}")

    @classmethod
    def from_args(cls, args) -> "CliConfig":
        def env_float(name: str, fallback: float) -> float:
            raw = os.environ.get(name)
            if raw is None:
                return fallback
            try:
                return float(raw)
            except ValueError:
                raise _UsageError(f"environment variable {name} is not a number: {raw!r}")

        atol = args.atol if args.atol is not None else env_float(ATOL_ENV, 1e-14)
        rtol = args.rtol if args.rtol is not None else env_float(RTOL_ENV, 1e-12)
        return cls(
            atol=atol,
            rtol=rtol,
            samples=args.samples,
            seed=args.seed,
            fmt=args.format if args.format is not None else "json",
            unchecked=args.unchecked,
        )


def _floats(text: str, n: int, flag: str):
    parts = text.split(",")
    if len(parts) != n:
        raise _UsageError(f"{flag} expects {n} comma-separated numbers, got {text!r}")
    try:
        return tuple(float(x) for x in parts)
    except ValueError:
        raise _UsageError(f"{flag} expects numbers, got {text!r}")


def _velocity(text: str, config: CliConfig, flag: str) -> Velocity3:
    values = _floats(text, 3, flag)
    if config.unchecked:
        return Velocity3.unchecked(*values)
    return Velocity3(*values)


def _emit(payload: dict, config: CliConfig) -> None:
    if config.fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in payload.items():
            writer.writerow([key, json.dumps(value, separators=(",", ":"))])
    else:
        print(json.dumps(payload, separators=(",", ":")))


def _build_parser() -> _Parser:
    shared = _Parser(add_help=False)
    shared.add_argument("--atol", type=float, default=None, help="absolute tolerance override")
    shared.add_argument("--rtol", type=float, default=None, help="relative tolerance override")
    shared.add_argument("--samples", type=int, default=1000, help="sample count for sweeps")
    shared.add_argument("--seed", type=int, default=0, help="deterministic seed")
    shared.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (sweeps default to csv, everything else to json)")
    shared.add_argument("--unchecked", action="store_true",
                        help="accept velocities outside the positivity domain")

    parser = _Parser(prog="anisokin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> _Parser:
        return sub.add_parser(name, help=help_text, parents=[shared])

    p = command("transform", "boost a four-vector")
    p.add_argument("--s", required=True, help="velocity s1,s2,s3")
    p.add_argument("--y", required=True, help="four-vector y0,y1,y2,y3")

    p = command("boost-matrix", "print the 4x4 boost matrix")
    p.add_argument("--s", required=True)

    p = command("compose", "compose two velocities")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = command("invert", "reciprocal velocity")
    p.add_argument("--s", required=True)

    p = command("subtract", "velocity subtraction a - b")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = command("length", "kinematic length of a four-vector")
    p.add_argument("--y", required=True)

    p = command("hamiltonian", "hamiltonian of a covariant momentum")
    p.add_argument("--p", required=True, help="covector p0,p1,p2,p3")

    p = command("momentum", "momentum of a mass on a four-velocity")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--v", required=True, help="four-velocity v0,v1,v2,v3")

    p = command("dispersion", "energy from mass and spatial momentum")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--momentum", required=True, help="spatial momentum p1,p2,p3")

    p = command("approx", "series approximations and remainder sweeps")
    p.add_argument("--op", required=True, choices=sorted(SERIES_OPS))
    p.add_argument("--s", help="velocity input for single-velocity series")
    p.add_argument("--a", help="first velocity for pair series")
    p.add_argument("--b", help="second velocity for pair series")
    p.add_argument("--mass", type=float, help="mass for the energy series")
    p.add_argument("--momentum", help="spatial momentum for the energy series")
    p.add_argument("--sweep", action="store_true", help="print the CSV remainder table")
    p.add_argument("--levels", type=int, default=5, help="number of halvings in the sweep")

    p = command("sync-check", "slow-transport synchronization gradient")
    p.add_argument("--u", required=True, help="clock velocity u1,u2,u3")
    p.add_argument("--step", type=float, default=1e-5)
    p.add_argument("--richardson", action="store_true")

    p = command("verify", "floating-point property suites")
    p.add_argument("--suite", default="all", choices=("all", *sorted(SUITES)))

    command("ledger", "exact-rational identity ledger")
    return parser


def _approx_base(args, config: CliConfig):
    op = args.op
    if op in ("a_series", "a_inv_series", "invert_series"):
        if args.s is None:
            raise _UsageError(f"--op {op} needs --s")
        return _velocity(args.s, config, "--s")
    if op in ("subtract_series", "compose_series"):
        if args.a is None or args.b is None:
            raise _UsageError(f"--op {op} needs --a and --b")
        return (_velocity(args.a, config, "--a"), _velocity(args.b, config, "--b"))
    if args.mass is None or args.momentum is None:
        raise _UsageError(f"--op {op} needs --mass and --momentum")
    return _floats(args.momentum, 3, "--momentum")


def _run_approx(args, config: CliConfig) -> int:
    base = _approx_base(args, config)
    if args.sweep:
        mass = args.mass if args.mass is not None else 1.0
        report = remainder_order_check(args.op, base, levels=args.levels, mass=mass)
        if args.format == "json":
            _emit(
                {
                    "op": report.op,
                    "levels": report.levels,
                    "errors": list(report.errors),
                    "slope": report.slope,
                    "claimed_order": report.claimed_order,
                    "passed": report.passed,
                },
                config,
            )
        else:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(["level", "scale", "abs_error"])
            for level, err in enumerate(report.errors):
                writer.writerow([level, 0.5**level, repr(err)])
        return 0

    op = args.op
    if op == "a_series":
        result = a_series(base)
    elif op == "a_inv_series":
        result = a_inv_series(base)
    elif op == "invert_series":
        _emit({"result": list(invert_series(base).components)}, config)
        return 0
    elif op == "subtract_series":
        _emit({"result": list(subtract_series(*base).components)}, config)
        return 0
    elif op == "compose_series":
        _emit({"result": list(compose_series(*base).components)}, config)
        return 0
    else:
        query = MassShellQuery(args.mass, *base)
        result = energy_series(query) if op == "energy_series" else energy_series_corrected(query)
    _emit({"value": result.value, "parts": result.parts, "order": result.order}, config)
    return 0


def run(argv) -> int:
    """Parse argv, execute one subcommand, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = CliConfig.from_args(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if args.command == "transform":
            out = transform(_velocity(args.s, config, "--s"), FourVector(*_floats(args.y, 4, "--y")))
            _emit({"result": list(out.components)}, config)
        elif args.command == "boost-matrix":
            matrix = boost_matrix(_velocity(args.s, config, "--s"))
            _emit({"matrix": [list(map(float, row)) for row in matrix.entries]}, config)
        elif args.command == "compose":
            out = compose(_velocity(args.a, config, "--a"), _velocity(args.b, config, "--b"))
            _emit({"result": list(out.components)}, config)
        elif args.command == "invert":
            _emit({"result": list(invert(_velocity(args.s, config, "--s")).components)}, config)
        elif args.command == "subtract":
            out = subtract(_velocity(args.a, config, "--a"), _velocity(args.b, config, "--b"))
            _emit({"result": list(out.components)}, config)
        elif args.command == "length":
            _emit({"result": kinematic_length(FourVector(*_floats(args.y, 4, "--y")))}, config)
        elif args.command == "hamiltonian":
            _emit({"result": hamiltonian(CoMomentum(*_floats(args.p, 4, "--p")))}, config)
        elif args.command == "momentum":
            out = momentum_from_velocity(args.mass, FourVector(*_floats(args.v, 4, "--v")))
            _emit({"result": list(out.components)}, config)
        elif args.command == "dispersion":
            query = MassShellQuery(args.mass, *_floats(args.momentum, 3, "--momentum"))
            _emit({"energy": dispersion_energy(query)}, config)
        elif args.command == "approx":
            return _run_approx(args, config)
        elif args.command == "sync-check":
            gradient = sync_check(_velocity(args.u, config, "--u"), h=args.step,
                                  richardson=args.richardson)
            _emit({"gradient": list(gradient)}, config)
        elif args.command == "verify":
            if args.suite == "all":
                results = run_all(samples=None if args.samples == 1000 else args.samples,
                                  seed=config.seed)
            else:
                results = [run_suite(args.suite,
                                     samples=None if args.samples == 1000 else args.samples,
                                     seed=config.seed)]
            _emit({"suites": [r.to_dict() for r in results]}, config)
            if not all(r.passed for r in results):
                return 3
        elif args.command == "ledger":
            entries = oracle.full_ledger(seed=config.seed, samples=config.samples)
            print(oracle.ledger_json(entries, seed=config.seed, samples=config.samples))
            surprises = [e.identity_id for e in entries
                         if e.verdict != oracle.EXPECTED_VERDICTS[e.identity_id]]
            if surprises:
                print(f"unexpected verdicts: {', '.join(surprises)}", file=sys.stderr)
                return 3
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except KinematicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def console_entry() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    console_entry()

"""Command-line interface: validate states, compute tomograms and discord, run sweeps.

State files are JSON with complex entries as [re, im] pairs:

    {"dim": 4, "subsystem_dims": [2, 2], "entries": [[[0.5, 0.0], ...], ...]}

Exit codes: 0 success, 1 domain error (invalid state or dimension),
2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from .discord import OptimizerConfig, optimized_discord, tomographic_discord, xstate_discord
from .ensembles import random_density_matrix, werner_state
from .linalg import DensityMatrix, eigendecompose, hermiticity_residual
from .tomography import Direction, bipartite_spin_tomogram, marginals
from .xstate import X_STRUCTURE_TOL, off_x_residual, params_from_matrix

USER_ATOL = 1e-6


class StateFileError(Exception):
    """A state file could not be parsed into a matrix."""


def read_state_file(path: str) -> tuple[np.ndarray, tuple[int, ...]]:
    """Parse a state file into (matrix, subsystem_dims) without validating physics."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFileError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise StateFileError(f"{path}: top-level value must be an object")
    for field in ("dim", "subsystem_dims", "entries"):
        if field not in payload:
            raise StateFileError(f"{path}: missing field {field!r}")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise StateFileError(f"{path}: dim must be a positive integer")
    dims_raw = payload["subsystem_dims"]
    if not isinstance(dims_raw, list) or not all(
        isinstance(d, int) and d >= 1 for d in dims_raw
    ):
        raise StateFileError(f"{path}: subsystem_dims must be a list of positive integers")
    dims = tuple(dims_raw)
    if dims and math.prod(dims) != dim:
        raise StateFileError(f"{path}: subsystem_dims {dims_raw} do not multiply to dim {dim}")
    entries = payload["entries"]
    if not isinstance(entries, list) or len(entries) != dim:
        raise StateFileError(f"{path}: entries must be a {dim}x{dim} array")
    matrix = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise StateFileError(f"{path}: entries row {i} must have {dim} elements")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) for v in pair)
            ):
                raise StateFileError(f"{path}: entry ({i}, {j}) must be a [re, im] pair")
            matrix[i, j] = complex(pair[0], pair[1])
    return matrix, dims


def load_state(path: str) -> DensityMatrix:
    """Read and validate a state file at the user-data tolerance."""
    matrix, dims = read_state_file(path)
    return DensityMatrix(matrix, dims, atol=USER_ATOL)


def write_state_file(rho: DensityMatrix, fh) -> None:
    payload = {
        "dim": rho.dim,
        "subsystem_dims": list(rho.subsystem_dims),
        "entries": [[[z.real, z.imag] for z in row] for row in rho.matrix],
    }
    json.dump(payload, fh, indent=1)
    fh.write("\n")


def _parse_base(text: str) -> float:
    if text.strip().lower() == "e":
        return math.e
    try:
        base = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid log base {text!r}") from None
    if not base > 1.0:
        raise argparse.ArgumentTypeError(f"log base must be > 1, got {base}")
    return base


def _parse_angles(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'theta,phi', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numeric angles, got {text!r}") from None


def _require_two_qubit_file(rho: DensityMatrix, path: str) -> None:
    if rho.subsystem_dims != (2, 2):
        raise ValueError(
            f"{path}: command needs a two-qubit state with subsystem_dims [2, 2], "
            f"got dim {rho.dim} with subsystem_dims {list(rho.subsystem_dims)}"
        )


def cmd_validate(args: argparse.Namespace) -> int:
    matrix, dims = read_state_file(args.path)
    herm = hermiticity_residual(matrix)
    trace = complex(np.trace(matrix))
    trace_dev = abs(trace - 1.0)
    symmetrized = (matrix + matrix.conj().T) / 2.0
    min_eig = float(eigendecompose(symmetrized).eigenvalues.min())
    print(f"hermiticity residual {herm:.1e}")
    print(f"trace deviation {trace_dev:.1e}")
    print(f"minimum eigenvalue {min_eig:.3e}")
    ok = herm <= USER_ATOL and trace_dev <= USER_ATOL and min_eig >= -USER_ATOL
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _print_report(report) -> None:
    print(f"S1    = {report.s1:.6f}")
    print(f"S2    = {report.s2:.6f}")
    print(f"S12   = {report.s12:.6f}")
    print(f"H1    = {report.h1:.6f}")
    print(f"H2    = {report.h2:.6f}")
    print(f"H12   = {report.h12:.6f}")
    print(f"I     = {report.vn_mutual:.6f}")
    print(f"Itomo = {report.tomo_mutual:.6f}")
    print(f"D     = {report.discord:.6f}")
    if report.clamped_eigenvalues:
        print("note: eigenvalue spectrum was clamped to repair float noise")
    if report.degenerate_marginal:
        print("note: degenerate marginal spectrum, diagonalizing basis not unique")
    if report.optimized is not None:
        opt = report.optimized
        angles = ", ".join(f"{a:.6f}" for a in opt.argmin_angles)
        print(f"D_opt = {opt.discord_opt:.6f}")
        print(f"argmin angles (theta1, phi1, theta2, phi2) = {angles}")
        print(f"objective evaluations = {opt.evaluations}")


def cmd_discord(args: argparse.Namespace) -> int:
    rho = load_state(args.path)
    _require_two_qubit_file(rho, args.path)
    if args.optimize:
        config = OptimizerConfig(grid_size=args.grid, seed=args.seed)
        report = optimized_discord(rho, args.base, config)
    else:
        report = tomographic_discord(rho, args.base)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
        return 0
    _print_report(report)
    residual = off_x_residual(rho.matrix)
    if residual <= X_STRUCTURE_TOL and not args.force_generic:
        closed = xstate_discord(params_from_matrix(rho.matrix), args.base)
        print(f"X structure detected (off-X residual {residual:.1e})")
        print(f"D (closed form) = {closed.discord:.6f}")
    return 0


def cmd_tomogram(args: argparse.Namespace) -> int:
    rho = load_state(args.path)
    _require_two_qubit_file(rho, args.path)
    directions = []
    for theta, phi in (args.u1, args.u2):
        directions.append(Direction(theta, phi % (2.0 * math.pi)))
    joint = bipartite_spin_tomogram(rho, directions[0], directions[1])
    labels = ("+1/2,+1/2", "+1/2,-1/2", "-1/2,+1/2", "-1/2,-1/2")
    for label, prob in zip(labels, joint.probabilities):
        print(f"omega({label}) = {prob:.6f}")
    t1, t2 = marginals(joint)
    print(f"marginal 1: {t1.probabilities[0]:.6f} {t1.probabilities[1]:.6f}")
    print(f"marginal 2: {t2.probabilities[0]:.6f} {t2.probabilities[1]:.6f}")
    return 0


def cmd_sweep_werner(args: argparse.Namespace) -> int:
    if args.steps < 2:
        raise ValueError(f"--steps must be at least 2, got {args.steps}")
    config = OptimizerConfig(grid_size=args.grid, seed=args.seed)
    lines = ["p,S12,H12,I,Itomo,D,D_opt"]
    for p in np.linspace(0.0, 1.0, args.steps):
        report = optimized_discord(werner_state(float(p)), args.base, config)
        assert report.optimized is not None
        lines.append(
            f"{p:.6g},{report.s12:.12g},{report.h12:.12g},{report.vn_mutual:.12g},"
            f"{report.tomo_mutual:.12g},{report.discord:.12g},"
            f"{report.optimized.discord_opt:.12g}"
        )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    if args.subsystems is not None:
        try:
            dims = tuple(int(d) for d in args.subsystems.split(","))
        except ValueError:
            raise ValueError(f"--subsystems must be comma-separated integers, got {args.subsystems!r}")
    elif args.dim == 4:
        dims = (2, 2)
    else:
        dims = (args.dim,)
    rho = random_density_matrix(args.dim, args.seed, dims)
    if args.out is None:
        write_state_file(rho, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_state_file(rho, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomodiscord",
        description="Spin tomograms and tomographic discord for qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a state file against the physics invariants")
    p_validate.add_argument("path")
    p_validate.set_defaults(func=cmd_validate)

    p_discord = sub.add_parser("discord", help="entropies, mutual informations and discord")
    p_discord.add_argument("path")
    p_discord.add_argument("--base", type=_parse_base, default=2.0,
                           help="log base for all entropies (number > 1 or 'e'; default 2)")
    p_discord.add_argument("--optimize", action="store_true",
                           help="also minimize the joint tomogram entropy over local bases")
    p_discord.add_argument("--seed", type=int, default=0, help="optimizer seed (default 0)")
    p_discord.add_argument("--grid", type=int, default=16,
                           help="optimizer grid points per angle axis (default 16)")
    p_discord.add_argument("--json", action="store_true", help="emit the report as one JSON object")
    p_discord.add_argument("--force-generic", action="store_true",
                           help="skip the closed-form cross-check for X-structured states")
    p_discord.set_defaults(func=cmd_discord)

    p_tomogram = sub.add_parser("tomogram", help="joint spin tomogram along two axes")
    p_tomogram.add_argument("path")
    p_tomogram.add_argument("--u1", type=_parse_angles, default=(0.0, 0.0),
                            help="first axis as 'theta,phi' in radians (default 0,0)")
    p_tomogram.add_argument("--u2", type=_parse_angles, default=(0.0, 0.0),
                            help="second axis as 'theta,phi' in radians (default 0,0)")
    p_tomogram.set_defaults(func=cmd_tomogram)

    p_sweep = sub.add_parser("sweep-werner", help="CSV sweep of the Werner family")
    p_sweep.add_argument("--steps", type=int, default=101, help="number of rows (default 101)")
    p_sweep.add_argument("--base", type=_parse_base, default=2.0)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--grid", type=int, default=16)
    p_sweep.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep_werner)

    p_random = sub.add_parser("random", help="emit a seeded random state file")
    p_random.add_argument("--dim", type=int, default=4)
    p_random.add_argument("--seed", type=int, default=0)
    p_random.add_argument("--subsystems", default=None,
                          help="comma-separated subsystem dims (default: 2,2 when dim is 4)")
    p_random.add_argument("--out", default=None, help="output path (default stdout)")
    p_random.set_defaults(func=cmd_random)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

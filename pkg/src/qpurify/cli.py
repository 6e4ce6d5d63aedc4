"""Command-line surface: purify, synth, simulate, bloch, random.

Exit codes: 0 success, 1 IO/parse errors, 2 validation failures,
3 reconstruction/verification failures. Errors print one line to stderr
prefixed with the failure kind (e.g. ``NotPSD:``, ``ReconstructionFailure:``).
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click
import numpy as np

from . import io
from .circuit import apply_schedule, extract_parameters, schedule_from_parameters
from .errors import (
    BadRange,
    BadShape,
    DegenerateBranch,
    GaugeViolation,
    NoConvergence,
    NormFailure,
    NotHermitian,
    NotPSD,
    NotUnitary,
    OutOfRange,
    OutsideBall,
    ReconstructionFailure,
    ShapeMismatch,
    SizeOverflow,
    TraceDeviation,
)
from .purify import (
    cholesky_purify,
    coefficients_to_state,
    reshuffle_purify,
    spectral_purify,
    verify_purification,
)
from .rng import random_density

_VALIDATION_ERRORS = (
    NotHermitian,
    TraceDeviation,
    NotPSD,
    ShapeMismatch,
    BadShape,
    BadRange,
    OutOfRange,
    NotUnitary,
    SizeOverflow,
    GaugeViolation,
    NormFailure,
    OutsideBall,
)
_COMPUTE_ERRORS = (ReconstructionFailure, NoConvergence, DegenerateBranch)
_PARSE_ERRORS = (OSError, ValueError, KeyError, TypeError)


def _guarded(body):
    @functools.wraps(body)
    def wrapper(*args, **kwargs):
        try:
            body(*args, **kwargs)
        except _VALIDATION_ERRORS as exc:
            click.echo(f"{type(exc).__name__}: {exc}", err=True)
            sys.exit(2)
        except _COMPUTE_ERRORS as exc:
            click.echo(f"{type(exc).__name__}: {exc}", err=True)
            sys.exit(3)
        except _PARSE_ERRORS as exc:
            click.echo(f"ParseError: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def main():
    """Purify qudit density matrices and synthesize preparation circuits."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(), help="Density matrix JSON.")
@click.option(
    "--method",
    type=click.Choice(["cholesky", "spectral"]),
    default="cholesky",
    show_default=True,
)
@click.option("--reshuffle", is_flag=True, help="Sort the basis by diagonal size before pivoting.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Purification state JSON.")
@click.option("--coeffs", "coeffs_path", type=click.Path(), help="Optional coefficient matrix JSON.")
@_guarded
def purify(input_path, method, reshuffle, out_path, coeffs_path):
    """Purify a density matrix and verify the result by partial trace."""
    if reshuffle and method != "cholesky":
        raise click.UsageError("--reshuffle requires --method cholesky")
    rho = io.load_density(Path(input_path).read_text())
    if method == "spectral":
        coeff_array = None
        state = spectral_purify(rho)
        coeff_array = state.amplitudes.reshape(state.ancilla_dim, state.system_dim)
    elif reshuffle:
        coeff_array, state = reshuffle_purify(rho)
    else:
        coeffs = cholesky_purify(rho)
        coeff_array = coeffs.C
        state = coefficients_to_state(coeffs)
    report = verify_purification(state, rho)
    Path(out_path).write_text(io.dump_state(state))
    if coeffs_path:
        Path(coeffs_path).write_text(io.dump_coefficients(coeff_array))
    click.echo(f"max_abs_error={report.max_abs_error!r}")
    if not report.passed:
        click.echo(f"ReconstructionFailure: round-trip error {report.max_abs_error!r}", err=True)
        sys.exit(3)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(), help="Density matrix JSON.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Circuit JSON.")
@_guarded
def synth(input_path, out_path):
    """Purify, extract circuit parameters, and emit the gate schedule."""
    rho = io.load_density(Path(input_path).read_text())
    coeffs = cholesky_purify(rho)
    params = extract_parameters(coeffs)
    schedule = schedule_from_parameters(params)
    target = coefficients_to_state(coeffs)
    prepared = apply_schedule(schedule)
    deviation = float(np.max(np.abs(prepared.amplitudes - target.amplitudes)))
    Path(out_path).write_text(io.dump_circuit(rho.shape, params, schedule))
    click.echo(f"parameters={params.parameter_count} max_deviation={deviation!r}")
    if deviation > 1e-10:
        click.echo(f"ReconstructionFailure: schedule deviates by {deviation!r}", err=True)
        sys.exit(3)


@main.command()
@click.option("--circuit", "circuit_path", required=True, type=click.Path(), help="Circuit JSON.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Output state JSON.")
@click.option("--expect", "expect_path", type=click.Path(), help="Density matrix to compare against.")
@_guarded
def simulate(circuit_path, out_path, expect_path):
    """Apply a circuit's gate schedule to |0...0> and optionally check it."""
    _, _, schedule = io.load_circuit(Path(circuit_path).read_text())
    state = apply_schedule(schedule)
    Path(out_path).write_text(io.dump_state(state))
    if expect_path:
        rho = io.load_density(Path(expect_path).read_text())
        report = verify_purification(state, rho)
        click.echo(f"max_abs_error={report.max_abs_error!r}")
        if not report.passed:
            click.echo(
                f"ReconstructionFailure: simulated state misses target by "
                f"{report.max_abs_error!r}",
                err=True,
            )
            sys.exit(3)


@main.command()
@click.option("--alpha", type=float, help="Single mixing angle in [0, pi/2].")
@click.option("--alphas", type=int, help="Number of mixing angles sweeping [0, pi/2].")
@click.option("--grid", default="50x50", show_default=True, help="Sampling grid, THETAxPHI.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Surface CSV.")
@_guarded
def bloch(alpha, alphas, grid, out_path):
    """Emit surface points of the contracted/translated Bloch sphere."""
    if (alpha is None) == (alphas is None):
        raise click.UsageError("exactly one of --alpha or --alphas is required")
    try:
        n_theta, n_phi = (int(part) for part in grid.lower().split("x"))
    except ValueError as exc:
        raise ValueError(f"grid must look like 50x50, got {grid!r}") from exc
    values = [alpha] if alpha is not None else io.sweep_alphas(alphas)
    Path(out_path).write_text(io.bloch_csv(values, n_theta, n_phi))
    click.echo(f"rows={len(values) * n_theta * n_phi}")


@main.command()
@click.option("--d", type=int, required=True, help="Local dimension (>= 2).")
@click.option("--n", type=int, required=True, help="Number of qudits (>= 1).")
@click.option("--seed", type=int, required=True, help="Stream seed.")
@click.option("--rank", type=int, help="Limit the Ginibre factor to this rank.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Density matrix JSON.")
@_guarded
def random(d, n, seed, rank, out_path):
    """Write a seeded random density matrix (Ginibre ensemble)."""
    rho = random_density(d, n, seed, rank=rank)
    Path(out_path).write_text(io.dump_density(rho))
    purity = float(np.trace(rho.entries @ rho.entries).real)
    click.echo(f"purity={purity!r}")


if __name__ == "__main__":
    main()

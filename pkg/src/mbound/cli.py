"""Command-line front end.

Subcommands: ``classify`` (structural flags for one matrix), ``spectral``
(rho or tau of one matrix), ``bounds`` (one bound family on explicit
matrix files), ``verify`` (randomized suites).

Exit codes: 0 ok, 2 input error (unreadable/malformed/non-square file,
bad flag combination), 3 class gate (matrix fails the precondition of the
requested quantity), 4 bound violation (a reported bound landed on the
wrong side of its oracle — either an implementation bug or a genuine
counterexample; the report names the offending formula).
"""
from __future__ import annotations

import json
import os
import sys
from typing import List, Optional

import click
import numpy as np

from . import bounds as bnd
from . import harness
from .core import classify, fan_power, fan_product, hadamard
from .errors import (ClassMismatchError, ConvergenceError, MatrixFormatError,
                     SingularMatrixError)
from .spectral import inverse, jacobi_radius, rho_nonnegative, tau_m_matrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CLASS = 3
EXIT_VIOLATION = 4

_FMT = "%.17g"  # full float64 round-trip


# ----------------------------------------------------------------------
# matrix file I/O
# ----------------------------------------------------------------------

def read_matrix(path: str) -> np.ndarray:
    """Auto-detects the structured format (leading '{') vs plain text.

    Text: one row per line, whitespace-separated decimals, equal counts.
    Structured: one JSON object {"rows": [[...], ...]}.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}")
    stripped = raw.lstrip()
    if stripped.startswith("{"):
        return _parse_structured(raw, path)
    return _parse_text(raw, path)


def _parse_structured(raw: str, path: str) -> np.ndarray:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON: {exc.msg}",
                                line=exc.lineno, column=exc.colno)
    if not isinstance(obj, dict) or "rows" not in obj:
        raise MatrixFormatError(f"{path}: structured format needs a 'rows' key")
    rows = obj["rows"]
    if not isinstance(rows, list) or not rows:
        raise MatrixFormatError(f"{path}: 'rows' must be a non-empty array")
    width = None
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise MatrixFormatError(f"{path}: row {i + 1} is not an array",
                                    line=i + 1)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(
                f"{path}: row {i + 1} has {len(row)} entries, expected {width}",
                line=i + 1)
        vals = []
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MatrixFormatError(
                    f"{path}: row {i + 1}, entry {j + 1} is not a number",
                    line=i + 1, column=j + 1)
            vals.append(float(x))
        out.append(vals)
    return _require_square(np.array(out, dtype=np.float64), path)


def _parse_text(raw: str, path: str) -> np.ndarray:
    out = []
    width = None
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        tokens = line.split()
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise MatrixFormatError(
                f"{path}: line {lineno} has {len(tokens)} entries, expected {width}",
                line=lineno)
        vals = []
        for col, tok in enumerate(tokens, start=1):
            try:
                vals.append(float(tok))
            except ValueError:
                raise MatrixFormatError(
                    f"{path}: line {lineno}, column {col}: not a number: {tok!r}",
                    line=lineno, column=col)
        out.append(vals)
    if not out:
        raise MatrixFormatError(f"{path}: empty matrix file")
    return _require_square(np.array(out, dtype=np.float64), path)


def _require_square(a: np.ndarray, path: str) -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise MatrixFormatError(
            f"{path}: matrix is {a.shape[0]}x{a.shape[1]}, expected square")
    if not np.all(np.isfinite(a)):
        raise MatrixFormatError(f"{path}: non-finite entry")
    return a


def write_matrix(a: np.ndarray, path: str, structured: bool = False) -> None:
    """Serialization that round-trips exactly through read_matrix."""
    if structured:
        rows = [[float(_FMT % x) for x in row] for row in a]
        payload = json.dumps({"rows": rows}) + "\n"
    else:
        payload = "\n".join(" ".join(_FMT % x for x in row) for row in a) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)


# ----------------------------------------------------------------------
# report emission: table / tsv / jsonl from the same row dicts
# ----------------------------------------------------------------------

def _emit(rows: List[dict], fmt: str) -> None:
    if not rows:
        return
    keys = list(rows[0].keys())
    if fmt == "jsonl":
        for row in rows:
            click.echo(json.dumps(row))
    elif fmt == "tsv":
        click.echo("\t".join(keys))
        for row in rows:
            click.echo("\t".join(_cell(row.get(k)) for k in keys))
    else:
        widths = [max(len(k), max(len(_cell(r.get(k))) for r in rows))
                  for k in keys]
        click.echo("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
        for row in rows:
            click.echo("  ".join(_cell(row.get(k)).ljust(w)
                                 for k, w in zip(keys, widths)))


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return "%.12g" % x
    if isinstance(x, (list, tuple)):
        return ",".join(str(v) for v in x)
    return str(x)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path: str) -> np.ndarray:
    try:
        return read_matrix(path)
    except MatrixFormatError as exc:
        # parse messages already carry line/column diagnostics
        _fail(EXIT_INPUT, str(exc))


def _seed_default() -> int:
    env = os.environ.get("MBOUND_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            _fail(EXIT_INPUT, f"MBOUND_SEED is not an integer: {env!r}")
    return 0


format_option = click.option(
    "--format", "fmt", type=click.Choice(["table", "tsv", "jsonl"]),
    default="table", show_default=True, help="Report format.")


@click.group()
@click.version_option(package_name="mbound")
def main():
    """Spectral bound toolkit for entrywise matrix products."""


@main.command("classify")
@click.argument("file", type=click.Path())
@format_option
def cmd_classify(file, fmt):
    """Structural classification flags for one matrix file."""
    a = _load(file)
    c = classify(a)
    rows = [{
        "nonnegative": c.nonnegative,
        "z_matrix": c.z_matrix,
        "nonsingular_m_matrix": c.nonsingular_m_matrix,
        "irreducible": c.irreducible,
        "strictly_row_dd": c.strictly_row_dd,
    }]
    if fmt == "table":
        for k, v in rows[0].items():
            click.echo(f"{k}: {str(v).lower()}")
    else:
        _emit(rows, fmt)
    sys.exit(EXIT_OK)


@main.command("spectral")
@click.argument("which", type=click.Choice(["rho", "tau"]))
@click.argument("file", type=click.Path())
@format_option
def cmd_spectral(which, file, fmt):
    """Perron root (rho) of a nonnegative matrix, or minimum eigenvalue
    (tau) of a nonsingular M-matrix."""
    a = _load(file)
    try:
        res = rho_nonnegative(a) if which == "rho" else tau_m_matrix(a)
    except ClassMismatchError as exc:
        _fail(EXIT_CLASS, str(exc))
    except ConvergenceError as exc:
        _fail(1, f"iteration did not converge: {exc}")
    rows = [{"quantity": which, "value": res.value,
             "iterations": res.iterations, "residual": res.residual}]
    if fmt == "table":
        click.echo(f"{which}: {_FMT % res.value}")
        click.echo(f"iterations: {res.iterations}")
        click.echo(f"residual: {res.residual:.3e}")
    else:
        _emit(rows, fmt)
    sys.exit(EXIT_OK)


def _bound_rows(oracle: float, ladder, lower: bool):
    rows = []
    for br in ladder:
        slack = (oracle - br.value) if lower else (br.value - oracle)
        rows.append({"bound": br.name, "direction": br.direction,
                     "value": br.value, "slack": slack})
    return rows


@main.command("bounds")
@click.argument("family", type=click.Choice(
    ["hadamard", "fan", "hadamard-inverse", "multi-fan"]))
@click.argument("files", nargs=-1, required=True, type=click.Path())
@click.option("--variant", type=click.Choice(["statement", "proof"]),
              default="proof", show_default=True,
              help="Deficit-oval selector for the hadamard-inverse family.")
@click.option("--p", "p_spec", default=None,
              help="Comma-separated Hölder exponents for multi-fan "
                   "(default: all ones).")
@click.option("--tol", type=float, default=1e-8, show_default=True,
              help="Direction-violation tolerance for the exit-4 check.")
@format_option
def cmd_bounds(family, files, variant, p_spec, tol, fmt):
    """Evaluate one bound family against its oracle on explicit files.

    hadamard, fan and hadamard-inverse take exactly two files; multi-fan
    takes one or more (the --p list must match the file count).
    """
    if family != "multi-fan" and len(files) != 2:
        _fail(EXIT_INPUT, f"family {family} takes exactly two matrix files")
    mats = [_load(f) for f in files]
    try:
        if family == "hadamard":
            a, b = mats
            rho_a = rho_nonnegative(a).value
            rho_b = rho_nonnegative(b).value
            oracle = rho_nonnegative(hadamard(a, b)).value
            ladder = (
                bnd.rho_bound_product(rho_a, rho_b),
                bnd.rho_bound_affine(a, b, rho_a, rho_b),
                bnd.rho_bound_oval_deficit(a, b, rho_a, rho_b),
                bnd.rho_bound_oval_rowmax(a, b, rho_a, rho_b),
            )
            lower = False
        elif family == "fan":
            a, b = mats
            tau_a = tau_m_matrix(a).value
            tau_b = tau_m_matrix(b).value
            oracle = tau_m_matrix(fan_product(a, b)).value
            ladder = (
                bnd.tau_bound_product(tau_a, tau_b),
                bnd.tau_bound_affine(a, b, tau_a, tau_b),
                bnd.tau_bound_oval_deficit(a, b, tau_a, tau_b),
                bnd.tau_bound_oval_rowmax(a, b, tau_a, tau_b),
            )
            lower = True
        elif family == "hadamard-inverse":
            a, b = mats
            binv = inverse(b)
            tau_a = tau_m_matrix(a).value
            tau_b = tau_m_matrix(b).value
            oracle = tau_m_matrix(hadamard(a, binv)).value
            ladder = (
                bnd.tau_hinv_diag_floor(tau_a, binv),
                bnd.tau_hinv_jacobi_ratio(a, b, jacobi_radius(a), jacobi_radius(b)),
                bnd.tau_hinv_chain(a, b),
                bnd.tau_hinv_jacobi_oval(a, b, binv, jacobi_radius(a), jacobi_radius(b)),
                bnd.tau_hinv_deficit_oval(a, b, binv, tau_a, tau_b, variant=variant),
            )
            lower = True
        else:
            p = _parse_exponents(p_spec, len(mats))
            taus_pow = [tau_m_matrix(fan_power(mk, pk)).value
                        for mk, pk in zip(mats, p.p)]
            acc = mats[0]
            for mk in mats[1:]:
                acc = fan_product(acc, mk)
            oracle = tau_m_matrix(acc).value
            ladder = (bnd.tau_multi_fan(mats, p, taus_pow),)
            lower = True
    except ClassMismatchError as exc:
        _fail(EXIT_CLASS, str(exc))
    except SingularMatrixError as exc:
        _fail(EXIT_CLASS, str(exc))
    except ConvergenceError as exc:
        _fail(1, f"iteration did not converge: {exc}")
    except ValueError as exc:
        _fail(EXIT_INPUT, str(exc))

    rows = _bound_rows(oracle, ladder, lower)
    if fmt == "table":
        click.echo(f"oracle: {_FMT % oracle}")
    else:
        rows = [{"bound": "oracle", "direction": "-", "value": oracle,
                 "slack": 0.0}] + rows
    if family == "hadamard-inverse":
        deficit = ladder[-1]
        note = ("variant: %s (proof=%.17g statement=%.17g)" % (
            deficit.components["variant"],
            deficit.components["proof_value"],
            deficit.components["statement_value"]))
        if fmt == "table":
            click.echo(note)
    _emit(rows, fmt)
    bad = [r for r in rows if r["bound"] != "oracle" and r["slack"] < -tol]
    if bad:
        for r in bad:
            click.echo(f"violation: {r['bound']} (slack {r['slack']:.3e})",
                       err=True)
        sys.exit(EXIT_VIOLATION)
    sys.exit(EXIT_OK)


def _parse_exponents(p_spec: Optional[str], m: int) -> bnd.HolderExponents:
    if p_spec is None:
        return bnd.HolderExponents(tuple([1] * m))
    try:
        parts = tuple(int(tok) for tok in p_spec.split(","))
    except ValueError:
        _fail(EXIT_INPUT, f"--p must be comma-separated integers: {p_spec!r}")
    if len(parts) != m:
        _fail(EXIT_INPUT,
              f"--p lists {len(parts)} exponents for {m} matrices")
    try:
        return bnd.HolderExponents(parts)
    except ValueError as exc:
        _fail(EXIT_INPUT, str(exc))


@main.command("verify")
@click.argument("family", type=click.Choice(
    ["hadamard", "fan", "hadamard-inverse", "multi-fan"]))
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=None,
              help="RNG seed (default: MBOUND_SEED env var, else 0).")
@click.option("--order", type=int, default=None,
              help="Fixed matrix order (shorthand for equal min/max).")
@click.option("--order-min", type=int, default=2, show_default=True)
@click.option("--order-max", type=int, default=8, show_default=True)
@click.option("--density", type=float, default=1.0, show_default=True)
@click.option("--margin", type=float, default=0.5, show_default=True,
              help="Diagonal dominance margin for generated M-matrices.")
@click.option("--variant", type=click.Choice(["statement", "proof"]),
              default="proof", show_default=True)
@click.option("--m", "m_count", type=int, default=None,
              help="Number of factors for multi-fan (default: length of --p).")
@click.option("--p", "p_spec", default=None,
              help="Comma-separated Hölder exponents for multi-fan.")
@click.option("--with-paper-examples", "with_examples", is_flag=True,
              help="Inject the worked reference pair as trial 0 and compare "
                   "against the circulated reference values.")
@click.option("--tol", type=float, default=harness.VIOLATION_TOL,
              show_default=True, help="Direction-violation tolerance.")
@click.option("--golden-tol-chain", type=float,
              default=harness.GOLDEN_TOL_CHAIN, show_default=True,
              help="Tolerance for chained reference values.")
@click.option("--golden-tol-direct", type=float,
              default=harness.GOLDEN_TOL_DIRECT, show_default=True,
              help="Tolerance for directly stated spectral reference values.")
@format_option
def cmd_verify(family, trials, seed, order, order_min, order_max, density,
               margin, variant, m_count, p_spec, with_examples, tol,
               golden_tol_chain, golden_tol_direct, fmt):
    """Run a randomized suite and exit 0 iff it reports zero violations."""
    if seed is None:
        seed = _seed_default()
    if order is not None:
        order_min = order_max = order
    if not 1 <= order_min <= order_max <= 12:
        _fail(EXIT_INPUT, "order range must satisfy 1 <= min <= max <= 12")
    if trials < 1:
        _fail(EXIT_INPUT, "--trials must be >= 1")
    kind = "nonnegative" if family == "hadamard" else "m_matrix"
    try:
        spec = harness.GeneratorSpec(kind=kind, order=order_min,
                                     density=density, seed=seed,
                                     diagonal_margin=margin)
    except ValueError as exc:
        _fail(EXIT_INPUT, str(exc))
    common = dict(order_min=order_min, order_max=order_max,
                  with_examples=with_examples, tol=tol,
                  golden_tol_chain=golden_tol_chain,
                  golden_tol_direct=golden_tol_direct)
    try:
        if family == "hadamard":
            reports = harness.run_hadamard_suite(trials, spec, **common)
        elif family == "fan":
            reports = harness.run_fan_suite(trials, spec, **common)
        elif family == "hadamard-inverse":
            reports = harness.run_hinv_suite(trials, spec, variant=variant,
                                             **common)
        else:
            if p_spec is None and m_count is None:
                _fail(EXIT_INPUT, "multi-fan needs --p (and optionally --m)")
            m = m_count if m_count is not None else len(p_spec.split(","))
            p = _parse_exponents(p_spec, m)
            reports = harness.run_multi_fan_suite(trials, p, spec, **common)
    except ClassMismatchError as exc:
        _fail(EXIT_CLASS, str(exc))
    except ConvergenceError as exc:
        _fail(1, f"iteration did not converge: {exc}")
    except ValueError as exc:
        _fail(EXIT_INPUT, str(exc))

    rows = []
    max_slack = 0.0
    n_viol = 0
    for rep in reports:
        lower = rep.oracle_name.startswith("tau")
        for br in rep.bounds:
            slack = (rep.oracle - br.value) if lower else (br.value - rep.oracle)
            max_slack = max(max_slack, slack)
        n_viol += len(rep.violations)
        rows.append({
            "trial": rep.trial,
            "order": rep.order,
            "oracle": rep.oracle,
            **{br.name: br.value for br in rep.bounds},
            "violations": ";".join(rep.violations) if rep.violations else "",
        })
    _emit(rows, fmt)
    click.echo(f"family={family} trials={trials} violations={n_viol} "
               f"max_slack={max_slack:.6g}")
    sys.exit(EXIT_OK if n_viol == 0 else EXIT_VIOLATION)


if __name__ == "__main__":
    main()

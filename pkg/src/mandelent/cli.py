"""Command line interface: ``mandelent <command> ...``.

Results go to stdout as JSON (or CSV where offered). Errors go to stderr as a
JSON object, with exit code 2 for unparsable input, 3 for a violated
precondition and 4 for anything else.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from . import entropy as ent
from .angles import format_angle, format_binary, parse_angle
from .errors import MandelentError, ParseError, PreconditionError
from .realline import enumerate_windows, tune
from .symbolic import dominant_approximations, is_dominant, is_extremal, parse_runstring, pseudocenter, runlength
from .veins import orbit_portrait, surgery, surgery_inverse

EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 2, 3, 4
DEPTH_CAP = 18


def _fmt(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def _emit(obj, out=None):
    text = json.dumps(_fmt(obj), indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _angle(text: str) -> Fraction:
    return parse_angle(text)


def _vein(text: str):
    try:
        p, q = (int(t) for t in text.split("/"))
    except ValueError as exc:
        raise ParseError(f"cannot parse vein {text!r}, expected p/q") from exc
    return orbit_portrait(p, q)


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ParseError(f"{name}={raw!r} is not a number") from exc


def _tolerances(tol, scan):
    tol = tol if tol is not None else _env_float("MENT_TOL", ent.DEFAULT_TOL)
    scan = scan if scan is not None else _env_float("MENT_SCAN", ent.DEFAULT_SCAN)
    return tol, scan


method_opt = click.option("--method", type=click.Choice(ent.METHODS), default="automaton", show_default=True)
vein_opt = click.option("--vein", default="1/2", show_default=True, help="principal vein p/q")
tol_opt = click.option("--tol", type=float, default=None, help="root / eigenvalue tolerance (env MENT_TOL)")
scan_opt = click.option("--scan-step", "scan", type=float, default=None, help="kneading scan step (env MENT_SCAN)")
format_opt = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Entropy, dimension and combinatorics of the real and principal veins."""


def _entropy(angle, vein, method, tol, scan, kind="H"):
    tol, scan = _tolerances(tol, scan)
    return ent.dimension_of(_angle(angle), _vein(vein), method=method, kind=kind, tol=tol, scan_step=scan)


@cli.command()
@click.argument("angle")
@vein_opt
@method_opt
@tol_opt
@scan_opt
def entropy(angle, vein, method, tol, scan):
    """Growth number and entropy of the Hubbard tree for a parameter angle."""
    _emit(_entropy(angle, vein, method, tol, scan).to_json())


@cli.command()
@click.argument("angle")
@vein_opt
@method_opt
@click.option("--set", "kind", type=click.Choice(["H", "S"]), default="H", show_default=True)
@tol_opt
@scan_opt
def dimension(angle, vein, method, kind, tol, scan):
    """Hausdorff dimension of H_c (or S_c on the real vein)."""
    _emit(_entropy(angle, vein, method, tol, scan, kind).to_json())


@cli.command()
@click.option("--depth", type=int, required=True)
@format_opt
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def windows(depth, fmt, out):
    """Real hyperbolic windows found by bisection up to a depth."""
    if depth > DEPTH_CAP:
        raise PreconditionError(f"depth {depth} exceeds the cap {DEPTH_CAP}")
    ws = enumerate_windows(depth)
    if fmt == "json":
        _emit([w.to_json() for w in ws], out)
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lo_num", "lo_den", "hi_num", "hi_den", "period"])
    for w in ws:
        writer.writerow([w.lo.numerator, w.lo.denominator, w.hi.numerator, w.hi.denominator, w.period])
    _write_text(buf.getvalue(), out)


def _write_text(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


SWEEP_COLUMNS = ["theta_num", "theta_den", "growth", "entropy_nats", "dimension", "method", "error"]


def _sweep_row(args):
    theta, vein, method, tol, scan = args
    try:
        r = ent.dimension_of(theta, _vein(vein), method=method, tol=tol, scan_step=scan)
        vals = [f"{r.growth:.12g}", f"{r.entropy_nats:.12g}", f"{r.dimension:.12g}", r.method, ""]
    except MandelentError as exc:
        vals = ["", "", "", method, f"{type(exc).__name__}: {exc}"]
    return [theta.numerator, theta.denominator] + vals


def sweep_rows(lo: Fraction, hi: Fraction, den: int, vein="1/2", method="automaton",
               tol=ent.DEFAULT_TOL, scan=ent.DEFAULT_SCAN, jobs=1) -> list[list]:
    """Rows for the angles k/den with lo < k/den <= hi, in increasing order."""
    if den <= 0 or den % 2 == 0:
        raise PreconditionError("the sweep denominator must be odd and positive")
    if not lo < hi:
        raise PreconditionError("need from < to")
    thetas = [Fraction(k, den) for k in range(den + 1) if lo < Fraction(k, den) <= hi]
    args = [(t, vein, method, tol, scan) for t in thetas]
    if jobs <= 1:
        return [_sweep_row(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_row, args, chunksize=16))


@cli.command()
@click.option("--from", "lo", default="0", show_default=True)
@click.option("--to", "hi", default="1/2", show_default=True)
@click.option("--den", type=int, default=1023, show_default=True)
@vein_opt
@method_opt
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
@tol_opt
@scan_opt
def sweep(lo, hi, den, vein, method, out, jobs, tol, scan):
    """Growth number over the grid k/den in (from, to], as CSV."""
    tol, scan = _tolerances(tol, scan)
    _vein(vein)
    rows = sweep_rows(_angle(lo), _sweep_top(hi), den, vein, method, tol, scan, jobs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    writer.writerows(rows)
    failed = sum(1 for r in rows if r[-1])
    if failed:
        click.echo(json.dumps({"warning": f"{failed} rows failed"}), err=True)
    _write_text(buf.getvalue(), out)


def _sweep_top(text: str) -> Fraction:
    # "1" is accepted as the top of the circle
    return Fraction(1) if text.strip() in ("1", "1/1") else _angle(text)


@cli.command("pseudocenter")
@click.argument("lo")
@click.argument("hi")
def pseudocenter_cmd(lo, hi):
    """Dyadic angle of shortest expansion in (lo, hi)."""
    c = pseudocenter(_angle(lo), _sweep_top(hi))
    _emit({"pseudocenter": format_angle(c), "binary": format_binary(c)})


@cli.command("runlength")
@click.argument("angle")
def runlength_cmd(angle):
    """Run-length code of the binary expansion."""
    _emit({"angle": format_angle(_angle(angle)), "runlength": str(runlength(_angle(angle)))})


@cli.command()
@click.argument("string")
def extremal(string):
    """Whether a finite run string is extremal."""
    _emit({"string": string, "extremal": is_extremal(parse_runstring(string))})


@cli.command()
@click.argument("string")
@click.option("--count", type=int, default=0, help="also list this many dominant approximations")
def dominant(string, count):
    """Whether a finite run string is dominant, with approximations S^n 1 1."""
    s = parse_runstring(string)
    out = {"string": string, "dominant": is_dominant(s)}
    if count:
        out["approximations"] = [str(a) for a in dominant_approximations(s, count)]
    _emit(out)


@cli.command("tune")
@click.option("--sigma0", default="01", show_default=True)
@click.option("--sigma1", default="10", show_default=True)
@click.argument("angle")
def tune_cmd(sigma0, sigma1, angle):
    """Tuning substitution of the binary digits of an angle."""
    if set(sigma0 + sigma1) - {"0", "1"}:
        raise ParseError("tuning words must be binary")
    t = tune(sigma0, sigma1, _angle(angle))
    _emit({"angle": format_angle(t), "binary": format_binary(t)})


@cli.command("surgery")
@click.option("--vein", default="1/3", show_default=True)
@click.argument("angle")
def surgery_cmd(vein, angle):
    """Image of a real angle in the principal vein."""
    t = surgery(_vein(vein), _angle(angle))
    _emit({"angle": format_angle(t), "binary": format_binary(t)})


@cli.command("surgery-inverse")
@click.option("--vein", default="1/3", show_default=True)
@click.argument("angle")
def surgery_inverse_cmd(vein, angle):
    """Real angle whose surgery image is the given vein angle."""
    t = surgery_inverse(_vein(vein), _angle(angle))
    _emit({"angle": format_angle(t), "binary": format_binary(t)})


@cli.command()
@click.argument("rotation")
def portrait(rotation):
    """Orbit portrait of the rotation number p/q."""
    _emit(_vein(rotation).to_json())


@cli.command("param-dim")
@click.argument("angle")
@click.option("--depth", type=int, default=12, show_default=True)
def param_dim(angle, depth):
    """Box-counting upper estimate for the dimension of P_c."""
    if depth > DEPTH_CAP:
        raise PreconditionError(f"depth {depth} exceeds the cap {DEPTH_CAP}")
    est = ent.param_dimension_estimate(_angle(angle), depth)
    _emit({"angle": angle, "depth": depth, "estimate": est})


@cli.command("conjecture-check")
@click.argument("lo")
@click.argument("hi")
@click.option("--samples", type=int, default=64, show_default=True)
@vein_opt
def conjecture_check(lo, hi, samples, vein):
    """Compare the entropy maximum over (lo, hi) with the value at the pseudocenter."""
    _emit(conjecture_report(_angle(lo), _sweep_top(hi), samples, vein))


def conjecture_report(lo: Fraction, hi: Fraction, samples: int, vein: str = "1/2") -> dict:
    if lo == hi:
        c = format_angle(lo)
        return {"pseudocenter": c, "argmax": c, "agrees": True}
    P = _vein(vein)
    pc = pseudocenter(lo, hi)
    grid = [lo + (hi - lo) * Fraction(j, samples + 1) for j in range(1, samples + 1)]
    values = []
    for t in grid:
        try:
            values.append((ent.dimension_of(t, P).growth, t))
        except MandelentError:
            continue
    g_pc = ent.dimension_of(pc, P).growth
    best, arg = max(values, key=lambda v: v[0]) if values else (g_pc, pc)
    return {
        "pseudocenter": format_angle(pc),
        "growth_at_pseudocenter": g_pc,
        "max_growth": best,
        "argmax": format_angle(arg),
        "samples": len(values),
        "agrees": g_pc >= best - 1e-9,
    }


def _fail(code: int, exc: BaseException) -> int:
    click.echo(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}), err=True)
    return code


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="mandelent", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort as exc:
        return _fail(EXIT_INTERNAL, exc)
    except (ParseError, click.UsageError) as exc:
        return _fail(EXIT_PARSE, exc)
    except PreconditionError as exc:
        return _fail(EXIT_PRECONDITION, exc)
    except Exception as exc:  # noqa: BLE001
        return _fail(EXIT_INTERNAL, exc)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

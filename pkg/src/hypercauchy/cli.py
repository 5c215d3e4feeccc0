"""``hypercauchy`` command line: density grids, sampling, verification and figure data.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path
from typing import Callable, Optional

import click
import numpy as np

from . import distributions as dist
from ._accel import configure_threads
from .errors import HyperCauchyError
from .numerics import GridSpec
from .sampling import SAMPLER_LAWS, draw_batch
from .special import stable13_subordinator_pdf, third_order_kernel
from .verification import reports_to_json, reports_to_tsv, run_suite, suite_names, summary_table

PDF_LAWS = ("hyper", "gk", "hk", "folded", "asym", "asym_m", "third", "p6", "cauchy", "stable13", "kernel3")
FIGURES = ("p4p8", "gk", "pn_large", "fold_sym", "third")


def _on_support(f: Callable, lo: float, closed: bool = True) -> Callable:
    # zero density outside [lo, inf), or (lo, inf) when not closed
    def g(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        mask = x >= lo if closed else x > lo
        if mask.any():
            out[mask] = f(x[mask])
        return out
    return g


def density_function(law: str, n: Optional[int], k: Optional[int], t: float, m: Optional[int]):
    """Vectorised density for a CLI law name plus its parameter echo."""
    def need(name, value):
        if value is None:
            raise click.UsageError(f"--{name} is required for law {law!r}")
        return value

    if law == "hyper":
        p = dist.HyperCauchyParams(need("n", n), t)
        return (lambda x: dist.hyper_cauchy_pdf(x, p)), {"n": p.n, "t": t}
    if law == "gk":
        nn, kk = need("n", n), need("k", k)
        dist.ComponentSpec(nn, kk, t)
        return (lambda x: dist.disturbance_g(x, t, kk, nn)), {"n": nn, "k": kk, "t": t}
    if law == "hk":
        c = dist.ComponentSpec(need("n", n), need("k", k), t)
        return (lambda x: dist.component_pdf(x, c)), {"n": c.n, "k": c.k, "t": t}
    if law == "folded":
        c = dist.ComponentSpec(need("n", n), need("k", k), t)
        return _on_support(lambda x: dist.folded_pdf(x, c), 0.0), {"n": c.n, "k": c.k, "t": t}
    if law == "asym":
        p = dist.AsymCauchyParams.from_k(need("k", k), t)
        return (lambda x: dist.asym_cauchy_pdf(x, p)), {"k": p.k, "t": t}
    if law == "asym_m":
        p = dist.AsymCauchyParams.from_m(need("m", m), t)
        return (lambda x: dist.asym_cauchy_pdf(x, p)), {"m": p.m, "t": t}
    if law == "third":
        return (lambda x: dist.third_order_pdf(x, t)), {"t": t}
    if law == "p6":
        return (lambda x: dist.p6_pdf(x, t)), {"t": t}
    if law == "cauchy":
        return (lambda x: dist.cauchy_pdf(x, t)), {"t": t}
    if law == "stable13":
        return _on_support(lambda s: stable13_subordinator_pdf(s, t), 0.0, closed=False), {"t": t}
    if law == "kernel3":
        return (lambda x: third_order_kernel(x, t)), {"t": t}
    raise click.UsageError(f"unknown law {law!r}")


def format_curve(xs, ys, fmt: str, law: str = "", params: Optional[dict] = None) -> str:
    if fmt == "json":
        return json.dumps({"law": law, "params": params or {},
                           "x": [float(v) for v in xs], "value": [float(v) for v in ys]})
    rows = ["x,value"]
    rows.extend(f"{x:.12g},{y:.12g}" for x, y in zip(xs, ys))
    return "\n".join(rows) + "\n"


def _emit(text: str, output: Optional[str]):
    if output in (None, "-"):
        click.echo(text, nl=not text.endswith("\n"))
    else:
        Path(output).write_text(text, encoding="utf-8")


def _grid_option(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except HyperCauchyError as exc:
        raise click.BadParameter(str(exc), param_hint="--grid") from None


def evaluate_curve(law, n=None, k=None, t=1.0, m=None, grid: Optional[GridSpec] = None):
    f, params = density_function(law, n, k, t, m)
    if grid is None:
        lo = 0.0 if law in ("folded", "stable13") else -5.0 * t
        grid = GridSpec(lo, 5.0 * t, 2001)
    xs = grid.values()
    ys = np.asarray(f(xs), dtype=float)
    if not np.all(np.isfinite(ys)):
        raise HyperCauchyError("non-finite density values on the grid")
    return xs, ys, params


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Cap worker threads (overrides HYPERCAUCHY_THREADS).")
def main(threads):
    """Hyper-Cauchy and related Cauchy-type laws."""
    configure_threads(threads)


def _law_params(f):
    f = click.option("--m", "m", type=click.IntRange(min=2), default=None, help="Generic order m.")(f)
    f = click.option("--t", "t", type=float, default=1.0, show_default=True, help="Time / scale t > 0.")(f)
    f = click.option("--k", "k", type=click.IntRange(min=1), default=None, help="Component or odd-order index k.")(f)
    f = click.option("--n", "n", type=click.IntRange(min=2), default=None, help="Family index n (order 2^n).")(f)
    return f


def _usage_errors(fn):
    # domain violations in the library surface as click usage errors (exit 2)
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except HyperCauchyError as exc:
            raise click.UsageError(str(exc)) from None
    return wrapper


@main.command("pdf")
@click.option("--law", type=click.Choice(PDF_LAWS), required=True)
@_law_params
@click.option("--grid", "grid_text", default=None, metavar="A:B:N", help="x_min:x_max:points.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", default=None, help="Output path (default stdout).")
@_usage_errors
def pdf_cmd(law, n, k, t, m, grid_text, fmt, output):
    """Evaluate a density on a uniform grid."""
    grid = _grid_option(grid_text) if grid_text else None
    xs, ys, params = evaluate_curve(law, n, k, t, m, grid)
    _emit(format_curve(xs, ys, fmt, law, params), output)


@main.command("sample")
@click.option("--law", type=click.Choice(SAMPLER_LAWS), required=True)
@_law_params
@click.option("-n", "--samples", "count", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", default=None)
@_usage_errors
def sample_cmd(law, n, k, t, m, count, seed, fmt, output):
    """Draw a reproducible batch."""
    params = {"t": t}
    for name, value in (("n", n), ("k", k), ("m", m)):
        if value is not None:
            params[name] = value
    try:
        batch = draw_batch(law, count, seed, **params)
    except KeyError as exc:
        raise click.UsageError(f"--{exc.args[0]} is required for law {law!r}") from None
    _emit(batch.to_json() if fmt == "json" else batch.to_csv(), output)


@main.command("verify")
@click.option("--suite", type=click.Choice(suite_names()), default="all", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Shorthand for --format json.")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "tsv"]), default="table", show_default=True)
@click.option("--output", "-o", default=None)
def verify_cmd(suite, as_json, fmt, output):
    """Run verification checks; exit status 1 if any fails."""
    reports = run_suite(suite)
    if as_json:
        fmt = "json"
    text = {"json": reports_to_json, "tsv": reports_to_tsv, "table": summary_table}[fmt](reports)
    _emit(text if text.endswith("\n") else text + "\n", output)
    if not all(r.passed for r in reports):
        sys.exit(1)


def figure_curves(figure_id: str):
    """``(file stem, law, params)`` for every curve of a figure."""
    if figure_id == "p4p8":
        return [("p4", "hyper", {"n": 2}), ("p8", "hyper", {"n": 3})]
    if figure_id == "gk":
        return [("gk_n3_k1", "gk", {"n": 3, "k": 1}), ("gk_n3_k3", "gk", {"n": 3, "k": 3})]
    if figure_id == "pn_large":
        return [(f"p_n{n}", "hyper", {"n": n}) for n in (5, 10, 15, 20)]
    if figure_id == "fold_sym":
        out = []
        for k in (1, 3):
            out.append((f"folded_n3_k{k}", "folded", {"n": 3, "k": k}))
            out.append((f"symmetrized_n3_k{k}", "hk", {"n": 3, "k": k}))
        return out
    if figure_id == "third":
        return [("third_order", "third", {})]
    raise click.UsageError(f"unknown figure {figure_id!r}")


@main.command("figure")
@click.argument("figure_id", type=click.Choice(FIGURES))
@click.option("--outdir", type=click.Path(file_okay=False), default="figures", show_default=True)
@click.option("--t", "t", type=float, default=1.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=2001, show_default=True)
@_usage_errors
def figure_cmd(figure_id, outdir, t, points):
    """Write one CSV per curve of a figure; prints the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for stem, law, params in figure_curves(figure_id):
        lo = 0.0 if law == "folded" else -5.0 * t
        grid = GridSpec(lo, 5.0 * t, points)
        xs, ys, _ = evaluate_curve(law, t=t, grid=grid, **params)
        path = out / f"{stem}.csv"
        path.write_text(format_curve(xs, ys, "csv"), encoding="utf-8")
        click.echo(str(path))


if __name__ == "__main__":  # pragma: no cover
    main()

"""Command-line front end: exact coefficients, tables, fits, verification.

Exact rationals are always printed as strings ("num/den", integers bare);
floats carry full binary64 precision.  Output is byte-identical for a
given configuration except for the timestamp field, which --no-timestamp
suppresses.
"""

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional

import click

from . import hurwitz, numerics, oracle, quasimod
from .cache import CacheError, DiskCache
from .pseries import rat_to_str

_FAMILIES = ("KN", "H", "F", "B", "C", "LN")


@dataclass
class CommandConfig:
    """Global options shared by the subcommands."""

    cache_dir: Optional[str]
    jobs: int
    no_timestamp: bool
    fmt: str


@click.group()
@click.option("--cache-dir", envvar="CUEGENUS_CACHE_DIR", default=None,
              type=click.Path(file_okay=False),
              help="Directory for the write-once result cache"
                   " (env: CUEGENUS_CACHE_DIR).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default="json", show_default=True,
              help="Output format for tables.")
@click.option("--no-timestamp", is_flag=True,
              help="Suppress the generated_at field for byte-identical"
                   " output.")
@click.option("--jobs", type=int, default=None,
              help="Worker threads for verification sweeps"
                   " (default: cpu count). Results do not depend on it.")
@click.pass_context
def main(ctx, cache_dir, fmt, no_timestamp, jobs):
    """Exact genus-expansion coefficients with independent cross-checks."""
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise click.BadParameter("--jobs must be >= 1")
    if cache_dir:
        hurwitz.set_disk_cache(DiskCache(cache_dir))
    ctx.obj = CommandConfig(cache_dir=cache_dir, jobs=jobs,
                            no_timestamp=no_timestamp, fmt=fmt)


def _coeff_value(family, d, g, N):
    def need(**kw):
        missing = [f"--{k}" for k, v in kw.items() if v is None]
        if missing:
            raise click.UsageError(
                f"family {family} requires {', '.join(missing)}"
            )
    if family == "KN":
        need(N=N, d=d)
        return hurwitz.K_N_coeff(N, d)
    if family == "LN":
        need(N=N, d=d)
        series = hurwitz.L_N_series(N, d)
        return math.factorial(d) * series.coefficient(d)
    need(g=g, d=d)
    if family == "H":
        return hurwitz.H_coeff(g, d)
    if family == "B":
        return hurwitz.B_coeff(g, d)
    if family == "F":
        return hurwitz.F_table(d, g).entry(d, g)
    return hurwitz.C_table(d, g).entry(d, g)


@main.command()
@click.argument("family", type=click.Choice(_FAMILIES))
@click.option("--d", type=int, required=True, help="Degree index.")
@click.option("--g", type=int, default=None, help="Genus index.")
@click.option("--N", "N", type=int, default=None, help="Matrix dimension.")
def coeff(family, d, g, N):
    """Print one exact coefficient of the chosen family."""
    if d < 1:
        raise click.UsageError("--d must be >= 1")
    if g is not None and g < 1:
        raise click.UsageError("--g must be >= 1")
    if N is not None and N < 1:
        raise click.UsageError("--N must be >= 1")
    try:
        value = _coeff_value(family, d=d, g=g, N=N)
    except oracle.CapacityError as exc:
        raise click.ClickException(f"oracle capacity: {exc}")
    click.echo(rat_to_str(Fraction(value)))


def _parse_n_list(text):
    if not text:
        raise click.UsageError("--N is required (comma-separated values)")
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.UsageError(f"cannot parse --N {text!r}")
    if not values or any(v < 1 for v in values):
        raise click.UsageError("--N values must be positive integers")
    return values


def _fmt_float(x):
    if math.isinf(x) or math.isnan(x):
        return str(x)
    return format(x, ".17g")


def _emit(cfg, doc, rows, fieldnames, output):
    """Serialize a result as JSON (envelope) or CSV (rows only)."""
    if cfg.fmt == "json":
        if not cfg.no_timestamp:
            doc["generated_at"] = datetime.now(timezone.utc).isoformat(
                timespec="seconds")
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames,
                                lineterminator="\r\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row[k])
                             for k in fieldnames})
        text = buf.getvalue()
    if output:
        with open(output, "w", newline="") as handle:
            handle.write(text)
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)


def _float_row(row):
    out = {}
    for key, value in row.items():
        out[key] = _fmt_float(value) if isinstance(value, float) else value
    return out


def _genus_table_doc(kind, D, G):
    builders = {
        "K": hurwitz.K_genus_table,
        "F": hurwitz.F_table,
        "B": hurwitz.B_genus_table,
        "C": hurwitz.C_table,
    }
    table = builders[kind](D, G)
    doc = {"kind": kind, "params": {"D": D, "G": G},
           "table": table.to_json_dict()}
    rows = []
    for d in range(D + 1):
        row = {"d": d}
        for g in range(1, G + 1):
            row[f"g{g}"] = rat_to_str(table.entry(d, g))
        rows.append(row)
    fieldnames = ["d"] + [f"g{g}" for g in range(1, G + 1)]
    return doc, rows, fieldnames


@main.command()
@click.argument("kind", type=click.Choice(
    ["convergence", "concentration", "euler", "K", "F", "B", "C"]))
@click.option("--q", type=float, default=None, help="Evaluation point.")
@click.option("--m", type=int, default=1, show_default=True,
              help="Number of genus terms subtracted.")
@click.option("--N", "n_text", default=None,
              help="Comma-separated N values, e.g. 4,8,16.")
@click.option("--D", "D", type=int, default=40, show_default=True,
              help="Series truncation degree.")
@click.option("--G", "G", type=int, default=4, show_default=True,
              help="Genus columns for coefficient tables.")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to a file instead of stdout.")
@click.pass_obj
def table(cfg, kind, q, m, n_text, D, G, output):
    """Emit a computed table (JSON envelope or RFC-4180 CSV)."""
    try:
        if kind in ("K", "F", "B", "C"):
            doc, rows, fieldnames = _genus_table_doc(kind, D, G)
        elif kind == "euler":
            if q is None:
                raise click.UsageError("table euler requires --q")
            row = numerics.euler_comparison(q, D)
            doc = {"kind": "euler", "params": {"q": q, "D": D},
                   "rows": [_float_row(row)]}
            rows = [_float_row(row)]
            fieldnames = ["q", "D", "series_value", "product_value",
                          "abs_difference", "tail_estimate"]
        else:
            if q is None:
                raise click.UsageError(f"table {kind} requires --q")
            n_list = _parse_n_list(n_text)
            if kind == "convergence":
                data = numerics.convergence_table(q, n_list, m, D)
                extra = {}
            else:
                result = numerics.concentration_check(q, m, n_list, D)
                data = result.rows
                extra = {"bounded": result.bounded}
            rows = [_float_row(vars(r)) for r in data]
            doc = {"kind": kind,
                   "params": {"q": q, "m": m, "N": n_list, "D": D},
                   "rows": rows}
            doc.update(extra)
            fieldnames = ["N", "q", "m", "value", "tail_estimate", "D",
                          "warning"]
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _emit(cfg, doc, rows, fieldnames, output)


@main.command()
@click.argument("series_name")
@click.option("--max-weight", type=int, default=None,
              help="Weight cap for the basis (default 6g-6).")
@click.option("--fit-deg", type=int, default=6, show_default=True,
              help="Highest degree used in the linear solve.")
@click.option("--validate-deg", type=int, default=20, show_default=True,
              help="Highest degree checked exactly afterwards.")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to a file instead of stdout.")
@click.pass_obj
def fit(cfg, series_name, max_weight, fit_deg, validate_deg, output):
    """Fit the series F<g> or C<g> by a polynomial in E2, E4, E6."""
    match = re.fullmatch(r"([FC])(\d+)", series_name)
    if not match:
        raise click.UsageError(
            f"unknown series {series_name!r}: expected F<g> or C<g>,"
            f" e.g. F2"
        )
    family, g = match.group(1), int(match.group(2))
    if g < 1:
        raise click.UsageError("genus must be >= 1")
    if max_weight is None:
        max_weight = max(6 * g - 6, 0)
    builder = hurwitz.F_table if family == "F" else hurwitz.C_table
    series = builder(validate_deg, g).genus_series(g)
    try:
        result = quasimod.fit_quasimodular(series, max_weight, fit_deg,
                                           validate_deg)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = {"kind": "fit", "series": series_name,
           "params": {"max_weight": max_weight, "fit_degree": fit_deg,
                      "validate_degree": validate_deg}}
    if isinstance(result, quasimod.FitFailure):
        doc["status"] = "failure"
        doc["reason"] = result.reason
        doc["first_mismatch_degree"] = result.first_mismatch_degree
        rows = [{"status": "failure", "reason": result.reason,
                 "first_mismatch_degree": result.first_mismatch_degree}]
        fieldnames = ["status", "reason", "first_mismatch_degree"]
    else:
        doc["status"] = "success"
        doc["polynomial"] = result.to_json_list()
        doc["pretty"] = str(result)
        rows = [{"a": t["a"], "b": t["b"], "c": t["c"],
                 "coeff": t["coeff"]} for t in result.to_json_list()]
        fieldnames = ["a", "b", "c", "coeff"]
    _emit(cfg, doc, rows, fieldnames, output)


def _verify_checks(level, jobs):
    """Run the cross-validation suite; yields (name, ok, detail) tuples."""
    d_max, g_max = (4, 2) if level == "quick" else (5, 3)
    validate_deg = 10 if level == "quick" else 20
    results = []

    cells = [(d, g) for d in range(1, d_max + 1)
             for g in range(1, g_max + 1)]

    def one_cell(cell):
        d, g = cell
        ft = hurwitz.F_table(d, g)
        ct = hurwitz.C_table(d, g)
        got = (
            oracle.count_configs(d, g, True, False),
            oracle.count_configs(d, g, True, True),
            oracle.count_configs(d, g, False, False),
            oracle.count_configs(d, g, False, True),
        )
        want = (
            hurwitz.H_coeff(g, d),
            ft.entry(d, g),
            hurwitz.B_coeff(g, d),
            ct.entry(d, g),
        )
        return cell, got, want

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        outcomes = sorted(pool.map(one_cell, cells))
    for (d, g), got, want in outcomes:
        ok = got == want
        detail = "" if ok else f"counts {got} != formulas {want}"
        results.append((f"enumeration vs formulas d={d} g={g}", ok, detail))

    series = hurwitz.F_table(validate_deg, 2).genus_series(2)
    fitted = quasimod.fit_quasimodular(series, 6, 6, validate_deg)
    ok = fitted == quasimod.f2_closed_form()
    results.append((
        f"genus-2 series equals its closed form through degree"
        f" {validate_deg}",
        ok, "" if ok else f"fit returned {fitted}"))

    ok = quasimod.verify_F1_closed_form(10 if level == "quick" else 30)
    results.append(("genus-1 column matches divisor sums and the"
                    " partition-series logarithm", ok, ""))

    cmp_row = numerics.euler_comparison(0.2, 60)
    ok = cmp_row["abs_difference"] < 1e-12
    results.append(("partition series against infinite product at q=0.2",
                    ok, "" if ok else f"difference {cmp_row['abs_difference']}"))

    const = numerics.ramanujan_constant()
    prod = numerics.euler_product(math.exp(-math.pi))
    rel = abs(prod - const) / const
    ok = rel < 1e-10
    results.append(("partition product at q=exp(-pi) against the gamma"
                    " closed form", ok, "" if ok else f"relative {rel}"))

    if level == "full":
        bad = []
        for N in range(1, 9):
            for d in range(1, N + 1):
                if hurwitz.K_rational(d, Fraction(1, N)) != \
                        hurwitz.K_N_coeff(N, d):
                    bad.append((N, d))
        results.append(("rational evaluation against factorial quotients"
                        " for d <= N <= 8", not bad,
                        "" if not bad else f"mismatch at {bad}"))

        prod_02 = numerics.euler_product(0.2)
        errs = []
        for N in (4, 6, 8, 10, 12):
            sv = numerics.eval_series(hurwitz.K_N_series(N, 40), 0.2)
            errs.append(abs(sv.value - prod_02))
        ok = all(errs[i] > errs[i + 1] for i in range(len(errs) - 1)) \
            and errs[-1] < 1e-2
        results.append(("finite-N series approach the partition product"
                        " at q=0.2", ok, "" if ok else f"errors {errs}"))

        conc = numerics.concentration_check(0.1, 1, list(range(4, 13)))
        results.append(("normalized remainder stays bounded at q=0.1,"
                        " m=1", conc.bounded, ""))
    return results


@main.command()
@click.option("--level", type=click.Choice(["quick", "full"]),
              default="quick", show_default=True)
@click.pass_obj
def verify(cfg, level):
    """Run the cross-validation suite; exit 0 only if all checks pass."""
    if cfg.cache_dir:
        store = DiskCache(cfg.cache_dir)
        bad = store.verify()
        if bad:
            raise click.ClickException(
                f"cache integrity: corrupt entries {bad}"
            )
    results = _verify_checks(level, cfg.jobs)
    failed = [(name, detail) for name, ok, detail in results if not ok]
    for name, ok, detail in results:
        mark = "ok  " if ok else "FAIL"
        suffix = f": {detail}" if detail and not ok else ""
        click.echo(f"{mark} {name}{suffix}")
    click.echo(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        name, detail = failed[0]
        raise click.ClickException(f"first failure: {name}"
                                   + (f" ({detail})" if detail else ""))


@main.group()
def cache():
    """Inspect or clear the result cache."""


@cache.command("inspect")
@click.pass_obj
def cache_inspect(cfg):
    """List cached entries and report corrupt files."""
    if not cfg.cache_dir:
        raise click.ClickException(
            "no cache directory configured (--cache-dir or"
            " CUEGENUS_CACHE_DIR)")
    store = DiskCache(cfg.cache_dir)
    entries = store.entries()
    bad = store.verify()
    doc = {"cache_dir": cfg.cache_dir, "entries": entries,
           "corrupt": bad}
    if not cfg.no_timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat(
            timespec="seconds")
    click.echo(json.dumps(doc, indent=2, sort_keys=True))
    if bad:
        raise click.ClickException(f"corrupt cache entries: {bad}")


@cache.command("gc")
@click.option("--all", "remove_all", is_flag=True,
              help="Remove every cached file, not only corrupt ones.")
@click.pass_obj
def cache_gc(cfg, remove_all):
    """Delete corrupt cache files (or everything with --all)."""
    if not cfg.cache_dir:
        raise click.ClickException(
            "no cache directory configured (--cache-dir or"
            " CUEGENUS_CACHE_DIR)")
    store = DiskCache(cfg.cache_dir)
    removed = store.gc(remove_all=remove_all)
    click.echo(json.dumps({"removed": removed}, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()

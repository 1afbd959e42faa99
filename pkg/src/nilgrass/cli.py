"""Command-line interface.

Exit codes: 0 all checks passed, 1 a verdict or table cell failed,
2 usage error, 3 a computation was cut off by its budget.
"""

from __future__ import annotations

import json
import random
import sys

import click

from .combinat import Partition, mu_max
from .counterexample import run_all_checks
from .grassmann import (NilpotentMatrix, jordan_matrix, shuffle_equations,
                        shuffle_ideal)
from .groebner import member
from .pipeline import analyze, dual_check, run_table
from .polyring import DEGREVLEX, parse_polynomial, plucker_ring
from .qq import parse_rational
from .schubert import (RectangularContext, ball_strata, grassfixed_dim,
                       schubert_dim, verify_containment)

_IDEAL_HEADER = "# ring p, n=%d, l=%d"


def _emit(ctx, text: str) -> None:
    out = ctx.obj.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _load_matrix(path) -> NilpotentMatrix:
    try:
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                rows.append([parse_rational(tok) for tok in line.split()])
        return NilpotentMatrix(rows)
    except ValueError as exc:
        raise click.UsageError(f"{path}: {exc}")


def _load_ideal(path):
    n = l = None
    lines = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                tokens = line.replace(",", " ").replace("=", " ").split()
                for key, value in zip(tokens, tokens[1:]):
                    if key == "n" and value.isdigit():
                        n = int(value)
                    elif key == "l" and value.isdigit():
                        l = int(value)
                continue
            if line:
                lines.append(line)
    if n is None or l is None:
        raise click.UsageError(f"{path} lacks the '# ring p, n=.., l=..' header")
    try:
        ring = plucker_ring(n, l)
        gens = [parse_polynomial(line, ring) for line in lines]
    except ValueError as exc:
        raise click.UsageError(f"{path}: {exc}")
    return ring, gens


@click.group()
@click.option("--json", "as_json", is_flag=True, help="emit machine-readable JSON")
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="write the report to a file instead of stdout")
@click.option("--budget", type=float, default=300.0, show_default=True,
              help="per-cell wall-clock budget in seconds")
@click.option("--threads", type=int, default=1, show_default=True,
              help="worker processes for table cells")
@click.option("--seed", type=int, default=0, show_default=True,
              help="seed for randomized verifications")
@click.pass_context
def main(ctx, as_json, out, budget, threads, seed):
    """Exact invariants of nilpotent fixed loci in Grassmannians."""
    ctx.obj = {"json": as_json, "out": out, "budget": budget,
               "threads": threads, "seed": seed}


def _partition_option(required=True):
    return click.option("--partition", "partition", required=required,
                        help="comma-separated parts, e.g. 4,2,2")


@main.command()
@_partition_option(required=False)
@click.option("--l", "l", type=int, required=True, help="subspace dimension")
@click.option("--matrix", "matrix_path", type=click.Path(exists=True, dir_okay=False),
              help="file with a nilpotent matrix (rationals, one row per line)")
@click.option("--linear-only", is_flag=True, help="emit only the shuffle forms")
@click.pass_context
def shuffle(ctx, partition, l, matrix_path, linear_only):
    """Emit the shuffle forms (and quadrics) of a nilpotent matrix."""
    if matrix_path:
        T = _load_matrix(matrix_path)
    elif partition:
        T = jordan_matrix(Partition(partition))
    else:
        raise click.UsageError("provide --partition or --matrix")
    if not 0 <= l <= T.n:
        raise click.UsageError(f"l={l} out of range for n={T.n}")
    lines = [_IDEAL_HEADER % (T.n, l)]
    if linear_only:
        gens = shuffle_equations(T, l).basis
    else:
        gens = shuffle_ideal(T, l).generators
    lines.extend(g.to_text(DEGREVLEX) for g in gens)
    _emit(ctx, "\n".join(lines))


@main.command(name="analyze")
@_partition_option()
@click.option("--l", "l", type=int, required=True)
@click.option("--min-gens", is_flag=True, help="also report minimal generator counts")
@click.pass_context
def analyze_cmd(ctx, partition, l, min_gens):
    """Compute the invariants (sigma, delta, gamma) of one fixed locus."""
    lam = Partition(partition)
    if not 0 <= l <= lam.n:
        raise click.UsageError(f"l={l} out of range for n={lam.n}")
    record = analyze(lam, l, budget=ctx.obj["budget"], with_min_generators=min_gens)
    if ctx.obj["json"]:
        _emit(ctx, _json_text(record.to_json()))
    else:
        gamma = "?" if record.gamma is None else record.gamma
        delta = "?" if record.delta is None else record.delta
        text = f"lambda=({lam}) l={l}: [{record.sigma},{delta},{gamma}] ({record.status})"
        if min_gens:
            text += f"  minimal generators: {record.min_linear} linear, {record.min_quadrics} quadrics"
        _emit(ctx, text)
    if record.status == "incomplete":
        sys.exit(3)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--l", "l_values", type=int, multiple=True,
              help="restrict to these values of l")
@click.option("--sigma-only", is_flag=True, help="compare only the shuffle ranks")
@click.option("--figure", type=click.Path(dir_okay=False, writable=True),
              help="render the diffed table to this image file")
@click.pass_context
def table(ctx, n, l_values, sigma_only, figure):
    """Recompute one reference table and diff it cell by cell."""
    try:
        report = run_table(n, l_values=set(l_values) or None, sigma_only=sigma_only,
                           budget=ctx.obj["budget"], threads=ctx.obj["threads"])
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if figure:
        from .report import render_table_figure
        render_table_figure(report, figure)
    if ctx.obj["json"]:
        _emit(ctx, _json_text(report.to_json()))
    elif ctx.obj["out"]:
        from .report import write_table_csv
        write_table_csv(report, ctx.obj["out"])
        counts = report.counts
        click.echo(f"n={n}: {counts['pass']} pass, {counts['fail']} fail, "
                   f"{counts['skipped']} skipped -> {ctx.obj['out']}")
    else:
        lines = []
        for cell in report.cells:
            e = cell.expected
            gamma = "?" if cell.gamma is None else cell.gamma
            delta = "?" if cell.delta is None else cell.delta
            computed = f"[{cell.sigma},{delta},{gamma}]"
            note = f"  ({cell.note})" if cell.note else ""
            lines.append(f"{cell.status.upper():7} lambda=({e.lam}) l={e.l} "
                         f"expected {e.triple_text()} computed {computed}{note}")
        counts = report.counts
        lines.append(f"summary: {counts['pass']} pass, {counts['fail']} fail, "
                     f"{counts['skipped']} skipped")
        _emit(ctx, "\n".join(lines))
    sys.exit(report.exit_code)


@main.command(name="member")
@_partition_option(required=False)
@click.option("--l", "l", type=int)
@click.option("--poly", "poly_text", required=True,
              help="polynomial in canonical text form, e.g. p_{1,4,6,8}")
@click.option("--ideal", "ideal_path", type=click.Path(exists=True, dir_okay=False),
              help="test against an ideal file instead of a shuffle ideal")
@click.pass_context
def member_cmd(ctx, partition, l, poly_text, ideal_path):
    """Ideal membership of a polynomial."""
    if ideal_path:
        ring, gens = _load_ideal(ideal_path)
    elif partition and l is not None:
        lam = Partition(partition)
        ideal = shuffle_ideal(jordan_matrix(lam), l)
        ring, gens = ideal.ring, ideal.generators
    else:
        raise click.UsageError("provide --partition and --l, or --ideal")
    try:
        p = parse_polynomial(poly_text, ring)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    verdict = member(p, gens)
    if ctx.obj["json"]:
        _emit(ctx, _json_text({"poly": poly_text, "member": verdict}))
    else:
        _emit(ctx, f"{poly_text} {'is' if verdict else 'is not'} in the ideal")


@main.command()
@_partition_option()
@click.option("--l", "l", type=int, required=True)
@click.pass_context
def dual(ctx, partition, l):
    """Check that duality carries the shuffle span of l onto that of n-l."""
    lam = Partition(partition)
    if not 0 <= l <= lam.n:
        raise click.UsageError(f"l={l} out of range for n={lam.n}")
    match = dual_check(lam, l)
    if ctx.obj["json"]:
        _emit(ctx, _json_text({"lambda": list(lam), "l": l,
                               "dual_l": lam.n - l, "match": match}))
    else:
        _emit(ctx, f"lambda=({lam}) l={l} <-> l={lam.n - l}: "
                   f"{'match' if match else 'MISMATCH'}")
    sys.exit(0 if match else 1)


@main.command(name="schubert")
@click.option("--d", "d", type=int, required=True, help="number of blocks")
@click.option("--r", "r", type=int, required=True, help="block size")
@click.option("--l", "l", type=int, required=True)
@click.option("--mu", "mu_text", help="partition of l inside the d x r box")
@click.option("--trials", type=int, default=25, show_default=True)
@click.option("--figure", type=click.Path(dir_okay=False, writable=True),
              help="render the stratum dimension profile to this image file")
@click.pass_context
def schubert_cmd(ctx, d, r, l, mu_text, trials, figure):
    """Lattice stratum data and sampled containment verification."""
    ctx_rect = RectangularContext(d, r)
    if not 0 <= l <= ctx_rect.n:
        raise click.UsageError(f"l={l} out of range for n={ctx_rect.n}")
    mu = Partition(mu_text) if mu_text else mu_max(d, r, l)
    if mu.n != l:
        raise click.UsageError(f"mu=({mu}) is not a partition of l={l}")
    try:
        dim = schubert_dim(mu, ctx_rect)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rng = random.Random(ctx.obj["seed"])
    contained = verify_containment(mu, ctx_rect, l, trials, rng)
    strata = ball_strata(ctx_rect)
    if figure:
        from .report import render_strata_figure
        render_strata_figure(strata, d, r, figure)
    payload = {"d": d, "r": r, "l": l, "mu": list(mu),
               "mu_max": list(mu_max(d, r, l)),
               "schubert_dim": dim, "locus_dim": grassfixed_dim(ctx_rect, l),
               "strata": [{"l": a, "sigma": b, "dim": c} for a, b, c in strata],
               "containment": {"trials": trials, "ok": contained}}
    if ctx.obj["json"]:
        _emit(ctx, _json_text(payload))
    else:
        lines = [f"d={d} r={r} l={l}: mu_max=({mu_max(d, r, l)}) dim={payload['locus_dim']}",
                 f"mu=({mu}) orbit-closure dim={dim}",
                 "strata (l, sigma, dim): " + ", ".join(f"({a},{b},{c})" for a, b, c in strata),
                 f"containment over {trials} trials: {'ok' if contained else 'FAILED'}"]
        _emit(ctx, "\n".join(lines))
    sys.exit(0 if contained else 1)


@main.command(name="counterexample")
@click.option("--trials", type=int, default=25, show_default=True)
@click.pass_context
def counterexample_cmd(ctx, trials):
    """Verify the non-radical locus at n=8 and its three components."""
    rng = random.Random(ctx.obj["seed"])
    results = run_all_checks(trials, rng)
    ok = all(passed for _, passed in results)
    if ctx.obj["json"]:
        _emit(ctx, _json_text({"checks": [{"name": name, "ok": passed}
                                          for name, passed in results],
                               "ok": ok}))
    else:
        lines = [f"{'PASS' if passed else 'FAIL'}  {name}" for name, passed in results]
        lines.append("all checks passed" if ok else "FAILURES above")
        _emit(ctx, "\n".join(lines))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()

"""``grow``: run the growth process and track size estimates.

The trajectory CSV holds one row per snapshot; the estimates CSV holds
``|W|``, ``e(U, W)`` and the vertex-count interval every ``estimate_every``
steps, with ``W = P ∪ Q``. Without a file target both go to standard
output, trajectory first, each block with its own header.
"""

import logging
import math
from dataclasses import replace
from pathlib import Path

import click

from expander_growth.bounds import ramanujan_lambda, vertex_count_bounds
from expander_growth.commands import experiment_config, from_config, read_graph
from expander_growth.errors import InvalidInputError
from expander_growth.generators import make_rng
from expander_growth.graph import degree_stats
from expander_growth.growth import GrowthState, run_growth, run_growth_padded, sample_boundary_estimate
from expander_growth.models import Graph
from expander_growth.spectral import spectral_summary
from expander_growth.utils import format_real, open_output, write_csv

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["t", "processed", "queued", "unvisited", "pi", "kappa", "upsilon"]
ESTIMATE_COLUMNS = ["t", "W", "eUW", "lower", "upper"]
DENSITY_NOTE = "pi=processed/n kappa=queued/n upsilon=unvisited/n"


class LambdaPolicy(click.ParamType):
    name = "auto|ramanujan|VALUE"

    def convert(self, value, param, ctx):
        if isinstance(value, float) or value in ("auto", "ramanujan"):
            return value
        try:
            number = float(value)
        except ValueError:
            self.fail(f"{value!r} is neither 'auto', 'ramanujan' nor a number", param, ctx)
        if number < 0:
            self.fail("lambda must be nonnegative", param, ctx)
        return number


class StartVertex(click.ParamType):
    name = "random|VERTEX"

    def convert(self, value, param, ctx):
        if value == "random" or isinstance(value, int):
            return value
        try:
            return int(value)
        except ValueError:
            self.fail(f"{value!r} is neither 'random' nor a vertex id", param, ctx)


def resolve_lambda(g: Graph, policy, tol: float, max_iter: int) -> tuple[float, float]:
    """``(d, lambda)`` for the size bounds; non-regular graphs use the average degree."""
    stats = degree_stats(g)
    d = float(stats.d_max) if stats.regular else stats.d_bar
    if policy == "ramanujan":
        lam = ramanujan_lambda(d)
    elif policy == "auto":
        summary = spectral_summary(g, tol=tol, max_iter=max_iter)
        lam = summary.lam if summary.lam is not None else summary.mu * d
    else:
        lam = float(policy)
    if not 0 <= lam < d:
        raise InvalidInputError(f"size bounds need 0 <= lambda < d, got lambda={lam:.6g}, d={d:.6g}")
    logger.info("size bounds use d=%.6g lambda=%.6g (%s)", d, lam, policy)
    return d, lam


@click.command("grow")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--start", type=StartVertex(), default="random", show_default=True)
@click.option("--seed", type=int, default=from_config("SEED"))
@click.option("--snapshot-every", type=click.IntRange(min=1), default=from_config("SNAPSHOT_EVERY"))
@click.option("--estimate-every", type=click.IntRange(min=1), default=from_config("ESTIMATE_EVERY"))
@click.option("--samples", type=click.IntRange(min=1), default=from_config("SAMPLES"))
@click.option("--lambda", "lambda_policy", type=LambdaPolicy(), default="ramanujan", show_default=True)
@click.option("--padded", is_flag=True, help="Keep emitting frozen snapshots through step n.")
@click.option("--census", is_flag=True, help="Count e(U, W) exactly instead of sampling.")
@click.option("--tol", type=float, default=from_config("TOL"))
@click.option("--max-iter", type=int, default=from_config("MAX_ITER"))
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.option("--estimates-out", type=click.Path(dir_okay=False, writable=True))
@click.pass_context
def cmd(ctx, input_path, start, seed, snapshot_every, estimate_every, samples, lambda_policy, padded, census, tol, max_iter, out, estimates_out):
    """Grow from a start vertex, emitting trajectory and size-estimate CSVs."""
    g = read_graph(input_path)
    if g.n == 0:
        raise InvalidInputError("cannot grow on an empty graph")
    if start == "random":
        start = int(make_rng(seed + 1).integers(g.n))
        logger.info("random start vertex %d", start)
    if estimates_out is None and out not in (None, "-"):
        path = Path(out)
        estimates_out = str(path.with_name(path.stem + ".estimates" + (path.suffix or ".csv")))

    estimates = []
    d, lam = resolve_lambda(g, lambda_policy, tol, max_iter)

    def estimate(state: GrowthState) -> None:
        W = state.p.size + state.q.size
        if state.finished:
            eUW = 0.0
        else:
            eUW = sample_boundary_estimate(state, g, samples, seed + state.t, exhaustive=census)
        try:
            interval = vertex_count_bounds(W, eUW, d, lam)
            estimates.append([state.t, W, eUW, interval.lower, interval.upper])
        except InvalidInputError as exc:
            logger.warning("t=%d: no interval (%s)", state.t, exc)
            estimates.append([state.t, W, eUW, math.nan, math.nan])

    run = run_growth_padded if padded else run_growth
    trajectory = run(
        g,
        start,
        seed,
        snapshot_every,
        observer=estimate,
        observe_every=estimate_every,
    )

    policy = f"{lambda_policy} d={format_real(d)} lambda={format_real(lam)}"
    config = experiment_config(
        ctx,
        snapshot_every=snapshot_every,
        samples=samples,
        lambda_policy=policy,
        tol=tol,
        max_iter=max_iter,
        columns=DENSITY_NOTE,
    )
    rows = [
        [t, processed, queued, unvisited, processed / g.n, queued / g.n, unvisited / g.n]
        for t, processed, queued, unvisited in trajectory.snapshots
    ]
    with open_output(out) as stream:
        write_csv(stream, config, TRAJECTORY_COLUMNS, rows)
    if estimates:
        with open_output(estimates_out) as stream:
            write_csv(stream, replace(config, columns=None), ESTIMATE_COLUMNS, estimates)
    logger.info("grow: %d snapshots, %d estimates", len(rows), len(estimates))

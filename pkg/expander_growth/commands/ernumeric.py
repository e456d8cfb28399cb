from functools import partial

import click
import numpy as np

from expander_growth.commands import experiment_config, from_config
from expander_growth.extensions import pool
from expander_growth.growth import numeric_process
from expander_growth.utils import open_output, write_csv

COLUMNS = ["t", "u", "q", "upsilon", "expected_upsilon"]
RUN_COLUMNS = ["run", "seed", "t", "u", "q"]


@click.command("ernumeric")
@click.option("-n", "n", type=click.IntRange(min=1), required=True)
@click.option("-d", "d", type=float, required=True)
@click.option("--seed", type=int, default=from_config("SEED"))
@click.option("--runs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--method", type=click.Choice(["geometric", "recurrence"]), default="geometric", show_default=True)
@click.option("--snapshot-every", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.option("--runs-out", type=click.Path(dir_okay=False, writable=True), help="Per-run rows.")
@click.pass_context
def cmd(ctx, n, d, seed, runs, method, snapshot_every, out, runs_out):
    """Numeric unvisited/queue process on G(n, d/n), averaged over runs."""
    if not 0 < d < n:
        raise click.BadParameter(f"need 0 < d < n, got d={d}, n={n}", param_hint="-d")
    seeds = list(range(seed, seed + runs))
    trajectories = pool.map(partial(numeric_process, n, d, method=method), seeds)
    stacked = np.stack(trajectories)[:, ::snapshot_every, :]
    mean = stacked.mean(axis=0)
    t = mean[:, 0]
    rows = [
        [int(ti), float(u), float(q), float(u) / n, float(np.exp(-d * ti / n))]
        for ti, u, q in zip(t, mean[:, 1], mean[:, 2])
    ]
    config = experiment_config(ctx, snapshot_every=snapshot_every)
    with open_output(out) as stream:
        write_csv(stream, config, COLUMNS, rows)
    if runs_out:
        per_run = (
            [run, run_seed, int(ti), int(u), int(q)]
            for run, (run_seed, trajectory) in enumerate(zip(seeds, stacked))
            for ti, u, q in trajectory
        )
        with open_output(runs_out) as stream:
            write_csv(stream, config, RUN_COLUMNS, per_run)

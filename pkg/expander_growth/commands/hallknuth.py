import click

from expander_growth.commands import experiment_config, from_config
from expander_growth.extensions import pool
from expander_growth.hallknuth import hk_probes, reverse_search_tree, running_means, summarize
from expander_growth.utils import format_real, open_output, write_csv

COLUMNS = ["probe_index", "seed", "estimate", "depth", "running_mean"]


@click.command("hallknuth")
@click.option("-k", "k", type=click.IntRange(min=4), required=True, help="Polygon size.")
@click.option("--probes", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=from_config("SEED"))
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.pass_context
def cmd(ctx, k, probes, seed, out):
    """Random-probe size estimates of the triangulation reverse-search tree."""
    results = hk_probes(reverse_search_tree(k), probes, seed, pool)
    means = running_means(results)
    mean, stderr = summarize(results)
    rows = [
        [index, r.seed, r.estimate, r.depth, float(running)]
        for index, (r, running) in enumerate(zip(results, means))
    ]
    footer = [f"# mean={format_real(mean)},stderr={format_real(stderr)},probes={probes}"]
    with open_output(out) as stream:
        write_csv(stream, experiment_config(ctx), COLUMNS, rows, footer)

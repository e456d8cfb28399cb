import click

from expander_growth.commands import experiment_config, from_config, read_graph
from expander_growth.spectral import spectral_summary
from expander_growth.utils import format_real, open_output, write_csv

COLUMNS = ["n", "m", "d_bar", "sigma2", "lambda", "mu", "two_sqrt_dm1", "is_ramanujan", "iterations", "residual"]


@click.command("spectral")
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=from_config("TOL"))
@click.option("--max-iter", type=int, default=from_config("MAX_ITER"))
@click.option("--method", type=click.Choice(["lanczos", "power"]), default="lanczos", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.pass_context
def cmd(ctx, input_path, tol, max_iter, method, out):
    """Extreme nontrivial eigenvalues of an edge-list graph."""
    g = read_graph(input_path)
    summary = spectral_summary(g, tol=tol, max_iter=max_iter, method=method)
    row = [
        summary.n,
        summary.m,
        summary.stats.d_bar,
        summary.stats.sigma2,
        "" if summary.lam is None else summary.lam,
        summary.mu,
        summary.two_sqrt_dm1,
        "" if summary.ramanujan is None else format_real(summary.ramanujan),
        summary.iterations,
        summary.tol_achieved,
    ]
    config = experiment_config(ctx, tol=tol, max_iter=max_iter)
    with open_output(out) as stream:
        write_csv(stream, config, COLUMNS, [row])

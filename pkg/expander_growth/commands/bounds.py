import click

from expander_growth import bounds
from expander_growth.commands import experiment_config, from_config
from expander_growth.utils import open_output, write_csv

CURVES = ["prop1", "beta", "er", "delta0", "cube4", "unvisited"]


@click.command("bounds")
@click.argument("curve", type=click.Choice(CURVES))
@click.option("-d", "d", type=float, help="Degree (real values allowed).")
@click.option("--lambda", "lam", type=float, help="Defaults to 2*sqrt(d - 1).")
@click.option("--grid", type=click.IntRange(min=2), default=from_config("CURVE_GRID"))
@click.option("--tol", type=float, default=1e-12, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@click.pass_context
def cmd(ctx, curve, d, lam, grid, tol, out):
    """Emit a bound or asymptotic curve as ``pi,value`` rows."""
    if curve == "cube4":
        d = bounds.CUBE4_D_BAR
    elif d is None:
        raise click.UsageError(f"curve {curve!r} needs -d")
    if curve in ("prop1", "beta", "cube4") and lam is None:
        lam = bounds.ramanujan_lambda(d)

    if curve == "delta0":
        columns = ["d", "value"]
        rows = [[d, bounds.giant_component_density(d, tol)]]
    else:
        columns = ["pi", "value"]
        if curve == "prop1":
            fn = lambda pi: bounds.structural_queue_lower(pi, d, lam)
        elif curve == "cube4":
            fn = lambda pi: bounds.cube4_beta(pi, lam)
        elif curve == "beta":
            fn = lambda pi: bounds.beta(pi, d, lam)
        elif curve == "er":
            delta0 = bounds.giant_component_density(d, tol)
            fn = lambda pi: bounds.er_queue_density(pi, d, delta0)
        else:
            fn = lambda pi: bounds.expected_unvisited_density(pi, d)
        rows = bounds.curve(fn, grid)

    policy = None if lam is None else f"d={d:.10g} lambda={lam:.10g}"
    config = experiment_config(ctx, lambda_policy=policy, tol=tol)
    with open_output(out) as stream:
        write_csv(stream, config, columns, rows)

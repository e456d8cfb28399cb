import logging

import click

from expander_growth.commands import experiment_config, from_config
from expander_growth.generators import (
    erdos_renyi_gnm,
    erdos_renyi_gnp,
    lps_graph,
    polygon_flip_graph,
    polygon_flip_quotient,
    triangulation_table,
)
from expander_growth.graph import degree_stats, store_edge_list
from expander_growth.utils import format_real, header_lines, open_output

logger = logging.getLogger(__name__)

FAMILIES = ["lps", "gnp", "gnm", "polygon", "polygon-quotient"]


def _require(family: str, **values) -> None:
    missing = [name for name, value in values.items() if value is None]
    if missing:
        raise click.UsageError(f"family {family!r} needs {', '.join('-' + m for m in missing)}")


@click.command("gen")
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("-p", "p", type=float, help="LPS prime p, or edge probability for gnp.")
@click.option("-q", "q", type=int, help="LPS modulus q.")
@click.option("-n", "n", type=int, help="Vertex count for gnp/gnm.")
@click.option("-m", "m", type=int, help="Edge count for gnm.")
@click.option("-k", "k", type=int, help="Polygon size.")
@click.option("--group", type=click.Choice(["cyclic", "dihedral"]), default="dihedral", show_default=True)
@click.option("--seed", type=int, default=from_config("SEED"))
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--table-out", type=click.Path(dir_okay=False, writable=True), help="Index to triangulation table.")
@click.pass_context
def cmd(ctx, family, p, q, n, m, k, group, seed, out, table_out):
    """Generate a graph and write it as an edge list."""
    if family == "lps":
        _require(family, p=p, q=q)
        if not float(p).is_integer():
            raise click.BadParameter("LPS needs an integer prime", param_hint="-p")
        g = lps_graph(int(p), q)
    elif family == "gnp":
        _require(family, n=n, p=p)
        g = erdos_renyi_gnp(n, p, seed)
    elif family == "gnm":
        _require(family, n=n, m=m)
        g = erdos_renyi_gnm(n, m, seed)
    elif family == "polygon":
        _require(family, k=k)
        g, table = polygon_flip_graph(k)
        if table_out:
            with open_output(table_out) as stream:
                stream.write(triangulation_table(table))
    else:
        _require(family, k=k)
        g, sizes = polygon_flip_quotient(k, group)
        if table_out:
            with open_output(table_out) as stream:
                stream.write("".join(f"{orbit}: {size}\n" for orbit, size in enumerate(sizes)))

    if table_out and family not in ("polygon", "polygon-quotient"):
        logger.warning("--table-out only applies to polygon families")

    config = experiment_config(ctx)
    with open_output(out) as stream:
        stream.write("\n".join(header_lines(config)) + "\n")
        stream.write(store_edge_list(g))

    stats = degree_stats(g)
    click.echo(f"n={g.n} m={g.m} d_bar={format_real(stats.d_bar)}")

from expander_growth.generators.lps import lps_graph
from expander_growth.generators.polygon import (
    TriangulationTable,
    catalan_count,
    polygon_flip_graph,
    polygon_flip_quotient,
    triangulation_table,
)
from expander_growth.generators.random_graphs import erdos_renyi_gnm, erdos_renyi_gnp, make_rng

__all__ = [
    "TriangulationTable",
    "catalan_count",
    "erdos_renyi_gnm",
    "erdos_renyi_gnp",
    "lps_graph",
    "make_rng",
    "polygon_flip_graph",
    "polygon_flip_quotient",
    "triangulation_table",
]

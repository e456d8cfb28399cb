import shlex

import click

from expander_growth.graph import load_edge_list
from expander_growth.models import ExperimentConfig, Graph


def from_config(name: str):
    """Option default read from the configuration bound to the running group."""
    return lambda: getattr(click.get_current_context().find_root().obj, name)


def _long_name(option: click.Option) -> str:
    return next((opt for opt in option.opts if opt.startswith("--")), option.opts[0])


def command_words(ctx: click.Context) -> list[str]:
    """Rerunnable argument list for ``ctx``, defaults included."""
    arguments, options = [], []
    for param in ctx.command.params:
        value = ctx.params.get(param.name)
        if value is None or value is False:
            continue
        if isinstance(param, click.Argument):
            arguments.append(str(value))
        elif getattr(param, "is_flag", False):
            options.append(_long_name(param))
        else:
            options.extend([_long_name(param), str(value)])
    return [*ctx.command_path.split(), *arguments, *options]


def experiment_config(ctx: click.Context, **fields) -> ExperimentConfig:
    return ExperimentConfig(
        subcommand=ctx.info_name,
        seed=ctx.params.get("seed", 0) or 0,
        command_line=shlex.join(command_words(ctx)),
        out=ctx.params.get("out"),
        **fields,
    )


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as handle:
        return load_edge_list(handle.read())

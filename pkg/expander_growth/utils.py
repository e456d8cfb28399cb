import csv
import math
from contextlib import contextmanager
from typing import IO, Iterable, Iterator, Sequence

import click

from expander_growth.models import ExperimentConfig


def format_real(value: float) -> str:
    """Ten significant digits; infinities as ``inf``."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


def header_lines(config: ExperimentConfig) -> list[str]:
    from expander_growth import __version__

    lines = [
        f"# command: {config.command_line}",
        f"# seed: {config.seed}",
        f"# version: {__version__}",
    ]
    if config.lambda_policy is not None:
        lines.append(f"# lambda_policy: {config.lambda_policy}")
    if config.columns is not None:
        lines.append(f"# columns: {config.columns}")
    return lines


@contextmanager
def open_output(path: str | None) -> Iterator[IO[str]]:
    """Yield a text stream for ``path``; ``None`` or ``-`` mean standard output."""
    if path is None or path == "-":
        yield click.get_text_stream("stdout")
        return
    with open(path, "w", newline="", encoding="utf-8") as handle:
        yield handle


def write_csv(
    stream: IO[str], config: ExperimentConfig, columns: Sequence[str], rows: Iterable[Sequence], footer: Iterable[str] = ()
) -> None:
    for line in header_lines(config):
        stream.write(line + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_real(value) if isinstance(value, float) else value for value in row])
    for line in footer:
        stream.write(line + "\n")

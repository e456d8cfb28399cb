import logging
import sys

import click

from config import Config
from expander_growth.errors import EXIT_OK, EXIT_USAGE, ExpanderGrowthError
from expander_growth.extensions import pool

__version__ = "0.3.0"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class ExpanderGrowthGroup(click.Group):
    """Command group mapping failures onto the documented exit codes."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        if not standalone_mode:
            return super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        try:
            result = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except ExpanderGrowthError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(exc.exit_code)
        sys.exit(result if isinstance(result, int) else EXIT_OK)


def create_cli(config_class: type[Config] = Config) -> click.Group:
    config = config_class()
    pool.init_cli(config)

    @click.group(cls=ExpanderGrowthGroup, context_settings={"obj": config})
    @click.version_option(__version__, prog_name="expander-growth")
    @click.option(
        "--log-level",
        type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
        default=config.LOG_LEVEL,
        show_default=True,
    )
    def cli(log_level: str) -> None:
        """Estimate graph sizes from randomised growth and spectral bounds."""
        logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True)

    from expander_growth.commands.bounds import cmd as bounds_cmd
    from expander_growth.commands.ernumeric import cmd as ernumeric_cmd
    from expander_growth.commands.gen import cmd as gen_cmd
    from expander_growth.commands.grow import cmd as grow_cmd
    from expander_growth.commands.hallknuth import cmd as hallknuth_cmd
    from expander_growth.commands.spectral import cmd as spectral_cmd

    cli.add_command(gen_cmd)
    cli.add_command(spectral_cmd)
    cli.add_command(grow_cmd)
    cli.add_command(bounds_cmd)
    cli.add_command(hallknuth_cmd)
    cli.add_command(ernumeric_cmd)

    return cli

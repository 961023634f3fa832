import logging

import click

import numseg.constants as const
from numseg.harness.config import EXPERIMENTS, load_config
from numseg.harness.experiments import run_experiment

logger = logging.getLogger(__name__)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Flat key=value or YAML experiment config.",
)
@click.option(
    "--name",
    type=click.Choice(EXPERIMENTS),
    default=None,
    help="Experiment to run, overrides the config.",
)
def cli(config_path, name):
    """Run a batch experiment and write its CSV and JSON reports.

    Any config key can be overridden by trailing key=value arguments:

    numseg experiment --config mono.cfg --name mono spaces=both n_ciphers=10
    """
    ctx = click.get_current_context()
    logger.debug(f"Called experiment command with parameters: {ctx.params}")

    overrides = list(ctx.args)
    if name:
        overrides.append(f"experiment={name}")
    cfg = load_config(config_path, overrides)
    results = run_experiment(cfg)
    click.echo(results.to_string(index=False, float_format="%.2f"))

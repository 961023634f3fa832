import logging
import os

import click

import numseg.constants as const
from numseg.io.formats import parse_segmentation_file
from numseg.stats.statistics import CipherStatistics

logger = logging.getLogger(__name__)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--gold",
    "gold_paths",
    type=click.Path(exists=True, dir_okay=False),
    multiple=True,
    required=True,
    help="Gold segmentation file; repeat for several ciphers.",
)
@click.option(
    "--json",
    "as_json",
    is_flag=True,
    default=False,
    help="Print the table as JSON records.",
)
def cli(gold_paths, as_json):
    """Print length, type, token and element-width statistics of ciphers.

    numseg stats --gold F283.txt --gold S304.txt
    """
    ctx = click.get_current_context()
    logger.debug(f"Called stats command with parameters: {ctx.params}")

    segmentations = {}
    for path in gold_paths:
        name = os.path.splitext(os.path.basename(path))[0]
        with open(path, "rb") as f:
            segmentations[name] = parse_segmentation_file(f.read())
    table = CipherStatistics(segmentations).table
    if as_json:
        click.echo(
            table.reset_index().to_json(
                orient="records", double_precision=4, indent=2
            )
        )
    else:
        click.echo(table.to_string(float_format="%.2f"))

import json
import logging

import click

import numseg.constants as const
from numseg.io.formats import parse_segmentation_file
from numseg.stats.metrics import evaluate_plaintext, evaluate_segmentation

logger = logging.getLogger(__name__)

METRICS = {"seger": "seg_er", "f1": "f1", "ter": "ter"}


def read_plaintext(path):
    """ Plaintext of a file, lines joined without separators."""
    with open(path, encoding="utf-8") as f:
        return "".join(line.strip() for line in f)


def evaluate_files(hyp_path, ref_path, metric, weighted=False):
    """Evaluate one hypothesis file against its reference.

    Args:
        hyp_path (str): system segmentation or plaintext file.
        ref_path (str): gold segmentation or plaintext file.
        metric (str): one of METRICS.
        weighted (bool): token-weighted F1.

    Returns:
        dict: the computed report fields.
    """
    if metric == "ter":
        report = evaluate_plaintext(
            read_plaintext(hyp_path), read_plaintext(ref_path)
        )
    else:
        with open(hyp_path, "rb") as f:
            hyp = parse_segmentation_file(f.read())
        with open(ref_path, "rb") as f:
            ref = parse_segmentation_file(f.read())
        report = evaluate_segmentation(hyp, ref, weighted=weighted)

    return {k: v for k, v in report._asdict().items() if v is not None}


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--hyp",
    "hyp_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="System output: segmentation file, or plaintext for ter.",
)
@click.option(
    "--ref",
    "ref_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Gold segmentation file, or gold plaintext for ter.",
)
@click.option(
    "--metric",
    type=click.Choice(sorted(METRICS)),
    default="seger",
    help="Metric to report.",
)
@click.option(
    "--weighted",
    is_flag=True,
    default=False,
    help="Token-weighted vocabulary F1.",
)
@click.option(
    "--json",
    "as_json",
    is_flag=True,
    default=False,
    help="Print the full report as JSON.",
)
def cli(hyp_path, ref_path, metric, weighted, as_json):
    """Score a segmentation or a decoded plaintext against the gold.

    numseg eval --hyp seg.txt --ref gold.txt --metric seger --json
    """
    ctx = click.get_current_context()
    logger.debug(f"Called eval command with parameters: {ctx.params}")

    report = evaluate_files(hyp_path, ref_path, metric, weighted)
    report["metric"] = metric
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    else:
        click.echo(f"{metric}: {report[METRICS[metric]]:.6f}")

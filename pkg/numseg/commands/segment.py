import logging

import click

import numseg.constants as const
from numseg.io.formats import parse_cipher_file, serialize_segmentation
from numseg.segmenters.base import load_segmenter

logger = logging.getLogger(__name__)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--model",
    "model_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Model file written by `numseg train`.",
)
@click.option(
    "--word-spaces",
    is_flag=True,
    default=False,
    help="Spaces in the cipher file are word separators, not gold "
    "boundaries.",
)
@click.option(
    "--in",
    "input_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Cipher file.",
)
@click.option(
    "--out",
    "output",
    type=click.Path(dir_okay=False, writable=True),
    required=True,
    help="Segmentation file to write, one line per cipher line.",
)
def cli(model_path, word_spaces, input_path, output):
    """Segment a cipher with a trained model.

    numseg segment --model model.json --in cipher.txt --out seg.txt
    """
    ctx = click.get_current_context()
    logger.debug(f"Called segment command with parameters: {ctx.params}")

    with open(model_path, "rb") as f:
        segmenter = load_segmenter(f.read())
    with open(input_path, "rb") as f:
        cipher = parse_cipher_file(f.read(), word_spaces=word_spaces).cipher
    segmentation = segmenter.segment(cipher)
    with open(output, "w", encoding="utf-8") as f:
        f.write(serialize_segmentation(segmentation) + "\n")
    logger.info(f"Wrote {len(segmentation)} segments to {output}.")

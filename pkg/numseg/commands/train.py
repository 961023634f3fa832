import logging

import click

import numseg.constants as const
from numseg.io.formats import parse_cipher_file
from numseg.segmenters.base import create_segmenter

logger = logging.getLogger(__name__)


def segmenter_params(algo, vocab_size, max_piece_len, width):
    if algo == "baseline":
        return {"k": width}
    return {"vocab_size": vocab_size, "max_piece_len": max_piece_len}


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--algo",
    type=click.Choice(["baseline", "bpe", "unigram"]),
    required=True,
    help="Segmentation algorithm.",
)
@click.option(
    "--vocab",
    "vocab_size",
    type=int,
    default=const.DEFAULT_VOCAB_SIZE,
    help="Target vocabulary size, alphabet included.",
)
@click.option(
    "--max-piece",
    "max_piece_len",
    type=int,
    default=None,
    help="Longest piece in symbols, unlimited by default.",
)
@click.option(
    "--width",
    type=int,
    default=2,
    help="Element width of the baseline.",
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
    help="Model file to write.",
)
def cli(
    algo, vocab_size, max_piece_len, width, word_spaces, input_path, output
):
    """Train a segmenter on a cipher and write the model file.

    numseg train --algo unigram --max-piece 2 --vocab 36
    --in cipher.txt --out model.json
    """
    ctx = click.get_current_context()
    logger.debug(f"Called train command with parameters: {ctx.params}")

    with open(input_path, "rb") as f:
        cipher = parse_cipher_file(f.read(), word_spaces=word_spaces).cipher
    segmenter = create_segmenter(
        algo, **segmenter_params(algo, vocab_size, max_piece_len, width)
    )
    segmenter.train(cipher)
    with open(output, "w", encoding="utf-8") as f:
        f.write(segmenter.dumps())
    logger.info(
        f"Wrote {algo} model with {len(segmenter.vocabulary)} pieces to "
        f"{output}."
    )

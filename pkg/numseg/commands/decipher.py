import logging

import click

import numseg.constants as const
from numseg.decipher import chunked_decode, decipher_with_key
from numseg.io.formats import (
    parse_cipher_file,
    parse_key_file,
    serialize_segmentation,
)
from numseg.lm.arpa import read_arpa

logger = logging.getLogger(__name__)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--key",
    "key_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Key file, one element<TAB>target pair per line.",
)
@click.option(
    "--lm",
    "lm_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Character language model in ARPA format.",
)
@click.option(
    "--in",
    "input_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Cipher file; spaces and line breaks are ignored.",
)
@click.option(
    "--out",
    "output",
    type=click.Path(dir_okay=False, writable=True),
    required=True,
    help="Plaintext file to write.",
)
@click.option(
    "--seg-out",
    "seg_output",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Segmentation file to write.",
)
@click.option(
    "--chunk",
    type=int,
    default=None,
    help="Decode in windows of this many symbols.",
)
def cli(key_path, lm_path, input_path, output, seg_output, chunk):
    """Decipher a cipher with a known key and a character language model.

    numseg decipher --key key.tsv --lm model.arpa --in cipher.txt
    --out plain.txt --seg-out seg.txt
    """
    ctx = click.get_current_context()
    logger.debug(f"Called decipher command with parameters: {ctx.params}")

    with open(key_path, "rb") as f:
        key = parse_key_file(f.read())
    with open(lm_path, "rb") as f:
        lm = read_arpa(f.read())
    with open(input_path, "rb") as f:
        cipher = parse_cipher_file(f.read(), alphabet=key.alphabet).cipher
    if chunk:
        decoded = chunked_decode(cipher, key, lm, chunk)
    else:
        decoded = decipher_with_key(cipher, key, lm)

    with open(output, "w", encoding="utf-8") as f:
        f.write(decoded.plaintext + "\n")
    if seg_output:
        with open(seg_output, "w", encoding="utf-8") as f:
            f.write(serialize_segmentation(decoded.segmentation) + "\n")
    logger.info(
        f"Decoded {len(cipher)} symbols, LM cost {decoded.weight:.4f}."
    )

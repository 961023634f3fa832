import logging
import os

import click

import numseg.constants as const
from numseg.ciphers.synthetic import generate_batch
from numseg.harness.config import load_generation_config
from numseg.harness.experiments import read_corpus
from numseg.io.formats import (
    serialize_cipher,
    serialize_key,
    serialize_segmentation,
)

logger = logging.getLogger(__name__)


def write_generated(directory, cipher):
    """ Write cipher.txt, gold.txt, key.tsv and plain.txt of one cipher."""
    os.makedirs(directory, exist_ok=True)
    files = {
        "cipher.txt": serialize_cipher(cipher.ciphertext),
        "gold.txt": serialize_segmentation(cipher.gold) + "\n",
        "key.tsv": serialize_key(cipher.key),
        "plain.txt": cipher.plaintext + "\n",
    }
    for name, text in files.items():
        with open(os.path.join(directory, name), "w", encoding="utf-8") as f:
            f.write(text)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--spec",
    "spec_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help=(
        "Flat key=value file with the key recipe (pool_size, "
        "homophones_per_vowel, ...) and generation settings (corpus, "
        "length, n_ciphers, keep_spaces, width)."
    ),
)
@click.option(
    "--corpus",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Plaintext corpus, overrides the corpus of the spec file.",
)
@click.option("--seed", type=int, default=None, help="Random seed.")
@click.option(
    "--out",
    "output",
    type=click.Path(file_okay=False),
    required=True,
    help="Output directory.",
)
def cli(spec_path, corpus, seed, output):
    """Generate synthetic ciphers with their keys and gold segmentations.

    A single cipher is written to the output directory; several ciphers go
    to one sub-directory each (cipher_0000, cipher_0001, ...).

    numseg gen --spec spec.cfg --corpus english.txt --seed 7 --out ciphers/
    """
    ctx = click.get_current_context()
    logger.debug(f"Called gen command with parameters: {ctx.params}")

    overrides = list(ctx.args)
    if corpus:
        overrides.append(f"corpus={corpus!r}")
    if seed is not None:
        overrides.append(f"seed={seed}")
    spec, cfg = load_generation_config(spec_path, overrides)
    ciphers = generate_batch(
        read_corpus(cfg.corpus, spec.plaintext_alphabet),
        spec,
        n=cfg.n_ciphers,
        length=cfg.length,
        keep_spaces=cfg.keep_spaces,
        seed=cfg.seed,
        width=cfg.width,
    )
    for index, cipher in enumerate(ciphers):
        directory = output
        if len(ciphers) > 1:
            directory = os.path.join(output, f"cipher_{index:04d}")
        write_generated(directory, cipher)
    logger.info(f"Wrote {len(ciphers)} ciphers to {output}.")

import logging

import click

import numseg.constants as const
from numseg.ciphers.synthetic import prepare_plaintext
from numseg.lm.arpa import write_arpa
from numseg.lm.charlm import lm_train

logger = logging.getLogger(__name__)


def read_training_text(path, keep_spaces=False):
    """Normalize a corpus line by line for language model training.

    Args:
        path (str): corpus file, one sentence per line.
        keep_spaces (bool): keep word spaces; deciphered plaintext has none.

    Returns:
        str: normalized lines joined by newlines.
    """
    lines = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = prepare_plaintext(raw)
            if not keep_spaces:
                line = line.replace(" ", "")
            if line:
                lines.append(line)

    return "\n".join(lines)


@click.command(context_settings=const.CONTEXT_SETTINGS)
@click.option(
    "--corpus",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Plaintext training corpus, one sentence per line.",
)
@click.option(
    "--order",
    type=int,
    default=const.DEFAULT_LM_ORDER,
    help="N-gram order.",
)
@click.option(
    "--keep-spaces",
    is_flag=True,
    default=False,
    help="Model word spaces as a character.",
)
@click.option(
    "--out",
    "output",
    type=click.Path(dir_okay=False, writable=True),
    required=True,
    help="ARPA file to write.",
)
def cli(corpus, order, keep_spaces, output):
    """Train a Witten-Bell character n-gram model.

    numseg lm --corpus english.txt --order 5 --out english.arpa
    """
    ctx = click.get_current_context()
    logger.debug(f"Called lm command with parameters: {ctx.params}")

    lm = lm_train(read_training_text(corpus, keep_spaces), order=order)
    with open(output, "w", encoding="utf-8") as f:
        f.write(write_arpa(lm))
    logger.info(f"Wrote {lm} to {output}.")

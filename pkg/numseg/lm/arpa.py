""" ARPA text format for character language models

Probabilities and backoff weights are written as log10 values. The space
character is written as `<space>`. Histories that carry a backoff weight but
are not n-grams themselves (start-marker runs) are written with the
conventional -99 probability and read back as backoff-only entries.
"""
import collections
import logging
import math
import re

from .charlm import CharNgramLm
from .exceptions import ArpaFormatError

logger = logging.getLogger(__name__)

SPACE_TOKEN = "<space>"
NO_PROBABILITY = -99.0
_SECTION = re.compile(r"^\\(\d+)-grams:$")
_COUNT = re.compile(r"^ngram (\d+)=(\d+)$")


def _encode(token):
    return SPACE_TOKEN if token == " " else token


def _decode(token):
    return " " if token == SPACE_TOKEN else token


def _log10(value):
    return value / math.log(10)


def write_arpa(lm):
    """Render a language model as ARPA text.

    Args:
        lm (CharNgramLm): the model.

    Returns:
        str: ARPA text, n-grams sorted within each order.
    """
    by_order = collections.defaultdict(dict)
    for ngram, logp in lm.probs.items():
        by_order[len(ngram)][ngram] = _log10(logp)
    for history in lm.backoff:
        by_order[len(history)].setdefault(history, NO_PROBABILITY)

    lines = ["\\data\\"]
    for n in range(1, lm.order + 1):
        lines.append(f"ngram {n}={len(by_order[n])}")
    for n in range(1, lm.order + 1):
        lines.append("")
        lines.append(f"\\{n}-grams:")
        for ngram in sorted(by_order[n]):
            fields = [
                f"{by_order[n][ngram]:.8f}",
                " ".join(_encode(token) for token in ngram),
            ]
            if ngram in lm.backoff:
                fields.append(f"{_log10(lm.backoff[ngram]):.8f}")
            lines.append("\t".join(fields))
    lines.append("")
    lines.append("\\end\\")

    return "\n".join(lines) + "\n"


def read_arpa(data):
    """Parse ARPA text into a language model.

    Args:
        data (bytes or str): ARPA file content.

    Returns:
        CharNgramLm: the model; its vocabulary is the set of unigrams other
        than the start marker.

    Raises:
        ArpaFormatError: if the text is not valid ARPA.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    declared, probs, backoff = {}, {}, {}
    order, section = 0, None
    for number, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "\\data\\":
            continue
        if line == "\\end\\":
            break
        match = _COUNT.match(line)
        if match:
            declared[int(match.group(1))] = int(match.group(2))
            continue
        match = _SECTION.match(line)
        if match:
            section = int(match.group(1))
            order = max(order, section)
            continue
        if section is None:
            raise ArpaFormatError(f"unexpected line {line!r}", number)
        ngram, logp, bow = _parse_entry(line.split(), section, number)
        if logp is not None:
            probs[ngram] = logp
        if bow is not None:
            backoff[ngram] = bow
    if not probs:
        raise ArpaFormatError("no n-grams found")
    for n, count in declared.items():
        found = sum(1 for g in set(probs) | set(backoff) if len(g) == n)
        if found != count:
            logger.warning(
                f"ARPA header declares {count} {n}-grams, found {found}."
            )
    vocab = sorted(ngram[0] for ngram in probs if len(ngram) == 1)

    return CharNgramLm(order, vocab, probs, backoff)


def _parse_entry(fields, section, number):
    """Split one n-gram line.

    Returns:
        tuple: (ngram, natural log probability or None for backoff-only
        entries, natural log backoff or None).
    """
    if len(fields) not in (section + 1, section + 2):
        raise ArpaFormatError(
            f"expected 'logprob ngram [backoff]' with {section} tokens", number
        )
    try:
        logp = float(fields[0])
        bow = float(fields[section + 1]) if len(fields) == section + 2 else None
    except ValueError as e:
        raise ArpaFormatError(str(e), number) from e
    ngram = tuple(_decode(token) for token in fields[1 : section + 1])
    if logp <= NO_PROBABILITY:
        logp = None
    else:
        logp *= math.log(10)
    if bow is not None:
        bow *= math.log(10)

    return ngram, logp, bow

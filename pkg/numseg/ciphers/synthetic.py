""" Synthetic cipher generation
"""
import collections
import logging

import dask.bag as db
import numpy as np
from codetiming import Timer

import numseg.constants as const
from numseg.exceptions import InvalidParameter

from .core import (
    DIGITS,
    WORD_SEPARATOR,
    CipherKey,
    CipherText,
    KeyEntry,
    Segmentation,
    UnitKind,
    letter,
    nomenclature,
    null,
)
from .exceptions import InvalidKeySpec, MissingMapping, PoolExhausted

logger = logging.getLogger(__name__)

DEFAULT_POOL = tuple(str(i) for i in range(const.DEFAULT_POOL_SIZE))

KeySpec = collections.namedtuple(
    "KeySpec",
    [
        "plaintext_alphabet",
        "element_pool",
        "homophones_per_vowel",
        "homophones_per_consonant",
        "rng_seed",
        "n_nulls",
        "nomenclature_words",
        "vowels",
    ],
    defaults=(
        const.PLAINTEXT_ALPHABET,
        DEFAULT_POOL,
        1,
        1,
        0,
        0,
        (),
        const.VOWELS,
    ),
)
KeySpec.__doc__ = """Recipe of a random key.

Attributes:
    plaintext_alphabet (str): plaintext characters that receive elements.
    element_pool (tuple[str]): candidate cipher elements, "0" to "99" by
        default.
    homophones_per_vowel (int): elements per vowel.
    homophones_per_consonant (int): elements per other character.
    rng_seed (int): seed of the element draw.
    n_nulls (int): number of null elements.
    nomenclature_words (tuple[str]): words that receive one nomenclature
        element each.
    vowels (str): characters counted as vowels.
"""

GeneratedCipher = collections.namedtuple(
    "GeneratedCipher", "ciphertext gold key plaintext"
)


def validate_key_spec(spec):
    """Check a key spec before drawing from it.

    Args:
        spec (KeySpec): the key spec.

    Raises:
        InvalidKeySpec: on duplicate pool elements, duplicate plaintext
            characters or counts out of range.
        PoolExhausted: if the pool is smaller than the number of elements
            the spec needs.
    """
    if len(set(spec.element_pool)) != len(spec.element_pool):
        raise InvalidKeySpec("Element pool has duplicate elements.")
    if len(set(spec.plaintext_alphabet)) != len(spec.plaintext_alphabet):
        raise InvalidKeySpec("Plaintext alphabet has duplicate characters.")
    if spec.homophones_per_vowel < 1 or spec.homophones_per_consonant < 1:
        raise InvalidKeySpec("Homophone counts must be at least 1.")
    if spec.n_nulls < 0:
        raise InvalidKeySpec("Number of nulls cannot be negative.")
    required = required_elements(spec)
    if required > len(spec.element_pool):
        raise PoolExhausted(
            f"Key spec needs {required} elements but the pool holds only "
            f"{len(spec.element_pool)}."
        )


def required_elements(spec):
    """ Number of distinct elements a key drawn from spec uses."""
    counts = sum(
        _homophone_count(spec, char) for char in spec.plaintext_alphabet
    )

    return counts + spec.n_nulls + len(spec.nomenclature_words)


def _homophone_count(spec, char):
    if char in spec.vowels:
        return spec.homophones_per_vowel
    return spec.homophones_per_consonant


def generate_key(spec, alphabet=DIGITS):
    """Draw a random key.

    Elements are sampled without replacement from the pool; each plaintext
    character receives its homophone count, then nulls and nomenclature
    words are assigned. Single-digit picks next to two-digit picks make the
    key variable-length.

    Args:
        spec (KeySpec): the key spec.
        alphabet (CipherAlphabet): alphabet of the pool elements.

    Returns:
        CipherKey: the random key.

    Raises:
        PoolExhausted: if the pool is too small for the spec.
        InvalidKeySpec: if the spec is malformed.
    """
    validate_key_spec(spec)
    rng = np.random.default_rng(spec.rng_seed)
    picks = rng.choice(
        len(spec.element_pool), size=required_elements(spec), replace=False
    )
    elements = iter(spec.element_pool[i] for i in picks)

    entries = []
    for char in spec.plaintext_alphabet:
        for _ in range(_homophone_count(spec, char)):
            entries.append(KeyEntry(next(elements), letter(char)))
    for _ in range(spec.n_nulls):
        entries.append(KeyEntry(next(elements), null()))
    for word in spec.nomenclature_words:
        entries.append(KeyEntry(next(elements), nomenclature(word)))

    key = CipherKey(entries, alphabet)
    logger.debug(f"Generated {key} from seed {spec.rng_seed}.")

    return key


def prepare_plaintext(text, alphabet=const.PLAINTEXT_ALPHABET):
    """Normalize raw corpus text.

    Lowercases, deletes every character outside alphabet that is not
    whitespace and collapses whitespace runs into single spaces.

    Args:
        text (str): raw text.
        alphabet (str): plaintext alphabet.

    Returns:
        str: normalized plaintext.

    Examples:
        >>> prepare_plaintext("Hello,  World 42!")
        'hello world'
    """
    members = set(alphabet)
    kept = "".join(
        char for char in text.lower() if char in members or char.isspace()
    )

    return WORD_SEPARATOR.join(kept.split())


def encipher(plaintext, key, keep_spaces=False, rng_seed=None, null_rate=0.0):
    """Encipher a plaintext with a homophonic key.

    Every character is replaced by one of its homophones, chosen uniformly.
    Words that are nomenclature labels of the key are replaced by their
    nomenclature element. With a positive null_rate a random null element is
    inserted before a character with that probability.

    Args:
        plaintext (str): normalized plaintext, words separated by spaces.
        key (CipherKey): the key.
        keep_spaces (bool): keep word spaces in the cipher line.
        rng_seed (int or np.random.Generator): homophone choice seed.
        null_rate (float): probability of a null before each character.

    Returns:
        GeneratedCipher: a single-line cipher, its gold segmentation, the key
        and the plaintext with spaces removed.

    Raises:
        MissingMapping: if a plaintext character has no element.
    """
    rng = np.random.default_rng(rng_seed)
    homophones = {}
    nulls = [e.element for e in key.entries if e.target.kind == UnitKind.NULL]
    words_to_elements = {
        e.target.text: e.element
        for e in key.entries
        if e.target.kind == UnitKind.NOMENCLATURE and e.target.text
    }

    words, segments = [], []
    for word in plaintext.split():
        if word in words_to_elements:
            word_segments = [words_to_elements[word]]
        else:
            word_segments = []
            for char in word:
                if char not in homophones:
                    homophones[char] = key.homophones(char)
                choices = homophones[char]
                if not choices:
                    raise MissingMapping(char)
                if nulls and null_rate > 0 and rng.random() < null_rate:
                    word_segments.append(nulls[rng.integers(len(nulls))])
                word_segments.append(choices[rng.integers(len(choices))])
        words.append("".join(word_segments))
        segments.extend(word_segments)

    separator = WORD_SEPARATOR if keep_spaces else ""
    line = separator.join(words)
    gold = Segmentation(segments)

    return GeneratedCipher(
        ciphertext=CipherText([line] if line else [], key.alphabet),
        gold=gold,
        key=key,
        plaintext=key.apply(gold, nomenclature_labels=True),
    )


def generate_cipher(
    corpus,
    key,
    length=const.DEFAULT_CIPHER_LENGTH,
    keep_spaces=False,
    rng_seed=None,
):
    """Encipher a random stretch of a corpus.

    Reading starts at a random word and wraps around the corpus until enough
    characters are collected; the result is truncated to the largest gold
    boundary not exceeding length.

    Args:
        corpus (str): normalized plaintext corpus.
        key (CipherKey): the key.
        length (int): target length in cipher symbols.
        keep_spaces (bool): keep word spaces in the cipher line.
        rng_seed (int or np.random.Generator): seed of offset and homophones.

    Returns:
        GeneratedCipher: the cipher.

    Raises:
        InvalidParameter: if the corpus has no words or length < 1.
    """
    words = corpus.split()
    if not words:
        raise InvalidParameter("Cannot generate a cipher from an empty corpus.")
    if length < 1:
        raise InvalidParameter(f"Cipher length must be positive, got {length}.")
    rng = np.random.default_rng(rng_seed)
    position = int(rng.integers(len(words)))
    selected, n_chars = [], 0
    while n_chars < length:
        word = words[position % len(words)]
        selected.append(word)
        n_chars += len(word)
        position += 1
    cipher = encipher(WORD_SEPARATOR.join(selected), key, keep_spaces, rng)

    return truncate(cipher, length)


def reflow(ciphertext, width=const.DEFAULT_LINE_WIDTH):
    """Break a ciphertext into fixed-width lines.

    Args:
        ciphertext (CipherText): the ciphertext.
        width (int): symbols per line.

    Returns:
        CipherText: spaces removed, every line holds width symbols except
        possibly the last.

    Raises:
        InvalidParameter: if width < 1.
    """
    if width < 1:
        raise InvalidParameter(f"Line width must be positive, got {width}.")
    flat = ciphertext.flat
    lines = [flat[i : i + width] for i in range(0, len(flat), width)]

    return CipherText(lines, ciphertext.alphabet)


def _cut_lines(lines, n_symbols):
    """ Keep the first n_symbols symbols of lines, with spaces and breaks."""
    kept = []
    for line in lines:
        if n_symbols <= 0:
            break
        cut = []
        for char in line:
            if char == WORD_SEPARATOR:
                cut.append(char)
                continue
            if n_symbols <= 0:
                break
            cut.append(char)
            n_symbols -= 1
        kept.append("".join(cut).strip())

    return kept


def truncate(cipher, length):
    """Shorten a generated cipher to a gold segment boundary.

    Args:
        cipher (GeneratedCipher): the full cipher.
        length (int): requested length in cipher symbols.

    Returns:
        GeneratedCipher: the prefix ending at the largest gold boundary that
        does not exceed length, keeping line and word structure.
    """
    if length >= len(cipher.ciphertext):
        return cipher
    n_segments, n_symbols = 0, 0
    for segment in cipher.gold:
        if n_symbols + len(segment) > length:
            break
        n_symbols += len(segment)
        n_segments += 1

    line_map = None
    if cipher.gold.line_map is not None:
        line_map, remaining = [], n_segments
        for count in cipher.gold.line_map:
            line_map.append(min(count, remaining))
            remaining -= line_map[-1]
    gold = Segmentation(cipher.gold[:n_segments], line_map)
    ciphertext = CipherText(
        _cut_lines(cipher.ciphertext.lines, n_symbols),
        cipher.ciphertext.alphabet,
    )
    logger.debug(f"Truncated cipher to {n_symbols} symbols (asked {length}).")

    return GeneratedCipher(
        ciphertext=ciphertext,
        gold=gold,
        key=cipher.key,
        plaintext=cipher.key.apply(gold, nomenclature_labels=True),
    )


def truncate_series(cipher, lengths=const.LENGTH_SERIES):
    """ Prefixes of a cipher at every requested length, see truncate."""
    return [truncate(cipher, length) for length in lengths]


def cipher_seeds(seed, n):
    """Independent (key seed, text seed) pairs for a batch.

    Args:
        seed (int): batch seed.
        n (int): number of ciphers.

    Returns:
        list[tuple[int, int]]: one pair per cipher.
    """
    children = np.random.SeedSequence(seed).spawn(n)

    return [
        tuple(int(s) for s in child.generate_state(2)) for child in children
    ]


def _generate_one(job):
    corpus, spec, key_seed, text_seed, length, keep_spaces, width = job
    key = generate_key(spec._replace(rng_seed=key_seed))
    cipher = generate_cipher(corpus, key, length, keep_spaces, text_seed)
    if width and not keep_spaces:
        cipher = cipher._replace(ciphertext=reflow(cipher.ciphertext, width))

    return cipher


@Timer(name="generate_batch", text=const.TIMING_TEXT, logger=logging.info)
def generate_batch(
    corpus,
    spec,
    n=const.DEFAULT_N_CIPHERS,
    length=const.DEFAULT_CIPHER_LENGTH,
    keep_spaces=False,
    seed=0,
    width=const.DEFAULT_LINE_WIDTH,
    scheduler="synchronous",
):
    """Generate a batch of ciphers with independent random keys.

    Args:
        corpus (str): normalized plaintext corpus.
        spec (KeySpec): key recipe; its rng_seed is replaced per cipher.
        n (int): number of ciphers.
        length (int): cipher length in symbols.
        keep_spaces (bool): keep word spaces.
        seed (int): batch seed.
        width (int): reflow width for ciphers without spaces, None to keep a
            single line.
        scheduler (str): dask scheduler used for the batch.

    Returns:
        list[GeneratedCipher]: ciphers in seed order.
    """
    validate_key_spec(spec)
    jobs = [
        (corpus, spec, key_seed, text_seed, length, keep_spaces, width)
        for key_seed, text_seed in cipher_seeds(seed, n)
    ]
    ciphers = db.from_sequence(jobs).map(_generate_one).compute(
        scheduler=scheduler
    )
    logger.info(f"Generated {len(ciphers)} ciphers of length {length}.")

    return list(ciphers)

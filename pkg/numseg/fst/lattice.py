""" Segmentation and key transducers for known-key decoding
"""
import logging

import numseg.constants as const
from numseg.ciphers.core import UnitKind

from .exceptions import UnsegmentablePosition
from .wfst import EPSILON, SymbolTable, Wfst

logger = logging.getLogger(__name__)

# Symbols of context shown on each side of an unsegmentable position
CONTEXT_WIDTH = 5


def element_token(element):
    """ Composite label of a key element on the lattice output side."""
    return f"[{element}]"


def element_symbols(key):
    """ Symbol table of the element tokens of key, in key order."""
    return SymbolTable(element_token(e) for e in key.elements)


def _element_lengths(key):
    return sorted({len(e) for e in key.elements})


def _matches_at(flat, position, elements, lengths):
    for length in lengths:
        candidate = flat[position : position + length]
        if len(candidate) == length and candidate in elements:
            yield candidate


def _open_end_positions(flat, key):
    """ Positions whose remaining symbols are a proper prefix of an element."""
    prefixes = {e[:i] for e in key.elements for i in range(1, len(e))}
    start = max(0, len(flat) - key.max_element_len + 1)

    return {p for p in range(start, len(flat)) if flat[p:] in prefixes}


def build_segmentation_fst(cipher, key, open_end=False):
    """Lattice of all segmentations of a ciphertext into key elements.

    States ("pos", i) sit between symbols; an element of length k matching
    at i is spelled by k arcs reading its symbols, through trie states
    ("mid", i, prefix), and the last arc writes the element token. All
    weights are 0. Only positions on a complete path are kept.

    Args:
        cipher (CipherText or str): ciphertext or its flat symbol string.
        key (CipherKey): the key.
        open_end (bool): also accept paths ending inside an element that
            could continue past the end of the text.

    Returns:
        Wfst: the trimmed lattice; inputs are cipher symbols, outputs are
        element tokens.

    Raises:
        UnsegmentablePosition: at the furthest reachable position when no
            path covers the whole text.
    """
    flat = cipher if isinstance(cipher, str) else cipher.flat
    n = len(flat)
    elements = set(key.elements)
    lengths = _element_lengths(key)
    finals = {n} | (_open_end_positions(flat, key) if open_end else set())

    reachable = [False] * (n + 1)
    reachable[0] = True
    for i in range(n):
        if reachable[i]:
            for element in _matches_at(flat, i, elements, lengths):
                reachable[i + len(element)] = True
    useful = [False] * (n + 1)
    for i in range(n, -1, -1):
        if not reachable[i]:
            continue
        if i in finals:
            useful[i] = True
            continue
        useful[i] = any(
            useful[i + len(element)]
            for element in _matches_at(flat, i, elements, lengths)
        )
    if not useful[0]:
        position = max(i for i in range(n + 1) if reachable[i])
        low, high = max(0, position - CONTEXT_WIDTH), position + CONTEXT_WIDTH
        context = flat[low:high]
        raise UnsegmentablePosition(position, context)

    isymbols = SymbolTable(key.alphabet)
    osymbols = element_symbols(key)
    lattice = Wfst(isymbols, osymbols)
    lattice.set_start(lattice.add_state(("pos", 0)))
    for i in range(n + 1):
        if not useful[i]:
            continue
        source = lattice.add_state(("pos", i))
        if i in finals:
            lattice.set_final(source, 0.0)
        for element in _matches_at(flat, i, elements, lengths):
            end = i + len(element)
            if not useful[end]:
                continue
            state = source
            for offset, symbol in enumerate(element[:-1], start=1):
                nextstate = lattice.add_state(("mid", i, element[:offset]))
                known = (a.nextstate for a in lattice.arcs(state))
                if nextstate not in known:
                    label = isymbols.find(symbol)
                    lattice.add_arc(state, label, EPSILON, 0.0, nextstate)
                state = nextstate
            lattice.add_arc(
                state,
                isymbols.find(element[-1]),
                osymbols.find(element_token(element)),
                0.0,
                lattice.add_state(("pos", end)),
            )
    logger.debug(f"Built segmentation lattice {lattice} for {n} symbols.")

    return lattice


def plaintext_tokens(key, element):
    """Plaintext tokens an element writes.

    Regular elements write one token per character, nomenclature elements a
    single placeholder token and nulls nothing.
    """
    unit = key.target(element)
    if unit.kind == UnitKind.NULL:
        return []
    if unit.kind == UnitKind.NOMENCLATURE:
        return [const.NOMENCLATURE_PLACEHOLDER.format(element)]

    return list(unit.text)


def build_key_fst(key):
    """Transducer from element tokens to plaintext tokens.

    A single start and final state loops over every element; elements with
    multi-character targets write their characters through a chain of
    states reading epsilon.

    Args:
        key (CipherKey): the key.

    Returns:
        Wfst: the key transducer.
    """
    isymbols = element_symbols(key)
    osymbols = SymbolTable()
    for element in key.elements:
        for token in plaintext_tokens(key, element):
            osymbols.add(token)
    machine = Wfst(isymbols, osymbols)
    home = machine.add_state("key")
    machine.set_start(home)
    machine.set_final(home, 0.0)
    for element in key.elements:
        label = isymbols.find(element_token(element))
        tokens = plaintext_tokens(key, element)
        if not tokens:
            machine.add_arc(home, label, EPSILON, 0.0, home)
            continue
        state = home
        for index, token in enumerate(tokens):
            ilabel = label if index == 0 else EPSILON
            nextstate = (
                home if index == len(tokens) - 1 else machine.add_state()
            )
            machine.add_arc(state, ilabel, osymbols.find(token), 0.0, nextstate)
            state = nextstate

    return machine

""" Experiment configuration

Defaults are a yacs CfgNode. Config files are flat `key=value` text, one
setting per line, with `#` comments; nested keys use dots, e.g.
`homophonic.lengths=[1258, 1879]`. Values are parsed as Python literals and
must keep the type of the default; list settings also accept comma-separated
values. YAML files are merged with yacs directly.
"""
import ast
import logging
import os

from yacs.config import CfgNode as CN

import numseg.constants as const
from numseg.ciphers.synthetic import KeySpec, validate_key_spec
from numseg.exceptions import NumsegError
from numseg.segmenters.base import MODELS

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

SPACES_CONDITIONS = {"on": (True,), "off": (False,), "both": (True, False)}
EXPERIMENTS = ("mono", "length", "homophonic")
YAML_EXTENSIONS = (".yaml", ".yml")

_C = CN()
_C.experiment = "mono"
_C.corpus = ""
_C.output = "results"
_C.models = list(MODELS)
_C.n_ciphers = const.DEFAULT_N_CIPHERS
_C.length = const.DEFAULT_CIPHER_LENGTH
_C.lengths = list(const.LENGTH_SERIES)
_C.spaces = "on"
_C.seed = 0
_C.vocab_size = const.DEFAULT_VOCAB_SIZE
_C.auto_vocab = False
_C.width = const.DEFAULT_LINE_WIDTH
_C.scheduler = "synchronous"
_C.alphabet = const.DEFAULT_ALPHABET
_C.pool_size = const.DEFAULT_POOL_SIZE
_C.homophones_per_vowel = 1
_C.homophones_per_consonant = 1
_C.n_nulls = 0
_C.gnuplot = True

_C.homophonic = CN()
_C.homophonic.lengths = [1258, 1879, 2239]
_C.homophonic.n_ciphers = 10
_C.homophonic.homophones_per_vowel = 3
_C.homophonic.homophones_per_consonant = 1
_C.homophonic.n_nulls = 2
_C.homophonic.auto_vocab = True
_C.homophonic.gold_files = []

# Settings of `numseg gen`: KeySpec fields plus the text to encipher
_G = CN()
_G.corpus = ""
_G.length = const.DEFAULT_CIPHER_LENGTH
_G.n_ciphers = 1
_G.keep_spaces = False
_G.width = const.DEFAULT_LINE_WIDTH
_G.seed = 0
_G.plaintext_alphabet = const.PLAINTEXT_ALPHABET
_G.pool_size = const.DEFAULT_POOL_SIZE
_G.homophones_per_vowel = 1
_G.homophones_per_consonant = 1
_G.n_nulls = 0
_G.nomenclature_words = []
_G.vowels = const.VOWELS


def get_cfg_defaults():
    """ A fresh copy of the default experiment configuration."""
    return _C.clone()


def get_generation_defaults():
    return _G.clone()


def _parse_value(raw, default):
    """Literal value of raw, split on commas when a list is expected.

    String settings are returned quoted, as yacs literal-evaluates strings.
    """
    if isinstance(default, str):
        if len(raw) >= 2 and raw[0] == raw[-1] and raw[0] in "'\"":
            raw = raw[1:-1]
        return repr(raw)
    if isinstance(default, (list, tuple)) and not raw.startswith(("[", "(")):
        items = [item.strip() for item in raw.split(",") if item.strip()]
        return [_literal(item) for item in items]

    return _literal(raw)


def _literal(raw):
    try:
        return ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        return raw


def _lookup(cfg, key):
    node = cfg
    for part in key.split("."):
        if not isinstance(node, CN) or part not in node:
            return None, False
        node = node[part]

    return node, True


def merge_settings(cfg, settings, source="<command line>"):
    """Merge `key=value` settings into cfg.

    Args:
        cfg (CfgNode): configuration to update in place.
        settings (iterable of (int, str)): (line number, setting) pairs.
        source (str): file name used in error messages.

    Raises:
        ConfigError: on malformed settings, unknown keys or type mismatches.
    """
    for number, setting in settings:
        key, sep, raw = setting.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ConfigError(
                f"expected key=value, got {setting!r}", source, number
            )
        default, found = _lookup(cfg, key)
        if not found or isinstance(default, CN):
            raise ConfigError(f"unknown config key '{key}'", source, number)
        try:
            cfg.merge_from_list([key, _parse_value(raw, default)])
        except (AssertionError, KeyError, ValueError) as e:
            raise ConfigError(str(e), source, number) from e


def _read_flat(path):
    with open(path, encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.strip()
            if line and not line.startswith(const.COMMENT_PREFIX):
                yield number, line


def validate_config(cfg, source="<config>"):
    """Check value ranges that the types alone do not enforce.

    Raises:
        ConfigError: on an invalid setting.
    """
    unknown = [m for m in cfg.models if m not in MODELS]
    if unknown:
        raise ConfigError(
            f"unknown models {unknown}, known {list(MODELS)}", source
        )
    if cfg.spaces not in SPACES_CONDITIONS:
        raise ConfigError(
            f"spaces must be one of {list(SPACES_CONDITIONS)}, got "
            f"'{cfg.spaces}'",
            source,
        )
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(
            f"experiment must be one of {list(EXPERIMENTS)}, got "
            f"'{cfg.experiment}'",
            source,
        )
    positive = {
        "n_ciphers": cfg.n_ciphers,
        "length": cfg.length,
        "vocab_size": cfg.vocab_size,
        "pool_size": cfg.pool_size,
        "homophonic.n_ciphers": cfg.homophonic.n_ciphers,
    }
    for key, value in positive.items():
        if value < 1:
            raise ConfigError(f"{key} must be positive, got {value}", source)
    lengths = list(cfg.lengths) + list(cfg.homophonic.lengths)
    if any(length < 1 for length in lengths):
        raise ConfigError(f"cipher lengths must be positive: {lengths}", source)


def _merge_file(cfg, path):
    if not os.path.isfile(path):
        raise ConfigError("config file not found", path)
    if path.endswith(YAML_EXTENSIONS):
        try:
            cfg.merge_from_file(path)
        except (AssertionError, KeyError, ValueError) as e:
            raise ConfigError(str(e), path) from e
    else:
        merge_settings(cfg, _read_flat(path), path)


def load_config(path=None, overrides=()):
    """Build an experiment configuration.

    Args:
        path (str): flat key=value or YAML config file, None for defaults.
        overrides (iterable of str): `key=value` settings applied last.

    Returns:
        CfgNode: the frozen configuration.

    Raises:
        ConfigError: if the file is missing or holds invalid settings.
    """
    cfg = get_cfg_defaults()
    if path:
        _merge_file(cfg, path)
    merge_settings(cfg, enumerate(overrides, start=1))
    validate_config(cfg, path or "<defaults>")
    cfg.freeze()
    logger.debug(f"Loaded config from {path or '<defaults>'}:\n{cfg}")

    return cfg


def load_generation_config(path=None, overrides=()):
    """Build a cipher generation setup.

    Args:
        path (str): flat key=value or YAML file with generation keys.
        overrides (iterable of str): `key=value` settings applied last.

    Returns:
        tuple: (KeySpec, frozen CfgNode of the generation settings).

    Raises:
        ConfigError: if the file is missing or holds invalid settings.
    """
    cfg = get_generation_defaults()
    if path:
        _merge_file(cfg, path)
    merge_settings(cfg, enumerate(overrides, start=1))
    for key in ("length", "n_ciphers", "pool_size"):
        if cfg[key] < 1:
            raise ConfigError(f"{key} must be positive, got {cfg[key]}", path)
    cfg.freeze()
    spec = KeySpec(
        plaintext_alphabet=cfg.plaintext_alphabet,
        element_pool=tuple(str(i) for i in range(cfg.pool_size)),
        homophones_per_vowel=cfg.homophones_per_vowel,
        homophones_per_consonant=cfg.homophones_per_consonant,
        rng_seed=cfg.seed,
        n_nulls=cfg.n_nulls,
        nomenclature_words=tuple(cfg.nomenclature_words),
        vowels=cfg.vowels,
    )
    try:
        validate_key_spec(spec)
    except NumsegError as e:
        raise ConfigError(str(e), path) from e

    return spec, cfg


def dump_config(cfg):
    """ Render cfg as flat key=value text that load_config reads back."""
    lines = []

    def walk(node, prefix):
        for key in sorted(node):
            value = node[key]
            if isinstance(value, CN):
                walk(value, f"{prefix}{key}.")
            else:
                lines.append(f"{prefix}{key}={value!r}")

    walk(cfg, "")

    return "\n".join(lines) + "\n"

""" Segmentation experiments over synthetic and user-supplied ciphers

Every experiment writes, below `<output>/<experiment>/`:

- `per_cipher.csv/json`: one row per cipher and model,
- `results.csv/json`: per-model averages in percent,
- `<condition>/ciphers|gold|keys|segmentations|vocabularies/`: the artifacts
  every reported number is computed from,
- `config.txt`: the configuration that produced them.
"""
import logging
import os

import dask.bag as db
import pandas as pd
from codetiming import Timer
from tqdm import tqdm

import numseg.constants as const
from numseg.ciphers.core import CipherAlphabet, CipherText
from numseg.ciphers.synthetic import (
    KeySpec,
    cipher_seeds,
    generate_batch,
    generate_cipher,
    generate_key,
    prepare_plaintext,
    reflow,
    truncate_series,
)
from numseg.exceptions import NumsegError
from numseg.io.formats import (
    parse_segmentation_file,
    serialize_cipher,
    serialize_key,
    serialize_segmentation,
)
from numseg.segmenters.base import create_model
from numseg.segmenters.unigram import estimate_vocab_size
from numseg.stats.metrics import evaluate_segmentation

from .config import SPACES_CONDITIONS, dump_config
from .exceptions import ConfigError
from .reports import (
    PER_CIPHER_COLUMNS,
    pivot_metric,
    summarize,
    write_curve,
    write_table,
)

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["length", "condition", "model", "f1_pct", "seg_er_pct"]


def condition_name(keep_spaces):
    return "spaces" if keep_spaces else "no_spaces"


def read_corpus(path, plaintext_alphabet=const.PLAINTEXT_ALPHABET):
    """Load and normalize a plaintext corpus.

    Args:
        path (str): corpus text file.
        plaintext_alphabet (str): characters kept by normalization.

    Returns:
        str: lowercase words separated by single spaces.

    Raises:
        ConfigError: if the file is missing or holds no plaintext.
    """
    if not path:
        raise ConfigError("no corpus file configured (set corpus=<path>)")
    if not os.path.isfile(path):
        raise ConfigError("corpus file not found", path)
    with open(path, encoding="utf-8") as f:
        corpus = prepare_plaintext(f.read(), plaintext_alphabet)
    if not corpus.strip():
        raise ConfigError("corpus holds no plaintext characters", path)
    logger.info(f"Loaded corpus {path} with {len(corpus)} characters.")

    return corpus


def key_spec_from_config(cfg, homophonic=False):
    """Key recipe of an experiment.

    Args:
        cfg (CfgNode): experiment configuration.
        homophonic (bool): use the homophone and null counts of the
            homophonic section.

    Returns:
        KeySpec: the recipe; element pool "0" to str(pool_size - 1).
    """
    node = cfg.homophonic if homophonic else cfg

    return KeySpec(
        element_pool=tuple(str(i) for i in range(cfg.pool_size)),
        homophones_per_vowel=node.homophones_per_vowel,
        homophones_per_consonant=node.homophones_per_consonant,
        n_nulls=node.n_nulls,
        rng_seed=cfg.seed,
    )


def run_models(cipher, gold, models, vocab_size, auto_vocab=False):
    """Train every model on a cipher and score it against the gold.

    Args:
        cipher (CipherText): the ciphertext, also the training data.
        gold (Segmentation): gold segmentation.
        models (sequence of str): experiment model names.
        vocab_size (int): vocabulary size of trainable models.
        auto_vocab (bool): replace vocab_size by the unigram estimate of the
            cipher.

    Returns:
        dict: model name -> (Segmentation, learned vocabulary, EvalReport).
    """
    if auto_vocab:
        vocab_size = max(estimate_vocab_size(cipher), len(cipher.alphabet))
        logger.debug(f"Estimated vocabulary size {vocab_size}.")
    results = {}
    for name in models:
        report = create_model(name, vocab_size=vocab_size).run(cipher)
        segmentation = report.segmentations[0]
        evaluation = evaluate_segmentation(
            segmentation, gold, vocabulary=report.vocabulary
        )
        results[name] = (segmentation, report.vocabulary, evaluation)

    return results


def _run_job(job):
    cipher_id, cipher, gold, models, vocab_size, auto_vocab = job

    return cipher_id, run_models(cipher, gold, models, vocab_size, auto_vocab)


def _write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def persist_artifacts(directory, cipher_id, cipher, gold, key, results):
    """Write the cipher, gold, key and every model output of one cipher."""
    _write(
        os.path.join(directory, "ciphers", f"{cipher_id}.txt"),
        serialize_cipher(cipher),
    )
    _write(
        os.path.join(directory, "gold", f"{cipher_id}.txt"),
        serialize_segmentation(gold) + "\n",
    )
    if key is not None:
        _write(
            os.path.join(directory, "keys", f"{cipher_id}.tsv"),
            serialize_key(key),
        )
    for model, (segmentation, vocabulary, _) in results.items():
        _write(
            os.path.join(directory, "segmentations", model, f"{cipher_id}.txt"),
            serialize_segmentation(segmentation) + "\n",
        )
        _write(
            os.path.join(directory, "vocabularies", model, f"{cipher_id}.txt"),
            "".join(f"{piece}\n" for piece in sorted(vocabulary)),
        )


def evaluate_batch(experiment, condition, items, cfg, directory, **vocab):
    """Run all configured models on a batch of ciphers.

    Ciphers are processed in a dask bag; artifacts and rows are written in
    cipher id order.

    Args:
        experiment (str): experiment name written into the rows.
        condition (str): condition name written into the rows.
        items (list[tuple]): (cipher id, CipherText, gold Segmentation,
            CipherKey or None) per cipher.
        cfg (CfgNode): experiment configuration.
        directory (str): artifact directory of the condition.
        **vocab: vocab_size and auto_vocab overriding the configuration.

    Returns:
        list[dict]: per-cipher rows with PER_CIPHER_COLUMNS.
    """
    vocab_size = vocab.get("vocab_size", cfg.vocab_size)
    auto_vocab = vocab.get("auto_vocab", cfg.auto_vocab)
    jobs = [
        (cipher_id, cipher, gold, tuple(cfg.models), vocab_size, auto_vocab)
        for cipher_id, cipher, gold, _ in items
    ]
    outputs = dict(
        db.from_sequence(jobs).map(_run_job).compute(scheduler=cfg.scheduler)
    )

    rows = []
    for cipher_id, cipher, gold, key in tqdm(
        sorted(items, key=lambda item: item[0]), desc=condition
    ):
        results = outputs[cipher_id]
        persist_artifacts(directory, cipher_id, cipher, gold, key, results)
        for model in cfg.models:
            _, vocabulary, evaluation = results[model]
            rows.append(
                {
                    "experiment": experiment,
                    "condition": condition,
                    "cipher": cipher_id,
                    "model": model,
                    "vocab_size": len(vocabulary),
                    "f1": evaluation.f1,
                    "precision": evaluation.precision,
                    "recall": evaluation.recall,
                    "seg_er": evaluation.seg_er,
                    "segment_edits": evaluation.segment_edits,
                    "reference_segments": evaluation.reference_segments,
                }
            )

    return rows


def _batch_items(ciphers):
    return [
        (f"cipher_{index:04d}", c.ciphertext, c.gold, c.key)
        for index, c in enumerate(ciphers)
    ]


def _finish(cfg, experiment, rows):
    directory = os.path.join(cfg.output, experiment)
    per_cipher = pd.DataFrame(rows, columns=PER_CIPHER_COLUMNS)
    results = summarize(per_cipher)
    write_table(per_cipher, os.path.join(directory, "per_cipher"))
    write_table(results, os.path.join(directory, "results"))
    _write(os.path.join(directory, "config.txt"), dump_config(cfg))

    return results


@Timer(name="run_mono_experiment", text=const.TIMING_TEXT, logger=logging.info)
def run_mono_experiment(cfg):
    """Segment a batch of monoalphabetic ciphers with every model.

    The same keys and plaintext offsets are used with and without word
    spaces; ciphers without spaces are reflowed to cfg.width symbols per
    line.

    Args:
        cfg (CfgNode): experiment configuration.

    Returns:
        pd.DataFrame: per condition and model averages in percent, models in
        configured order.

    Raises:
        ConfigError: on a missing or empty corpus.
    """
    corpus = read_corpus(cfg.corpus)
    spec = key_spec_from_config(cfg)
    rows = []
    for keep_spaces in SPACES_CONDITIONS[cfg.spaces]:
        condition = condition_name(keep_spaces)
        ciphers = generate_batch(
            corpus,
            spec,
            n=cfg.n_ciphers,
            length=cfg.length,
            keep_spaces=keep_spaces,
            seed=cfg.seed,
            width=cfg.width,
            scheduler=cfg.scheduler,
        )
        rows.extend(
            evaluate_batch(
                "mono",
                condition,
                _batch_items(ciphers),
                cfg,
                os.path.join(cfg.output, "mono", condition),
            )
        )

    return _finish(cfg, "mono", rows)


@Timer(name="run_length_study", text=const.TIMING_TEXT, logger=logging.info)
def run_length_study(cfg):
    """Segmentation quality as a function of cipher length.

    One cipher of the largest configured length is generated per condition
    and every model is run on its prefixes at cfg.lengths.

    Args:
        cfg (CfgNode): experiment configuration.

    Returns:
        pd.DataFrame: curve with CURVE_COLUMNS, one row per length,
        condition and model.
    """
    corpus = read_corpus(cfg.corpus)
    lengths = sorted(set(cfg.lengths))
    key_seed, text_seed = cipher_seeds(cfg.seed, 1)[0]
    key = generate_key(key_spec_from_config(cfg)._replace(rng_seed=key_seed))
    rows = []
    for keep_spaces in SPACES_CONDITIONS[cfg.spaces]:
        condition = condition_name(keep_spaces)
        full = generate_cipher(
            corpus, key, max(lengths), keep_spaces, text_seed
        )
        if cfg.width and not keep_spaces:
            full = full._replace(ciphertext=reflow(full.ciphertext, cfg.width))
        items = [
            (f"length_{length:05d}", prefix.ciphertext, prefix.gold, key)
            for length, prefix in zip(lengths, truncate_series(full, lengths))
        ]
        rows.extend(
            evaluate_batch(
                "length",
                condition,
                items,
                cfg,
                os.path.join(cfg.output, "length", condition),
            )
        )
    per_cipher = pd.DataFrame(rows, columns=PER_CIPHER_COLUMNS)
    curve = summarize(per_cipher, by=("cipher", "condition", "model"))
    curve["length"] = [int(c.split("_")[1]) for c in curve["cipher"]]
    curve = curve[CURVE_COLUMNS]

    directory = os.path.join(cfg.output, "length")
    write_table(per_cipher, os.path.join(directory, "per_cipher"))
    write_curve(curve, directory, list(cfg.models), gnuplot=cfg.gnuplot)
    _write(os.path.join(directory, "config.txt"), dump_config(cfg))

    return curve


def load_gold_cipher(path, alphabet=None):
    """Read a user-supplied gold segmentation file as a cipher.

    Args:
        path (str): segmentation file, segments separated by spaces.
        alphabet (CipherAlphabet): alphabet of the file.

    Returns:
        tuple[CipherText, Segmentation]: the unsegmented cipher, line by
        line, and its gold segmentation.

    Raises:
        ConfigError: if the file is missing or invalid.
    """
    if not os.path.isfile(path):
        raise ConfigError("gold file not found", path)
    with open(path, "rb") as f:
        try:
            gold = parse_segmentation_file(f.read(), alphabet)
        except NumsegError as e:
            raise ConfigError(str(e), path) from e
    cipher = CipherText(
        ["".join(line) for line in gold.lines()],
        alphabet or CipherAlphabet(sorted(set(gold.join()))),
    )

    return cipher, gold


@Timer(
    name="run_homophonic_experiment",
    text=const.TIMING_TEXT,
    logger=logging.info,
)
def run_homophonic_experiment(cfg):
    """Segment homophonic ciphers of several lengths with every model.

    Synthetic batches are generated for each of cfg.homophonic.lengths
    without word spaces; each gold file of cfg.homophonic.gold_files is an
    extra single-cipher condition named after the file.

    Args:
        cfg (CfgNode): experiment configuration.

    Returns:
        pd.DataFrame: per condition and model averages in percent.
    """
    corpus = read_corpus(cfg.corpus)
    spec = key_spec_from_config(cfg, homophonic=True)
    vocab = {"auto_vocab": cfg.homophonic.auto_vocab}
    directory = os.path.join(cfg.output, "homophonic")
    rows = []
    for length in cfg.homophonic.lengths:
        condition = f"synthetic_{length}"
        ciphers = generate_batch(
            corpus,
            spec,
            n=cfg.homophonic.n_ciphers,
            length=length,
            keep_spaces=False,
            seed=cfg.seed,
            width=cfg.width,
            scheduler=cfg.scheduler,
        )
        rows.extend(
            evaluate_batch(
                "homophonic",
                condition,
                _batch_items(ciphers),
                cfg,
                os.path.join(directory, condition),
                **vocab,
            )
        )
    alphabet = CipherAlphabet(cfg.alphabet)
    for path in cfg.homophonic.gold_files:
        condition = os.path.splitext(os.path.basename(path))[0]
        cipher, gold = load_gold_cipher(path, alphabet)
        rows.extend(
            evaluate_batch(
                "homophonic",
                condition,
                [(condition, cipher, gold, None)],
                cfg,
                os.path.join(directory, condition),
                **vocab,
            )
        )

    results = _finish(cfg, "homophonic", rows)
    for metric in ("seg_er_pct", "f1_pct"):
        write_table(
            pivot_metric(results, metric),
            os.path.join(directory, f"table_{metric}"),
        )

    return results


EXPERIMENT_RUNNERS = {
    "mono": run_mono_experiment,
    "length": run_length_study,
    "homophonic": run_homophonic_experiment,
}


def run_experiment(cfg):
    """ Run the experiment named by cfg.experiment."""
    logger.info(f"Running {cfg.experiment} experiment, output {cfg.output}.")

    return EXPERIMENT_RUNNERS[cfg.experiment](cfg)

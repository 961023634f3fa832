import os

import pandas as pd
import pytest

from numseg.ciphers.core import CipherText, Segmentation
from numseg.harness import ConfigError, load_config, run_experiment
from numseg.harness.experiments import (
    load_gold_cipher,
    read_corpus,
    run_models,
)
from numseg.harness.reports import read_table


@pytest.fixture
def corpus_file(mock_data_dir):
    return str(mock_data_dir / "english.txt")


def _config(tmp_path, corpus_file, *settings):
    return load_config(
        overrides=[f"corpus={corpus_file}", f"output={tmp_path}", *settings]
    )


def test_read_corpus_normalizes(corpus_file):
    corpus = read_corpus(corpus_file)

    assert corpus == corpus.lower()
    assert set(corpus) <= set("abcdefghijklmnopqrstuvwxyz ")


def test_read_corpus_missing(tmp_path):
    with pytest.raises(ConfigError):
        read_corpus("")
    with pytest.raises(ConfigError):
        read_corpus(str(tmp_path / "missing.txt"))


def test_run_models_scores_every_model():
    cipher = CipherText(["2 22 8 11", "11 2"])
    gold = Segmentation(["2", "22", "8", "11", "11", "2"])

    results = run_models(cipher, gold, ["1-dig", "2-dig"], vocab_size=10)

    segmentation, vocabulary, evaluation = results["2-dig"]
    assert list(segmentation) == ["2", "22", "8", "11", "11", "2"]
    assert vocabulary == frozenset({"2", "22", "8", "11"})
    assert evaluation.seg_er == 0.0
    assert evaluation.f1 == 1.0
    assert results["1-dig"][2].seg_er > 0


def test_mono_experiment(tmp_path, corpus_file):
    cfg = _config(
        tmp_path,
        corpus_file,
        "n_ciphers=2",
        "length=256",
        "spaces=both",
        "models=1-dig,2-dig,unigram2",
    )

    results = run_experiment(cfg)

    assert list(results["condition"]) == ["spaces"] * 3 + ["no_spaces"] * 3
    assert list(results["model"]) == ["1-dig", "2-dig", "unigram2"] * 2
    assert (results["n_ciphers"] == 2).all()
    one_digit = results[results["model"] == "1-dig"]
    assert (one_digit["seg_er_pct"] > 100).all()
    directory = tmp_path / "mono"
    for name in ("per_cipher.csv", "results.json", "config.txt"):
        assert (directory / name).is_file()
    artifacts = directory / "no_spaces"
    assert (artifacts / "ciphers" / "cipher_0001.txt").is_file()
    assert (artifacts / "keys" / "cipher_0001.tsv").is_file()
    for kind in ("segmentations", "vocabularies"):
        assert (artifacts / kind / "unigram2" / "cipher_0000.txt").is_file()


def test_mono_experiment_is_deterministic(tmp_path, corpus_file):
    settings = ("n_ciphers=2", "length=128", "models=2-dig,bpe2")
    first = _config(tmp_path / "a", corpus_file, *settings)
    second = _config(tmp_path / "b", corpus_file, *settings)

    run_experiment(first)
    run_experiment(second)

    for name in ("per_cipher.csv", "results.csv"):
        a = (tmp_path / "a" / "mono" / name).read_bytes()
        b = (tmp_path / "b" / "mono" / name).read_bytes()
        assert a == b
    pd.testing.assert_frame_equal(
        read_table(str(tmp_path / "a" / "mono" / "results.json")),
        read_table(str(tmp_path / "b" / "mono" / "results.json")),
    )


def test_length_study(tmp_path, corpus_file):
    cfg = _config(
        tmp_path,
        corpus_file,
        "experiment=length",
        "lengths=256,128",
        "spaces=off",
        "models=2-dig,unigram2",
    )

    curve = run_experiment(cfg)

    assert list(curve.columns) == [
        "length",
        "condition",
        "model",
        "f1_pct",
        "seg_er_pct",
    ]
    assert list(curve["length"]) == [128, 128, 256, 256]
    directory = tmp_path / "length"
    wide = pd.read_csv(directory / "curve_no_spaces.csv")
    assert list(wide.columns) == [
        "length",
        "2-dig_f1_pct",
        "unigram2_f1_pct",
        "2-dig_seg_er_pct",
        "unigram2_seg_er_pct",
    ]
    script = (directory / "curve_no_spaces_seg_er_pct.gp").read_text()
    assert '"curve_no_spaces.csv"' in script
    assert '"unigram2_seg_er_pct"' in script


def test_homophonic_experiment(tmp_path, corpus_file, mock_data_dir):
    gold_file = str(mock_data_dir / "cipher_gold.txt")
    cfg = _config(
        tmp_path,
        corpus_file,
        "experiment=homophonic",
        "homophonic.lengths=[200]",
        "homophonic.n_ciphers=2",
        f"homophonic.gold_files=[{gold_file!r}]",
        "models=1-dig,unigram2",
    )

    results = run_experiment(cfg)

    assert list(dict.fromkeys(results["condition"])) == [
        "synthetic_200",
        "cipher_gold",
    ]
    table = pd.read_csv(tmp_path / "homophonic" / "table_seg_er_pct.csv")
    assert list(table.columns) == ["model", "synthetic_200", "cipher_gold"]
    assert list(table["model"]) == ["1-dig", "unigram2"]
    gold_dir = tmp_path / "homophonic" / "cipher_gold"
    assert os.listdir(gold_dir / "segmentations" / "unigram2") == [
        "cipher_gold.txt"
    ]
    assert not (gold_dir / "keys").exists()


def test_load_gold_cipher(mock_data_dir):
    cipher, gold = load_gold_cipher(str(mock_data_dir / "cipher_gold.txt"))

    assert cipher.lines == ("222811", "112")
    assert list(gold) == ["2", "22", "8", "11", "11", "2"]


def test_load_gold_cipher_missing(tmp_path):
    with pytest.raises(ConfigError):
        load_gold_cipher(str(tmp_path / "gold.txt"))


def _seg_er(table, model):
    return table.loc[table["model"] == model, "seg_er_pct"].item()


def test_mono_models_rank_as_expected(tmp_path, corpus_file):
    cfg = _config(
        tmp_path,
        corpus_file,
        "n_ciphers=3",
        "length=2048",
        "spaces=both",
        "models=1-dig,2-dig,bpe2,unigram2",
    )

    results = run_experiment(cfg)

    for condition in ("spaces", "no_spaces"):
        table = results[results["condition"] == condition]
        assert (
            _seg_er(table, "unigram2")
            < _seg_er(table, "bpe2")
            < _seg_er(table, "2-dig")
            < _seg_er(table, "1-dig")
        )
        assert _seg_er(table, "1-dig") > 100
        assert _seg_er(table, "unigram2") <= 10


def test_length_study_improves_with_length(tmp_path, corpus_file):
    cfg = _config(
        tmp_path,
        corpus_file,
        "experiment=length",
        "lengths=128,256,2048",
        "spaces=on",
        "models=unigram2",
    )

    curve = run_experiment(cfg).set_index("length")["seg_er_pct"]

    assert curve[2048] <= curve[256]
    assert curve[2048] <= curve[128]


def test_homophonic_unigram_beats_two_digit_baseline(tmp_path, corpus_file):
    cfg = _config(
        tmp_path,
        corpus_file,
        "experiment=homophonic",
        "homophonic.lengths=[1258]",
        "homophonic.n_ciphers=3",
        "models=1-dig,2-dig,unigram2",
    )

    results = run_experiment(cfg)

    table = results[results["condition"] == "synthetic_1258"]
    assert _seg_er(table, "unigram2") < _seg_er(table, "2-dig")
    assert _seg_er(table, "1-dig") > 100

from unittest.mock import patch

import pytest
from click.testing import CliRunner

from numseg.__main__ import entrypoint
from numseg.commands.gen import cli
from numseg.io.formats import (
    parse_cipher_file,
    parse_key_file,
    parse_segmentation_file,
)


@pytest.fixture
def corpus_path(mock_data_dir):
    return str(mock_data_dir / "english.txt")


def test_gen_writes_one_cipher(tmp_path, corpus_path):
    # arrange
    runner = CliRunner()
    args = ["--corpus", corpus_path, "--seed", "7", "--out", str(tmp_path)]
    # act
    result = runner.invoke(cli, args + ["length=200", "n_nulls=1"])
    # assert
    assert result.exit_code == 0, result.output
    parsed = parse_cipher_file((tmp_path / "cipher.txt").read_bytes())
    gold = parse_segmentation_file((tmp_path / "gold.txt").read_bytes())
    key = parse_key_file((tmp_path / "key.tsv").read_bytes())
    assert len(parsed.cipher) <= 200
    assert gold.join() == parsed.cipher.flat
    assert all(segment in key for segment in gold)
    assert len(key) == 27
    assert (tmp_path / "plain.txt").read_text().strip()


def test_gen_writes_a_directory_per_cipher(tmp_path, corpus_path):
    # arrange
    runner = CliRunner()
    args = ["--corpus", corpus_path, "--out", str(tmp_path), "n_ciphers=2"]
    # act
    result = runner.invoke(cli, args)
    # assert
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "cipher_0000",
        "cipher_0001",
    ]
    assert (tmp_path / "cipher_0001" / "key.tsv").is_file()


def test_gen_is_reproducible(tmp_path, corpus_path):
    # arrange
    runner = CliRunner()
    outputs = [tmp_path / "a", tmp_path / "b"]
    # act
    for output in outputs:
        runner.invoke(
            cli, ["--corpus", corpus_path, "--seed", "3", "--out", str(output)]
        )
    # assert
    for name in ("cipher.txt", "key.tsv"):
        assert (outputs[0] / name).read_bytes() == (
            outputs[1] / name
        ).read_bytes()


@pytest.mark.parametrize(
    "args", [["pool_size=20"], ["homophones_per_vowel=0"], ["bogus=1"]]
)
@patch("numseg.ciphers.synthetic.generate_batch")
def test_gen_invalid_spec_generates_nothing(mock_generate, tmp_path, args):
    # arrange
    runner = CliRunner()
    # act
    result = runner.invoke(
        entrypoint, ["gen", "--out", str(tmp_path)] + args
    )
    # assert
    assert result.exit_code == 1
    mock_generate.assert_not_called()

import json

import pytest
from click.testing import CliRunner

from numseg.__main__ import entrypoint
from numseg.commands.train import segmenter_params
from numseg.io.formats import parse_segmentation_file
from numseg.segmenters import load_segmenter


@pytest.fixture
def cipher_file(tmp_path):
    path = tmp_path / "cipher.txt"
    path.write_text("25 4 22 0 24\n25 4 0 22 25 4\n24 0 25 4 22\n")

    return path


def test_segmenter_params():
    assert segmenter_params("baseline", 36, None, 1) == {"k": 1}
    assert segmenter_params("bpe", 20, 2, 1) == {
        "vocab_size": 20,
        "max_piece_len": 2,
    }


@pytest.mark.parametrize(
    "algo_args",
    [
        ["--algo", "baseline", "--width", "2"],
        ["--algo", "bpe", "--vocab", "14", "--max-piece", "2"],
        ["--algo", "unigram", "--vocab", "14", "--max-piece", "2"],
    ],
)
def test_train_segment_eval(tmp_path, cipher_file, algo_args):
    # arrange
    runner = CliRunner()
    model = tmp_path / "model.json"
    segmentation = tmp_path / "seg.txt"
    # act
    trained = runner.invoke(
        entrypoint,
        ["train", *algo_args, "--in", str(cipher_file), "--out", str(model)],
    )
    segmented = runner.invoke(
        entrypoint,
        [
            "segment",
            "--model",
            str(model),
            "--in",
            str(cipher_file),
            "--out",
            str(segmentation),
        ],
    )
    evaluated = runner.invoke(
        entrypoint,
        [
            "eval",
            "--hyp",
            str(segmentation),
            "--ref",
            str(cipher_file),
            "--json",
        ],
    )
    # assert
    assert trained.exit_code == 0, trained.output
    assert segmented.exit_code == 0, segmented.output
    assert evaluated.exit_code == 0, evaluated.output
    segmenter = load_segmenter(model.read_bytes())
    assert segmenter.algo == algo_args[1]
    result = parse_segmentation_file(segmentation.read_bytes())
    assert result.join() == "".join(["25422024", "254022254", "24025422"])
    if algo_args[1] != "baseline":
        assert len(result.lines()) == 3
    report = json.loads(evaluated.output)
    assert report["metric"] == "seger"
    assert report["reference_segments"] == 16


def test_train_rejects_unknown_algorithm(tmp_path, cipher_file):
    # arrange
    runner = CliRunner()
    # act
    result = runner.invoke(
        entrypoint,
        [
            "train",
            "--algo",
            "wordpiece",
            "--in",
            str(cipher_file),
            "--out",
            str(tmp_path / "model.json"),
        ],
    )
    # assert
    assert result.exit_code == 1
    assert not (tmp_path / "model.json").exists()


def test_segment_rejects_corrupt_model(tmp_path, cipher_file):
    # arrange
    runner = CliRunner()
    model = tmp_path / "model.json"
    model.write_text('{"version": "99", "algorithm": "bpe"}')
    # act
    result = runner.invoke(
        entrypoint,
        [
            "segment",
            "--model",
            str(model),
            "--in",
            str(cipher_file),
            "--out",
            str(tmp_path / "seg.txt"),
        ],
    )
    # assert
    assert result.exit_code == 1


def test_train_rejects_invalid_utf8_cipher(tmp_path):
    # arrange
    runner = CliRunner()
    cipher = tmp_path / "cipher.txt"
    cipher.write_bytes(b"25 4\xff 22\n")
    # act
    result = runner.invoke(
        entrypoint,
        [
            "train",
            "--algo",
            "bpe",
            "--in",
            str(cipher),
            "--out",
            str(tmp_path / "model.json"),
        ],
    )
    # assert
    assert result.exit_code == 1
    assert not (tmp_path / "model.json").exists()

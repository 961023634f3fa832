""" Result tables and plot scripts written by experiments
"""
import logging
import os

import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6f"
JSON_PRECISION = 6
PER_CIPHER_COLUMNS = [
    "experiment",
    "condition",
    "cipher",
    "model",
    "vocab_size",
    "f1",
    "precision",
    "recall",
    "seg_er",
    "segment_edits",
    "reference_segments",
]
RATIO_COLUMNS = ["f1", "precision", "recall", "seg_er"]


def write_table(table, path_stem):
    """Write a table as CSV and JSON records.

    Floats are written with fixed precision so that reruns produce identical
    bytes.

    Args:
        table (pd.DataFrame): the table.
        path_stem (str): output path without extension.

    Returns:
        tuple[str, str]: paths of the CSV and JSON files.
    """
    os.makedirs(os.path.dirname(path_stem) or ".", exist_ok=True)
    csv_path, json_path = f"{path_stem}.csv", f"{path_stem}.json"
    table.to_csv(csv_path, index=False, float_format=FLOAT_FORMAT)
    table.to_json(
        json_path, orient="records", double_precision=JSON_PRECISION, indent=2
    )
    logger.info(f"Wrote {len(table)} rows to {csv_path} and {json_path}.")

    return csv_path, json_path


def summarize(per_cipher, by=("condition", "model")):
    """Average per-cipher metrics in percent.

    Groups keep the order in which they first appear in per_cipher.

    Args:
        per_cipher (pd.DataFrame): rows with PER_CIPHER_COLUMNS.
        by (sequence of str): grouping columns.

    Returns:
        pd.DataFrame: one row per group with n_ciphers, mean vocab_size and
        f1_pct, precision_pct, recall_pct and seg_er_pct.
    """
    grouped = per_cipher.groupby(list(by), sort=False)
    table = grouped[RATIO_COLUMNS].mean() * 100.0
    table.columns = [f"{column}_pct" for column in RATIO_COLUMNS]
    table.insert(0, "vocab_size", grouped["vocab_size"].mean())
    table.insert(0, "n_ciphers", grouped.size())

    return table.reset_index()


def pivot_metric(results, metric, index="model", columns="condition"):
    """Wide view of one metric, rows and columns in first-seen order.

    Args:
        results (pd.DataFrame): output of summarize.
        metric (str): metric column, e.g. "seg_er_pct".

    Returns:
        pd.DataFrame: index column first, one column per condition.
    """
    rows = list(dict.fromkeys(results[index]))
    cols = list(dict.fromkeys(results[columns]))
    wide = results.pivot(index=index, columns=columns, values=metric)
    wide = wide.reindex(index=rows, columns=cols)
    wide.columns.name = None

    return wide.reset_index()


def gnuplot_script(data_file, models, metric="seg_er_pct", image="curve.png"):
    """Script plotting a length curve with gnuplot.

    Args:
        data_file (str): wide CSV with a "length" column and one
            "<model>_<metric>" column per model.
        models (sequence of str): models to draw.
        metric (str): metric suffix of the columns.
        image (str): PNG written by the script.

    Returns:
        str: the script.
    """
    label = "SegER %" if metric.startswith("seg_er") else "F1 %"
    plots = [
        f'"{data_file}" using "length":"{model}_{metric}" '
        f'with linespoints title "{model}"'
        for model in models
    ]
    lines = [
        'set datafile separator ","',
        "set datafile columnheaders",
        "set terminal pngcairo size 800,500",
        f'set output "{image}"',
        "set logscale x 2",
        'set xlabel "Cipher length (symbols)"',
        f'set ylabel "{label}"',
        "set key outside right",
        "plot " + ", \\\n     ".join(plots),
    ]

    return "\n".join(lines) + "\n"


def write_curve(curve, directory, models, gnuplot=True):
    """Write a length curve and, optionally, its gnuplot scripts.

    Args:
        curve (pd.DataFrame): rows with length, condition, model, f1_pct and
            seg_er_pct.
        directory (str): output directory.
        models (sequence of str): models in display order.
        gnuplot (bool): also write wide CSVs and .gp scripts per condition.

    Returns:
        list[str]: written file paths.
    """
    written = list(write_table(curve, os.path.join(directory, "curve")))
    if not gnuplot:
        return written
    for condition, rows in curve.groupby("condition", sort=False):
        wide = rows.pivot(index="length", columns="model")
        wide = wide[["f1_pct", "seg_er_pct"]]
        wide.columns = [f"{model}_{metric}" for metric, model in wide.columns]
        data_file = f"curve_{condition}.csv"
        data_path = os.path.join(directory, data_file)
        wide.reset_index().to_csv(
            data_path, index=False, float_format=FLOAT_FORMAT
        )
        written.append(data_path)
        for metric in ("seg_er_pct", "f1_pct"):
            stem = f"curve_{condition}_{metric}"
            script_path = os.path.join(directory, f"{stem}.gp")
            with open(script_path, "w", encoding="utf-8") as f:
                f.write(
                    gnuplot_script(data_file, models, metric, f"{stem}.png")
                )
            written.append(script_path)
    logger.info(f"Wrote length curve files to {directory}.")

    return written


def read_table(path):
    """ Load a table written by write_table."""
    if path.endswith(".json"):
        return pd.read_json(path, orient="records")
    return pd.read_csv(path)

import logging

import pandas as pd

logger = logging.getLogger(__name__)


def segmentation_statistics(segmentation):
    """Size figures of one gold segmentation.

    Args:
        segmentation (Segmentation): gold segmentation of a cipher.

    Returns:
        dict: length in symbols, element types and tokens, and the number of
        1-symbol and 2-symbol tokens.
    """
    lengths = [len(segment) for segment in segmentation]

    return {
        "length": sum(lengths),
        "types": len(segmentation.vocabulary),
        "tokens": len(lengths),
        "one_symbol": lengths.count(1),
        "two_symbol": lengths.count(2),
    }


class CipherStatistics:
    """Statistics of a set of gold-segmented ciphers

    Attributes:
        table (pd.DataFrame): one row per cipher, indexed by cipher name.
        Columns "length", "types", "tokens", "one_symbol", "two_symbol",
        "one_two_symbol" and the matching "*_pct" token percentages.

    Examples:

    .. code-block:: python

        >>> stats = CipherStatistics({"F283": segmentation})
        >>> stats.table.loc["F283", "two_symbol_pct"]
        81.25
    """

    INDEX_COLUMN = "cipher"
    COUNT_COLUMNS = ["one_symbol", "two_symbol", "one_two_symbol"]

    def __init__(self, segmentations):
        """Initialize CipherStatistics

        Args:
            segmentations (dict): cipher name -> gold Segmentation.
        """
        rows = []
        for name, segmentation in segmentations.items():
            row = segmentation_statistics(segmentation)
            row[self.INDEX_COLUMN] = name
            rows.append(row)
        table = pd.DataFrame(
            rows,
            columns=[
                self.INDEX_COLUMN,
                "length",
                "types",
                "tokens",
                "one_symbol",
                "two_symbol",
            ],
        )
        table["one_two_symbol"] = table["one_symbol"] + table["two_symbol"]
        tokens = table["tokens"].where(table["tokens"] > 0)
        for column in self.COUNT_COLUMNS:
            table[f"{column}_pct"] = (100.0 * table[column] / tokens).fillna(
                0.0
            )
        self.table = table.set_index(self.INDEX_COLUMN)
        logger.debug(f"Computed statistics of {len(self.table)} ciphers.")

    def num_ciphers(self):
        """Total number of ciphers

        Returns:
            integer: Total number of ciphers
        """
        return len(self.table)

    def summary(self):
        """ Column means over all ciphers."""
        return self.table.mean()

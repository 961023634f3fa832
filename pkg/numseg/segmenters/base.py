import collections
import logging
from abc import ABC, abstractmethod

from numseg.ciphers.core import Segmentation, check_segmentation
from numseg.io.formats import dump_model, load_model

from .exceptions import UnknownAlgorithm

logger = logging.getLogger(__name__)

_registry = {}

SegmenterReport = collections.namedtuple(
    "SegmenterReport", "vocabulary segmentations diagnostics"
)

# Experiment model names mapped to (algorithm, fixed parameters)
MODELS = {
    "1-dig": ("baseline", {"k": 1}),
    "2-dig": ("baseline", {"k": 2}),
    "bpe": ("bpe", {"max_piece_len": None}),
    "bpe2": ("bpe", {"max_piece_len": 2}),
    "unigram": ("unigram", {"max_piece_len": None}),
    "unigram2": ("unigram", {"max_piece_len": 2}),
}


def _find_segmenter(algo):
    """Look up the segmenter class registered under algo.

    Args:
        algo (str): algorithm name, e.g. "bpe".

    Returns:
        The Segmenter subclass registered with this algorithm name.

    Raises:
        UnknownAlgorithm: if nothing is registered under algo.
    """
    if algo not in _registry:
        raise UnknownAlgorithm(
            f"Segmenter not found for algorithm '{algo}'. "
            f"Known algorithms: {sorted(_registry)}"
        )

    return _registry[algo]


def create_segmenter(algo, **kwargs):
    """ Instantiate the segmenter registered under algo with kwargs."""
    segmenter_class = _find_segmenter(algo)

    return segmenter_class(**kwargs)


def create_model(name, vocab_size=None, **kwargs):
    """Instantiate an experiment model by its table name.

    Args:
        name (str): one of MODELS, e.g. "unigram2".
        vocab_size (int): vocabulary size of trainable models.
        **kwargs: further segmenter parameters.

    Returns:
        Segmenter: an untrained segmenter.
    """
    if name not in MODELS:
        raise UnknownAlgorithm(
            f"Unknown model '{name}'. Known models: {list(MODELS)}"
        )
    algo, params = MODELS[name]
    params = dict(params, **kwargs)
    if algo != "baseline":
        params["vocab_size"] = vocab_size

    return create_segmenter(algo, **params)


def load_segmenter(data):
    """Restore a trained segmenter from model file content.

    Args:
        data (bytes or str): versioned model JSON.

    Returns:
        Segmenter: the trained segmenter.
    """
    document = load_model(data)
    segmenter_class = _find_segmenter(document["algorithm"])

    return segmenter_class.from_document(document)


class Segmenter(ABC):
    """This is the base class for all key-free segmenters
    The Segmenter can be subclassed in the following way

    class NewSegmenter(Segmenter, algo="name")

    Here 'name' is the algorithm tag written into model files and accepted
    by `numseg train --algo`.
    """

    algo = None

    @classmethod
    def __init_subclass__(cls, algo=None, **kwargs):
        if algo:
            _registry[algo] = cls
            cls.algo = algo
        else:
            raise NotImplementedError(
                "Subclass needs to have class keyword argument named algo."
            )
        super().__init_subclass__(**kwargs)

    @abstractmethod
    def train(self, corpus):
        """ Learn a vocabulary from a ciphertext and return self.

        Args:
            corpus (CipherText): training ciphertext.
        """
        raise NotImplementedError("Subclass needs to implement this method")

    @abstractmethod
    def segment_span(self, span):
        """ Segment one boundary-delimited span into a list of pieces."""
        raise NotImplementedError("Subclass needs to implement this method")

    @abstractmethod
    def params(self):
        """ Parameters written into model files."""
        raise NotImplementedError("Subclass needs to implement this method")

    @property
    def vocabulary(self):
        """ Learned piece set, empty for segmenters without a vocabulary."""
        return frozenset()

    @property
    def diagnostics(self):
        return {}

    def payload(self):
        """ Learned tables written into model files."""
        return {}

    @classmethod
    def from_document(cls, document):
        return cls(**document["params"])

    def dumps(self):
        """ Render the trained segmenter as versioned model JSON."""
        return dump_model(self.algo, self.params(), self.payload())

    def segment(self, cipher):
        """Segment a ciphertext span by span.

        Word spaces and line breaks are hard boundaries; the result keeps
        one line map entry per cipher line.

        Args:
            cipher (CipherText): the ciphertext.

        Returns:
            Segmentation: segments joining to cipher.flat.
        """
        lines = []
        for line in cipher.lines:
            pieces = []
            for span in line.split():
                pieces.extend(self.segment_span(span))
            lines.append(pieces)
        segmentation = Segmentation.from_lines(lines)
        check_segmentation(segmentation, cipher)

        return segmentation

    def run(self, cipher):
        """Train on a cipher and segment it.

        Args:
            cipher (CipherText): the ciphertext.

        Returns:
            SegmenterReport: learned vocabulary, the segmentation and the
            training diagnostics.
        """
        self.train(cipher)
        segmentation = self.segment(cipher)
        logger.debug(
            f"{self.algo} segmented {len(cipher)} symbols into "
            f"{len(segmentation)} segments."
        )

        return SegmenterReport(
            vocabulary=self.vocabulary,
            segmentations=[segmentation],
            diagnostics=self.diagnostics,
        )

DEFAULT_ALPHABET = "0123456789"
ALPHABET_HEADER = "#alphabet"
COMMENT_PREFIX = "#"
PLAINTEXT_ALPHABET = "abcdefghijklmnopqrstuvwxyz"
VOWELS = "aeiou"

# Key file targets
NOMENCLATURE_TARGET = "@NOM"
NULL_TARGET = "@NULL"
NOMENCLATURE_PLACEHOLDER = "⟨NOM:{}⟩"
NOMENCLATURE_PATTERN = "⟨NOM:[^⟩]*⟩"
# Single character standing in for any nomenclature placeholder in TER
NOMENCLATURE_CLASS_CHAR = "#"

# Synthetic data construction
DEFAULT_POOL_SIZE = 100
DEFAULT_CIPHER_LENGTH = 2048
DEFAULT_LINE_WIDTH = 43
LENGTH_SERIES = (128, 256, 512, 1024, 2048, 4096, 8192, 16384)
DEFAULT_N_CIPHERS = 100
DEFAULT_VOCAB_SIZE = 36

# Segmenter defaults
UNIGRAM_SEED_MULTIPLIER = 4
UNIGRAM_PRUNE_FRACTION = 0.25
UNIGRAM_EM_ITERS = 2
# Pieces whose expected count falls below this are dropped after an EM round
UNIGRAM_MIN_EXPECTED_COUNT = 0.5
# Longest seed piece considered when max_piece_len is unlimited
UNIGRAM_MAX_SEED_PIECE_LEN = 16
MODEL_FILE_VERSION = "1"

# Character language model
DEFAULT_LM_ORDER = 5
BOS = "<s>"
EOS = "</s>"

# Default Timing text for codetiming.Timer decorator
TIMING_TEXT = "[{name}] elapsed time: {:0.4f} seconds."

# Click CLI context settings
CONTEXT_SETTINGS = {
    "help_option_names": ["-h", "--help"],
    "show_default": True,
    "ignore_unknown_options": True,
    "allow_extra_args": True,
}

EXIT_SUCCESS = 0
EXIT_VALIDATION_ERROR = 1
EXIT_RUNTIME_ERROR = 2

from .config import dump_config, get_cfg_defaults, load_config
from .exceptions import ConfigError
from .experiments import (
    EXPERIMENT_RUNNERS,
    run_experiment,
    run_homophonic_experiment,
    run_length_study,
    run_mono_experiment,
)

__all__ = [
    "ConfigError",
    "EXPERIMENT_RUNNERS",
    "dump_config",
    "get_cfg_defaults",
    "load_config",
    "run_experiment",
    "run_homophonic_experiment",
    "run_length_study",
    "run_mono_experiment",
]

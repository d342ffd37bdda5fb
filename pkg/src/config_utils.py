"""
Configuration functions shared across commands.
"""

import os
import yaml

from src.defs import (TOL_ENV_VAR, PPT_TOL, FACTORIZATION_TOL, WITNESS_TOL, SCHMIDT_TOL,
                      MAX_ENUMERATION_PARTIES, MAX_PROFILE_PARTIES)
from src.logging_utils import get_logger

# -------------------------
# Definitions
# -------------------------

BASE_CONFIG_FILE = 'config.yaml'

DEFAULTS = {
    'tolerances': {
        'ppt': PPT_TOL,
        'factorization': FACTORIZATION_TOL,
        'witness': WITNESS_TOL,
        'schmidt': SCHMIDT_TOL,
    },
    'guards': {
        'enumeration_parties': MAX_ENUMERATION_PARTIES,
        'profile_parties': MAX_PROFILE_PARTIES,
    },
    'output': {
        'indent': 2,
    },
}

# -------------------------
# Functions
# -------------------------

def setup_config(project_root, config_file):
    """
    Sets up the config by reading from a YAML in the config dir.
    :param project_root: Absolute path to the project root folder (pathlib.Path).
    :param config_file: Name without the extension of YAML config file
    :return: Config dict, config path.
    """

    if config_file is None:
        config_name = BASE_CONFIG_FILE
    else:
        config_name = config_file + '.yaml'

    config_path = project_root / "config" / config_name

    if os.path.exists(config_path):
        with open(config_path, "r") as f:
            config = yaml.safe_load(f) or {}
    else:
        get_logger().warning(f"Config file {config_name} not found, using defaults")
        config = {}

    return config, config_path

def config_value(config, dotted_key, default=None):
    """
    Look up a dotted key such as 'tolerances.ppt', falling back on the built-in defaults.
    :param config: Config dict from setup_config.
    :param dotted_key: Keys separated by dots.
    :param default: Returned when neither the config nor the defaults hold the key.
    :return: Value.
    """

    for source in (config or {}, DEFAULTS):
        node = source
        for key in dotted_key.split('.'):
            if not isinstance(node, dict) or key not in node:
                node = None
                break
            node = node[key]
        if node is not None:
            return node

    return default

def resolve_tolerance(config, cli_value=None):
    """
    PPT / factorization tolerance with precedence --tol > SEPPOLY_TOL > YAML > defaults.
    :param config: Config dict.
    :param cli_value: Value passed on the command line, or None.
    :return: float tolerance.
    """

    if cli_value is not None:
        return float(cli_value)

    env_value = os.environ.get(TOL_ENV_VAR)
    if env_value:
        try:
            return float(env_value)
        except ValueError:
            get_logger().warning(f"Ignoring non-numeric {TOL_ENV_VAR}={env_value!r}")

    return float(config_value(config, 'tolerances.ppt'))

def resolve_tolerances(config, cli_value=None):
    """
    All numerical tolerances. An explicit tolerance (--tol or SEPPOLY_TOL) sets both the PPT and the
    factorization threshold.
    :param config: Config dict.
    :param cli_value: Value passed on the command line, or None.
    :return: dict with keys ppt, factorization, witness, schmidt.
    """

    ppt = resolve_tolerance(config, cli_value)
    explicit = cli_value is not None or bool(os.environ.get(TOL_ENV_VAR))

    return {
        'ppt': ppt,
        'factorization': ppt if explicit else float(config_value(config, 'tolerances.factorization')),
        'witness': float(config_value(config, 'tolerances.witness')),
        'schmidt': float(config_value(config, 'tolerances.schmidt')),
    }

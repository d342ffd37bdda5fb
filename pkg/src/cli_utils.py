"""
Common functions for the command-line entry points.
"""

import argparse
import logging
from pathlib import Path

from src.config_utils import setup_config, config_value, resolve_tolerances
from src.logging_utils import get_logger, set_log_level, set_log_file

# -------------------------
# Definitions
# -------------------------

LOG_FILE_NAME = 'seppoly.log'
OUTPUT_FORMATS = ["json", "table"]


# -------------------------
# Functions
# -------------------------

def common_parser():
    """
    Arguments shared by every subcommand.
    :return: Parent parser (add_help=False)
    """

    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("-c", "--config_file", default=None,
                        help="Config name under config/ without extension (e.g. 'local'). Defaults to config.yaml.")
    parser.add_argument("--tol", type=float, default=None,
                        help="PPT and factorization tolerance; overrides SEPPOLY_TOL and the config.")
    parser.add_argument("--seed", type=int, default=None, help="Seed for state families with randomness.")
    parser.add_argument("--format", default="json", choices=OUTPUT_FORMATS, help="Output format.")

    return parser

def setup_run(project_root, args):
    """
    Read the config, set up logging and resolve tolerances and guards for one run.
    :param project_root: Absolute path to the project root folder (pathlib.Path).
    :param args: Parsed arguments of a parser built on common_parser().
    :return: dict of run settings.
    """

    config, config_path = setup_config(project_root, args.config_file)

    level_name = args.log_level or str(config_value(config, 'logging.level', 'INFO'))
    level = getattr(logging, level_name.upper())
    get_logger(level=level)
    set_log_level(level)

    log_dir = config_value(config, 'logging.dir')
    if log_dir:
        set_log_file(Path(project_root) / log_dir / LOG_FILE_NAME, level)

    settings = {
        'tolerances': resolve_tolerances(config, args.tol),
        'enumeration_parties': int(config_value(config, 'guards.enumeration_parties')),
        'profile_parties': int(config_value(config, 'guards.profile_parties')),
        'indent': int(config_value(config, 'output.indent')),
    }
    get_logger().debug(f"Config {config_path}: {settings}")
    return settings

# Copyright 2025 The l2uwe Authors
# SPDX-License-Identifier: Apache-2.0
"""
l2uwe command line
Batch entry point for enhancement, comparison, inspection and synthetic data
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any

from pydantic import ValidationError

from l2uwe.batch.objects import EnhanceConfig
from l2uwe.batch.tools import run_compare, run_enhance, run_inspect, run_synthesize
from l2uwe.environment import get_default_config_file, get_default_jobs, get_log_level, load_environment
from l2uwe.utils import (
    EnhancementException,
    ImageReadException,
    InvalidConfigException,
    load_config_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOTHING_PROCESSED = 2


def get_pipeline_flags() -> dict[str, list[Any]]:
    """
    Command line flags for every EnhanceConfig field.

    Returns
    -------
    dict
        Dictionary with structure {field_name: [flag, argparse keyword arguments]}.
        Defaults are None so that only flags given explicitly override the
        config file.
    """
    # {EnhanceConfig field : [flag, argparse kwargs]}
    return {
        "m_detail": ["--m-detail", {"type": int, "help": "Multiplication factor of the detail input (default 5)."}],
        "m_bright": ["--m-bright", {"type": int, "help": "Multiplication factor of the bright input (default 30)."}],
        "m_extra": [
            "--m-extra",
            {"type": int, "nargs": "+", "help": "Further multiplication factors, one extra fusion input each."},
        ],
        "tolerance": [
            "--tolerance",
            {"type": float, "help": "Per-code standard deviation discount favouring larger patches (default 0)."},
        ],
        "omega": ["--omega", {"type": float, "help": "Haze removal strength in [0, 1] (default 0.95)."}],
        "t0": ["--t0", {"type": float, "help": "Lower bound on transmission (default 0.1)."}],
        "levels": ["--levels", {"type": int, "help": "Fusion pyramid depth (default 5)."}],
        "lighting_mode": [
            "--lighting-mode",
            {"choices": ["local_cg", "global"], "help": "Lighting model (default local_cg)."},
        ],
        "atmosphere_fraction": [
            "--fraction",
            {"type": float, "help": "Share of brightest dark-channel pixels for global lighting (default 0.002)."},
        ],
        "guided_radius": ["--guided-radius", {"type": int, "help": "Guided filter radius (default 16)."}],
        "guided_eps": ["--guided-eps", {"type": float, "help": "Guided filter regularizer (default 1e-3)."}],
        "guided_subsample": [
            "--guided-subsample",
            {"type": int, "help": "Fast guided filter subsampling factor (default 4)."},
        ],
        "dump_intermediates": [
            "--dump",
            {"action": "store_const", "const": True, "help": "Write all intermediates per image."},
        ],
        "metrics": [
            "--metrics",
            {"action": "store_const", "const": True, "help": "Score each output and store it in the manifest."},
        ],
    }


def add_pipeline_arguments(parser: argparse.ArgumentParser) -> None:
    for field_name, (flag, kwargs) in get_pipeline_flags().items():
        parser.add_argument(flag, dest=field_name, default=None, **kwargs)
    parser.add_argument(
        "--config",
        default=get_default_config_file(),
        help="JSON or YAML file with pipeline settings; a previous manifest also works",
    )


def parse_arguments(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(prog="l2uwe", description="Low-light underwater image enhancement")
    parser.add_argument(
        "--log-level",
        default=get_log_level(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    enhance = verbs.add_parser("enhance", help="Enhance images and write a manifest")
    enhance.add_argument("inputs", nargs="+", help="Image files or directories")
    enhance.add_argument("-o", "--output-dir", required=True, help="Output directory")
    enhance.add_argument("--jobs", type=int, default=None, help="Worker processes (default: L2UWE_JOBS or 1)")
    add_pipeline_arguments(enhance)

    inspect = verbs.add_parser("inspect", help="Dump every intermediate for one image")
    inspect.add_argument("input", help="Image file")
    inspect.add_argument("-o", "--output-dir", required=True, help="Output directory")
    add_pipeline_arguments(inspect)

    compare = verbs.add_parser("compare", help="Score enhanced images against their originals")
    compare.add_argument("original_dir", help="Directory of original images")
    compare.add_argument("enhanced_dir", help="Directory of enhanced images")
    compare.add_argument("-o", "--output-dir", default=None, help="Report directory (default: enhanced_dir)")

    synthesize = verbs.add_parser("synthesize", help="Write a synthetic low-light suite")
    synthesize.add_argument("-o", "--output-dir", required=True, help="Output directory")
    synthesize.add_argument("--count", type=int, default=20, help="Number of image pairs")
    synthesize.add_argument("--size", type=int, nargs=2, default=[256, 256], metavar=("HEIGHT", "WIDTH"))
    synthesize.add_argument("--seed", type=int, default=0, help="Random seed")
    synthesize.add_argument("--noise", type=float, default=0.0, help="Per-pixel sensor noise std of the clean scenes")

    return parser.parse_args(argv)


def resolve_config(args: argparse.Namespace) -> EnhanceConfig:
    """
    Merge defaults, the config file and explicit flags, in that order of precedence.

    Raises
    ------
    InvalidConfigException
        If the merged values fail validation; the message names the field
    """
    values: dict[str, Any] = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))

    for field_name in get_pipeline_flags():
        value = getattr(args, field_name, None)
        if value is not None:
            values[field_name] = value

    try:
        return EnhanceConfig.model_validate(values)
    except ValidationError as e:
        error = e.errors()[0]
        field_name = ".".join(str(part) for part in error["loc"]) or "config"
        raise InvalidConfigException(field=field_name, message=error["msg"])


def resolve_jobs(args: argparse.Namespace) -> int:
    jobs = args.jobs if args.jobs is not None else get_default_jobs()
    if jobs < 1:
        raise InvalidConfigException(field="--jobs", message=f"must be at least 1, got {jobs}")
    return jobs


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed command line and return the exit status."""
    match args.verb:
        case "enhance":
            config = resolve_config(args)
            manifest = run_enhance(args.inputs, args.output_dir, config, jobs=resolve_jobs(args))
            return EXIT_OK if manifest.succeeded else EXIT_NOTHING_PROCESSED
        case "inspect":
            config = resolve_config(args)
            run_inspect(args.input, args.output_dir, config)
            return EXIT_OK
        case "compare":
            run_compare(args.original_dir, args.enhanced_dir, args.output_dir)
            return EXIT_OK
        case "synthesize":
            if args.count < 1:
                raise InvalidConfigException(field="--count", message=f"must be at least 1, got {args.count}")
            if args.noise < 0:
                raise InvalidConfigException(field="--noise", message=f"must be non-negative, got {args.noise}")
            run_synthesize(
                args.output_dir,
                args.count,
                height=args.size[0],
                width=args.size[1],
                seed=args.seed,
                noise=args.noise,
            )
            return EXIT_OK
    raise InvalidConfigException(field="verb", message=f"unknown verb {args.verb!r}")


def main(argv: list[str] | None = None) -> None:
    """Main entry point for the command line."""
    load_environment()
    args = parse_arguments(argv)
    logging.basicConfig(level=getattr(logging, args.log_level, logging.INFO))

    try:
        sys.exit(run(args))
    except (InvalidConfigException, FileNotFoundError) as e:
        logger.error(str(e))
        sys.exit(EXIT_INVALID)
    except (ImageReadException, EnhancementException) as e:
        logger.error(str(e))
        sys.exit(EXIT_NOTHING_PROCESSED)


if __name__ == "__main__":
    main()

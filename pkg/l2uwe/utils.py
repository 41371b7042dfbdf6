# Copyright 2025 The l2uwe Authors
# SPDX-License-Identifier: Apache-2.0
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import json
import logging
from pathlib import Path
from textwrap import dedent
from typing import Any

import yaml

logger = logging.getLogger(__name__)


class EnhancementException(ValueError):
    """
    Custom exception class for invalid arguments to pipeline operations.

    Raised by every stage of the enhancement pipeline when an input violates
    its preconditions: mismatched dimensions, codes out of range, a
    single-channel image where three channels are required, and so on.

    Parameters
    ----------
    stage : str
        Name of the operation that rejected its input
    message : str
        Description of the violated precondition

    Attributes
    ----------
    stage : str
        The operation that generated the error
    message : str
        Original error message

    Examples
    --------
    >>> raise EnhancementException(stage="dark_channel_cg", message="dimension mismatch")
    """

    def __init__(self, stage: str, message: str):
        self.message = message
        self.stage = stage
        super().__init__(message)

    def __str__(self):
        return f"{self.stage} Error: {self.message}"


class ImageReadException(Exception):
    """Raised when a file cannot be decoded into an image."""

    def __init__(self, path: str | Path, message: str):
        self.path = str(path)
        self.message = message
        super().__init__(message)

    def __str__(self):
        return f"Could not read image {self.path}: {self.message}"


class InvalidConfigException(Exception):
    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(field, message)

    def __str__(self):
        message = f"""
        -----------------------------------------------------------------------------------
        Invalid configuration value:
        \t{self.field}: {self.message}
        Values may be set on the command line, in a --config file or via environment variables
        -----------------------------------------------------------------------------------"""

        return dedent(message)


def require_same_shape(stage: str, *arrays) -> None:
    """
    Check that all arrays share height and width.

    Parameters
    ----------
    stage : str
        Operation name used in the raised exception
    *arrays : numpy.ndarray
        Arrays whose first two axes are compared

    Raises
    ------
    EnhancementException
        If any two arrays differ in height or width
    """
    shapes = [tuple(a.shape[:2]) for a in arrays]
    if len(set(shapes)) > 1:
        raise EnhancementException(stage=stage, message=f"dimension mismatch: {shapes}")


def resolve_path(path: str | Path) -> Path:
    """Resolve path to absolute, expanding ~ and relative paths."""
    path_obj = Path(path).expanduser().resolve()

    if not path_obj.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    return path_obj


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Load a run configuration from a JSON or YAML file.

    A manifest written by ``l2uwe enhance`` is also accepted; its ``config``
    snapshot is returned.

    Parameters
    ----------
    path : str | Path
        Path to a ``.json``, ``.yaml`` or ``.yml`` file

    Returns
    -------
    dict
        Raw configuration values, not yet validated

    Raises
    ------
    FileNotFoundError
        If the configuration file cannot be found
    InvalidConfigException
        If the file is malformed or is not a mapping
    """
    config_file = resolve_path(path)
    content = config_file.read_text()

    try:
        if config_file.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(content) or {}
        else:
            data = json.loads(content)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise InvalidConfigException(field="--config", message=f"{config_file}: {e}")

    if not isinstance(data, dict):
        raise InvalidConfigException(field="--config", message=f"{config_file} does not contain a mapping")

    # Manifests carry the resolved config under "config"
    if "records" in data and isinstance(data.get("config"), dict):
        data = data["config"]

    logger.info(f"Loaded configuration from {config_file}")
    return data

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
import logging
import os

from dotenv import load_dotenv

from l2uwe.utils import InvalidConfigException

logger = logging.getLogger(__name__)


def load_environment() -> bool:
    """
    Load variables from a ``.env`` file in the working directory.

    Existing environment variables take precedence over the file.

    Returns
    -------
    bool
        True if a ``.env`` file was found and loaded
    """
    loaded = load_dotenv(override=False)
    if loaded:
        logger.debug("Loaded environment from .env")
    return loaded


def get_default_jobs() -> int:
    """
    Default worker count for batch processing, from ``L2UWE_JOBS``.

    Returns
    -------
    int
        At least 1; 1 when the variable is unset

    Raises
    ------
    InvalidConfigException
        If ``L2UWE_JOBS`` is not a positive integer
    """
    raw = os.getenv("L2UWE_JOBS")
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise InvalidConfigException(field="L2UWE_JOBS", message=f"expected a positive integer, got {raw!r}")
    if jobs < 1:
        raise InvalidConfigException(field="L2UWE_JOBS", message=f"expected a positive integer, got {raw!r}")
    return jobs


def get_default_config_file() -> str | None:
    return os.getenv("L2UWE_CONFIG_FILE") or None


def get_log_level() -> str:
    return os.getenv("L2UWE_LOG_LEVEL", "INFO").upper()

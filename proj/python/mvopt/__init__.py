"""Materialized view selection via a seeded genetic algorithm."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

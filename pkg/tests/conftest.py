"""Pytest configuration.

Fixtures load the versioned generator file once per session and provide
small sub-tables for the breadth-first search tests.
"""

import pytest

from app.models.word import GroupWord
from app.services.genset import GeneratorTable, load_generators
from app.services.metric import MetricService


@pytest.fixture(scope="session")
def table() -> GeneratorTable:
    """The full generating set from ``app/data/generators.txt``.

    Returns:
        The loaded generator table.
    """
    return load_generators()


@pytest.fixture(scope="session")
def small_table(table: GeneratorTable) -> GeneratorTable:
    """The sub-table on ``x_0`` and ``x_1``, the generators of Thompson's group F."""
    return table.subset(["x_0", "x_1"])


@pytest.fixture(scope="session")
def small_metric(small_table: GeneratorTable) -> MetricService:
    return MetricService(small_table)


@pytest.fixture
def word():
    """Parse a word; shorthand for ``GroupWord.parse``."""
    return GroupWord.parse

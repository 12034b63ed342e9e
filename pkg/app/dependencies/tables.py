"""Shared generator table and metric service for the HTTP routes."""

from functools import lru_cache

from fastapi import Depends

from app.services.genset import GeneratorTable, load_generators
from app.services.metric import MetricService


@lru_cache
def get_generator_table() -> GeneratorTable:
    """Load the configured generator file once per process.

    Returns:
        The generator table named by ``settings.GENERATORS``.
    """
    return load_generators()


_metric_services: dict[str, MetricService] = {}


def get_metric_service(table: GeneratorTable = Depends(get_generator_table)) -> MetricService:
    """Return the metric service of ``table``, keeping its ball between requests."""
    service = _metric_services.get(table.source_hash)
    if service is None:
        service = _metric_services[table.source_hash] = MetricService(table)
    return service

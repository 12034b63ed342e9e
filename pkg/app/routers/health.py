"""Health check router for the API."""

from fastapi import APIRouter, Depends

from app.dependencies.tables import get_generator_table
from app.services.genset import GeneratorTable

router = APIRouter()


@router.get("/health")
def health_check() -> dict:
    """Health check endpoint.

    Returns:
        A dictionary with status information.
    """
    return {"status": "ok", "service": "nv-thompson"}


@router.get("/health/generators")
def generators_health_check(table: GeneratorTable = Depends(get_generator_table)) -> dict:
    """Check that the generator file loads.

    Args:
        table: Generator table dependency.

    Returns:
        Generator count, completeness and file hash prefix.
    """
    return {
        "status": "ok" if table.complete else "incomplete",
        "generators": len(table.defs),
        "sha256": table.source_hash[:12],
    }

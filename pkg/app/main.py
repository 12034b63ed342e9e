"""Main application module for the nV Thompson group API."""

import logging

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from app.core.config import settings
from app.core.errors import BudgetError, NVError
from app.core.logging import setup_logging
from app.routers import elements, generators, health

# Initialize logging first
setup_logging()
logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.PROJECT_NAME,
    description="Exact arithmetic, word metric and path certificates for the Thompson group 2V",
    version="0.1.0",
    openapi_url=f"{settings.API_V1_STR}/openapi.json",
    docs_url="/docs",
    redoc_url="/redoc",
)


@app.exception_handler(NVError)
async def nv_error_handler(request: Request, exc: NVError) -> JSONResponse:
    """Answer domain errors with 422 and exhausted budgets with 413."""
    code = (
        status.HTTP_413_REQUEST_ENTITY_TOO_LARGE
        if isinstance(exc, BudgetError)
        else status.HTTP_422_UNPROCESSABLE_ENTITY
    )
    logger.warning("request failed", extra={"path": request.url.path, "code": exc.code})
    return JSONResponse(status_code=code, content={"detail": str(exc), "code": exc.code})


# Include routers
app.include_router(health.router, tags=["health"])
app.include_router(elements.router, prefix=f"{settings.API_V1_STR}/elements", tags=["elements"])
app.include_router(generators.router, prefix=f"{settings.API_V1_STR}/generators", tags=["generators"])


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=8000,
        reload=settings.DEBUG,
        log_level="info",
    )

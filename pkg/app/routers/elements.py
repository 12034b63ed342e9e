"""
Element router.

Endpoints:
    POST /elements/nf : Reduced grid diagram of an element.
    POST /elements/mul : Product of two elements, left applied first.
    POST /elements/inv : Inverse of an element.
    POST /elements/eval : Image of a prefix point.
    POST /elements/len : Certified word length.

Domain errors are answered with 422 and budget errors with 413 by the
application's error handler.
"""

from fastapi import APIRouter, Depends

from app.dependencies.tables import get_generator_table, get_metric_service
from app.models.element import Element, PrefixPoint, compose, evaluate, inverse
from app.schemas.api import ElementInput, ElementResponse, EvaluateRequest, LengthRequest, PointResponse, ProductRequest
from app.schemas.certificates import LengthCertificate
from app.services.elements import describe, read_element
from app.services.genset import GeneratorTable
from app.services.metric import MetricService

router = APIRouter()


def _read(table: GeneratorTable, item: ElementInput) -> Element:
    return read_element(table, item.element, item.word)


@router.post("/nf", response_model=ElementResponse)
def normal_form(item: ElementInput, table: GeneratorTable = Depends(get_generator_table)) -> ElementResponse:
    """Return the canonical form of an element.

    Args:
        item: The element.
        table: Generator table dependency.

    Returns:
        Normal form, canonical key and fineness.
    """
    return describe(_read(table, item))


@router.post("/mul", response_model=ElementResponse)
def multiply(request: ProductRequest, table: GeneratorTable = Depends(get_generator_table)) -> ElementResponse:
    return describe(compose(_read(table, request.left), _read(table, request.right)))


@router.post("/inv", response_model=ElementResponse)
def invert(item: ElementInput, table: GeneratorTable = Depends(get_generator_table)) -> ElementResponse:
    return describe(inverse(_read(table, item)))


@router.post("/eval", response_model=PointResponse)
def evaluate_point(request: EvaluateRequest, table: GeneratorTable = Depends(get_generator_table)) -> PointResponse:
    """Evaluate an element on the cylinder of a prefix point.

    Args:
        request: Element and prefixes.
        table: Generator table dependency.

    Returns:
        The image prefixes.
    """
    image = evaluate(_read(table, request.input), PrefixPoint(request.u1, request.u2))
    return PointResponse(u1=image.u1, u2=image.u2)


@router.post("/len", response_model=LengthCertificate)
def word_length(
    request: LengthRequest,
    table: GeneratorTable = Depends(get_generator_table),
    metric: MetricService = Depends(get_metric_service),
) -> LengthCertificate:
    """Certify the word length of an element.

    Args:
        request: Element and search radius.
        table: Generator table dependency.
        metric: Metric service dependency.

    Returns:
        Exact length inside the search ball, bounds outside it.
    """
    return metric.exact_length(_read(table, request.input), request.max_radius)

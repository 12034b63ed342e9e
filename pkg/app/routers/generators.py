"""Generator router: the loaded generating set and its validation."""

from fastapi import APIRouter, Depends

from app.core.errors import UnknownSymbol
from app.dependencies.tables import get_generator_table
from app.models.word import canonical_symbol
from app.schemas.api import GeneratorDetail, GeneratorList, GeneratorSummary
from app.schemas.certificates import ValidationReport
from app.services.genset import GeneratorTable
from app.services.validation import validate_table

router = APIRouter()


@router.get("", response_model=GeneratorList)
def list_generators(table: GeneratorTable = Depends(get_generator_table)) -> GeneratorList:
    """List the loaded generators.

    Args:
        table: Generator table dependency.

    Returns:
        File hash, completeness and one summary per generator.
    """
    return GeneratorList(
        source_hash=table.source_hash,
        complete=table.complete,
        missing=table.missing,
        generators=[
            GeneratorSummary(symbol=d.symbol, provenance=d.provenance, pairs=len(d.element))
            for d in table.defs.values()
        ],
    )


@router.get("/validate", response_model=ValidationReport)
def validate_generators(table: GeneratorTable = Depends(get_generator_table)) -> ValidationReport:
    return validate_table(table)


@router.get("/{symbol}", response_model=GeneratorDetail)
def read_generator(symbol: str, table: GeneratorTable = Depends(get_generator_table)) -> GeneratorDetail:
    """Show one loaded generator.

    Raises:
        UnknownSymbol: If the symbol is not in the file.
    """
    generator = table.defs.get(canonical_symbol(symbol))
    if generator is None:
        raise UnknownSymbol(f"{symbol} is not a loaded generator")
    return GeneratorDetail(
        symbol=generator.symbol,
        provenance=generator.provenance,
        pairs=len(generator.element),
        element=str(generator.element),
    )

"""Tests for the generator table checks."""

from app.models.element import parse_element
from app.models.gridform import equals
from app.services.genset import GeneratorDef, GeneratorTable
from app.services.validation import (
    distinct_checks,
    generator_checks,
    identity_checks,
    mirror_checks,
    validate_table,
)


def test_bundled_table_passes(table: GeneratorTable) -> None:
    report = validate_table(table)
    assert report.complete
    assert report.source_hash == table.source_hash
    assert report.ok, report.failures


def test_every_generator_is_checked(table: GeneratorTable) -> None:
    names = {c.name for c in generator_checks(table)}
    assert "nontrivial pib_0" in names
    assert "inverse law hxh_2" in names
    assert len(names) == 2 * len(table.symbols)


def test_mirror_checks_cover_loaded_pairs(table: GeneratorTable) -> None:
    names = [c.name for c in mirror_checks(table)]
    assert "mirror C_0 <-> C_0" in names
    assert "mirror x_0 <-> y_0" in names
    assert all(c.ok for c in mirror_checks(table))


def test_identity_checks(table: GeneratorTable) -> None:
    results = {c.name: c for c in identity_checks(table, exponent=2, max_index=4)}
    assert results["Bh_0 = C_1 x_0^-1"].ok
    assert results["omega4(A) omega4(B) = omega4(D) at 2"].ok
    assert results["C prefix rewriting up to index 4"].ok


def test_broken_mirror_is_reported(table: GeneratorTable) -> None:
    """A y_0 that is not the transpose of x_0 fails its mirror check."""
    defs = dict(table.defs)
    defs["y_0"] = GeneratorDef("y_0", parse_element("n=2 m=3\n-,0 -> -,00\n-,10 -> -,01\n-,11 -> -,1"))
    report = validate_table(GeneratorTable(defs, table.source_hash))
    assert not report.ok
    assert [c.name for c in report.failures] == ["mirror x_0 <-> y_0"]
    assert report.failures[0].detail


def test_generators_are_distinct(table: GeneratorTable) -> None:
    [check] = distinct_checks(table)
    assert check.ok, check.detail
    assert not equals(table.resolve("alpha_0"), table.resolve("alpha_1"))
    assert not equals(table.resolve("beta_0"), table.resolve("beta_1"))


def test_duplicate_generator_is_reported(table: GeneratorTable) -> None:
    """alpha_0 restricted to a finer pattern is still alpha_0."""
    defs = dict(table.defs)
    defs["alpha_1"] = GeneratorDef(
        "alpha_1", parse_element("n=2 m=4\n0,00 -> 00,0\n0,01 -> 00,1\n0,1 -> 01,-\n1,- -> 1,-")
    )
    [check] = distinct_checks(GeneratorTable(defs, table.source_hash))
    assert not check.ok
    assert "alpha_0 = alpha_1" in check.detail

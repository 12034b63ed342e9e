"""Consistency checks of a loaded generator table."""

import itertools
import logging
from collections.abc import Callable

from app.core.errors import NVError
from app.models.element import compose, identity, inverse, is_identity, reduce_pair, transpose
from app.models.gridform import canonical_key, equals
from app.models.word import GroupWord, mirror_pairs
from app.schemas.certificates import CheckResult, ValidationReport
from app.services.divergence import c_prefix_rewrite, omega4_word, target_word
from app.services.genset import GeneratorTable

logger = logging.getLogger(__name__)

# Identities read off the definitions in prose.
TEXT_IDENTITIES: dict[str, tuple[str, str]] = {
    "Bh_0 = C_1 x_0^-1": ("Bh_0", "C_1 x_0^-1"),
}


def _run_check(name: str, check: Callable[[], bool], detail: str = "") -> CheckResult:
    try:
        ok = check()
    except NVError as exc:
        return CheckResult(name=name, ok=False, detail=f"{exc.code}: {exc}")
    return CheckResult(name=name, ok=ok, detail="" if ok else detail)


def _words_equal(table: GeneratorTable, left: GroupWord, right: GroupWord) -> bool:
    return equals(table.word_to_element(left), table.word_to_element(right))


def generator_checks(table: GeneratorTable) -> list[CheckResult]:
    """Non-triviality and the inverse law for every loaded generator."""
    results = []
    for symbol in table.symbols:
        g = table.resolve(symbol)
        results.append(
            _run_check(
                f"nontrivial {symbol}",
                lambda g=g: not is_identity(reduce_pair(g)),
                "generator is the identity",
            )
        )
        results.append(
            _run_check(
                f"inverse law {symbol}",
                lambda g=g: equals(compose(g, inverse(g)), identity()),
                "g * g^-1 is not the identity",
            )
        )
    return results


def distinct_checks(table: GeneratorTable) -> list[CheckResult]:
    """No two loaded generators define the same element."""
    by_key: dict[str, list[str]] = {}
    for symbol in table.symbols:
        by_key.setdefault(canonical_key(table.resolve(symbol)), []).append(symbol)
    clashes = [" = ".join(group) for group in by_key.values() if len(group) > 1]
    return [
        CheckResult(
            name="distinct generators",
            ok=not clashes,
            detail=f"equal generators: {', '.join(clashes)}" if clashes else "",
        )
    ]


def mirror_checks(table: GeneratorTable) -> list[CheckResult]:
    """Coordinate swap maps each generator onto its mirror partner."""
    results = []
    loaded = set(table.symbols)
    for a, b, sign in mirror_pairs():
        if a not in loaded or b not in loaded:
            continue
        expected = table.resolve(b) if sign > 0 else inverse(table.resolve(b))
        results.append(
            _run_check(
                f"mirror {a} <-> {b}",
                lambda a=a, expected=expected: equals(transpose(table.resolve(a)), expected),
                "transposed generator differs from its partner",
            )
        )
    return results


def identity_checks(table: GeneratorTable, exponent: int = 3, max_index: int = 6) -> list[CheckResult]:
    """Text identities, the far-conjugate products and the ``C`` prefix rewriting.

    Args:
        table: A complete generator table.
        exponent: Exponent used in place of ``Q n`` for the conjugates.
        max_index: Largest ``C`` index in the exhaustive rewriting check.
    """
    results = [
        _run_check(name, lambda lhs=lhs, rhs=rhs: _words_equal(table, GroupWord.parse(lhs), GroupWord.parse(rhs)))
        for name, (lhs, rhs) in TEXT_IDENTITIES.items()
    ]
    results.append(
        _run_check(
            f"omega4(A) omega4(B) = omega4(D) at {exponent}",
            lambda: _words_equal(
                table, omega4_word("A", exponent) + omega4_word("B", exponent), omega4_word("D", exponent)
            ),
        )
    )
    results.append(
        _run_check(
            f"target nontrivial at {exponent}",
            lambda: not is_identity(reduce_pair(table.word_to_element(target_word(exponent)))),
        )
    )
    failures = []
    for p in range(1, 4):
        for indices in itertools.combinations(range(1, max_index + 1), p):
            c_word = GroupWord.parse(" ".join(f"C_{m}" for m in indices))
            if not _words_equal(table, c_word, c_prefix_rewrite(list(indices))):
                failures.append(indices)
    results.append(
        CheckResult(
            name=f"C prefix rewriting up to index {max_index}",
            ok=not failures,
            detail=f"fails for {failures[:5]}" if failures else "",
        )
    )
    return results


def validate_table(table: GeneratorTable, exponent: int = 3) -> ValidationReport:
    """Run every check; identity checks need a complete table."""
    checks = generator_checks(table) + distinct_checks(table) + mirror_checks(table)
    if table.complete:
        checks += identity_checks(table, exponent)
    report = ValidationReport(source_hash=table.source_hash, complete=table.complete, checks=checks)
    logger.info(
        "generator table validated",
        extra={"checks": len(checks), "failures": len(report.failures), "complete": table.complete},
    )
    return report

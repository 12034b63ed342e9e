"""Basic test to verify the package and its entry points are importable."""

from app.cli import COMMANDS, build_parser
from app.core.config import settings


def test_entry_points() -> None:
    """The CLI knows every subcommand and the settings find the generator file."""
    parser = build_parser()
    assert parser.prog == "nv"
    assert set(COMMANDS) == {"nf", "mul", "inv", "eval", "len", "ball", "gen", "divpath", "divmeasure"}
    assert settings.GENERATORS.is_file()

from pathlib import Path

from gradarg import AttackGraph, parse_framework

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.apx"


def load_fixture(name: str) -> AttackGraph:
    return parse_framework(fixture_path(name).read_text())

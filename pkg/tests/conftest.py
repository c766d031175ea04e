from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTED_SPECS = ["ourapi", "matrix", "itemize", "assertions"]
REJECTED_SPECS = ["singleton", "strmap"]
ALL_SPECS = ACCEPTED_SPECS + REJECTED_SPECS + ["ourapi_eval"]


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.spec"


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def compiled():
    """Memoized pipeline runs keyed by fixture name."""
    from protogen import compile_spec

    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = compile_spec(fixture_text(name))
        return cache[name]

    return get

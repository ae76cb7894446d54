from __future__ import annotations

import logging
from pathlib import Path

import pytest

from ellfib.algebra import FiniteField
from ellfib.weierstrass import WeierstrassModel, parse_wsurf

FIXTURES = Path(__file__).parent / "fixtures"
GF2 = FiniteField(2, 1)


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def load_model(name: str) -> WeierstrassModel:
    return parse_wsurf(fixture_text(name))


def model(**coeffs) -> WeierstrassModel:
    return WeierstrassModel.from_strings(GF2, **coeffs)


def corpus() -> list[tuple[str, WeierstrassModel]]:
    """The shipped corpus: ``[label]`` headers, each followed by a ``.wsurf`` block."""
    out, label, block = [], None, []
    for line in fixture_text("corpus.txt").splitlines() + ["[end]"]:
        if line.startswith("["):
            if label is not None:
                out.append((label, parse_wsurf("\n".join(block))))
            label, block = line.strip("[]"), []
        elif label is not None:
            block.append(line)
    return out


@pytest.fixture(autouse=True)
def _quiet_logs():
    logging.getLogger("ellfib").setLevel(logging.ERROR)
    yield

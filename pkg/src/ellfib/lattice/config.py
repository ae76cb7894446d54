"""Singular-fiber configurations and their trivial lattices."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..dualgraph import component_count, parse_kodaira
from ..errors import ParseError
from .roots import RootSum

_TOKEN = re.compile(r"(II\*|III\*|IV\*|IV|III|II|I\d+\*?|\d+\*?)(?:\^(\d+))?")


def normalize_kodaira(token: str) -> str:
    """``"3"`` and ``"I3"`` both mean I3; ``"2*"`` means I2*."""
    if token[0].isdigit():
        token = "I" + token
    parse_kodaira(token)
    return token


def root_symbol(kodaira: str) -> str | None:
    """ADE type of the components disjoint from the zero component, or ``None``."""
    fam, n = parse_kodaira(kodaira)
    if fam == "I":
        return f"A{n - 1}" if n >= 2 else None
    if fam == "I*":
        return f"D{n + 4}"
    return {"II": None, "III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}[fam]


@dataclass(frozen=True)
class KodairaConfiguration:
    """Multiset of singular fiber types, optionally tagged with places."""

    fibers: tuple[str, ...]
    places: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(normalize_kodaira(f) for f in self.fibers))
        if self.places and len(self.places) != len(self.fibers):
            raise ParseError("one place per fiber expected")

    @classmethod
    def parse(cls, text: str) -> "KodairaConfiguration":
        """Read shorthand such as ``"III+I3+I2^2+I1"`` or ``"III+3+2^2+1"``.

        Fiber tokens must be separated by ``+`` or whitespace; a digit run
        like ``21`` is read as I21, never as I2 + I1.
        """
        fibers = []
        for chunk in re.split(r"[+\s]+", text.strip()):
            if not chunk:
                continue
            m = _TOKEN.fullmatch(chunk)
            if not m:
                raise ParseError(f"bad fiber token {chunk!r}")
            fibers.extend([normalize_kodaira(m.group(1))] * int(m.group(2) or 1))
        if not fibers:
            raise ParseError("empty configuration")
        return cls(tuple(fibers))

    def place_of(self, i: int) -> str:
        return self.places[i] if self.places else str(i)

    def __str__(self) -> str:
        return "+".join(self.fibers)


@dataclass(frozen=True)
class TrivialLattice:
    roots: RootSum
    rank: int


def trivial_lattice(config: KodairaConfiguration) -> TrivialLattice:
    """Root part ``T`` and the rank ``2 + Σ(m_v - 1)`` of the trivial lattice."""
    parts = [r for r in (root_symbol(f) for f in config.fibers) if r]
    roots = RootSum(tuple(parts))
    return TrivialLattice(roots, 2 + sum(component_count(f) - 1 for f in config.fibers))

"""ADE root lattices and formal sums of them."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..dualgraph import ade_graph
from ..errors import ParseError
from .gram import GramLattice

_ROOT = re.compile(r"([ADE])(\d+)")


def root_key(label: str) -> tuple[int, int]:
    m = _ROOT.fullmatch(label)
    if not m:
        raise ParseError(f"not a root lattice symbol: {label!r}")
    return "ADE".index(m.group(1)), int(m.group(2))


def cartan(label: str) -> GramLattice:
    """Positive definite Cartan matrix (the negative of the (-2)-curve graph)."""
    G = ade_graph(label)
    return GramLattice(tuple(tuple(-x for x in row) for row in G.matrix()))


def discriminant(label: str) -> int:
    fam, n = root_key(label)
    return [n + 1, 4, 9 - n][fam]


@dataclass(frozen=True)
class RootSum:
    """Sorted multiset of ADE symbols; the empty sum is the zero lattice."""

    parts: tuple[str, ...] = ()

    def __post_init__(self):
        for p in self.parts:
            root_key(p)
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=root_key)))

    @classmethod
    def parse(cls, text: str) -> "RootSum":
        """Read ``"A1+A1+A2"``, ``"A1^3+A2"`` or ``"0"``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        parts = []
        for tok in text.split("+"):
            m = re.fullmatch(r"([ADE]\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ParseError(f"bad root lattice token {tok!r}")
            parts.extend([m.group(1)] * int(m.group(2) or 1))
        return cls(tuple(parts))

    @property
    def rank(self) -> int:
        return sum(root_key(p)[1] for p in self.parts)

    def discriminant(self) -> int:
        out = 1
        for p in self.parts:
            out *= discriminant(p)
        return out

    def lattice(self) -> GramLattice:
        L = GramLattice.zero()
        for p in self.parts:
            L = L.direct_sum(cartan(p))
        return L

    def __str__(self) -> str:
        return "+".join(self.parts) if self.parts else "0"

    def pretty(self) -> str:
        """Grouped form such as ``A1^3+A2``."""
        if not self.parts:
            return "0"
        out, i = [], 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            out.append(self.parts[i] + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return "+".join(out)


"""Height pairing on the Mordell-Weil group of an elliptic surface.

``⟨P,Q⟩ = χ + (P·O) + (Q·O) - (P·Q) - Σ contr_v(P,Q)`` and
``⟨P,P⟩ = 2χ + 2(P·O) - Σ contr_v(P)``.

Components are numbered as in :func:`ellfib.dualgraph.kodaira_template`:
component 0 meets the zero section, I_n components run around the cycle, and
for I_b* the simple components are 0 and 1 at the near end and b+3, b+4 at the
far end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..dualgraph import kodaira_template, parse_kodaira
from ..errors import InconsistencyError, RejectionError
from .config import KodairaConfiguration


def _check_component(kodaira: str, i: int) -> None:
    tpl = kodaira_template(kodaira)
    if not 0 <= i < tpl.m or tpl.mult[i] != 1:
        raise RejectionError(f"component {i} is not a simple component of {kodaira}")


def contribution(kodaira: str, i: int, j: int | None = None) -> Fraction:
    """Local correction ``contr_v(P)`` (``j is None``) or ``contr_v(P, Q)``."""
    _check_component(kodaira, i)
    if j is None:
        j = i
    _check_component(kodaira, j)
    if i == 0 or j == 0:
        return Fraction(0)
    fam, n = parse_kodaira(kodaira)
    if fam == "I":
        i, j = min(i, j), max(i, j)
        return Fraction(i * (n - j), n)
    if fam == "III":
        return Fraction(1, 2)
    if fam == "IV":
        return Fraction(2, 3) if i == j else Fraction(1, 3)
    if fam == "I*":
        if i == j:
            return Fraction(1) if i == 1 else 1 + Fraction(n, 4)
        if 1 in (i, j):
            return Fraction(1, 2)
        return Fraction(1, 2) + Fraction(n, 4)
    if fam == "IV*":
        return Fraction(4, 3) if i == j else Fraction(2, 3)
    if fam == "III*":
        return Fraction(3, 2)
    raise RejectionError(f"{kodaira} has no simple component besides 0")  # pragma: no cover


@dataclass(frozen=True)
class Section:
    """A section through given fiber components; fibers not listed are met in component 0."""

    name: str
    components: dict = field(default_factory=dict)
    dot_o: int = 0

    def component(self, place) -> int:
        return self.components.get(place, 0)


@dataclass(frozen=True)
class SectionIncidence:
    """Configuration with places plus the sections and their mutual intersections."""

    config: KodairaConfiguration
    sections: dict
    dots: dict = field(default_factory=dict)  # frozenset({P, Q}) -> (P·Q)
    chi: int = 1

    def fiber(self, place) -> str:
        places = self.config.places or tuple(str(i) for i in range(len(self.config.fibers)))
        return self.config.fibers[places.index(place)]

    def places(self):
        return self.config.places or tuple(str(i) for i in range(len(self.config.fibers)))

    def dot(self, p: str, q: str) -> int:
        try:
            return self.dots[frozenset({p, q})]
        except KeyError:
            raise RejectionError(f"intersection number ({p}·{q}) not given") from None

    def validate(self) -> None:
        for s in self.sections.values():
            if s.dot_o < 0:
                raise RejectionError(f"({s.name}·O) must be nonnegative")
            for place, comp in s.components.items():
                if place not in self.places():
                    raise RejectionError(f"unknown place {place!r}")
                _check_component(self.fiber(place), comp)
        for key, v in self.dots.items():
            if v < 0 and len(key) == 2:
                raise RejectionError("intersection numbers of distinct sections are nonnegative")


def contribution_sum(inc: SectionIncidence, P: Section, Q: Section | None = None) -> Fraction:
    total = Fraction(0)
    for place in inc.places():
        kod = inc.fiber(place)
        total += contribution(kod, P.component(place), None if Q is None else Q.component(place))
    return total


def height_pairing(inc: SectionIncidence, p: str, q: str | None = None) -> Fraction:
    """Exact ``⟨P,Q⟩``; ``q=None`` (or ``q == p``) gives the height of ``P``."""
    inc.validate()
    P = inc.sections[p]
    if q is None or q == p:
        return 2 * inc.chi + 2 * P.dot_o - contribution_sum(inc, P)
    Q = inc.sections[q]
    return inc.chi + P.dot_o + Q.dot_o - inc.dot(p, q) - contribution_sum(inc, P, Q)


def required_dot_o(inc: SectionIncidence, p: str, height) -> int:
    """The value of ``(P·O)`` forced by ``⟨P,P⟩ = height``."""
    P = inc.sections[p]
    twice = Fraction(height) - 2 * inc.chi + contribution_sum(inc, P)
    value = twice / 2
    if value.denominator != 1 or value < 0:
        raise InconsistencyError(
            f"<{p},{p}> = {height} needs 2({p}·O) = {twice}, not a nonnegative even integer"
        )
    return int(value)


def required_dot(inc: SectionIncidence, p: str, q: str, value) -> int:
    """The value of ``(P·Q)`` forced by ``⟨P,Q⟩ = value``."""
    P, Q = inc.sections[p], inc.sections[q]
    dot = inc.chi + P.dot_o + Q.dot_o - contribution_sum(inc, P, Q) - Fraction(value)
    if dot.denominator != 1 or dot < 0:
        raise InconsistencyError(f"<{p},{q}> = {value} needs ({p}·{q}) = {dot}")
    return int(dot)

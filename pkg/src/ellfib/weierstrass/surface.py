"""All singular fibers of a Weierstrass fibration over P^1."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra.poly import Polynomial
from .model import Place, WeierstrassModel
from .tate import FiberReport, tate

log = logging.getLogger(__name__)


def split_field_model(W: WeierstrassModel) -> WeierstrassModel:
    """``W`` over the smallest extension in which the discriminant splits."""
    d = W.check_nonsingular().splitting_degree()
    if d == 1:
        return W
    return W.embed(W.field.extension(d))


def discriminant_places(W: WeierstrassModel) -> list[tuple[Place, int]]:
    """Finite zeros of Δ with multiplicity; ``W`` must already split Δ."""
    delta = W.check_nonsingular()
    roots = delta.roots()
    if sum(k for _, k in roots) != delta.degree:
        raise ValueError("discriminant does not split over the model's field")
    return [(Place(a, W.field), k) for a, k in sorted(roots)]


@dataclass(frozen=True)
class SurfaceReport:
    model: WeierstrassModel
    fibers: tuple[FiberReport, ...]
    j_zero: bool

    @property
    def sigma_v(self) -> int:
        return sum(f.v for f in self.fibers)

    @property
    def rational(self) -> bool:
        return self.sigma_v == 12

    @property
    def all_reduced(self) -> bool:
        return all(f.reduced for f in self.singular_fibers)

    @property
    def singular_fibers(self) -> tuple[FiberReport, ...]:
        return tuple(f for f in self.fibers if not f.smooth)

    def fiber(self, place: str) -> FiberReport:
        for f in self.fibers:
            if f.place == place:
                return f
        raise KeyError(place)

    def lang_types(self) -> list[str]:
        return [f.lang for f in self.singular_fibers if f.lang]

    def warnings(self) -> list[str]:
        out = []
        if not self.rational:
            out.append(f"not a rational elliptic surface: sum of v is {self.sigma_v}")
        return out

    def configuration(self) -> str:
        return "+".join(f.kodaira for f in self.singular_fibers) or "smooth"


def classify_surface(W: WeierstrassModel) -> SurfaceReport:
    """Tate at every zero of Δ and at infinity, with Lang types for unstable fibers."""
    W.check_nonsingular()
    Ws = split_field_model(W)
    j_zero = Ws.j_invariant().zero
    fibers = [tate(Ws, place) for place, _ in discriminant_places(Ws)]
    fibers.append(tate(Ws, Place(None, Ws.field)))
    report = SurfaceReport(Ws, tuple(fibers), j_zero)
    for w in report.warnings():
        log.warning(w)
    return report

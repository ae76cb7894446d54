"""Global vector fields ``D = (λ0 + λ1 t + λ2 t^2) d/dt`` on P^1 in characteristic 2."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.field import FiniteField
from ..algebra.poly import Polynomial
from ..errors import RejectionError

CLASSICAL = "CLASSICAL"
SUPERSINGULAR = "SUPERSINGULAR"


@dataclass(frozen=True)
class TwistorReport:
    kind: str
    zeros: tuple  # ((label, multiplicity), ...), finite zeros first, ∞ as "inf"
    field: FiniteField

    @property
    def supersingular(self) -> bool:
        return self.kind == SUPERSINGULAR

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.zeros)

    def zero_points(self) -> list[str]:
        return [z for z, _ in self.zeros]

    def line(self) -> str:
        zs = " ".join(f"{z}^{k}" if k > 1 else z for z, k in self.zeros)
        return f"type={self.kind} zeros={zs}"

    def as_dict(self) -> dict:
        return {"type": self.kind, "zeros": [{"place": z, "multiplicity": k} for z, k in self.zeros]}


def twistor_field(l0: int, l1: int, l2: int, field: FiniteField | None = None) -> TwistorReport:
    """Type of ``D`` and its zero divisor (degree 2 on P^1).

    ``D^2 = λ1 D`` in characteristic 2, so ``D`` is additive exactly when
    ``λ1 = 0``.  Roots outside ``field`` are found in the quadratic extension.
    """
    F = base = field or FiniteField(2, 1)
    if F.p != 2:
        raise RejectionError("twistor vector fields are analysed in characteristic 2")
    coeffs = [F.check(c) for c in (l0, l1, l2)]
    if not any(coeffs):
        raise RejectionError("the vector field is zero")
    f = Polynomial(F, coeffs)
    if f.degree > 0 and f.splitting_degree() > 1:
        F = F.extension(f.splitting_degree())
        f = f.map_coeffs(base.embedding(F), F)
    zeros = [(str(a), k) for a, k in sorted(f.roots())]
    if f.degree < 2:
        zeros.append(("inf", 2 - f.degree))
    kind = SUPERSINGULAR if not coeffs[1] else CLASSICAL
    return TwistorReport(kind, tuple(zeros), F)


"""Local analysis of hypersurface singularities ``A = k[[x_1..x_n, z]]/(g)``.

Everything here reduces to colengths of ideals in the ambient power-series
ring, computed by :mod:`ellfib.algebra.local`.  Derivations are applied to
polynomial representatives truncated at a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .algebra.affine import affine_membership
from .algebra.field import GF2, FiniteField
from .algebra.local import (
    DEFAULT_START,
    INFINITE,
    TruncatedLocalRing,
    colength,
    local_membership,
)
from .algebra.mpoly import MPoly
from .algebra.parse import parse_mpoly
from .errors import InconsistencyError, NotIsolatedError, ParseError, RejectionError


@dataclass(frozen=True)
class LocalHypersurface:
    """The complete local ring of ``g = 0`` at the origin."""

    g: MPoly
    start: int = DEFAULT_START

    def __post_init__(self):
        if not self.g:
            raise RejectionError("g must be nonzero")
        if self.g.constant_term():
            raise RejectionError("g must vanish at the origin")
        if self.g.nvars < 2:
            raise RejectionError("need at least two ambient variables")

    @classmethod
    def parse(cls, text: str, variables=("x", "y", "z"), field: FiniteField = GF2):
        return cls(parse_mpoly(text, field, variables))

    @property
    def field(self) -> FiniteField:
        return self.g.field

    @property
    def variables(self) -> tuple[str, ...]:
        return self.g.vars

    @property
    def n(self) -> int:
        """Dimension of ``A``."""
        return self.g.nvars - 1

    @cached_property
    def ambient(self) -> TruncatedLocalRing:
        return TruncatedLocalRing(self.field, self.variables, (), self.start)

    @cached_property
    def ring(self) -> TruncatedLocalRing:
        return TruncatedLocalRing(self.field, self.variables, (self.g,), self.start)

    def poly(self, text: str) -> MPoly:
        return parse_mpoly(text, self.field, self.variables)

    def partials(self) -> list[MPoly]:
        return [self.g.diff(i) for i in range(self.g.nvars)]

    def is_regular(self) -> bool:
        return any(sum(e) == 1 for e in self.g.terms)

    def colength(self, gens):
        """Colength of an ideal of ``A`` given by ambient generators."""
        return colength(self.ring, gens)


@dataclass(frozen=True)
class DerivationRecord:
    """``D = sum c_i d/dx_i`` with one coefficient per ambient variable."""

    coeffs: tuple[MPoly, ...]

    @classmethod
    def parse(cls, text: str, h: LocalHypersurface) -> "DerivationRecord":
        parts = [s.strip() for s in text.split("|")]
        if len(parts) != h.g.nvars:
            raise ParseError(f"derivation needs {h.g.nvars} coefficients, got {len(parts)}")
        return cls(tuple(h.poly(s) for s in parts))

    @classmethod
    def basis(cls, h: LocalHypersurface, name: str) -> "DerivationRecord":
        one = MPoly.constant(h.field, h.variables, 1)
        zero = one.new({})
        return cls(tuple(one if v == name else zero for v in h.variables))

    def apply(self, f: MPoly, trunc: int | None = None) -> MPoly:
        out = f.new({})
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c.mul(f.diff(i), trunc)
        return out

    def power_on(self, f: MPoly, k: int, trunc: int) -> MPoly:
        for _ in range(k):
            f = self.apply(f, trunc)
        return f

    def descends(self, h: LocalHypersurface) -> bool:
        """``D(g) ∈ (g)``, checked modulo the truncation order."""
        dg = self.apply(h.g)
        return h.ring.ideal_space([], h.start).contains(dg)

    def __str__(self):
        return " | ".join(str(c) for c in self.coeffs)


# --------------------------------------------------------------- Tjurina ---

def tjurina_ideal(h: LocalHypersurface) -> list[MPoly]:
    return [h.g] + h.partials()


def tjurina_number(h: LocalHypersurface):
    """Colength of ``(g, dg/dx_1, ..., dg/dz)``; ``INFINITE`` if not isolated."""
    return colength(h.ambient, tjurina_ideal(h))


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    len_j: object
    len_j_frob: object
    note: str = ""


def theta_free_test(h: LocalHypersurface) -> FreenessReport:
    """Length test for freeness of the tangent module.

    Compares ``L1 = length A/J`` with ``L2 = length A/J^[p]`` and reports free
    when ``L2 = p^n * L1``.  Since ``J^[p] ⊆ J`` this is the orientation that
    can hold; the test is only meaningful for ``n <= 2``.
    """
    p = h.field.p
    partials = [d for d in h.partials() if d]
    l1 = h.colength(partials)
    l2 = h.colength([d.frobenius_power() for d in partials])
    if l1 is INFINITE or l2 is INFINITE:
        return FreenessReport(False, l1, l2, "singularity is not isolated")
    if h.n > 2:
        return FreenessReport(False, l1, l2, "tangent module is never free for n > 2")
    return FreenessReport(l2 == p ** h.n * l1, l1, l2)


# ---------------------------------------------------------- derivations ----

@dataclass(frozen=True)
class ClosednessReport:
    closed: bool
    lam: int | None


def p_closed_check(h: LocalHypersurface, D: DerivationRecord) -> ClosednessReport:
    """Test ``D^p = lambda * D`` on ``A`` by comparing images of the variables."""
    p = h.field.p
    n = h.start
    work = n + p + 1
    space = h.ring.ideal_space([], n)
    pairs = []
    for x in h.g.gens():
        b = D.apply(x, work).truncate(n)
        a = D.power_on(x, p, work).truncate(n)
        pairs.append((a, b))
    lam = 0
    for a, b in pairs:
        if not space.contains(b):
            found = space.solve_scalar(a, b)
            if found is None:
                return ClosednessReport(False, None)
            lam = found
            break
    for a, b in pairs:
        if not space.contains(a - b.scale(lam)):
            return ClosednessReport(False, None)
    return ClosednessReport(True, lam)


@dataclass(frozen=True)
class OrbitIdeal:
    generators: tuple[MPoly, ...]
    colength: int
    free: bool


def _orbit_functional_rank(h: LocalHypersurface, D: DerivationRecord):
    """Kernel vectors and rank of ``f -> (D^i f)(0)`` on monomials of degree 1..p-1."""
    F = h.field
    p = F.p
    nv = h.g.nvars
    monos = [e for d in range(1, p) for e in _monomials_of_degree(nv, d)]
    rows = []
    one = MPoly.constant(F, h.variables, 1)
    for e in monos:
        f = one.new({e: 1})
        vals = []
        cur = f
        for _ in range(1, p):
            cur = D.apply(cur, p + 1)
            vals.append(cur.constant_term())
        rows.append(vals)
    # Gaussian elimination on the transpose to find the kernel
    kernel, rank = _kernel(F, rows, p - 1)
    gens = [one.new({monos[j]: c for j, c in enumerate(vec) if c}) for vec in kernel]
    return gens, rank


def _monomials_of_degree(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def _kernel(F: FiniteField, rows, ncols):
    """Kernel of ``v -> v @ rows`` (rows indexed by unknowns) over ``F``."""
    nunk = len(rows)
    # matrix M with M[c][u] = rows[u][c]; solve M v = 0
    M = [[rows[u][c] for u in range(nunk)] for c in range(ncols)]
    pivots = []
    r = 0
    for col in range(nunk):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                c = M[i][col]
                M[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(nunk) if c not in pivots]
    kernel = []
    for fcol in free:
        v = [0] * nunk
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fcol])
        kernel.append(v)
    return kernel, len(pivots)


def orbit_ideal(h: LocalHypersurface, D: DerivationRecord) -> OrbitIdeal:
    """Ideal of the orbit of the closed point under the action defined by ``D``."""
    p = h.field.p
    lin, rank = _orbit_functional_rank(h, D)
    length = 1 + rank
    if length not in (1, p):
        raise InconsistencyError(f"orbit ideal of colength {length} (expected 1 or {p})")
    one = MPoly.constant(h.field, h.variables, 1)
    top = [one.new({e: 1}) for e in _monomials_of_degree(h.g.nvars, p)]
    gens = _prune(h, lin + top, length)
    return OrbitIdeal(tuple(gens), length, length == p)


def _orbit_ideal_generators_unpruned(h, D):
    p = h.field.p
    lin, _ = _orbit_functional_rank(h, D)
    one = MPoly.constant(h.field, h.variables, 1)
    return lin + [one.new({e: 1}) for e in _monomials_of_degree(h.g.nvars, p)]


def _prune(h: LocalHypersurface, gens, length):
    gens = list(gens)
    i = len(gens) - 1
    while i >= 0:
        trial = gens[:i] + gens[i + 1:]
        if trial and h.colength(trial) == length:
            gens = trial
        i -= 1
    return gens


def length_criterion(h: LocalHypersurface, gens) -> tuple[bool, object, object]:
    """``length A/a^[p] == p^n * length A/a`` for the ideal ``a = (gens)``."""
    p = h.field.p
    l1 = h.colength(gens)
    l2 = h.colength([g.frobenius_power() for g in gens])
    if l1 is INFINITE or l2 is INFINITE:
        return False, l1, l2
    return l2 == p ** h.n * l1, l1, l2


def zariski_homological_test(h: LocalHypersurface, D: DerivationRecord) -> bool:
    """Zariski criterion: the orbit ideal is not maximal and has finite projective dimension.

    Finite projective dimension is tested through the length criterion.  A
    regular ring is Zariski, whatever ``D`` is.
    """
    if h.is_regular():
        return True
    if not D.descends(h):
        raise RejectionError("derivation does not descend to A")
    if not p_closed_check(h, D).closed:
        raise RejectionError("derivation is not p-closed")
    gens = _orbit_ideal_generators_unpruned(h, D)
    if h.colength(gens) == 1:
        return False
    ok, l1, l2 = length_criterion(h, gens)
    if l1 is INFINITE or l2 is INFINITE:
        return False
    return ok


def orbit_ideal_of_direction(h: LocalHypersurface, direction) -> list[MPoly]:
    """Orbit-ideal generators for a derivation with the given tangent vector at 0 (p = 2)."""
    if h.field.p != 2:
        raise RejectionError("direction search is implemented for p = 2")
    F = h.field
    one = MPoly.constant(F, h.variables, 1)
    coeffs = tuple(one.scale(c) if c else one.new({}) for c in direction)
    return _orbit_ideal_generators_unpruned(h, DerivationRecord(coeffs))


def passes_length_test_somewhere(h: LocalHypersurface, field: FiniteField | None = None) -> bool:
    """Whether some tangent direction over ``field`` yields an orbit ideal passing the length test.

    This is a necessary condition for a Zariski singularity to be witnessed by a
    derivation whose tangent vector is defined over ``field``.
    """
    F = field or h.field
    for direction in product(range(F.order), repeat=h.g.nvars):
        if not any(direction):
            continue
        gens = orbit_ideal_of_direction(h, direction)
        if h.colength(gens) == 1:
            continue
        if length_criterion(h, gens)[0]:
            return True
    return False


# ----------------------------------------------------- z^2 = f(x, y) -------

def tangent_basis(f: MPoly) -> tuple[DerivationRecord, DerivationRecord]:
    """Basis ``D_z, f_y D_x - f_x D_y`` of the tangent module of ``z^2 = f(x, y)``.

    ``f`` lives in variables ``(x, y)``; the derivations are returned on
    ``(x, y, z)``.
    """
    F = f.field
    if f.nvars != 2:
        raise RejectionError("f must be a polynomial in two variables")
    ring = TruncatedLocalRing(F, f.vars)
    fx, fy = f.diff(0), f.diff(1)
    if colength(ring, [fx, fy]) is INFINITE:
        raise NotIsolatedError(f"jacobian ideal of {f} is not primary to the maximal ideal")
    variables = f.vars + ("z",)
    lift = lambda q: MPoly(F, variables, {e + (0,): c for e, c in q.terms.items()})
    zero = MPoly(F, variables, {})
    one = MPoly.constant(F, variables, 1)
    dz = DerivationRecord((zero, zero, one))
    d2 = DerivationRecord((lift(fy), -lift(fx), zero))
    return dz, d2


def zariski_surface(f: MPoly) -> LocalHypersurface:
    """The hypersurface ``z^2 - f(x, y)`` in variables ``(x, y, z)``."""
    F = f.field
    variables = f.vars + ("z",)
    g = MPoly(F, variables, {(0,) * len(f.vars) + (F.p,): 1})
    return LocalHypersurface(g - MPoly(F, variables, {e + (0,): c for e, c in f.terms.items()}))


def is_free_combination(f: MPoly, u: MPoly, v: MPoly) -> bool:
    """Freeness of ``u D_z + v (f_y D_x - f_x D_y)``: exactly when ``u`` is a unit."""
    return u.constant_term() != 0


# ------------------------------------------------- matrix factorizations ---

@dataclass(frozen=True)
class MatrixFactorizationReport:
    valid: bool
    tor_nonvanishing: bool | None


def _matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    if any(len(row) != m for row in A):
        raise RejectionError("dimension mismatch")
    zero = A[0][0].new({})
    return [[sum((A[i][l] * B[l][j] for l in range(m)), zero) for j in range(k)] for i in range(n)]


def matrix_factorization_check(g: MPoly, phi, psi, ideal=None) -> MatrixFactorizationReport:
    """Check ``phi psi = psi phi = g * 1`` and whether ``phi`` vanishes modulo ``ideal``.

    When ``phi ≡ 0`` modulo the ideal, every higher Tor of the cokernel against
    the residue ring is nonzero, which obstructs finite projective dimension.
    """
    size = len(phi)
    if len(psi) != size or any(len(r) != size for r in list(phi) + list(psi)):
        raise RejectionError("dimension mismatch")
    target = [[g if i == j else g.new({}) for j in range(size)] for i in range(size)]
    valid = _matmul(phi, psi) == target and _matmul(psi, phi) == target
    tor = None
    if ideal is not None:
        ring = TruncatedLocalRing(g.field, g.vars, (g,))
        tor = all(local_membership(ring, ideal, entry) for row in phi for entry in row)
    return MatrixFactorizationReport(valid, tor)


# -------------------------------------------------------- torsor charts ----

@dataclass(frozen=True)
class ChartCheck:
    ok: bool
    witness: str = ""


def verify_torsor_chart(relations, D: DerivationRecord, invariants, claimed=()) -> ChartCheck:
    """Check a derivation on ``k[vars]/(relations)`` and its claimed invariant ring.

    Verifies that ``D`` preserves the ideal, that ``D^2 = 0``, that ``D`` kills
    every invariant, and that each claimed relation (a polynomial in fresh
    variables, one per invariant) vanishes after substitution.
    """
    relations = list(relations)
    gens = D.coeffs[0].gens()
    for r in relations:
        if not affine_membership(relations, D.apply(r)):
            return ChartCheck(False, f"D({r}) is not in the ideal")
    for x in gens:
        dd = D.apply(D.apply(x))
        if not affine_membership(relations, dd):
            return ChartCheck(False, f"D^2({x}) = {dd} is not zero")
    for a in invariants:
        da = D.apply(a)
        if not affine_membership(relations, da):
            return ChartCheck(False, f"D({a}) = {da} is not zero")
    for rel in claimed:
        values = dict(zip(rel.vars, invariants))
        val = rel.substitute(values)
        if not affine_membership(relations, val):
            return ChartCheck(False, f"relation {rel} fails: {val}")
    return ChartCheck(True)


# ------------------------------------------------------- RDP normal forms ---

@dataclass(frozen=True)
class RdpLabel:
    family: str
    index: int
    coindex: int
    zariski: bool
    tau: object

    @property
    def rank(self) -> int:
        return self.index

    @property
    def name(self) -> str:
        if self.family == "A":
            return f"A{self.index}"
        return f"{self.family}{self.index}^{self.coindex}"

    def __str__(self):
        return self.name


def zariski_flag(family: str, index: int, coindex: int) -> bool:
    """Char-2 Zariski rational double points: A1, D_2m^0, E7^0, E8^0."""
    if family == "A":
        return index == 1
    if family == "D":
        return index % 2 == 0 and coindex == 0
    if family == "E":
        return index in (7, 8) and coindex == 0
    return False


# Artin's characteristic-2 normal forms.  Each entry lists the monomials of g
# as exponent triples in (x, y, z); all coefficients are one.
def _normal_forms(max_index: int = 40):
    forms = {}

    def put(fam, n, r, monos):
        forms[frozenset(monos)] = (fam, n, r)

    for n in range(1, max_index + 1):
        put("A", n, 0, [(0, 0, n + 1), (1, 1, 0)])
    for m in range(2, max_index // 2 + 1):
        put("D", 2 * m, 0, [(0, 0, 2), (2, 1, 0), (1, m, 0)])
        for r in range(1, m):
            put("D", 2 * m, r, [(0, 0, 2), (2, 1, 0), (1, m, 0), (1, m - r, 1)])
        put("D", 2 * m + 1, 0, [(0, 0, 2), (2, 1, 0), (0, m, 1)])
        for r in range(1, m):
            put("D", 2 * m + 1, r, [(0, 0, 2), (2, 1, 0), (0, m, 1), (1, m - r, 1)])
    base6 = [(0, 0, 2), (3, 0, 0), (0, 2, 1)]
    put("E", 6, 0, base6)
    put("E", 6, 1, base6 + [(1, 1, 1)])
    base7 = [(0, 0, 2), (3, 0, 0), (1, 3, 0)]
    put("E", 7, 0, base7)
    for r, extra in enumerate([(2, 1, 1), (0, 3, 1), (1, 1, 1)], start=1):
        put("E", 7, r, base7 + [extra])
    base8 = [(0, 0, 2), (3, 0, 0), (0, 5, 0)]
    put("E", 8, 0, base8)
    for r, extra in enumerate([(1, 3, 1), (1, 2, 1), (0, 3, 1), (1, 1, 1)], start=1):
        put("E", 8, r, base8 + [extra])
    return forms


_NORMAL_FORMS = _normal_forms()


def normal_form(family: str, index: int, coindex: int = 0, field: FiniteField = GF2) -> LocalHypersurface:
    """The stored normal form as a hypersurface in ``(x, y, z)``."""
    for monos, label in _NORMAL_FORMS.items():
        if label == (family, index, coindex):
            g = MPoly(field, ("x", "y", "z"), {e: 1 for e in monos})
            return LocalHypersurface(g)
    raise KeyError(f"no stored normal form {family}{index}^{coindex}")


def classify_rdp(h: LocalHypersurface) -> RdpLabel:
    """Match ``g`` against the stored normal forms (variables read as x, y, z).

    The roles of the first two variables may be exchanged; no other coordinate
    change is attempted.
    """
    if h.g.nvars != 3:
        raise RejectionError("unrecognized normal form: need three variables")
    if any(c != 1 for c in h.g.terms.values()):
        raise RejectionError("unrecognized normal form")
    monos = frozenset(h.g.terms)
    swapped = frozenset((b, a, c) for a, b, c in monos)
    label = _NORMAL_FORMS.get(monos) or _NORMAL_FORMS.get(swapped)
    if label is None:
        raise RejectionError("unrecognized normal form")
    fam, n, r = label
    return RdpLabel(fam, n, r, zariski_flag(fam, n, r), tjurina_number(h))


def rdp_label_from_type(ade: str, zariski_only: bool = True) -> RdpLabel:
    """Label for an ADE graph type like ``"D6"``, read as the Zariski variant when one exists."""
    fam, n = ade[0], int(ade[1:])
    r = 0
    zar = zariski_flag(fam, n, r)
    tau = 2 * n if zar else _tau_of_normal_form(fam, n)
    return RdpLabel(fam, n, r, zar, tau)


def _tau_of_normal_form(fam, n):
    try:
        return tjurina_number(normal_form(fam, n, 0))
    except KeyError:
        return None


# ------------------------------------------------------------ .sing text ---

def parse_sing(text: str) -> tuple[LocalHypersurface, DerivationRecord | None]:
    """Read ``vars = x y z``, ``g = ...`` and an optional ``D = c_x | c_y | c_z``.

    ``p``, ``m`` and ``modulus`` select the ground field (GF(2) by default).
    """
    data: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if k in data:
            raise ParseError(f"line {lineno}: duplicate key {k!r}")
        data[k] = v
    extra = set(data) - {"vars", "g", "D", "p", "m", "modulus"}
    if extra:
        raise ParseError(f"unknown key(s): {', '.join(sorted(extra))}")
    if "g" not in data:
        raise ParseError("missing 'g'")
    variables = tuple(data.get("vars", "x y z").split())
    try:
        F = FiniteField(int(data.get("p", "2")), int(data.get("m", "1")),
                        int(data["modulus"]) if "modulus" in data else None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    h = LocalHypersurface.parse(data["g"], variables, F)
    D = DerivationRecord.parse(data["D"], h) if "D" in data else None
    return h, D

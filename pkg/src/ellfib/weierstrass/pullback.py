"""Frobenius pullback of a fibration and the singularities it acquires.

For ``X' = J ×_{P^1} P^1`` along ``t -> t^2`` the fiber over ``a = √b`` is the
pullback of the fiber ``J_b``.  Semistable ``I_n`` fibers give ``n`` ordinary
double points.  For an unstable reduced fiber the minimal resolution ``S_a``
of ``X'_a`` is the minimal-model fiber of the pullback, the strict transforms
of the ``m_b`` components of ``J_b`` are simple components of ``S_a``, and
the remaining components form the exceptional ADE configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..algebra.mpoly import MPoly
from ..dualgraph import (
    IntersectionGraph,
    ade_type,
    almost_minimal_graph,
    component_count,
    kodaira_template,
)
from ..errors import AmbiguityError, InconsistencyError, NonReducedFiberError
from ..singularity import LocalHypersurface, RdpLabel, rdp_label_from_type, tjurina_number
from .model import Place, WeierstrassModel
from .surface import SurfaceReport, classify_surface
from .tate import FiberReport, tate_local

ELLIPTIC_DOUBLE_POINT = "ELLIPTIC_DOUBLE_POINT"
ELLIPTIC = "ELLIPTIC"

UNSTABLE_TYPES_BY_M = {1: ["II"], 2: ["III"], 3: ["IV"], 7: ["IV*"], 8: ["III*"], 9: ["II*"]}


def pullback_fiber_laws(src: FiberReport, dst: FiberReport, p: int = 2) -> bool:
    """``v_a = p v_b - 12λ``, ``δ_a = δ_b``, ``m_a = p m_b + (p-1)(δ_b+1) - 12λ``."""
    return not law_violations(src, dst, p)


def law_violations(src: FiberReport, dst: FiberReport, p: int = 2) -> list[str]:
    lam = dst.lam
    out = []
    if src.smooth:
        if not dst.smooth:
            out.append("smooth fiber pulled back to a singular one")
        return out
    if dst.v != p * src.v - 12 * lam:
        out.append(f"v: {dst.v} != {p}*{src.v} - 12*{lam}")
    if dst.delta != src.delta:
        out.append(f"delta: {dst.delta} != {src.delta}")
    if src.semistable:
        if lam or dst.m != p * src.m:
            out.append(f"m: semistable {dst.m} != {p}*{src.m} (lambda={lam})")
    else:
        want = p * src.m + (p - 1) * (src.delta + 1) - 12 * lam
        if dst.m != want:
            out.append(f"m: {dst.m} != {want}")
    return out


def pullback_place(place: Place) -> Place:
    """The point over ``place`` under ``t -> t^p`` (the unique p-th root)."""
    if place.alpha is None:
        return place
    F = place.field
    root = F.pow(place.alpha, F.order // F.p)
    return Place(root, F)


def pullback_report(src: FiberReport, place: Place, p: int = 2) -> FiberReport:
    """Tate's algorithm on the pullback of the minimal local equation of ``src``."""
    local = tuple(c.substitute_power(p) for c in src.minimal)
    return tate_local(local, pullback_place(place).label)


# ------------------------------------------------------------ candidates -----

@dataclass(frozen=True)
class Candidate:
    kodaira: str
    ade: str
    strict: tuple[int, ...]  # removed (strict transform) vertices
    exceptional: tuple[int, ...]

    @property
    def zariski(self) -> bool:
        return rdp_label_from_type(self.ade).zariski


def unstable_types_with(m: int) -> list[str]:
    out = list(UNSTABLE_TYPES_BY_M.get(m, []))
    if m >= 5:
        out.append(f"I{m - 5}*")
    return out


def exceptional_candidates(kodaira: str, m_b: int) -> list[Candidate]:
    """Ways to read ``kodaira`` as ``S_a`` with ``m_b`` strict-transform components.

    The strict transforms are simple components; what is left must be a
    connected ADE configuration met by every strict transform.
    """
    tpl = kodaira_template(kodaira)
    G = tpl.graph
    seen: dict[str, Candidate] = {}
    out = []
    for strict in combinations(tpl.simple_components(), m_b):
        rest = [v for v in range(G.size) if v not in strict]
        if not rest or not G.is_connected(rest):
            continue
        if any(not set(G.neighbours(v)) & set(rest) for v in strict):
            continue
        ade = ade_type(G.subgraph(rest))
        if ade is None:
            continue
        if ade not in seen:
            seen[ade] = Candidate(kodaira, ade, tuple(strict), tuple(rest))
            out.append(seen[ade])
    return out


def candidate_types(src: FiberReport, lam: int = 0) -> list[Candidate]:
    m_prime = 2 * src.m + src.delta + 1 - 12 * lam
    out = []
    for kod in unstable_types_with(m_prime):
        out.extend(exceptional_candidates(kod, src.m))
    return out


# --------------------------------------------------------------- profile -----

@dataclass(frozen=True)
class PlaceProfile:
    place: str
    src: FiberReport
    dst: FiberReport
    singularities: tuple  # RdpLabel entries or an elliptic marker string
    tau: int | None
    strict: tuple[int, ...] = ()
    exceptional: tuple[int, ...] = ()
    graph: IntersectionGraph | None = None
    candidates: tuple[Candidate, ...] = ()
    note: str = ""

    @property
    def rational(self) -> bool:
        return all(isinstance(s, RdpLabel) for s in self.singularities)

    @property
    def elliptic(self) -> bool:
        return not self.rational

    def singularity_names(self) -> list[str]:
        return [s.name if isinstance(s, RdpLabel) else s for s in self.singularities]

    def line(self) -> str:
        sing = " ".join(self.singularity_names()) or "-"
        tau = "?" if self.tau is None else self.tau
        return (
            f"place={self.place} source={self.src.kodaira} pullback={self.dst.kodaira} "
            f"lambda={self.dst.lam} singularities={sing} tau={tau}"
        )


@dataclass(frozen=True)
class PullbackProfile:
    places: tuple[PlaceProfile, ...]
    surface: SurfaceReport | None = None
    pullback_surface: SurfaceReport | None = None

    @property
    def total_tau(self) -> int | None:
        taus = [p.tau for p in self.places]
        return None if any(t is None for t in taus) else sum(taus)

    @property
    def all_rational(self) -> bool:
        return all(p.rational for p in self.places)

    @property
    def sigma_v(self) -> int:
        return sum(p.src.v for p in self.places)

    def place(self, label: str) -> PlaceProfile:
        for p in self.places:
            if p.place == label or p.src.place == label:
                return p
        raise KeyError(label)

    def lang_types(self) -> list[str]:
        return [p.src.lang for p in self.places if p.src.lang]

    def has_lang(self, lang: str) -> bool:
        return lang in self.lang_types()


def local_equation(report: FiberReport, p: int = 2) -> MPoly:
    """``F(t^p, x, y)`` from the minimal local equation of ``report``, in ``(t, x, y)``."""
    a = report.minimal
    F = a[0].field
    names = ("t", "x", "y")
    x = MPoly.var(F, names, "x")
    y = MPoly.var(F, names, "y")

    def lift(c):
        return MPoly(F, names, {(k * p, 0, 0): v for k, v in enumerate(c.coeffs) if v})

    a1, a2, a3, a4, a6 = (lift(c) for c in a)
    return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6


def local_tau(report: FiberReport, p: int = 2):
    """Tjurina number of the pulled-back Weierstrass surface at the origin over ``π = 0``."""
    return tjurina_number(LocalHypersurface(local_equation(report, p)))


def profile_place(src: FiberReport, dst: FiberReport, place_label: str) -> PlaceProfile:
    if not src.reduced:
        raise NonReducedFiberError(f"fiber {src.kodaira} at {src.place} is not reduced")
    if not pullback_fiber_laws(src, dst):
        raise InconsistencyError(
            f"pullback laws fail at {src.place}: {'; '.join(law_violations(src, dst))}"
        )
    if src.semistable:
        n = src.m
        tpl = kodaira_template(dst.kodaira) if dst.kodaira != "I0" else None
        exceptional = tuple(range(1, 2 * n, 2)) if tpl else ()
        strict = tuple(range(0, 2 * n, 2)) if tpl else ()
        sing = tuple(rdp_label_from_type("A1") for _ in range(n))
        return PlaceProfile(place_label, src, dst, sing, 2 * n, strict, exceptional,
                            tpl.graph if tpl else None)
    if dst.lam == 0:
        cands = candidate_types(src)
        zar = [c for c in cands if c.zariski]
        chosen = [c for c in zar if c.kodaira == dst.kodaira]
        note = ""
        if not chosen:
            raise InconsistencyError(
                f"pullback type {dst.kodaira} at {src.place} is not among the Zariski candidates "
                + ", ".join(f"{c.kodaira}/{c.ade}" for c in zar)
            )
        if len(chosen) > 1:
            raise AmbiguityError(f"several exceptional configurations for {dst.kodaira}")
        if len({c.kodaira for c in zar}) > 1:
            note = "Zariski filter left " + ", ".join(f"{c.kodaira}/{c.ade}" for c in zar) + "; Tate decides"
        c = chosen[0]
        label = rdp_label_from_type(c.ade)
        tpl = kodaira_template(c.kodaira)
        prof = PlaceProfile(place_label, src, dst, (label,), label.tau, c.strict, c.exceptional,
                            tpl.graph.subgraph(c.exceptional), tuple(cands), note)
        if src.m == 1:
            tau = local_tau(src)
            if tau != label.tau:
                raise InconsistencyError(f"local Tjurina number {tau} != {label.tau} at {src.place}")
        return prof
    # almost-minimal pullback: an elliptic singularity
    marker = ELLIPTIC_DOUBLE_POINT if dst.kodaira == "II" else ELLIPTIC
    graph = almost_minimal_graph(dst.kodaira)
    tau = local_tau(src) if src.m == 1 else None
    return PlaceProfile(place_label, src, dst, (marker,), tau, (), tuple(range(graph.size)), graph,
                        note="exceptional graph of the almost-minimal equation")


def singularity_profile(W: WeierstrassModel) -> PullbackProfile:
    """Per-place singularities of the Frobenius pullback of ``W``."""
    surf = classify_surface(W)
    bad = [f for f in surf.singular_fibers if not f.reduced]
    if bad:
        raise NonReducedFiberError(
            "pullback is not normal: non-reduced fiber(s) " + ", ".join(f"{f.kodaira}@{f.place}" for f in bad)
        )
    F = surf.model.field
    places = []
    for src in surf.singular_fibers:
        place = Place(None if src.place == "inf" else int(src.place), F)
        dst = pullback_report(src, place)
        places.append(profile_place(src, dst, pullback_place(place).label))
    return PullbackProfile(tuple(places), surf)


def profile_from_reports(sources, dst_kodaira: dict | None = None, lam: dict | None = None) -> PullbackProfile:
    """A profile from fiber data alone (no equation), predicting the pullback by the laws.

    ``dst_kodaira`` settles configurations the Zariski filter leaves open and
    ``lam`` marks almost-minimal places; both are keyed by source place.
    """
    dst_kodaira = dst_kodaira or {}
    lam = lam or {}
    places = []
    for src in sources:
        if src.smooth:
            continue
        if not src.reduced:
            raise NonReducedFiberError(f"fiber {src.kodaira} at {src.place} is not reduced")
        l = lam.get(src.place, 0)
        v = 2 * src.v - 12 * l
        if src.semistable:
            dst = FiberReport(src.place, f"I{2 * src.m}", v, 2 * src.m, 0, 0)
        else:
            m = 2 * src.m + src.delta + 1 - 12 * l
            kod = dst_kodaira.get(src.place)
            if kod is None:
                if l:
                    kod = "II" if m == 1 else None
                else:
                    kinds = sorted({c.kodaira for c in candidate_types(src) if c.zariski})
                    if len(kinds) != 1:
                        raise AmbiguityError(
                            f"pullback type at {src.place} is one of {kinds}; supply it explicitly"
                        )
                    kod = kinds[0]
            if kod is None or component_count(kod) != m:
                raise InconsistencyError(f"pullback type {kod} does not have {m} components")
            dst = FiberReport(src.place, kod, v, m, src.delta, l)
        places.append(_profile_place_no_model(src, dst))
    return PullbackProfile(tuple(places))


def _profile_place_no_model(src, dst):
    if src.unstable and dst.lam:
        graph = almost_minimal_graph(dst.kodaira)
        marker = ELLIPTIC_DOUBLE_POINT if dst.kodaira == "II" else ELLIPTIC
        # the elliptic double point of the 9C family has τ = 24 = 2 v_b
        tau = 2 * src.v if marker == ELLIPTIC_DOUBLE_POINT else None
        return PlaceProfile(src.place, src, dst, (marker,), tau, (), tuple(range(graph.size)), graph)
    if src.unstable:
        cands = [c for c in candidate_types(src) if c.zariski and c.kodaira == dst.kodaira]
        if len(cands) != 1:
            raise AmbiguityError(f"no unique Zariski configuration for {dst.kodaira} at {src.place}")
        c = cands[0]
        label = rdp_label_from_type(c.ade)
        tpl = kodaira_template(c.kodaira)
        return PlaceProfile(src.place, src, dst, (label,), label.tau, c.strict, c.exceptional,
                            tpl.graph.subgraph(c.exceptional), tuple(candidate_types(src)))
    n = src.m
    tpl = kodaira_template(dst.kodaira)
    sing = tuple(rdp_label_from_type("A1") for _ in range(n))
    return PlaceProfile(src.place, src, dst, sing, 2 * n, tuple(range(0, 2 * n, 2)),
                        tuple(range(1, 2 * n, 2)), tpl.graph)

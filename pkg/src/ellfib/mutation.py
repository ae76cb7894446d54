"""Mutations ``X' <- S -> X`` of a Frobenius pullback and their certificates.

Per singular place the minimal resolution ``S`` has a fiber ``S_a`` with
exceptional part ``E'_a``.  A mutation replaces ``E'_a`` by another negative
definite ``E_a`` according to the fiber types of ``X'_a`` and ``S_a``:

* ``M1``  semistable: keep, or take the strict transform of ``X'_a``;
* ``M2``  II over ``I_n*``: keep, or everything but the terminal component
  nearest to the strict transform;
* ``M3``  III over ``I_n*``: keep, or everything but the two far terminal
  components;
* ``M4``  IV over IV*: keep, or the strict transform plus the central component;
* ``M5``  otherwise keep.

Components are numbered as in :func:`ellfib.dualgraph.kodaira_template`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .dualgraph import (
    IntersectionGraph,
    ade_decomposition,
    canonical_degrees,
    canonical_type_check,
    fundamental_genus,
    is_negative_definite,
    is_negative_semidefinite,
    kodaira_template,
    parse_igr,
    parse_kodaira,
)
from .errors import InconsistencyError, ParseError, RejectionError
from .lattice import (
    GramLattice,
    KodairaConfiguration,
    Section,
    SectionIncidence,
    height_pairing,
    mw_lookup,
    required_dot,
    required_dot_o,
    trivial_lattice,
)
from .singularity import RdpLabel, rdp_label_from_type
from .weierstrass.pullback import ELLIPTIC_DOUBLE_POINT, PlaceProfile, PullbackProfile

KEEP, SWAP = "keep", "swap"
EDP_CASE = "EDP"
UNSUPPORTED = "UNSUPPORTED"
CASES = ("M1", "M2", "M3", "M4", "M5", EDP_CASE)

PASS, FAIL = "PASS", "FAIL"
IMPLIED, NA, BY_CONSTRUCTION, PENDING, EXCLUDED = (
    "IMPLIED", "N/A", "BY-CONSTRUCTION", "PENDING", "EXCLUDED"
)


# ------------------------------------------------------------ per place -----

def mutation_case(fiber_x: str, fiber_s: str, elliptic: bool = False) -> str:
    """The (M)-condition governing a place with fibers ``X'_a`` and ``S_a``."""
    if elliptic:
        return EDP_CASE
    fx, _ = parse_kodaira(fiber_x)
    fs, _ = parse_kodaira(fiber_s)
    if fx == "I" and fs == "I":
        return "M1"
    if fx == "II" and fs == "I*":
        return "M2"
    if fx == "III" and fs == "I*":
        return "M3"
    if fx == "IV" and fs == "IV*":
        return "M4"
    return "M5"


def swap_set(case: str, fiber_s: str, strict, default) -> tuple[int, ...] | None:
    """The non-identity ``E_a`` allowed by ``case`` (``None`` for M5 and EDP)."""
    tpl = kodaira_template(fiber_s)
    every = range(tpl.graph.size)
    if case == "M1":
        return tuple(sorted(strict))
    if case == "M2":
        (s,) = strict
        leaves = [v for v in tpl.simple_components() if v != s]
        G = tpl.graph
        nearest = min(leaves, key=lambda v: (_distance(G, s, v), v))
        return tuple(v for v in every if v != nearest)
    if case == "M3":
        far = [v for v in tpl.simple_components() if v not in strict]
        return tuple(v for v in every if v not in far)
    if case == "M4":
        central = max(every, key=lambda v: tpl.mult[v])
        return tuple(sorted(set(strict) | {central}))
    return None


def _distance(G: IntersectionGraph, a: int, b: int) -> int:
    frontier, seen, d = {a}, {a}, 0
    while b not in frontier:
        frontier = {w for v in frontier for w in G.neighbours(v)} - seen
        if not frontier:
            return G.size
        seen |= frontier
        d += 1
    return d


@dataclass(frozen=True)
class PlaceChoice:
    """One place of a plan: the fibers, ``E'_a`` and the chosen ``E_a``."""

    place: str
    case: str
    action: str
    fiber_x: str
    fiber_s: str
    graph: IntersectionGraph
    strict: tuple[int, ...]
    default: tuple[int, ...]
    chosen: tuple[int, ...]
    singularities: tuple
    lang: str | None = None
    edp_tau: int | None = None

    @property
    def tau(self) -> int | None:
        if self.case == EDP_CASE:
            return self.edp_tau
        taus = [s.tau if isinstance(s, RdpLabel) else None for s in self.singularities]
        return None if any(t is None for t in taus) else sum(taus)

    def singularity_names(self) -> list[str]:
        return [s.name if isinstance(s, RdpLabel) else str(s) for s in self.singularities]

    def zariski(self) -> bool:
        return all(s.zariski if isinstance(s, RdpLabel) else s == ELLIPTIC_DOUBLE_POINT
                   for s in self.singularities)

    def line(self) -> str:
        return f"place={self.place} case={self.case} {self.action}"

    def describe(self) -> str:
        return (
            f"{self.line()} X'={self.fiber_x} S={self.fiber_s} "
            f"E'={_ids(self.default)} E={_ids(self.chosen)} "
            f"singularities={' '.join(self.singularity_names())} tau={self.tau}"
        )


def _ids(vs) -> str:
    return ",".join(str(v) for v in vs) or "-"


def place_options(pp: PlaceProfile) -> list[PlaceChoice]:
    """Identity first, then the swap when the place's (M)-condition offers one."""
    src, dst = pp.src, pp.dst
    if pp.elliptic:
        keep = PlaceChoice(pp.place, EDP_CASE, KEEP, src.kodaira, dst.kodaira, pp.graph,
                           (), pp.exceptional, pp.exceptional, pp.singularities, src.lang,
                           edp_tau=pp.tau)
        return [keep]
    tpl = kodaira_template(dst.kodaira)
    case = mutation_case(src.kodaira, dst.kodaira)
    default = tuple(sorted(pp.exceptional))
    keep = PlaceChoice(pp.place, case, KEEP, src.kodaira, dst.kodaira, tpl.graph,
                       tuple(sorted(pp.strict)), default, default, pp.singularities, src.lang)
    out = [keep]
    chosen = swap_set(case, dst.kodaira, keep.strict, default)
    if chosen is not None and chosen != default:
        sing = tuple(rdp_label_from_type(t) for t in ade_decomposition(tpl.graph, chosen))
        out.append(PlaceChoice(pp.place, case, SWAP, src.kodaira, dst.kodaira, tpl.graph,
                               keep.strict, default, chosen, sing, src.lang))
    return out


def classify_choice(choice: PlaceChoice) -> str | None:
    """Re-derive the (M)-label of ``choice`` from its data; ``None`` if no condition fits."""
    if choice.case == EDP_CASE:
        return EDP_CASE if choice.chosen == choice.default else None
    case = mutation_case(choice.fiber_x, choice.fiber_s)
    allowed = {tuple(choice.default)}
    alt = swap_set(case, choice.fiber_s, choice.strict, choice.default)
    if alt is not None:
        allowed.add(alt)
    if tuple(choice.chosen) not in allowed:
        return None
    if not is_negative_definite(choice.graph.subgraph(choice.chosen)):
        return None
    return case


# ---------------------------------------------------------------- plans -----

@dataclass(frozen=True)
class MutationPlan:
    choices: tuple[PlaceChoice, ...]
    status: str = "OK"
    reason: str = ""

    @property
    def unsupported(self) -> bool:
        return self.status == UNSUPPORTED

    @property
    def identity(self) -> bool:
        return all(c.action == KEEP for c in self.choices)

    @property
    def swapped(self) -> tuple[str, ...]:
        return tuple(c.place for c in self.choices if c.action == SWAP)

    def choice(self, place: str) -> PlaceChoice:
        for c in self.choices:
            if c.place == place:
                return c
        raise KeyError(place)

    @property
    def total_tau(self) -> int | None:
        taus = [c.tau for c in self.choices]
        return None if any(t is None for t in taus) else sum(taus)

    def singularity_names(self) -> list[str]:
        return [n for c in self.choices for n in c.singularity_names()]

    def format(self) -> str:
        """The ``.plan`` text of this plan."""
        return "".join(c.line() + "\n" for c in self.choices)


def _status(profile: PullbackProfile) -> tuple[str, str]:
    tenc = [p.place for p in profile.places if p.src.lang == "10C"]
    if tenc:
        return UNSUPPORTED, f"Lang type 10C at place {', '.join(tenc)}: no good mutation is known"
    return "OK", ""


def enumerate_mutations(profile: PullbackProfile) -> list[MutationPlan]:
    """All plans: the Cartesian product of the per-place options, identity first."""
    if not profile.places:
        raise RejectionError("profile has no singular places")
    if any(p.elliptic for p in profile.places) and len(profile.places) > 1:
        raise RejectionError("an elliptic singularity must be the only singular place")
    status, reason = _status(profile)
    options = [place_options(p) for p in profile.places]
    return [MutationPlan(tuple(combo), status, reason) for combo in product(*options)]


def parse_plan(text: str, profile: PullbackProfile) -> MutationPlan:
    """Read ``place=<v> case=M<k> keep|swap`` lines; unlisted places keep ``E'``."""
    wanted: dict[str, tuple[str, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"place=(\S+)\s+case=(\S+)\s+(keep|swap)", line)
        if not m:
            raise ParseError(f"line {lineno}: expected 'place=<v> case=M<k> keep|swap'")
        if m.group(1) in wanted:
            raise ParseError(f"line {lineno}: place {m.group(1)} listed twice")
        wanted[m.group(1)] = (m.group(2), m.group(3))
    known = {p.place for p in profile.places}
    extra = set(wanted) - known
    if extra:
        raise RejectionError(f"plan names unknown place(s): {', '.join(sorted(extra))}")
    status, reason = _status(profile)
    choices = []
    for pp in profile.places:
        opts = place_options(pp)
        case, action = wanted.get(pp.place, (opts[0].case, KEEP))
        if case != opts[0].case:
            raise RejectionError(f"place {pp.place} falls under {opts[0].case}, not {case}")
        match = [o for o in opts if o.action == action]
        if not match:
            raise RejectionError(f"{case} at place {pp.place} has no '{action}' option")
        choices.append(match[0])
    return MutationPlan(tuple(choices), status, reason)


# ------------------------------------------------------- (E) conditions -----

@dataclass(frozen=True)
class EConditionReport:
    status: dict
    total_tau: int | None
    singularities: tuple[str, ...]
    notes: tuple[str, ...] = ()
    plan_status: str = "OK"

    @property
    def ok(self) -> bool:
        """(E1), (E2) and (E6) hold; the remaining ones are not failures."""
        return (
            self.status["E2"] == PASS
            and self.status["E6"] == PASS
            and self.status["E1"] == IMPLIED
            and FAIL not in self.status.values()
        )

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        out = [f"{k}: {v}" for k, v in self.status.items()]
        out.append(f"total_tau={self.total_tau}")
        if self.plan_status != "OK":
            out.append(f"status={self.plan_status}")
        out.extend(f"note: {n}" for n in self.notes)
        return out


def check_E_conditions(plan: MutationPlan, profile: PullbackProfile | None = None,
                       certificate=None) -> EConditionReport:
    """Combinatorial (E1)-(E7) for the contraction of ``E`` chosen by ``plan``.

    ``certificate`` is the outcome of :func:`verify_good_mutation` (or of
    :func:`verify_edp_flop`); without it (E5) stays pending.
    """
    notes = []
    status = {}
    tau = plan.total_tau
    status["E2"] = PASS if tau == 24 else FAIL
    if tau != 24:
        notes.append(f"total Tjurina number {tau}, not 24")
    bad = [n for c in plan.choices if not c.zariski() for n in c.singularity_names()]
    status["E6"] = PASS if not bad else FAIL
    if bad:
        notes.append("not Zariski: " + ", ".join(bad))
    status["E1"] = IMPLIED if not bad else FAIL
    elliptic = any(c.case == EDP_CASE for c in plan.choices)
    status["E3"] = BY_CONSTRUCTION if elliptic else NA
    status["E4"] = BY_CONSTRUCTION if elliptic else NA
    if plan.unsupported:
        status["E5"] = UNSUPPORTED
        notes.append(plan.reason)
    elif certificate is None:
        status["E5"] = PENDING
    else:
        status["E5"] = PASS if certificate else FAIL
        if not certificate:
            notes.extend(certificate.failures)
    status["E7"] = EXCLUDED if status["E5"] == PASS else PENDING
    if profile is not None and profile.total_tau is not None and plan.total_tau != profile.total_tau:
        notes.append(f"plan changes the total Tjurina number {profile.total_tau} -> {plan.total_tau}")
    order = ("E1", "E2", "E3", "E4", "E5", "E6", "E7")
    return EConditionReport({k: status[k] for k in order}, tau, tuple(plan.singularity_names()),
                            tuple(notes), plan.status)


# ---------------------------------------------------------- certificates ----

@dataclass(frozen=True)
class SectionClaim:
    """Heights and J-level incidences claimed for the sections of a certificate."""

    components: dict = field(default_factory=dict)  # name -> {place: component of J_b}
    dot_o: dict = field(default_factory=dict)  # name -> (P·O) on J
    dots: dict = field(default_factory=dict)  # frozenset({P, Q}) -> (P·Q) on J
    heights: dict = field(default_factory=dict)  # name -> <P,P>
    pairings: dict = field(default_factory=dict)  # (P, Q) -> <P,Q>

    def __bool__(self):
        return bool(self.heights or self.pairings)


@dataclass(frozen=True)
class GoodMutationCertificate:
    """A curve ``F = Σ n_i C_i`` on ``S`` built from fiber components and sections.

    ``sections`` maps a section name to the ``S_a`` component it meets at
    each place (component 0 where unlisted).  ``dots`` are intersection
    numbers of sections on ``S``; sections have self-intersection -2.
    """

    claimed_type: str
    degree: int
    curve: tuple  # ((node, multiplicity), ...); node is a section name or (place, component)
    sections: dict
    dots: dict = field(default_factory=dict)
    concurrent: tuple = ()
    claims: SectionClaim = field(default_factory=SectionClaim)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    label: str | None = None
    degree: int | None = None
    failures: tuple[str, ...] = ()
    checks: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        head = f"verified={'true' if self.ok else 'false'}"
        if self.label:
            head += f" type={self.label}"
        if self.degree is not None:
            head += f" degree={self.degree}"
        return [head] + [f"ok: {c}" for c in self.checks] + [f"failed: {f}" for f in self.failures]


def _global_graph(plan: MutationPlan, cert: GoodMutationCertificate):
    """All fiber components of ``S`` plus the certificate's sections as one graph."""
    nodes: list = []
    index: dict = {}
    self_int: list[int] = []
    kinds: list[str] = []
    edges: list[tuple[int, int, int]] = []
    tangent, concurrent = set(), set()
    for c in plan.choices:
        base = len(nodes)
        G = c.graph
        for i in range(G.size):
            index[(c.place, i)] = len(nodes)
            nodes.append((c.place, i))
            self_int.append(G.self_int[i])
            kinds.append(G.kinds[i])
        edges.extend((base + i, base + j, m) for i, j, m in G.edges)
        tangent |= {frozenset(base + v for v in e) for e in G.tangent}
        concurrent |= {frozenset(base + v for v in t) for t in G.concurrent}
    for name in sorted(cert.sections):
        index[name] = len(nodes)
        nodes.append(name)
        self_int.append(-2)
        kinds.append("smooth")
    for name, met in cert.sections.items():
        for c in plan.choices:
            comp = met.get(c.place, 0)
            tpl = kodaira_template(c.fiber_s)
            if not 0 <= comp < tpl.m or tpl.mult[comp] != 1:
                raise RejectionError(
                    f"section {name} meets component {comp} of {c.fiber_s} at {c.place}, "
                    "which is not a simple component"
                )
            edges.append((index[name], index[(c.place, comp)], 1))
    for key, value in cert.dots.items():
        a, b = sorted(key)
        if a not in index or b not in index:
            raise RejectionError(f"intersection number given for unknown section(s) {a}, {b}")
        if value < 0:
            raise RejectionError("distinct sections meet nonnegatively")
        edges.append((index[a], index[b], value))
    for triple in cert.concurrent:
        concurrent.add(frozenset(index[_node_key(t)] for t in triple))
    G = IntersectionGraph(tuple(self_int), tuple(edges), tuple(kinds),
                          frozenset(tangent), frozenset(concurrent))
    return G, index


def _node_key(node):
    return node if isinstance(node, str) else (node[0], node[1])


def verify_good_mutation(plan: MutationPlan, cert: GoodMutationCertificate) -> VerificationResult:
    """Conditions (i)-(iii) for ``F``: allowed canonical type, positive degree,
    and every component of ``E`` inside ``F`` or disjoint from it."""
    if isinstance(cert, EdpFlopCertificate):
        return verify_edp_flop(plan, cert)
    if plan.unsupported:
        return VerificationResult(False, failures=(f"{UNSUPPORTED}: {plan.reason}",))
    if any(c.case == EDP_CASE for c in plan.choices):
        return VerificationResult(False, failures=("elliptic place: use an EDP flop certificate",))
    failures, checks = [], []
    G, index = _global_graph(plan, cert)
    mult = [0] * G.size
    for node, n in cert.curve:
        key = _node_key(node)
        if key not in index:
            raise RejectionError(f"curve refers to unknown component {node}")
        if n <= 0:
            raise RejectionError("curve multiplicities must be positive")
        mult[index[key]] += n
    res = canonical_type_check(G, mult)
    if not res.ok:
        failures.append(f"(i) not a curve of canonical type: {res.reason}")
    elif not res.allowed:
        failures.append(f"(i) type {res.label} is not one of I_n, I*_odd, IV, IV*")
    elif res.label != cert.claimed_type:
        failures.append(f"(i) curve has type {res.label}, certificate claims {cert.claimed_type}")
    else:
        checks.append(f"(i) canonical type {res.label}")
    degree = sum(n for node, n in cert.curve if isinstance(node, str))
    if degree <= 0:
        failures.append("(ii) degree over the base is 0")
    elif degree != cert.degree:
        failures.append(f"(ii) degree is {degree}, certificate claims {cert.degree}")
    else:
        checks.append(f"(ii) degree {degree}")
    support = {i for i, n in enumerate(mult) if n}
    M = G.matrix()
    bad = []
    for c in plan.choices:
        for v in c.chosen:
            i = index[(c.place, v)]
            if i not in support and any(M[i][j] for j in support):
                bad.append(f"{c.place}/{v}")
    if bad:
        failures.append("(iii) components of E meet F without lying in it: " + ", ".join(bad))
    else:
        checks.append("(iii) every component of E lies in F or is disjoint from it")
    if cert.claims:
        rep = disjoint_section_constraints(plan, cert.claims)
        checks.extend(rep.checks)
        failures.extend(rep.failures)
    return VerificationResult(not failures, res.label, degree, tuple(failures), tuple(checks))


# ------------------------------------------------------ section heights -----

@dataclass(frozen=True)
class ConstraintReport:
    ok: bool
    checks: tuple[str, ...]
    failures: tuple[str, ...]
    forced: dict

    def __bool__(self):
        return self.ok


def _incidence(plan_or_config, claims: SectionClaim) -> SectionIncidence:
    if isinstance(plan_or_config, MutationPlan):
        config = KodairaConfiguration(
            tuple(c.fiber_x for c in plan_or_config.choices),
            tuple(c.place for c in plan_or_config.choices),
        )
    else:
        config = plan_or_config
    names = set(claims.components) | set(claims.dot_o) | set(claims.heights)
    names |= {n for pair in claims.pairings for n in pair}
    sections = {
        n: Section(n, dict(claims.components.get(n, {})), claims.dot_o.get(n, 0)) for n in names
    }
    return SectionIncidence(config, sections, dict(claims.dots))


def _narrow(inc: SectionIncidence, name: str) -> bool:
    return not any(inc.sections[name].components.values())


def disjoint_section_constraints(plan_or_config, claims: SectionClaim) -> ConstraintReport:
    """Check claimed heights against the incidences and the Mordell-Weil lattice.

    Each ``<P,P>`` and ``<P,Q>`` is recomputed from the height formula and
    must agree exactly; each claimed height must be a norm in the shipped
    Mordell-Weil lattice (the narrow lattice when ``P`` meets only zero
    components).  ``forced`` lists the values of ``(P·O)`` and ``(P·Q)``
    the claimed heights force.
    """
    inc = _incidence(plan_or_config, claims)
    inc.validate()
    checks, failures, forced = [], [], {}
    roots = trivial_lattice(inc.config).roots
    lookup = mw_lookup(roots)
    for name, h in sorted(claims.heights.items()):
        h = Fraction(h)
        P = inc.sections[name]
        try:
            forced[f"({name}.O)"] = required_dot_o(inc, name, h)
        except InconsistencyError as exc:
            failures.append(str(exc))
        got = height_pairing(inc, name)
        contr = 2 + 2 * P.dot_o - got
        if got == h:
            checks.append(f"<{name},{name}> = 2 + 2*{P.dot_o} - {contr} = {h}")
        else:
            failures.append(f"<{name},{name}> = 2 + 2*{P.dot_o} - {contr} = {got}, claimed {h}")
        if lookup.missing:
            checks.append(f"no shipped Mordell-Weil row for T = {roots}; norm {h} not checked")
            continue
        narrow = _narrow(inc, name)
        kind = "narrow lattice" if narrow else "Mordell-Weil lattice"
        hits = [e.no for e in lookup.entries if _has_norm(e.narrow if narrow else e.mw, h)]
        if hits:
            checks.append(f"norm {h} occurs in the {kind} of No. {', '.join(map(str, hits))}")
        else:
            failures.append(f"norm {h} does not occur in the {kind} for T = {roots}")
    for (p, q), value in sorted(claims.pairings.items()):
        value = Fraction(value)
        try:
            forced[f"({p}.{q})"] = required_dot(inc, p, q, value)
        except InconsistencyError as exc:
            failures.append(str(exc))
            continue
        key = frozenset({p, q})
        if key in inc.dots:
            got = height_pairing(inc, p, q)
            if got == value:
                checks.append(f"<{p},{q}> = {value}")
            else:
                failures.append(f"<{p},{q}> = {got} from the incidences, claimed {value}")
        else:
            checks.append(f"<{p},{q}> = {value} forces ({p}.{q}) = {forced[f'({p}.{q})']}")
    return ConstraintReport(not failures, tuple(checks), tuple(failures), forced)


def _has_norm(L: GramLattice, h: Fraction) -> bool:
    if not L.rank or h <= 0:
        return False
    return any(L.norm(v) == h for v in L.short_vectors(h))


# ------------------------------------------------------------- EDP flop -----

@dataclass(frozen=True)
class EdpFlopCertificate:
    """Flop data for the elliptic double point of a pulled-back 9C fiber.

    ``graph`` holds the fiber components of the non-minimal resolution and
    one extra section; ``curve`` is the half-fiber ``C`` of the new fibration
    (the fiber itself is ``multiple * C``).  ``quasi_dot`` is ``(P·P')`` for
    the two sections a quasi-elliptic structure would produce.
    """

    graph: IntersectionGraph
    fiber: tuple[int, ...]
    default: tuple[int, ...]
    chosen: tuple[int, ...]
    curve: tuple[int, ...]
    multiple: int = 2
    degree: int = 2
    quasi_dot: int = 3


def verify_edp_flop(plan: MutationPlan, cert: EdpFlopCertificate) -> VerificationResult:
    failures, checks = [], []
    G = cert.graph
    if len(plan.choices) != 1 or plan.choices[0].case != EDP_CASE:
        failures.append("plan is not a single elliptic-double-point place")
    elif plan.total_tau != 24:
        failures.append(f"elliptic double point has tau {plan.total_tau}, expected 24")
    else:
        checks.append("single elliptic double point, tau = 24")
    fiber = [1 if i in cert.fiber else 0 for i in range(G.size)]
    M = G.matrix()
    if all(sum(M[i][j] * fiber[j] for j in range(G.size)) == 0 for i in cert.fiber):
        checks.append("fiber components form a fiber class")
    else:
        failures.append("fiber components do not form a fiber class")
    for name, part in (("E'", cert.default), ("E", cert.chosen)):
        sub = G.subgraph(part)
        if not is_negative_definite(sub):
            failures.append(f"{name} is not negative definite")
        elif fundamental_genus(sub) != 1:
            failures.append(f"{name} does not contract to an elliptic singularity")
        else:
            checks.append(f"{name} is negative definite with fundamental genus 1")
    if set(cert.default) == set(cert.chosen):
        failures.append("E coincides with E'")
    C = list(cert.curve)
    support = [i for i, n in enumerate(C) if n]
    sub = G.subgraph(support)
    if not all(sum(M[i][j] * C[j] for j in range(G.size)) == 0 for i in support):
        failures.append("C is not numerically trivial on its components")
    elif not is_negative_semidefinite(sub):
        failures.append("C is not negative semidefinite")
    else:
        k = canonical_degrees(G)
        pa = 1 + (G.dot(C, C) + sum(n * d for n, d in zip(C, k))) // 2
        if pa != 1:
            failures.append(f"C has arithmetic genus {pa}")
        else:
            checks.append("C has self-intersection 0 and arithmetic genus 1")
    deg = cert.multiple * G.dot(C, fiber)
    if deg <= 0 or deg != cert.degree:
        failures.append(f"degree {deg} of {cert.multiple}C over the base (claimed {cert.degree})")
    else:
        checks.append(f"{cert.multiple}C has degree {deg} over the base")
    outside = [v for v in cert.chosen if v not in support and any(M[v][j] for j in support)]
    if outside:
        failures.append(f"components {outside} of E meet C without lying in it")
    else:
        checks.append("every component of E lies in C or is disjoint from it")
    # a quasi-elliptic pencil would give sections P, P' disjoint from O with (P·P') = quasi_dot
    inc = SectionIncidence(
        KodairaConfiguration(("II",), ("a",)),
        {"P": Section("P"), "Q": Section("Q")},
        {frozenset({"P", "Q"}): cert.quasi_dot},
    )
    gram = GramLattice((
        (height_pairing(inc, "P"), height_pairing(inc, "P", "Q")),
        (height_pairing(inc, "Q", "P"), height_pairing(inc, "Q")),
    ))
    mw = mw_lookup("0").entries[0].mw
    if gram.determinant() == 0 and mw.is_positive_definite():
        checks.append(f"quasi-elliptic case excluded: height Gram {gram.format()} is degenerate "
                      f"inside the positive definite lattice {_name(mw)}")
    else:
        failures.append(f"height Gram {gram.format()} does not exclude the quasi-elliptic case")
    return VerificationResult(not failures, "EDP", deg, tuple(failures), tuple(checks))


def _name(L: GramLattice) -> str:
    return "E8" if L.rank == 8 and L.determinant() == 1 else f"of rank {L.rank}"


def edp_flop_certificate() -> EdpFlopCertificate:
    """``D1 - D2 - D3`` (self-intersections -1, -2, -1, ``D2`` cuspidal) and a section ``Q`` through ``D2``."""
    G = IntersectionGraph(
        (-1, -2, -1, -1),
        ((0, 1, 1), (1, 2, 1), (1, 3, 1)),
        ("smooth", "cusp", "smooth", "smooth"),
    )
    return EdpFlopCertificate(G, fiber=(0, 1, 2), default=(1, 2), chosen=(0, 1), curve=(1, 1, 0, 1))


# ------------------------------------------------------------ .cert text ----

def parse_certificate(text: str):
    """Read a ``.cert`` file into a :class:`GoodMutationCertificate` or an EDP flop certificate.

    Good-mutation keys::

        type = I3*                   claimed canonical type of F
        degree = 2
        curve = O:1 P:1 0/2:2        sections by name, fiber components as place/index
        section P: 0=1 inf=3         S_a component met at each place (default 0)
        dot O P = 1                  intersection of sections on S
        concurrent = O P 0/0
        jsection P: 0=1 o=0          J-level components and (P·O), for heights
        jdot P Q = 1
        height P = 4
        pair P Q = -2/3

    An EDP flop certificate has ``kind = edp`` followed by an ``.igr`` block
    and the keys ``fiber``, ``default``, ``chosen``, ``curve``, ``multiple``,
    ``degree`` and ``quasi_dot``.
    """
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if any(re.fullmatch(r"kind\s*=\s*edp", ln) for ln in lines):
        return _parse_edp(lines)
    return _parse_good(lines)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split())
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_edp(lines) -> EdpFlopCertificate:
    data, igr = {}, []
    for ln in lines:
        k, _, v = (s.strip() for s in ln.partition("="))
        if k in ("vertices", "self", "genus", "edges", "concurrent"):
            igr.append(ln)
        elif k != "kind":
            data[k] = v
    G, _ = parse_igr("\n".join(igr))
    try:
        return EdpFlopCertificate(
            G,
            fiber=_ints(data["fiber"]),
            default=_ints(data["default"]),
            chosen=_ints(data["chosen"]),
            curve=_ints(data["curve"]),
            multiple=int(data.get("multiple", 2)),
            degree=int(data.get("degree", 2)),
            quasi_dot=int(data.get("quasi_dot", 3)),
        )
    except KeyError as exc:
        raise ParseError(f"EDP certificate lacks {exc}") from None


def _node(tok: str):
    if "/" in tok:
        place, comp = tok.split("/", 1)
        if not comp.isdigit():
            raise ParseError(f"bad component {tok!r}")
        return (place, int(comp))
    return tok


def _incidences(text: str) -> dict:
    out = {}
    for tok in text.split():
        if "=" not in tok:
            raise ParseError(f"expected place=component, got {tok!r}")
        place, comp = tok.split("=", 1)
        try:
            out[place] = int(comp)
        except ValueError:
            raise ParseError(f"bad component in {tok!r}") from None
    return out


def _parse_good(lines) -> GoodMutationCertificate:
    claimed = degree = None
    curve, sections, dots, concurrent = [], {}, {}, []
    comps, dot_o, jdots, heights, pairings = {}, {}, {}, {}, {}
    for ln in lines:
        if m := re.fullmatch(r"(j?section)\s+(\S+)\s*:(.*)", ln):
            inc = _incidences(m.group(3))
            if m.group(1) == "section":
                sections[m.group(2)] = inc
            else:
                if "o" in inc:
                    dot_o[m.group(2)] = inc.pop("o")
                comps[m.group(2)] = inc
            continue
        k, eq, v = (s.strip() for s in ln.partition("="))
        if not eq:
            raise ParseError(f"expected 'key = value': {ln!r}")
        words = k.split()
        try:
            if k == "type":
                claimed = v
            elif k == "degree":
                degree = int(v)
            elif k == "curve":
                for tok in v.split():
                    node, _, n = tok.rpartition(":")
                    if not node:
                        raise ParseError(f"bad curve entry {tok!r}")
                    curve.append((_node(node), int(n)))
            elif k == "concurrent":
                concurrent.append(tuple(_node(t) for t in v.split()))
            elif words[0] in ("dot", "jdot") and len(words) == 3:
                (dots if words[0] == "dot" else jdots)[frozenset(words[1:])] = int(v)
            elif words[0] == "height" and len(words) == 2:
                heights[words[1]] = Fraction(v)
            elif words[0] == "pair" and len(words) == 3:
                pairings[(words[1], words[2])] = Fraction(v)
            else:
                raise ParseError(f"unknown certificate key {k!r}")
        except ValueError as exc:
            raise ParseError(f"{ln!r}: {exc}") from None
    if claimed is None or degree is None or not curve:
        raise ParseError("certificate needs 'type', 'degree' and 'curve'")
    for node, _ in curve:
        if isinstance(node, str) and node not in sections:
            sections[node] = {}
    claims = SectionClaim(comps, dot_o, jdots, heights, pairings)
    return GoodMutationCertificate(claimed, degree, tuple(curve), sections, dots,
                                   tuple(concurrent), claims)

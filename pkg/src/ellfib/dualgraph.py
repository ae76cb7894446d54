"""Weighted dual graphs of curve configurations on surfaces.

A vertex carries its self-intersection and a kind: ``"smooth"`` for a smooth
rational curve, ``"cusp"`` or ``"node"`` for a rational curve of arithmetic
genus one.  Edges carry intersection numbers; an edge may be flagged as a
tangency, and a triple of vertices may be flagged as meeting in one point.
These flags are all that distinguishes III from I2 and IV from I3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

import networkx as nx
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from .errors import ParseError, RejectionError

KINDS = ("smooth", "cusp", "node")


@dataclass(frozen=True)
class IntersectionGraph:
    """Intersection data ``Φ = (E_i·E_j)`` of a configuration of curves."""

    self_int: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...] = ()
    kinds: tuple[str, ...] = ()
    tangent: frozenset = frozenset()
    concurrent: frozenset = frozenset()

    def __post_init__(self):
        r = len(self.self_int)
        if not self.kinds:
            object.__setattr__(self, "kinds", ("smooth",) * r)
        if len(self.kinds) != r or any(k not in KINDS for k in self.kinds):
            raise RejectionError("bad vertex kinds")
        norm = {}
        for i, j, m in self.edges:
            if i == j or not (0 <= i < r and 0 <= j < r) or m < 0:
                raise RejectionError(f"bad edge {i}-{j}:{m}")
            key = (min(i, j), max(i, j))
            norm[key] = norm.get(key, 0) + m
        object.__setattr__(
            self, "edges", tuple((i, j, m) for (i, j), m in sorted(norm.items()) if m)
        )

    @property
    def size(self) -> int:
        return len(self.self_int)

    @property
    def genus(self) -> tuple[int, ...]:
        return tuple(0 if k == "smooth" else 1 for k in self.kinds)

    def matrix(self) -> list[list[int]]:
        r = self.size
        M = [[0] * r for _ in range(r)]
        for i, s in enumerate(self.self_int):
            M[i][i] = s
        for i, j, m in self.edges:
            M[i][j] += m
            M[j][i] += m
        return M

    def neighbours(self, i: int) -> list[int]:
        out = []
        for a, b, _ in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out

    def is_connected(self, vertices=None) -> bool:
        vs = set(range(self.size) if vertices is None else vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vs

    def components(self, vertices=None) -> list[list[int]]:
        vs = set(range(self.size) if vertices is None else vertices)
        out = []
        while vs:
            start = min(vs)
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbours(v):
                    if w in vs and w not in comp:
                        comp.add(w)
                        stack.append(w)
            vs -= comp
            out.append(sorted(comp))
        return out

    def subgraph(self, vertices) -> "IntersectionGraph":
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        return IntersectionGraph(
            tuple(self.self_int[v] for v in vs),
            tuple((pos[i], pos[j], m) for i, j, m in self.edges if i in pos and j in pos),
            tuple(self.kinds[v] for v in vs),
            frozenset(frozenset(pos[v] for v in e) for e in self.tangent if e <= set(pos)),
            frozenset(frozenset(pos[v] for v in t) for t in self.concurrent if t <= set(pos)),
        )

    def with_self(self, i: int, value: int, kind: str | None = None) -> "IntersectionGraph":
        s = list(self.self_int)
        s[i] = value
        k = list(self.kinds)
        if kind:
            k[i] = kind
        return IntersectionGraph(tuple(s), self.edges, tuple(k), self.tangent, self.concurrent)

    def dot(self, a, b) -> int:
        M = self.matrix()
        return sum(a[i] * M[i][j] * b[j] for i in range(self.size) for j in range(self.size))


Cycle = tuple  # nonnegative integer coefficient per vertex


# ----------------------------------------------------- definiteness -------

def _leading_minors(M) -> list[Fraction]:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    minors = []
    det = Fraction(1)
    for k in range(n):
        piv = A[k][k]
        if piv == 0:
            # a zero pivot means the k-th leading minor vanishes
            minors.append(Fraction(0))
            minors.extend(_slow_minors(M, k + 1))
            return minors
        det *= piv
        minors.append(det)
        for i in range(k + 1, n):
            f = A[i][k] / piv
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return minors


def _slow_minors(M, start):
    out = []
    for k in range(start + 1, len(M) + 1):
        out.append(Fraction(int(Matrix([row[:k] for row in M[:k]]).det())))
    return out


def is_negative_definite(G: IntersectionGraph) -> bool:
    """Sylvester's criterion applied to ``-Φ``."""
    neg = [[-x for x in row] for row in G.matrix()]
    return all(m > 0 for m in _leading_minors(neg))


def is_negative_semidefinite(G: IntersectionGraph) -> bool:
    """Exact symmetric elimination on ``-Φ``; a zero pivot needs a zero row."""
    A = [[Fraction(-x) for x in row] for row in G.matrix()]
    n = len(A)
    for k in range(n):
        piv = A[k][k]
        if piv < 0:
            return False
        if piv == 0:
            if any(A[k][j] for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = A[i][k] / piv
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return True


# --------------------------------------------------- fundamental cycle ----

def fundamental_cycle(G: IntersectionGraph) -> Cycle:
    """Artin's algorithm: start at ``ΣE_i`` and add ``E_i`` while ``Z·E_i > 0``."""
    if not G.is_connected():
        raise RejectionError("graph is not connected")
    if not is_negative_definite(G):
        raise RejectionError("intersection matrix is not negative definite")
    M = G.matrix()
    Z = [1] * G.size
    while True:
        for i in range(G.size):
            if sum(M[i][j] * Z[j] for j in range(G.size)) > 0:
                Z[i] += 1
                break
        else:
            return tuple(Z)


def canonical_degrees(G: IntersectionGraph) -> list[int]:
    """``K·E_i = -E_i^2 - 2 + 2 p_a(E_i)`` by adjunction."""
    return [-s - 2 + 2 * g for s, g in zip(G.self_int, G.genus)]


def fundamental_genus(G: IntersectionGraph) -> int:
    """``h^1(O_Z) = 1 - χ(O_Z)`` with ``χ(O_Z) = -(Z^2 + Z·K)/2``."""
    Z = fundamental_cycle(G)
    z2 = G.dot(Z, Z)
    zk = sum(n * k for n, k in zip(Z, canonical_degrees(G)))
    chi = Fraction(-(z2 + zk), 2)
    return int(1 - chi)


@dataclass(frozen=True)
class SingularLocus:
    pairs: tuple[tuple[int, int], ...]
    multiple: tuple[int, ...]


def fundamental_singular_locus(G: IntersectionGraph) -> SingularLocus:
    """Intersecting pairs of components plus the components with ``n_i > 1``."""
    Z = fundamental_cycle(G)
    pairs = tuple((i, j) for i, j, _ in G.edges)
    return SingularLocus(pairs, tuple(i for i, n in enumerate(Z) if n > 1))


# ----------------------------------------------------------- Smith ---------

def smith_group(G: IntersectionGraph) -> list[int]:
    """Elementary divisors of ``Φ`` (zeros for a degenerate matrix)."""
    from sympy.polys.domains import ZZ

    factors = invariant_factors(Matrix(G.matrix()), domain=ZZ)
    divisors = sorted(abs(int(x)) for x in factors if int(x) != 0)
    zeros = G.size - len(divisors)
    return divisors + [0] * zeros


def smith_order(divisors) -> int:
    out = 1
    for d in divisors:
        out *= d
    return out


def annihilated_by(divisors, p: int) -> bool:
    return all(d != 0 and p % d == 0 for d in divisors)


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------- templates -----

def _chain(n, start=0):
    return [(start + i, start + i + 1, 1) for i in range(n - 1)]


@lru_cache(maxsize=None)
def ade_graph(label: str) -> IntersectionGraph:
    """ADE configuration of (-2)-curves in Bourbaki numbering (``"A3"``, ``"E8"``...)."""
    fam, n = label[0], int(label[1:])
    if fam == "A" and n >= 1:
        edges = _chain(n)
    elif fam == "D" and n >= 4:
        edges = _chain(n - 1) + [(n - 3, n - 1, 1)]
    elif fam == "E" and n in (6, 7, 8):
        edges = [(0, 2, 1), (1, 3, 1)] + [(i, i + 1, 1) for i in range(2, n - 1)]
    else:
        raise KeyError(label)
    return IntersectionGraph((-2,) * n, tuple(edges))


@dataclass(frozen=True)
class FiberTemplate:
    """Kodaira fiber graph with fiber multiplicities; vertex 0 has multiplicity one."""

    label: str
    graph: IntersectionGraph
    mult: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.graph.size

    def simple_components(self) -> list[int]:
        return [i for i, n in enumerate(self.mult) if n == 1]


def parse_kodaira(label: str) -> tuple[str, int]:
    """Split ``"I3"``, ``"I2*"``, ``"IV*"`` into (family, index)."""
    label = label.strip()
    if label in ("II", "III", "IV", "IV*", "III*", "II*"):
        return label, 0
    m = re.fullmatch(r"I(\d+)(\*?)", label)
    if not m:
        raise ParseError(f"unknown Kodaira type {label!r}")
    return ("I*" if m.group(2) else "I"), int(m.group(1))


def component_count(label: str) -> int:
    fam, n = parse_kodaira(label)
    return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}.get(fam) or (
        n if fam == "I" else n + 5
    )


@lru_cache(maxsize=None)
def kodaira_template(label: str) -> FiberTemplate:
    fam, n = parse_kodaira(label)
    if fam == "I":
        if n < 1:
            raise KeyError("I0 has a smooth fiber")
        if n == 1:
            return FiberTemplate(label, IntersectionGraph((0,), (), ("node",)), (1,))
        if n == 2:
            return FiberTemplate(label, IntersectionGraph((-2, -2), ((0, 1, 2),)), (1, 1))
        edges = _chain(n) + [(n - 1, 0, 1)]
        return FiberTemplate(label, IntersectionGraph((-2,) * n, tuple(edges)), (1,) * n)
    if fam == "II":
        return FiberTemplate(label, IntersectionGraph((0,), (), ("cusp",)), (1,))
    if fam == "III":
        g = IntersectionGraph((-2, -2), ((0, 1, 2),), tangent=frozenset({frozenset({0, 1})}))
        return FiberTemplate(label, g, (1, 1))
    if fam == "IV":
        g = IntersectionGraph(
            (-2,) * 3, ((0, 1, 1), (0, 2, 1), (1, 2, 1)),
            concurrent=frozenset({frozenset({0, 1, 2})}),
        )
        return FiberTemplate(label, g, (1, 1, 1))
    if fam == "I*":
        r = n + 5
        last = n + 2
        edges = [(0, 2, 1), (1, 2, 1)] + _chain(n + 1, 2) + [(last, n + 3, 1), (last, n + 4, 1)]
        mult = (1, 1) + (2,) * (n + 1) + (1, 1)
        return FiberTemplate(label, IntersectionGraph((-2,) * r, tuple(edges)), mult)
    if fam == "IV*":
        edges = [(0, 3, 1), (1, 4, 1), (2, 5, 1), (3, 6, 1), (4, 6, 1), (5, 6, 1)]
        return FiberTemplate(label, IntersectionGraph((-2,) * 7, tuple(edges)), (1, 1, 1, 2, 2, 2, 3))
    if fam == "III*":
        edges = _chain(7) + [(3, 7, 1)]
        return FiberTemplate(label, IntersectionGraph((-2,) * 8, tuple(edges)), (1, 2, 3, 4, 3, 2, 1, 2))
    if fam == "II*":
        edges = _chain(8) + [(5, 8, 1)]
        return FiberTemplate(
            label, IntersectionGraph((-2,) * 9, tuple(edges)), (1, 2, 3, 4, 5, 6, 4, 2, 3)
        )
    raise KeyError(label)  # pragma: no cover


EDP_CHAIN = "EDP-CHAIN"


def edp_chain_graph() -> IntersectionGraph:
    """Chain of a (-1)-curve, a cuspidal (-2)-curve and a (-1)-curve."""
    return IntersectionGraph((-1, -2, -1), ((0, 1, 1), (1, 2, 1)), ("smooth", "cusp", "smooth"))


def _to_nx(G: IntersectionGraph) -> nx.Graph:
    H = nx.Graph()
    conc = {v for t in G.concurrent for v in t}
    for i, (s, k) in enumerate(zip(G.self_int, G.kinds)):
        H.add_node(i, key=(s, k, i in conc))
    for i, j, m in G.edges:
        H.add_edge(i, j, key=(m, frozenset({i, j}) in G.tangent))
    return H


def isomorphic(G1: IntersectionGraph, G2: IntersectionGraph) -> bool:
    if G1.size != G2.size or len(G1.edges) != len(G2.edges):
        return False
    if len(G1.concurrent) != len(G2.concurrent):
        return False
    return nx.is_isomorphic(
        _to_nx(G1), _to_nx(G2),
        node_match=lambda a, b: a["key"] == b["key"],
        edge_match=lambda a, b: a["key"] == b["key"],
    )


def isomorphism(G1: IntersectionGraph, G2: IntersectionGraph) -> dict | None:
    """A vertex map ``G1 -> G2`` preserving all decorations, if one exists."""
    if not isomorphic(G1, G2):
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(
        _to_nx(G1), _to_nx(G2),
        node_match=lambda a, b: a["key"] == b["key"],
        edge_match=lambda a, b: a["key"] == b["key"],
    )
    return next(matcher.isomorphisms_iter())


def candidate_labels(size: int) -> list[str]:
    out = []
    if size >= 1:
        out.append(f"A{size}")
    if size >= 4:
        out.append(f"D{size}")
    if size in (6, 7, 8):
        out.append(f"E{size}")
    fib = {1: ["I1", "II"], 2: ["I2", "III"], 3: ["I3", "IV"], 7: ["IV*"], 8: ["III*"], 9: ["II*"]}
    out.extend(fib.get(size, []))
    if size >= 4:
        out.append(f"I{size}")
    if size >= 5:
        out.append(f"I{size - 5}*")
    return out


def template_graph(label: str) -> IntersectionGraph:
    if label == EDP_CHAIN:
        return edp_chain_graph()
    if label[0] in "ADE" and label[1:].isdigit():
        return ade_graph(label)
    return kodaira_template(label).graph


def recognize(G: IntersectionGraph) -> str | None:
    """Name of the stored template isomorphic to ``G``, or ``None``."""
    labels = candidate_labels(G.size)
    if G.size == 3:
        labels.append(EDP_CHAIN)
    for label in labels:
        if isomorphic(G, template_graph(label)):
            return label
    return None


def ade_type(G: IntersectionGraph) -> str | None:
    label = recognize(G)
    return label if label and label[0] in "ADE" and label != EDP_CHAIN else None


def ade_decomposition(G: IntersectionGraph, vertices) -> list[str]:
    """ADE labels of the connected pieces of the induced subgraph (``None`` if not ADE)."""
    out = []
    for comp in G.components(vertices):
        t = ade_type(G.subgraph(comp))
        if t is None:
            raise RejectionError(f"component {comp} is not an ADE configuration")
        out.append(t)
    return sorted(out, key=_ade_sort_key)


def _ade_sort_key(label):
    return ("ADE".index(label[0]), int(label[1:]))


def almost_minimal_graph(fiber_type: str) -> IntersectionGraph:
    """Exceptional graph of the elliptic singularity of an almost-minimal equation.

    The minimal-model fiber graph with the self-intersection of one
    multiplicity-one component lowered by one (0 becomes -1, -2 becomes -3).
    """
    tpl = kodaira_template(fiber_type)
    i = tpl.simple_components()[0]
    return tpl.graph.with_self(i, tpl.graph.self_int[i] - 1)


ALLOWED_CANONICAL = "I_n, I*_odd, IV, IV*"


def allowed_canonical_type(label: str | None) -> bool:
    if label is None or label[0] in "ADE" or label == EDP_CHAIN:
        return False
    fam, n = parse_kodaira(label)
    return fam == "I" or (fam == "I*" and n % 2 == 1) or fam in ("IV", "IV*")


@dataclass(frozen=True)
class CanonicalTypeResult:
    ok: bool
    label: str | None
    allowed: bool
    reason: str = ""

    def __bool__(self):
        return self.ok and self.allowed


def canonical_type_check(G: IntersectionGraph, mult) -> CanonicalTypeResult:
    """Check that ``D = Σ n_i E_i`` is a curve of canonical type and name its type."""
    mult = tuple(mult)
    if len(mult) != G.size or any(n < 0 for n in mult):
        return CanonicalTypeResult(False, None, False, "bad multiplicities")
    support = [i for i, n in enumerate(mult) if n > 0]
    if not support:
        return CanonicalTypeResult(False, None, False, "empty cycle")
    if not G.is_connected(support):
        return CanonicalTypeResult(False, None, False, "support is not connected")
    M = G.matrix()
    for i in support:
        if sum(M[i][j] * mult[j] for j in range(G.size)) != 0:
            return CanonicalTypeResult(False, None, False, f"D·E_{i} != 0")
    sub = G.subgraph(support)
    label = recognize(sub)
    if label is None or label[0] in "ADE" or label == EDP_CHAIN:
        return CanonicalTypeResult(False, label, False, "no Kodaira template matches")
    tpl = kodaira_template(label)
    iso = isomorphism(sub, tpl.graph)
    sub_mult = [mult[v] for v in support]
    g = 0
    for x in sub_mult:
        g = gcd(g, x)
    if g != 1 or any(sub_mult[i] != tpl.mult[iso[i]] for i in range(len(support))):
        return CanonicalTypeResult(False, label, False, "multiplicities differ from the fiber class")
    return CanonicalTypeResult(True, label, allowed_canonical_type(label))


# ------------------------------------------------------------ file I/O -----

def parse_igr(text: str) -> tuple[IntersectionGraph, tuple[int, ...] | None]:
    """Read the ``.igr`` format: ``vertices``, ``self``, ``genus``, ``edges``, ``mult``.

    Genus flags are ``0`` (smooth rational), ``1`` or ``c`` (cuspidal) and
    ``n`` (nodal).  Edges are ``i-j:m``; a trailing ``t`` marks a tangency.
    An optional ``concurrent = i j k`` line flags a triple point.
    """
    data: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value': {line!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        data[k] = v
    try:
        r = int(data["vertices"])
        self_int = tuple(int(x) for x in data.get("self", "").split())
        if len(self_int) != r:
            raise ParseError("self-intersection count differs from vertex count")
        flags = data.get("genus", " ".join(["0"] * r)).split()
        if len(flags) != r:
            raise ParseError("genus flag count differs from vertex count")
        kinds = tuple({"0": "smooth", "1": "cusp", "c": "cusp", "n": "node"}[f] for f in flags)
        edges, tangent = [], set()
        for tok in data.get("edges", "").split():
            m = re.fullmatch(r"(\d+)-(\d+)(?::(\d+))?(t?)", tok)
            if not m:
                raise ParseError(f"bad edge token {tok!r}")
            i, j = int(m.group(1)), int(m.group(2))
            edges.append((i, j, int(m.group(3) or 1)))
            if m.group(4):
                tangent.add(frozenset({i, j}))
        concurrent = set()
        if "concurrent" in data:
            concurrent.add(frozenset(int(x) for x in data["concurrent"].split()))
        mult = tuple(int(x) for x in data["mult"].split()) if "mult" in data else None
    except KeyError as exc:
        raise ParseError(f"missing or bad field {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    G = IntersectionGraph(self_int, tuple(edges), kinds, frozenset(tangent), frozenset(concurrent))
    if mult is not None and len(mult) != r:
        raise ParseError("multiplicity count differs from vertex count")
    return G, mult


def format_igr(G: IntersectionGraph, mult=None) -> str:
    flag = {"smooth": "0", "cusp": "c", "node": "n"}
    lines = [
        f"vertices = {G.size}",
        "self = " + " ".join(str(s) for s in G.self_int),
        "genus = " + " ".join(flag[k] for k in G.kinds),
        "edges = " + " ".join(
            f"{i}-{j}:{m}" + ("t" if frozenset({i, j}) in G.tangent else "") for i, j, m in G.edges
        ),
    ]
    for t in G.concurrent:
        lines.append("concurrent = " + " ".join(str(v) for v in sorted(t)))
    if mult is not None:
        lines.append("mult = " + " ".join(str(n) for n in mult))
    return "\n".join(lines) + "\n"

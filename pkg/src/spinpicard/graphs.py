"""Dual graphs of nodal curves, subcurve invariants, and the basic inequality.

A connected projective nodal curve is encoded by its dual graph: one vertex per
irreducible component carrying that component's arithmetic genus ``pa`` (its own
self-nodes included) and its number of self-nodes, plus a symmetric table
``k(u, v)`` counting nodes that join two distinct components.

Degree bounds are exact.  Every lower bound ``m(Y)`` is a `fractions.Fraction`
and all comparisons happen in exact rational arithmetic; no floats are used
anywhere in this module.

All classes are immutable (or immutable by convention) and all operations are
pure functions of their arguments, so values can be shared freely across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import DomainError, GraphError, GraphTooLargeError

__all__ = [
    "MAX_SUBSET_VERTICES",
    "Vertex",
    "DualGraph",
    "Multidegree",
    "SubcurveProfile",
    "BIViolation",
    "BIReport",
    "validate_graph",
    "arithmetic_genus",
    "is_stable",
    "subcurve_profile",
    "basic_inequality",
    "enumerate_multidegrees",
    "iter_subcurves",
]

#: Default cap on the vertex count of graphs fed to exhaustive subset scans.
#: Operations that enumerate all 2^n - 1 subcurves accept ``max_vertices`` to
#: override it explicitly.
MAX_SUBSET_VERTICES = 12

Subcurve = frozenset


@dataclass(frozen=True)
class Vertex:
    """One irreducible component: identifier, arithmetic genus, self-node count.

    ``pa`` is the arithmetic genus of the (possibly singular) component itself,
    so it already accounts for the component's ``self_nodes``; the geometric
    genus is ``pa - self_nodes`` and must be non-negative.
    """

    id: str
    pa: int
    self_nodes: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise GraphError(f"vertex id must be a non-empty string, got {self.id!r}")
        for field in ("pa", "self_nodes"):
            value = getattr(self, field)
            if isinstance(value, bool) or not isinstance(value, int):
                raise GraphError(f"vertex {self.id!r}: {field} must be an integer")
            if value < 0:
                raise GraphError(f"vertex {self.id!r}: {field} must be non-negative")
        if self.pa < self.self_nodes:
            raise GraphError(
                f"vertex {self.id!r}: pa={self.pa} is smaller than "
                f"self_nodes={self.self_nodes} (geometric genus would be negative)"
            )


VertexLike = Union[Vertex, tuple]
EdgeTable = Union[Mapping[tuple, int], Iterable[tuple]]


class DualGraph:
    """Weighted dual graph of a connected nodal curve.

    Instances are immutable by convention: no method mutates the graph after
    construction, and derived data is memoized on first use.
    """

    def __init__(self, vertices: Iterable[VertexLike], edges: EdgeTable = ()) -> None:
        vs = []
        for v in vertices:
            vs.append(v if isinstance(v, Vertex) else Vertex(*v))
        if not vs:
            raise GraphError("a dual graph needs at least one vertex")
        vs.sort(key=lambda v: v.id)
        ids = tuple(v.id for v in vs)
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise GraphError(f"duplicate vertex ids: {', '.join(dupes)}")

        adjacency: dict[str, dict[str, int]] = {i: {} for i in ids}
        seen: dict[frozenset, int] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for entry in items:
            if isinstance(edges, Mapping):
                (u, v), mult = entry
            else:
                u, v, mult = entry
            if u not in adjacency or v not in adjacency:
                missing = u if u not in adjacency else v
                raise GraphError(f"edge ({u!r}, {v!r}) references unknown vertex {missing!r}")
            if u == v:
                raise GraphError(
                    f"edge ({u!r}, {v!r}): a node of a component with itself "
                    f"belongs in self_nodes, not in the edge table"
                )
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 0:
                raise GraphError(f"edge ({u!r}, {v!r}): multiplicity must be a non-negative integer")
            key = frozenset((u, v))
            if key in seen:
                if seen[key] != mult:
                    raise GraphError(
                        f"asymmetric multiplicities for pair ({u!r}, {v!r}): "
                        f"{seen[key]} vs {mult}"
                    )
                raise GraphError(f"duplicate edge entry for pair ({u!r}, {v!r})")
            seen[key] = mult
            if mult:
                adjacency[u][v] = mult
                adjacency[v][u] = mult

        self._vertices: tuple[Vertex, ...] = tuple(vs)
        self._ids: tuple[str, ...] = ids
        self._index: dict[str, int] = {vid: i for i, vid in enumerate(ids)}
        self._adjacency = adjacency
        self._check_connected()

    # -- structure ---------------------------------------------------------

    def _check_connected(self) -> None:
        todo = [self._ids[0]]
        reached = {self._ids[0]}
        while todo:
            for nbr in self._adjacency[todo.pop()]:
                if nbr not in reached:
                    reached.add(nbr)
                    todo.append(nbr)
        if len(reached) != len(self._ids):
            stranded = sorted(set(self._ids) - reached)
            raise GraphError(f"graph is disconnected; unreachable vertices: {', '.join(stranded)}")

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def ids(self) -> tuple[str, ...]:
        """Vertex identifiers in sorted order; the canonical coordinate order."""
        return self._ids

    @property
    def n(self) -> int:
        return len(self._ids)

    def index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise GraphError(f"unknown vertex id {vid!r}") from None

    def vertex(self, vid: str) -> Vertex:
        return self._vertices[self.index(vid)]

    def pa(self, vid: str) -> int:
        return self.vertex(vid).pa

    def self_nodes(self, vid: str) -> int:
        return self.vertex(vid).self_nodes

    def k(self, u: str, v: str) -> int:
        """Number of nodes joining the distinct components u and v."""
        self.index(u)
        self.index(v)
        if u == v:
            return 0
        return self._adjacency[u].get(v, 0)

    def contact(self, vid: str) -> int:
        """Total number of nodes joining vid to all other components."""
        return sum(self._adjacency[vid].values())

    def neighbors(self, vid: str) -> tuple[str, ...]:
        self.index(vid)
        return tuple(sorted(self._adjacency[vid]))

    def pairs(self) -> Iterator[tuple[str, str, int]]:
        """Yield (u, v, multiplicity) with u < v for every joined pair, sorted."""
        for i, u in enumerate(self._ids):
            for v in self._ids[i + 1:]:
                mult = self._adjacency[u].get(v, 0)
                if mult:
                    yield u, v, mult

    @cached_property
    def _matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self._adjacency[u].get(v, 0) for v in self._ids) for u in self._ids
        )

    @cached_property
    def _contacts(self) -> tuple[int, ...]:
        return tuple(self.contact(v) for v in self._ids)

    @cached_property
    def genus(self) -> int:
        """Arithmetic genus: sum(pa_i) + sum(k_ij over pairs) - n + 1."""
        nodes = sum(m for _, _, m in self.pairs())
        return sum(v.pa for v in self._vertices) + nodes - self.n + 1

    # -- conversions -------------------------------------------------------

    def to_dict(self) -> dict:
        """The documented JSON object form of this graph."""
        return {
            "vertices": [
                {"id": v.id, "pa": v.pa, "self_nodes": v.self_nodes} for v in self._vertices
            ],
            "edges": [
                {"u": u, "v": v, "multiplicity": m} for u, v, m in self.pairs()
            ],
        }

    def relabeled(self, mapping: Mapping[str, str]) -> "DualGraph":
        """Copy of the graph with vertex ids renamed through an injective map."""
        if sorted(mapping) != sorted(self._ids) or len(set(mapping.values())) != self.n:
            raise GraphError("relabeling must be a bijection defined on every vertex id")
        vs = [Vertex(mapping[v.id], v.pa, v.self_nodes) for v in self._vertices]
        es = [(mapping[u], mapping[v], m) for u, v, m in self.pairs()]
        return DualGraph(vs, es)

    def _canonical(self) -> tuple:
        return (self._vertices, tuple(self.pairs()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DualGraph):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        return f"DualGraph({self.n} vertices, genus {self.genus})"


def validate_graph(raw) -> DualGraph:
    """Parse a raw graph description (JSON object form) into a DualGraph.

    Expected shape::

        {"vertices": [{"id": "a", "pa": 1, "self_nodes": 0}, ...],
         "edges":    [{"u": "a", "v": "b", "multiplicity": 2}, ...]}

    ``self_nodes`` defaults to 0 when omitted.  Duplicate vertex ids, duplicate
    or asymmetric edge entries, unknown endpoints, non-positive multiplicities,
    pa < self_nodes, and disconnected graphs are all rejected.
    """
    if isinstance(raw, DualGraph):
        return raw
    if not isinstance(raw, Mapping):
        raise GraphError("graph description must be a JSON object")
    unknown = set(raw) - {"vertices", "edges"}
    if unknown:
        raise GraphError(f"unknown top-level fields: {', '.join(sorted(unknown))}")

    verts_raw = raw.get("vertices")
    if not isinstance(verts_raw, list) or not verts_raw:
        raise GraphError("'vertices' must be a non-empty array")
    vertices = []
    for i, entry in enumerate(verts_raw):
        if not isinstance(entry, Mapping):
            raise GraphError(f"vertices[{i}] must be an object")
        extra = set(entry) - {"id", "pa", "self_nodes"}
        if extra:
            raise GraphError(f"vertices[{i}]: unknown fields: {', '.join(sorted(extra))}")
        if "id" not in entry or "pa" not in entry:
            raise GraphError(f"vertices[{i}]: 'id' and 'pa' are required")
        vertices.append(Vertex(entry["id"], entry["pa"], entry.get("self_nodes", 0)))

    edges_raw = raw.get("edges", [])
    if not isinstance(edges_raw, list):
        raise GraphError("'edges' must be an array")
    triples = []
    for i, entry in enumerate(edges_raw):
        if not isinstance(entry, Mapping):
            raise GraphError(f"edges[{i}] must be an object")
        extra = set(entry) - {"u", "v", "multiplicity"}
        if extra:
            raise GraphError(f"edges[{i}]: unknown fields: {', '.join(sorted(extra))}")
        for field in ("u", "v", "multiplicity"):
            if field not in entry:
                raise GraphError(f"edges[{i}]: '{field}' is required")
        mult = entry["multiplicity"]
        if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
            raise GraphError(f"edges[{i}]: multiplicity must be a positive integer")
        triples.append((entry["u"], entry["v"], mult))

    return DualGraph(vertices, triples)


def arithmetic_genus(graph: DualGraph) -> int:
    """Arithmetic genus of the curve the graph encodes."""
    return graph.genus


def is_stable(graph: DualGraph) -> bool:
    """Deligne-Mumford stability: every component satisfies 2*pa - 2 + contact > 0.

    With pa counted on the component itself (self-nodes included), this single
    formula covers both the rational case (needs at least 3 contact points) and
    the genus-one case (needs at least 1).
    """
    return all(2 * v.pa - 2 + graph.contact(v.id) > 0 for v in graph.vertices)


# -- multidegrees ----------------------------------------------------------


@dataclass(frozen=True)
class Multidegree:
    """An integer degree per vertex, stored as id-sorted (id, degree) pairs."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        norm = tuple(sorted(self.items))
        ids = [vid for vid, _ in norm]
        if len(set(ids)) != len(ids):
            raise GraphError("multidegree assigns a vertex id twice")
        for vid, deg in norm:
            if not isinstance(vid, str) or not vid:
                raise GraphError(f"multidegree key must be a non-empty string, got {vid!r}")
            if isinstance(deg, bool) or not isinstance(deg, int):
                raise GraphError(f"degree of {vid!r} must be an integer, got {deg!r}")
        object.__setattr__(self, "items", norm)

    @classmethod
    def of(cls, degrees: Mapping[str, int]) -> "Multidegree":
        return cls(tuple(degrees.items()))

    @classmethod
    def from_values(cls, graph: DualGraph, values: Sequence[int]) -> "Multidegree":
        """Pair values with the graph's vertex ids in sorted-id order."""
        if len(values) != graph.n:
            raise GraphError(
                f"multidegree has {len(values)} entries but the graph has "
                f"{graph.n} vertices (order: {', '.join(graph.ids)})"
            )
        return cls(tuple(zip(graph.ids, values)))

    @property
    def total(self) -> int:
        return sum(d for _, d in self.items)

    def __getitem__(self, vid: str) -> int:
        for key, deg in self.items:
            if key == vid:
                return deg
        raise KeyError(vid)

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def values(self, ids: Sequence[str]) -> tuple[int, ...]:
        table = self.as_dict()
        return tuple(table[i] for i in ids)

    def degree_on(self, subcurve: Iterable[str]) -> int:
        """Total degree carried by the components in the subcurve."""
        table = self.as_dict()
        return sum(table[v] for v in subcurve)


def _check_multidegree(graph: DualGraph, md: Multidegree) -> None:
    have = {vid for vid, _ in md.items}
    want = set(graph.ids)
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        parts = []
        if missing:
            parts.append(f"missing vertices: {', '.join(missing)}")
        if extra:
            parts.append(f"unknown vertices: {', '.join(extra)}")
        raise GraphError(f"multidegree does not match the graph ({'; '.join(parts)})")


# -- subcurves -------------------------------------------------------------


@dataclass(frozen=True)
class SubcurveProfile:
    """Invariants of one subcurve Y (any nonempty set of components).

    ``lower`` is the exact rational m(Y) = d/(g-1) * (g(Y) - 1 + k(Y)/2) - k(Y)/2;
    together with ``contact`` = k(Y) it bounds the admissible degree on Y:
    m(Y) <= d(Y) <= m(Y) + k(Y), both ends included.
    """

    subcurve: frozenset
    genus: int
    contact: int
    lower: Fraction
    degree: Optional[int] = None

    @property
    def upper(self) -> Fraction:
        return self.lower + self.contact


def _as_subcurve(graph: DualGraph, subcurve: Iterable[str]) -> frozenset:
    Y = frozenset(subcurve)
    if not Y:
        raise GraphError("a subcurve must contain at least one component")
    for vid in Y:
        graph.index(vid)
    return Y


def _subcurve_numbers(graph: DualGraph, members: Sequence[int]) -> tuple[int, int]:
    """(genus, contact) of the subcurve given by vertex indices."""
    matrix = graph._matrix
    internal = 0
    deg = 0
    for a, i in enumerate(members):
        row = matrix[i]
        deg += graph._contacts[i]
        for j in members[a + 1:]:
            internal += row[j]
    pa_sum = sum(graph.vertices[i].pa for i in members)
    g_y = pa_sum + internal - len(members) + 1
    k_y = deg - 2 * internal
    return g_y, k_y


def subcurve_profile(
    graph: DualGraph,
    subcurve: Iterable[str],
    d_total: int,
    multidegree: Optional[Multidegree] = None,
) -> SubcurveProfile:
    """Genus, contact count, and exact degree bounds for one subcurve.

    The subcurve may be disconnected; its genus is computed from the same
    additive formula as the whole graph.  Requires total genus >= 2, since the
    lower bound divides by g - 1.
    """
    Y = _as_subcurve(graph, subcurve)
    g = graph.genus
    if g <= 1:
        raise DomainError(f"degree bounds need total arithmetic genus >= 2, got {g}")
    members = sorted(graph.index(v) for v in Y)
    g_y, k_y = _subcurve_numbers(graph, members)
    lower = Fraction(d_total, g - 1) * (g_y - 1 + Fraction(k_y, 2)) - Fraction(k_y, 2)
    degree: Optional[int] = None
    if multidegree is not None:
        _check_multidegree(graph, multidegree)
        if multidegree.total != d_total:
            raise GraphError(
                f"multidegree total {multidegree.total} does not match d_total {d_total}"
            )
        degree = multidegree.degree_on(Y)
    return SubcurveProfile(subcurve=Y, genus=g_y, contact=k_y, lower=lower, degree=degree)


@dataclass(frozen=True)
class BIViolation:
    """One subcurve whose degree falls outside [m(Y), m(Y) + k(Y)]."""

    subcurve: frozenset
    degree: int
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class BIReport:
    """Outcome of checking the basic inequality on every nonempty subcurve."""

    satisfied: bool
    violations: tuple[BIViolation, ...]


def _check_cap(graph: DualGraph, max_vertices: Optional[int]) -> None:
    limit = MAX_SUBSET_VERTICES if max_vertices is None else max_vertices
    if graph.n > limit:
        raise GraphTooLargeError(
            f"graph has {graph.n} vertices; subset scans are capped at {limit} "
            f"(pass max_vertices / --max-vertices to raise the cap)"
        )


def iter_subcurves(
    graph: DualGraph,
    *,
    proper: bool = False,
    max_vertices: Optional[int] = None,
) -> Iterator[frozenset]:
    """All nonempty subcurves in a deterministic order (ascending bitmask
    over the id-sorted vertex list).  With ``proper=True`` the full curve is
    skipped."""
    _check_cap(graph, max_vertices)
    ids = graph.ids
    n = graph.n
    top = (1 << n) - 1
    for mask in range(1, top + 1):
        if proper and mask == top:
            continue
        yield frozenset(ids[i] for i in range(n) if mask >> i & 1)


def basic_inequality(
    graph: DualGraph,
    multidegree: Multidegree,
    *,
    max_vertices: Optional[int] = None,
) -> BIReport:
    """Check m(Y) <= d(Y) <= m(Y) + k(Y) on every nonempty subcurve.

    Every subset of components is tested, disconnected ones included, the full
    curve too (where the bounds are trivially tight).  Arithmetic is exact, so
    equality at either end is detected reliably.
    """
    _check_multidegree(graph, multidegree)
    _check_cap(graph, max_vertices)
    g = graph.genus
    if g <= 1:
        raise DomainError(f"degree bounds need total arithmetic genus >= 2, got {g}")
    d_total = multidegree.total
    ids = graph.ids
    n = graph.n
    matrix = graph._matrix
    contacts = graph._contacts
    pa = tuple(v.pa for v in graph.vertices)
    dvec = multidegree.values(ids)
    ratio = Fraction(d_total, g - 1)

    violations = []
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        internal = 0
        deg = 0
        pa_sum = 0
        d_y = 0
        for a, i in enumerate(members):
            row = matrix[i]
            deg += contacts[i]
            pa_sum += pa[i]
            d_y += dvec[i]
            for j in members[a + 1:]:
                internal += row[j]
        g_y = pa_sum + internal - len(members) + 1
        k_y = deg - 2 * internal
        lower = ratio * (g_y - 1 + Fraction(k_y, 2)) - Fraction(k_y, 2)
        upper = lower + k_y
        if not lower <= d_y <= upper:
            violations.append(
                BIViolation(
                    subcurve=frozenset(ids[i] for i in members),
                    degree=d_y,
                    lower=lower,
                    upper=upper,
                )
            )
    return BIReport(satisfied=not violations, violations=tuple(violations))


def enumerate_multidegrees(
    graph: DualGraph,
    d_total: int,
    *,
    max_vertices: Optional[int] = None,
) -> list[Multidegree]:
    """All integer multidegrees of the given total that satisfy the basic
    inequality, in lexicographic order over the id-sorted coordinates.

    Per-vertex boxes come from the singleton subcurves; candidates inside the
    boxes with the right total are then filtered through the full subset check.
    Requires a stable graph of genus >= 2.
    """
    if isinstance(d_total, bool) or not isinstance(d_total, int):
        raise DomainError(f"total degree must be an integer, got {d_total!r}")
    g = graph.genus
    if g <= 1:
        raise DomainError(f"degree bounds need total arithmetic genus >= 2, got {g}")
    if not is_stable(graph):
        raise DomainError("multidegree enumeration expects a stable graph")
    _check_cap(graph, max_vertices)

    ids = graph.ids
    n = graph.n
    lo = []
    hi = []
    for vid in ids:
        prof = subcurve_profile(graph, {vid}, d_total)
        lo.append(math.ceil(prof.lower))
        hi.append(math.floor(prof.upper))
    suffix_lo = [0] * (n + 1)
    suffix_hi = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_lo[i] = suffix_lo[i + 1] + lo[i]
        suffix_hi[i] = suffix_hi[i + 1] + hi[i]

    found: list[Multidegree] = []
    stack: list[int] = []

    def descend(i: int, remaining: int) -> None:
        if i == n:
            md = Multidegree.from_values(graph, stack)
            if basic_inequality(graph, md, max_vertices=max_vertices).satisfied:
                found.append(md)
            return
        for value in range(lo[i], hi[i] + 1):
            rest = remaining - value
            if suffix_lo[i + 1] <= rest <= suffix_hi[i + 1]:
                stack.append(value)
                descend(i + 1, rest)
                stack.pop()

    descend(0, d_total)
    return found

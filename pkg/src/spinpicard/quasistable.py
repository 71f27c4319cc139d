"""Blow-up models of stable curves and their spin-degree combinatorics.

Blowing up a node inserts an exceptional component: a smooth rational curve
meeting the rest of the curve in exactly two points.  A node between distinct
components u, v becomes an exceptional vertex joined once to each; a self-node
of v becomes an exceptional vertex joined to v with multiplicity 2, and v's
arithmetic genus drops by one.  Exceptional vertices are pairwise disjoint,
which the expanded graph encodes by never joining two of them.

On such a model with twist parameter t, the canonical spin multidegree is

    d(v) = (2t+1) * (pa(v) - 1) + t * contact(v) + core_contact(v) / 2

on non-exceptional vertices and 1 on exceptional ones, where contact counts
all incident nodes and core_contact only those shared with non-exceptional
neighbors.  The halving is why spin parity (every core_contact even) is
required.

The boundary predicates at the end of the module answer, in two independent
ways each, whether a subcurve sits at an end of its admissible degree range,
whether the model is GIT-stable, and whether its orbit is closed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

from .errors import BlowupError, DomainError, GraphError, ParityError
from .graphs import (
    DualGraph,
    Multidegree,
    Vertex,
    _as_subcurve,
    _check_cap,
    iter_subcurves,
    subcurve_profile,
)

__all__ = [
    "BlowupConfig",
    "QuasistableGraph",
    "ExceptionalProfile",
    "BoundaryCase",
    "expand",
    "contract",
    "spin_parity",
    "spin_multidegree",
    "exceptional_profile",
    "boundary_case",
    "git_stable",
    "git_stable_exhaustive",
    "orbit_closed_check",
    "iter_blowup_configs",
    "check_t",
]

#: Twists below this bound are outside the supported regime; reachable only
#: through unsafe_t=True (the CLI's --unsafe-t), and then still >= 0.
MIN_T = 10


def check_t(t: int, *, unsafe_t: bool = False) -> None:
    if isinstance(t, bool) or not isinstance(t, int):
        raise DomainError(f"twist t must be an integer, got {t!r}")
    if unsafe_t:
        if t < 0:
            raise DomainError(f"twist t must be non-negative even in unsafe mode, got {t}")
        return
    if t < MIN_T:
        raise DomainError(
            f"twist t must be at least {MIN_T} (got {t}); "
            f"pass unsafe_t=True / --unsafe-t to explore smaller values"
        )


def _pair(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class BlowupConfig:
    """Which nodes of a stable graph get blown up.

    ``s`` maps an unordered pair of vertex ids to the number of their shared
    nodes to blow up; ``r`` maps a vertex id to the number of its self-nodes to
    blow up.  Entries with count zero are dropped.  Immutable by convention.
    """

    def __init__(self, s=None, r=None) -> None:
        self._s: dict[tuple[str, str], int] = {}
        self._r: dict[str, int] = {}
        if s:
            items = s.items() if isinstance(s, Mapping) else s
            for key, count in items:
                u, v = key
                self._record(self._s, _pair(u, v), count, f"s[{u}, {v}]")
                if u == v:
                    raise BlowupError(f"s[{u}, {v}]: use r for self-nodes")
        if r:
            items = r.items() if isinstance(r, Mapping) else r
            for vid, count in items:
                self._record(self._r, vid, count, f"r[{vid}]")

    @staticmethod
    def _record(table: dict, key, count: int, label: str) -> None:
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise BlowupError(f"{label}: count must be a non-negative integer")
        if key in table:
            raise BlowupError(f"{label}: duplicate entry")
        if count:
            table[key] = count

    def s(self, u: str, v: str) -> int:
        return self._s.get(_pair(u, v), 0)

    def r(self, vid: str) -> int:
        return self._r.get(vid, 0)

    def s_items(self) -> tuple[tuple[str, str, int], ...]:
        return tuple((u, v, c) for (u, v), c in sorted(self._s.items()))

    def r_items(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(self._r.items()))

    @property
    def total(self) -> int:
        """Number of exceptional components the expansion will create."""
        return sum(self._s.values()) + sum(self._r.values())

    def validate(self, graph: DualGraph) -> None:
        for u, v, count in self.s_items():
            if count > graph.k(u, v):  # also rejects unknown ids via graph.k
                raise BlowupError(
                    f"s[{u}, {v}] = {count} exceeds the {graph.k(u, v)} nodes "
                    f"joining {u} and {v}"
                )
        for vid, count in self.r_items():
            if count > graph.self_nodes(vid):
                raise BlowupError(
                    f"r[{vid}] = {count} exceeds the {graph.self_nodes(vid)} "
                    f"self-nodes of {vid}"
                )

    @classmethod
    def from_dict(cls, raw) -> "BlowupConfig":
        """Parse the documented JSON object form.

        Shape: ``{"s": [{"u": ..., "v": ..., "count": ...}],
        "r": [{"vertex": ..., "count": ...}]}``; both arrays optional.
        """
        if not isinstance(raw, Mapping):
            raise BlowupError("blow-up description must be a JSON object")
        unknown = set(raw) - {"s", "r"}
        if unknown:
            raise BlowupError(f"unknown top-level fields: {', '.join(sorted(unknown))}")
        s_entries = []
        for i, entry in enumerate(raw.get("s", []) or []):
            if not isinstance(entry, Mapping) or set(entry) != {"u", "v", "count"}:
                raise BlowupError(f"s[{i}] must be an object with fields u, v, count")
            s_entries.append(((entry["u"], entry["v"]), entry["count"]))
        r_entries = []
        for i, entry in enumerate(raw.get("r", []) or []):
            if not isinstance(entry, Mapping) or set(entry) != {"vertex", "count"}:
                raise BlowupError(f"r[{i}] must be an object with fields vertex, count")
            r_entries.append((entry["vertex"], entry["count"]))
        return cls(s_entries, r_entries)

    def to_dict(self) -> dict:
        return {
            "s": [{"u": u, "v": v, "count": c} for u, v, c in self.s_items()],
            "r": [{"vertex": vid, "count": c} for vid, c in self.r_items()],
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlowupConfig):
            return NotImplemented
        return (self._s, self._r) == (other._s, other._r)

    def __hash__(self) -> int:
        return hash((self.s_items(), self.r_items()))

    def __repr__(self) -> str:
        return f"BlowupConfig(s={dict(self._s)!r}, r={dict(self._r)!r})"


PairOrigin = tuple  # ("pair", u, v) or ("self", v)


class QuasistableGraph(DualGraph):
    """Dual graph of a blow-up model, with its exceptional vertices flagged.

    Invariants enforced on construction: every exceptional vertex is rational
    (pa 0, no self-nodes) with total contact exactly 2, no two exceptional
    vertices are joined, and contracting them all recovers the source graph.
    """

    def __init__(
        self,
        vertices: Iterable,
        edges,
        *,
        exceptional: Iterable[str],
        origin: Mapping[str, PairOrigin],
        source: DualGraph,
        config: BlowupConfig,
    ) -> None:
        super().__init__(vertices, edges)
        self.exceptional = frozenset(exceptional)
        self.origin = dict(origin)
        self.source = source
        self.config = config
        self._spin_cache: dict[int, Multidegree] = {}

        for vid in sorted(self.exceptional):
            vert = self.vertex(vid)
            if vert.pa != 0 or vert.self_nodes != 0:
                raise GraphError(f"exceptional vertex {vid!r} must be smooth rational")
            if self.contact(vid) != 2:
                raise GraphError(
                    f"exceptional vertex {vid!r} must meet the rest of the curve "
                    f"in exactly 2 points, found {self.contact(vid)}"
                )
            for nbr in self.neighbors(vid):
                if nbr in self.exceptional:
                    raise GraphError(
                        f"exceptional vertices {vid!r} and {nbr!r} are joined; "
                        f"exceptional components must be pairwise disjoint"
                    )
        if set(self.origin) != set(self.exceptional):
            raise GraphError("origin table must cover exactly the exceptional vertices")
        if contract(self) != source:
            raise GraphError("contracting the exceptional vertices does not recover the source graph")

    @property
    def core_ids(self) -> tuple[str, ...]:
        """Non-exceptional vertex ids in sorted order."""
        return tuple(v for v in self.ids if v not in self.exceptional)

    def is_exceptional(self, vid: str) -> bool:
        self.index(vid)
        return vid in self.exceptional

    def core_contact(self, vid: str) -> int:
        """Nodes joining vid to non-exceptional components only."""
        return sum(
            m for nbr, m in self._adjacency[vid].items() if nbr not in self.exceptional
        )

    def __repr__(self) -> str:
        return (
            f"QuasistableGraph({self.n} vertices, {len(self.exceptional)} exceptional, "
            f"genus {self.genus})"
        )


def _fresh_id(base: str, taken: set) -> str:
    vid = base
    while vid in taken:
        vid = "_" + vid
    taken.add(vid)
    return vid


def expand(graph: DualGraph, config: BlowupConfig) -> QuasistableGraph:
    """Blow up the selected nodes, producing the quasistable model's graph.

    The arithmetic genus is preserved.  With an all-zero config the result has
    no exceptional vertices and equals the input graph.
    """
    config.validate(graph)
    taken = set(graph.ids)
    vertices: list[Vertex] = []
    for v in graph.vertices:
        r = config.r(v.id)
        vertices.append(Vertex(v.id, v.pa - r, v.self_nodes - r))

    edges: dict[tuple[str, str], int] = {}
    for u, v, mult in graph.pairs():
        rest = mult - config.s(u, v)
        if rest:
            edges[(u, v)] = rest

    exceptional: list[str] = []
    origin: dict[str, PairOrigin] = {}
    for u, v, count in config.s_items():
        for idx in range(1, count + 1):
            eid = _fresh_id(f"E({u}|{v})#{idx}", taken)
            vertices.append(Vertex(eid, 0, 0))
            edges[(eid, u)] = 1
            edges[(eid, v)] = 1
            exceptional.append(eid)
            origin[eid] = ("pair", u, v)
    for vid, count in config.r_items():
        for idx in range(1, count + 1):
            eid = _fresh_id(f"E({vid}|{vid})#{idx}", taken)
            vertices.append(Vertex(eid, 0, 0))
            edges[(eid, vid)] = 2
            exceptional.append(eid)
            origin[eid] = ("self", vid)

    return QuasistableGraph(
        vertices,
        edges,
        exceptional=exceptional,
        origin=origin,
        source=graph,
        config=config,
    )


def contract(q: QuasistableGraph) -> DualGraph:
    """Contract every exceptional vertex, restoring the node it replaced."""
    pa = {v: q.pa(v) for v in q.core_ids}
    self_nodes = {v: q.self_nodes(v) for v in q.core_ids}
    edges: dict[tuple[str, str], int] = {}
    for u, v, mult in q.pairs():
        if u not in q.exceptional and v not in q.exceptional:
            edges[(u, v)] = mult
    for eid in q.exceptional:
        kind = q.origin[eid][0]
        if kind == "pair":
            _, u, v = q.origin[eid]
            key = _pair(u, v)
            edges[key] = edges.get(key, 0) + 1
        else:
            _, v = q.origin[eid]
            pa[v] += 1
            self_nodes[v] += 1
    vertices = [Vertex(v, pa[v], self_nodes[v]) for v in q.core_ids]
    return DualGraph(vertices, edges)


def spin_parity(graph: DualGraph, config: BlowupConfig) -> bool:
    """Whether the blow-up admits a spin structure: every vertex must keep an
    even number of unblown nodes with other components.

    Self-node blow-ups are irrelevant to parity.
    """
    config.validate(graph)
    return all(
        (graph.contact(v) - sum(config.s(v, u) for u in graph.neighbors(v))) % 2 == 0
        for v in graph.ids
    )


def _core_contacts(q: QuasistableGraph) -> dict[str, int]:
    table = {}
    for vid in q.core_ids:
        c = q.core_contact(vid)
        if c % 2:
            raise ParityError(
                f"no spin structure: vertex {vid!r} keeps {c} nodes with "
                f"non-exceptional neighbors (odd)"
            )
        table[vid] = c
    return table


def spin_multidegree(q: QuasistableGraph, t: int, *, unsafe_t: bool = False) -> Multidegree:
    """The canonical spin multidegree of the model at twist t.

    Exceptional vertices carry degree 1; the total is (2t+1)(g-1).
    Raises ParityError when the model admits no spin structure.
    """
    check_t(t, unsafe_t=unsafe_t)
    if t in q._spin_cache:
        return q._spin_cache[t]
    core = _core_contacts(q)
    degrees = {}
    for vid in q.ids:
        if vid in q.exceptional:
            degrees[vid] = 1
        else:
            degrees[vid] = (
                (2 * t + 1) * (q.pa(vid) - 1) + t * q.contact(vid) + core[vid] // 2
            )
    md = Multidegree.of(degrees)
    expected = (2 * t + 1) * (q.genus - 1)
    if md.total != expected:
        raise RuntimeError(
            f"internal error: spin multidegree totals {md.total}, expected {expected}"
        )
    q._spin_cache[t] = md
    return md


@dataclass(frozen=True)
class ExceptionalProfile:
    """Exceptional-component bookkeeping for one subcurve Y of a blow-up model.

    components / core_components count the vertices of Y and its
    non-exceptional part; internal_nodes / core_internal_nodes count nodes
    between two distinct components of Y and between two non-exceptional ones;
    core_contact counts nodes joining Y's non-exceptional part to the
    non-exceptional part of the complement.
    """

    subcurve: frozenset
    components: int
    core_components: int
    internal_nodes: int
    core_internal_nodes: int
    core_contact: int


def exceptional_profile(q: QuasistableGraph, subcurve: Iterable[str]) -> ExceptionalProfile:
    Y = _as_subcurve(q, subcurve)
    members = sorted(Y)
    core_members = [v for v in members if v not in q.exceptional]
    internal = 0
    core_internal = 0
    for a, u in enumerate(members):
        row = q._adjacency[u]
        for v in members[a + 1:]:
            m = row.get(v, 0)
            internal += m
            if u not in q.exceptional and v not in q.exceptional:
                core_internal += m
    core_contact = 0
    for u in core_members:
        for nbr, m in q._adjacency[u].items():
            if nbr not in Y and nbr not in q.exceptional:
                core_contact += m
    profile = ExceptionalProfile(
        subcurve=Y,
        components=len(members),
        core_components=len(core_members),
        internal_nodes=internal,
        core_internal_nodes=core_internal,
        core_contact=core_contact,
    )
    # Each exceptional vertex inside Y owns two node slots, split between
    # nodes internal to Y and nodes leaving Y; these bounds are structural.
    excess = profile.internal_nodes - profile.core_internal_nodes
    inside_exceptional = 2 * (profile.components - profile.core_components)
    if excess > inside_exceptional:
        raise RuntimeError("internal error: exceptional node count exceeds its bound")
    k_y = sum(q._contacts[q.index(u)] for u in members) - 2 * internal
    if excess + (k_y - profile.core_contact) < inside_exceptional:
        raise RuntimeError("internal error: exceptional node slots unaccounted for")
    return profile


@dataclass(frozen=True)
class BoundaryCase:
    """Whether a subcurve's spin degree sits at an end of its admissible range.

    ``at_min`` / ``at_max`` come from exact comparison of the degree with the
    range ends; the two ``..._avoid_...`` flags are the structural clauses
    (combined with core_contact == 0 they characterize the same facts, and the
    constructor of this report has already cross-checked the two routes).
    """

    subcurve: frozenset
    degree: int
    lower: Fraction
    contact: int
    core_contact: int
    at_min: bool
    at_max: bool
    inner_exceptionals_avoid_complement: bool
    outer_exceptionals_avoid_subcurve: bool

    @property
    def upper(self) -> Fraction:
        return self.lower + self.contact


def boundary_case(
    q: QuasistableGraph,
    t: int,
    subcurve: Iterable[str],
    *,
    unsafe_t: bool = False,
) -> BoundaryCase:
    """Decide d(Y) = m(Y) and d(Y) = m(Y) + k(Y) for one subcurve, twice.

    Route one compares exact rationals; route two tests the structural
    characterization (core_contact zero plus the appropriate exceptional
    clause).  The routes must agree; disagreement raises RuntimeError, since it
    would mean the degree formulas and the combinatorics have come apart.
    """
    md = spin_multidegree(q, t, unsafe_t=unsafe_t)
    Y = _as_subcurve(q, subcurve)
    d_total = (2 * t + 1) * (q.genus - 1)
    prof = subcurve_profile(q, Y, d_total, md)
    ep = exceptional_profile(q, Y)

    inner_ok = True
    for eid in q.exceptional:
        if eid in Y and any(nbr not in Y for nbr in q.neighbors(eid)):
            inner_ok = False
            break
    outer_ok = True
    for eid in q.exceptional:
        if eid not in Y and any(nbr in Y for nbr in q.neighbors(eid)):
            outer_ok = False
            break

    at_min = prof.degree == prof.lower
    at_max = prof.degree == prof.upper
    struct_min = ep.core_contact == 0 and inner_ok
    struct_max = ep.core_contact == 0 and outer_ok
    if at_min != struct_min or at_max != struct_max:
        raise RuntimeError(
            f"internal error: boundary predicates disagree on Y={sorted(Y)} "
            f"(direct min/max {at_min}/{at_max}, structural {struct_min}/{struct_max})"
        )
    return BoundaryCase(
        subcurve=Y,
        degree=prof.degree,
        lower=prof.lower,
        contact=prof.contact,
        core_contact=ep.core_contact,
        at_min=at_min,
        at_max=at_max,
        inner_exceptionals_avoid_complement=inner_ok,
        outer_exceptionals_avoid_subcurve=outer_ok,
    )


def git_stable(q: QuasistableGraph, t: int, *, unsafe_t: bool = False) -> bool:
    """GIT stability of the spin model: the non-exceptional part is connected.

    The twist only needs to be in range; the verdict does not depend on it.
    """
    check_t(t, unsafe_t=unsafe_t)
    _core_contacts(q)  # spin-feasibility is a precondition
    core = q.core_ids
    reached = {core[0]}
    todo = [core[0]]
    while todo:
        for nbr, m in q._adjacency[todo.pop()].items():
            if m and nbr not in q.exceptional and nbr not in reached:
                reached.add(nbr)
                todo.append(nbr)
    return len(reached) == len(core)


def git_stable_exhaustive(
    q: QuasistableGraph,
    t: int,
    *,
    unsafe_t: bool = False,
    max_vertices: Optional[int] = None,
) -> bool:
    """Independent oracle for git_stable by full subcurve scan.

    Unstable exactly when some proper subcurve that is not a union of
    exceptional components attains the top of its degree range.  (The full
    curve always attains it trivially, hence 'proper'.)
    """
    check_t(t, unsafe_t=unsafe_t)
    for Y in iter_subcurves(q, proper=True, max_vertices=max_vertices):
        if Y <= q.exceptional:
            continue
        if boundary_case(q, t, Y, unsafe_t=unsafe_t).at_max:
            return False
    return True


def orbit_closed_check(
    q: QuasistableGraph,
    t: int,
    *,
    unsafe_t: bool = False,
    max_vertices: Optional[int] = None,
) -> bool:
    """Exhaustively verify the orbit-closure criterion.

    The orbit is closed when every subcurve attaining the bottom of its degree
    range has core_contact zero.  For spin models this holds universally, but
    the check is performed for real rather than returning a constant.
    """
    check_t(t, unsafe_t=unsafe_t)
    for Y in iter_subcurves(q, max_vertices=max_vertices):
        case = boundary_case(q, t, Y, unsafe_t=unsafe_t)
        if case.at_min and case.core_contact != 0:
            return False
    return True


def iter_blowup_configs(
    graph: DualGraph,
    *,
    spin_only: bool = False,
) -> Iterator[BlowupConfig]:
    """Every blow-up configuration of the graph, in a deterministic order.

    Ranges over all node subsets by count: each joined pair contributes
    0..k(u, v) and each vertex 0..self_nodes choices.  With ``spin_only`` the
    parity-infeasible ones are skipped.  The number of configurations is the
    product of those ranges, so keep the graph at desk scale.
    """
    pair_keys = [(u, v) for u, v, _ in graph.pairs()]
    pair_ranges = [range(graph.k(u, v) + 1) for u, v in pair_keys]
    self_keys = [v for v in graph.ids if graph.self_nodes(v)]
    self_ranges = [range(graph.self_nodes(v) + 1) for v in self_keys]
    for s_choice in itertools.product(*pair_ranges):
        for r_choice in itertools.product(*self_ranges):
            config = BlowupConfig(
                dict(zip(pair_keys, s_choice)), dict(zip(self_keys, r_choice))
            )
            if spin_only and not spin_parity(graph, config):
                continue
            yield config

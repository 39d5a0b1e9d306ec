# ksync/conflict_graph.py
"""Conflict graphs: XY dependency edges, the extended closure and SCC checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Union

import networkx as nx
import pydot

from ksync.errors import MissingDeviationVertices, NotCausalDelivery
from ksync.model.system import PI, Execution
from ksync.msc import MessageExchange, Msc, msc_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, order=True)
class SummaryNode:
    """Stands for every past unmatched send towards ``owner`` (or for the deviated message)."""

    owner: str
    deviated: bool = False

    @property
    def matched(self) -> bool:
        return False

    def __str__(self) -> str:
        return "pi^" if self.deviated else f"lambda[{self.owner}]"


Vertex = Union[MessageExchange, SummaryNode]
Edge = tuple[Vertex, str, Vertex]
ActionNode = tuple[Vertex, str]


def vertex_key(v: Vertex) -> tuple:
    if isinstance(v, SummaryNode):
        return (1, v.deviated, v.owner)
    return (0, v.send)


def actor(v: Vertex, side: str) -> str | None:
    """Process performing the S or R action of a real vertex."""
    if not isinstance(v, MessageExchange):
        return None
    if side == "S":
        return v.sender
    return v.receiver if v.matched else None


def actors(v: Vertex) -> set[str]:
    return {p for p in (actor(v, "S"), actor(v, "R")) if p is not None}


@dataclass(frozen=True)
class ConflictGraph:
    vertices: tuple[Vertex, ...]
    base: frozenset[Edge]
    ext: frozenset[Edge] = frozenset()
    extended: bool = False
    extra: frozenset[Edge] = field(default=frozenset())

    def has_base(self, u: Vertex, label: str, v: Vertex) -> bool:
        return (u, label, v) in self.base

    def has_ext(self, u: Vertex, label: str, v: Vertex) -> bool:
        return (u, label, v) in self.ext

    @cached_property
    def _ext_out(self) -> dict[tuple[Vertex, str], set[Vertex]]:
        out: dict[tuple[Vertex, str], set[Vertex]] = {}
        for u, label, v in self.ext:
            out.setdefault((u, label), set()).add(v)
        return out

    def ext_successors(self, v: Vertex, label: str) -> set[Vertex]:
        return set(self._ext_out.get((v, label), ()))

    def real_vertices(self) -> tuple[MessageExchange, ...]:
        return tuple(v for v in self.vertices if isinstance(v, MessageExchange))

    def by_message(self, message: str) -> MessageExchange:
        found = [v for v in self.real_vertices() if v.message == message]
        if len(found) != 1:
            raise KeyError(f"{len(found)} vertices carry message {message!r}")
        return found[0]

    def base_digraph(self, *, skip: Iterable[Edge] = ()) -> nx.DiGraph:
        skipped = set(skip)
        g = nx.DiGraph()
        g.add_nodes_from(self.real_vertices())
        for u, label, v in self.base:
            if (u, label, v) not in skipped:
                g.add_edge(u, v)
        return g


def build(source: Msc | Execution) -> ConflictGraph:
    """Base XY edges: same-process precedence between the X action of v and the Y action of v'."""
    msc = msc_of(source) if isinstance(source, Execution) else source
    exchanges = msc.exchanges()
    owner: dict[int, tuple[MessageExchange, str]] = {}
    for v in exchanges:
        owner[v.send] = (v, "S")
        if v.receive is not None:
            owner[v.receive] = (v, "R")
    edges: set[Edge] = set()
    for ids in msc.process_order.values():
        for i, j in combinations(ids, 2):
            (u, x), (w, y) = owner[i], owner[j]
            edges.add((u, x + y, w))
    return ConflictGraph(vertices=tuple(exchanges), base=frozenset(edges))


def _rule4_edges(vertices: Iterable[Vertex]) -> Iterable[tuple[ActionNode, ActionNode]]:
    """A matched and an unmatched send to the same receiver: the matched one comes first."""
    real = [v for v in vertices if isinstance(v, MessageExchange)]
    for v1 in real:
        if not v1.matched:
            continue
        for v2 in real:
            if not v2.matched and v1.receiver == v2.receiver:
                yield (v1, "S"), (v2, "S")


def extend(cg: ConflictGraph, extra: Iterable[Edge] = ()) -> ConflictGraph:
    """Least fixpoint of the deduction rules, computed as a transitive closure over actions.

    ``extra`` carries summary-node edges; they are lifted like base edges.
    """
    extra = cg.extra | frozenset(extra)
    vertices = list(cg.vertices)
    known = set(vertices)
    for u, _, v in extra:
        for node in (u, v):
            if node not in known:
                known.add(node)
                vertices.append(node)

    g = nx.DiGraph()
    for v in vertices:
        g.add_node((v, "S"))
        if isinstance(v, MessageExchange) and v.matched:
            g.add_node((v, "R"))
            g.add_edge((v, "S"), (v, "R"))
    for u, label, v in cg.base | extra:
        g.add_edge((u, label[0]), (v, label[1]))
        if label == "RR":
            g.add_edge((u, "S"), (v, "S"))
    g.add_edges_from(_rule4_edges(vertices))

    closure = nx.transitive_closure(g, reflexive=False)
    ext = frozenset((u, x + y, v) for (u, x), (v, y) in closure.edges())
    return ConflictGraph(
        vertices=tuple(sorted(vertices, key=vertex_key)),
        base=cg.base,
        ext=ext,
        extended=True,
        extra=extra,
    )


def _extended(cg: ConflictGraph) -> ConflictGraph:
    return cg if cg.extended else extend(cg)


def causal_delivery_by_graph(cg: ConflictGraph) -> bool:
    """No extended SS self-loop."""
    cg = _extended(cg)
    return not any(cg.has_ext(v, "SS", v) for v in cg.vertices)


@dataclass(frozen=True, slots=True)
class SccReport:
    components: tuple[frozenset[MessageExchange], ...]
    max_size: int
    rs_on_cycle: bool

    def to_dict(self) -> dict:
        return {
            "components": [sorted(str(v) for v in c) for c in self.components],
            "maxScc": self.max_size,
            "rsCycle": self.rs_on_cycle,
        }


def scc_report(cg: ConflictGraph) -> SccReport:
    g = cg.base_digraph()
    components = sorted(
        (frozenset(c) for c in nx.strongly_connected_components(g)),
        key=lambda c: min(vertex_key(v) for v in c),
    )
    component_of = {v: i for i, c in enumerate(components) for v in c}
    rs_on_cycle = any(
        label == "RS" and component_of[u] == component_of[v] for u, label, v in cg.base
    )
    return SccReport(
        components=tuple(components),
        max_size=max((len(c) for c in components), default=0),
        rs_on_cycle=rs_on_cycle,
    )


def k_synchronous_by_graph(msc: Msc, k: int) -> tuple[bool, SccReport]:
    if k < 1:
        raise ValueError("k must be positive")
    cg = extend(build(msc))
    if not causal_delivery_by_graph(cg):
        raise NotCausalDelivery("the MSC violates causal delivery")
    report = scc_report(cg)
    return report.max_size <= k and not report.rs_on_cycle, report


def deviation_vertices(cg: ConflictGraph) -> tuple[MessageExchange, MessageExchange]:
    """(vstart, vstop): the exchange received by ``pi`` and the one sent by ``pi``."""
    starts = [v for v in cg.real_vertices() if v.receiver == PI]
    stops = [v for v in cg.real_vertices() if v.sender == PI]
    if len(starts) != 1 or len(stops) != 1:
        raise MissingDeviationVertices(
            f"expected one vertex towards pi and one from pi, got {len(starts)} and {len(stops)}"
        )
    return starts[0], stops[0]


def feasibility_by_graph(cg: ConflictGraph) -> bool:
    """Infeasible iff vstart =>SS v and v RR vstop for some v."""
    vstart, vstop = deviation_vertices(cg)
    cg = _extended(cg)
    return not any(cg.has_base(v, "RR", vstop) for v in cg.ext_successors(vstart, "SS"))


def succ_pred_sets(cg: ConflictGraph) -> tuple[set[MessageExchange], set[MessageExchange]]:
    """Vertices reachable from vstart and co-reachable to vstop over base edges (both reflexive)."""
    vstart, vstop = deviation_vertices(cg)
    g = cg.base_digraph()
    return nx.descendants(g, vstart) | {vstart}, nx.ancestors(g, vstop) | {vstop}


def badness_by_graph(cg: ConflictGraph, k: int) -> bool:
    """An RS edge on a path vstart ->* vstop, or at least k+2 vertices between them.

    The RS edge that ``pi`` itself creates (receive then forward) is not
    counted: it vanishes once vstart and vstop are merged back.
    """
    vstart, vstop = deviation_vertices(cg)
    succ, pred = succ_pred_sets(cg)
    rs_path = any(
        label == "RS" and u in succ and v in pred and (u, v) != (vstart, vstop)
        for u, label, v in cg.base
    )
    return rs_path or len(succ & pred) >= k + 2


def to_dot(cg: ConflictGraph, *, name: str = "conflict_graph") -> str:
    """Base edges solid, edges that only exist in the extension dashed."""
    graph = pydot.Dot(name, graph_type="digraph")
    ids = {v: f"v{i}" for i, v in enumerate(sorted(cg.vertices, key=vertex_key))}
    for v, node_id in ids.items():
        shape = "box" if isinstance(v, SummaryNode) else "ellipse"
        graph.add_node(pydot.Node(node_id, label=f'"{v}"', shape=shape))
    for u, label, v in sorted(cg.base, key=lambda e: (vertex_key(e[0]), e[1], vertex_key(e[2]))):
        graph.add_edge(pydot.Edge(ids[u], ids[v], label=label))
    extended_only = cg.ext - cg.base
    for u, label, v in sorted(extended_only, key=lambda e: (vertex_key(e[0]), e[1], vertex_key(e[2]))):
        graph.add_edge(pydot.Edge(ids[u], ids[v], label=label, style="dashed"))
    return graph.to_string()


__all__ = [
    "ConflictGraph",
    "SccReport",
    "SummaryNode",
    "actor",
    "actors",
    "badness_by_graph",
    "build",
    "causal_delivery_by_graph",
    "deviation_vertices",
    "extend",
    "feasibility_by_graph",
    "k_synchronous_by_graph",
    "scc_report",
    "succ_pred_sets",
    "to_dot",
]

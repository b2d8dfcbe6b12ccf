"""Typed directed multigraph over statement and holder nodes.

All views built from one snippet share the same node universe (statements
plus holders); a view only differs in which edges it carries.  That makes
composition a plain union and keeps mask monotonicity trivially true.
"""

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MismatchedSnippet, UnknownNode
from .frontend import CodeSnippet

EDGE_AST = "AST"
EDGE_CFG = "CFG"
EDGE_DFG = "DFG"
EDGE_LAST_DEF = "LAST_DEF"
EDGE_LAST_USE = "LAST_USE"

EDGE_KINDS = (EDGE_AST, EDGE_CFG, EDGE_DFG, EDGE_LAST_DEF, EDGE_LAST_USE)

VIEW_AST = "ast"
VIEW_CFG = "cfg"
VIEW_DFG = "dfg"

VIEW_TAGS = (VIEW_AST, VIEW_CFG, VIEW_DFG)


@dataclass(frozen=True)
class GraphNode:
    id: int
    kind: str
    start_line: int
    end_line: int


class CodeViewGraph:
    """Immutable after construction; parent lookups are cached."""

    def __init__(
        self,
        nodes: Sequence[GraphNode],
        edges: Iterable[tuple[int, int, str]],
        views: Iterable[str],
    ):
        self.nodes: tuple[GraphNode, ...] = tuple(sorted(nodes, key=lambda n: n.id))
        known = {n.id for n in self.nodes}
        edge_set = frozenset(edges)
        for src, dst, _kind in edge_set:
            if src not in known or dst not in known:
                raise UnknownNode(f"edge endpoint not in node set: ({src}, {dst})")
        self.edges: frozenset[tuple[int, int, str]] = edge_set
        self.views: frozenset[str] = frozenset(views)
        self._kinds = {n.id: n.kind for n in self.nodes}
        self._parents: dict[int, frozenset[int]] | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CodeViewGraph)
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.views == other.views
        )

    def __hash__(self):
        return hash((self.nodes, self.edges, self.views))

    def node_kind(self, node_id: int) -> str:
        try:
            return self._kinds[node_id]
        except KeyError:
            raise UnknownNode(f"unknown node id: {node_id}") from None

    def has_node(self, node_id: int) -> bool:
        return node_id in self._kinds

    def edges_of_kind(self, kind: str) -> set[tuple[int, int]]:
        return {(s, d) for s, d, k in self.edges if k == kind}

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": n.id, "kind": n.kind, "start_line": n.start_line, "end_line": n.end_line}
                for n in self.nodes
            ],
            "edges": [
                {"src": s, "dst": d, "kind": k}
                for s, d, k in sorted(self.edges)
            ],
            "views": sorted(self.views),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def node_universe(snippet: CodeSnippet) -> tuple[GraphNode, ...]:
    nodes = [
        GraphNode(s.id, s.kind, s.start_line, s.end_line) for s in snippet.statements
    ]
    nodes.extend(
        GraphNode(h.id, h.kind, h.start_line, h.end_line) for h in snippet.holders
    )
    return tuple(sorted(nodes, key=lambda n: n.id))


def get_parents(node_id: int, view: CodeViewGraph) -> set[int]:
    """Nodes with outgoing edges into ``node_id`` (any edge kind)."""
    if not view.has_node(node_id):
        raise UnknownNode(f"unknown node id: {node_id}")
    if view._parents is None:
        table: dict[int, set[int]] = {}
        for src, dst, _kind in view.edges:
            table.setdefault(dst, set()).add(src)
        view._parents = {k: frozenset(v) for k, v in table.items()}
    return set(view._parents.get(node_id, frozenset()))


def compose(views: Sequence[CodeViewGraph]) -> CodeViewGraph:
    """Union of edge sets over an identical node universe."""
    if not views:
        raise MismatchedSnippet("cannot compose an empty list of views")
    first = views[0]
    for other in views[1:]:
        if other.nodes != first.nodes:
            raise MismatchedSnippet("views were built over different snippets")
    edges: set[tuple[int, int, str]] = set()
    tags: set[str] = set()
    for v in views:
        edges |= v.edges
        tags |= v.views
    return CodeViewGraph(first.nodes, edges, tags)

"""Snippet model: statements, leaf tokens, holders and token ownership.

``parse`` is the single entry point.  It tokenizes the source, builds the
statement-structure tree and derives three tables that all later stages
consume: the ordered statement table (ids 0..M-1 in source order), the leaf
token table (each token mapped to the innermost statement that contains it,
or to None for tokens that sit outside any statement, e.g. method
signatures), and the holder table (grammar grouping nodes, ids M..).
"""

import json
from dataclasses import dataclass, field

from . import javalex, javaparse
from .errors import EmptySource, UnsupportedLanguage
from .javaparse import HOLDER_KINDS, Node

SUPPORTED_LANGUAGES = ("java",)

#: grammar constructs that group statements without being maskable lines;
#: versioned constant so fixtures stay stable across releases
JAVA_HOLDER_KINDS = frozenset(
    {
        "block",
        "class_body",
        "program",
        "method_declaration",
        "constructor_declaration",
        "class_declaration",
        "switch_block",
    }
)

assert JAVA_HOLDER_KINDS == HOLDER_KINDS


@dataclass(frozen=True)
class HolderSet:
    kinds: frozenset[str]

    def __contains__(self, kind: str) -> bool:
        return kind in self.kinds


@dataclass(frozen=True)
class LeafToken:
    index: int
    text: str
    start_byte: int
    end_byte: int
    line: int
    owner_statement: int | None
    kind: str = "op"
    end_line: int = 0


@dataclass(frozen=True)
class Statement:
    id: int
    kind: str
    start_line: int
    end_line: int
    start_byte: int
    end_byte: int
    direct_token_ids: tuple[int, ...]


@dataclass(frozen=True)
class HolderInfo:
    id: int
    kind: str
    start_line: int
    end_line: int


@dataclass
class CodeSnippet:
    source_text: str
    language: str
    statements: list[Statement]
    tokens: list[LeafToken]
    holders: list[HolderInfo]
    parse_degraded: bool
    _root: Node = field(repr=False, default=None)
    _nodes: dict[int, Node] = field(repr=False, default_factory=dict)
    _tree_edges: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def statement_count(self) -> int:
        return len(self.statements)

    def node_for(self, node_id: int) -> Node:
        return self._nodes[node_id]

    def tree_edges(self) -> tuple[tuple[int, int], ...]:
        """Parent -> child edges over statement and holder ids."""
        return self._tree_edges

    def statement_token_ids(self, stmt_id: int) -> range:
        """All token indices in the statement's span (nested ones included)."""
        node = self._nodes[stmt_id]
        return range(node.tok_lo, node.tok_hi)

    def to_json(self) -> str:
        doc = {
            "language": self.language,
            "statement_count": self.statement_count,
            "parse_degraded": self.parse_degraded,
            "statements": [
                {
                    "id": s.id,
                    "kind": s.kind,
                    "start_line": s.start_line,
                    "end_line": s.end_line,
                    "start_byte": s.start_byte,
                    "end_byte": s.end_byte,
                    "direct_token_ids": list(s.direct_token_ids),
                }
                for s in self.statements
            ],
            "holders": [
                {"id": h.id, "kind": h.kind, "start_line": h.start_line, "end_line": h.end_line}
                for h in self.holders
            ],
            "tokens": [
                {
                    "index": t.index,
                    "text": t.text,
                    "start_byte": t.start_byte,
                    "end_byte": t.end_byte,
                    "line": t.line,
                    "owner_statement": t.owner_statement,
                }
                for t in self.tokens
            ],
        }
        return json.dumps(doc, indent=2)


def default_holders(language: str) -> HolderSet:
    """Frozen holder-kind set for the language."""
    if language != "java":
        raise UnsupportedLanguage(f"unsupported language: {language!r}")
    return HolderSet(JAVA_HOLDER_KINDS)


def parse(source: str, language: str = "java") -> CodeSnippet:
    """Parse source text into a CodeSnippet; tolerant of broken snippets."""
    if language not in SUPPORTED_LANGUAGES:
        raise UnsupportedLanguage(f"unsupported language: {language!r}")
    raw, clean = javalex.tokenize(source)
    if not raw:
        raise EmptySource("source produced no tokens")
    root, parse_ok_degraded = javaparse.parse_tokens(raw)
    degraded = parse_ok_degraded or not clean

    statements: list[Node] = []
    holder_nodes: list[Node] = []

    def collect(node: Node) -> None:
        if node.is_statement():
            statements.append(node)
        else:
            holder_nodes.append(node)
        for child in node.children:
            collect(child)

    collect(root)
    # pre-order equals source order because child token ranges nest
    statements.sort(key=lambda nd: (nd.tok_lo, -nd.tok_hi))
    holder_nodes.sort(key=lambda nd: (nd.tok_lo, -nd.tok_hi))
    for sid, node in enumerate(statements):
        node.nid = sid
    base = len(statements)
    for off, node in enumerate(holder_nodes):
        node.nid = base + off

    owner: list[int | None] = [None] * len(raw)

    def assign(node: Node, current: int | None) -> None:
        mine = node.nid if node.is_statement() else current
        pos = node.tok_lo
        for child in node.children:
            for t in range(pos, child.tok_lo):
                owner[t] = mine
            assign(child, mine)
            pos = child.tok_hi
        for t in range(pos, node.tok_hi):
            owner[t] = mine

    assign(root, None)

    direct: dict[int, list[int]] = {s.nid: [] for s in statements}
    for idx, who in enumerate(owner):
        if who is not None:
            direct[who].append(idx)

    def span_lines(node: Node) -> tuple[int, int]:
        if node.tok_lo >= node.tok_hi:
            return 1, 1
        return raw[node.tok_lo].line, raw[node.tok_hi - 1].end_line

    stmt_table = []
    for node in statements:
        lo, hi = span_lines(node)
        stmt_table.append(
            Statement(
                id=node.nid,
                kind=node.kind,
                start_line=lo,
                end_line=hi,
                start_byte=raw[node.tok_lo].start_byte,
                end_byte=raw[node.tok_hi - 1].end_byte,
                direct_token_ids=tuple(direct[node.nid]),
            )
        )

    holder_table = []
    for node in holder_nodes:
        lo, hi = span_lines(node)
        holder_table.append(HolderInfo(id=node.nid, kind=node.kind, start_line=lo, end_line=hi))

    tokens = [
        LeafToken(
            index=i,
            text=t.text,
            start_byte=t.start_byte,
            end_byte=t.end_byte,
            line=t.line,
            owner_statement=owner[i],
            kind=t.kind,
            end_line=t.end_line,
        )
        for i, t in enumerate(raw)
    ]

    edges = []
    nodes_by_id: dict[int, Node] = {}

    def link(node: Node) -> None:
        nodes_by_id[node.nid] = node
        for child in node.children:
            edges.append((node.nid, child.nid))
            link(child)

    link(root)

    return CodeSnippet(
        source_text=source,
        language=language,
        statements=stmt_table,
        tokens=tokens,
        holders=holder_table,
        parse_degraded=degraded,
        _root=root,
        _nodes=nodes_by_id,
        _tree_edges=tuple(edges),
    )


def token_table(snippet: CodeSnippet) -> list[tuple[str, int | None]]:
    """Ordered (token text, owner statement id) pairs."""
    return [(t.text, t.owner_statement) for t in snippet.tokens]

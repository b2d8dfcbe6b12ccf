"""Reaching definitions and the statement-level data-flow view.

Variables are identified by simple name within their flow region: a field
access ``a.b`` counts as its root name ``a``, method-call results are not
tracked, and no alias analysis is attempted.  That approximation is what
makes the analysis usable on non-compilable snippets.

Three forward may-analyses share the same worklist core:

* reaching definitions (gen = assignments, declarations with initializer,
  unary updates, compound assignments; a new definition kills all other
  definitions of the same name),
* last-read sites, feeding LAST_USE edges (current read linked back to the
  most recent prior reads along every path),
* last-write sites over definitions *and* bare declarations, feeding
  LAST_DEF edges (a definition linked to the next re-definition, which
  also connects declarations to their first assignment and works for
  names never declared in the snippet).
"""

from collections import deque
from dataclasses import dataclass

from .frontend import CodeSnippet, Statement
from .graphs import (
    EDGE_CFG,
    EDGE_DFG,
    EDGE_LAST_DEF,
    EDGE_LAST_USE,
    VIEW_DFG,
    CodeViewGraph,
    node_universe,
)
from .javalex import NON_VARIABLE_WORDS

_COMPOUND_ASSIGN = frozenset(
    {"+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

_NO_EVENT_KINDS = frozenset(
    {
        "break_statement",
        "continue_statement",
        "empty_statement",
        "package_declaration",
        "import_declaration",
        "error",
    }
)

Def = tuple[str, int]  # (variable name, defining statement id)


@dataclass(frozen=True)
class StatementEvents:
    defs: frozenset[str]
    uses: frozenset[str]
    decls: frozenset[str]


_EMPTY_EVENTS = StatementEvents(frozenset(), frozenset(), frozenset())


@dataclass
class DefUseFacts:
    gen: dict[int, frozenset[Def]]
    def_vars: dict[int, frozenset[str]]
    uses: dict[int, frozenset[str]]
    decls: dict[int, frozenset[str]]
    in_sets: dict[int, frozenset[Def]]
    out_sets: dict[int, frozenset[Def]]


def statement_events(snippet: CodeSnippet, stmt: Statement) -> StatementEvents:
    """Defs/uses/declarations of one statement from its direct tokens."""
    node = snippet.node_for(stmt.id)
    if node.kind in _NO_EVENT_KINDS:
        return _EMPTY_EVENTS
    toks = snippet.tokens
    declared_at = {d.tok_index for d in node.decls}
    defs = {d.name for d in node.decls if d.initialized}
    decls = {d.name for d in node.decls}
    uses: set[str] = set()
    for idx in stmt.direct_token_ids:
        tok = toks[idx]
        if tok.kind != "word" or tok.text in NON_VARIABLE_WORDS:
            continue
        if idx in declared_at or idx in node.scan_skip:
            continue
        prev = toks[idx - 1].text if idx > 0 else ""
        nxt = toks[idx + 1].text if idx + 1 < len(toks) else ""
        if prev in (".", "::"):
            continue  # member after a dot: tracked via the root name
        if nxt == "(":
            continue  # method name
        name = tok.text
        if nxt == "=":
            defs.add(name)
        elif nxt in _COMPOUND_ASSIGN:
            defs.add(name)
            uses.add(name)
        elif nxt in ("++", "--") or prev in ("++", "--"):
            defs.add(name)
            uses.add(name)
        else:
            uses.add(name)
    return StatementEvents(frozenset(defs), frozenset(uses), frozenset(decls))


def _adjacency(snippet: CodeSnippet, cfg: CodeViewGraph):
    preds: dict[int, list[int]] = {s.id: [] for s in snippet.statements}
    succs: dict[int, list[int]] = {s.id: [] for s in snippet.statements}
    for src, dst in sorted(cfg.edges_of_kind(EDGE_CFG)):
        succs[src].append(dst)
        preds[dst].append(src)
    return preds, succs


def compute_rda(snippet: CodeSnippet, cfg: CodeViewGraph) -> DefUseFacts:
    """Least fixpoint of forward reaching definitions (worklist iteration)."""
    events = {s.id: statement_events(snippet, s) for s in snippet.statements}
    ids = [s.id for s in snippet.statements]
    gen = {i: frozenset((v, i) for v in events[i].defs) for i in ids}
    def_vars = {i: events[i].defs for i in ids}
    preds, succs = _adjacency(snippet, cfg)

    out: dict[int, frozenset[Def]] = {i: gen[i] for i in ids}
    work = deque(ids)
    queued = set(ids)
    while work:
        i = work.popleft()
        queued.discard(i)
        incoming: set[Def] = set()
        for p in preds[i]:
            incoming |= out[p]
        new_out = gen[i] | frozenset(d for d in incoming if d[0] not in def_vars[i])
        if new_out != out[i]:
            out[i] = new_out
            for s in succs[i]:
                if s not in queued:
                    work.append(s)
                    queued.add(s)

    in_sets: dict[int, frozenset[Def]] = {}
    for i in ids:
        acc: set[Def] = set()
        for p in preds[i]:
            acc |= out[p]
        in_sets[i] = frozenset(acc)

    return DefUseFacts(
        gen=gen,
        def_vars=def_vars,
        uses={i: events[i].uses for i in ids},
        decls={i: events[i].decls for i in ids},
        in_sets=in_sets,
        out_sets=out,
    )


def build_dfg(
    snippet: CodeSnippet,
    cfg: CodeViewGraph,
    facts: DefUseFacts,
    last_def: bool = False,
    last_use: bool = False,
) -> CodeViewGraph:
    """DFG edges def-site -> use-site for every reaching definition, plus
    optional LAST_DEF / LAST_USE edges."""
    edges: set[tuple[int, int, str]] = set()
    for stmt in snippet.statements:
        u = stmt.id
        used = facts.uses[u]
        if not used:
            continue
        for var, d in facts.in_sets[u]:
            if var in used:
                edges.add((d, u, EDGE_DFG))
    if last_use or last_def:
        preds, succs = _adjacency(snippet, cfg)
        ids = [s.id for s in snippet.statements]
        if last_use:
            reads = {i: facts.uses[i] for i in ids}
            last_read_in = _last_event_fixpoint(ids, preds, succs, reads)
            for u in ids:
                for var in sorted(reads[u]):
                    for r in last_read_in[u].get(var, ()):
                        edges.add((r, u, EDGE_LAST_USE))
        if last_def:
            writes = {i: facts.def_vars[i] | facts.decls[i] for i in ids}
            last_write_in = _last_event_fixpoint(ids, preds, succs, writes)
            for d2 in ids:
                for var in sorted(writes[d2]):
                    for d in last_write_in[d2].get(var, ()):
                        edges.add((d, d2, EDGE_LAST_DEF))
    return CodeViewGraph(node_universe(snippet), edges, {VIEW_DFG})


def _last_event_fixpoint(
    ids: list[int],
    preds: dict[int, list[int]],
    succs: dict[int, list[int]],
    events: dict[int, frozenset[str]],
) -> dict[int, dict[str, frozenset[int]]]:
    """Forward may-analysis of "most recent statement touching each var".

    Transfer: a statement touching v replaces v's site set with itself;
    merge is per-variable union.  Returns the IN maps at the fixpoint.
    """

    def transfer(i: int, inc: dict[str, frozenset[int]]) -> dict[str, frozenset[int]]:
        res = dict(inc)
        for v in events[i]:
            res[v] = frozenset({i})
        return res

    out: dict[int, dict[str, frozenset[int]]] = {i: transfer(i, {}) for i in ids}
    work = deque(ids)
    queued = set(ids)
    while work:
        i = work.popleft()
        queued.discard(i)
        incoming: dict[str, set[int]] = {}
        for p in preds[i]:
            for v, sites in out[p].items():
                incoming.setdefault(v, set()).update(sites)
        frozen = {v: frozenset(s) for v, s in incoming.items()}
        new_out = transfer(i, frozen)
        if new_out != out[i]:
            out[i] = new_out
            for s in succs[i]:
                if s not in queued:
                    work.append(s)
                    queued.add(s)

    in_sets: dict[int, dict[str, frozenset[int]]] = {}
    for i in ids:
        incoming = {}
        for p in preds[i]:
            for v, sites in out[p].items():
                incoming.setdefault(v, set()).update(sites)
        in_sets[i] = {v: frozenset(s) for v, s in incoming.items()}
    return in_sets

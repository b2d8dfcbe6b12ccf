"""Statement-level control-flow graph builder.

Each method/constructor body, each class initializer block and the
top-level statement sequence of a snippet form independent flow regions
(no inter-procedural edges).  Inside a region the builder covers
sequencing, if/else, the three loop forms with back-edges, break/continue
(labeled included), return/throw termination, switch dispatch with
fallthrough, and the try/catch approximation where every statement in a
try body may jump to every catch clause.  Loops whose bodies are missing
degrade to plain sequential flow instead of failing.
"""

from dataclasses import dataclass, field

from .frontend import CodeSnippet
from .graphs import EDGE_CFG, VIEW_CFG, CodeViewGraph, node_universe
from .javaparse import Node

_LOOP_KINDS = ("while_statement", "for_statement", "enhanced_for_statement", "do_statement")
_REGION_BOUNDARY = ("class_declaration", "class_body", "method_declaration", "constructor_declaration")


@dataclass(frozen=True)
class _Flow:
    entry: int | None
    exits: frozenset[int]


_EMPTY = _Flow(None, frozenset())


@dataclass
class _Ctx:
    break_stack: list[list[int]] = field(default_factory=list)
    continue_stack: list[int] = field(default_factory=list)
    break_labels: dict[str, list[int]] = field(default_factory=dict)
    continue_labels: dict[str, int] = field(default_factory=dict)


def build_cfg(snippet: CodeSnippet) -> CodeViewGraph:
    builder = _Builder()
    root = snippet._root
    top_level = [c for c in root.children if c.is_statement()]
    builder.region(top_level)

    def walk(node: Node) -> None:
        if node.kind in ("method_declaration", "constructor_declaration"):
            for child in node.children:
                if child.kind == "block":
                    builder.region(child.children)
        elif node.kind == "class_body":
            for child in node.children:
                if child.kind == "block":  # instance/static initializer
                    builder.region(child.children)
        for child in node.children:
            walk(child)

    walk(root)
    edges = [(s, d, EDGE_CFG) for s, d in builder.edges]
    return CodeViewGraph(node_universe(snippet), edges, {VIEW_CFG})


class _Builder:
    def __init__(self):
        self.edges: set[tuple[int, int]] = set()

    def edge(self, src: int, dst: int) -> None:
        self.edges.add((src, dst))

    def region(self, nodes: list[Node]) -> None:
        self.seq(nodes, _Ctx())

    def seq(self, nodes: list[Node], ctx: _Ctx) -> _Flow:
        entry: int | None = None
        prev_exits: frozenset[int] | None = None
        for node in nodes:
            flow = self.flow(node, ctx)
            if flow.entry is None:
                continue
            if entry is None:
                entry = flow.entry
            if prev_exits is not None:
                for p in prev_exits:
                    self.edge(p, flow.entry)
            prev_exits = flow.exits
        if entry is None:
            return _EMPTY
        return _Flow(entry, prev_exits if prev_exits is not None else frozenset())

    def flow(self, node: Node, ctx: _Ctx) -> _Flow:
        kind = node.kind
        if node.is_holder():
            if kind == "block":
                return self.seq(node.children, ctx)
            return _EMPTY  # class/method holders bound their own regions
        if kind in ("return_statement", "throw_statement"):
            return _Flow(node.nid, frozenset())
        if kind == "break_statement":
            sink = self._break_sink(ctx, node.label)
            if sink is not None:
                sink.append(node.nid)
            return _Flow(node.nid, frozenset())
        if kind == "continue_statement":
            target = self._continue_target(ctx, node.label)
            if target is not None:
                self.edge(node.nid, target)
            return _Flow(node.nid, frozenset())
        if kind == "if_statement":
            return self._if(node, ctx)
        if kind in _LOOP_KINDS:
            return self._loop(node, ctx)
        if kind == "switch_statement":
            return self._switch(node, ctx)
        if kind == "try_statement":
            return self._try(node, ctx)
        if kind == "catch_clause":
            return self._catch(node, ctx)
        if kind == "labeled_statement":
            return self._labeled(node, ctx)
        if kind == "synchronized_statement":
            return self._wrapper(node, ctx)
        return _Flow(node.nid, frozenset({node.nid}))

    # ------------------------------------------------------------------ #

    def _child(self, node: Node, role: str) -> Node | None:
        for child in node.children:
            if child.role == role:
                return child
        return None

    def _if(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        exits: set[int] = set()
        then = self._child(node, "consequence")
        alt = self._child(node, "alternative")
        tf = self.flow(then, ctx) if then is not None else _EMPTY
        if tf.entry is not None:
            self.edge(me, tf.entry)
            exits |= tf.exits
        else:
            exits.add(me)
        if alt is None:
            exits.add(me)  # condition-false path falls through
        else:
            af = self.flow(alt, ctx)
            if af.entry is not None:
                self.edge(me, af.entry)
                exits |= af.exits
            else:
                exits.add(me)
        return _Flow(me, frozenset(exits))

    def _loop(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        ctx.break_stack.append([])
        ctx.continue_stack.append(me)
        body = self._child(node, "body")
        bf = self.flow(body, ctx) if body is not None else _EMPTY
        ctx.continue_stack.pop()
        breaks = ctx.break_stack.pop()
        if bf.entry is not None:
            self.edge(me, bf.entry)
            for x in bf.exits:
                self.edge(x, me)  # loop back-edge
        return _Flow(me, frozenset({me}) | frozenset(breaks))

    def _switch(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        block = node.children[0] if node.children else None
        if block is None:
            return _Flow(me, frozenset({me}))
        stmts = block.children
        groups = node.case_groups or []
        ctx.break_stack.append([])
        flows = [self.seq([stmts[i] for i in grp], ctx) for grp in groups]
        breaks = ctx.break_stack.pop()
        carry: frozenset[int] = frozenset()
        for gf in flows:
            if gf.entry is None:
                continue
            self.edge(me, gf.entry)
            for p in carry:
                self.edge(p, gf.entry)  # fallthrough
            carry = gf.exits
        exits = set(carry) | set(breaks)
        if not node.has_default or not flows:
            exits.add(me)
        return _Flow(me, frozenset(exits))

    def _try(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        body = self._child(node, "body")
        catches = [c for c in node.children if c.kind == "catch_clause"]
        fin = self._child(node, "finally")
        bf = self.flow(body, ctx) if body is not None else _EMPTY
        if bf.entry is not None:
            self.edge(me, bf.entry)
            normal_exits: set[int] = set(bf.exits)
        else:
            normal_exits = {me}
        body_stmts = _statements_in(body) if body is not None else []
        all_exits = set(normal_exits)
        for clause in catches:
            for s in body_stmts:
                self.edge(s, clause.nid)
            cf = self._catch(clause, ctx)
            all_exits |= cf.exits
        if fin is not None:
            ff = self.flow(fin, ctx)
            if ff.entry is not None:
                for x in all_exits:
                    self.edge(x, ff.entry)
                all_exits = set(ff.exits)
        return _Flow(me, frozenset(all_exits))

    def _catch(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        body = self._child(node, "body")
        bf = self.flow(body, ctx) if body is not None else _EMPTY
        if bf.entry is not None:
            self.edge(me, bf.entry)
            return _Flow(me, bf.exits)
        return _Flow(me, frozenset({me}))

    def _labeled(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        inner = node.children[0] if node.children else None
        if inner is None:
            return _Flow(me, frozenset({me}))
        name = node.label or ""
        collector: list[int] = []
        saved_break = ctx.break_labels.get(name)
        saved_cont = ctx.continue_labels.get(name)
        ctx.break_labels[name] = collector
        if inner.kind in _LOOP_KINDS:
            ctx.continue_labels[name] = inner.nid
        f = self.flow(inner, ctx)
        if saved_break is None:
            ctx.break_labels.pop(name, None)
        else:
            ctx.break_labels[name] = saved_break
        if saved_cont is None:
            ctx.continue_labels.pop(name, None)
        else:
            ctx.continue_labels[name] = saved_cont
        exits = set(f.exits) | set(collector)
        if f.entry is not None:
            self.edge(me, f.entry)
        else:
            exits.add(me)
        return _Flow(me, frozenset(exits))

    def _wrapper(self, node: Node, ctx: _Ctx) -> _Flow:
        me = node.nid
        body = self._child(node, "body")
        bf = self.flow(body, ctx) if body is not None else _EMPTY
        if bf.entry is not None:
            self.edge(me, bf.entry)
            return _Flow(me, bf.exits)
        return _Flow(me, frozenset({me}))

    @staticmethod
    def _break_sink(ctx: _Ctx, label: str | None) -> list[int] | None:
        if label is not None:
            return ctx.break_labels.get(label)
        return ctx.break_stack[-1] if ctx.break_stack else None

    @staticmethod
    def _continue_target(ctx: _Ctx, label: str | None) -> int | None:
        if label is not None:
            return ctx.continue_labels.get(label)
        return ctx.continue_stack[-1] if ctx.continue_stack else None


def _statements_in(node: Node) -> list[int]:
    """Statement ids lexically inside ``node``, not crossing class/method
    boundaries (their bodies belong to other flow regions)."""
    out: list[int] = []

    def rec(n: Node) -> None:
        for child in n.children:
            if child.kind in _REGION_BOUNDARY:
                continue
            if child.is_statement():
                out.append(child.nid)
            rec(child)

    rec(node)
    return out

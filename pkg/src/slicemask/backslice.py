"""Backward closure over a code view's parent edges.

Starting from a seed statement, repeatedly pop a node from the working set,
keep it when it is not a grammar holder, and enqueue its unvisited parents
(nodes with edges into it).  Holders are traversed but never included, so a
slice can climb through blocks and method bodies while the resulting mask
stays a pure statement set.  The result is a set closure: pop order does
not affect it (FIFO is used for debuggability).
"""

import json
from collections import deque
from dataclasses import dataclass

from .errors import NotAStatement, UnknownNode
from .frontend import CodeSnippet, HolderSet
from .graphs import CodeViewGraph, get_parents


@dataclass(frozen=True)
class StatementMask:
    seed: int
    members: frozenset[int]
    view_tags: frozenset[str]

    @property
    def size(self) -> int:
        return len(self.members)


def backslice(seed: int, view: CodeViewGraph, holders: HolderSet) -> StatementMask:
    if not view.has_node(seed):
        raise UnknownNode(f"unknown node id: {seed}")
    if view.node_kind(seed) in holders:
        raise NotAStatement(f"seed {seed} is a holder node")
    members: set[int] = set()
    visited = {seed}
    can_visit = deque([seed])
    while can_visit:
        node = can_visit.popleft()
        if view.node_kind(node) not in holders:
            members.add(node)
        for parent in sorted(get_parents(node, view)):
            if parent not in visited:
                can_visit.append(parent)
                visited.add(parent)
    return StatementMask(seed=seed, members=frozenset(members), view_tags=view.views)


def all_masks(
    snippet: CodeSnippet, view: CodeViewGraph, holders: HolderSet
) -> list[StatementMask]:
    """One mask per statement, in statement-id order."""
    return [backslice(s.id, view, holders) for s in snippet.statements]


def render_line_mask(mask: StatementMask, snippet: CodeSnippet) -> set[int]:
    """Union of the full line spans of the mask's member statements."""
    lines: set[int] = set()
    by_id = {s.id: s for s in snippet.statements}
    for member in mask.members:
        stmt = by_id.get(member)
        if stmt is None:
            raise UnknownNode(f"mask member {member} is not a statement of this snippet")
        lines.update(range(stmt.start_line, stmt.end_line + 1))
    return lines


def mask_to_dict(mask: StatementMask, snippet: CodeSnippet) -> dict:
    return {
        "seed": mask.seed,
        "members": sorted(mask.members),
        "lines": sorted(render_line_mask(mask, snippet)),
    }


def dump_masks(masks: list[StatementMask], snippet: CodeSnippet) -> str:
    return json.dumps([mask_to_dict(m, snippet) for m in masks], indent=2)

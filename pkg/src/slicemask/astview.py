"""Statement/holder projection of the syntax tree as a code view.

Edges run parent -> child, so walking "parents" from a statement climbs
toward the root through its syntactic ancestors.  Expression-level nodes
never appear: the parser already collapsed them into their statements.
"""

from .frontend import CodeSnippet, HolderSet
from .graphs import EDGE_AST, VIEW_AST, CodeViewGraph, node_universe


def build_ast_view(snippet: CodeSnippet, holders: HolderSet | None = None) -> CodeViewGraph:
    """Syntax-tree view over statements and holders.

    The holder set is fixed per language at parse time; the optional
    argument exists so callers can state intent, it does not change the
    projection.
    """
    edges = [(parent, child, EDGE_AST) for parent, child in snippet.tree_edges()]
    return CodeViewGraph(node_universe(snippet), edges, {VIEW_AST})

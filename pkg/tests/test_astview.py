import slicemask as sm
from conftest import stmt_at_line


def test_single_statement_under_root_holder():
    s = sm.parse("int x = 1;")
    view = sm.build_ast_view(s)
    ast = view.edges_of_kind(sm.EDGE_AST)
    root = next(h.id for h in s.holders if h.kind == "program")
    assert ast == {(root, 0)}


def test_edges_form_a_forest():
    s = sm.parse(
        "void f() {\n    int a = 1;\n    if (a > 0) {\n        a = 2;\n    }\n    g(a);\n}\n"
    )
    view = sm.build_ast_view(s)
    ast = view.edges_of_kind(sm.EDGE_AST)
    children = [c for _p, c in ast]
    assert len(children) == len(set(children))  # at most one parent
    # acyclic: walking up from any node terminates
    parent_of = {c: p for p, c in ast}
    for n in children:
        seen = set()
        cur = n
        while cur in parent_of:
            assert cur not in seen
            seen.add(cur)
            cur = parent_of[cur]


def test_siblings_share_parent_without_ancestry():
    s = sm.parse("void f() {\n    int a = 1;\n    int b = 2;\n}\n")
    view = sm.build_ast_view(s)
    pa = sm.get_parents(0, view)
    pb = sm.get_parents(1, view)
    assert pa == pb  # same block
    # neither statement reaches the other walking up
    holders = sm.default_holders("java")
    mask_a = sm.backslice(0, view, holders)
    assert 1 not in mask_a.members


def test_loop_print_parent_chain(loop_print, loop_print_views):
    ast = loop_print_views[0]
    inner = stmt_at_line(loop_print, 7)
    loop = stmt_at_line(loop_print, 6)
    # innermost parent of the println is the loop body block, then the loop
    (block_id,) = sm.get_parents(inner.id, ast)
    assert loop_print.node_for(block_id).kind == "block"
    assert sm.get_parents(block_id, ast) == {loop.id}


def test_root_holder_has_no_parents(loop_print, loop_print_views):
    ast = loop_print_views[0]
    root = next(h.id for h in loop_print.holders if h.kind == "program")
    assert sm.get_parents(root, ast) == set()


def test_statement_and_holder_nodes_present(loop_print, loop_print_views):
    ast = loop_print_views[0]
    ids = {n.id for n in ast.nodes}
    assert ids == {s.id for s in loop_print.statements} | {h.id for h in loop_print.holders}

import pytest

import slicemask as sm

# --------------------------------------------------------------------------- #
# fixture sources
#
# LOOP_PRINT: seeding a backslice at line 7 must give line masks {2,7} (data flow
# only), {6,7,8} (syntax only) and {2,5,6,7,8} (both combined).
LOOP_PRINT = """\
public int total() {
    int a = 10;
    int b = 20;
    int c = a + b;
    int n = 3;
    for (int i = 0; i < n; i++) {
        System.out.println(a);
    }
    return c;
}
"""

# ADJACENT_LOOPS: two adjacent for loops; the loop variable j read in the first
# header (line 5) is re-assigned in the body (line 8), so the data-flow graph
# must carry an 8 -> 5 edge and the CFG a back-edge from line 11 to line 5.
# The leading comment and blank line pin the method header to line 3.
ADJACENT_LOOPS = """\
// fixture: adjacent for-loops exercising loop-carried dataflow

public int accumulate() {
    int j = 0;
    for (int i = 0; i < j + 10; i++) {
        int a = i * 2;
        int b = a + 3;
        j = j + b;
        int c = b - a;
        int d = c * c;
        System.out.println(d);
    }
    for (int k = 0; k < j; k++) {
        System.out.println(k);
    }
    return j;
}
"""

# BATCH_RESET: undeclared names. currentBatchSize is read at lines 3 and 4
# (LAST_USE 3 -> 4); preparedStatement is assigned at 5 and re-assigned at 9
# (LAST_DEF 5 -> 9).  Plain reaching definitions see nothing here.
BATCH_RESET = """\
// fixture: batch reset touching undeclared connection state
public void resetBatch() {
    if (currentBatchSize > 0) {
        logger.warn("dropping " + currentBatchSize + " rows");
        preparedStatement = connection.prepareStatement(insertSql);
        currentBatchSize = 0;
        pendingRows.clear();
    }
    preparedStatement = null;
}
"""

STRAIGHT3 = """\
void run() {
    int a = 1;
    int b = a + 2;
    int c = a + b;
}
"""

DIAMOND = """\
void pick(boolean cond) {
    int x = 0;
    if (cond) {
        x = 1;
    } else {
        x = 2;
    }
    use(x);
}
"""

KILL3 = "x = 1; x = 2; y = x;"

WHILE_T = """\
void spin() {
    while (c) {
        s();
    }
    t();
}
"""


@pytest.fixture(scope="session")
def holders():
    return sm.default_holders("java")


def _views(snippet):
    ast = sm.build_ast_view(snippet)
    cfg = sm.build_cfg(snippet)
    facts = sm.compute_rda(snippet, cfg)
    dfg = sm.build_dfg(snippet, cfg, facts)
    return ast, cfg, facts, dfg


@pytest.fixture(scope="session")
def loop_print():
    return sm.parse(LOOP_PRINT)


@pytest.fixture(scope="session")
def loop_print_views(loop_print):
    return _views(loop_print)


@pytest.fixture(scope="session")
def adjacent_loops():
    return sm.parse(ADJACENT_LOOPS)


@pytest.fixture(scope="session")
def batch_reset():
    return sm.parse(BATCH_RESET)


def stmt_at_line(snippet, line):
    for s in snippet.statements:
        if s.start_line == line:
            return s
    raise AssertionError(f"no statement starts at line {line}")


def line_edges(snippet, graph, kind):
    """Edge set mapped to (start_line(src), start_line(dst)) pairs."""
    start = {s.id: s.start_line for s in snippet.statements}
    return {(start[a], start[b]) for a, b in graph.edges_of_kind(kind)}

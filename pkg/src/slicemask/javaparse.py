"""Error-tolerant statement-structure parser for Java token streams.

The tree deliberately contains only the constructs that statement-level
analysis needs: statement nodes, grammar holders (block, class_body, ...)
and error-recovery nodes.  Expression internals stay flat inside their
owning statement as raw token ranges.  Every node covers a contiguous token
range [tok_lo, tok_hi); child ranges nest inside their parent and never
overlap, which is what makes token ownership a simple gap computation.

The parser never raises on malformed input.  Anything it cannot classify is
absorbed into an ``error`` statement and the ``degraded`` flag is set, so
non-compilable dataset snippets still produce a usable statement table.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .javalex import (
    MODIFIER_WORDS,
    PRIMITIVE_TYPES,
    NON_VARIABLE_WORDS,
    RawToken,
    is_identifier,
)

HOLDER_KINDS = frozenset(
    {
        "program",
        "class_declaration",
        "class_body",
        "method_declaration",
        "constructor_declaration",
        "block",
        "switch_block",
    }
)

STATEMENT_KINDS = frozenset(
    {
        "package_declaration",
        "import_declaration",
        "field_declaration",
        "local_variable_declaration",
        "expression_statement",
        "if_statement",
        "while_statement",
        "do_statement",
        "for_statement",
        "enhanced_for_statement",
        "switch_statement",
        "try_statement",
        "catch_clause",
        "return_statement",
        "break_statement",
        "continue_statement",
        "throw_statement",
        "assert_statement",
        "synchronized_statement",
        "labeled_statement",
        "empty_statement",
        "error",
    }
)

_OPEN = frozenset("([{")
_CLOSE = frozenset(")]}")

#: words that may appear inside generic type arguments
_ANGLE_WORDS_OK = frozenset({"extends", "super"}) | PRIMITIVE_TYPES

#: reserved words that can never continue an expression; hitting one at
#: depth 0 means a statement boundary was crossed (recovery point)
_STMT_BOUNDARY = frozenset(
    {
        "if", "else", "while", "for", "do", "return", "break", "continue",
        "throw", "try", "catch", "finally", "assert", "import", "package",
    }
)

#: operator tokens that may legally open an expression statement
_EXPR_START_OPS = frozenset({"(", "++", "--", "+", "-", "!", "~", "@"})


class Declarator(NamedTuple):
    name: str
    tok_index: int
    initialized: bool


@dataclass
class Node:
    kind: str
    tok_lo: int
    tok_hi: int
    children: list["Node"] = field(default_factory=list)
    role: Optional[str] = None
    label: Optional[str] = None
    decls: list[Declarator] = field(default_factory=list)
    scan_skip: frozenset[int] = frozenset()
    case_groups: Optional[list[list[int]]] = None
    has_default: bool = False
    nid: Optional[int] = None  # assigned by the frontend indexer

    def is_statement(self) -> bool:
        return self.kind in STATEMENT_KINDS

    def is_holder(self) -> bool:
        return self.kind in HOLDER_KINDS


def parse_tokens(toks: list[RawToken]) -> tuple[Node, bool]:
    """Parse a token stream into a (program, degraded) pair."""
    parser = _Parser(toks)
    root = parser.parse_program()
    return root, parser.degraded


class _Parser:
    def __init__(self, toks: list[RawToken]):
        self.toks = toks
        self.n = len(toks)
        self.i = 0
        self.degraded = False

    # ------------------------------------------------------------------ #
    # cursor helpers

    def _txt(self, j: int) -> str:
        return self.toks[j].text if 0 <= j < self.n else ""

    def text(self) -> str:
        return self._txt(self.i)

    def at(self, s: str) -> bool:
        return self._txt(self.i) == s

    def at_word(self, w: str) -> bool:
        j = self.i
        return j < self.n and self.toks[j].kind == "word" and self.toks[j].text == w

    def _is_ident_idx(self, j: int) -> bool:
        return 0 <= j < self.n and is_identifier(self.toks[j])

    # ------------------------------------------------------------------ #
    # lookahead helpers (never move the cursor)

    def _match_close_idx(self, j: int) -> Optional[int]:
        """j points at an opener; return index just past its closer."""
        depth = 0
        while j < self.n:
            s = self.toks[j].text
            if s in _OPEN:
                depth += 1
            elif s in _CLOSE:
                depth -= 1
                if depth <= 0:
                    return j + 1
            j += 1
        return None

    def _skip_angles_idx(self, j: int) -> Optional[int]:
        """j points at '<'; return index just past the matching '>' when the
        contents look like type arguments, else None."""
        depth = 0
        while j < self.n:
            t = self.toks[j]
            s = t.text
            if s == "<":
                depth += 1
            elif s == ">":
                depth -= 1
            elif s == ">>":
                depth -= 2
            elif s == ">>>":
                depth -= 3
            elif s in (",", ".", "?", "[", "]", "&", "@"):
                pass
            elif t.kind == "word":
                if s in NON_VARIABLE_WORDS and s not in _ANGLE_WORDS_OK:
                    return None
            else:
                return None
            if depth <= 0:
                return j + 1
            j += 1
        return None

    def _type_ahead(self, j: int) -> Optional[int]:
        """Return index just past a type spelled at j, else None."""
        if j >= self.n:
            return None
        t = self.toks[j]
        if t.kind != "word":
            return None
        if t.text in PRIMITIVE_TYPES:
            j += 1
        elif is_identifier(t):
            j += 1
            while True:
                if self._txt(j) == "." and self._is_ident_idx(j + 1):
                    j += 2
                    continue
                if self._txt(j) == "<":
                    k = self._skip_angles_idx(j)
                    if k is None:
                        return None
                    j = k
                    continue
                break
        else:
            return None
        while self._txt(j) == "[" and self._txt(j + 1) == "]":
            j += 2
        return j

    def _skip_mods_idx(self, j: int) -> Optional[int]:
        while j < self.n:
            t = self.toks[j]
            if t.kind == "word" and t.text in MODIFIER_WORDS:
                j += 1
                continue
            if t.text == "@" and self._is_ident_idx(j + 1) and self._txt(j + 1) != "interface":
                j += 2
                if self._txt(j) == "(":
                    k = self._match_close_idx(j)
                    if k is None:
                        return None
                    j = k
                continue
            break
        return j

    def _decl_ahead(self, j: int) -> Optional[tuple[int, int]]:
        """If a variable declaration starts at j, return
        (first_declarator_name_index, type_start_index)."""
        j = self._skip_mods_idx(j)
        if j is None:
            return None
        ty_start = j
        k = self._type_ahead(j)
        if k is None:
            return None
        if self._is_ident_idx(k):
            return k, ty_start
        return None

    def _class_ahead(self, j: int) -> bool:
        j = self._skip_mods_idx(j)
        if j is None:
            return False
        if self._txt(j) == "@" and self._txt(j + 1) == "interface":
            return True
        return self._txt(j) in ("class", "interface", "enum") and self.toks[j].kind == "word"

    def _member_ahead(self, j: int):
        """Classify a class-body member starting at j.

        Returns (tag, extra) with tag in {'class','method','ctor','field',None}.
        """
        j = self._skip_mods_idx(j)
        if j is None:
            return None, None
        if self._txt(j) == "@" and self._txt(j + 1) == "interface":
            return "class", None
        if j < self.n and self.toks[j].kind == "word" and self.toks[j].text in (
            "class",
            "interface",
            "enum",
        ):
            return "class", None
        if self._txt(j) == "<":
            k = self._skip_angles_idx(j)
            if k is None:
                return None, None
            j = k
        if self._is_ident_idx(j) and self._txt(j + 1) == "(":
            close = self._match_close_idx(j + 1)
            if close is not None and self._txt(close) in ("{", "throws"):
                return "ctor", None
            return None, None
        k = self._type_ahead(j)
        if k is None:
            return None, None
        if self._is_ident_idx(k):
            if self._txt(k + 1) == "(":
                return "method", None
            return "field", (k, j)
        return None, None

    # ------------------------------------------------------------------ #
    # consuming helpers

    def _consume_parens(self, stop_at_brace: bool = True) -> None:
        """Consume a balanced '('...')' group if present, else flag.

        With ``stop_at_brace`` a '{' at depth 1 is taken as the body of a
        construct whose header lost its ')' (common in broken snippets).
        """
        if not self.at("("):
            self.degraded = True
            return
        depth = 0
        while self.i < self.n:
            s = self.text()
            if s == "{" and depth == 1 and stop_at_brace:
                self.degraded = True
                return
            if s in _OPEN:
                depth += 1
            elif s in _CLOSE:
                depth -= 1
                if depth <= 0:
                    self.i += 1
                    return
            self.i += 1
        self.degraded = True

    def _consume_to_semicolon(self) -> None:
        depth = 0
        while self.i < self.n:
            tok = self.toks[self.i]
            s = tok.text
            if depth == 0 and tok.kind == "word" and s in _STMT_BOUNDARY:
                self.degraded = True  # ran into the next statement: missing ';'
                return
            if s in _OPEN:
                depth += 1
            elif s == ";" and depth == 0:
                self.i += 1
                return
            elif s in _CLOSE:
                if depth == 0:
                    self.degraded = True
                    return
                depth -= 1
            self.i += 1
        self.degraded = True

    def _parse_declarators(self, name_idx: int, end_idx: int) -> tuple[list[Declarator], int]:
        """Scan a declarator list starting at its first name token.

        Pure lookahead within [name_idx, end_idx); returns the declarators
        and the index just past the last one scanned.
        """
        end_idx = min(end_idx, self.n)
        decls: list[Declarator] = []
        j = name_idx
        while j < end_idx and is_identifier(self.toks[j]):
            name_tok = j
            name = self.toks[j].text
            j += 1
            while self._txt(j) == "[" and self._txt(j + 1) == "]":
                j += 2
            initialized = False
            if self._txt(j) == "=" and j < end_idx:
                initialized = True
                j += 1
                depth = 0
                while j < end_idx:
                    tok = self.toks[j]
                    s = tok.text
                    if depth == 0 and tok.kind == "word" and s in _STMT_BOUNDARY:
                        break  # broken initializer ran into the next statement
                    if s in _OPEN:
                        depth += 1
                    elif s in _CLOSE:
                        if depth == 0:
                            break
                        depth -= 1
                    elif depth == 0 and s in (",", ";"):
                        break
                    elif depth == 0 and s == "<" and j > 0 and (
                        self._is_ident_idx(j - 1) or self._txt(j - 1) == ">"
                    ):
                        # generic arguments inside the initializer: their
                        # commas must not be mistaken for declarator commas
                        k = self._skip_angles_idx(j)
                        if k is not None:
                            j = k
                            continue
                    j += 1
            decls.append(Declarator(name, name_tok, initialized))
            if self._txt(j) == "," and j < end_idx:
                j += 1
                continue
            break
        return decls, j

    # ------------------------------------------------------------------ #
    # grammar productions

    def parse_program(self) -> Node:
        children: list[Node] = []
        while self.i < self.n:
            before = self.i
            if self.at_word("package"):
                children.append(self._simple("package_declaration"))
            elif self.at_word("import"):
                children.append(self._simple("import_declaration"))
            else:
                tag, extra = self._member_ahead(self.i)
                if tag == "class":
                    children.append(self.parse_class_like())
                elif tag == "method":
                    children.append(self.parse_method("method_declaration"))
                elif tag == "ctor":
                    children.append(self.parse_method("constructor_declaration"))
                elif tag == "field":
                    children.append(self.parse_local_decl(*extra, kind="field_declaration"))
                else:
                    children.append(self.parse_statement())
            if self.i == before:  # progress guard
                self.i += 1
                self.degraded = True
                children.append(Node("error", before, self.i))
        return Node("program", 0, self.n, children=children)

    def parse_statement(self) -> Node:
        start = self.i
        t = self.toks[self.i]
        s = t.text
        if t.kind == "word":
            if s == "if":
                return self.parse_if()
            if s == "while":
                return self.parse_while()
            if s == "do":
                return self.parse_do()
            if s == "for":
                return self.parse_for()
            if s == "switch":
                return self.parse_switch()
            if s == "try":
                return self.parse_try()
            if s == "return":
                return self._simple("return_statement")
            if s == "throw":
                return self._simple("throw_statement")
            if s == "assert":
                return self._simple("assert_statement")
            if s == "break":
                return self._jump("break_statement")
            if s == "continue":
                return self._jump("continue_statement")
            if s == "package":
                return self._simple("package_declaration")
            if s == "import":
                return self._simple("import_declaration")
            if s == "synchronized" and self._txt(self.i + 1) == "(":
                return self.parse_synchronized()
            if s in ("case", "default", "else", "catch", "finally"):
                self.i += 1
                self.degraded = True
                return Node("error", start, self.i)
            if is_identifier(t) and self._txt(self.i + 1) == ":":
                return self.parse_labeled()
        if s == ";":
            self.i += 1
            return Node("empty_statement", start, self.i)
        if s == "{":
            return self.parse_block()
        if s in _CLOSE:
            self.i += 1
            self.degraded = True
            return Node("error", start, self.i)
        if t.kind == "op" and s not in _EXPR_START_OPS:
            self.i += 1
            self.degraded = True
            return Node("error", start, self.i)
        if self._class_ahead(self.i):
            return self.parse_class_like()
        decl = self._decl_ahead(self.i)
        if decl is not None:
            return self.parse_local_decl(*decl)
        return self.parse_expression_statement()

    def parse_embedded(self, role: Optional[str] = None) -> Optional[Node]:
        if self.i >= self.n:
            self.degraded = True
            return None
        node = self.parse_statement()
        if role:
            node.role = role
        return node

    def parse_block(self, kind: str = "block") -> Node:
        start = self.i
        self.i += 1  # '{'
        children: list[Node] = []
        while self.i < self.n and not self.at("}"):
            before = self.i
            children.append(self.parse_statement())
            if self.i == before:
                self.i += 1
                self.degraded = True
        if self.at("}"):
            self.i += 1
        else:
            self.degraded = True
        return Node(kind, start, self.i, children=children)

    def parse_if(self) -> Node:
        start = self.i
        self.i += 1
        self._consume_parens()
        children: list[Node] = []
        then = self.parse_embedded("consequence")
        if then:
            children.append(then)
        if self.at_word("else"):
            self.i += 1
            alt = self.parse_embedded("alternative")
            if alt:
                children.append(alt)
        return Node("if_statement", start, self.i, children=children)

    def parse_while(self) -> Node:
        start = self.i
        self.i += 1
        self._consume_parens()
        children = []
        body = self.parse_embedded("body")
        if body:
            children.append(body)
        return Node("while_statement", start, self.i, children=children)

    def parse_do(self) -> Node:
        start = self.i
        self.i += 1
        children = []
        body = self.parse_embedded("body")
        if body:
            children.append(body)
        if self.at_word("while"):
            self.i += 1
            self._consume_parens()
            if self.at(";"):
                self.i += 1
            else:
                self.degraded = True
        else:
            self.degraded = True
        return Node("do_statement", start, self.i, children=children)

    def parse_for(self) -> Node:
        start = self.i
        self.i += 1  # 'for'
        kind = "for_statement"
        decls: list[Declarator] = []
        skip: set[int] = set()
        if self.at("("):
            close = self._match_close_idx(self.i)
            hdr_lo = self.i + 1
            hdr_hi = (close - 1) if close is not None else self.n
            semi = self._find_at_depth(hdr_lo, hdr_hi, ";")
            colon = None if semi is not None else self._find_at_depth(hdr_lo, hdr_hi, ":")
            if colon is not None:
                kind = "enhanced_for_statement"
                if colon - 1 >= hdr_lo and is_identifier(self.toks[colon - 1]):
                    decls.append(Declarator(self.toks[colon - 1].text, colon - 1, True))
                    skip.update(range(hdr_lo, colon - 1))
            else:
                init_hi = semi if semi is not None else hdr_hi
                d = self._decl_ahead(hdr_lo)
                if d is not None and d[0] < init_hi:
                    name_idx, ty_start = d
                    ds, _ = self._parse_declarators(name_idx, init_hi)
                    decls.extend(ds)
                    skip.update(range(hdr_lo, name_idx))
            self.i = close if close is not None else self.n
            if close is None:
                self.degraded = True
        else:
            self.degraded = True
        children = []
        body = self.parse_embedded("body")
        if body:
            children.append(body)
        node = Node(kind, start, self.i, children=children, decls=decls)
        node.scan_skip = frozenset(skip)
        return node

    def _find_at_depth(self, lo: int, hi: int, needle: str) -> Optional[int]:
        depth = 0
        for j in range(lo, min(hi, self.n)):
            s = self.toks[j].text
            if s in _OPEN:
                depth += 1
            elif s in _CLOSE:
                depth -= 1
            elif s == needle and depth == 0:
                return j
        return None

    def parse_switch(self) -> Node:
        start = self.i
        self.i += 1
        self._consume_parens()
        if not self.at("{"):
            self.degraded = True
            return Node("switch_statement", start, self.i)
        blk_start = self.i
        self.i += 1
        children: list[Node] = []
        groups: list[list[int]] = []
        has_default = False
        current: Optional[list[int]] = None
        while self.i < self.n and not self.at("}"):
            before = self.i
            if self.at_word("case") or self.at_word("default"):
                if self.at_word("default"):
                    has_default = True
                self.i += 1
                arrow = self._consume_case_label()
                if current is None or current:
                    current = []
                    groups.append(current)
                if arrow and self.i < self.n and not self.at("}"):
                    stmt = self.parse_statement()
                    children.append(stmt)
                    current.append(len(children) - 1)
                    current = None
            else:
                stmt = self.parse_statement()
                children.append(stmt)
                if current is None:
                    current = []
                    groups.append(current)
                current.append(len(children) - 1)
            if self.i == before:
                self.i += 1
                self.degraded = True
        if self.at("}"):
            self.i += 1
        else:
            self.degraded = True
        block = Node("switch_block", blk_start, self.i, children=children)
        node = Node("switch_statement", start, self.i, children=[block])
        node.case_groups = [g for g in groups if g]
        node.has_default = has_default
        return node

    def _consume_case_label(self) -> bool:
        """Consume a case label's tokens up to ':' or '->'; True for arrow."""
        depth = 0
        while self.i < self.n:
            s = self.text()
            if s in _OPEN:
                depth += 1
            elif s in _CLOSE:
                if depth == 0:
                    self.degraded = True
                    return False
                depth -= 1
            elif s == ":" and depth == 0:
                self.i += 1
                return False
            elif s == "->" and depth == 0:
                self.i += 1
                return True
            self.i += 1
        self.degraded = True
        return False

    def parse_try(self) -> Node:
        start = self.i
        self.i += 1
        decls: list[Declarator] = []
        skip: set[int] = set()
        if self.at("("):  # try-with-resources
            close = self._match_close_idx(self.i)
            hdr_lo, hdr_hi = self.i + 1, (close - 1) if close is not None else self.n
            seg = hdr_lo
            while seg < hdr_hi:
                d = self._decl_ahead(seg)
                if d is not None and d[0] < hdr_hi:
                    name_idx, _ = d
                    ds, _after = self._parse_declarators(name_idx, hdr_hi)
                    decls.extend(ds)
                    skip.update(range(seg, name_idx))
                nxt = self._find_at_depth(seg, hdr_hi, ";")
                if nxt is None:
                    break
                seg = nxt + 1
            self.i = close if close is not None else self.n
            if close is None:
                self.degraded = True
        children: list[Node] = []
        if self.at("{"):
            body = self.parse_block()
            body.role = "body"
            children.append(body)
        else:
            self.degraded = True
        while self.at_word("catch"):
            children.append(self.parse_catch())
        if self.at_word("finally"):
            self.i += 1
            if self.at("{"):
                fin = self.parse_block()
                fin.role = "finally"
                children.append(fin)
            else:
                self.degraded = True
        node = Node("try_statement", start, self.i, children=children, decls=decls)
        node.scan_skip = frozenset(skip)
        return node

    def parse_catch(self) -> Node:
        start = self.i
        self.i += 1  # 'catch'
        decls: list[Declarator] = []
        skip: set[int] = set()
        if self.at("("):
            close = self._match_close_idx(self.i)
            hi = (close - 1) if close is not None else self.n
            name_idx = None
            for j in range(hi - 1, self.i, -1):
                if is_identifier(self.toks[j]):
                    name_idx = j
                    break
            if name_idx is not None:
                decls.append(Declarator(self.toks[name_idx].text, name_idx, True))
                skip.update(range(self.i + 1, name_idx))
            self.i = close if close is not None else self.n
            if close is None:
                self.degraded = True
        else:
            self.degraded = True
        children = []
        if self.at("{"):
            body = self.parse_block()
            body.role = "body"
            children.append(body)
        else:
            self.degraded = True
        node = Node("catch_clause", start, self.i, children=children, decls=decls)
        node.scan_skip = frozenset(skip)
        return node

    def parse_synchronized(self) -> Node:
        start = self.i
        self.i += 1
        self._consume_parens()
        children = []
        if self.at("{"):
            body = self.parse_block()
            body.role = "body"
            children.append(body)
        else:
            self.degraded = True
        return Node("synchronized_statement", start, self.i, children=children)

    def parse_labeled(self) -> Node:
        start = self.i
        label = self.text()
        self.i += 2  # IDENT ':'
        children = []
        body = self.parse_embedded("body")
        if body:
            children.append(body)
        node = Node("labeled_statement", start, self.i, children=children, label=label)
        node.scan_skip = frozenset({start})
        return node

    def parse_local_decl(
        self, name_idx: int, ty_start: int, kind: str = "local_variable_declaration"
    ) -> Node:
        start = self.i
        decls, after = self._parse_declarators(name_idx, self.n)
        self.i = max(after, self.i)
        self._consume_to_semicolon()
        node = Node(kind, start, self.i, decls=decls)
        node.scan_skip = frozenset(range(start, name_idx))
        return node

    def parse_expression_statement(self) -> Node:
        start = self.i
        self._consume_to_semicolon()
        if self.i == start:
            self.i += 1
            self.degraded = True
            return Node("error", start, self.i)
        return Node("expression_statement", start, self.i)

    def parse_method(self, kind: str) -> Node:
        start = self.i
        while self.i < self.n and not self.at("("):
            if self.text() in ("{", "}", ";"):
                break
            self.i += 1
        if self.at("("):
            self._consume_parens()
        while self.i < self.n and self.text() not in ("{", ";", "}"):
            self.i += 1
        children = []
        if self.at("{"):
            children.append(self.parse_block())
        elif self.at(";"):
            self.i += 1
        else:
            self.degraded = True
        return Node(kind, start, self.i, children=children)

    def parse_class_like(self) -> Node:
        start = self.i
        j = self._skip_mods_idx(self.i)
        self.i = j if j is not None else self.i
        is_enum = self.at_word("enum")
        if self.at("@") and self._txt(self.i + 1) == "interface":
            self.i += 2
        elif self.text() in ("class", "interface", "enum"):
            self.i += 1
        if self.i < self.n and self.toks[self.i].kind == "word":
            self.i += 1  # type name
        if self.at("<"):
            k = self._skip_angles_idx(self.i)
            self.i = k if k is not None else self.i + 1
        while self.i < self.n and not self.at("{") and not self.at(";"):
            self.i += 1  # extends / implements clauses
        children = []
        if self.at("{"):
            children.append(self.parse_class_body(is_enum))
        elif self.at(";"):
            self.i += 1
        else:
            self.degraded = True
        return Node("class_declaration", start, self.i, children=children)

    def parse_class_body(self, is_enum: bool = False) -> Node:
        start = self.i
        self.i += 1  # '{'
        children: list[Node] = []
        if is_enum:
            constants = self._parse_enum_constants()
            if constants is not None:
                children.append(constants)
        while self.i < self.n and not self.at("}"):
            before = self.i
            children.append(self.parse_member())
            if self.i == before:
                self.i += 1
                self.degraded = True
        if self.at("}"):
            self.i += 1
        else:
            self.degraded = True
        return Node("class_body", start, self.i, children=children)

    def _parse_enum_constants(self) -> Optional[Node]:
        start = self.i
        depth = 0
        while self.i < self.n:
            s = self.text()
            if depth == 0 and s in (";", "}"):
                if s == ";":
                    self.i += 1
                break
            if s in _OPEN:
                depth += 1
            elif s in _CLOSE:
                depth -= 1
            self.i += 1
        if self.i > start:
            return Node("field_declaration", start, self.i)
        return None

    def parse_member(self) -> Node:
        start = self.i
        s = self.text()
        if s == ";":
            self.i += 1
            return Node("empty_statement", start, self.i)
        if s == "{":
            return self.parse_block()
        if self.at_word("static") and self._txt(self.i + 1) == "{":
            self.i += 1
            block = self.parse_block()
            block.tok_lo = start  # fold 'static' into the initializer block
            return block
        tag, extra = self._member_ahead(self.i)
        if tag == "class":
            return self.parse_class_like()
        if tag == "method":
            return self.parse_method("method_declaration")
        if tag == "ctor":
            return self.parse_method("constructor_declaration")
        if tag == "field":
            return self.parse_local_decl(*extra, kind="field_declaration")
        return self.parse_statement()

    # ------------------------------------------------------------------ #

    def _simple(self, kind: str) -> Node:
        start = self.i
        self.i += 1
        self._consume_to_semicolon()
        return Node(kind, start, self.i)

    def _jump(self, kind: str) -> Node:
        start = self.i
        self.i += 1
        label = None
        if self.i < self.n and is_identifier(self.toks[self.i]):
            label = self.text()
            self.i += 1
        if self.at(";"):
            self.i += 1
        else:
            self.degraded = True
        return Node(kind, start, self.i, label=label)

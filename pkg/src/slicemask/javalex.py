"""Java tokenizer producing verbatim leaf tokens with byte and line spans.

Comments and whitespace are trivia: they are skipped, but token byte spans
always index into the original source so the token stream can be re-anchored
exactly.  The tokenizer never raises on malformed input; unterminated
strings/comments and unexpected characters are absorbed and flagged through
the ``clean`` result field.
"""

from dataclasses import dataclass

RESERVED = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    """.split()
)

#: words that can never be data-flow variables (reserved words plus literals)
NON_VARIABLE_WORDS = RESERVED | frozenset({"true", "false", "null"})

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"}
)

MODIFIER_WORDS = frozenset(
    {
        "public",
        "protected",
        "private",
        "static",
        "final",
        "abstract",
        "synchronized",
        "native",
        "transient",
        "volatile",
        "strictfp",
        "default",
    }
)

_OPS_4 = (">>>=",)
_OPS_3 = (">>>", "<<=", ">>=", "...")
_OPS_2 = (
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "%=", "&=", "|=", "^=", "<<", ">>", "->", "::",
)
_OPS_1 = frozenset("+-*/%=<>!&|^~?:;,.(){}[]@")

_HEX_DIGITS = frozenset("0123456789abcdefABCDEF_")


@dataclass(frozen=True)
class RawToken:
    text: str
    kind: str  # word | number | string | char | op
    start_byte: int
    end_byte: int
    line: int
    end_line: int


def is_identifier(tok: RawToken) -> bool:
    return tok.kind == "word" and tok.text not in NON_VARIABLE_WORDS


def _word_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _word_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(source: str) -> tuple[list[RawToken], bool]:
    """Tokenize Java source; returns (tokens, clean).

    ``clean`` is False when the lexer had to recover (unterminated string or
    comment, stray character).  Tokens are emitted for stray characters too,
    so every non-trivia byte of the input belongs to exactly one token.
    """
    n = len(source)
    bytepos = [0] * (n + 1)
    for k, ch in enumerate(source):
        bytepos[k + 1] = bytepos[k] + len(ch.encode("utf-8"))

    toks: list[RawToken] = []
    clean = True
    i = 0
    line = 1

    def emit(j: int, kind: str, start_line: int) -> None:
        text = source[i:j]
        toks.append(
            RawToken(
                text=text,
                kind=kind,
                start_byte=bytepos[i],
                end_byte=bytepos[j],
                line=start_line,
                end_line=start_line + text.count("\n"),
            )
        )

    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r\f\x0b":
            i += 1
            continue
        if ch == "/" and source.startswith("//", i):
            j = source.find("\n", i)
            i = n if j < 0 else j
            continue
        if ch == "/" and source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j < 0:
                clean = False
                line += source.count("\n", i)
                i = n
            else:
                line += source.count("\n", i, j + 2)
                i = j + 2
            continue
        if _word_start(ch):
            j = i + 1
            while j < n and _word_part(source[j]):
                j += 1
            emit(j, "word", line)
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            i, j = i, _scan_number(source, i)
            emit(j, "number", line)
            i = j
            continue
        if ch == '"':
            j, ok, start_line = _scan_string(source, i, line)
            if not ok:
                clean = False
            emit(j, "string", line)
            line += source.count("\n", i, j)
            i = j
            continue
        if ch == "'":
            j, ok = _scan_char(source, i)
            if not ok:
                clean = False
            emit(j, "char", line)
            i = j
            continue
        op = _match_op(source, i)
        if op:
            j = i + len(op)
            emit(j, "op", line)
            i = j
            continue
        # Unknown character: keep it as a one-char op token so ownership and
        # round-trip invariants still hold, but flag the stream as dirty.
        clean = False
        emit(i + 1, "op", line)
        i += 1

    return toks, clean


def _scan_number(source: str, i: int) -> int:
    n = len(source)
    j = i
    if source.startswith(("0x", "0X"), j):
        j += 2
        while j < n and source[j] in _HEX_DIGITS:
            j += 1
        if j < n and source[j] == ".":
            j += 1
            while j < n and source[j] in _HEX_DIGITS:
                j += 1
        if j < n and source[j] in "pP":
            k = j + 1
            if k < n and source[k] in "+-":
                k += 1
            if k < n and source[k].isdigit():
                j = k
                while j < n and (source[j].isdigit() or source[j] == "_"):
                    j += 1
    elif source.startswith(("0b", "0B"), j):
        j += 2
        while j < n and source[j] in "01_":
            j += 1
    else:
        while j < n and (source[j].isdigit() or source[j] == "_"):
            j += 1
        if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
            j += 1
            while j < n and (source[j].isdigit() or source[j] == "_"):
                j += 1
        elif j < n and source[j] == "." and source[i] != ".":
            # trailing dot as in "1." followed by non-digit: leave the dot out
            pass
        if j < n and source[j] in "eE":
            k = j + 1
            if k < n and source[k] in "+-":
                k += 1
            if k < n and source[k].isdigit():
                j = k
                while j < n and (source[j].isdigit() or source[j] == "_"):
                    j += 1
    if j < n and source[j] in "lLfFdD":
        j += 1
    return j


def _scan_string(source: str, i: int, line: int) -> tuple[int, bool, int]:
    n = len(source)
    if source.startswith('"""', i):
        j = source.find('"""', i + 3)
        if j < 0:
            return n, False, line
        return j + 3, True, line
    j = i + 1
    while j < n:
        ch = source[j]
        if ch == "\\" and j + 1 < n:
            j += 2
            continue
        if ch == '"':
            return j + 1, True, line
        if ch == "\n":
            return j, False, line
        j += 1
    return n, False, line


def _scan_char(source: str, i: int) -> tuple[int, bool]:
    n = len(source)
    j = i + 1
    while j < n:
        ch = source[j]
        if ch == "\\" and j + 1 < n:
            j += 2
            continue
        if ch == "'":
            return j + 1, True
        if ch == "\n":
            return j, False
        j += 1
    return n, False


def _match_op(source: str, i: int) -> str | None:
    for group in (_OPS_4, _OPS_3, _OPS_2):
        for op in group:
            if source.startswith(op, i):
                return op
    if source[i] in _OPS_1:
        return source[i]
    return None

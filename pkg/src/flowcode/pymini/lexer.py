"""Indentation-sensitive lexer for PyMini source text."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, UnsupportedFeature
from .nodes import KEYWORDS

# longest first so e.g. "**=" wins over "**" and "*"
OPERATORS = (
    "**=", "//=", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=",
    "**", "//", "+", "-", "*", "/", "%", "<", ">", "=", "(", ")", ",", ":",
)

STRING_ESCAPES = {"\\": "\\", "'": "'", '"': '"', "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    type: str  # NAME KEYWORD INT STRING OP NEWLINE INDENT DEDENT EOF
    value: str
    line: int
    col: int


def lex(source: str) -> list[Token]:
    """Tokenize source; emits NEWLINE/INDENT/DEDENT like the host language."""
    tokens: list[Token] = []
    indent_depth = 0
    lines = source.split("\n")
    for lineno, raw_line in enumerate(lines, start=1):
        if "\t" in raw_line:
            raise UnsupportedFeature("tab characters are not supported", lineno, raw_line.index("\t") + 1)
        stripped = raw_line.strip()
        if not stripped or stripped.startswith("#"):
            continue

        n_spaces = len(raw_line) - len(raw_line.lstrip(" "))
        if n_spaces % 4 != 0:
            raise ParseError("indentation must be a multiple of 4 spaces", lineno, n_spaces + 1)
        depth = n_spaces // 4
        if depth > indent_depth + 1:
            raise ParseError("indented too deeply", lineno, n_spaces + 1)
        while depth > indent_depth:
            tokens.append(Token("INDENT", "", lineno, 1))
            indent_depth += 1
        while depth < indent_depth:
            tokens.append(Token("DEDENT", "", lineno, 1))
            indent_depth -= 1

        _lex_line(raw_line, lineno, n_spaces, tokens)
        tokens.append(Token("NEWLINE", "", lineno, len(raw_line) + 1))

    last_line = len(lines) + 1
    while indent_depth > 0:
        tokens.append(Token("DEDENT", "", last_line, 1))
        indent_depth -= 1
    tokens.append(Token("EOF", "", last_line, 1))
    return tokens


def _lex_line(line: str, lineno: int, start: int, out: list[Token]) -> None:
    i = start
    n = len(line)
    while i < n:
        c = line[i]
        if c == " ":
            i += 1
            continue
        if c == "#":
            return
        col = i + 1
        if c.isdigit():
            j = i
            while j < n and line[j].isdigit():
                j += 1
            if j < n and (line[j].isalpha() or line[j] == "_" or line[j] == "."):
                raise UnsupportedFeature("only decimal integer literals are supported", lineno, col)
            out.append(Token("INT", line[i:j], lineno, col))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (line[j].isalnum() or line[j] == "_"):
                j += 1
            word = line[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "NAME"
            out.append(Token(kind, word, lineno, col))
            i = j
            continue
        if c in ("'", '"'):
            raw, i = _lex_string(line, i, lineno)
            out.append(Token("STRING", raw, lineno, col))
            continue
        for op in OPERATORS:
            if line.startswith(op, i):
                out.append(Token("OP", op, lineno, col))
                i += len(op)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", lineno, col)


def _lex_string(line: str, i: int, lineno: int) -> tuple[str, int]:
    quote = line[i]
    j = i + 1
    while j < len(line):
        if line[j] == "\\":
            if j + 1 >= len(line) or line[j + 1] not in STRING_ESCAPES:
                raise ParseError("unsupported string escape", lineno, j + 1)
            j += 2
            continue
        if line[j] == quote:
            return line[i : j + 1], j + 1
        j += 1
    raise ParseError("unterminated string literal", lineno, i + 1)


def decode_string(raw: str) -> str:
    body = raw[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(STRING_ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def code_token_values(source: str) -> list[str]:
    """Visible lexemes only (no layout tokens); used for metric tokenization."""
    return [
        t.value
        for t in lex(source)
        if t.type in ("NAME", "KEYWORD", "INT", "STRING", "OP")
    ]

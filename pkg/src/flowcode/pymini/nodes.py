"""AST node types for PyMini, the executable code subset of this toolchain.

A program is a single function definition over 64-bit integers, booleans
and strings. Expression nodes carry a `parens` count so that explicit
parenthesization from the source survives a parse/print round trip
byte-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field


KEYWORDS = frozenset(
    {
        "def", "return", "if", "elif", "else", "while", "for", "in",
        "and", "or", "not", "True", "False", "None",
    }
)

BUILTINS = frozenset({"print", "len", "abs", "min", "max", "range"})

ARITH_OPS = ("+", "-", "*", "/", "//", "%", "**")
COMPARE_OPS = ("==", "!=", "<", "<=", ">", ">=")


def is_valid_identifier(name: str) -> bool:
    if not name or name in KEYWORDS:
        return False
    if not (name[0].isalpha() or name[0] == "_"):
        return False
    return all(c.isalnum() or c == "_" for c in name[1:])


# --- expressions ---------------------------------------------------------


@dataclass
class Expr:
    parens: int = field(default=0, kw_only=True)


@dataclass
class IntLit(Expr):
    value: int = 0


@dataclass
class BoolLit(Expr):
    value: bool = False


@dataclass
class StrLit(Expr):
    # raw is the source lexeme including quotes; value is the decoded text
    raw: str = "''"
    value: str = ""


@dataclass
class Name(Expr):
    id: str = ""


@dataclass
class Unary(Expr):
    op: str = "-"
    operand: Expr = None  # type: ignore[assignment]


@dataclass
class Binary(Expr):
    op: str = "+"
    left: Expr = None  # type: ignore[assignment]
    right: Expr = None  # type: ignore[assignment]


@dataclass
class Compare(Expr):
    op: str = "=="
    left: Expr = None  # type: ignore[assignment]
    right: Expr = None  # type: ignore[assignment]


@dataclass
class BoolOp(Expr):
    op: str = "and"
    left: Expr = None  # type: ignore[assignment]
    right: Expr = None  # type: ignore[assignment]


@dataclass
class Call(Expr):
    name: str = ""
    args: tuple[Expr, ...] = ()


# --- statements ----------------------------------------------------------


@dataclass
class Stmt:
    pass


@dataclass
class Assign(Stmt):
    target: str
    value: Expr


@dataclass
class AugAssign(Stmt):
    target: str
    op: str  # base operator, e.g. "+" for "+="
    value: Expr


@dataclass
class ExprStmt(Stmt):
    value: Expr


@dataclass
class Return(Stmt):
    value: Expr | None = None


@dataclass
class Print(Stmt):
    args: tuple[Expr, ...] = ()


@dataclass
class If(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]
    elifs: tuple[tuple[Expr, tuple[Stmt, ...]], ...] = ()
    orelse: tuple[Stmt, ...] = ()


@dataclass
class While(Stmt):
    cond: Expr
    body: tuple[Stmt, ...]


@dataclass
class ForRange(Stmt):
    var: str
    args: tuple[Expr, ...]  # 1..3 range arguments
    body: tuple[Stmt, ...]


@dataclass
class Program:
    name: str
    params: tuple[str, ...]
    body: tuple[Stmt, ...]


def walk_statements(body: tuple[Stmt, ...]):
    """Yield every statement in source order, descending into blocks."""
    for stmt in body:
        yield stmt
        if isinstance(stmt, If):
            yield from walk_statements(stmt.body)
            for _, elif_body in stmt.elifs:
                yield from walk_statements(elif_body)
            yield from walk_statements(stmt.orelse)
        elif isinstance(stmt, (While, ForRange)):
            yield from walk_statements(stmt.body)


def walk_expressions(expr: Expr):
    yield expr
    if isinstance(expr, Unary):
        yield from walk_expressions(expr.operand)
    elif isinstance(expr, (Binary, Compare, BoolOp)):
        yield from walk_expressions(expr.left)
        yield from walk_expressions(expr.right)
    elif isinstance(expr, Call):
        for arg in expr.args:
            yield from walk_expressions(arg)


def statement_expressions(stmt: Stmt):
    """Expressions evaluated directly by a statement (not nested blocks)."""
    if isinstance(stmt, (Assign, AugAssign, ExprStmt)):
        yield stmt.value
    elif isinstance(stmt, Return):
        if stmt.value is not None:
            yield stmt.value
    elif isinstance(stmt, Print):
        yield from stmt.args
    elif isinstance(stmt, If):
        yield stmt.cond
        for cond, _ in stmt.elifs:
            yield cond
    elif isinstance(stmt, While):
        yield stmt.cond
    elif isinstance(stmt, ForRange):
        yield from stmt.args

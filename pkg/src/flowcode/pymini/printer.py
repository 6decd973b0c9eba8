"""Canonical source printer for PyMini ASTs.

The surface form is deterministic: 4-space indents, one space around
binary/comparison/boolean operators, parentheses exactly as recorded on
each node, and a single trailing newline. parse(print_canonical(p))
reproduces p exactly.
"""

from __future__ import annotations

from .nodes import (
    Assign,
    AugAssign,
    Binary,
    BoolLit,
    BoolOp,
    Call,
    Compare,
    Expr,
    ExprStmt,
    ForRange,
    If,
    IntLit,
    Name,
    Print,
    Program,
    Return,
    Stmt,
    StrLit,
    Unary,
    While,
)


def expr_text(expr: Expr) -> str:
    return "(" * expr.parens + _expr_inner(expr) + ")" * expr.parens


def _expr_inner(expr: Expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "True" if expr.value else "False"
    if isinstance(expr, StrLit):
        return expr.raw
    if isinstance(expr, Name):
        return expr.id
    if isinstance(expr, Unary):
        if expr.op == "not":
            return f"not {expr_text(expr.operand)}"
        return f"{expr.op}{expr_text(expr.operand)}"
    if isinstance(expr, (Binary, Compare, BoolOp)):
        return f"{expr_text(expr.left)} {expr.op} {expr_text(expr.right)}"
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(expr_text(a) for a in expr.args)})"
    raise TypeError(f"unknown expression node: {expr!r}")


def stmt_text(stmt: Stmt) -> str:
    """Single-line text of a simple statement (no indent, no newline)."""
    if isinstance(stmt, Assign):
        return f"{stmt.target} = {expr_text(stmt.value)}"
    if isinstance(stmt, AugAssign):
        return f"{stmt.target} {stmt.op}= {expr_text(stmt.value)}"
    if isinstance(stmt, ExprStmt):
        return expr_text(stmt.value)
    if isinstance(stmt, Return):
        return "return" if stmt.value is None else f"return {expr_text(stmt.value)}"
    if isinstance(stmt, Print):
        return f"print({', '.join(expr_text(a) for a in stmt.args)})"
    raise TypeError(f"not a simple statement: {stmt!r}")


def _emit_block(body: tuple[Stmt, ...], depth: int, out: list[str]) -> None:
    pad = "    " * depth
    for stmt in body:
        if isinstance(stmt, If):
            out.append(f"{pad}if {expr_text(stmt.cond)}:")
            _emit_block(stmt.body, depth + 1, out)
            for cond, blk in stmt.elifs:
                out.append(f"{pad}elif {expr_text(cond)}:")
                _emit_block(blk, depth + 1, out)
            if stmt.orelse:
                out.append(f"{pad}else:")
                _emit_block(stmt.orelse, depth + 1, out)
        elif isinstance(stmt, While):
            out.append(f"{pad}while {expr_text(stmt.cond)}:")
            _emit_block(stmt.body, depth + 1, out)
        elif isinstance(stmt, ForRange):
            args = ", ".join(expr_text(a) for a in stmt.args)
            out.append(f"{pad}for {stmt.var} in range({args}):")
            _emit_block(stmt.body, depth + 1, out)
        else:
            out.append(pad + stmt_text(stmt))


def print_canonical(program: Program) -> str:
    lines = [f"def {program.name}({', '.join(program.params)}):"]
    _emit_block(program.body, 1, lines)
    return "\n".join(lines) + "\n"

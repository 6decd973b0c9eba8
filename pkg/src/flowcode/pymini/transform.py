"""AST analyses and rewrites shared by the lowering and augmentation stages."""

from __future__ import annotations

import copy

from .nodes import (
    Assign,
    AugAssign,
    BUILTINS,
    Binary,
    Call,
    Compare,
    Expr,
    ForRange,
    If,
    IntLit,
    Name,
    Program,
    Stmt,
    Unary,
    While,
    statement_expressions,
    walk_expressions,
    walk_statements,
)


def identifiers(program: Program) -> dict[str, set[str]]:
    """Function and variable identifier sets, builtins excluded.

    functions: the defined name plus every user-called name.
    variables: parameters, assignment targets, and loop variables.
    """
    functions = {program.name}
    variables = set(program.params)
    for stmt in walk_statements(program.body):
        if isinstance(stmt, (Assign, AugAssign)):
            variables.add(stmt.target)
        elif isinstance(stmt, ForRange):
            variables.add(stmt.var)
        for expr in statement_expressions(stmt):
            for node in walk_expressions(expr):
                if isinstance(node, Call) and node.name not in BUILTINS:
                    functions.add(node.name)
    return {"functions": functions, "variables": variables}


def identifier_occurrence_order(program: Program) -> list[str]:
    """Every function/variable identifier in first-occurrence order."""
    order: list[str] = []
    seen: set[str] = set()

    def add(name: str) -> None:
        if name not in seen and name not in BUILTINS:
            seen.add(name)
            order.append(name)

    add(program.name)
    for p in program.params:
        add(p)
    for stmt in walk_statements(program.body):
        if isinstance(stmt, (Assign, AugAssign)):
            add(stmt.target)
        elif isinstance(stmt, ForRange):
            add(stmt.var)
        for expr in statement_expressions(stmt):
            for node in walk_expressions(expr):
                if isinstance(node, Name):
                    add(node.id)
                elif isinstance(node, Call):
                    add(node.name)
    return order


def apply_renaming(program: Program, mapping: dict[str, str]) -> Program:
    """Rewrite identifiers consistently at definitions and uses."""

    def ren(name: str) -> str:
        return mapping.get(name, name)

    def rw_expr(expr: Expr) -> Expr:
        if isinstance(expr, Name):
            return Name(id=ren(expr.id), parens=expr.parens)
        if isinstance(expr, Unary):
            return Unary(op=expr.op, operand=rw_expr(expr.operand), parens=expr.parens)
        if isinstance(expr, (Binary, Compare)) or type(expr).__name__ == "BoolOp":
            cls = type(expr)
            return cls(op=expr.op, left=rw_expr(expr.left), right=rw_expr(expr.right), parens=expr.parens)
        if isinstance(expr, Call):
            return Call(
                name=ren(expr.name) if expr.name not in BUILTINS else expr.name,
                args=tuple(rw_expr(a) for a in expr.args),
                parens=expr.parens,
            )
        return copy.deepcopy(expr)

    def rw_block(body: tuple[Stmt, ...]) -> tuple[Stmt, ...]:
        return tuple(rw_stmt(s) for s in body)

    def rw_stmt(stmt: Stmt) -> Stmt:
        if isinstance(stmt, Assign):
            return Assign(ren(stmt.target), rw_expr(stmt.value))
        if isinstance(stmt, AugAssign):
            return AugAssign(ren(stmt.target), stmt.op, rw_expr(stmt.value))
        if isinstance(stmt, If):
            return If(
                rw_expr(stmt.cond),
                rw_block(stmt.body),
                tuple((rw_expr(c), rw_block(b)) for c, b in stmt.elifs),
                rw_block(stmt.orelse),
            )
        if isinstance(stmt, While):
            return While(rw_expr(stmt.cond), rw_block(stmt.body))
        if isinstance(stmt, ForRange):
            return ForRange(ren(stmt.var), tuple(rw_expr(a) for a in stmt.args), rw_block(stmt.body))
        from .nodes import ExprStmt, Print, Return

        if isinstance(stmt, ExprStmt):
            return ExprStmt(rw_expr(stmt.value))
        if isinstance(stmt, Return):
            return Return(None if stmt.value is None else rw_expr(stmt.value))
        if isinstance(stmt, Print):
            return Print(tuple(rw_expr(a) for a in stmt.args))
        raise TypeError(f"unknown statement: {stmt!r}")

    return Program(ren(program.name), tuple(ren(p) for p in program.params), rw_block(program.body))


def _literal_step_value(expr: Expr) -> int:
    if isinstance(expr, IntLit):
        return expr.value
    if isinstance(expr, Unary) and expr.op == "-" and isinstance(expr.operand, IntLit):
        return -expr.operand.value
    raise ValueError("range step must be an integer literal")


def desugar_loops(program: Program) -> Program:
    """Rewrite every for-range loop into its while-loop form.

    `for v in range(a, b, s)` becomes `v = a` followed by
    `while v < b:` (or `v > b` for negative literal steps) whose body ends
    with `v += s`. This is the ground-truth form stored in corpora and the
    form the structuring compiler reconstructs.
    """

    def rw_block(body: tuple[Stmt, ...]) -> tuple[Stmt, ...]:
        out: list[Stmt] = []
        for stmt in body:
            if isinstance(stmt, ForRange):
                args = stmt.args
                if len(args) == 1:
                    start: Expr = IntLit(value=0)
                    stop = copy.deepcopy(args[0])
                    step_expr: Expr = IntLit(value=1)
                    step = 1
                else:
                    start = copy.deepcopy(args[0])
                    stop = copy.deepcopy(args[1])
                    step_expr = copy.deepcopy(args[2]) if len(args) == 3 else IntLit(value=1)
                    step = _literal_step_value(step_expr) if len(args) == 3 else 1
                cmp_op = "<" if step > 0 else ">"
                loop_body = rw_block(stmt.body) + (AugAssign(stmt.var, "+", step_expr),)
                out.append(Assign(stmt.var, start))
                out.append(While(Compare(op=cmp_op, left=Name(id=stmt.var), right=stop), loop_body))
            elif isinstance(stmt, If):
                out.append(
                    If(
                        stmt.cond,
                        rw_block(stmt.body),
                        tuple((c, rw_block(b)) for c, b in stmt.elifs),
                        rw_block(stmt.orelse),
                    )
                )
            elif isinstance(stmt, While):
                out.append(While(stmt.cond, rw_block(stmt.body)))
            else:
                out.append(stmt)
        return tuple(out)

    return Program(program.name, program.params, rw_block(program.body))

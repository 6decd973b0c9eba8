"""Seeded random PyMini program generator.

Produces well-formed programs covering assignments, prints, if/elif/else,
while and for-range with bounded nesting, for round-trip and pipeline
tests. Loops are built as counter loops so every generated program
terminates quickly under the interpreter, and returns appear only as the
final top-level statement so the lowering stays collision-free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .pymini import (
    Assign,
    AugAssign,
    Binary,
    BoolOp,
    Compare,
    Expr,
    ForRange,
    If,
    IntLit,
    Name,
    Print,
    Program,
    Stmt,
    StrLit,
    Unary,
    While,
    expr_text,
    parse,
    print_canonical,
)

_VAR_POOL = ["a", "b", "c", "d", "k", "m", "n", "p", "q", "s", "t", "u", "v", "w", "x", "y", "z"]
_FUNC_POOL = ["calc", "fun1", "solve", "work", "proc", "score", "tally", "shift"]
_STR_POOL = ["'ok'", "'done'", "'hi'", "'loop'", "'step'"]


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 3
    max_block_stmts: int = 3
    max_stmt_text: int = 46  # keeps block labels renderable
    branch_free: bool = False
    allow_strings: bool = True


class _Gen:
    def __init__(self, rng: random.Random, config: GenConfig):
        self.rng = rng
        self.config = config
        self.fresh_counter = 0

    def fresh_var(self, scope: list[str]) -> str:
        for _ in range(10):
            name = self.rng.choice(_VAR_POOL)
            if name not in scope:
                scope.append(name)
                return name
        self.fresh_counter += 1
        name = f"v{self.fresh_counter}"
        scope.append(name)
        return name

    def int_expr(self, scope: list[str], depth: int = 0) -> Expr:
        roll = self.rng.random()
        if depth >= 2 or roll < 0.35 or not scope:
            if scope and roll < 0.6:
                return Name(id=self.rng.choice(scope))
            return IntLit(value=self.rng.randint(0, 20))
        left = self.int_expr(scope, depth + 1)
        right = self.int_expr(scope, depth + 1)
        op = self.rng.choice(["+", "-", "*", "+", "-"])
        node = Binary(op=op, left=left, right=right)
        if self.rng.random() < 0.3:
            node.parens += 1
        return node

    def guarded_expr(self, scope: list[str]) -> Expr:
        """Integer expression that cannot overflow or divide by zero for any
        64-bit inputs that the battery supplies (small constants, + - *)."""
        return self.int_expr(scope)

    def condition(self, scope: list[str]) -> Expr:
        left = Name(id=self.rng.choice(scope)) if scope else IntLit(value=1)
        cmp_op = self.rng.choice(["<", "<=", ">", ">=", "==", "!="])
        node: Expr = Compare(op=cmp_op, left=left, right=IntLit(value=self.rng.randint(-3, 12)))
        if scope and self.rng.random() < 0.25:
            second = Compare(
                op=self.rng.choice(["<", ">"]),
                left=Name(id=self.rng.choice(scope)),
                right=IntLit(value=self.rng.randint(-3, 12)),
            )
            node = BoolOp(op=self.rng.choice(["and", "or"]), left=node, right=second)
        if self.rng.random() < 0.15:
            node = Unary(op="not", operand=_parenthesize(node))
        return node

    def simple_stmt(self, scope: list[str]) -> Stmt:
        roll = self.rng.random()
        if roll < 0.5 or not scope:
            target = (
                self.fresh_var(scope)
                if self.rng.random() < 0.4 or not scope
                else self.rng.choice(scope)
            )
            return Assign(target, self.guarded_expr([v for v in scope if v != target] or scope))
        if roll < 0.8:
            return AugAssign(self.rng.choice(scope), self.rng.choice(["+", "-", "*"]), IntLit(value=self.rng.randint(1, 5)))
        args: list[Expr] = [Name(id=self.rng.choice(scope))]
        if self.config.allow_strings and self.rng.random() < 0.4:
            raw = self.rng.choice(_STR_POOL)
            args.insert(0, StrLit(raw=raw, value=raw[1:-1]))
        return Print(tuple(args))

    def short_stmt(self, scope: list[str]) -> Stmt:
        for _ in range(8):
            stmt = self.simple_stmt(scope)
            if _stmt_fits(stmt, self.config.max_stmt_text):
                return stmt
        return AugAssign(scope[-1], "+", IntLit(value=1))

    def while_stmt(self, scope: list[str], depth: int) -> Stmt:
        counter = self.fresh_var(scope)
        limit = self.rng.randint(2, 6)
        init = Assign(counter, IntLit(value=0))
        body = self.block(scope, depth + 1, forbid=counter)
        body.append(AugAssign(counter, "+", IntLit(value=self.rng.randint(1, 2))))
        loop = While(Compare(op="<", left=Name(id=counter), right=IntLit(value=limit)), tuple(body))
        return _Seq((init, loop))

    def for_stmt(self, scope: list[str], depth: int) -> Stmt:
        var = self.fresh_var(scope)
        style = self.rng.randrange(3)
        if style == 0:
            args: tuple[Expr, ...] = (IntLit(value=self.rng.randint(1, 6)),)
        elif style == 1:
            lo = self.rng.randint(0, 3)
            args = (IntLit(value=lo), IntLit(value=lo + self.rng.randint(1, 5)))
        else:
            hi = self.rng.randint(4, 9)
            args = (IntLit(value=hi), IntLit(value=self.rng.randint(0, 2)), Unary(op="-", operand=IntLit(value=self.rng.randint(1, 2))))
        body = self.block(scope, depth + 1, forbid=var)
        return ForRange(var, args, tuple(body))

    def if_stmt(self, scope: list[str], depth: int) -> Stmt:
        cond = self.condition(scope)
        body = tuple(self.block(scope, depth + 1))
        elifs = []
        for _ in range(self.rng.randrange(3) if self.rng.random() < 0.3 else 0):
            elifs.append((self.condition(scope), tuple(self.block(scope, depth + 1))))
        orelse: tuple[Stmt, ...] = ()
        if self.rng.random() < 0.5:
            orelse = tuple(self.block(scope, depth + 1))
            # an else block that is exactly one if-statement prints back as
            # an elif chain; pad it so the round trip stays byte-exact
            if len(orelse) == 1 and isinstance(orelse[0], If):
                orelse = orelse + (self.short_stmt(scope),)
        return If(cond, body, tuple(elifs), orelse)

    def block(self, scope: list[str], depth: int, forbid: str | None = None) -> list[Stmt]:
        inner_scope = [v for v in scope if v != forbid]
        out: list[Stmt] = []
        n = self.rng.randint(1, self.config.max_block_stmts)
        for _ in range(n):
            out.extend(_flatten(self.stmt(inner_scope, depth)))
        # propagate any vars the block introduced (minus the loop counter)
        for v in inner_scope:
            if v not in scope and v != forbid:
                scope.append(v)
        return out

    def stmt(self, scope: list[str], depth: int) -> Stmt:
        if self.config.branch_free or depth >= self.config.max_depth:
            return self.short_stmt(scope)
        roll = self.rng.random()
        if roll < 0.18:
            return self.if_stmt(scope, depth)
        if roll < 0.28:
            return self.while_stmt(scope, depth)
        if roll < 0.38:
            return self.for_stmt(scope, depth)
        return self.short_stmt(scope)

    def program(self) -> Program:
        name = self.rng.choice(_FUNC_POOL)
        scope: list[str] = []
        n_params = self.rng.randint(1, 3)
        while len(scope) < n_params:
            self.fresh_var(scope)
        params = tuple(scope)
        body: list[Stmt] = []
        for _ in range(self.rng.randint(1, 4)):
            body.extend(_flatten(self.stmt(scope, depth=1)))
        ret_scope = list(scope)
        body.append(_ReturnStmt(self.guarded_expr(ret_scope)))
        return Program(name, params, tuple(_materialize(body)))


@dataclass(frozen=True)
class _Seq:
    stmts: tuple[Stmt, ...]


def _flatten(stmt: Stmt) -> list[Stmt]:
    if isinstance(stmt, _Seq):
        return list(stmt.stmts)
    return [stmt]


def _ReturnStmt(expr: Expr) -> Stmt:
    from .pymini import Return

    return Return(expr)


def _materialize(body: list[Stmt]) -> list[Stmt]:
    return body


def _parenthesize(expr: Expr) -> Expr:
    expr.parens += 1
    return expr


def _stmt_fits(stmt: Stmt, limit: int) -> bool:
    from .pymini import stmt_text

    return len(stmt_text(stmt)) <= limit


def generate_program(seed: int, config: GenConfig | None = None) -> Program:
    """Deterministic random program; always re-parses canonically."""
    config = config or GenConfig()
    rng = random.Random(seed)
    program = _Gen(rng, config).program()
    # normalize through the parser so every node carries source-accurate state
    return parse(print_canonical(program))


def generate_source(seed: int, config: GenConfig | None = None) -> str:
    return print_canonical(generate_program(seed, config))

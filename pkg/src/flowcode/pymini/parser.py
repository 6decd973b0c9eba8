"""Recursive-descent parser producing PyMini ASTs.

Explicit parentheses are counted onto the enclosed expression node so the
canonical printer can reproduce the source form byte-exactly.
"""

from __future__ import annotations

from .errors import ParseError, UnsupportedFeature
from .lexer import Token, decode_string, lex
from .nodes import (
    Assign,
    AugAssign,
    BUILTINS,
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
    walk_expressions,
    walk_statements,
    statement_expressions,
)

# Python constructs we recognize only to reject with a clear error
_PYTHON_ONLY = frozenset(
    {
        "import", "from", "class", "try", "except", "finally", "raise",
        "with", "lambda", "global", "nonlocal", "del", "pass", "break",
        "continue", "assert", "yield", "async", "await", "match",
    }
)

_AUG_OPS = {"+=": "+", "-=": "-", "*=": "*", "/=": "/", "//=": "//", "%=": "%", "**=": "**"}


class _Stream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        return tok

    def expect(self, type_: str, value: str | None = None) -> Token:
        tok = self.peek()
        if tok.type != type_ or (value is not None and tok.value != value):
            want = value if value is not None else type_
            raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.col, expected=want)
        return self.advance()

    def match(self, type_: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == type_ and (value is None or tok.value == value)


def _describe(tok: Token) -> str:
    if tok.type in ("NEWLINE", "INDENT", "DEDENT", "EOF"):
        return tok.type.lower()
    return repr(tok.value)


def parse(source: str) -> Program:
    """Parse a full PyMini program (one function definition)."""
    ts = _Stream(lex(source))
    tok = ts.peek()
    if tok.type == "NAME" and tok.value in _PYTHON_ONLY:
        raise UnsupportedFeature(f"'{tok.value}' is outside the subset", tok.line, tok.col)
    if not ts.match("KEYWORD", "def"):
        raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.col, expected="def")
    ts.advance()
    name_tok = ts.expect("NAME")
    name = name_tok.value
    if name in BUILTINS:
        raise UnsupportedFeature(f"function name shadows builtin '{name}'", name_tok.line, name_tok.col)
    ts.expect("OP", "(")
    params: list[str] = []
    if not ts.match("OP", ")"):
        while True:
            p = ts.expect("NAME")
            if p.value in BUILTINS:
                raise UnsupportedFeature(f"parameter shadows builtin '{p.value}'", p.line, p.col)
            if p.value in params:
                raise ParseError(f"duplicate parameter '{p.value}'", p.line, p.col)
            params.append(p.value)
            if ts.match("OP", ","):
                ts.advance()
                continue
            break
    ts.expect("OP", ")")
    ts.expect("OP", ":")
    body = _parse_block(ts, func_name=name)
    tok = ts.peek()
    if tok.type != "EOF":
        raise UnsupportedFeature("only a single function definition is supported", tok.line, tok.col)
    program = Program(name, tuple(params), tuple(body))
    _check_program(program)
    return program


def _parse_block(ts: _Stream, func_name: str) -> list[Stmt]:
    ts.expect("NEWLINE")
    ts.expect("INDENT")
    stmts: list[Stmt] = []
    while not ts.match("DEDENT") and not ts.match("EOF"):
        stmts.append(_parse_statement(ts, func_name))
    if ts.match("DEDENT"):
        ts.advance()
    if not stmts:
        tok = ts.peek()
        raise ParseError("empty block", tok.line, tok.col)
    return stmts


def _parse_statement(ts: _Stream, func_name: str) -> Stmt:
    tok = ts.peek()
    if tok.type == "NAME" and tok.value in _PYTHON_ONLY:
        raise UnsupportedFeature(f"'{tok.value}' is outside the subset", tok.line, tok.col)
    if tok.type == "KEYWORD":
        if tok.value == "if":
            return _parse_if(ts, func_name)
        if tok.value == "while":
            ts.advance()
            cond = _parse_expression(ts)
            ts.expect("OP", ":")
            return While(cond, tuple(_parse_block(ts, func_name)))
        if tok.value == "for":
            return _parse_for(ts, func_name)
        if tok.value == "return":
            ts.advance()
            value = None if ts.match("NEWLINE") else _parse_expression(ts)
            ts.expect("NEWLINE")
            return Return(value)
        if tok.value == "def":
            raise UnsupportedFeature("nested function definitions", tok.line, tok.col)
        if tok.value in ("elif", "else"):
            raise ParseError(f"'{tok.value}' without matching 'if'", tok.line, tok.col)

    stmt = _parse_simple(ts)
    ts.expect("NEWLINE")
    return stmt


def _parse_simple(ts: _Stream) -> Stmt:
    tok = ts.peek()
    if tok.type == "NAME" and ts.peek(1).type == "OP":
        op = ts.peek(1).value
        if op == "=":
            _check_target(tok)
            ts.advance()
            ts.advance()
            return Assign(tok.value, _parse_expression(ts))
        if op in _AUG_OPS:
            _check_target(tok)
            ts.advance()
            ts.advance()
            return AugAssign(tok.value, _AUG_OPS[op], _parse_expression(ts))
    if tok.type == "NAME" and tok.value == "print" and ts.peek(1).value == "(":
        ts.advance()
        ts.advance()
        args: list[Expr] = []
        if not ts.match("OP", ")"):
            args.append(_parse_expression(ts))
            while ts.match("OP", ","):
                ts.advance()
                args.append(_parse_expression(ts))
        ts.expect("OP", ")")
        return Print(tuple(args))
    return ExprStmt(_parse_expression(ts))


def _check_target(tok: Token) -> None:
    if tok.value in BUILTINS:
        raise UnsupportedFeature(f"assignment shadows builtin '{tok.value}'", tok.line, tok.col)


def _parse_if(ts: _Stream, func_name: str) -> If:
    ts.advance()
    cond = _parse_expression(ts)
    ts.expect("OP", ":")
    body = tuple(_parse_block(ts, func_name))
    elifs: list[tuple[Expr, tuple[Stmt, ...]]] = []
    orelse: tuple[Stmt, ...] = ()
    while ts.match("KEYWORD", "elif"):
        ts.advance()
        econd = _parse_expression(ts)
        ts.expect("OP", ":")
        elifs.append((econd, tuple(_parse_block(ts, func_name))))
    if ts.match("KEYWORD", "else"):
        ts.advance()
        ts.expect("OP", ":")
        orelse = tuple(_parse_block(ts, func_name))
    return If(cond, body, tuple(elifs), orelse)


def _parse_for(ts: _Stream, func_name: str) -> ForRange:
    tok = ts.advance()
    var = ts.expect("NAME")
    if var.value in BUILTINS:
        raise UnsupportedFeature(f"loop variable shadows builtin '{var.value}'", var.line, var.col)
    ts.expect("KEYWORD", "in")
    fn = ts.peek()
    if not (fn.type == "NAME" and fn.value == "range"):
        raise UnsupportedFeature("for loops support only range(...) iterables", fn.line, fn.col)
    ts.advance()
    ts.expect("OP", "(")
    args = [_parse_expression(ts)]
    while ts.match("OP", ","):
        ts.advance()
        args.append(_parse_expression(ts))
    ts.expect("OP", ")")
    if len(args) > 3:
        raise UnsupportedFeature("range takes at most three arguments", tok.line, tok.col)
    if len(args) == 3 and _literal_step(args[2]) is None:
        raise UnsupportedFeature("range step must be a nonzero integer literal", tok.line, tok.col)
    ts.expect("OP", ":")
    return ForRange(var.value, tuple(args), tuple(_parse_block(ts, func_name)))


def _literal_step(expr: Expr) -> int | None:
    if isinstance(expr, IntLit) and expr.value != 0:
        return expr.value
    if isinstance(expr, Unary) and expr.op == "-" and isinstance(expr.operand, IntLit):
        return -expr.operand.value if expr.operand.value != 0 else None
    return None


# --- expressions ----------------------------------------------------------


def _parse_expression(ts: _Stream) -> Expr:
    return _parse_or(ts)


def _parse_or(ts: _Stream) -> Expr:
    node = _parse_and(ts)
    while ts.match("KEYWORD", "or"):
        ts.advance()
        node = BoolOp(op="or", left=node, right=_parse_and(ts))
    return node


def _parse_and(ts: _Stream) -> Expr:
    node = _parse_not(ts)
    while ts.match("KEYWORD", "and"):
        ts.advance()
        node = BoolOp(op="and", left=node, right=_parse_not(ts))
    return node


def _parse_not(ts: _Stream) -> Expr:
    if ts.match("KEYWORD", "not"):
        ts.advance()
        return Unary(op="not", operand=_parse_not(ts))
    return _parse_comparison(ts)


def _parse_comparison(ts: _Stream) -> Expr:
    node = _parse_arith(ts)
    if ts.peek().type == "OP" and ts.peek().value in ("==", "!=", "<", "<=", ">", ">="):
        op = ts.advance().value
        node = Compare(op=op, left=node, right=_parse_arith(ts))
        nxt = ts.peek()
        if nxt.type == "OP" and nxt.value in ("==", "!=", "<", "<=", ">", ">="):
            raise UnsupportedFeature("chained comparisons", nxt.line, nxt.col)
    return node


def _parse_arith(ts: _Stream) -> Expr:
    node = _parse_term(ts)
    while ts.peek().type == "OP" and ts.peek().value in ("+", "-"):
        op = ts.advance().value
        node = Binary(op=op, left=node, right=_parse_term(ts))
    return node


def _parse_term(ts: _Stream) -> Expr:
    node = _parse_factor(ts)
    while ts.peek().type == "OP" and ts.peek().value in ("*", "/", "//", "%"):
        op = ts.advance().value
        node = Binary(op=op, left=node, right=_parse_factor(ts))
    return node


def _parse_factor(ts: _Stream) -> Expr:
    if ts.match("OP", "-"):
        ts.advance()
        return Unary(op="-", operand=_parse_factor(ts))
    return _parse_power(ts)


def _parse_power(ts: _Stream) -> Expr:
    node = _parse_atom(ts)
    if ts.match("OP", "**"):
        ts.advance()
        # the exponent may itself be signed, mirroring the host grammar
        node = Binary(op="**", left=node, right=_parse_factor(ts))
    return node


def _parse_atom(ts: _Stream) -> Expr:
    tok = ts.peek()
    if tok.type == "INT":
        ts.advance()
        return IntLit(value=int(tok.value))
    if tok.type == "STRING":
        ts.advance()
        return StrLit(raw=tok.value, value=decode_string(tok.value))
    if tok.type == "KEYWORD" and tok.value in ("True", "False"):
        ts.advance()
        return BoolLit(value=tok.value == "True")
    if tok.type == "KEYWORD" and tok.value == "None":
        raise UnsupportedFeature("None literals in expressions", tok.line, tok.col)
    if tok.type == "NAME":
        if tok.value in _PYTHON_ONLY:
            raise UnsupportedFeature(f"'{tok.value}' is outside the subset", tok.line, tok.col)
        ts.advance()
        if ts.match("OP", "("):
            ts.advance()
            args: list[Expr] = []
            if not ts.match("OP", ")"):
                args.append(_parse_expression(ts))
                while ts.match("OP", ","):
                    ts.advance()
                    args.append(_parse_expression(ts))
            ts.expect("OP", ")")
            return Call(name=tok.value, args=tuple(args))
        nxt = ts.peek()
        if nxt.type == "OP" and nxt.value in ("[", "."):
            raise UnsupportedFeature("attribute access and subscripts", nxt.line, nxt.col)
        return Name(id=tok.value)
    if tok.type == "OP" and tok.value == "(":
        ts.advance()
        inner = _parse_expression(ts)
        ts.expect("OP", ")")
        inner.parens += 1
        return inner
    if tok.type == "OP" and tok.value in ("[", "{"):
        raise UnsupportedFeature("container literals", tok.line, tok.col)
    raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.col, expected="expression")


# --- whole-program checks -------------------------------------------------


def _terminates(stmt: Stmt) -> bool:
    if isinstance(stmt, Return):
        return True
    if isinstance(stmt, If) and stmt.orelse:
        blocks = [stmt.body, *[b for _, b in stmt.elifs], stmt.orelse]
        return all(any(_terminates(s) for s in blk) for blk in blocks)
    return False


def _check_block_reachability(body: tuple[Stmt, ...]) -> None:
    for stmt in body[:-1]:
        if _terminates(stmt):
            raise UnsupportedFeature("unreachable code after a terminating statement")
    for stmt in body:
        if isinstance(stmt, If):
            for blk in [stmt.body, *[b for _, b in stmt.elifs], stmt.orelse]:
                if blk:
                    _check_block_reachability(blk)
        elif isinstance(stmt, (While, ForRange)):
            _check_block_reachability(stmt.body)


def _check_program(program: Program) -> None:
    _check_block_reachability(program.body)
    for stmt in walk_statements(program.body):
        if isinstance(stmt, ForRange) and stmt.var in BUILTINS:
            raise UnsupportedFeature(f"loop variable shadows builtin '{stmt.var}'")
        for expr in statement_expressions(stmt):
            for node in walk_expressions(expr):
                if isinstance(node, Call):
                    if node.name == "print":
                        raise UnsupportedFeature("print can only appear as a statement")
                    if node.name != program.name and node.name not in BUILTINS:
                        raise UnsupportedFeature(f"call to unknown function '{node.name}'")


# --- fragment parsers (used by the structuring compiler) -------------------


def _fragment_stream(text: str) -> _Stream:
    if "\n" in text:
        raise ParseError("fragments must be single-line", 1, 1)
    return _Stream(lex(text))


def parse_expression_fragment(text: str) -> Expr:
    ts = _fragment_stream(text)
    expr = _parse_expression(ts)
    ts.expect("NEWLINE")
    return expr


def parse_expression_list_fragment(text: str) -> tuple[Expr, ...]:
    ts = _fragment_stream(text)
    exprs = [_parse_expression(ts)]
    while ts.match("OP", ","):
        ts.advance()
        exprs.append(_parse_expression(ts))
    ts.expect("NEWLINE")
    return tuple(exprs)


def parse_process_fragment(text: str) -> Stmt:
    """Parse the text of a Process block: assignment, augmented assignment,
    or a bare expression statement."""
    ts = _fragment_stream(text)
    stmt = _parse_simple(ts)
    ts.expect("NEWLINE")
    if isinstance(stmt, Print):
        raise ParseError("print is not a process statement", 1, 1)
    return stmt

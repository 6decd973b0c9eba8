"""Reference interpreter for PyMini.

Serves as the semantic oracle for logic-preserving transformations:
renamed programs must produce identical results here. Integers are 64-bit
signed with overflow reported as an error, evaluation is call-by-value,
and a step limit guards against non-termination.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    DivisionByZero,
    InterpError,
    Overflow,
    StepLimitExceeded,
    TypeMismatch,
)
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
    StrLit,
    Unary,
    While,
)

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

DEFAULT_STEP_LIMIT = 10**6
MAX_CALL_DEPTH = 200

Value = int | bool | str | None


@dataclass(frozen=True)
class RunResult:
    return_value: Value
    printed: str


class _ReturnSignal(Exception):
    def __init__(self, value: Value):
        self.value = value


class _Machine:
    def __init__(self, program: Program, step_limit: int):
        self.program = program
        self.step_limit = step_limit
        self.steps = 0
        self.depth = 0
        self.printed: list[str] = []

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.step_limit:
            raise StepLimitExceeded(f"exceeded {self.step_limit} steps")

    def call(self, args: list[Value]) -> Value:
        if len(args) != len(self.program.params):
            raise ArityMismatch(
                f"{self.program.name} expects {len(self.program.params)} arguments, got {len(args)}"
            )
        self.depth += 1
        if self.depth > MAX_CALL_DEPTH:
            raise StepLimitExceeded(f"call depth exceeded {MAX_CALL_DEPTH}")
        env = dict(zip(self.program.params, args))
        try:
            self.exec_block(self.program.body, env)
            return None
        except _ReturnSignal as sig:
            return sig.value
        finally:
            self.depth -= 1

    def exec_block(self, body, env: dict[str, Value]) -> None:
        for stmt in body:
            self.exec_stmt(stmt, env)

    def exec_stmt(self, stmt, env: dict[str, Value]) -> None:
        self.tick()
        if isinstance(stmt, Assign):
            env[stmt.target] = self.eval(stmt.value, env)
        elif isinstance(stmt, AugAssign):
            if stmt.target not in env:
                raise TypeMismatch(f"augmented assignment to undefined variable '{stmt.target}'")
            env[stmt.target] = _binary(stmt.op, env[stmt.target], self.eval(stmt.value, env))
        elif isinstance(stmt, ExprStmt):
            self.eval(stmt.value, env)
        elif isinstance(stmt, Return):
            raise _ReturnSignal(None if stmt.value is None else self.eval(stmt.value, env))
        elif isinstance(stmt, Print):
            values = [self.eval(a, env) for a in stmt.args]
            self.printed.append(" ".join(_to_display(v) for v in values) + "\n")
        elif isinstance(stmt, If):
            if _as_bool(self.eval(stmt.cond, env)):
                self.exec_block(stmt.body, env)
                return
            for cond, blk in stmt.elifs:
                self.tick()
                if _as_bool(self.eval(cond, env)):
                    self.exec_block(blk, env)
                    return
            if stmt.orelse:
                self.exec_block(stmt.orelse, env)
        elif isinstance(stmt, While):
            while True:
                self.tick()
                if not _as_bool(self.eval(stmt.cond, env)):
                    break
                self.exec_block(stmt.body, env)
        elif isinstance(stmt, ForRange):
            # semantics are defined as the while-loop desugaring: bounds are
            # re-evaluated each iteration, the loop variable persists
            start, stop, step = self._range_parts(stmt, env)
            env[stmt.var] = start
            while True:
                self.tick()
                stop_now = self._eval_int(stmt.args[1] if len(stmt.args) >= 2 else stmt.args[0], env)
                current = env[stmt.var]
                if not isinstance(current, int) or isinstance(current, bool):
                    raise TypeMismatch("loop variable must stay an integer")
                if step > 0:
                    if not current < stop_now:
                        break
                else:
                    if not current > stop_now:
                        break
                self.exec_block(stmt.body, env)
                env[stmt.var] = _binary("+", env[stmt.var], step)
        else:
            raise TypeMismatch(f"unknown statement: {stmt!r}")

    def _range_parts(self, stmt: ForRange, env) -> tuple[int, int, int]:
        if len(stmt.args) == 1:
            return 0, self._eval_int(stmt.args[0], env), 1
        start = self._eval_int(stmt.args[0], env)
        stop = self._eval_int(stmt.args[1], env)
        step = 1
        if len(stmt.args) == 3:
            step = self._eval_int(stmt.args[2], env)
            if step == 0:
                raise TypeMismatch("range step must be nonzero")
        return start, stop, step

    def _eval_int(self, expr: Expr, env) -> int:
        v = self.eval(expr, env)
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeMismatch("range arguments must be integers")
        return v

    def eval(self, expr: Expr, env: dict[str, Value]) -> Value:
        if isinstance(expr, IntLit):
            return _check_int(expr.value)
        if isinstance(expr, BoolLit):
            return expr.value
        if isinstance(expr, StrLit):
            return expr.value
        if isinstance(expr, Name):
            if expr.id not in env:
                raise TypeMismatch(f"undefined variable '{expr.id}'")
            return env[expr.id]
        if isinstance(expr, Unary):
            v = self.eval(expr.operand, env)
            if expr.op == "-":
                if not _is_int(v):
                    raise TypeMismatch("unary minus needs an integer")
                return _check_int(-v)
            if expr.op == "not":
                return not _as_bool(v)
            raise TypeMismatch(f"unknown unary operator {expr.op!r}")
        if isinstance(expr, Binary):
            return _binary(expr.op, self.eval(expr.left, env), self.eval(expr.right, env))
        if isinstance(expr, Compare):
            return _compare(expr.op, self.eval(expr.left, env), self.eval(expr.right, env))
        if isinstance(expr, BoolOp):
            left = _as_bool(self.eval(expr.left, env))
            if expr.op == "and":
                return left and _as_bool(self.eval(expr.right, env))
            return left or _as_bool(self.eval(expr.right, env))
        if isinstance(expr, Call):
            args = [self.eval(a, env) for a in expr.args]
            return self._call(expr.name, args)
        raise TypeMismatch(f"unknown expression: {expr!r}")

    def _call(self, name: str, args: list[Value]) -> Value:
        if name == self.program.name:
            self.tick()
            return self.call(args)
        if name == "len":
            if len(args) != 1:
                raise ArityMismatch("len takes exactly one argument")
            if not isinstance(args[0], str):
                raise TypeMismatch("len needs a string")
            return len(args[0])
        if name == "abs":
            if len(args) != 1:
                raise ArityMismatch("abs takes exactly one argument")
            if not _is_int(args[0]):
                raise TypeMismatch("abs needs an integer")
            return _check_int(abs(args[0]))
        if name in ("min", "max"):
            if not args:
                raise ArityMismatch(f"{name} needs at least one argument")
            if not all(_is_int(a) for a in args):
                raise TypeMismatch(f"{name} needs integers")
            return min(args) if name == "min" else max(args)
        if name == "range":
            raise TypeMismatch("range is only valid as a for-loop iterable")
        raise TypeMismatch(f"call to unknown function '{name}'")


def _is_int(v: Value) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_int(v: int) -> int:
    if v < INT_MIN or v > INT_MAX:
        raise Overflow(f"integer out of 64-bit range: {v}")
    return v


def _as_bool(v: Value) -> bool:
    if isinstance(v, bool):
        return v
    raise TypeMismatch("condition must be a boolean")


def _to_display(v: Value) -> str:
    if v is None:
        return "None"
    if isinstance(v, bool):
        return "True" if v else "False"
    return str(v)


def _binary(op: str, a: Value, b: Value) -> Value:
    if op == "+" and isinstance(a, str) and isinstance(b, str):
        return a + b
    if not (_is_int(a) and _is_int(b)):
        raise TypeMismatch(f"operator {op!r} needs integer operands")
    if op == "+":
        return _check_int(a + b)
    if op == "-":
        return _check_int(a - b)
    if op == "*":
        return _check_int(a * b)
    if op == "/":
        if b == 0:
            raise DivisionByZero("division by zero")
        if a % b != 0:
            raise TypeMismatch("true division with a non-integer result")
        return _check_int(a // b)
    if op == "//":
        if b == 0:
            raise DivisionByZero("floor division by zero")
        return _check_int(a // b)
    if op == "%":
        if b == 0:
            raise DivisionByZero("modulo by zero")
        return _check_int(a % b)
    if op == "**":
        if b < 0:
            raise TypeMismatch("negative exponent yields a non-integer")
        if b > 4096 and abs(a) > 1:
            raise Overflow("exponent too large")
        return _check_int(a**b)
    raise TypeMismatch(f"unknown operator {op!r}")


def _compare(op: str, a: Value, b: Value) -> bool:
    if op in ("==", "!="):
        same = type(a) is type(b) and a == b
        return same if op == "==" else not same
    ints = _is_int(a) and _is_int(b)
    strs = isinstance(a, str) and isinstance(b, str)
    if not (ints or strs):
        raise TypeMismatch(f"operator {op!r} needs two integers or two strings")
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


def interpret(
    program: Program,
    args: list[Value] | tuple[Value, ...],
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> RunResult:
    machine = _Machine(program, step_limit)
    value = machine.call(list(args))
    return RunResult(value, "".join(machine.printed))


def run_outcome(program: Program, args, step_limit: int = DEFAULT_STEP_LIMIT):
    """(status, payload) signature used to compare program behaviours.

    Renaming-style transformations must keep this signature identical;
    error messages are excluded because they may mention identifiers.
    """
    try:
        result = interpret(program, args, step_limit)
        return ("ok", result.return_value, result.printed)
    except InterpError as exc:
        return ("error", type(exc).__name__, None)

"""PyMini: the executable code subset used throughout the toolchain.

Single function definitions over 64-bit integers, booleans and strings,
with if/elif/else, while, for-over-range, print, return, and calls to the
function itself or to len/abs/min/max/range.
"""

from .errors import (
    ArityMismatch,
    DivisionByZero,
    InterpError,
    Overflow,
    ParseError,
    PyMiniError,
    StepLimitExceeded,
    TypeMismatch,
    UnsupportedFeature,
)
from .interp import DEFAULT_STEP_LIMIT, RunResult, Value, interpret, run_outcome
from .lexer import code_token_values, lex
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
    KEYWORDS,
    Name,
    Print,
    Program,
    Return,
    Stmt,
    StrLit,
    Unary,
    While,
    is_valid_identifier,
    statement_expressions,
    walk_expressions,
    walk_statements,
)
from .parser import (
    parse,
    parse_expression_fragment,
    parse_expression_list_fragment,
    parse_process_fragment,
)
from .printer import expr_text, print_canonical, stmt_text
from .transform import (
    apply_renaming,
    desugar_loops,
    identifier_occurrence_order,
    identifiers,
)

__all__ = [
    "ArityMismatch", "DivisionByZero", "InterpError", "Overflow", "ParseError",
    "PyMiniError", "StepLimitExceeded", "TypeMismatch", "UnsupportedFeature",
    "DEFAULT_STEP_LIMIT", "RunResult", "Value", "interpret", "run_outcome",
    "code_token_values", "lex",
    "Assign", "AugAssign", "BUILTINS", "Binary", "BoolLit", "BoolOp", "Call",
    "Compare", "Expr", "ExprStmt", "ForRange", "If", "IntLit", "KEYWORDS",
    "Name", "Print", "Program", "Return", "Stmt", "StrLit", "Unary", "While",
    "is_valid_identifier", "statement_expressions", "walk_expressions",
    "walk_statements",
    "parse", "parse_expression_fragment", "parse_expression_list_fragment",
    "parse_process_fragment",
    "expr_text", "print_canonical", "stmt_text",
    "apply_renaming", "desugar_loops", "identifier_occurrence_order", "identifiers",
]

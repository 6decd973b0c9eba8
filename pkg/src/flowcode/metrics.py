"""Code-generation metrics: corpus BLEU, CodeBLEU, and exact match,
plus the length-stratified report.

BLEU uses pooled modified n-gram precisions with add-one smoothing for
zero-match orders n >= 2 and the standard brevity penalty. CodeBLEU
combines four equally weighted components: plain n-gram precision,
keyword-weighted n-gram precision, identifier-abstracted AST subtree
recall, and def-use dataflow recall.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass

from .pymini import (
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
    PyMiniError,
    Return,
    Stmt,
    StrLit,
    Unary,
    While,
    code_token_values,
    parse,
    statement_expressions,
    walk_expressions,
    walk_statements,
)

MAX_N = 4
DEFAULT_KEYWORD_WEIGHT = 4.0
DEFAULT_COMPONENT_WEIGHTS = (0.25, 0.25, 0.25, 0.25)

_FALLBACK_TOKEN = re.compile(r"\w+|[^\w\s]")


class LengthMismatch(Exception):
    pass


class EmptyCorpus(Exception):
    pass


class ReferenceUnparseable(Exception):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"reference {index} does not parse: {reason}")


class IdMismatch(Exception):
    pass


def tokenize(text: str) -> list[str]:
    """Lexer tokens when the text parses as a program, else a
    whitespace-plus-punctuation fallback."""
    try:
        parse(text)
    except PyMiniError:
        return _FALLBACK_TOKEN.findall(text)
    return code_token_values(text)


def _check_pairs(candidates: list[str], references: list[str]) -> None:
    if len(candidates) != len(references):
        raise LengthMismatch(f"{len(candidates)} candidates vs {len(references)} references")
    if not candidates:
        raise EmptyCorpus("no candidate/reference pairs")


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _pooled_counts(
    candidates: list[list[str]],
    references: list[list[str]],
    weight_fn=None,
) -> tuple[list[float], list[float], int, int]:
    matches = [0.0] * MAX_N
    totals = [0.0] * MAX_N
    cand_len = 0
    ref_len = 0
    for cand, ref in zip(candidates, references):
        cand_len += len(cand)
        ref_len += len(ref)
        for n in range(1, MAX_N + 1):
            cgrams = _ngrams(cand, n)
            rgrams = _ngrams(ref, n)
            for gram, count in cgrams.items():
                w = weight_fn(gram) if weight_fn else 1.0
                totals[n - 1] += w * count
                matches[n - 1] += w * min(count, rgrams.get(gram, 0))
    return matches, totals, cand_len, ref_len


def _geometric_bleu(matches: list[float], totals: list[float], cand_len: int, ref_len: int) -> float:
    log_sum = 0.0
    for n in range(1, MAX_N + 1):
        m, t = matches[n - 1], totals[n - 1]
        if n == 1:
            if t == 0 or m == 0:
                return 0.0
            p = m / t
        else:
            p = (m + 1.0) / (t + 1.0) if m == 0 else m / t
        log_sum += math.log(p)
    bp = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / max(cand_len, 1))
    if cand_len == 0:
        return 0.0
    return bp * math.exp(log_sum / MAX_N)


def bleu(candidates: list[str], references: list[str], max_n: int = MAX_N) -> float:
    """Corpus-level BLEU on the 0-100 scale."""
    if max_n != MAX_N:
        raise ValueError("this implementation is fixed at 4-gram BLEU")
    _check_pairs(candidates, references)
    cand_tokens = [tokenize(c) for c in candidates]
    ref_tokens = [tokenize(r) for r in references]
    return 100.0 * _geometric_bleu(*_pooled_counts(cand_tokens, ref_tokens))


def _normalize(text: str) -> str:
    lines = [line.rstrip() for line in text.split("\n")]
    return "\n".join(lines).rstrip("\n") + "\n"


def exact_match(candidates: list[str], references: list[str]) -> float:
    """Percentage of byte-equal pairs after whitespace normalization."""
    _check_pairs(candidates, references)
    hits = sum(1 for c, r in zip(candidates, references) if _normalize(c) == _normalize(r))
    return 100.0 * hits / len(candidates)


# --- CodeBLEU components ---------------------------------------------------


def _keyword_weight_fn(weight: float):
    def fn(gram: tuple[str, ...]) -> float:
        return weight if any(tok in KEYWORDS for tok in gram) else 1.0

    return fn


def _abstract(name: str) -> str:
    return name if name in BUILTINS else "ID"


def _children(node) -> list:
    if isinstance(node, Program):
        return list(node.body)
    if isinstance(node, If):
        kids: list = [node.cond, *node.body]
        for cond, blk in node.elifs:
            kids.append(cond)
            kids.extend(blk)
        kids.extend(node.orelse)
        return kids
    if isinstance(node, While):
        return [node.cond, *node.body]
    if isinstance(node, ForRange):
        return [*node.args, *node.body]
    if isinstance(node, (Assign, AugAssign, ExprStmt)):
        return [node.value]
    if isinstance(node, Return):
        return [] if node.value is None else [node.value]
    if isinstance(node, Print):
        return list(node.args)
    if isinstance(node, Unary):
        return [node.operand]
    if isinstance(node, (Binary, Compare, BoolOp)):
        return [node.left, node.right]
    if isinstance(node, Call):
        return list(node.args)
    return []


def _label(node) -> str:
    if isinstance(node, Program):
        return f"program:{_abstract(node.name)}:{','.join(_abstract(p) for p in node.params)}"
    if isinstance(node, (Assign, AugAssign)):
        op = getattr(node, "op", "=")
        return f"{type(node).__name__}:{op}:{_abstract(node.target)}"
    if isinstance(node, ForRange):
        return f"ForRange:{_abstract(node.var)}"
    if isinstance(node, (Binary, Compare, BoolOp, Unary)):
        return f"{type(node).__name__}:{node.op}"
    if isinstance(node, Call):
        return f"Call:{_abstract(node.name)}"
    if isinstance(node, IntLit):
        return f"int:{node.value}"
    if isinstance(node, BoolLit):
        return f"bool:{node.value}"
    if isinstance(node, StrLit):
        return f"str:{node.raw}"
    if isinstance(node, Name):
        return f"name:{_abstract(node.id)}"
    return type(node).__name__


def _serialize(node) -> tuple[str, int]:
    """(canonical string, height) of the subtree rooted at node."""
    kids = _children(node)
    if not kids:
        return f"({_label(node)})", 1
    parts = []
    height = 0
    for kid in kids:
        text, h = _serialize(kid)
        parts.append(text)
        height = max(height, h)
    return f"({_label(node)} {' '.join(parts)})", height + 1


def subtree_multiset(program: Program, min_height: int = 2) -> Counter:
    """All identifier-abstracted subtrees of height >= min_height."""
    out: Counter = Counter()

    def visit(node) -> tuple[str, int]:
        kids = _children(node)
        if not kids:
            return f"({_label(node)})", 1
        parts = []
        height = 0
        for kid in kids:
            text, h = visit(kid)
            parts.append(text)
            height = max(height, h)
        text = f"({_label(node)} {' '.join(parts)})"
        height += 1
        if height >= min_height:
            out[text] += 1
        return text, height

    visit(program)
    return out


def dataflow_edges(program: Program) -> Counter:
    """Def-use pairs (def statement index, use statement index) from a
    linear pre-order scan; parameters are defined at index -1."""
    edges: Counter = Counter()
    last_def: dict[str, int] = {p: -1 for p in program.params}
    for index, stmt in enumerate(walk_statements(program.body)):
        reads: list[str] = []
        if isinstance(stmt, AugAssign):
            reads.append(stmt.target)
        for expr in statement_expressions(stmt):
            for node in walk_expressions(expr):
                if isinstance(node, Name):
                    reads.append(node.id)
        for var in reads:
            if var in last_def:
                edges[(last_def[var], index)] += 1
        if isinstance(stmt, (Assign, AugAssign)):
            last_def[stmt.target] = index
        elif isinstance(stmt, ForRange):
            last_def[stmt.var] = index
    return edges


@dataclass(frozen=True)
class CodeBleuResult:
    score: float
    ngram: float
    weighted_ngram: float
    ast_match: float
    dataflow_match: float

    def components(self) -> dict[str, float]:
        return {
            "ngram": self.ngram,
            "weighted_ngram": self.weighted_ngram,
            "ast_match": self.ast_match,
            "dataflow_match": self.dataflow_match,
        }


def codebleu(
    candidates: list[str],
    references: list[str],
    component_weights: tuple[float, float, float, float] = DEFAULT_COMPONENT_WEIGHTS,
    keyword_weight: float = DEFAULT_KEYWORD_WEIGHT,
) -> CodeBleuResult:
    _check_pairs(candidates, references)
    if abs(sum(component_weights) - 1.0) > 1e-9:
        raise ValueError("component weights must sum to 1")

    ref_programs: list[Program] = []
    for index, ref in enumerate(references):
        try:
            ref_programs.append(parse(ref))
        except PyMiniError as exc:
            raise ReferenceUnparseable(index, str(exc)) from exc

    cand_tokens = [tokenize(c) for c in candidates]
    ref_tokens = [tokenize(r) for r in references]
    ngram = _geometric_bleu(*_pooled_counts(cand_tokens, ref_tokens))
    weighted = _geometric_bleu(
        *_pooled_counts(cand_tokens, ref_tokens, _keyword_weight_fn(keyword_weight))
    )

    ast_matched = 0.0
    ast_total = 0.0
    df_matched = 0.0
    df_total = 0.0
    for cand, ref_program in zip(candidates, ref_programs):
        ref_subtrees = subtree_multiset(ref_program)
        ast_total += sum(ref_subtrees.values())
        ref_edges = dataflow_edges(ref_program)
        try:
            cand_program = parse(cand)
        except PyMiniError:
            cand_program = None
        if ref_edges:
            df_total += sum(ref_edges.values())
        else:
            # zero-dataflow reference: full credit iff the candidate parses
            df_total += 1.0
            if cand_program is not None:
                df_matched += 1.0
        if cand_program is None:
            continue
        cand_subtrees = subtree_multiset(cand_program)
        for tree, count in ref_subtrees.items():
            if tree in cand_subtrees:
                ast_matched += count
        cand_edges = dataflow_edges(cand_program)
        for edge, count in ref_edges.items():
            df_matched += min(count, cand_edges.get(edge, 0))

    ast = ast_matched / ast_total if ast_total else 1.0
    dataflow = df_matched / df_total if df_total else 1.0
    parts = (ngram, weighted, ast, dataflow)
    score = 100.0 * sum(w * p for w, p in zip(component_weights, parts))
    return CodeBleuResult(score, ngram, weighted, ast, dataflow)


# --- length-stratified report ----------------------------------------------

LENGTH_BINS: tuple[tuple[int, int | None], ...] = ((1, 3), (4, 6), (7, 9), (10, 12), (13, None))


def _bin_label(lo: int, hi: int | None) -> str:
    return f"{lo}-{hi}" if hi is not None else f"{lo}+"


def line_count(code: str) -> int:
    return len([line for line in code.split("\n") if line.strip()])


@dataclass(frozen=True)
class MetricReport:
    bleu: float
    codebleu: float
    components: dict[str, float]
    em: float
    by_length: list[dict]
    n_pairs: int

    def to_json_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "codebleu": self.codebleu,
            "components": self.components,
            "em": self.em,
            "n_pairs": self.n_pairs,
            "by_length": self.by_length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def evaluate(candidates: list[str], references: list[str]) -> MetricReport:
    _check_pairs(candidates, references)
    overall_cb = codebleu(candidates, references)
    by_length: list[dict] = []
    for lo, hi in LENGTH_BINS:
        pairs = [
            (c, r)
            for c, r in zip(candidates, references)
            if lo <= line_count(r) and (hi is None or line_count(r) <= hi)
        ]
        entry: dict = {"bin": _bin_label(lo, hi), "n_pairs": len(pairs)}
        if pairs:
            sub_c = [c for c, _ in pairs]
            sub_r = [r for _, r in pairs]
            sub_cb = codebleu(sub_c, sub_r)
            entry.update(
                bleu=bleu(sub_c, sub_r),
                codebleu=sub_cb.score,
                em=exact_match(sub_c, sub_r),
            )
        by_length.append(entry)
    return MetricReport(
        bleu=bleu(candidates, references),
        codebleu=overall_cb.score,
        components=overall_cb.components(),
        em=exact_match(candidates, references),
        by_length=by_length,
        n_pairs=len(candidates),
    )


def report_from_records(
    predictions: list[dict],
    records,
    split: str | None = None,
) -> MetricReport:
    """Align {id, code} predictions with corpus records and evaluate."""
    refs = {r.id: r.code for r in records if split is None or r.split == split}
    preds = {p["id"]: p["code"] for p in predictions}
    if set(refs) != set(preds):
        missing = set(refs) ^ set(preds)
        raise IdMismatch(f"prediction/reference ids differ ({len(missing)} mismatched)")
    if not refs:
        raise IdMismatch("no overlapping ids")
    ids = sorted(refs)
    return evaluate([preds[i] for i in ids], [refs[i] for i in ids])

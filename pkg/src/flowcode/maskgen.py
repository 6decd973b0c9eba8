"""Masked-token pretraining samples over codes and flowchart encodings.

Word-level tokens are corrupted to "[MASK]" independently at probability
p (default 0.15). "[SEP]" is never masked; shape tokens are ordinary
maskable words. Samples carry character spans so a downstream model
tokenizer can project the masks onto its own subwords.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .corpus import DatasetRecord

MASK = "[MASK]"
SEP = "[SEP]"
_SPECIALS = (SEP, MASK)


class SplitLeakage(Exception):
    pass


@dataclass(frozen=True)
class TokenSpan:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class MaskedSample:
    original: tuple[str, ...]
    masked: tuple[str, ...]
    mask_positions: tuple[int, ...]

    def reconstruct(self) -> tuple[str, ...]:
        return tuple(
            orig if i in set(self.mask_positions) else tok
            for i, (orig, tok) in enumerate(zip(self.original, self.masked))
        )


@dataclass(frozen=True)
class PretrainSample:
    source: str  # "code" | "encoding"
    original: str
    masked: str
    mask_spans: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "original": self.original,
            "masked": self.masked,
            "mask_spans": [list(span) for span in self.mask_spans],
        }


def tokenize_with_spans(text: str) -> list[TokenSpan]:
    """Whitespace-and-punctuation word tokenizer.

    "[SEP]" and "[MASK]" stay single tokens; punctuation splits off words
    except inside quoted strings, which stay whole.
    """
    spans: list[TokenSpan] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        matched_special = False
        for special in _SPECIALS:
            if text.startswith(special, i):
                spans.append(TokenSpan(special, i, i + len(special)))
                i += len(special)
                matched_special = True
                break
        if matched_special:
            continue
        if c in ("'", '"'):
            j = i + 1
            while j < n:
                if text[j] == "\\" and j + 1 < n:
                    j += 2
                    continue
                if text[j] == c:
                    j += 1
                    break
                j += 1
            else:
                j = n
            spans.append(TokenSpan(text[i:j], i, j))
            i = j
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            spans.append(TokenSpan(text[i:j], i, j))
            i = j
            continue
        spans.append(TokenSpan(c, i, i + 1))
        i += 1
    return spans


def word_tokenize(text: str) -> list[str]:
    return [span.text for span in tokenize_with_spans(text)]


def mask(tokens: list[str], p: float = 0.15, seed: int = 0) -> MaskedSample:
    """Independently replace maskable tokens with "[MASK]" at probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mask probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    masked: list[str] = []
    positions: list[int] = []
    for i, tok in enumerate(tokens):
        if tok != SEP and rng.random() < p:
            masked.append(MASK)
            positions.append(i)
        else:
            masked.append(tok)
    return MaskedSample(tuple(tokens), tuple(masked), tuple(positions))


def mask_text(text: str, source: str, p: float, seed: int) -> PretrainSample:
    spans = tokenize_with_spans(text)
    sample = mask([s.text for s in spans], p, seed)
    span_list = [(spans[i].start, spans[i].end) for i in sample.mask_positions]
    pieces: list[str] = []
    cursor = 0
    for start, end in span_list:
        pieces.append(text[cursor:start])
        pieces.append(MASK)
        cursor = end
    pieces.append(text[cursor:])
    return PretrainSample(source, text, "".join(pieces), tuple(span_list))


def _guard_train_only(records: Iterable[DatasetRecord]) -> None:
    for record in records:
        if record.split in ("test", "val"):
            raise SplitLeakage(f"record {record.id} is tagged {record.split!r}")


def build_pretrain_corpus(
    train_records: list[DatasetRecord],
    augmented_records: list[DatasetRecord],
    p: float = 0.15,
    seed: int = 0,
) -> Iterator[PretrainSample]:
    """One sample per code text (originals then augmented), then one per
    modified-string encoding of the originals."""
    _guard_train_only(train_records)
    _guard_train_only(augmented_records)
    counter = 0
    for record in train_records:
        yield mask_text(record.code, "code", p, _item_seed(seed, counter))
        counter += 1
    for record in augmented_records:
        yield mask_text(record.code, "code", p, _item_seed(seed, counter))
        counter += 1
    for record in train_records:
        yield mask_text(record.enc_modified, "encoding", p, _item_seed(seed, counter))
        counter += 1


def _item_seed(seed: int, index: int) -> int:
    return (seed ^ (index * 0x9E3779B97F4A7C15)) & (2**64 - 1)

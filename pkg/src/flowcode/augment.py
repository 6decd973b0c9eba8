"""Logic-preserving identifier renaming and the corpus quadrupler.

Each training program gains three variants: fresh function names, fresh
variable names, or both. New names are drawn uniformly (length first,
then characters) from the identifier alphabet, never colliding with
keywords, builtins, or identifiers left untouched.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from enum import Enum

from .corpus import DatasetRecord, Provenance, record_from_code
from .pymini import (
    BUILTINS,
    KEYWORDS,
    Program,
    apply_renaming,
    identifier_occurrence_order,
    identifiers,
    print_canonical,
)

FUNCTION_LENGTH_RANGE = (4, 13)
VARIABLE_LENGTH_RANGE = (1, 3)

_FIRST_CHARS = string.ascii_letters + "_"
_REST_CHARS = string.ascii_letters + string.digits + "_"


class AugmentationMode(Enum):
    FUNCTIONS = "functions"
    VARIABLES = "variables"
    BOTH = "both"


@dataclass(frozen=True)
class AugmentationSpec:
    mode: AugmentationMode
    seed: int


def fresh_name(rng: random.Random, length_range: tuple[int, int], taken: set[str]) -> str:
    lo, hi = length_range
    while True:
        length = rng.randint(lo, hi)
        name = rng.choice(_FIRST_CHARS) + "".join(rng.choice(_REST_CHARS) for _ in range(length - 1))
        if name in KEYWORDS or name in BUILTINS or name in taken:
            continue
        return name


def build_rename_mapping(program: Program, spec: AugmentationSpec) -> dict[str, str]:
    """Deterministic old->new mapping for the requested mode.

    Names are processed in first-occurrence order so the same (program,
    spec) always yields the same mapping.
    """
    rng = random.Random(spec.seed)
    ids = identifiers(program)
    rename_functions = spec.mode in (AugmentationMode.FUNCTIONS, AugmentationMode.BOTH)
    rename_variables = spec.mode in (AugmentationMode.VARIABLES, AugmentationMode.BOTH)

    taken = set(ids["functions"]) | set(ids["variables"])
    mapping: dict[str, str] = {}
    for name in identifier_occurrence_order(program):
        if name in ids["functions"] and rename_functions:
            length_range = FUNCTION_LENGTH_RANGE
        elif name in ids["variables"] and not (name in ids["functions"]) and rename_variables:
            length_range = VARIABLE_LENGTH_RANGE
        else:
            continue
        new = fresh_name(rng, length_range, taken)
        taken.add(new)
        mapping[name] = new
    return mapping


def rename(program: Program, spec: AugmentationSpec) -> Program:
    """Consistently rename identifiers; program behaviour is unchanged."""
    return apply_renaming(program, build_rename_mapping(program, spec))


def mode_seed(seed: int, record_index: int, mode_index: int) -> int:
    # per-record seed is seed XOR index; modes draw independently
    return ((seed ^ record_index) * 1000003 + mode_index) & (2**64 - 1)


def augment_corpus(records: list[DatasetRecord], seed: int) -> list[DatasetRecord]:
    """Append three renamed variants per record; output size is 4x input.

    Records must all be train-split; augmented records carry provenance
    (parent_id, aug_mode) and freshly lowered graphs and encodings.
    """
    for record in records:
        if record.split not in ("train", "unassigned"):
            raise ValueError(f"augmentation is train-only; record {record.id} is {record.split!r}")
    out = list(records)
    from .pymini import parse

    for index, record in enumerate(records):
        program = parse(record.code)
        for mode_index, mode in enumerate(AugmentationMode):
            spec = AugmentationSpec(mode, mode_seed(seed, index, mode_index))
            variant = rename(program, spec)
            out.append(
                record_from_code(
                    print_canonical(variant),
                    Provenance(
                        source=record.provenance.source,
                        parent_id=record.id,
                        aug_mode=mode.value,
                    ),
                    split=record.split,
                )
            )
    return out

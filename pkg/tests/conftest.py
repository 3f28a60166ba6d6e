from __future__ import annotations

import os
import random
from pathlib import Path

import pytest
from sympy.combinatorics.named_groups import SymmetricGroup

# keep test runs out of logs/app.log; the logger is configured at import
os.environ.setdefault("FHCALC_LOG_FILE", "false")

from fhcalc.algebra import (  # noqa: E402
    dual_numbers,
    ground_field,
    group_algebra,
    matrix_algebra,
    split_algebra,
    truncated_polynomial,
    upper_triangular,
)
from fhcalc.config import CORPUS_DIR  # noqa: E402
from fhcalc.exactla import Field  # noqa: E402


def corpus_algebras(field: Field):
    return {
        "ground": ground_field(field),
        "split": split_algebra(field),
        "dual_numbers": dual_numbers(field),
        "truncated_cubic": truncated_polynomial(3, field),
        "matrix2": matrix_algebra(2, field),
        "upper_triangular": upper_triangular(field),
        "s3": group_algebra(SymmetricGroup(3), field, f"{field.label}[S3]"),
    }


@pytest.fixture
def Q() -> Field:
    return Field.rationals()


@pytest.fixture
def F7() -> Field:
    return Field.prime(7)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240531)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR

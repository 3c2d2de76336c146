from pathlib import Path

import numpy as np
import pytest

from holant import Alphabet, EdgeSet, FnTable, Scope

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


def random_table(rng, alphabet: Alphabet, scope, space: str = "symbols") -> FnTable:
    size = alphabet.size ** (scope.size if isinstance(scope, (Scope, EdgeSet)) else len(scope))
    values = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return FnTable(alphabet, scope, values, space)

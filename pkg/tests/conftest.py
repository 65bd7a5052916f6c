"""Shared fixtures: the seeded symmetric-matrix corpus and dim lists."""

from __future__ import annotations

import json
from importlib import resources

import numpy as np
import pytest

from hessianlab.core import HessianDim

INTERMEDIATE_DIMS = (HessianDim(2, 1), HessianDim(4, 2))
SUBCRITICAL_DIM = HessianDim(3, 1)


@pytest.fixture(scope="session")
def sym_matrices() -> list[np.ndarray]:
    raw = json.loads(
        resources.files("hessianlab.fixtures").joinpath("sym_matrices.json").read_text()
    )
    mats = [np.array(entry["entries"], dtype=float) for entry in raw["matrices"]]
    assert len(mats) == raw["count"] == 50
    return mats


@pytest.fixture(params=INTERMEDIATE_DIMS, ids=lambda d: f"n{d.n}k{d.k}")
def intermediate_dim(request) -> HessianDim:
    return request.param


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # Replay the acceptance verdicts after the run; per-test stdout is
    # captured, this is not.
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

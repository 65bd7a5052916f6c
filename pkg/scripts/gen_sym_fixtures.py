#!/usr/bin/env python3
"""Regenerate the committed symmetric-matrix fixtures.

Fifty dense symmetric matrices over sizes 2..6, written as JSON next to
the package so runs never draw random numbers.  Entries mix scales and
include near-degenerate spectra (repeated and near-zero eigenvalues) to
stress both evaluation routes.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import numpy as np

SEED = 20240817
COUNT = 50
SIZES = (2, 3, 4, 5, 6)


def sample_matrix(rng: np.random.Generator, n: int, style: int) -> np.ndarray:
    if style == 0:
        a = rng.normal(size=(n, n))
        return (a + a.T) / 2.0
    if style == 1:
        # Prescribed spectrum with clusters and a near-zero eigenvalue.
        eigs = rng.normal(scale=3.0, size=n)
        eigs[0] = eigs[min(1, n - 1)] + rng.normal(scale=1e-6)
        eigs[-1] = rng.normal(scale=1e-8)
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        return q @ np.diag(eigs) @ q.T
    # Wide dynamic range.
    scales = 10.0 ** rng.integers(-3, 4, size=n)
    a = rng.normal(size=(n, n)) * scales
    return (a + a.T) / 2.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = Path(__file__).resolve().parents[1] / "src/hessianlab/fixtures/sym_matrices.json"
    parser.add_argument("--out", type=Path, default=default_out)
    args = parser.parse_args()

    rng = np.random.default_rng(SEED)
    matrices = []
    for i in range(COUNT):
        n = SIZES[i % len(SIZES)]
        style = (i // len(SIZES)) % 3
        mat = sample_matrix(rng, n, style)
        matrices.append({"entries": [[float(x) for x in row] for row in mat]})
    payload = {"seed": SEED, "count": COUNT, "matrices": matrices}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(matrices)} matrices to {args.out}")


if __name__ == "__main__":
    main()

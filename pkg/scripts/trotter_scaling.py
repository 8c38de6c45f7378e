#!/usr/bin/env python3
"""Measure the first-order product-formula error against the exact
exponential for a fixed random two-qubit Hamiltonian, doubling the step
count; the error falls off like 1/N."""

import math

import numpy as np

from cliffgate import decompose, trotter
from cliffgate.matrices import random_hermitian
from cliffgate.synthesis import CoefficientVector

SEED = 20260809


def main():
    rng = np.random.default_rng(SEED)
    h = random_hermitian(2, rng)
    raw = decompose(h, 2)
    norm = math.sqrt(sum(v * v for v in raw.values()))
    vec = CoefficientVector(2, {k: v / norm for k, v in raw.items()})
    steps = [4, 8, 16, 32, 64, 128, 256]
    errors = [trotter(vec, n).error for n in steps]
    print(f"seed {SEED}, sum of squared coefficients = 1")
    print(f"{'N':>5} {'error':>12} {'ratio':>7}")
    prev = None
    for n, err in zip(steps, errors):
        ratio = f"{prev / err:7.3f}" if prev else "      -"
        print(f"{n:>5} {err:12.4e} {ratio}")
        prev = err
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    print(f"log-log slope: {slope:.4f} (1/N scaling is -1)")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""A gate does not pin down its Hermitian exponent: evaluate three
pi-angle exponentials over two qubits and show which coincide."""

import numpy as np

from cliffgate.matrices import exponent_coincidence_report

LABELS = {
    "single": "exp(i*pi*(A otimes I))",
    "sum": "exp(i*pi*(A otimes I + I otimes B))",
    "product": "exp(i*pi*(A otimes B))",
}


def main():
    for axis_a, axis_b in (("x", "z"), ("y", "y")):
        report = exponent_coincidence_report(axis_a, axis_b)
        print(f"A = sigma_{axis_a}, B = sigma_{axis_b}")
        for name, matrix in report["matrices"].items():
            value = "+1" if np.allclose(matrix, np.eye(4)) else (
                "-1" if np.allclose(matrix, -np.eye(4)) else "other"
            )
            print(f"  {LABELS[name]:38s} = {value}")
        for pair, dist in sorted(report["distances"].items()):
            tag = "coincide" if pair in report["coincide"] else f"differ by {dist:g}"
            print(f"  {pair[0]:8s} vs {pair[1]:8s}: {tag}")
        print()


if __name__ == "__main__":
    main()

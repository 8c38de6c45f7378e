import numpy as np

from cliffgate import BasisLabel, ScaledElement, all_labels


def label(indices, ambient):
    return BasisLabel.from_indices(indices, ambient)


def elem(indices, ambient, phase=0, pow2=0):
    return ScaledElement(BasisLabel.from_indices(indices, ambient), phase=phase, pow2=pow2)


def labels_upto(ambient):
    return list(all_labels(ambient))


def random_hermitian(n, rng):
    a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    return (a + a.conj().T) / 2


def maxabs(m):
    return float(np.max(np.abs(m)))

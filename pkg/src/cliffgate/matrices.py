"""Dense matrix representation on qubits: the brute-force oracle.

Generators are realized as Kronecker products of Pauli matrices,

    G_{2k}   = I^(n-k-1) (x) sx (x) sz^k,
    G_{2k+1} = I^(n-k-1) (x) sy (x) sz^k,

read left to right with the leftmost factor acting on the highest-index
qubit (qubit 0 is the rightmost factor).  All 2n generators are Hermitian,
square to the identity and pairwise anticommute, so symbolic values from
:mod:`cliffgate.algebra` map onto 2^n x 2^n complex matrices by an exact
homomorphism.  This module is the independent check for the symbolic side
and the arena for gate synthesis.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .algebra import (
    AmbientMismatchError,
    BasisLabel,
    ParseError,
    ScaledElement,
    all_labels,
    canonical_key,
    commutator,
    commutes,
    hermitize,
    product,
)

__all__ = [
    "CheckResult",
    "PauliFactorization",
    "ReplayReport",
    "decompose",
    "exponent_coincidence_report",
    "expm_hermitian",
    "format_matrix",
    "gamma",
    "hermiticity_defect",
    "hermitized_matrix",
    "parse_matrix",
    "pauli_factorization",
    "pauli_support",
    "qubit_count",
    "random_hermitian",
    "recursive_construct",
    "reconstruct",
    "replay_certificate",
    "represent",
    "unitarity_defect",
    "verify_representation",
]

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": _I2, "X": _SX, "Y": _SY, "Z": _SZ}

# Single-qubit Pauli products: (left, right) -> (i^phase, result letter).
_PAULI_MUL = {
    ("X", "Y"): (1, "Z"), ("Y", "X"): (3, "Z"),
    ("Y", "Z"): (1, "X"), ("Z", "Y"): (3, "X"),
    ("Z", "X"): (1, "Y"), ("X", "Z"): (3, "Y"),
}


def qubit_count(ambient: int) -> int:
    if ambient % 2:
        raise ValueError(
            f"ambient {ambient} is odd; a matrix form needs two generators per qubit"
        )
    return ambient // 2


def _kron_chain(factors) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for f in factors:
        out = np.kron(out, f)
    return out


@lru_cache(maxsize=None)
def _gammas(n: int) -> tuple[np.ndarray, ...]:
    if n < 1:
        raise ValueError("qubit count must be >= 1")
    mats = []
    for k in range(n):
        for head in (_SX, _SY):
            m = _kron_chain([_I2] * (n - k - 1) + [head] + [_SZ] * k)
            m.setflags(write=False)
            mats.append(m)
    return tuple(mats)


def gamma(k: int, n: int) -> np.ndarray:
    """Matrix of the k-th generator on n qubits, 0 <= k < 2n."""
    if not 0 <= k < 2 * n:
        raise ValueError(f"generator index {k} out of range for {n} qubits")
    return _gammas(n)[k].copy()


@lru_cache(maxsize=None)
def _basis_matrix(mask: int, n: int) -> np.ndarray:
    # Ordered product of generator matrices; entries stay in {0, +-1, +-i}
    # times a power of two, so everything downstream is float-exact.
    gammas = _gammas(n)
    out = np.eye(2**n, dtype=complex)
    k = 0
    while mask:
        if mask & 1:
            out = out @ gammas[k]
        mask >>= 1
        k += 1
    out.setflags(write=False)
    return out


def represent(elem: ScaledElement, n: int) -> np.ndarray:
    """Dense matrix of a scaled basis element on n qubits."""
    if elem.ambient != 2 * n:
        raise AmbientMismatchError(
            f"element over {elem.ambient} generators cannot live on {n} qubits"
        )
    if elem.is_zero:
        return np.zeros((2**n, 2**n), dtype=complex)
    return elem.coefficient * _basis_matrix(elem.label.mask, n)


def hermitized_matrix(label: BasisLabel, n: int) -> np.ndarray:
    return represent(hermitize(label), n)


def recursive_construct(n: int) -> list[np.ndarray]:
    """Generators built by the tensor-step recursion instead of directly.

    Base case n=1 is the Pauli pair (sx, sy).  Given the 2n generators g_k
    of the n-qubit algebra, the (n+1)-qubit generators are I (x) sx,
    I (x) sy and the 2n products g_k (x) h, where h is the hermitized
    top element of the one-qubit algebra.  The output satisfies the same
    anticommutation relations as :func:`gamma` and is related to it by a
    unitary change of basis.
    """
    if n < 1:
        raise ValueError("qubit count must be >= 1")
    gens = [_SX.copy(), _SY.copy()]
    h = hermitized_matrix(BasisLabel(0b11, 2), 1)
    for m in range(1, n):
        eye = np.eye(2**m, dtype=complex)
        gens = [np.kron(eye, _SX), np.kron(eye, _SY)] + [np.kron(g, h) for g in gens]
    return gens


@dataclass(frozen=True)
class PauliFactorization:
    """Per-qubit Pauli letters plus a global coefficient i^phase * 2^pow2.

    ``factors`` is written leftmost = highest qubit, matching the Kronecker
    convention above, so ``factors[-1]`` acts on qubit 0.
    """

    phase: int
    pow2: int
    factors: str

    @property
    def qubits(self) -> int:
        return len(self.factors)

    def support(self) -> tuple[int, ...]:
        n = len(self.factors)
        return tuple(sorted(n - 1 - i for i, f in enumerate(self.factors) if f != "I"))

    def matrix(self) -> np.ndarray:
        coeff = (1j ** self.phase) * 2.0 ** self.pow2
        return coeff * _kron_chain([PAULI[f] for f in self.factors])

    def __str__(self) -> str:
        from .algebra import _PREFIX_BY_PHASE  # canonical coefficient spelling

        head = _PREFIX_BY_PHASE[self.phase % 4]
        if self.pow2:
            head += f"2^{self.pow2}*"
        return head + self.factors


def pauli_factorization(elem: ScaledElement, n: int) -> PauliFactorization:
    """Factor a scaled basis element into per-qubit Paulis symbolically."""
    if elem.ambient != 2 * n:
        raise AmbientMismatchError(
            f"element over {elem.ambient} generators cannot live on {n} qubits"
        )
    if elem.is_zero:
        raise ValueError("the zero element has no Pauli factorization")
    phase = elem.phase
    letters = []
    for q in range(n):
        cur = "I"
        for j in elem.label.indices:
            if j == 2 * q:
                nxt = "X"
            elif j == 2 * q + 1:
                nxt = "Y"
            elif j >= 2 * (q + 1):
                nxt = "Z"
            else:
                continue
            if cur == "I":
                cur = nxt
            elif cur == nxt:
                cur = "I"
            else:
                ph, cur = _PAULI_MUL[(cur, nxt)]
                phase += ph
        letters.append(cur)
    return PauliFactorization(phase % 4, elem.pow2, "".join(reversed(letters)))


def pauli_support(elem: ScaledElement, n: int) -> tuple[int, ...]:
    """Qubit positions whose Pauli factor is not the identity."""
    return pauli_factorization(elem, n).support()


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def unitarity_defect(u: np.ndarray) -> float:
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def expm_hermitian(h: np.ndarray, tau: float, *, tol: float = 1e-10) -> np.ndarray:
    """exp(i * tau * h) for Hermitian h, via eigendecomposition.

    Unitary up to floating error by construction; raises on non-Hermitian
    input (defect above ``tol``).
    """
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3g} > {tol:.3g})")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * tau * w)) @ v.conj().T


def decompose(h: np.ndarray, n: int, *, tol: float = 1e-10) -> dict[BasisLabel, float]:
    """Coefficients of a Hermitian matrix over the hermitized basis.

    alpha_I = trace(h @ M(I)) / 2^n for every label I; the coefficients are
    real and reconstruct h exactly up to floating error.
    """
    dim = 2**n
    if h.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got {h.shape}")
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3g} > {tol:.3g})")
    coeffs = {}
    for label in all_labels(2 * n):
        val = np.einsum("ij,ji->", h, hermitized_matrix(label, n)) / dim
        coeffs[label] = float(val.real)
    return coeffs


def reconstruct(coeffs: Mapping[BasisLabel, float], n: int) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=complex)
    for label, alpha in coeffs.items():
        if alpha:
            out += alpha * hermitized_matrix(label, n)
    return out


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    return (a + a.conj().T) / 2


# ---------------------------------------------------------------------------
# Matrix text format: one row per line, entries as "re,im" separated by
# whitespace.


def format_matrix(m: np.ndarray) -> str:
    lines = []
    for row in np.atleast_2d(m):
        lines.append(" ".join(f"{v.real:.17g},{v.imag:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        row = []
        for tok in line.split():
            parts = tok.split(",")
            if len(parts) != 2:
                raise ParseError(f"line {ln}: expected re,im pairs, got {tok!r}")
            try:
                row.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise ParseError(f"line {ln}: bad number in {tok!r}") from None
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix text")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or width != len(rows):
        raise ParseError(f"expected a square matrix, got rows of widths {[len(r) for r in rows]}")
    return np.array(rows, dtype=complex)


# ---------------------------------------------------------------------------
# Certificate replay.


@dataclass
class ReplayReport:
    deviation: float
    matrix: np.ndarray
    steps: int


def replay_certificate(cert, *, tol: float = 1e-10) -> ReplayReport:
    """Re-run a derivation in matrix form and compare against its target.

    Each step recomputes the commutator of its parents' matrices and is
    checked against the recorded exact coefficient; the final matrix must
    equal the recorded scalar times the hermitized target.  Raises on odd
    ambient (no matrix form) and returns the worst absolute deviation.
    """
    n = qubit_count(cert.ambient)
    mats = {g.label: represent(g, n) for g in cert.generators}
    worst = 0.0
    for step in cert.steps:
        for parent in (step.parent_a, step.parent_b):
            if parent not in mats:
                raise ValueError(f"step parent {parent} appears before its derivation")
        m = mats[step.parent_a] @ mats[step.parent_b] - mats[step.parent_b] @ mats[step.parent_a]
        worst = max(worst, float(np.max(np.abs(m - represent(step.element, n)))))
        mats[step.result] = m
    final = mats.get(cert.target)
    if final is None:
        if cert.target.order:
            raise ValueError("certificate never derives its target")
        final = np.eye(2**n, dtype=complex)  # the unit is the empty derivation
    scalar = (1j ** cert.scalar_phase) * 2.0 ** cert.scalar_pow2
    expected = scalar * hermitized_matrix(cert.target, n)
    worst = max(worst, float(np.max(np.abs(final - expected))))
    return ReplayReport(deviation=worst, matrix=final, steps=len(cert.steps))


# ---------------------------------------------------------------------------
# Oracle sweep used by tests and the command line.


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool


def _label_pairs(n: int, rng: np.random.Generator, cap: int):
    labels = list(all_labels(2 * n))
    total = len(labels) ** 2
    if total <= cap:
        for a in labels:
            for b in labels:
                yield a, b
    else:
        idx = rng.integers(0, len(labels), size=(cap, 2))
        for i, j in idx:
            yield labels[i], labels[j]


def verify_representation(
    n: int,
    *,
    seed: int = 0,
    tol_strict: float = 1e-14,
    tol_exact: float = 1e-12,
    tol_pipeline: float = 1e-10,
    sample_cap: int = 4096,
    threads: int = 1,
) -> list[CheckResult]:
    """Run the full symbolic-vs-dense property sweep at a given size.

    Exhaustive over all label pairs when their square fits under
    ``sample_cap``, seeded random sampling beyond that.  Deterministic for
    a fixed seed regardless of ``threads``.
    """
    rng = np.random.default_rng(seed)
    eye = np.eye(2**n)
    results: list[CheckResult] = []

    def add(name, deviation, tolerance, extra_ok=True):
        results.append(
            CheckResult(name, float(deviation), tolerance, bool(deviation <= tolerance) and extra_ok)
        )

    gammas = [gamma(k, n) for k in range(2 * n)]
    dev = max(
        float(np.max(np.abs(g1 @ g2 + g2 @ g1 - (2.0 if i == j else 0.0) * eye)))
        for i, g1 in enumerate(gammas)
        for j, g2 in enumerate(gammas)
    )
    add("clifford-relations", dev, tol_strict)
    add("generator-hermiticity", max(hermiticity_defect(g) for g in gammas), tol_strict)

    labels = list(all_labels(2 * n))
    herm_dev = 0.0
    square_dev = 0.0
    for label in labels:
        m = hermitized_matrix(label, n)
        herm_dev = max(herm_dev, hermiticity_defect(m))
        square_dev = max(square_dev, float(np.max(np.abs(m @ m - eye))))
    add("hermitized-hermiticity", herm_dev, tol_exact)
    add("hermitized-squares", square_dev, tol_exact)

    pairs = list(_label_pairs(n, rng, sample_cap))

    def sweep(chunk):
        prod_dev = comm_dev = dich_dev = trace_dev = 0.0
        dich_ok = True
        for a, b in chunk:
            ea, eb = ScaledElement.of(a), ScaledElement.of(b)
            ma, mb = represent(ea, n), represent(eb, n)
            ab, ba = ma @ mb, mb @ ma
            prod_dev = max(prod_dev, float(np.max(np.abs(ab - represent(product(ea, eb), n)))))
            comm_dev = max(
                comm_dev, float(np.max(np.abs(ab - ba - represent(commutator(ea, eb), n))))
            )
            c_norm = float(np.max(np.abs(ab - ba)))
            a_norm = float(np.max(np.abs(ab + ba)))
            dich_dev = max(dich_dev, min(c_norm, a_norm))
            dich_ok &= (c_norm <= tol_exact) == commutes(a, b)
            ta = np.einsum("ij,ji->", hermitized_matrix(a, n), hermitized_matrix(b, n))
            expect = 2.0**n if a == b else 0.0
            trace_dev = max(trace_dev, abs(ta - expect))
        return prod_dev, comm_dev, dich_dev, dich_ok, trace_dev

    if threads > 1:
        chunks = [pairs[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(sweep, chunks))
    else:
        partials = [sweep(pairs)]
    prod_dev = max(p[0] for p in partials)
    comm_dev = max(p[1] for p in partials)
    dich_dev = max(p[2] for p in partials)
    dich_ok = all(p[3] for p in partials)
    trace_dev = max(p[4] for p in partials)
    add("product-homomorphism", prod_dev, tol_exact)
    add("commutator-homomorphism", comm_dev, tol_exact)
    add("commutation-dichotomy", dich_dev, tol_exact, extra_ok=dich_ok)
    add("trace-orthogonality", trace_dev, tol_exact)

    fact_dev = 0.0
    fact_labels = labels if len(labels) <= sample_cap else [
        labels[i] for i in rng.integers(0, len(labels), size=sample_cap)
    ]
    for label in fact_labels:
        el = hermitize(label)
        fact_dev = max(
            fact_dev,
            float(np.max(np.abs(pauli_factorization(el, n).matrix() - represent(el, n)))),
        )
    add("factorization-consistency", fact_dev, tol_exact)

    rec = recursive_construct(n)
    rec_dev = max(
        float(np.max(np.abs(g1 @ g2 + g2 @ g1 - (2.0 if i == j else 0.0) * eye)))
        for i, g1 in enumerate(rec)
        for j, g2 in enumerate(rec)
    )
    rec_trace = max(
        abs(np.trace(g1 @ g2) - (2.0**n if i == j else 0.0))
        for i, g1 in enumerate(rec)
        for j, g2 in enumerate(rec)
    )
    add("recursive-generators", max(rec_dev, rec_trace), tol_strict)

    h = random_hermitian(n, rng)
    coeffs = decompose(h, n, tol=tol_pipeline)
    add(
        "decompose-roundtrip",
        float(np.max(np.abs(reconstruct(coeffs, n) - h))),
        tol_pipeline,
    )
    return results


def exponent_coincidence_report(axis_a: str = "x", axis_b: str = "z", *, tol: float = 1e-12) -> dict:
    """Evaluate three pi-angle exponentials that share matrix values.

    Returns the matrices exp(i*pi*(A (x) I)), exp(i*pi*(A (x) I + I (x) B))
    and exp(i*pi*(A (x) B)) for the chosen Pauli axes, together with their
    pairwise max-abs distances and the list of coinciding pairs.  Several
    distinct Hermitian exponents map to the same unitary, so recovering an
    exponent from a gate is not unique; this report shows the phenomenon in
    whatever form the numbers actually take.
    """
    pa, pb = PAULI[axis_a.upper()], PAULI[axis_b.upper()]
    mats = {
        "single": expm_hermitian(np.kron(pa, _I2), np.pi),
        "sum": expm_hermitian(np.kron(pa, _I2) + np.kron(_I2, pb), np.pi),
        "product": expm_hermitian(np.kron(pa, pb), np.pi),
    }
    names = sorted(mats)
    distances = {
        (x, y): float(np.max(np.abs(mats[x] - mats[y])))
        for i, x in enumerate(names)
        for y in names[i + 1 :]
    }
    coincide = sorted(pair for pair, d in distances.items() if d <= tol)
    return {"matrices": mats, "distances": distances, "coincide": coincide}

"""Exact arithmetic for scaled basis elements of a complex Clifford algebra.

The algebra has ``ambient`` generators g_0, ..., g_{ambient-1} obeying
g_i g_j = -g_j g_i for i != j and g_i^2 = +1 (over the complex field any
diagonal signature rescales into this one).  An ascending product of
distinct generators is a basis element, identified by its index set alone;
over 2n generators there are exactly 4^n such labels and they span the
whole 2^n x 2^n matrix algebra.  Reordering a product only ever creates
factors of -1 and squares of generators cancel to +1, so the coefficient
of any single-term product stays inside {1, i, -1, -i} times a power of
two.  Everything here is integer arithmetic on immutable values; sums of
basis terms are out of scope (the dense-matrix layer handles those).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "AmbientMismatchError",
    "BasisLabel",
    "ParseError",
    "ScaledElement",
    "all_labels",
    "canonical_key",
    "commutator",
    "commutes",
    "format_element",
    "format_scalar",
    "generator",
    "hermitization_phase",
    "hermitize",
    "parse_element",
    "parse_label",
    "parse_scalar",
    "product",
]


class ParseError(ValueError):
    """Malformed element text.  ``column`` is the 0-based offending position."""

    def __init__(self, message: str, column: int = 0):
        super().__init__(message)
        self.column = column


class AmbientMismatchError(ValueError):
    """Operands live over different generator counts."""


@dataclass(frozen=True)
class BasisLabel:
    """Index set of an ascending product of generators, as a bitmask.

    The empty set is legal and denotes the unit element.  ``ambient`` is
    the total generator count and is carried explicitly so that values
    from different algebras cannot be mixed by accident.
    """

    mask: int
    ambient: int

    def __post_init__(self):
        if self.ambient < 1:
            raise ValueError(f"ambient generator count must be >= 1, got {self.ambient}")
        if not 0 <= self.mask < (1 << self.ambient):
            raise ValueError(
                f"label mask {self.mask:#x} out of range for ambient {self.ambient}"
            )

    @classmethod
    def from_indices(cls, indices: Iterable[int], ambient: int) -> "BasisLabel":
        mask = 0
        for idx in indices:
            if not 0 <= idx < ambient:
                raise ValueError(f"generator index {idx} out of range for ambient {ambient}")
            bit = 1 << idx
            if mask & bit:
                raise ValueError(f"duplicate generator index {idx}")
            mask |= bit
        return cls(mask, ambient)

    @classmethod
    def unit(cls, ambient: int) -> "BasisLabel":
        return cls(0, ambient)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.ambient) if self.mask >> i & 1)

    @property
    def order(self) -> int:
        """Number of generators in the product."""
        return self.mask.bit_count()

    def __str__(self) -> str:
        return "e[" + ",".join(str(i) for i in self.indices) + "]"


def canonical_key(label: BasisLabel) -> tuple[int, int]:
    """Deterministic total order on labels: by order, then by bitmask."""
    return (label.order, label.mask)


@dataclass(frozen=True)
class ScaledElement:
    """Exactly (i^phase * 2^pow2) times a basis label, or the exact zero.

    Never a sum.  The zero value is absorbing under products and is what
    vanishing commutators return; it is tagged with an ambient so that
    mixing algebras still fails loudly.
    """

    label: BasisLabel
    phase: int = 0
    pow2: int = 0
    is_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)
        if self.is_zero:
            object.__setattr__(self, "phase", 0)
            object.__setattr__(self, "pow2", 0)
            object.__setattr__(self, "label", BasisLabel.unit(self.label.ambient))

    @classmethod
    def zero(cls, ambient: int) -> "ScaledElement":
        return cls(BasisLabel.unit(ambient), is_zero=True)

    @classmethod
    def unit(cls, ambient: int) -> "ScaledElement":
        return cls(BasisLabel.unit(ambient))

    @classmethod
    def of(cls, label: BasisLabel) -> "ScaledElement":
        return cls(label)

    @property
    def ambient(self) -> int:
        return self.label.ambient

    @property
    def coefficient(self) -> complex:
        if self.is_zero:
            return 0j
        return (1j ** self.phase) * 2.0 ** self.pow2

    def __str__(self) -> str:
        return format_element(self)


def generator(k: int, ambient: int) -> ScaledElement:
    """The k-th generator as a scaled element."""
    return ScaledElement(BasisLabel.from_indices([k], ambient))


def _require_same_ambient(a, b) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError(
            f"ambient generator counts differ: {a.ambient} vs {b.ambient}"
        )


def _inversions(a_mask: int, b_mask: int) -> int:
    # Transpositions of the stable sorted merge of the two ascending index
    # sequences: pairs (i in a, j in b) with i > j.
    count = 0
    b = b_mask
    while b:
        low = b & -b
        count += (a_mask >> low.bit_length()).bit_count()
        b ^= low
    return count


def product(a: ScaledElement, b: ScaledElement) -> ScaledElement:
    """Exact single-term product.

    The resulting label is the symmetric difference of the input labels;
    each transposition needed to sort the concatenated index sequence
    contributes a factor -1, and the adjacent equal pairs left afterwards
    cancel to +1.
    """
    _require_same_ambient(a, b)
    if a.is_zero or b.is_zero:
        return ScaledElement.zero(a.ambient)
    swaps = _inversions(a.label.mask, b.label.mask)
    return ScaledElement(
        BasisLabel(a.label.mask ^ b.label.mask, a.ambient),
        phase=a.phase + b.phase + 2 * swaps,
        pow2=a.pow2 + b.pow2,
    )


def commutes(a: BasisLabel, b: BasisLabel) -> bool:
    """True iff the two basis elements commute.

    Moving every generator of ``b`` through every generator of ``a`` gives
    |a|*|b| - |a & b| sign flips, so the pair commutes iff that count is
    even; otherwise it anticommutes.  There is no third option.
    """
    _require_same_ambient(a, b)
    return (a.order * b.order - (a.mask & b.mask).bit_count()) % 2 == 0


def commutator(a: ScaledElement, b: ScaledElement) -> ScaledElement:
    """[a, b] = ab - ba: the exact zero, or 2ab for anticommuting terms."""
    _require_same_ambient(a, b)
    if a.is_zero or b.is_zero or commutes(a.label, b.label):
        return ScaledElement.zero(a.ambient)
    p = product(a, b)
    return ScaledElement(p.label, p.phase, p.pow2 + 1)


def hermitization_phase(order: int) -> int:
    # Reversing k anticommuting factors costs k(k-1)/2 transpositions, so
    # the square of an order-k label is (-1)^(k(k-1)/2); an i fixes it.
    return (order * (order - 1) // 2) % 2


def hermitize(label: BasisLabel) -> ScaledElement:
    """The label rescaled by i when needed so that its square is +1.

    The result is Hermitian in every matrix representation built from
    Hermitian generators.
    """
    return ScaledElement(label, phase=hermitization_phase(label.order))


def all_labels(ambient: int) -> Iterator[BasisLabel]:
    """All 2^ambient labels in canonical (order, bitmask) order.

    Intended for oracle-scale ambients; the count grows as 2^ambient.
    """
    masks = sorted(range(1 << ambient), key=lambda m: (m.bit_count(), m))
    for mask in masks:
        yield BasisLabel(mask, ambient)


# ---------------------------------------------------------------------------
# Text form.  Canonical grammar:
#   element := "0" | [prefix] ["2^" int "*"] label
#   prefix  := "-" | "i*" | "-i*"
#   label   := "e[" [index ("," index)*] "]"      indices strictly ascending
# A bare scalar (for derivation coefficients) drops the label and prints
# "1" in place of "2^0".

_PREFIX_BY_PHASE = ("", "i*", "-", "-i*")
_PREFIXES = (("-i*", 3), ("i*", 1), ("-", 2))
_POW2_RE = re.compile(r"2\^(-?\d+)\*")
_LABEL_RE = re.compile(r"e\[([0-9,]*)\]")


def format_element(elem: ScaledElement) -> str:
    if elem.is_zero:
        return "0"
    head = _PREFIX_BY_PHASE[elem.phase]
    if elem.pow2:
        head += f"2^{elem.pow2}*"
    return head + str(elem.label)


def parse_element(text: str, ambient: int) -> ScaledElement:
    """Parse the canonical element grammar; inverse of :func:`format_element`."""
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped == "0":
        return ScaledElement.zero(ambient)
    pos = 0
    phase = 0
    for prefix, ph in _PREFIXES:
        if stripped.startswith(prefix):
            phase, pos = ph, len(prefix)
            break
    pow2 = 0
    m = _POW2_RE.match(stripped, pos)
    if m:
        pow2 = int(m.group(1))
        pos = m.end()
    m = _LABEL_RE.match(stripped, pos)
    if m is None:
        raise ParseError(f"expected a label like e[0,1] in {text!r}", offset + pos)
    indices: list[int] = []
    body = m.group(1)
    if body:
        col = offset + pos + 2
        for part in body.split(","):
            if not part.isdigit():
                raise ParseError(f"bad generator index {part!r} in {text!r}", col)
            idx = int(part)
            if idx >= ambient:
                raise ParseError(
                    f"generator index {idx} out of range for ambient {ambient}", col
                )
            if indices and idx <= indices[-1]:
                raise ParseError(
                    f"indices must be strictly ascending, got {idx} after {indices[-1]}",
                    col,
                )
            indices.append(idx)
            col += len(part) + 1
    if m.end() != len(stripped):
        raise ParseError(f"trailing text after label in {text!r}", offset + m.end())
    return ScaledElement(BasisLabel.from_indices(indices, ambient), phase=phase, pow2=pow2)


def parse_label(text: str, ambient: int) -> BasisLabel:
    """Parse a bare label (no coefficient prefix allowed)."""
    elem = parse_element(text, ambient)
    if elem.is_zero or elem.phase or elem.pow2:
        raise ParseError(f"expected a bare label, got {text!r}", 0)
    return elem.label


def format_scalar(phase: int, pow2: int) -> str:
    head = _PREFIX_BY_PHASE[phase % 4]
    return head + ("1" if pow2 == 0 else f"2^{pow2}")


def parse_scalar(text: str) -> tuple[int, int]:
    """Parse a coefficient of the form i^m * 2^p; returns (phase, pow2)."""
    stripped = text.strip()
    pos = 0
    phase = 0
    for prefix, ph in _PREFIXES:
        if stripped.startswith(prefix):
            phase, pos = ph, len(prefix)
            break
    rest = stripped[pos:]
    if rest == "1":
        return phase, 0
    m = re.fullmatch(r"2\^(-?\d+)", rest)
    if m is None:
        raise ParseError(f"expected a scalar like 2^1 or -i*1, got {text!r}", pos)
    return phase, int(m.group(1))

"""Commutator closure over basis labels, with replayable derivations.

A commutator of two scaled basis terms is either exactly zero or an exact
scalar times a single basis term, so the Lie algebra generated by a set of
basis terms is spanned by the labels reachable from the generator labels.
That turns the usual rank computation into set closure.

Counting convention.  Commutators of distinct basis terms never land on
the unit label, and the unit commutes with everything, so a generating set
confined to orders one and two closes inside that quadratic sector (the
spin-algebra pattern of dimension m(m+1)/2 over m generators).  Once any
element of order three or more is reached, the closure sweeps out every
remaining label; in that regime the engine also counts the unit label as
reached, with an empty derivation, because the unit is the empty product
and counting it makes a fully universal closure tally all 4^n labels of
the n-qubit unitary algebra.  ``ClosureResult.unit_vacuous`` records when
this rule fired.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .algebra import (
    AmbientMismatchError,
    BasisLabel,
    ParseError,
    ScaledElement,
    canonical_key,
    commutator,
    format_element,
    format_scalar,
    generator,
    hermitization_phase,
    hermitize,
    parse_element,
    parse_label,
    parse_scalar,
)

__all__ = [
    "Certificate",
    "CertificateStep",
    "ClosureResult",
    "GeneratorSet",
    "Provenance",
    "UnreachableTargetError",
    "certificate",
    "chain_generators",
    "close",
    "dimension",
    "is_universal",
    "universal_generators",
]


class UnreachableTargetError(ValueError):
    """The requested target label is not in the closure."""

    def __init__(self, target: BasisLabel, dim: int):
        super().__init__(f"target {target} is not in the closure (dimension {dim})")
        self.target = target
        self.dimension = dim


@dataclass(frozen=True)
class GeneratorSet:
    """Nonempty set of nonzero scaled basis terms over one ambient count."""

    ambient: int
    elements: tuple[ScaledElement, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("generator set must not be empty")
        seen = set()
        for el in self.elements:
            if el.ambient != self.ambient:
                raise AmbientMismatchError(
                    f"generator {el} lives over ambient {el.ambient}, expected {self.ambient}"
                )
            if el.is_zero:
                raise ValueError("zero elements are not allowed as generators")
            if el.label in seen:
                raise ValueError(f"duplicate generator label {el.label}")
            seen.add(el.label)

    @classmethod
    def of(cls, elements) -> "GeneratorSet":
        elements = tuple(elements)
        if not elements:
            raise ValueError("generator set must not be empty")
        return cls(elements[0].ambient, elements)

    @property
    def labels(self) -> tuple[BasisLabel, ...]:
        return tuple(el.label for el in self.elements)


def universal_generators(ambient: int) -> GeneratorSet:
    """All single generators plus the hermitized product of the first three.

    The smallest stock set whose closure reaches every label.  Needs three
    distinct indices, hence ambient >= 3; odd ambients are allowed for
    experiments (their top label stays out of reach).
    """
    if ambient < 3:
        raise ValueError(
            f"ambient {ambient} cannot host an order-3 element; need at least 3 generators"
        )
    extra = hermitize(BasisLabel.from_indices([0, 1, 2], ambient))
    return GeneratorSet(ambient, tuple(generator(k, ambient) for k in range(ambient)) + (extra,))


def chain_generators(ambient: int) -> GeneratorSet:
    """One endpoint generator plus nearest-neighbour pair elements.

    The set {g_0, h(e_{01}), h(e_{12}), ..., h(e_{ambient-2,ambient-1}),
    h(e_{012})}: every element acts on at most two adjacent qubits in the
    matrix form, yet the closure still reaches every label.
    """
    if ambient < 3:
        raise ValueError(f"ambient {ambient} too small for the chain set; need at least 3")
    pairs = tuple(
        hermitize(BasisLabel.from_indices([l - 1, l], ambient)) for l in range(1, ambient)
    )
    extra = hermitize(BasisLabel.from_indices([0, 1, 2], ambient))
    return GeneratorSet(ambient, (generator(0, ambient),) + pairs + (extra,))


@dataclass(frozen=True)
class Provenance:
    """First-discovery record: [rep(parent_a), rep(parent_b)] = element."""

    parent_a: BasisLabel
    parent_b: BasisLabel
    element: ScaledElement


@dataclass
class ClosureResult:
    ambient: int
    initial: tuple[BasisLabel, ...]
    representatives: dict[BasisLabel, ScaledElement]
    provenance: dict[BasisLabel, Provenance]
    depth: dict[BasisLabel, int]
    unit_vacuous: bool = False

    @property
    def reached(self) -> frozenset[BasisLabel]:
        return frozenset(self.representatives)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def labels(self) -> list[BasisLabel]:
        return sorted(self.representatives, key=canonical_key)

    def order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for label in self.representatives:
            hist[label.order] = hist.get(label.order, 0) + 1
        return dict(sorted(hist.items()))

    def order_report(self) -> str:
        """Didactic walkthrough: one derivation per non-initial label, sorted
        by order so the listing climbs through the orders the way the
        closure itself must."""
        lines = []
        for label in self.labels():
            if label in self.provenance:
                pr = self.provenance[label]
                coeff = format_scalar(pr.element.phase, pr.element.pow2)
                lines.append(f"{label} := [{pr.parent_a}, {pr.parent_b}] * {coeff}")
            elif label in self.initial:
                lines.append(f"{label} : generator")
            else:
                lines.append(f"{label} : unit (empty derivation)")
        return "\n".join(lines)

    def audit_closed(self) -> bool:
        """Exhaustively recompute all pairwise commutators; True iff no new
        label appears."""
        labels = self.labels()
        for a in labels:
            ra = self.representatives[a]
            for b in labels:
                c = commutator(ra, self.representatives[b])
                if not c.is_zero and c.label not in self.representatives:
                    return False
        return True


def close(gens: GeneratorSet) -> ClosureResult:
    """Smallest label set containing the generators and closed under
    nonvanishing pairwise commutators.

    Layered breadth-first worklist: each layer commutes the newest labels
    against everything reached so far, in ascending canonical order, so the
    first recorded derivation of a label is minimal-depth and the whole run
    is reproducible (ties are broken by label order, never by arrival
    time).
    """
    ambient = gens.ambient
    reps: dict[BasisLabel, ScaledElement] = {el.label: el for el in gens.elements}
    initial = tuple(sorted(reps, key=canonical_key))
    depth = {label: 0 for label in initial}
    provenance: dict[BasisLabel, Provenance] = {}
    frontier = list(initial)
    reached_sorted = list(initial)
    while frontier:
        found: dict[BasisLabel, Provenance] = {}
        for a in frontier:
            rep_a = reps[a]
            for b in reached_sorted:
                c = commutator(rep_a, reps[b])
                if c.is_zero or c.label in reps or c.label in found:
                    continue
                found[c.label] = Provenance(a, b, c)
        if not found:
            break
        layer = sorted(found, key=canonical_key)
        for label in layer:
            pr = found[label]
            reps[label] = pr.element
            provenance[label] = pr
            depth[label] = depth[pr.parent_a] + 1
        reached_sorted = sorted(reps, key=canonical_key)
        frontier = layer
    unit = BasisLabel.unit(ambient)
    unit_vacuous = False
    if unit not in reps and any(label.order >= 3 for label in reps):
        reps[unit] = ScaledElement.unit(ambient)
        depth[unit] = 0
        unit_vacuous = True
    return ClosureResult(
        ambient=ambient,
        initial=initial,
        representatives=reps,
        provenance=provenance,
        depth=depth,
        unit_vacuous=unit_vacuous,
    )


def dimension(gens: GeneratorSet) -> int:
    return close(gens).dimension


def is_universal(gens: GeneratorSet) -> bool:
    """True iff the closure spans the full 4^n-dimensional unitary algebra."""
    if gens.ambient % 2:
        raise ValueError(
            f"universality is defined for even ambient counts; got {gens.ambient}"
        )
    return dimension(gens) == 1 << gens.ambient


# ---------------------------------------------------------------------------
# Certificates: replayable derivations of a single target label.


@dataclass(frozen=True)
class CertificateStep:
    result: BasisLabel
    parent_a: BasisLabel
    parent_b: BasisLabel
    element: ScaledElement  # exact value of [rep(parent_a), rep(parent_b)]


@dataclass(frozen=True)
class Certificate:
    """Topologically ordered commutator derivation of one target label.

    Replaying the steps from the generator elements reproduces the target's
    representative exactly; the recorded scalar relates that representative
    to the hermitized target.  An empty step list certifies either a
    generator itself or the unit label (the empty derivation).
    """

    ambient: int
    target: BasisLabel
    generators: tuple[ScaledElement, ...]
    steps: tuple[CertificateStep, ...]
    scalar_phase: int
    scalar_pow2: int

    @property
    def scalar(self) -> complex:
        return (1j ** self.scalar_phase) * 2.0 ** self.scalar_pow2

    def validate(self) -> None:
        """Symbolic replay; raises ValueError on any inconsistency."""
        avail = {g.label: g for g in self.generators}
        for step in self.steps:
            for parent in (step.parent_a, step.parent_b):
                if parent not in avail:
                    raise ValueError(f"step parent {parent} has no prior derivation")
            c = commutator(avail[step.parent_a], avail[step.parent_b])
            if c.is_zero or c.label != step.result or c != step.element:
                raise ValueError(f"step for {step.result} does not replay: got {c}")
            avail[step.result] = c
        if self.target.order and self.target not in avail:
            raise ValueError(f"target {self.target} never derived")
        actual = avail.get(self.target, ScaledElement.unit(self.ambient))
        expected = ScaledElement(
            self.target,
            phase=hermitization_phase(self.target.order) + self.scalar_phase,
            pow2=self.scalar_pow2,
        )
        if actual != expected:
            raise ValueError(
                f"terminal scalar mismatch: derived {actual}, recorded {expected}"
            )

    def to_text(self) -> str:
        lines = [f"ambient {self.ambient}", f"target {self.target}"]
        lines += [f"generator {format_element(g)}" for g in self.generators]
        for step in self.steps:
            coeff = format_scalar(step.element.phase, step.element.pow2)
            lines.append(f"step {step.result} := [{step.parent_a}, {step.parent_b}] * {coeff}")
        lines.append(f"scalar {format_scalar(self.scalar_phase, self.scalar_pow2)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Certificate":
        ambient = None
        target = None
        gens: list[ScaledElement] = []
        steps: list[CertificateStep] = []
        scalar = None
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            kind, _, rest = line.partition(" ")
            if kind == "ambient":
                ambient = int(rest)
            elif ambient is None:
                raise ParseError(f"line {ln}: ambient must come first")
            elif kind == "target":
                target = parse_label(rest, ambient)
            elif kind == "generator":
                gens.append(parse_element(rest, ambient))
            elif kind == "step":
                head, _, coeff_text = rest.rpartition(" * ")
                result_text, _, bracket = head.partition(" := ")
                if not bracket.startswith("[") or not bracket.endswith("]"):
                    raise ParseError(f"line {ln}: malformed step {raw!r}")
                a_text, _, b_text = bracket[1:-1].partition(", ")
                phase, pow2 = parse_scalar(coeff_text)
                result = parse_label(result_text.strip(), ambient)
                steps.append(
                    CertificateStep(
                        result=result,
                        parent_a=parse_label(a_text.strip(), ambient),
                        parent_b=parse_label(b_text.strip(), ambient),
                        element=ScaledElement(result, phase=phase, pow2=pow2),
                    )
                )
            elif kind == "scalar":
                scalar = parse_scalar(rest)
            else:
                raise ParseError(f"line {ln}: unknown record {kind!r}")
        if ambient is None or target is None or scalar is None or not gens:
            raise ParseError("certificate text is missing ambient/target/generators/scalar")
        cert = cls(
            ambient=ambient,
            target=target,
            generators=tuple(gens),
            steps=tuple(steps),
            scalar_phase=scalar[0],
            scalar_pow2=scalar[1],
        )
        cert.validate()
        return cert


def certificate(source: Union[GeneratorSet, ClosureResult], target: BasisLabel) -> Certificate:
    """Minimal-depth derivation of ``target`` extracted from the closure's
    breadth-first provenance."""
    result = source if isinstance(source, ClosureResult) else close(source)
    if target.ambient != result.ambient:
        raise AmbientMismatchError(
            f"target over ambient {target.ambient}, closure over {result.ambient}"
        )
    if target not in result.representatives:
        raise UnreachableTargetError(target, result.dimension)
    needed: set[BasisLabel] = set()
    stack = [target]
    while stack:
        label = stack.pop()
        pr = result.provenance.get(label)
        if pr is None or label in needed:
            continue
        needed.add(label)
        stack.append(pr.parent_a)
        stack.append(pr.parent_b)
    ordered = sorted(needed, key=lambda lab: (result.depth[lab], canonical_key(lab)))
    steps = tuple(
        CertificateStep(
            result=label,
            parent_a=result.provenance[label].parent_a,
            parent_b=result.provenance[label].parent_b,
            element=result.provenance[label].element,
        )
        for label in ordered
    )
    rep = result.representatives[target]
    return Certificate(
        ambient=result.ambient,
        target=target,
        generators=tuple(result.representatives[label] for label in result.initial),
        steps=steps,
        scalar_phase=(rep.phase - hermitization_phase(target.order)) % 4,
        scalar_pow2=rep.pow2,
    )

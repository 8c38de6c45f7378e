import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffgate import (
    BasisLabel,
    Certificate,
    GeneratorSet,
    ScaledElement,
    UnreachableTargetError,
    all_labels,
    certificate,
    chain_generators,
    close,
    commutator,
    dimension,
    generator,
    hermitize,
    is_universal,
    replay_certificate,
    universal_generators,
)
from conftest import elem, label


def generators_only(ambient):
    return GeneratorSet.of([generator(k, ambient) for k in range(ambient)])


class TestClose:
    def test_two_generators(self):
        assert dimension(generators_only(2)) == 3

    def test_generators_only_quadratic_sector(self):
        assert dimension(generators_only(4)) == 10
        assert dimension(generators_only(6)) == 21

    def test_adding_order3_reaches_everything(self):
        assert dimension(universal_generators(4)) == 16
        assert dimension(universal_generators(6)) == 64

    def test_odd_ambient_misses_top_element(self):
        result = close(universal_generators(5))
        assert result.dimension == 31
        top = label([0, 1, 2, 3, 4], 5)
        assert top not in result.reached
        assert BasisLabel.unit(5) in result.reached
        assert result.unit_vacuous
        assert result.audit_closed()

    def test_single_generator(self):
        assert dimension(GeneratorSet.of([generator(0, 4)])) == 1

    def test_generators_only_never_exceeds_order_two(self):
        for ambient in (3, 5, 8):
            result = close(generators_only(ambient))
            assert max(lab.order for lab in result.reached) <= 2
            assert not result.unit_vacuous

    @pytest.mark.parametrize("m", range(2, 17))
    def test_quadratic_sector_dimension_law(self, m):
        assert dimension(generators_only(m)) == m * (m + 1) // 2

    def test_idempotent(self):
        first = close(universal_generators(4))
        again = close(GeneratorSet.of([first.representatives[l] for l in first.labels()]))
        assert again.reached == first.reached

    def test_closedness_audit(self):
        for gens in (generators_only(5), universal_generators(4), chain_generators(6)):
            assert close(gens).audit_closed()

    def test_deterministic_under_input_order(self):
        gens = universal_generators(4)
        shuffled = GeneratorSet(4, tuple(reversed(gens.elements)))
        a, b = close(gens), close(shuffled)
        assert a.reached == b.reached
        assert a.provenance == b.provenance

    def test_order_report_mentions_every_label(self):
        result = close(universal_generators(4))
        report = result.order_report()
        for lab in result.labels():
            assert str(lab) in report


class TestUniversality:
    def test_stock_set_is_universal(self):
        assert is_universal(universal_generators(4))

    def test_generators_alone_are_not(self):
        assert not is_universal(generators_only(4))

    def test_order4_extra_element_works_too(self):
        gens = GeneratorSet.of(
            [generator(k, 4) for k in range(4)] + [hermitize(label([0, 1, 2, 3], 4))]
        )
        assert is_universal(gens)

    def test_every_order3_or_4_extra_at_six_generators(self):
        for lab in all_labels(6):
            if lab.order in (3, 4):
                gens = GeneratorSet.of(
                    [generator(k, 6) for k in range(6)] + [hermitize(lab)]
                )
                assert dimension(gens) == 64

    def test_odd_ambient_rejected(self):
        with pytest.raises(ValueError):
            is_universal(universal_generators(5))


class TestStockSets:
    def test_universal_generators_sizes(self):
        assert len(universal_generators(4).elements) == 5
        assert len(universal_generators(6).elements) == 7

    def test_universal_generators_rejects_tiny_ambient(self):
        with pytest.raises(ValueError):
            universal_generators(2)

    def test_chain_closure_is_full(self):
        assert dimension(chain_generators(4)) == 16
        assert dimension(chain_generators(6)) == 64

    def test_chain_without_extra_element_stays_quadratic(self):
        gens = chain_generators(4)
        trimmed = GeneratorSet(4, gens.elements[:-1])
        assert dimension(trimmed) == 10

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            GeneratorSet.of([generator(0, 4), elem([0], 4, phase=2)])

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            GeneratorSet.of([generator(0, 4), ScaledElement.zero(4)])


@st.composite
def small_generator_sets(draw):
    ambient = draw(st.integers(2, 6))
    count = draw(st.integers(1, min(4, (1 << ambient) - 1)))
    masks = draw(
        st.lists(st.integers(1, (1 << ambient) - 1), min_size=count, max_size=count, unique=True)
    )
    return GeneratorSet.of([ScaledElement(BasisLabel(m, ambient)) for m in masks])


class TestClosureProperties:
    @given(small_generator_sets())
    @settings(max_examples=60, deadline=None)
    def test_monotone(self, gens):
        extra = generator(0, gens.ambient)
        if extra.label in gens.labels:
            bigger = gens
        else:
            bigger = GeneratorSet(gens.ambient, gens.elements + (extra,))
        assert close(gens).reached <= close(bigger).reached

    @given(small_generator_sets())
    @settings(max_examples=40, deadline=None)
    def test_audit_always_closed(self, gens):
        assert close(gens).audit_closed()


class TestCertificates:
    def test_one_step(self):
        cert = certificate(universal_generators(4), label([0, 1], 4))
        assert len(cert.steps) == 1
        step = cert.steps[0]
        assert {step.parent_a, step.parent_b} == {label([0], 4), label([1], 4)}
        assert abs(step.element.coefficient) == 2.0
        cert.validate()

    def test_initial_generator_is_trivial(self):
        cert = certificate(universal_generators(4), label([0], 4))
        assert cert.steps == ()
        assert cert.scalar == 1
        cert.validate()

    def test_unit_label_has_empty_derivation(self):
        cert = certificate(universal_generators(4), BasisLabel.unit(4))
        assert cert.steps == ()
        cert.validate()
        assert replay_certificate(cert).deviation == 0.0

    def test_top_label_pairs_order3_with_a_generator(self):
        cert = certificate(universal_generators(4), label([0, 1, 2, 3], 4))
        final = cert.steps[-1]
        orders = sorted((final.parent_a.order, final.parent_b.order))
        assert orders == [1, 3]
        cert.validate()

    def test_unreachable_target_names_dimension(self):
        gens = generators_only(4)
        with pytest.raises(UnreachableTargetError) as err:
            certificate(gens, label([0, 1, 2], 4))
        assert err.value.dimension == 10
        assert "dimension 10" in str(err.value)

    def test_all_targets_replay_exactly(self):
        result = close(universal_generators(4))
        for lab in result.labels():
            cert = certificate(result, lab)
            cert.validate()
            assert replay_certificate(cert).deviation < 1e-12

    def test_text_roundtrip(self):
        cert = certificate(universal_generators(4), label([0, 1, 2, 3], 4))
        text = cert.to_text()
        back = Certificate.from_text(text)
        assert back == cert
        assert back.to_text() == text

    def test_from_text_rejects_tampering(self):
        cert = certificate(universal_generators(4), label([0, 1], 4))
        bad = cert.to_text().replace("* 2^1", "* -2^1")
        with pytest.raises(ValueError):
            Certificate.from_text(bad)

    def test_replay_rejects_odd_ambient(self):
        cert = certificate(universal_generators(5), label([0, 1], 5))
        with pytest.raises(ValueError):
            replay_certificate(cert)

    def test_certificates_survive_serialization_and_replay(self):
        result = close(chain_generators(6))
        for lab in [label([0, 1, 2, 3, 4, 5], 6), label([2, 4], 6), label([1], 6)]:
            cert = Certificate.from_text(certificate(result, lab).to_text())
            assert replay_certificate(cert).deviation < 1e-12

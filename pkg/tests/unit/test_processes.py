import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from pydantic import ValidationError

from duality_lab.common.errors import MarginViolationError, ParameterDomainError, UnknownTypeError
from duality_lab.processes.checks import conservation_residual, ctmc_property_residual, generator_equivalence, \
    process_reports, reversibility_residual
from duality_lab.processes.generator import Provenance, product_basis
from duality_lab.processes.generators_loader import GeneratorsLoader, build_generator_algebraic, \
    build_generator_direct
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.carriers import delta, site_symbols
from duality_lab.verification_report import CheckKind

HALF = Fraction(1, 2)
x0, x1 = site_symbols(2)

EQUIVALENT_SPECS = [
    ProcessSpec(family="irw", sites=2, c=Fraction(3, 4)),
    ProcessSpec(family="irw", sites=3, c=Fraction(3, 4), trunc=6),
    ProcessSpec(family="sip", sites=2, k=[HALF, Fraction(2)]),
    ProcessSpec(family="sip", sites=3, k=HALF, trunc=6),
    ProcessSpec(family="sep", sites=2, j=[3, 2]),
    ProcessSpec(family="sep", sites=3, j=[1, 2, 1]),
    ProcessSpec(family="dif", sites=2, c=1),
    ProcessSpec(family="dif", sites=3, c=Fraction(2, 5), maxdeg=5),
    ProcessSpec(family="bep", sites=2, k=[Fraction(1, 3), Fraction(2)]),
    ProcessSpec(family="hyp", sites=2, k=[HALF, Fraction(3, 2)], phi=math.pi / 3),
]


def test_spec_broadcasts_site_parameters():
    spec = ProcessSpec(family="sip", sites=3, k="1/2")
    assert spec.k == [HALF, HALF, HALF]
    sep = ProcessSpec(family=ProcessFamily.SEP, sites=2, j=2)
    assert sep.k_values() == [Fraction(-1), Fraction(-1)]
    assert sep.caps() == [2, 2]
    assert ProcessSpec(family="dif", c=1, maxdeg=6).max_degree == 6


@pytest.mark.parametrize("params", [
    {"family": "irw", "sites": 2},
    {"family": "irw", "sites": 2, "c": -1},
    {"family": "irw", "sites": 1, "c": 1},
    {"family": "sip", "sites": 2, "k": [1, 2, 3]},
    {"family": "bep", "sites": 2, "k": [0, 1]},
    {"family": "sep", "sites": 2, "j": [0, 2]},
    {"family": "hyp", "sites": 2, "k": 1, "phi": 4.0},
    {"family": "ssep", "sites": 2},
])
def test_spec_rejects_invalid_parameters(params):
    with pytest.raises(ValidationError):
        ProcessSpec(**params)


def test_irw_on_linear_function():
    generator = build_generator_direct(ProcessSpec(family="irw", sites=2, c=1))
    assert generator.provenance() == Provenance.DirectFormula
    for state in [(0, 0), (3, 1), (2, 5)]:
        assert generator.apply_at(lambda s: s[0], state) == state[1] - state[0]


def test_sip_and_sep_rates():
    sip = build_generator_direct(ProcessSpec(family="sip", sites=2, k=HALF))
    assert sip.pair_rates(0, 1, (1, 1)) == (2, 2)
    assert dict(sip.transitions((1, 0))) == {(0, 1): 1}
    sep = build_generator_direct(ProcessSpec(family="sep", sites=2, j=[3, 2]))
    assert sep.pair_rates(0, 1, (2, 1)) == (2, 1)
    assert sep.pair_rates(0, 1, (1, 2)) == (0, 4)
    assert dict(sep.transitions((3, 2))) == {}


def test_jump_apply_past_truncation_raises():
    generator = build_generator_direct(ProcessSpec(family="irw", sites=2, c=1, trunc=4))
    with pytest.raises(MarginViolationError):
        generator.apply(delta(4, 4))


def test_sector_matrix():
    generator = build_generator_direct(ProcessSpec(family="irw", sites=2, c=1))
    states = generator.sector_states(1)
    assert states == [(0, 1), (1, 0)]
    np.testing.assert_array_equal(generator.to_dense(states), np.array([[-1.0, 1.0], [1.0, -1.0]]))


def test_diffusion_generators():
    dif = build_generator_direct(ProcessSpec(family="dif", sites=2, c=1))
    assert sympy.expand(dif.apply(x0 ** 2) - (2 - 2 * x0 ** 2 + 2 * x0 * x1)) == 0
    increments = dif.pair_increments([1.0, 0.0])
    assert increments[0][:3] == (0, 1, -1.0)
    assert increments[0][3] == pytest.approx(math.sqrt(2))
    bep = build_generator_direct(ProcessSpec(family="bep", sites=2, k=[HALF, Fraction(1)]))
    # drift -2(k_j x_i - k_i x_j) on f = x_i
    assert sympy.expand(bep.apply(x0) - (-2 * x0 + x1)) == 0


def test_hyp_generator_annihilates_constants():
    generator = build_generator_direct(ProcessSpec(family="hyp", sites=2, k=1, phi=math.pi / 2))
    assert generator.apply(sympy.Integer(1)) == 0
    assert sympy.expand(generator.apply(x0 + x1)) == 0


@pytest.mark.parametrize("spec", EQUIVALENT_SPECS, ids=lambda s: s.label())
def test_generator_equivalence(spec):
    report = generator_equivalence(spec)
    assert report.kind == CheckKind.Identity
    assert report.passed(), report
    assert report.points_checked > 0


def test_algebraic_generator_matches_irw_on_delta():
    spec = ProcessSpec(family="irw", sites=2, c=Fraction(3, 4))
    algebraic = build_generator_algebraic(spec)
    assert algebraic.provenance() == Provenance.Algebraic
    lhs = algebraic.apply(delta(1, 1))
    rhs = build_generator_direct(spec).apply(delta(1, 1))
    for state in set(lhs) | set(rhs):
        assert lhs.get(state, 0) == rhs.get(state, 0)
    assert rhs[(0, 2)] == 2


def test_bep_printed_drift_is_a_negative_control():
    spec = ProcessSpec(family="bep", sites=2, k=[Fraction(1, 3), Fraction(2)], variant="printed")
    report = generator_equivalence(spec)
    assert report.kind == CheckKind.NegativeControl
    assert report.max_abs_residual > 0
    assert report.passed()
    assert report.notes


def test_bep_printed_drift_agrees_for_equal_parameters():
    spec = ProcessSpec(family="bep", sites=2, k=Fraction(3, 4), variant=GeneratorVariant.Printed)
    report = generator_equivalence(spec)
    assert report.kind == CheckKind.Identity
    assert report.passed()


def test_hyp_printed_form_is_a_negative_control():
    spec = ProcessSpec(family="hyp", sites=2, k=1, phi=math.pi / 4, variant="printed")
    report = generator_equivalence(spec)
    assert report.kind == CheckKind.NegativeControl
    assert report.passed()


@pytest.mark.parametrize("spec", [
    ProcessSpec(family="irw", sites=2, c=Fraction(3, 4), trunc=6),
    ProcessSpec(family="sip", sites=2, k=[HALF, Fraction(2)], trunc=6),
    ProcessSpec(family="sep", sites=3, j=[3, 2, 1]),
    ProcessSpec(family="dif", sites=2, c=Fraction(2, 3)),
    ProcessSpec(family="bep", sites=2, k=[Fraction(1, 3), Fraction(2)]),
], ids=lambda s: s.label())
def test_reversibility(spec):
    report = reversibility_residual(spec)
    assert report.max_abs_residual == 0.0
    assert report.passed()


def test_printed_bep_is_not_reversible():
    spec = ProcessSpec(family="bep", sites=2, k=[Fraction(1, 3), Fraction(2)], variant="printed")
    report = reversibility_residual(spec)
    assert report.max_abs_residual > 0.0
    assert report.kind == CheckKind.NegativeControl
    assert report.passed()


def test_printed_bep_with_equal_k_stays_reversible():
    report = reversibility_residual(ProcessSpec(family="bep", sites=2, k=[1, 1], variant="printed"))
    assert report.kind == CheckKind.Identity
    assert report.max_abs_residual == 0.0
    assert report.passed()


def test_printed_bep_process_reports_pass():
    spec = ProcessSpec(family="bep", sites=2, k=[Fraction(1, 3), Fraction(2)], variant="printed")
    reports = process_reports(spec)
    assert all(r.passed() for r in reports)
    assert {r.case.split(":")[0]: r.kind for r in reports}["reversibility"] == CheckKind.NegativeControl


def test_hyp_has_no_reversibility_check():
    with pytest.raises(ParameterDomainError):
        reversibility_residual(ProcessSpec(family="hyp", sites=2, k=1, phi=1.0))


@pytest.mark.parametrize("spec", EQUIVALENT_SPECS, ids=lambda s: s.label())
def test_conservation(spec):
    assert conservation_residual(build_generator_direct(spec)).passed()


def test_hyp_conservation_is_relative_to_the_generator_scale():
    spec = ProcessSpec(family="hyp", sites=2, k=[HALF, Fraction(3, 2)], phi=math.pi / 3)
    for generator in (build_generator_direct(spec), build_generator_algebraic(spec)):
        report = conservation_residual(generator)
        assert report.max_rel_residual < 1e-12
        assert report.passed()


def test_ctmc_generator_matrix():
    spec = ProcessSpec(family="sip", sites=3, k=[HALF, 1, 2], trunc=5)
    report = ctmc_property_residual(spec, 4)
    assert report.passed()
    assert report.points_checked > 0
    with pytest.raises(ParameterDomainError):
        ctmc_property_residual(ProcessSpec(family="dif", sites=2, c=1), 2)


def test_process_reports():
    reports = process_reports(ProcessSpec(family="sep", sites=2, j=[2, 2]))
    assert [r.case.split(":")[0] for r in reports] == ["generator-equivalence", "conservation", "reversibility",
                                                        "ctmc-generator"]
    assert all(r.passed() for r in reports)


def test_generators_loader():
    spec = ProcessSpec(family="irw", sites=2, c=1)
    assert GeneratorsLoader.load_generator("irw", spec).spec == spec
    with pytest.raises(UnknownTypeError):
        GeneratorsLoader.load_generator("zrp", spec)
    with pytest.raises(UnknownTypeError):
        GeneratorsLoader.register_generator(int)


def test_product_basis_sizes():
    assert len(product_basis(ProcessSpec(family="sep", sites=2, j=[3, 2]))) == 12
    assert len(product_basis(ProcessSpec(family="dif", sites=2, c=1))) == 25
    assert len(product_basis(ProcessSpec(family="hyp", sites=2, k=1, phi=1.0))) == 16

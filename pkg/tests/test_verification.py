import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercauchy import verification as v
from hypercauchy.errors import BracketError, DomainError, RangeError

SQ3 = math.sqrt(3.0)


def test_report_modes():
    r = v._report("x", 1.0 + 1e-7, 1.0, 1e-6)
    assert r.passed and r.mode == "abs"
    assert not v._report("x", 101.0, 100.0, 1e-3, "rel").passed
    assert v._report("x", 100.05, 100.0, 1e-3, "rel").passed
    assert not v._report("x", math.nan, 0.0, 1.0).passed
    assert v._report("x", 0.0, 0.0, 1e-9).to_dict()["check_name"] == "x"


def test_product_identity_trivial_case():
    r = v.verify_product_identity(2, 1.0, 1.0)
    assert r.passed and r.measured < 1e-15  # relative deviation from x^4 + t^4 = 2


@given(st.integers(2, 6), st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_product_identity_property(n, x, t):
    assert v.verify_product_identity(n, x, t).passed
    assert v.verify_product_cascade(n, x, t).passed


def test_product_identity_range():
    with pytest.raises(RangeError):
        v.verify_product_identity(7, 1.0, 1.0)
    with pytest.raises(RangeError):
        v.verify_product_identity(3, 60.0, 1.0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_representations(n):
    for t in (0.5, 1.0, 2.0):
        assert v.verify_representations(n, t).passed


def test_printed_closed_forms():
    assert v.verify_closed_form(2).passed and v.verify_closed_form(3, 2.0).passed
    # p4(0, 1) from the closed form
    assert v.p4_closed_form(0.0) == pytest.approx(1 / (math.sqrt(2) * math.pi))
    assert v.p8_closed_form(np.array([0.0, 1.0])).shape == (2,)


def test_two_cauchy_identity():
    for n, k in ((2, 1), (3, 3), (5, 9)):
        assert v.verify_two_cauchy_identity(n, k, 0.7).passed


@pytest.mark.parametrize("law,params", [("hyper", {"n": 5, "t": 2.0}), ("hyper", {"n": 2}), ("cauchy", {}),
                                        ("asym", {"k": 1}), ("third", {}), ("p6", {})])
def test_normalization(law, params):
    assert v.verify_normalization(law, **params).passed


@pytest.mark.parametrize("n,k,t", [(3, 1, 1.0), (3, 3, 1.0), (2, 1, 2.0), (5, 15, 0.5)])
def test_component_integral(n, k, t):
    r = v.verify_component_integral(n, k, t)
    assert r.passed
    assert r.expected == pytest.approx(math.pi / t / math.cos(k * math.pi / 2**n))


@pytest.mark.parametrize("k,mass", [(1, 1 / 3), (2, 3 / 5), (10, 0.5 * (1 + 1 / 21))])
def test_halfline_mass(k, mass):
    assert v.halfline_mass_closed_form(k) == pytest.approx(mass, abs=1e-15)
    assert v.verify_halfline_mass(k).passed


# --- PDE certification -------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_pde_fourier_dyadic(n):
    r = v.verify_pde_fourier("dyadic", n=n)
    assert r.passed and r.measured <= 1e-12


def test_pde_fourier_other_orders():
    for k in (1, 2, 3, 4):
        assert v.verify_pde_fourier("odd", k=k).passed
    assert v.verify_pde_fourier("sixth").passed
    for n in (1, 2, 3, 4):
        for r in range(2 * n):
            assert v.verify_pde_fourier("even", n=n, r=r).passed
    for m in (2, 3, 7):
        assert v.verify_pde_fourier("second", m=m).passed


def test_pde_fourier_rejects_wrong_exponents():
    # the opposite skew does not solve the odd-order equation
    b = np.linspace(0.5, 3.0, 6)
    lam = -(SQ3 / 2) * b - 0.5j * b * -1
    assert np.max(v._exponent_residual(lam, 3, 1.0, b)) > 0.1
    with pytest.raises(DomainError):
        v.pde_fourier_residuals("even", n=2, r=4)
    with pytest.raises(DomainError):
        v.pde_fourier_residuals("octic")


def test_even_order_printed_exponent_fails():
    # exp(i pi r / 2^n) in place of exp(i pi r / n) breaks the equation for n = 3, r = 1
    b = np.linspace(0.5, 3.0, 6)
    lam = -b * np.exp(1j * math.pi / 8)
    assert np.max(v._exponent_residual(lam, 6, 1.0, b)) > 0.1


@pytest.mark.parametrize("kind,x,t,extra", [("p4", 0.5, 1.0, {}), ("third", 0.3, 1.0, {}),
                                            ("second", 0.2, 1.0, {"m": 3})])
def test_pde_fd(kind, x, t, extra):
    assert v.verify_pde_fd(kind, x, t, v.FD_STEP, **extra).passed
    order = v.verify_pde_fd_order(kind, x, t, v.FD_STEP, **extra)
    assert order.passed and 1.5 <= order.measured <= 2.5


def test_pde_fd_residual_shrinks_fourfold():
    r1 = v.fd_normalized_residual("p4", 0.5, 1.0, 0.05)
    r2 = v.fd_normalized_residual("p4", 0.5, 1.0, 0.025)
    assert r1 / r2 == pytest.approx(4.0, rel=0.15)


def test_pde_fd_wrong_equation_fails():
    # the third-order law does not solve the 4th-order equation
    terms = [v.finite_difference(lambda tt: v.dist.third_order_pdf(0.3, tt), 4, 1.0, 0.0125),
             v.finite_difference(lambda xx: v.dist.third_order_pdf(xx, 1.0), 4, 0.3, 0.0125)]
    assert abs(sum(terms)) / max(map(abs, terms)) > 0.1


def test_pde_fd_stencil_domain():
    with pytest.raises(BracketError):
        v.verify_pde_fd("p4", 0.5, 0.05, 0.05)
    with pytest.raises(DomainError):
        v.verify_pde_fd("heat", 0.5, 1.0, 0.01)


# --- Airy and Bessel routes ---------------------------------------------------------------

@pytest.mark.parametrize("x,expected", [(0.0, SQ3 / (2 * math.pi)), (1.0, SQ3 / (6 * math.pi)),
                                        (-2.0, SQ3 / (6 * math.pi)), (-3.0, 0.039380635387270861)])
def test_airy_composition(x, expected):
    assert v.airy_composition(x, 1.0) == pytest.approx(expected, abs=1e-9)
    assert v.verify_airy_composition(x).passed


def test_airy_composition_two_integration_variables():
    assert v.verify_airy_composition_s(0.5).passed
    assert v.verify_airy_composition(0.5, 2.0).passed


def test_airy_bessel_identity():
    for x, t in ((0.3, 1.0), (1.0, 1.0), (2.5, 0.7)):
        assert v.verify_airy_bessel_identity(x, t).passed
    with pytest.raises(DomainError):
        v.verify_airy_bessel_identity(-1.0, 1.0)


def test_bessel_product():
    assert v.bessel_product_closed_form(1.0, 2.0) == pytest.approx(0.2818768299541016, rel=1e-13)
    assert v.verify_bessel_product_integral(1.0, 2.0).passed
    r = v.verify_bessel_product_integral(1.5, 1.5)
    assert r.passed and "limit" in r.check_name
    # the equal-argument limit is continuous
    assert v.bessel_product_closed_form(1.5, 1.5 * (1 + 1e-6)) == pytest.approx(
        v.bessel_product_closed_form(1.5, 1.5), rel=1e-5)
    with pytest.raises(DomainError):
        v.verify_bessel_product_integral(0.0, 1.0)


def test_renormalized_chain():
    r = v.verify_renormalized_chain(2.0, 1.0)
    assert r.passed
    assert r.expected == pytest.approx(SQ3 / (2 * math.pi) / 7)


# --- initial conditions and transforms -------------------------------------------------

@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("x", [1.0, -0.7, 2.0])
def test_initial_conditions(k, x):
    assert v.verify_initial_conditions(k, x).passed


def test_initial_condition_values():
    assert v.initial_condition_closed_form(1, 1.0) == pytest.approx(1 / math.pi)
    assert v.initial_condition_closed_form(2, 1.0) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        v.verify_initial_conditions(4, 1.0)
    with pytest.raises(DomainError):
        v.verify_initial_conditions(1, 0.0)


def test_cf_match():
    assert v.verify_cf_match("hyper", n=2).passed
    assert v.verify_cf_match("third").passed
    assert v.verify_cf_match("asym", k=2, beta_grid=[-1.0, 0.5]).passed
    with pytest.raises(DomainError):
        v.verify_cf_match("component", n=3, k=1)


# --- suites ------------------------------------------------------------------------------

def test_suite_names():
    assert v.suite_names()[0] == "all"
    assert set(v.suite_names()[1:]) == set(v.SUITES)
    with pytest.raises(DomainError):
        v.run_suite("nope")


@pytest.mark.parametrize("name", [s for s in v.SUITES if s != "cf"])
def test_suite_passes(name):
    reports = v.run_suite(name)
    assert reports and all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_suite_deterministic_and_parallel():
    a = v.run_suite("pde")
    b = v.run_suite("pde", workers=3)
    assert a == b


def test_report_serialisations():
    reports = v.run_suite("halfline")
    data = json.loads(v.reports_to_json(reports))
    assert [d["check_name"] for d in data] == [r.check_name for r in reports]
    tsv = v.reports_to_tsv(reports).splitlines()
    assert tsv[0].split("\t")[0] == "check_name" and len(tsv) == len(reports) + 1
    table = v.summary_table(reports)
    assert table.endswith(f"{len(reports)}/{len(reports)} checks passed")

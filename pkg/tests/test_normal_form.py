import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
import tables
from conftest import praafs
from praaf import (
    AAF,
    ConfigurationError,
    DomainError,
    GroundTruth,
    MalformedNormalFormError,
    PrAAF,
    check_equivalence,
    enumerate_worlds,
    extension_distribution,
    from_normal_form,
    is_acceptable_extension,
    is_normal_form,
    probabilistic_elements,
    strip_eta,
    to_normal_form,
)

COROLLARY = ["admissible", "complete", "grounded", "preferred", "stable"]
TOL = 1e-9


def test_is_normal_form_examples(fig2, fig3):
    assert is_normal_form(fig3)
    assert not is_normal_form(fig2)
    assert is_normal_form(PrAAF({}))


def test_transform_worked_example(fig2, fig3):
    cert = to_normal_form(fig2)
    assert cert.transformed == fig3
    (m,) = cert.mapping
    assert (m.argument, m.original_p, m.attack, m.attack_p) == ("c", 0.4, ("eta", "c"), 0.6)


def test_transform_identity_when_already_normal(fig3):
    p = PrAAF({"a": 1, "b": 1}, {("a", "b"): 0.5})
    cert = to_normal_form(p)
    assert cert.transformed == p
    assert cert.mapping == ()
    assert "eta" not in cert.transformed.p_args


def test_transform_single_argument():
    cert = to_normal_form(PrAAF({"x": 0.25}))
    assert cert.transformed == PrAAF({"x": 1, "eta": 1}, {("eta", "x"): 0.75})


def test_transform_rejects_eta_collision(fig3):
    with pytest.raises(ConfigurationError, match="--eta"):
        to_normal_form(PrAAF({"eta": 0.5}))
    cert = to_normal_form(PrAAF({"eta": 0.5}), GroundTruth("truth"))
    assert cert.transformed.p_atts == {("truth", "eta"): 0.5}


def test_custom_eta_as_string(fig2):
    cert = to_normal_form(fig2, "g")
    assert ("g", "c") in cert.transformed.p_atts
    assert from_normal_form(cert.transformed, "g") == fig2


def test_reverse_worked_example(fig2, fig3):
    assert from_normal_form(fig3, GroundTruth()) == fig2


def test_reverse_errors(fig2, fig3):
    with pytest.raises(MalformedNormalFormError, match="not found"):
        from_normal_form(PrAAF({"a": 1}))
    with pytest.raises(MalformedNormalFormError, match="not in normal form"):
        from_normal_form(fig2)
    attacked = PrAAF({**fig3.p_args}, {**fig3.p_atts, ("a", "eta"): 1})
    with pytest.raises(MalformedNormalFormError, match="attacked"):
        from_normal_form(attacked)
    certain = PrAAF({"eta": 1, "a": 1}, {("eta", "a"): 1})
    with pytest.raises(MalformedNormalFormError, match="probability 0"):
        from_normal_form(certain)


def test_acceptable_extension_examples(fig3):
    f = fig3.structure()
    assert is_acceptable_extension({"eta"}, f)
    assert not is_acceptable_extension(set(), f)
    assert is_acceptable_extension({"eta", "a", "b", "d"}, f)
    with pytest.raises(DomainError):
        is_acceptable_extension({"a"}, AAF({"a"}))


def test_strip_eta_examples(fig3):
    d = extension_distribution(fig3, "admissible")
    expected = tables.table_sum(tables.TABLE_2, lambda s: frozenset("abd") in s)
    assert d[{"eta", "a", "b", "d"}] == pytest.approx(expected, abs=TOL)
    stripped = strip_eta(d)
    assert stripped[{"a", "b", "d"}] == pytest.approx(0.916, abs=TOL)
    assert stripped[set()] == d[{"eta"}]
    # {a,b} without eta is admissible in the transform but not acceptable
    assert d[{"a", "b"}] > 0
    assert len(stripped) == sum(1 for k in d.entries if "eta" in k)
    for key, value in stripped.entries.items():
        assert d[key | {"eta"}] == value


def test_equivalence_worked_example(fig2, fig3):
    report = check_equivalence(fig2, fig3, GroundTruth(), "admissible", 1e-9)
    assert report.passed
    assert report.left[{"a", "b", "d"}] == pytest.approx(0.916, abs=TOL)
    assert report.right[{"a", "b", "d"}] == pytest.approx(0.916, abs=TOL)


def test_equivalence_detects_perturbation(fig2, fig3):
    perturbed = PrAAF(fig3.p_args, {**fig3.p_atts, ("eta", "c"): 0.5})
    report = check_equivalence(fig2, perturbed, GroundTruth(), "admissible", 1e-9)
    assert not report.passed
    witnesses = {d.extension: (d.left, d.right) for d in report.discrepancies}
    # {c} is admissible only when c exists: 0.4 * 0.7 * 0.3 vs 0.5 * 0.7 * 0.3
    assert witnesses[frozenset("c")] == pytest.approx((0.084, 0.105))


def test_equivalence_with_isolated_eta(fig1):
    p = PrAAF.from_aaf(fig1)
    with_eta = PrAAF({**p.p_args, "eta": 1}, p.p_atts)
    for sigma in COROLLARY:
        assert check_equivalence(p, with_eta, sigma=sigma).passed


def test_equivalence_requires_eta(fig2):
    with pytest.raises(DomainError):
        check_equivalence(fig2, fig2)


def test_equivalence_reports_one_sided_keys():
    left = PrAAF({"a": 0.5})
    right = PrAAF({"a": 1, "eta": 1})
    report = check_equivalence(left, right, sigma="grounded")
    assert not report.passed
    assert {d.extension for d in report.discrepancies} == {frozenset(), frozenset("a")}


def test_certificate_enforces_size_bound(fig2, fig3):
    from praaf.normal_form import NormalFormCertificate

    with pytest.raises(AssertionError):
        NormalFormCertificate(fig2, fig2, GroundTruth(), ())


# -- properties -----------------------------------------------------------------------------


eta_free = praafs(max_args=4, max_atts=5)


@given(eta_free, st.sampled_from(COROLLARY))
def test_transform_preserves_distribution(p, sigma):
    cert = to_normal_form(p)
    transformed = cert.transformed
    if not cert.mapping:
        transformed = PrAAF({**p.p_args, "eta": 1}, p.p_atts)
    assert check_equivalence(p, transformed, GroundTruth(), sigma, TOL).passed


@given(eta_free, st.sampled_from(COROLLARY))
def test_transform_against_oracle(p, sigma):
    # independent route: oracle distribution of the original vs engine on the transform
    cert = to_normal_form(p)
    if not cert.mapping:
        return
    expected = {k: v for k, v in oracle.distribution(p.p_args, p.p_atts, sigma).items()}
    got = strip_eta(extension_distribution(cert.transformed, sigma))
    assert set(got.entries) == set(expected)
    for k, v in expected.items():
        assert got[k] == pytest.approx(v, abs=TOL)


@given(eta_free)
def test_round_trip(p):
    cert = to_normal_form(p)
    assert cert.restore() == p
    if cert.mapping:
        assert from_normal_form(cert.transformed) == p


@given(eta_free)
def test_growth_and_shape(p):
    cert = to_normal_form(p)
    n = sum(1 for v in p.p_args.values() if v < 1)
    t = cert.transformed
    assert len(t.p_args) - len(p.p_args) == (1 if n else 0)
    assert len(t.p_atts) - len(p.p_atts) == n
    assert is_normal_form(t)
    assert not any(dst == "eta" for _, dst in t.p_atts)
    # same number of probabilistic elements, hence the same number of raw worlds
    assert len(probabilistic_elements(t)) == len(probabilistic_elements(p))
    assert len(list(enumerate_worlds(t))) == len(list(enumerate_worlds(p)))
    assert all(w.proper for w in enumerate_worlds(t))


@given(eta_free, st.sampled_from(COROLLARY))
def test_induced_cross_check(p, sigma):
    cert = to_normal_form(p)
    if cert.mapping:
        assert check_equivalence(p, cert.transformed, sigma=sigma, mode="induced").passed

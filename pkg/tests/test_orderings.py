import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from qfgcpe.entropy import dqfgcpe, qfgcpe
from qfgcpe.errors import DomainError
from qfgcpe.models import affine, make_model
from qfgcpe.orderings import (KINDS, LOG1P, SQUARE, THEOREMS, TRANSFORMS, OrderVerdict,
                              TheoremReport, check_order, check_theorem_implication,
                              classical_dispersive, classify_dqfgcpe_monotonicity, curated_pairs,
                              dispersion_implies_dynamic_order)

EXP1 = make_model("exponential", lam=1.0)
EXP2 = make_model("exponential", lam=2.0)
U1 = make_model("uniform", b=1.0)
U2 = make_model("uniform", b=2.0)


def _schema(name):
    return json.loads(resources.files("qfgcpe").joinpath("schemas", name).read_text())


def test_verdict_invariants():
    with pytest.raises(DomainError):
        OrderVerdict("fails")
    with pytest.raises(DomainError):
        OrderVerdict("maybe")
    with pytest.raises(DomainError):
        OrderVerdict("holds", grid_size=1)
    rec = OrderVerdict("fails", (0.5, 2.0, 1.0), 100).to_record()
    jsonschema.validate(rec, _schema("order_verdict.json"))
    assert rec["witness"] == {"v": 0.5, "lhs": 2.0, "rhs": 1.0}


def test_check_order_argument_checks():
    with pytest.raises(DomainError):
        check_order("LR", EXP1, EXP2)
    with pytest.raises(DomainError):
        check_order("HQ", EXP1, EXP2, grid=50)
    with pytest.raises(DomainError):
        check_order("QFGCPE", EXP1, EXP2)


@pytest.mark.parametrize("kind", KINDS)
def test_reflexive(kind):
    assert check_order(kind, EXP1, EXP1, eta=0.5).holds
    # a distinct but identical model goes through the numerical path
    assert check_order(kind, EXP1, make_model("exponential", lam=1.0), eta=0.5).relation != "fails"


def test_scaled_exponentials():
    assert check_order("disp", EXP2, EXP1).holds
    assert check_order("QFGCPE", EXP2, EXP1, eta=0.5).holds
    assert qfgcpe(EXP2, 0.5) == pytest.approx(0.8062, abs=5e-5)
    assert qfgcpe(EXP1, 0.5) == pytest.approx(1.6124, abs=5e-5)
    back = check_order("QFGCPE", EXP1, EXP2, eta=0.5)
    assert back.relation == "fails"


def test_exponential_dynamic_order_direction():
    # the larger rate has the smaller dynamic entropy at every v
    assert check_order("DQFGCPE", EXP2, EXP1, eta=0.5).holds
    v, lhs, rhs = check_order("DQFGCPE", EXP1, EXP2, eta=0.5).witness
    assert lhs == pytest.approx(2 * rhs, rel=1e-8)


def test_hazard_orders_for_scale_family():
    # H(v) = lambda and R(v) = lambda (1 - v) / v, so both grow with the rate
    assert check_order("HQ", EXP2, EXP1).holds
    assert check_order("RHQ", EXP1, EXP2).holds
    assert check_order("HQ", EXP1, EXP2).relation == "fails"


def test_failing_verdict_carries_a_true_witness():
    v, lhs, rhs = check_order("disp", EXP1, EXP2).witness
    assert lhs == pytest.approx(EXP1.Q(v)) and rhs == pytest.approx(EXP2.Q(v))
    assert lhs > rhs


def test_no_contradictory_entropy_verdicts():
    for x, y in curated_pairs():
        a = check_order("QFGCPE", x, y, eta=0.75)
        b = check_order("QFGCPE", y, x, eta=0.75)
        if a.relation == "fails" and b.relation == "fails":
            pytest.fail("both directions fail")
        if a.relation == "fails" or b.relation == "fails":
            assert abs(qfgcpe(x, 0.75) - qfgcpe(y, 0.75)) > 2e-10


def test_inconclusive_inside_tolerance_band():
    shifted = affine(U1, 1.0, 1e-13)
    assert check_order("disp", shifted, U1).relation == "inconclusive"


def test_classical_dispersive_order():
    assert classical_dispersive(U1, U2).holds
    assert classical_dispersive(U2, U1).relation == "fails"


def test_monotonicity_classification():
    assert classify_dqfgcpe_monotonicity(make_model("power", a=1, b=2), 0.5) == "IDQFGCPE"
    # uniform dynamic entropy is v b / 2^(eta+1), increasing in v
    v = np.linspace(0.02, 0.98, 50)
    vals = [dqfgcpe(U1, 1.0, x) for x in v]
    assert np.allclose(vals, v / 4, rtol=1e-8)
    assert classify_dqfgcpe_monotonicity(U1, 1.0) == "IDQFGCPE"


def test_monotonicity_classification_ignores_shift():
    for m in (U1, EXP1):
        assert (classify_dqfgcpe_monotonicity(affine(m, 1.0, 3.0), 0.75)
                == classify_dqfgcpe_monotonicity(m, 0.75))


def test_monotonicity_grid_checks():
    with pytest.raises(DomainError):
        classify_dqfgcpe_monotonicity(U1, 0.5, np.linspace(0.1, 0.9, 10))
    with pytest.raises(DomainError):
        classify_dqfgcpe_monotonicity(U1, 0.5, np.linspace(0.0, 0.9, 60))


def test_transforms():
    assert set(TRANSFORMS) == {"x^2", "exp(x)-1", "log(1+x)", "sqrt(1+x)"}
    x = np.linspace(0.1, 3, 20)
    for t in TRANSFORMS.values():
        assert np.all(np.diff(t.psi(x)) > 0)
        h = 1e-6
        assert np.allclose(t.dpsi(x), (t.psi(x + h) - t.psi(x - h)) / (2 * h), rtol=1e-6)


def test_hazard_order_example():
    rep = check_theorem_implication("T2_2", EXP2, EXP1, eta=0.5)
    assert rep.hypothesis_holds and rep.conclusion_holds and rep.consistent
    jsonschema.validate(rep.to_record(), _schema("theorem_report.json"))


def test_dispersive_dynamic_example():
    rep = check_theorem_implication("T3_3", U1, U2, eta=0.75, v_grid=[0.25, 0.5, 0.75])
    assert rep.hypothesis_holds and rep.conclusion_holds
    for v in (0.25, 0.5, 0.75):
        assert dqfgcpe(U2, 0.75, v) == pytest.approx(2 * dqfgcpe(U1, 0.75, v), rel=1e-8)


def test_convex_transform_keeps_increasing_class():
    m = make_model("power", a=1, b=2)
    rep = check_theorem_implication("T3_2", m, eta=0.5, psi=SQUARE)
    assert rep.hypothesis_holds and rep.conclusion_holds


def test_theorem_argument_checks():
    with pytest.raises(DomainError):
        check_theorem_implication("T9_9", EXP1, EXP2)
    with pytest.raises(DomainError):
        check_theorem_implication("T3_4", EXP1, EXP2, psi=LOG1P)


def test_report_flags():
    assert TheoremReport("T2_2", False, None).consistent
    assert TheoremReport("T2_2", True, True).consistent
    assert TheoremReport("T2_2", True, False).falsified


def test_literal_quantile_reading_of_dispersion_is_too_weak():
    # Q_X <= Q_Y everywhere, yet Y is less spread out than X
    y = affine(U1, 0.5, 1.0)
    literal = dispersion_implies_dynamic_order(U1, y, 0.75, literal=True)
    assert literal.falsified
    classical = dispersion_implies_dynamic_order(U1, y, 0.75)
    assert not classical.hypothesis_holds


def _psis(which):
    return [SQUARE, LOG1P] if which in ("T2_3", "T3_2") else [SQUARE]


@pytest.mark.parametrize("pair", range(10))
def test_curated_pairs_have_no_falsifications(pair):
    x, y = curated_pairs()[pair]
    for which in THEOREMS:
        for psi in _psis(which):
            rep = check_theorem_implication(which, x, y, eta=0.75, psi=psi)
            assert rep.consistent, rep.to_record()


def test_curated_suite_is_not_vacuous():
    hyps = 0
    for x, y in curated_pairs():
        hyps += check_theorem_implication("T2_2", x, y, eta=0.75).hypothesis_holds
    assert len(curated_pairs()) == 10
    assert hyps >= 8

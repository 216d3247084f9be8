import json

from hypothesis import given, strategies as st

from gradedleibniz.algebra import AlgebraLaw, is_lie, leibniz_check, split_abelian_rank
from gradedleibniz.catalog import build_L_alpha_eps, build_thm_I12, by_name
from gradedleibniz.iso import change_of_basis
from gradedleibniz.nilpotent import characteristic_sequence
from gradedleibniz.reproduce import (EXPERIMENTS, _lalpha_change, adapted_type_I_change,
                                     alpha_prime_formula, certify_charseq, classify_point,
                                     reproduce_dim4, run_experiment)
from gradedleibniz.scalar import ZERO, Scalar
from gradedleibniz.templates import GRID, fit_to_template, make_template


def counterexample_law():
    """Six-dimensional law from the T_II_r(6,3) grid with alpha_1_6 free."""
    rules = [(2, 1, {3: 1}), (3, 1, {4: 1}), (4, 1, {5: 1}),
             (1, 2, {3: -1}), (1, 3, {4: -1}), (1, 4, {5: -1}), (1, 6, {5: -2}),
             (2, 3, {6: 1}), (3, 2, {6: -1}), (2, 4, {5: -1}), (4, 2, {5: -1}),
             (3, 3, {5: 1})]
    return AlgebraLaw.from_rules(6, rules, name="typeII-6-3")


def test_counterexample_law_properties():
    law = counterexample_law()
    assert leibniz_check(law).passed
    assert not is_lie(law) and split_abelian_rank(law) == 0
    assert characteristic_sequence(law)[0] == (4, 1, 1)
    assert certify_charseq(law, 3)
    assert classify_point(law, 6)[0] == "counterexample"


def test_classify_point_classes():
    assert classify_point(by_name("L(7,3)"), 7)[0] == "lie"
    assert classify_point(by_name("NF(4)+C2"), 6)[0] == "split"
    assert classify_point(build_thm_I12(6, 1), 6)[0] == "type_I"


def test_adapted_change_gives_type_I_shape():
    law = build_thm_I12(7, 2)
    x = classify_point(law, 7)[1].witness
    P = adapted_type_I_change(law, x)
    moved = change_of_basis(law, P)
    for i in range(4):
        assert moved.product(i, 0) == {i + 1: Scalar(1)}


nonzero = [g for g in GRID if g]


@given(st.sampled_from(GRID), st.sampled_from(nonzero), st.sampled_from(GRID),
       st.sampled_from(nonzero))
def test_alpha_prime_formula_matches_basis_change(alpha, a1, a2, b2):
    law = build_L_alpha_eps(alpha, 1)
    got = _lalpha_change(law, a1, a2, ZERO, b2)
    D = (a1 + a2 * alpha) ** 2 + a2 * a2
    if got is None or not D:
        return
    P, ap = got
    assert ap == alpha_prime_formula(alpha, a1, a2, b2)
    fit = fit_to_template(change_of_basis(law, P), make_template("T_Lalpha5"))
    assert fit is not None and fit["alpha"] == ap


def test_dim4_report_shape():
    rep = reproduce_dim4()
    assert rep.ok
    doc = json.loads(json.dumps(rep.to_json()))
    assert doc["experiment"] == "dim4" and all(c["ok"] for c in doc["checks"])


def test_experiment_registry():
    assert set(EXPERIMENTS) == {"dim4", "dim5", "thmI12", "typeII", "theorem1"}
    rep = run_experiment("theorem1", n_range=[5])
    assert rep.ok

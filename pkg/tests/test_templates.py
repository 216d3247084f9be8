import random

import pytest
from hypothesis import given, strategies as st

from gradedleibniz.algebra import leibniz_check
from gradedleibniz.catalog import build_thm_I12, split_filiform
from gradedleibniz.iso import BasisChange, verify_isomorphism
from gradedleibniz.poly import var
from gradedleibniz.scalar import ZERO, Scalar
from gradedleibniz.templates import (GRID, TemplateError, TemplateTorus, fit_to_template,
                                     forced_zero_parameters, leibniz_residuals, make_template,
                                     rank_conditions, residual_table, restriction_set,
                                     solve_on_grid, template_names, verify_restrictions)


def test_grid_has_eleven_values():
    assert len(GRID) == 11 and len(set(GRID)) == 11


def test_unknown_template():
    with pytest.raises(TemplateError):
        make_template("T_nope")
    with pytest.raises(TemplateError):
        make_template("T_I11")
    with pytest.raises(TemplateError):
        restriction_set("T_nope")


def test_closed_templates_have_no_residuals():
    assert leibniz_residuals(make_template("T_dim4")) == []
    assert leibniz_residuals(make_template("T_Lalpha5")) == []


def test_residual_table_matches_numeric_identity():
    t = make_template("T_I12", 6)
    table = residual_table(t)
    rng = random.Random(3)
    for _ in range(5):
        pt = {p: rng.choice(GRID) for p in t.parameters}
        law = t.specialize(pt)
        numeric = {(i, j, k, c + 1) for i, j, k, r in leibniz_check(law).violations
                   for c, x in enumerate(r) if x}
        symbolic = {key for key, p in table.items() if p.evaluate(pt)}
        assert numeric == symbolic


def test_solver_points_are_leibniz():
    t = make_template("T_I11", 5)
    sol = solve_on_grid(t)
    assert sol.exhaustive and len(sol.points) == 121
    for p in sol.points[::10]:
        assert leibniz_check(t.specialize(p)).passed


def test_solver_budget_truncates():
    sol = solve_on_grid(make_template("T_II_1", 5), budget=5)
    assert not sol.exhaustive


def test_solver_fixed_values():
    t = make_template("T_I11", 5)
    sol = solve_on_grid(t, fixed={"alpha_1": 2})
    assert sol.points and all(p["alpha_1"] == 2 and p["alpha_2"] == 2 for p in sol.points)


def test_fit_to_template():
    t = make_template("T_I11", 5)
    pt = fit_to_template(split_filiform(5), t)
    assert pt is not None and t.specialize(pt) == split_filiform(5)
    assert fit_to_template(build_thm_I12(6, 1), t) is None


def test_rank_condition_forces_beta2():
    t = make_template("T_dim4")
    A = var("A")
    x = [1, 0, A, 0]
    assert "beta_2" in forced_zero_parameters(rank_conditions(t, x, 1))


def test_restrictions_I11():
    t = make_template("T_I11", 5)
    rep = verify_restrictions(t, restriction_set("T_I11", 5))
    assert rep.sufficiency is True and rep.necessity_ok()
    assert rep.to_json()["template"] == t.name


def test_torus_normalize_is_a_diagonal_isomorphism():
    t = make_template("T_II_1", 5)
    torus = TemplateTorus(t)
    sol = solve_on_grid(t)
    order = t.parameters
    for p in sol.points[:30]:
        q, diag = torus.normalize(p, order)
        P = BasisChange([[diag[i] if i == j else ZERO for j in range(t.dim)]
                         for i in range(t.dim)])
        assert verify_isomorphism(t.specialize(p), t.specialize(q), P)


def test_template_names_all_build():
    args = {"T_I11": (5,), "T_I12": (6,), "T_II_r": (7, 3), "T_II_1": (5,), "T_II_2": (5,)}
    for name in template_names():
        t = make_template(name, *args.get(name, ()))
        assert t.describe()


@given(st.lists(st.sampled_from(GRID), min_size=2, max_size=2))
def test_dim4_template_is_leibniz_everywhere(vals):
    t = make_template("T_dim4")
    pt = dict(zip(t.parameters, vals + [Scalar(0)]))
    assert leibniz_check(t.specialize(pt)).passed

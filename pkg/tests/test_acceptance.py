"""Acceptance criteria, one clause per test; a summary line per criterion is
printed at the end of the run (see ``conftest.pytest_terminal_summary``).

Expensive sweeps run once per module through fixtures.  Clauses that fail
for documented mathematical reasons are ``xfail(strict=True)``.
"""
import random
import time

import pytest

from oracles import jordan_partition_oracle, random_nilpotent, random_subspace_pair
from gradedleibniz.algebra import is_lie, leibniz_check, lower_central_series
from gradedleibniz.catalog import (build_dim4, build_filiform_typeI, build_Ln, build_mu,
                                   build_nullfiliform, build_Qn, build_thm_I12, by_name,
                                   catalog_names, classify_graded_2filiform, lie_families)
from gradedleibniz.nilpotent import characteristic_sequence, jordan_partition
from gradedleibniz.reproduce import (reproduce_dim4, reproduce_dim5, reproduce_theorem1,
                                     reproduce_thmI12, verify_typeII_lemmas)
from gradedleibniz.templates import make_template, restriction_set, verify_restrictions
from gradedleibniz.nilpotent import AlgebraType, filiform_profile

pytestmark = pytest.mark.slow

# -- criterion 1 ---------------------------------------------------------------


def test_c1_identity_suite(acceptance):
    t0 = time.perf_counter()
    names = catalog_names(12)
    failed = [nm for nm in names if not leibniz_check(by_name(nm)).passed]
    lie = [e.law for n in range(4, 13) for e in lie_families(n)]
    lie += [build_Ln(n) for n in range(3, 13)] + [build_Qn(n) for n in range(6, 13, 2)]
    not_lie = [law.name for law in lie if not is_lie(law)]
    secs = time.perf_counter() - t0
    ok = not failed and not not_lie and secs < 5
    acceptance(1, "identity suite", ok,
               f"{len(names)} laws, {len(lie)} Lie laws, {secs:.2f}s")
    assert not failed and not not_lie
    assert secs < 5

# -- criterion 2 ---------------------------------------------------------------


def _charseq_cases():
    yield "dim4", build_dim4(), (2, 1, 1)
    for k in range(1, 5):
        yield f"mu{k}", build_mu(k), (3, 1, 1)
    for n in range(6, 11):
        for v in (1, 2):
            yield f"thmI12({n},{v})", build_thm_I12(n, v), (n - 2, 1, 1)
    for n in range(2, 13):
        yield f"NF({n})", build_nullfiliform(n), (n,)
    for m in range(3, 13):
        yield f"F1({m})", build_filiform_typeI(m), (m - 1, 1)


def test_c2_characteristic_sequences(acceptance):
    wrong = {}
    count = 0
    for name, law, want in _charseq_cases():
        count += 1
        got = characteristic_sequence(law)[0]
        if got != want:
            wrong[name] = got
    acceptance(2, "characteristic sequences", not wrong,
               f"{count} laws" + (f", wrong: {wrong}" if wrong else ""))
    assert not wrong

# -- criterion 3 ---------------------------------------------------------------


def dims_pattern(dims, n):
    """``"n-1-i"``, ``("shifted", r)`` or None for ``dim L^i``, 2 <= i <= n-2."""
    d = {i: dims[i - 1] if i - 1 < len(dims) else 0 for i in range(2, n - 1)}
    if all(d[i] == n - 1 - i for i in d):
        return "n-1-i"
    for r in range(2, n - 1):
        if all(d[i] == (n - i if i <= r else n - 1 - i) for i in d):
            return ("shifted", r)
    return None


def test_c3_nilindex_lemma(acceptance):
    bad = []
    seen = 0
    for n in range(4, 13):
        for e in classify_graded_2filiform(n):
            seen += 1
            s = lower_central_series(e.law)
            assert characteristic_sequence(e.law)[0] == (n - 2, 1, 1), e.name
            if s.nilindex != n - 1 or dims_pattern(s.dims, n) is None:
                bad.append((e.name, s.dims))
    acceptance(3, "nilindex n-1 and dims pattern", not bad, f"{seen} laws")
    assert not bad


def test_c3_known_patterns():
    assert dims_pattern(lower_central_series(build_thm_I12(6, 1)).dims, 6) == ("shifted", 2)
    assert dims_pattern(lower_central_series(by_name("NF(4)+C2")).dims, 6) == "n-1-i"
    assert dims_pattern(lower_central_series(by_name("L(7,3)")).dims, 7) == ("shifted", 3)

# -- criterion 4 ---------------------------------------------------------------


def test_c4_theorem1(acceptance):
    rep = reproduce_theorem1(range(5, 10))
    acceptance(4, "r_s <= s for type-I catalog laws and T_I11/T_I12 grid points", rep.ok,
               f"{len(rep.checks)} checks, {rep.seconds:.1f}s")
    assert rep.ok, [c.name for c in rep.failures()]

# -- criterion 5 ---------------------------------------------------------------


def _c5_cases():
    for n in range(5, 10):
        yield "T_I11", (n,)
        if n >= 6:
            yield "T_I12", (n,)
        yield "T_II_1", (n,)
        yield "T_II_2", (n,)
        for r in range(3, n - 1):
            yield "T_II_r", (n, r)


C5_CASES = list(_c5_cases())


@pytest.fixture(scope="module")
def restriction_reports():
    out = {}
    for name, args in C5_CASES:
        t = make_template(name, *args)
        out[(name, args)] = verify_restrictions(t, restriction_set(name, *args), samples=100)
    return out


def _case_id(name, args):
    return f"{name}{args}".replace(" ", "")


def _sufficiency_params():
    for name, args in C5_CASES:
        marks = ()
        if name == "T_II_r":
            marks = pytest.mark.xfail(
                strict=True, reason="the r>2 lemma gives necessary equations only; "
                                    "no closed solution set to substitute")
        yield pytest.param(name, args, marks=marks, id=_case_id(name, args))


def _necessity_params():
    for name, args in C5_CASES:
        marks = ()
        if (name, args) == ("T_II_2", (5,)):
            marks = pytest.mark.xfail(
                strict=True, reason="alpha_5_2 = 0 follows from the type-II hypothesis, "
                                    "not from the Leibniz identity (0/100 by residual)")
        yield pytest.param(name, args, marks=marks, id=_case_id(name, args))


@pytest.mark.parametrize("name,args", list(_sufficiency_params()))
def test_c5_sufficiency(restriction_reports, acceptance, name, args):
    rep = restriction_reports[(name, args)]
    ok = rep.sufficiency is True
    acceptance(5, f"sufficiency {_case_id(name, args)}", ok,
               f"{rep.sufficiency}", expected_fail=name == "T_II_r")
    assert ok, rep.sufficiency_failures


@pytest.mark.parametrize("name,args", list(_necessity_params()))
def test_c5_necessity(restriction_reports, acceptance, name, args):
    rep = restriction_reports[(name, args)]
    ok = rep.necessity_ok(threshold=0.95, samples=100)
    vac = sum(e.vacuous for e in rep.equations)
    acceptance(5, f"necessity {_case_id(name, args)}", ok,
               f"weak={rep.weak_equations()} vacuous={vac}",
               expected_fail=(name, args) == ("T_II_2", (5,)))
    assert ok, rep.weak_equations()


def test_c5_n5_r2_explained_by_hypothesis(restriction_reports):
    """The residual-blind equation is fully accounted for by the lemma's hypothesis."""
    rep = restriction_reports[("T_II_2", (5,))]
    assert rep.necessity_ok(with_hypothesis=False) is False
    t = make_template("T_II_2", 5)

    def hypothesis(pt):
        prof = filiform_profile(t.specialize(pt))
        return prof.p == 2 and prof.algebra_type is AlgebraType.TYPE_II

    rep = verify_restrictions(t, restriction_set("T_II_2", 5), samples=100,
                              hypothesis=hypothesis)
    assert rep.necessity_ok(with_hypothesis=True)

# -- criterion 6 ---------------------------------------------------------------


def test_c6_dim4(acceptance):
    t0 = time.perf_counter()
    rep = reproduce_dim4()
    secs = time.perf_counter() - t0
    acceptance(6, "dim-4 grid reproduction", rep.ok and secs < 60,
               f"{len(rep.checks)} checks, {secs:.1f}s")
    assert rep.ok, [c.name for c in rep.failures()]
    assert secs < 60

# -- criterion 7 ---------------------------------------------------------------


@pytest.fixture(scope="module")
def dim5_report():
    return reproduce_dim5(samples=1000)


def test_c7_dim5(dim5_report, acceptance):
    rep = dim5_report
    case2 = rep.get("Case 2: 1 + alpha'^2 = 0 on every sampled admissible change")
    acceptance(7, "dim-5 reproduction", rep.ok,
               f"{len(rep.checks)} checks, case 2 sampled {case2.detail['sampled']}, "
               f"{rep.seconds:.1f}s")
    assert rep.ok, [c.name for c in rep.failures()]
    assert case2.detail["sampled"] >= 1000


def test_c7_separations(dim5_report):
    lann = dim5_report.get("reduced left annihilator: 2 for eps=0, 1 for eps=1")
    assert lann.ok
    sep = dim5_report.get("mu1 and mu2 differ in the invariant battery")
    assert sep.ok and sep.detail["entries"]

# -- criterion 8 ---------------------------------------------------------------


def test_c8_theorem_I12(acceptance):
    rep = reproduce_thmI12(range(6, 10))
    acceptance(8, "T_I12 points land on variant 1 or 2; minor contains A*gamma_(n-1)",
               rep.ok, f"{len(rep.checks)} checks, {rep.seconds:.1f}s")
    assert rep.ok, [c.name for c in rep.failures()]

# -- criterion 9 ---------------------------------------------------------------

TYPE_II_CASES = [(n, r) for n in range(5, 9) for r in [1, 2] + list(range(3, n - 1))]
KNOWN_COUNTEREXAMPLES = {(6, 3), (8, 5)}


@pytest.fixture(scope="module")
def typeII_report():
    return verify_typeII_lemmas(range(5, 9))


def _typeII_params():
    for n, r in TYPE_II_CASES:
        marks = ()
        if (n, r) in KNOWN_COUNTEREXAMPLES:
            marks = pytest.mark.xfail(
                strict=True, reason="grid points with alpha_1_n free are type-II 2-filiform, "
                                    "neither Lie nor split (see ledger)")
        yield pytest.param(n, r, marks=marks, id=f"n{n}-r{r}")


@pytest.mark.parametrize("n,r", list(_typeII_params()))
def test_c9_type_II(typeII_report, acceptance, n, r):
    label = f"n={n} r={r}"
    data = typeII_report.data[label]
    check = next(c for c in typeII_report.checks if c.name.startswith(label + ":"))
    acceptance(9, label, check.ok, f"{data['classes']} notes={data['notes']}",
               expected_fail=(n, r) in KNOWN_COUNTEREXAMPLES)
    assert data["exhaustive"]
    assert check.ok, data["classes"]


def test_c9_counterexamples_are_certified(typeII_report):
    for n, r in KNOWN_COUNTEREXAMPLES:
        data = typeII_report.data[f"n={n} r={r}"]
        assert data["certified_counterexamples"] >= 1


def test_c9_r1_splits_use_displayed_change(typeII_report):
    for n in range(5, 9):
        data = typeII_report.data[f"n={n} r=1"]
        assert data["notes"].get("displayed_change_splits", 0) == data["classes"].get("split", 0)

# -- criterion 10 --------------------------------------------------------------


def test_c10_oracles(acceptance):
    rng = random.Random(20060213)
    jordan_bad = 0
    for k in range(50):
        M, part = random_nilpotent(rng, rng.randint(1, 8), gaussian=bool(k % 2))
        if not (jordan_partition(M) == jordan_partition_oracle(M) == part):
            jordan_bad += 1
    grass_bad = 0
    for _ in range(100):
        A, B, da, db, dsum, dint = random_subspace_pair(rng, rng.randint(1, 7))
        s, i = (A + B).dim, A.intersect(B).dim
        if s + i != A.dim + B.dim or (A.dim, B.dim, s, i) != (da, db, dsum, dint):
            grass_bad += 1
    acceptance(10, "Jordan oracle (50) and Grassmann identity (100)",
               not jordan_bad and not grass_bad,
               f"jordan mismatches {jordan_bad}, grassmann mismatches {grass_bad}")
    assert jordan_bad == 0 and grass_bad == 0

"""Parameterized multiplication tables and their Leibniz constraints.

A :class:`ParamLaw` is a law whose structure constants are polynomials in
named parameters.  From it we get the symbolic Leibniz residuals, rank
conditions on right multiplications, and grid solutions.  A
:class:`RestrictionSet` records a list of polynomial equations claimed to
characterise the Leibniz points of a template, and
:func:`verify_restrictions` tests that claim in both directions.

Parameter names are plain ASCII: ``alpha_3`` is alpha_3, ``alpha_2_5`` is
alpha_{2,5}, ``gamma_1`` is gamma_1, and ``A`` is the free scalar of a rank
condition.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import AlgebraLaw
from .linalg import rank as matrix_rank
from .poly import Poly, const, natural_key, var
from .scalar import I, ONE, ZERO, Scalar, as_scalar

__all__ = [
    "ParamLaw", "RestrictionSet", "RestrictionReport", "EquationOutcome",
    "TemplateError", "GRID", "make_template", "template_names",
    "leibniz_residuals", "residual_table", "verify_restrictions",
    "rank_conditions", "forced_zero_parameters", "restriction_set",
    "GridSolution", "solve_on_grid", "fit_to_template", "TemplateTorus",
]

#: default parameter grid {0, +-1, +-2, +-1/2, +-i, 1+-i}
GRID: tuple[Scalar, ...] = tuple(as_scalar(v) for v in (
    0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), I, -I, 1 + I, 1 - I))


class TemplateError(ValueError):
    pass


# --------------------------------------------------------------------------
# parameterized laws
# --------------------------------------------------------------------------

class ParamLaw:
    """Structure constants with polynomial entries.

    ``products[(i, j)]`` (0-based) is ``{k: Poly}``.  ``notes`` collects
    remarks made while building the table, e.g. products skipped because
    their target index leaves the basis.
    """

    def __init__(self, dim: int, products: Mapping, labels=None, name=None,
                 notes: Iterable[str] = ()):
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple(f"e{k + 1}" for k in range(dim))
        self.name = name
        self.notes = list(notes)
        clean = {}
        for key, vec in products.items():
            v = {k: Poly.coerce(c) for k, c in vec.items()}
            v = {k: c for k, c in v.items() if c}
            if v:
                clean[key] = v
        self.products = clean

    @classmethod
    def from_rules(cls, dim, rules, name=None, notes=()):
        """``rules`` are 1-based ``(i, j, {k: coefficient})``."""
        acc: dict = {}
        for i, j, vec in rules:
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise TemplateError(f"product ({i},{j}) outside a {dim}-dimensional basis")
            slot = acc.setdefault((i - 1, j - 1), {})
            for k, c in vec.items():
                if not 1 <= k <= dim:
                    raise TemplateError(f"[e{i},e{j}] lands on e{k}, outside the basis")
                slot[k - 1] = slot.get(k - 1, Poly()) + Poly.coerce(c)
        return cls(dim, acc, name=name, notes=notes)

    @property
    def parameters(self) -> tuple[str, ...]:
        names = {v for vec in self.products.values() for p in vec.values()
                 for v in p.variables}
        return tuple(sorted(names, key=natural_key))

    def substitute(self, mapping: Mapping[str, object]) -> "ParamLaw":
        prods = {key: {k: p.subs(mapping) for k, p in vec.items()}
                 for key, vec in self.products.items()}
        return ParamLaw(self.dim, prods, self.labels, self.name, self.notes)

    def specialize(self, point: Mapping[str, object], name=None) -> AlgebraLaw:
        """The numeric law at a point assigning every parameter."""
        prods = {key: {k: p.evaluate(point) for k, p in vec.items()}
                 for key, vec in self.products.items()}
        return AlgebraLaw(self.dim, prods, self.labels, name or self.name)

    def product(self, i, j) -> dict:
        return self.products.get((i, j), {})

    def bracket(self, x: Sequence[Poly], y: Sequence[Poly]) -> list[Poly]:
        out = [Poly() for _ in range(self.dim)]
        for (i, j), vec in self.products.items():
            c = x[i] * y[j]
            if c:
                for k, p in vec.items():
                    out[k] = out[k] + c * p
        return out

    def right_mult_matrix(self, x: Sequence) -> list[list[Poly]]:
        """Matrix of ``z -> [z, x]``; column k is ``[e_k, x]``."""
        x = [Poly.coerce(c) for c in x]
        cols = []
        for kk in range(self.dim):
            ek = [Poly.coerce(1 if t == kk else 0) for t in range(self.dim)]
            cols.append(self.bracket(ek, x))
        return [[cols[c][r] for c in range(self.dim)] for r in range(self.dim)]

    def describe(self) -> list[str]:
        lines = []
        for (i, j), vec in sorted(self.products.items()):
            rhs = " + ".join(f"({p})*{self.labels[k]}" if not (p == 1) else self.labels[k]
                             for k, p in sorted(vec.items()))
            lines.append(f"[{self.labels[i]},{self.labels[j]}] = {rhs}")
        return lines

    def __repr__(self):
        return f"ParamLaw({self.name or ''}, dim={self.dim}, params={len(self.parameters)})"


def _a(*idx) -> Poly:
    return var("alpha_" + "_".join(str(i) for i in idx))


def _b(i) -> Poly:
    return var(f"beta_{i}")


def _g(i) -> Poly:
    return var(f"gamma_{i}")


def _chain_rules(first: int, last: int):
    return [(i, 1, {i + 1: 1}) for i in range(first, last + 1)]


def _template_I11(n: int) -> ParamLaw:
    if n < 5:
        raise TemplateError("T_I11 needs n >= 5")
    r = _chain_rules(1, n - 3)
    r += [(i, n - 1, {i + 1: _a(i)}) for i in range(1, n - 2)]
    r += [(n - 1, n - 1, {2: _a(n - 1)}), (n, n - 1, {2: _a(n)})]
    r += [(i, n, {i + 1: _b(i)}) for i in range(1, n - 2)]
    r += [(n - 1, n, {2: _b(n - 1)}), (n, n, {2: _b(n)})]
    return ParamLaw.from_rules(n, r, name=f"T_I11({n})")


def _template_I12(n: int) -> ParamLaw:
    if n < 6:
        raise TemplateError("T_I12 needs n >= 6")
    r = _chain_rules(1, n - 3)
    r += [(1, n - 1, {2: _a(1), n: _g(1)})]
    r += [(i, n - 1, {i + 1: _a(i)}) for i in range(2, n - 2)]
    r += [(n - 1, n - 1, {2: _a(n - 1), n: _g(n - 1)}), (n, n - 1, {3: _a(n)})]
    r += [(i, n, {i + 2: _b(i)}) for i in range(1, n - 3)]
    r += [(n - 1, n, {3: _b(n - 1)}), (n, n, {4: _b(n)})]
    return ParamLaw.from_rules(n, r, name=f"T_I12({n})")


def _type_II_common(n: int, r: int, rules: list, notes: list):
    """Products [e_i,e_j] = alpha_{i,j} e_{i+j-1} for 2 <= i,j <= n-2, i+j <= n."""
    for i in range(2, n - 1):
        for j in range(2, n - 1):
            if i + j > n:
                continue
            if r >= 2 and i + j == r + 2:
                rules.append((i, j, {r + 1: _a(i, j), n: _g(i)}))
            else:
                rules.append((i, j, {i + j - 1: _a(i, j)}))


def _template_II_r(n: int, r: int) -> ParamLaw:
    if n < 5 or not 2 < r <= n - 2:
        raise TemplateError("T_II_r needs n >= 5 and 2 < r <= n-2")
    notes = []
    rules = _chain_rules(2, n - 2)
    for i in range(2, n - 1):
        if i == r:
            rules.append((1, r, {r + 1: _a(1, r), n: _g(1)}))
        else:
            rules.append((1, i, {i + 1: _a(1, i)}))
    if r + 2 <= n - 1:
        rules.append((1, n, {r + 2: _a(1, n)}))
    else:
        notes.append(f"[e1,e{n}] = alpha_1_{n} e{r + 2} skipped: e{r + 2} is not a chain vector")
    _type_II_common(n, r, rules, notes)
    for i in range(2, n - r):
        rules.append((n, i, {i + r: _a(n, i)}))
        rules.append((i, n, {i + r: _a(i, n)}))
    if 2 * r <= n - 2:
        rules.append((n, n, {2 * r + 1: _a(n, n)}))
    return ParamLaw.from_rules(n, rules, name=f"T_II_r({n},{r})", notes=notes)


def _template_II_1(n: int) -> ParamLaw:
    if n < 5:
        raise TemplateError("T_II_1 needs n >= 5")
    rules = _chain_rules(2, n - 2)
    rules += [(1, i, {i + 1: _a(1, i)}) for i in range(2, n - 1)]
    rules.append((1, n, {3: _a(1, n)}))
    _type_II_common(n, 1, rules, [])
    for i in range(2, n - 1):
        rules.append((n, i, {i + 1: _a(n, i)}))
        rules.append((i, n, {i + 1: _a(i, n)}))
    rules.append((n, n, {3: _a(n, n)}))
    return ParamLaw.from_rules(n, rules, name=f"T_II_1({n})")


def _template_II_2(n: int) -> ParamLaw:
    if n < 5:
        raise TemplateError("T_II_2 needs n >= 5")
    notes = []
    rules = _chain_rules(2, n - 2)
    rules.append((1, 2, {3: _a(1, 2), n: _g(1)}))
    rules += [(1, i, {i + 1: _a(1, i)}) for i in range(3, n - 1)]
    if 4 <= n - 1:
        rules.append((1, n, {4: _a(1, n)}))
    _type_II_common(n, 2, rules, notes)
    for i in range(2, n - 2):
        rules.append((n, i, {i + 2: _a(n, i)}))
        rules.append((i, n, {i + 2: _a(i, n)}))
    if 5 <= n - 1:
        rules.append((n, n, {5: _a(n, n)}))
    else:
        notes.append(f"[e{n},e{n}] = alpha_{n}_{n} e5 skipped: e5 is not a chain vector")
    return ParamLaw.from_rules(n, rules, name=f"T_II_2({n})", notes=notes)


def _template_Lalpha5() -> ParamLaw:
    al, ga = var("alpha"), var("gamma")
    rules = _chain_rules(1, 2) + [
        (1, 4, {2: al, 5: 1}), (2, 4, {3: al}), (5, 4, {3: ga})]
    return ParamLaw.from_rules(5, rules, name="T_Lalpha5")


def _template_dim4() -> ParamLaw:
    rules = [(1, 1, {2: 1}), (1, 3, {2: _a(1), 4: _b(1)}), (3, 3, {4: _b(2)})]
    return ParamLaw.from_rules(4, rules, name="T_dim4")


_TEMPLATES: dict[str, Callable[..., ParamLaw]] = {
    "T_I11": _template_I11, "T_I12": _template_I12, "T_II_r": _template_II_r,
    "T_II_1": _template_II_1, "T_II_2": _template_II_2,
    "T_Lalpha5": _template_Lalpha5, "T_dim4": _template_dim4,
}


def template_names() -> tuple[str, ...]:
    return tuple(_TEMPLATES)


def make_template(name: str, *args: int) -> ParamLaw:
    """``make_template("T_II_r", 7, 3)`` etc."""
    try:
        build = _TEMPLATES[name]
    except KeyError:
        raise TemplateError(f"unknown template {name!r}; known: {', '.join(_TEMPLATES)}") from None
    try:
        return build(*args)
    except TypeError as exc:
        raise TemplateError(f"{name}: bad arguments {args}: {exc}") from None


# --------------------------------------------------------------------------
# residuals
# --------------------------------------------------------------------------

def _apply(t: ParamLaw, vec: Mapping[int, Poly], j: int, left: bool) -> dict[int, Poly]:
    """[vec, e_j] if left else [e_j, vec]."""
    out: dict[int, Poly] = {}
    for c, coef in vec.items():
        prod = t.product(c, j) if left else t.product(j, c)
        for k, p in prod.items():
            out[k] = out.get(k, Poly()) + coef * p
    return out


def residual_table(t: ParamLaw) -> dict[tuple[int, int, int, int], Poly]:
    """Nonzero components of the Leibniz residual, keyed 1-based ``(i,j,k,component)``.

    The residual of ``(i,j,k)`` is [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j].
    """
    n = t.dim
    out = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc: dict[int, Poly] = {}
                for part, sign in ((_apply(t, t.product(j, k), i, left=False), 1),
                                   (_apply(t, t.product(i, j), k, left=True), -1),
                                   (_apply(t, t.product(i, k), j, left=True), 1)):
                    for c, p in part.items():
                        acc[c] = acc.get(c, Poly()) + (p if sign > 0 else -p)
                for c, p in acc.items():
                    if p:
                        out[(i + 1, j + 1, k + 1, c + 1)] = p
    return out


def leibniz_residuals(t: ParamLaw) -> list[Poly]:
    """Distinct residual polynomials, deduplicated up to a nonzero scalar."""
    seen = {}
    for p in residual_table(t).values():
        m = p.monic()
        if m not in seen:
            seen[m] = p
    return list(seen.values())


# --------------------------------------------------------------------------
# rank conditions
# --------------------------------------------------------------------------

def _minor(M, rows: tuple, cols: tuple, memo: dict) -> Poly:
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if len(rows) == 1:
        val = M[rows[0]][cols[0]]
    else:
        r0, rest = rows[0], rows[1:]
        val = Poly()
        for pos, c in enumerate(cols):
            entry = M[r0][c]
            if not entry:
                continue
            sub = _minor(M, rest, cols[:pos] + cols[pos + 1:], memo)
            if sub:
                val = val + (entry * sub if pos % 2 == 0 else -(entry * sub))
    memo[key] = val
    return val


def rank_conditions(t: ParamLaw, x_expr: Sequence, bound: int) -> list[Poly]:
    """Nonzero minors of size ``bound+1`` of ``R_x`` (deduplicated).

    ``rank R_x <= bound`` for every value of the free scalars in ``x_expr``
    iff each returned polynomial vanishes identically in those scalars.
    """
    M = t.right_mult_matrix(x_expr)
    n = t.dim
    size = bound + 1
    if size > n:
        return []
    live_rows = [r for r in range(n) if any(M[r][c] for c in range(n))]
    live_cols = [c for c in range(n) if any(M[r][c] for r in range(n))]
    memo: dict = {}
    found = {}
    for rows in itertools.combinations(live_rows, size):
        for cols in itertools.combinations(live_cols, size):
            m = _minor(M, rows, cols, memo)
            if m:
                found.setdefault(m.monic(), m)
    return list(found.values())


def forced_zero_parameters(minors: Iterable[Poly], free: Sequence[str] = ("A",)) -> set[str]:
    """Parameters that must vanish for every minor to vanish for all ``free``.

    Each minor is expanded as a polynomial in the free scalars; any
    coefficient that is a monomial in a single parameter forces it to 0.
    """
    forced = set()
    for m in minors:
        coeffs = [m]
        for f in free:
            coeffs = [c for p in coeffs for c in p.coefficients_in(f).values()]
        for c in coeffs:
            if len(c.terms) == 1:
                (mono, _), = c.terms.items()
                names = {v for v, _ in mono}
                if len(names) == 1:
                    forced |= names
    return forced


# --------------------------------------------------------------------------
# restriction sets and their verification
# --------------------------------------------------------------------------

@dataclass
class RestrictionSet:
    """Polynomial equations claimed for a template.

    ``side_conditions`` are tuples of polynomials that may not all vanish.
    ``solution`` maps parameters to polynomials in the remaining free
    parameters and parameterizes the solution set (``None`` when the set is
    only claimed necessary).  ``base_points`` optionally supplies Leibniz
    points for the necessity sampling when no solution map is available.
    """
    name: str
    equations: list[tuple[str, Poly]]
    side_conditions: list[tuple[Poly, ...]] = field(default_factory=list)
    solution: dict[str, Poly] | None = None
    base_points: Callable[[random.Random], dict] | None = None
    notes: list[str] = field(default_factory=list)

    def violated(self, point) -> list[int]:
        return [k for k, (_, eq) in enumerate(self.equations) if eq.evaluate(point)]

    def sides_hold(self, point) -> bool:
        return all(any(p.evaluate(point) for p in group) for group in self.side_conditions)


@dataclass
class EquationOutcome:
    """Necessity tally for one equation.

    ``detected`` counts points where some residual is nonzero; ``explained``
    additionally counts Leibniz points that fall outside the lemma's
    hypothesis (only when a hypothesis predicate was supplied).  ``vacuous``
    marks equations for which no admissible Leibniz point exists to perturb.
    """
    label: str
    redundant: bool
    samples: int
    detected: int
    explained: int | None = None
    vacuous: bool = False

    @property
    def rate(self) -> float:
        return self.detected / self.samples if self.samples else float("nan")


@dataclass
class RestrictionReport:
    template: str
    restriction: str
    sufficiency: bool | None
    sufficiency_failures: list[str]
    equations: list[EquationOutcome]
    notes: list[str] = field(default_factory=list)

    def necessity_ok(self, threshold: float = 0.95, samples: int = 100,
                     with_hypothesis: bool = False) -> bool:
        """Every non-redundant, non-vacuous equation detected often enough."""
        for e in self.equations:
            if e.redundant or e.vacuous:
                continue
            hits = e.explained if with_hypothesis and e.explained is not None else e.detected
            if e.samples < samples or hits < threshold * e.samples:
                return False
        return True

    def weak_equations(self, threshold: float = 0.95) -> list[str]:
        return [e.label for e in self.equations
                if not (e.redundant or e.vacuous) and (not e.samples or e.rate < threshold)]

    def to_json(self):
        return {
            "template": self.template, "restriction": self.restriction,
            "sufficiency": self.sufficiency,
            "sufficiency_failures": self.sufficiency_failures,
            "equations": [{"equation": e.label, "redundant": e.redundant,
                           "vacuous": e.vacuous, "samples": e.samples,
                           "detected": e.detected, "explained": e.explained}
                          for e in self.equations],
            "notes": self.notes,
        }


def _monomial_vector(polys: Sequence[Poly]):
    monos = sorted({m for p in polys for m in p.terms}, key=repr)
    return monos, [[p.terms.get(m, ZERO) for m in monos] for p in polys]


def _is_redundant(k: int, eqs: Sequence[Poly]) -> bool:
    """True if eqs[k] is a constant linear combination of the other equations."""
    others = [e for t, e in enumerate(eqs) if t != k]
    if not others:
        return False
    _, rows = _monomial_vector(others + [eqs[k]])
    return matrix_rank(rows[:-1]) == matrix_rank(rows)


def _link_groups(rs: RestrictionSet) -> dict[str, tuple[str, ...]]:
    """Parameters tied together by equations of the form p - q = 0."""
    parent: dict[str, str] = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            a = parent[a]
        return a

    for _, eq in rs.equations:
        if len(eq.terms) == 2 and eq.degree() == 1 and not eq.constant_value():
            (m1, c1), (m2, c2) = eq.terms.items()
            if c1 == -c2:
                parent[find(m1[0][0])] = find(m2[0][0])
    groups: dict[str, list[str]] = {}
    for a in list(parent):
        groups.setdefault(find(a), []).append(a)
    return {a: tuple(g) for g in groups.values() for a in g}


def _solution_point(t: ParamLaw, rs: RestrictionSet, rng: random.Random, grid) -> dict:
    free = sorted({v for p in rs.solution.values() for v in p.variables}
                  | (set(t.parameters) - set(rs.solution)), key=natural_key)
    base = {v: (ZERO if rng.random() < 0.3 else rng.choice(grid[1:])) for v in free}
    point = dict(base)
    for name, p in rs.solution.items():
        point[name] = p.evaluate(base)
    return point


def verify_restrictions(t: ParamLaw, rs: RestrictionSet, samples: int = 100,
                        seed: int = 20060213, grid: Sequence[Scalar] = GRID,
                        max_attempts: int | None = None,
                        hypothesis: Callable[[dict], bool] | None = None,
                        solver_budget: int = 1_000_000) -> RestrictionReport:
    """Check a restriction set against the template's Leibniz residuals.

    Sufficiency: after substituting ``rs.solution`` every residual is the
    zero polynomial.  Necessity: for each equation, up to ``samples`` points
    that violate exactly that equation (all others and the side conditions
    holding) are produced by perturbing a Leibniz point; we count those at
    which some residual is nonzero.  Equations that are constant linear
    combinations of the others cannot be violated alone and are marked
    redundant.

    Base points come from ``rs.base_points``, else from ``rs.solution``,
    else from the grid solver.  If none exists the equations are marked
    vacuous.  ``hypothesis(point)`` (called on Leibniz points only) lets a
    violation count as explained when the point leaves the lemma's setting.
    """
    residuals = leibniz_residuals(t)
    failures = []
    sufficiency = None
    if rs.solution is not None:
        for p in residuals:
            s = p.subs(rs.solution)
            if s:
                failures.append(str(s))
        for label, eq in rs.equations:
            if eq.subs(rs.solution):
                failures.append(f"solution violates {label}")
        sufficiency = not failures
    rng = random.Random(seed)
    eqs = [e for _, e in rs.equations]
    groups = _link_groups(rs)
    params = t.parameters
    notes = list(rs.notes)
    pool: list[dict] | None = None

    def admissible(pt) -> bool:
        return rs.sides_hold(pt) and not rs.violated(pt)

    def base_point():
        nonlocal pool
        if rs.base_points is not None or rs.solution is not None:
            for _ in range(200):
                if rs.base_points is not None:
                    pt = rs.base_points(rng)
                else:
                    pt = _solution_point(t, rs, rng, grid)
                for v in params:
                    pt.setdefault(v, ZERO)
                if admissible(pt):
                    return pt
        if pool is None:
            sol = solve_on_grid(t, grid, budget=solver_budget, residuals=residuals,
                                side_conditions=rs.side_conditions)
            pool = [p for p in sol.points if admissible(p)]
            notes.append(f"base points from the grid solver: {len(pool)} admissible "
                         f"({'exhaustive' if sol.exhaustive else 'truncated'})")
        return dict(rng.choice(pool)) if pool else None

    outcomes = []
    attempts_cap = max_attempts or samples * 60
    for k, (label, eq) in enumerate(rs.equations):
        if _is_redundant(k, eqs):
            outcomes.append(EquationOutcome(label, True, 0, 0))
            continue
        found = detected = explained = 0
        vacuous = False
        names = eq.variables
        for _ in range(attempts_cap):
            if found >= samples:
                break
            pt = base_point()
            if pt is None:
                vacuous = True
                break
            v = rng.choice(names)
            group = groups.get(v, (v,)) if rng.random() < 0.5 else (v,)
            new = rng.choice(grid)
            if new == pt[v]:
                continue
            for g in group:
                pt[g] = new
            if rs.violated(pt) != [k] or not rs.sides_hold(pt):
                continue
            found += 1
            if any(p.evaluate(pt) for p in residuals):
                detected += 1
                explained += 1
            elif hypothesis is not None and not hypothesis(pt):
                explained += 1
        outcomes.append(EquationOutcome(label, False, found, detected,
                                        explained if hypothesis is not None else None,
                                        vacuous))
    return RestrictionReport(t.name, rs.name, sufficiency, failures, outcomes, notes)


# --------------------------------------------------------------------------
# the restriction sets
# --------------------------------------------------------------------------

def _eq(label, p) -> tuple[str, Poly]:
    return (label, p)


def _rs_I11(n: int) -> RestrictionSet:
    eqs = [_eq(f"alpha_{i} = alpha_1", _a(i) - _a(1)) for i in range(2, n - 2)]
    eqs += [_eq(f"beta_{i} = beta_1", _b(i) - _b(1)) for i in range(2, n - 2)]
    eqs += [_eq(f"alpha_{n - 1} = 0", _a(n - 1)), _eq(f"alpha_{n} = 0", _a(n)),
            _eq(f"beta_{n - 1} = 0", _b(n - 1)), _eq(f"beta_{n} = 0", _b(n))]
    sol = {f"alpha_{i}": _a(1) for i in range(2, n - 2)}
    sol.update({f"beta_{i}": _b(1) for i in range(2, n - 2)})
    sol.update({f"alpha_{n - 1}": const(0), f"alpha_{n}": const(0),
                f"beta_{n - 1}": const(0), f"beta_{n}": const(0)})
    return RestrictionSet(f"I11({n})", eqs, [], sol)


def _rs_I12(n: int) -> RestrictionSet:
    g1, gl = _g(1), _g(n - 1)
    eqs = [_eq(f"alpha_{i} = alpha_1", _a(i) - _a(1)) for i in range(2, n - 2)]
    for i in range(1, n - 3):
        eqs.append(_eq(f"beta_{i}*gamma_1 = 0", _b(i) * g1))
        eqs.append(_eq(f"beta_{i}*gamma_{n - 1} = 0", _b(i) * gl))
    eqs.append(_eq(f"gamma_1*beta_{n - 1} + alpha_{n - 1} = 0", g1 * _b(n - 1) + _a(n - 1)))
    eqs += [_eq(f"alpha_{n - 1} = 0", _a(n - 1)), _eq(f"alpha_{n} = 0", _a(n))]
    for i in (n - 1, n):
        for j in (1, n - 1):
            eqs.append(_eq(f"beta_{i}*gamma_{j} = 0", _b(i) * _g(j)))
    sol = {f"alpha_{i}": _a(1) for i in range(2, n - 2)}
    sol.update({f"beta_{i}": const(0) for i in list(range(1, n - 3)) + [n - 1, n]})
    sol.update({f"alpha_{n - 1}": const(0), f"alpha_{n}": const(0)})
    return RestrictionSet(f"I12({n})", eqs, [(g1, gl)], sol,
                          notes=["the solution map sets every beta to 0, which the "
                                 "side condition (gamma_1, gamma_{n-1}) != 0 forces"])


def _alpha_group_eqs(n: int, first: int) -> list:
    return [_eq(f"alpha_1_{i} = alpha_1_{first}", _a(1, i) - _a(1, first))
            for i in range(first + 1, n - 1)]


def _rs_II_r(n: int, r: int) -> RestrictionSet:
    """Restrictions stated for the r > 2 family; claimed necessary only."""
    eqs = _alpha_group_eqs(n, 2)
    eqs.append(_eq("gamma_1 = 0", _g(1)))
    eqs.append(_eq("alpha(alpha+1) = 0", _a(1, 2) * (_a(1, 2) + 1)))
    if r <= n - 4:
        eqs.append(_eq(f"alpha_1_{n} = 0", _a(1, n)))
    if 2 * r <= n - 3:
        eqs.append(_eq(f"alpha_{n}_{n} = 0", _a(n, n)))
    t = _template_II_r(n, r)
    sides = [tuple(_g(i) for i in range(1, r + 1))]
    return RestrictionSet(f"II_r({n},{r})", eqs, sides, None,
                          base_points=_lie_base_points(t, n, r),
                          notes=["necessary conditions only: the Lie branch alpha=-1 keeps "
                                 "further Jacobi constraints on alpha_{i,j}"])


def _rs_II_1(n: int) -> RestrictionSet:
    """Complete restriction set of the r = 1 lemma, branch alpha = 0."""
    eqs = [_eq("alpha_1_2 = 0", _a(1, 2))] + _alpha_group_eqs(n, 2)
    eqs += [_eq(f"alpha_1_{n} = 0", _a(1, n)), _eq(f"alpha_{n}_{n} = 0", _a(n, n))]
    sol = {f"alpha_1_{i}": const(0) for i in range(2, n - 1)}
    sol.update({f"alpha_1_{n}": const(0), f"alpha_{n}_{n}": const(0)})
    for i in range(2, n - 1):
        for j in range(2, n - 1):
            if i + j > n:
                continue
            if j == 2:
                if i != 2:
                    eqs.append(_eq(f"alpha_{i}_2 = alpha_2_2", _a(i, 2) - _a(2, 2)))
                    sol[f"alpha_{i}_2"] = _a(2, 2)
            else:
                eqs.append(_eq(f"alpha_{i}_{j} = 0", _a(i, j)))
                sol[f"alpha_{i}_{j}"] = const(0)
    for i in range(2, n - 1):
        if i != 2:
            eqs.append(_eq(f"alpha_{i}_{n} = alpha_2_{n}", _a(i, n) - _a(2, n)))
            sol[f"alpha_{i}_{n}"] = _a(2, n)
        eqs.append(_eq(f"alpha_{n}_{i} = 0", _a(n, i)))
        sol[f"alpha_{n}_{i}"] = const(0)
    return RestrictionSet(f"II_1({n}), alpha=0", eqs, [], sol)


def _rs_II_2(n: int) -> RestrictionSet:
    """Complete restriction set of the r = 2 lemma, branch alpha = 0."""
    t = _template_II_2(n)
    params = set(t.parameters)
    eqs = [_eq("alpha_1_2 = 0", _a(1, 2))] + _alpha_group_eqs(n, 2)
    sol = {f"alpha_1_{i}": const(0) for i in range(2, n - 1)}
    for name in (f"alpha_1_{n}", f"alpha_{n}_{n}"):
        if name in params:
            eqs.append(_eq(f"{name} = 0", var(name)))
            sol[name] = const(0)
    for i in range(2, n - 1):
        for j in range(2, n - 1):
            if i + j > n:
                continue
            if j == 2:
                if i != 2:
                    eqs.append(_eq(f"alpha_{i}_2 = alpha_2_2", _a(i, 2) - _a(2, 2)))
                    sol[f"alpha_{i}_2"] = _a(2, 2)
            else:
                eqs.append(_eq(f"alpha_{i}_{j} = 0", _a(i, j)))
                sol[f"alpha_{i}_{j}"] = const(0)
    for i in range(2, n - 2):
        if i != 2:
            eqs.append(_eq(f"alpha_{i}_{n} = alpha_2_{n}", _a(i, n) - _a(2, n)))
            sol[f"alpha_{i}_{n}"] = _a(2, n)
        eqs.append(_eq(f"alpha_{n}_{i} = 0", _a(n, i)))
        sol[f"alpha_{n}_{i}"] = const(0)
    eqs.append(_eq(f"alpha_2_{n}*gamma_2 = 0", _a(2, n) * _g(2)))
    eqs.append(_eq(f"alpha_2_{n}*gamma_1 = 0", _a(2, n) * _g(1)))
    # (gamma_1, gamma_2) != 0 then forces alpha_n = 0
    for i in range(2, n - 2):
        sol[f"alpha_{i}_{n}"] = const(0)
    return RestrictionSet(f"II_2({n}), alpha=0", eqs, [(_g(1), _g(2))], sol,
                          notes=["alpha_n = 0 in the solution map is forced by the side "
                                 "condition (gamma_1, gamma_2) != 0"])


def _rs_dim4() -> RestrictionSet:
    return RestrictionSet("dim4", [], [(_b(1), _b(2))], {})


def _rs_Lalpha5() -> RestrictionSet:
    return RestrictionSet("Lalpha5", [], [], {})


def restriction_set(name: str, *args: int) -> RestrictionSet:
    table = {"T_I11": _rs_I11, "T_I12": _rs_I12, "T_II_r": _rs_II_r,
             "T_II_1": _rs_II_1, "T_II_2": _rs_II_2, "T_dim4": _rs_dim4,
             "T_Lalpha5": _rs_Lalpha5}
    if name not in table:
        raise TemplateError(f"no restriction set for {name!r}")
    return table[name](*args)


# --------------------------------------------------------------------------
# fitting numeric laws into templates
# --------------------------------------------------------------------------

def fit_to_template(law: AlgebraLaw, t: ParamLaw) -> dict | None:
    """Parameter values realizing ``law`` in ``t``, or None.

    Works for templates whose entries are constants or single parameters
    with coefficient one (every table in this module).
    """
    if law.dim != t.dim:
        return None
    point: dict[str, Scalar] = {}
    keys = set(law.products) | set(t.products)
    for key in keys:
        target = law.product(*key)
        slots = t.product(*key)
        for k in set(target) | set(slots):
            value = target.get(k, ZERO)
            p = slots.get(k)
            if p is None:
                if value:
                    return None
                continue
            if p.is_constant():
                if p.constant_value() != value:
                    return None
                continue
            (mono, c), = p.terms.items()
            if len(mono) != 1 or mono[0][1] != 1 or c != 1:
                raise TemplateError("fit_to_template needs single-parameter entries")
            name = mono[0][0]
            if name in point and point[name] != value:
                return None
            point[name] = value
    for name in t.parameters:
        point.setdefault(name, ZERO)
    return point


def _lie_base_points(t: ParamLaw, n: int, r: int):
    """Leibniz points of T_II_r: Lie families moved to the adapted basis.

    The change is e_1 = -X_0, e_{i+1} = X_i, e_n = Y, followed by a random
    graded diagonal rescaling e_1 -> a e_1, e_2 -> b e_2 (hence
    e_i -> b a^(i-2) e_i), e_n -> c e_n.
    """
    from .catalog import lie_families
    from .iso import BasisChange, change_of_basis

    laws = []
    for entry in lie_families(n):
        L = entry.law
        P = [[ZERO] * n for _ in range(n)]
        P[0][0] = -ONE
        for k in range(1, n):
            P[k][k] = ONE
        moved = change_of_basis(L, BasisChange(P))
        if fit_to_template(moved, t) is not None:
            laws.append(moved)
    if not laws:
        return None
    nonzero = [g for g in GRID if g]

    def draw(rng: random.Random):
        L = rng.choice(laws)
        a, b, c = (rng.choice(nonzero) for _ in range(3))
        diag = [a] + [b * a ** (i - 2) for i in range(2, n)] + [c]
        P = [[diag[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        return fit_to_template(change_of_basis(L, BasisChange(P)), t)

    return draw


# --------------------------------------------------------------------------
# grid solving with propagation
# --------------------------------------------------------------------------

@dataclass
class GridSolution:
    points: list[dict]
    nodes: int
    exhaustive: bool
    off_grid_forced: int = 0


class _Compiled:
    __slots__ = ("terms", "vars")

    def __init__(self, p: Poly, index: Mapping[str, int]):
        self.terms = [(c, tuple((index[v], e) for v, e in m)) for m, c in p.terms.items()]
        self.vars = tuple(sorted({index[v] for m in p.terms for v, _ in m}))


def _value(res: _Compiled, values: list) -> Scalar:
    total = ZERO
    for c, mono in res.terms:
        term = c
        for u, e in mono:
            term = term * values[u] ** e
        total = total + term
    return total


def _univariate(res: _Compiled, values: list, u: int) -> dict[int, Scalar]:
    coeffs: dict[int, Scalar] = {}
    for c, mono in res.terms:
        k = 0
        t = c
        for v, e in mono:
            if v == u:
                k = e
            else:
                t = t * values[v] ** e
        coeffs[k] = coeffs.get(k, ZERO) + t
    return {k: c for k, c in coeffs.items() if c}


def solve_on_grid(t: ParamLaw, grid: Sequence[Scalar] = GRID, budget: int = 100_000,
                  fixed: Mapping[str, object] | None = None,
                  residuals: Sequence[Poly] | None = None,
                  side_conditions: Sequence[Sequence[Poly]] = (),
                  seed: int | None = None) -> GridSolution:
    """All parameter points with every residual zero, branching over ``grid``.

    Depth-first search with propagation: a residual with one unassigned
    parameter of degree one forces its value (possibly off the grid); a
    higher-degree one restricts that parameter to its grid roots.  Branching
    picks the parameter with the smallest domain.  ``budget`` caps the node
    count; ``exhaustive`` is False when the cap was hit.  Branches on which
    a group of ``side_conditions`` vanishes entirely are pruned.  Values are
    tried in grid order, or in a per-node order shuffled by ``seed``.
    """
    fixed = {k: as_scalar(v) for k, v in (fixed or {}).items()}
    polys = residuals if residuals is not None else leibniz_residuals(t)
    if fixed:
        polys = [p.subs(fixed) for p in polys]
    names = [v for v in t.parameters if v not in fixed]
    index = {v: k for k, v in enumerate(names)}
    comp = []
    for p in polys:
        if not p:
            continue
        if p.is_constant():
            return GridSolution([], 0, True)
        comp.append(_Compiled(p, index))
    watch: list[list[int]] = [[] for _ in names]
    for r, c in enumerate(comp):
        for v in c.vars:
            watch[v].append(r)
    grid = [as_scalar(g) for g in grid]
    nv = len(names)
    sides = []
    for group in side_conditions:
        group = [Poly.coerce(p).subs(fixed) for p in group]
        if any(p.is_constant() and p for p in group):
            continue
        sides.append([_Compiled(p, index) for p in group if p])
    side_watch: list[list[int]] = [[] for _ in names]
    for r, group in enumerate(sides):
        for v in sorted({u for c in group for u in c.vars}):
            side_watch[v].append(r)
    rng = random.Random(seed) if seed is not None else None
    points: list[dict] = []
    stats = {"nodes": 0, "off": 0}
    truncated = False

    def side_dead(values, v) -> bool:
        for r in side_watch[v]:
            group = sides[r]
            if any(values[u] is None for c in group for u in c.vars):
                continue
            if not any(_value(c, values) for c in group):
                return True
        return False

    def propagate(values, domains, queue):
        while queue:
            v = queue.pop()
            if side_dead(values, v):
                return False
            for r in watch[v]:
                res = comp[r]
                free = [u for u in res.vars if values[u] is None]
                if not free:
                    if _value(res, values):
                        return False
                elif len(free) == 1:
                    u = free[0]
                    co = _univariate(res, values, u)
                    if not co:
                        continue
                    deg = max(co)
                    if deg == 0:
                        return False
                    if deg == 1 and set(co) <= {0, 1}:
                        val = -co.get(0, ZERO) / co[1]
                        if domains[u] is not None and val not in domains[u]:
                            return False
                        if val not in grid:
                            stats["off"] += 1
                        values[u] = val
                        queue.append(u)
                    else:
                        dom = domains[u] if domains[u] is not None else grid
                        keep = [g for g in dom
                                if not sum((c * g ** k for k, c in co.items()), ZERO)]
                        if not keep:
                            return False
                        if len(keep) == 1:
                            values[u] = keep[0]
                            queue.append(u)
                        domains[u] = keep
        return True

    def dfs(values, domains):
        nonlocal truncated
        stats["nodes"] += 1
        if stats["nodes"] > budget:
            truncated = True
            return
        unassigned = [u for u in range(nv) if values[u] is None]
        if not unassigned:
            pt = dict(fixed)
            pt.update({names[u]: values[u] for u in range(nv)})
            points.append(pt)
            return
        u = min(unassigned, key=lambda w: (len(domains[w]) if domains[w] is not None
                                           else len(grid) + 1, -len(watch[w]), w))
        choices = list(domains[u] if domains[u] is not None else grid)
        if rng is not None:
            rng.shuffle(choices)
        for g in choices:
            if truncated:
                return
            vals = list(values)
            doms = list(domains)
            vals[u] = g
            if propagate(vals, doms, [u]):
                dfs(vals, doms)

    if any(not group for group in sides):
        return GridSolution([], 0, True)
    values: list = [None] * nv
    domains: list = [None] * nv
    if propagate(values, domains, list(range(nv))):
        dfs(values, domains)
    return GridSolution(points, stats["nodes"], not truncated, stats["off"])


# --------------------------------------------------------------------------
# diagonal rescalings preserving a template
# --------------------------------------------------------------------------

class TemplateTorus:
    """Diagonal basis changes ``e_k -> s_k e_k`` that keep a template's shape.

    A parameter sitting in ``[e_i, e_j] = p e_k`` is multiplied by
    ``s_i s_j / s_k``; constant entries must be left unchanged, which cuts
    out a subtorus.  Its cocharacters (integer directions ``d`` with
    ``s_k = t^{d_k}``) are computed once; :meth:`normalize` uses them to
    scale a point to a canonical-ish representative of its orbit.
    """

    def __init__(self, t: ParamLaw):
        from .linalg import nullspace
        n = t.dim
        slots = []
        constants = []
        for (i, j), vec in t.products.items():
            for k, p in vec.items():
                chi = [0] * n
                chi[i] += 1
                chi[j] += 1
                chi[k] -= 1
                if p.is_constant():
                    constants.append(chi)
                else:
                    (mono, c), = p.terms.items()
                    slots.append((mono[0][0], chi))
        if constants:
            rows = tuple(tuple(as_scalar(x) for x in chi) for chi in constants)
            basis = nullspace(rows, n)
        else:
            basis = tuple(tuple(ONE if a == b else ZERO for a in range(n)) for b in range(n))
        cochars = []
        for v in basis:
            dens = [Fraction(c.re).denominator for c in v]
            scale = 1
            for d in dens:
                scale = scale * d // math.gcd(scale, d)
            cochars.append(tuple(int(Fraction(c.re) * scale) for c in v))
        self.dim = n
        self.cochars = cochars
        self.weights = {}
        for name, chi in slots:
            self.weights[name] = tuple(sum(a * b for a, b in zip(chi, d)) for d in cochars)
        m = len(cochars)
        self.directions = [d for d in itertools.product(range(-2, 3), repeat=m) if any(d)]
        self.directions.sort(key=lambda d: (sum(abs(x) for x in d), d))

    def _pair(self, name, d) -> int:
        return sum(a * b for a, b in zip(self.weights.get(name, ()), d))

    def _direction(self, fixed: tuple, name: str):
        """First direction pairing to +-1 with ``name`` and 0 with ``fixed``."""
        key = (fixed, name)
        if key not in self._choice:
            found = None
            for d in self.directions:
                w = self._pair(name, d)
                if w in (1, -1) and not any(self._pair(f, d) for f in fixed):
                    found = (w, [(o, self._pair(o, d)) for o in self.weights if self._pair(o, d)],
                             [sum(dd * c[k] for dd, c in zip(d, self.cochars))
                              for k in range(self.dim)])
                    break
            self._choice[key] = found
        return self._choice[key]

    def normalize(self, point: Mapping[str, Scalar], order: Sequence[str],
                  with_diagonal: bool = True):
        """``(representative, diagonal)`` with ``representative`` the rescaled point.

        ``diagonal`` is ``None`` when ``with_diagonal`` is false.
        """
        if not hasattr(self, "_choice"):
            self._choice = {}
        pt = dict(point)
        fixed: tuple = ()
        diag = [ONE] * self.dim if with_diagonal else None
        for name in order:
            if name not in self.weights or not pt.get(name):
                continue
            choice = self._direction(fixed, name)
            if choice is None:
                continue
            w, exps, kexp = choice
            tval = pt[name].inverse() if w == 1 else pt[name]
            tinv = tval.inverse()
            for other, e in exps:
                if pt.get(other):
                    pt[other] = pt[other] * (tval ** e if e > 0 else tinv ** (-e))
            if with_diagonal:
                for k, e in enumerate(kexp):
                    if e:
                        diag[k] = diag[k] * (tval ** e if e > 0 else tinv ** (-e))
            fixed = fixed + (name,)
        return pt, diag

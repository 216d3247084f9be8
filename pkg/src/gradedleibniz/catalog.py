"""Constructors for the laws used in the classification.

Every constructor validates its side conditions and raises
:class:`CatalogError` naming the violated bound.  Lie tables are stored with
both orders of every bracket.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraLaw, abelian, direct_sum
from .scalar import ONE, Scalar, as_scalar

__all__ = [
    "CatalogError", "build_Ln", "build_Qn", "build_L_nr", "build_Q_nr",
    "build_tau_n4", "build_tau_n3", "build_nullfiliform", "build_filiform_typeI",
    "build_dim4", "build_mu", "build_L_alpha_eps", "build_thm_I12",
    "split_nullfiliform", "split_filiform", "CatalogEntry",
    "classify_graded_2filiform", "lie_families", "type_I_laws",
    "by_name", "catalog_names",
]


class CatalogError(ValueError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise CatalogError(msg)


class _LieTable:
    """Rules on the basis X_0..X_m (index k -> position k+1) plus optional Y."""

    def __init__(self, nx: int, with_y: bool):
        self.nx = nx
        self.dim = nx + (1 if with_y else 0)
        self.rules = []
        self.labels = [f"X{k}" for k in range(nx)] + (["Y"] if with_y else [])

    def pos(self, k):
        return self.dim if k == "Y" else k + 1

    def set(self, a, b, terms: dict):
        vec = {self.pos(k): as_scalar(c) for k, c in terms.items()}
        self.rules.append((self.pos(a), self.pos(b), vec))
        self.rules.append((self.pos(b), self.pos(a), {k: -c for k, c in vec.items()}))

    def law(self, name):
        return AlgebraLaw.from_rules(self.dim, self.rules, self.labels, name)


def _sign(i: int) -> int:
    return 1 if (i - 1) % 2 == 0 else -1  # (-1)^(i-1)


def build_Ln(n: int) -> AlgebraLaw:
    """Filiform Lie algebra L_n on X_0..X_{n-1}: [X_0, X_i] = X_{i+1}."""
    _require(n >= 3, f"L_n requires n >= 3 (got n={n})")
    t = _LieTable(n, False)
    for i in range(1, n - 1):
        t.set(0, i, {i + 1: 1})
    return t.law(f"Ln({n})")


def build_Qn(n: int) -> AlgebraLaw:
    """Filiform Lie algebra Q_n on X_0..X_{n-1}."""
    _require(n >= 6, f"Q_n requires n >= 6 (got n={n})")
    _require(n % 2 == 0, f"Q_n requires n even (got n={n})")
    t = _LieTable(n, False)
    for i in range(1, n - 1):
        t.set(0, i, {i + 1: 1})
    for i in range(1, (n - 2) // 2 + 1):
        t.set(i, n - 1 - i, {n - 1: _sign(i)})
    return t.law(f"Qn({n})")


def _chain(t: _LieTable, n: int):
    for i in range(1, n - 2):
        t.set(0, i, {i + 1: 1})


def build_L_nr(n: int, r: int) -> AlgebraLaw:
    """2-filiform Lie algebra L(n, r) on X_0..X_{n-2}, Y."""
    _require(n >= 5, f"L(n,r) requires n >= 5 (got n={n})")
    _require(r % 2 == 1, f"L(n,r) requires r odd (got r={r})")
    hi = 2 * ((n - 1) // 2) - 1
    _require(3 <= r <= hi, f"L(n,r) requires 3 <= r <= {hi} (got r={r})")
    t = _LieTable(n - 1, True)
    _chain(t, n)
    for i in range(1, (r - 1) // 2 + 1):
        t.set(i, r - i, {"Y": _sign(i)})
    return t.law(f"L({n},{r})")


def build_Q_nr(n: int, r: int) -> AlgebraLaw:
    """2-filiform Lie algebra Q(n, r) on X_0..X_{n-2}, Y."""
    _require(n >= 7, f"Q(n,r) requires n >= 7 (got n={n})")
    _require(n % 2 == 1, f"Q(n,r) requires n odd (got n={n})")
    _require(r % 2 == 1, f"Q(n,r) requires r odd (got r={r})")
    _require(3 <= r <= n - 4, f"Q(n,r) requires 3 <= r <= {n - 4} (got r={r})")
    t = _LieTable(n - 1, True)
    _chain(t, n)
    for i in range(1, (r - 1) // 2 + 1):
        t.set(i, r - i, {"Y": _sign(i)})
    for i in range(1, (n - 3) // 2 + 1):
        t.set(i, n - 2 - i, {n - 2: _sign(i)})
    return t.law(f"Q({n},{r})")


def build_tau_n4(n: int) -> AlgebraLaw:
    """tau(n, n-4), n odd >= 7, on X_0..X_{n-2}, Y."""
    _require(n >= 7, f"tau(n,n-4) requires n >= 7 (got n={n})")
    _require(n % 2 == 1, f"tau(n,n-4) requires n odd (got n={n})")
    t = _LieTable(n - 1, True)
    _chain(t, n)
    for i in range(1, (n - 5) // 2 + 1):
        t.set(i, n - 4 - i, {n - 4: _sign(i), "Y": _sign(i)})
    for i in range(1, (n - 5) // 2 + 1):
        t.set(i, n - 3 - i, {n - 3: _sign(i) * Fraction(n - 3 - 2 * i, 2)})
    for i in range(2, (n - 3) // 2 + 1):
        t.set(i, n - 2 - i, {n - 2: -_sign(i) * (i - 1) * Fraction(n - 3 - i, 2)})
    for i in (1, 2):
        t.set(i, "Y", {n - 4 + i: Fraction(5 - n, 2)})
    return t.law(f"tau({n},{n - 4})")


def build_tau_n3(n: int) -> AlgebraLaw:
    """tau(n, n-3), n even >= 6, on X_0..X_{n-2}, Y."""
    _require(n >= 6, f"tau(n,n-3) requires n >= 6 (got n={n})")
    _require(n % 2 == 0, f"tau(n,n-3) requires n even (got n={n})")
    t = _LieTable(n - 1, True)
    _chain(t, n)
    for i in range(1, (n - 4) // 2 + 1):
        t.set(i, n - 3 - i, {n - 3: _sign(i), "Y": _sign(i)})
    for i in range(1, (n - 4) // 2 + 1):
        t.set(i, n - 2 - i, {n - 2: _sign(i) * Fraction(n - 2 - 2 * i, 2)})
    t.set(1, "Y", {n - 2: Fraction(4 - n, 2)})
    return t.law(f"tau({n},{n - 3})")


def build_nullfiliform(n: int) -> AlgebraLaw:
    """Null-filiform law ``[e_i, e_1] = e_{i+1}``."""
    _require(n >= 1, f"NF(n) requires n >= 1 (got n={n})")
    return AlgebraLaw.from_rules(n, [(i, 1, {i + 1: 1}) for i in range(1, n)],
                                 name=f"NF({n})")


def build_filiform_typeI(m: int) -> AlgebraLaw:
    """Filiform type-I law on e_1..e_{m-1}, f: ``[e_i, e_1] = [e_i, f] = e_{i+1}``."""
    _require(m >= 3, f"F1(m) requires m >= 3 (got m={m})")
    rules = []
    for i in range(1, m - 1):
        rules.append((i, 1, {i + 1: 1}))
        rules.append((i, m, {i + 1: 1}))
    labels = [f"e{k}" for k in range(1, m)] + ["f"]
    return AlgebraLaw.from_rules(m, rules, labels, f"F1({m})")


def split_nullfiliform(n: int) -> AlgebraLaw:
    """``NF(n-2) (+) C^2``."""
    _require(n >= 3, f"NF(n-2)+C2 requires n >= 3 (got n={n})")
    law = direct_sum(build_nullfiliform(n - 2), abelian(2))
    return law.relabel([f"e{k}" for k in range(1, n + 1)], f"NF({n - 2})+C2")


def split_filiform(n: int) -> AlgebraLaw:
    """``F1(n-1) (+) C``."""
    _require(n >= 4, f"F1(n-1)+C requires n >= 4 (got n={n})")
    law = direct_sum(build_filiform_typeI(n - 1), abelian(1))
    return law.relabel([f"e{k}" for k in range(1, n + 1)], f"F1({n - 1})+C1")


def build_dim4() -> AlgebraLaw:
    return AlgebraLaw.from_rules(4, [(1, 1, {2: 1}), (1, 3, {4: 1})], name="dim4")


def build_L_alpha_eps(alpha, eps: int) -> AlgebraLaw:
    """L(alpha, eps) on e_1..e_5 (e_5 plays the role of f_2)."""
    _require(eps in (0, 1), f"L(alpha,eps) requires eps in {{0,1}} (got {eps})")
    a = as_scalar(alpha)
    rules = [(1, 1, {2: 1}), (2, 1, {3: 1}),
             (1, 4, {2: a, 5: 1}), (2, 4, {3: a})]
    if eps:
        rules.append((5, 4, {3: 1}))
    return AlgebraLaw.from_rules(5, rules, name=f"Lalpha({a},{eps})")


def build_mu(k: int) -> AlgebraLaw:
    """The four 5-dimensional laws mu^1..mu^4."""
    _require(k in (1, 2, 3, 4), f"mu^k requires k in 1..4 (got k={k})")
    base = [(1, 1, {2: 1}), (2, 1, {3: 1})]
    i = Scalar(0, 1)
    extra = {
        1: [(1, 4, {2: 1, 5: 1}), (2, 4, {3: 1})],
        2: [(1, 4, {5: 1})],
        3: [(1, 4, {2: i, 5: 1}), (2, 4, {3: i}), (5, 4, {3: 1})],
        4: [(1, 4, {5: 1}), (5, 4, {3: 1})],
    }[k]
    return AlgebraLaw.from_rules(5, base + extra, name=f"mu{k}")


def build_thm_I12(n: int, variant: int) -> AlgebraLaw:
    """The two non-split laws of type (I,1,2) in dimension ``n >= 6``."""
    _require(n >= 6, f"thmI12 requires n >= 6 (got n={n})")
    _require(variant in (1, 2), f"thmI12 variant must be 1 or 2 (got {variant})")
    rules = [(i, 1, {i + 1: 1}) for i in range(1, n - 2)]
    if variant == 1:
        rules.append((1, n - 1, {2: 1, n: 1}))
        rules += [(i, n - 1, {i + 1: 1}) for i in range(2, n - 2)]
    else:
        rules.append((1, n - 1, {n: 1}))
    return AlgebraLaw.from_rules(n, rules, name=f"thmI12({n},{variant})")


# -- classification lists ---------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    source: str
    law: AlgebraLaw
    lie: bool
    split: bool


def lie_families(n: int) -> list[CatalogEntry]:
    """2-filiform Lie laws of dimension n from the displayed families."""
    out = []
    hi = 2 * ((n - 1) // 2) - 1
    for r in range(3, hi + 1, 2):
        if n >= 5:
            out.append(CatalogEntry(f"L({n},{r})", "2-filiform Lie family L(n,r)",
                                    build_L_nr(n, r), True, False))
    if n >= 7 and n % 2 == 1:
        for r in range(3, n - 3, 2):
            out.append(CatalogEntry(f"Q({n},{r})", "2-filiform Lie family Q(n,r)",
                                    build_Q_nr(n, r), True, False))
        out.append(CatalogEntry(f"tau({n},{n - 4})", "2-filiform Lie family tau(n,n-4)",
                                build_tau_n4(n), True, False))
    if n >= 6 and n % 2 == 0:
        out.append(CatalogEntry(f"tau({n},{n - 3})", "2-filiform Lie family tau(n,n-3)",
                                build_tau_n3(n), True, False))
    if n - 1 >= 3:
        law = direct_sum(build_Ln(n - 1), abelian(1), name=f"Ln({n - 1})+C1")
        out.append(CatalogEntry(law.name, "filiform Lie L_n plus a line", law, True, True))
    if n - 1 >= 6 and (n - 1) % 2 == 0:
        law = direct_sum(build_Qn(n - 1), abelian(1), name=f"Qn({n - 1})+C1")
        out.append(CatalogEntry(law.name, "filiform Lie Q_n plus a line", law, True, True))
    return out


def type_I_laws(n: int) -> list[CatalogEntry]:
    """Non-Lie graded 2-filiform laws of type I (split and non-split)."""
    out = []
    if n == 4:
        out.append(CatalogEntry("dim4", "4-dimensional (I,1,2) law", build_dim4(), False, False))
    elif n == 5:
        for k in (1, 2, 3, 4):
            out.append(CatalogEntry(f"mu{k}", "5-dimensional (I,1,2) laws",
                                    build_mu(k), False, False))
    elif n >= 6:
        for v in (1, 2):
            out.append(CatalogEntry(f"thmI12({n},{v})", "non-split (I,1,2) laws, n >= 6",
                                    build_thm_I12(n, v), False, False))
    out.append(CatalogEntry(f"NF({n - 2})+C2", "split (I,1,1): null-filiform plus C^2",
                            split_nullfiliform(n), False, True))
    out.append(CatalogEntry(f"F1({n - 1})+C1", "split (I,1,1): filiform type I plus C",
                            split_filiform(n), False, True))
    return out


def classify_graded_2filiform(n: int) -> list[CatalogEntry]:
    """All graded 2-filiform laws asserted for dimension n."""
    _require(n >= 4, f"classification requires n >= 4 (got n={n})")
    return type_I_laws(n) + lie_families(n)


# -- lookup by name -----------------------------------------------------------

def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")] if text else []


_NAMED = [
    (r"dim4", lambda: build_dim4()),
    (r"mu([1-4])", lambda k: build_mu(int(k))),
    (r"NF\((\d+)\)", lambda n: build_nullfiliform(int(n))),
    (r"F1\((\d+)\)", lambda m: build_filiform_typeI(int(m))),
    (r"Ln\((\d+)\)", lambda n: build_Ln(int(n))),
    (r"Qn\((\d+)\)", lambda n: build_Qn(int(n))),
    (r"L\((\d+),(\d+)\)", lambda n, r: build_L_nr(int(n), int(r))),
    (r"Q\((\d+),(\d+)\)", lambda n, r: build_Q_nr(int(n), int(r))),
    (r"tau\((\d+),(\d+)\)", lambda n, r: _tau(int(n), int(r))),
    (r"thmI12\((\d+),([12])\)", lambda n, v: build_thm_I12(int(n), int(v))),
    (r"Lalpha\(([^,]+),([01])\)", lambda a, e: build_L_alpha_eps(_scalar(a), int(e))),
]


def _scalar(text: str):
    from .scalar import parse_scalar
    return parse_scalar(text)


def _tau(n: int, r: int) -> AlgebraLaw:
    if r == n - 4:
        return build_tau_n4(n)
    if r == n - 3:
        return build_tau_n3(n)
    raise CatalogError(f"tau(n,r) exists only for r = n-4 or n-3 (got n={n}, r={r})")


def by_name(name: str) -> AlgebraLaw:
    """Build a catalog law from its display name.

    Accepts ``dim4``, ``mu1``..``mu4``, ``NF(n)``, ``F1(m)``, ``Ln(n)``,
    ``Qn(n)``, ``L(n,r)``, ``Q(n,r)``, ``tau(n,r)``, ``thmI12(n,v)``,
    ``Lalpha(a,eps)`` and ``X+Cm`` for a direct sum with an abelian ideal.
    """
    text = name.replace(" ", "")
    m = re.fullmatch(r"(.+)\+C(\d+)", text)
    if m:
        base = by_name(m.group(1))
        law = direct_sum(base, abelian(int(m.group(2))))
        return law.relabel([f"e{k}" for k in range(1, law.dim + 1)], text)
    for pattern, build in _NAMED:
        m = re.fullmatch(pattern, text)
        if m:
            return build(*m.groups()).relabel(name=text)
    raise CatalogError(f"unknown catalog name {name!r}")


def catalog_names(n_max: int = 12) -> list[str]:
    """Names of every catalog law of dimension 4..n_max, plus NF and F1."""
    names = []
    for n in range(4, n_max + 1):
        names += [e.name for e in classify_graded_2filiform(n)]
        names.append(f"NF({n})")
        names.append(f"F1({n})")
        names.append(f"Ln({n})")
        if n >= 6 and n % 2 == 0:
            names.append(f"Qn({n})")
    return list(dict.fromkeys(names))

"""Algebra laws given by structure constants, and the identities on them.

A law on the basis ``e_1..e_n`` is stored sparsely: ``products[(i, j)]`` is a
dict ``{k: c}`` meaning ``[e_i, e_j] = sum c e_k`` (indices are 0-based
internally, labels are 1-based for display).  Absent entries are zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linalg import (DimensionError, Matrix, Subspace, nullspace, transpose,
                     vector, zero_vector)
from .scalar import ZERO, Scalar, as_scalar

__all__ = [
    "AlgebraLaw", "LeibnizReport", "SeriesReport", "abelian", "bracket",
    "leibniz_check", "leibniz_residual", "is_lie", "lie_violation",
    "lower_central_series", "annihilators", "split_abelian_rank",
    "direct_sum", "bracket_span", "left_centralizer", "right_centralizer",
    "right_mult_matrix", "left_mult_matrix",
]


def _clean(vec: Mapping[int, object]) -> dict[int, Scalar]:
    out = {}
    for k, c in vec.items():
        c = as_scalar(c)
        if c:
            out[int(k)] = c
    return out


class AlgebraLaw:
    """Structure constants of a finite-dimensional algebra over Q(i)."""

    __slots__ = ("dim", "labels", "_products", "name")

    def __init__(self, dim: int, products: Mapping | None = None,
                 labels: Sequence[str] | None = None, name: str | None = None):
        self.dim = int(dim)
        self.labels = tuple(labels) if labels is not None else tuple(
            f"e{k + 1}" for k in range(self.dim))
        if len(self.labels) != self.dim:
            raise DimensionError("one label per basis vector is required")
        self.name = name
        prods = {}
        for (i, j), vec in (products or {}).items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionError(f"product index ({i}, {j}) out of range")
            if not isinstance(vec, Mapping):
                if len(vec) != self.dim:
                    raise DimensionError(f"product vector for ({i}, {j}) has wrong length")
                vec = dict(enumerate(vec))
            v = _clean(vec)
            if any(not 0 <= k < self.dim for k in v):
                raise DimensionError(f"product ({i}, {j}) lands outside the basis")
            if v:
                prods[(i, j)] = v
        self._products = prods

    @classmethod
    def from_rules(cls, dim: int, rules: Iterable, labels=None, name=None) -> "AlgebraLaw":
        """Build from 1-based rules ``(i, j, {k: c})``; repeated pairs accumulate."""
        acc: dict = {}
        for i, j, vec in rules:
            slot = acc.setdefault((i - 1, j - 1), {})
            for k, c in vec.items():
                slot[k - 1] = slot.get(k - 1, ZERO) + as_scalar(c)
        return cls(dim, acc, labels, name)

    @property
    def products(self) -> Mapping[tuple[int, int], Mapping[int, Scalar]]:
        return self._products

    def product(self, i: int, j: int) -> dict[int, Scalar]:
        return self._products.get((i, j), {})

    def product_vector(self, i: int, j: int) -> tuple:
        v = self._products.get((i, j), {})
        return tuple(v.get(k, ZERO) for k in range(self.dim))

    @property
    def table(self) -> dict[tuple[int, int], tuple]:
        return {key: self.product_vector(*key) for key in sorted(self._products)}

    def relabel(self, labels=None, name=None) -> "AlgebraLaw":
        return AlgebraLaw(self.dim, self._products, labels or self.labels, name or self.name)

    def __eq__(self, other):
        if not isinstance(other, AlgebraLaw):
            return NotImplemented
        return self.dim == other.dim and self._products == other._products

    def __hash__(self):
        return hash((self.dim, tuple(sorted(
            (key, tuple(sorted(v.items()))) for key, v in self._products.items()))))

    def describe(self) -> list[str]:
        lines = []
        for (i, j), vec in sorted(self._products.items()):
            terms = " + ".join(
                (self.labels[k] if c == 1 else f"({c})*{self.labels[k]}")
                for k, c in sorted(vec.items()))
            lines.append(f"[{self.labels[i]}, {self.labels[j]}] = {terms}")
        return lines

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<AlgebraLaw{nm} dim={self.dim} nnz={len(self._products)}>"


def abelian(n: int) -> AlgebraLaw:
    return AlgebraLaw(n, {}, name=f"C^{n}")


# -- bracket ----------------------------------------------------------------

def _sparse(x: Sequence) -> list[tuple[int, Scalar]]:
    return [(k, c) for k, c in enumerate(x) if c]


def _bracket_sparse(law: AlgebraLaw, xs, ys) -> dict[int, Scalar]:
    out: dict[int, Scalar] = {}
    P = law._products
    for i, a in xs:
        for j, b in ys:
            vec = P.get((i, j))
            if vec is None:
                continue
            ab = a * b
            for k, c in vec.items():
                out[k] = out.get(k, ZERO) + ab * c
    return out


def bracket(law: AlgebraLaw, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the table: ``[x, y]``."""
    if len(x) != law.dim or len(y) != law.dim:
        raise DimensionError(f"expected vectors of length {law.dim}")
    x = vector(x)
    y = vector(y)
    out = _bracket_sparse(law, _sparse(x), _sparse(y))
    return tuple(out.get(k, ZERO) for k in range(law.dim))


def right_mult_matrix(law: AlgebraLaw, x: Sequence) -> Matrix:
    """Matrix of ``R_x : z -> [z, x]``; column ``k`` holds ``[e_k, x]``."""
    xs = _sparse(vector(x))
    cols = []
    for k in range(law.dim):
        v = _bracket_sparse(law, [(k, 1)], xs)
        cols.append(tuple(v.get(m, ZERO) for m in range(law.dim)))
    return transpose(tuple(cols)) if cols else ()


def left_mult_matrix(law: AlgebraLaw, x: Sequence) -> Matrix:
    """Matrix of ``z -> [x, z]``."""
    xs = _sparse(vector(x))
    cols = []
    for k in range(law.dim):
        v = _bracket_sparse(law, xs, [(k, 1)])
        cols.append(tuple(v.get(m, ZERO) for m in range(law.dim)))
    return transpose(tuple(cols)) if cols else ()


# -- identities -------------------------------------------------------------

def _vec_prod(P, vec, j, left=True):
    """[vec, e_j] if left else [e_j, vec], for a sparse ``vec``."""
    out: dict[int, Scalar] = {}
    for m, c in vec.items():
        p = P.get((m, j) if left else (j, m))
        if p is None:
            continue
        for k, d in p.items():
            out[k] = out.get(k, ZERO) + c * d
    return out


def leibniz_residual(law: AlgebraLaw, i: int, j: int, k: int) -> tuple:
    """``[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]`` (0-based)."""
    P = law._products
    acc = _vec_prod(P, P.get((j, k), {}), i, left=False)
    for m, c in _vec_prod(P, P.get((i, j), {}), k).items():
        acc[m] = acc.get(m, ZERO) - c
    for m, c in _vec_prod(P, P.get((i, k), {}), j).items():
        acc[m] = acc.get(m, ZERO) + c
    return tuple(acc.get(m, ZERO) for m in range(law.dim))


@dataclass
class LeibnizReport:
    passed: bool
    violations: list = field(default_factory=list)  # (i, j, k, residual), 1-based

    def __bool__(self):
        return self.passed


def leibniz_check(law: AlgebraLaw, first_only: bool = False) -> LeibnizReport:
    """Exhaustive check of the Leibniz identity over all basis triples."""
    n = law.dim
    violations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = leibniz_residual(law, i, j, k)
                if any(r):
                    violations.append((i + 1, j + 1, k + 1, r))
                    if first_only:
                        return LeibnizReport(False, violations)
    return LeibnizReport(not violations, violations)


def lie_violation(law: AlgebraLaw):
    """First 1-based pair ``(i, j)`` with ``[e_i,e_j] != -[e_j,e_i]``, else None."""
    P = law._products
    for i in range(law.dim):
        for j in range(i, law.dim):
            a = P.get((i, j), {})
            b = P.get((j, i), {})
            for k in set(a) | set(b):
                if a.get(k, ZERO) + b.get(k, ZERO):
                    return (i + 1, j + 1)
    return None


def is_lie(law: AlgebraLaw) -> bool:
    """Antisymmetry on basis pairs; together with Leibniz this gives Jacobi."""
    return lie_violation(law) is None


# -- subspaces --------------------------------------------------------------

def bracket_span(law: AlgebraLaw, A: Subspace, B: Subspace) -> Subspace:
    """``span{[a, b] : a in A, b in B}``."""
    vecs = []
    for a in A.basis:
        xs = _sparse(a)
        for b in B.basis:
            v = _bracket_sparse(law, xs, _sparse(b))
            if v:
                vecs.append(tuple(v.get(k, ZERO) for k in range(law.dim)))
    return Subspace.span(vecs, law.dim)


def left_centralizer(law: AlgebraLaw, A: Subspace) -> Subspace:
    """``{x : [x, a] = 0 for all a in A}``."""
    rows = []
    for a in A.basis:
        rows.extend(right_mult_matrix(law, a))
    return Subspace(law.dim, nullspace(tuple(rows), law.dim)) if rows else Subspace.whole(law.dim)


def right_centralizer(law: AlgebraLaw, A: Subspace) -> Subspace:
    """``{y : [a, y] = 0 for all a in A}``."""
    rows = []
    for a in A.basis:
        rows.extend(left_mult_matrix(law, a))
    return Subspace(law.dim, nullspace(tuple(rows), law.dim)) if rows else Subspace.whole(law.dim)


@dataclass
class SeriesReport:
    subspaces: list
    dims: list
    nilindex: int | None  # None: not nilpotent within the bound

    @property
    def nilpotent(self) -> bool:
        return self.nilindex is not None


def lower_central_series(law: AlgebraLaw) -> SeriesReport:
    """``L^1 = L``, ``L^{k+1} = [L^k, L]`` until zero or ``k = n + 1``."""
    n = law.dim
    whole = Subspace.whole(n)
    terms = [whole]
    while terms[-1].dim > 0 and len(terms) <= n:
        terms.append(bracket_span(law, terms[-1], whole))
    nilindex = len(terms) if terms[-1].dim == 0 else None
    if n == 0:
        nilindex = 1
    return SeriesReport(terms, [t.dim for t in terms], nilindex)


def annihilators(law: AlgebraLaw) -> tuple[Subspace, Subspace, Subspace]:
    """Left ``{x : [x, L] = 0}``, right ``{y : [L, y] = 0}`` and their meet."""
    whole = Subspace.whole(law.dim)
    left = left_centralizer(law, whole)
    right = right_centralizer(law, whole)
    return left, right, left.intersect(right)


def split_abelian_rank(law: AlgebraLaw) -> int:
    """``dim Z(L) - dim(Z(L) ∩ L^2)``: size of an abelian central summand."""
    _, _, center = annihilators(law)
    derived = bracket_span(law, Subspace.whole(law.dim), Subspace.whole(law.dim))
    return center.dim - center.intersect(derived).dim


def direct_sum(a: AlgebraLaw, b: AlgebraLaw, name: str | None = None) -> AlgebraLaw:
    """Block-diagonal law; mixed products vanish."""
    off = a.dim
    prods = dict(a.products)
    for (i, j), vec in b.products.items():
        prods[(i + off, j + off)] = {k + off: c for k, c in vec.items()}
    labels = list(a.labels)
    extra = list(b.labels)
    if set(labels) & set(extra):
        extra = [f"f{k + 1}" for k in range(b.dim)]
        while set(labels) & set(extra):
            extra = [lab + "'" for lab in extra]
    nm = name or (f"{a.name}+{b.name}" if a.name and b.name else None)
    return AlgebraLaw(a.dim + b.dim, prods, labels + extra, nm)

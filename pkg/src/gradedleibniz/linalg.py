"""Dense exact linear algebra over Q(i).

Matrices are tuples of row tuples of :class:`Scalar`; vectors are tuples.
Nothing here mutates its arguments.
"""
from __future__ import annotations

import math

from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

Vector = tuple
Matrix = tuple


class DimensionError(ValueError):
    pass


def vector(entries: Iterable) -> Vector:
    return tuple(as_scalar(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    return out


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def shape(M: Matrix) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else ()


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    c = as_scalar(c)
    return tuple(c * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    acc = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + c * a
    return tuple(acc)


def matvec(M: Matrix, v: Vector) -> Vector:
    nz = [(k, a) for k, a in enumerate(v) if a]
    out = []
    for row in M:
        s = ZERO
        for k, a in nz:
            r = row[k]
            if r:
                s = s + r * a
        out.append(s)
    return tuple(out)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if shape(A)[1] != len(B):
        raise DimensionError(f"cannot multiply {shape(A)} by {shape(B)}")
    cols = shape(B)[1]
    out = []
    for row in A:
        acc = [ZERO] * cols
        for k, a in enumerate(row):
            if not a:
                continue
            for j, b in enumerate(B[k]):
                if b:
                    acc[j] = acc[j] + a * b
        out.append(tuple(acc))
    return tuple(out)


def matpow(M: Matrix, k: int) -> Matrix:
    result = identity(len(M))
    for _ in range(k):
        result = matmul(result, M)
    return result


def rref(M: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form.

    Returns ``(R, rank, pivot_columns)``; ``R`` keeps the shape of ``M``
    with zero rows at the bottom.  The form is canonical for the row space.
    """
    rows = [list(r) for r in M]
    nrows, ncols = shape(M)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        prow = [x * inv if x else x for x in rows[r]]
        rows[r] = prow
        nzp = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j, pv in nzp:
                        row[j] = row[j] - f * pv
        pivots.append(c)
        r += 1
    return tuple(tuple(x) for x in rows), r, tuple(pivots)


def gaussian_integer_form(M: Matrix):
    """``(re, im)`` integer matrices with ``c*M = re + i*im`` for some c > 0.

    ``im`` is None when every entry is real.  Scaling by a positive integer
    leaves ranks (and ranks of powers) unchanged.
    """
    den = 1
    for row in M:
        for x in row:
            if x:
                den = math.lcm(den, int(x._re.denominator), int(x._im.denominator))
    re = [[int(x._re * den) for x in row] for row in M]
    if all(not x._im for row in M for x in row):
        return re, None
    im = [[int(x._im * den) for x in row] for row in M]
    return re, im


def _bareiss_rank_int(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        pc = piv[c]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (pc * row[j] - f * piv[j]) // prev
            row[c] = 0
        prev = pc
        r += 1
    return r


def _gdiv(a, b, c, d):
    """Exact quotient (a+bi)/(c+di) in Z[i]."""
    nrm = c * c + d * d
    return (a * c + b * d) // nrm, (b * c - a * d) // nrm


def _bareiss_rank_gauss(re: list[list[int]], im: list[list[int]]) -> int:
    rows = [list(zip(a, b)) for a, b in zip(re, im)]
    rows = [r for r in rows if any(x or y for x, y in r)]
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    prev = (1, 0)
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != (0, 0)), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        pa, pb = piv[c]
        for i in range(r + 1, m):
            row = rows[i]
            fa, fb = row[c]
            for j in range(c + 1, n):
                xa, xb = row[j]
                ya, yb = piv[j]
                na = pa * xa - pb * xb - (fa * ya - fb * yb)
                nb = pa * xb + pb * xa - (fa * yb + fb * ya)
                row[j] = _gdiv(na, nb, *prev)
            row[c] = (0, 0)
        prev = (pa, pb)
        r += 1
    return r


def integer_rank(re, im=None) -> int:
    return _bareiss_rank_int(re) if im is None else _bareiss_rank_gauss(re, im)


def rank(M: Matrix) -> int:
    """Exact rank via fraction-free elimination over Z or Z[i]."""
    if not M or not M[0]:
        return 0
    return integer_rank(*gaussian_integer_form(M))


def _sparse_matmul(A, B, m, out=None, sign=1):
    out = out if out is not None else [[0] * m for _ in A]
    for row, acc in zip(A, out):
        for k, a in enumerate(row):
            if a:
                a *= sign
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
    return out


def integer_matmul(A, B, Ai=None, Bi=None):
    """Product of integer (or Gaussian-integer, as re/im pairs) matrices.

    Zero entries are skipped, which pays off for the sparse nilpotent
    matrices this is used on.
    """
    m = len(B[0]) if B else 0
    re = _sparse_matmul(A, B, m)
    if Ai is None and Bi is None:
        return re, None
    im = [[0] * m for _ in A]
    if Ai is not None and Bi is not None:
        _sparse_matmul(Ai, Bi, m, re, -1)
    if Bi is not None:
        _sparse_matmul(A, Bi, m, im)
    if Ai is not None:
        _sparse_matmul(Ai, B, m, im)
    return re, im


def row_basis(vectors: Sequence[Vector], n: int) -> Matrix:
    """Canonical RREF basis (nonzero rows only) of the span of ``vectors``."""
    vs = [v for v in vectors if any(v)]
    if not vs:
        return ()
    R, r, _ = rref(tuple(vs))
    return R[:r]


def nullspace(M: Matrix, ncols: int | None = None) -> Matrix:
    """Basis of ``{x : M x = 0}``, as rows, in canonical RREF."""
    if ncols is None:
        ncols = shape(M)[1]
    if not M:
        return identity(ncols)
    R, r, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -R[i][f]
        basis.append(tuple(x))
    return row_basis(basis, ncols)


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = tuple(tuple(M[i]) + identity(n)[i] for i in range(n))
    R, r, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n:] for row in R[:n])


def det(M: Matrix) -> Scalar:
    n = len(M)
    rows = [list(r) for r in M]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        pv = rows[c][c]
        d = d * pv
        inv = pv.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                for j in range(c, n):
                    if rows[c][j]:
                        rows[i][j] = rows[i][j] - f * rows[c][j]
    return d


def solve_in_basis(basis_cols: Matrix, v: Vector) -> Vector:
    """Coordinates of ``v`` w.r.t. the columns of the square invertible matrix."""
    return matvec(inverse(basis_cols), v)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q(i)^n`` held by its canonical RREF basis."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [vector(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        return cls(ambient_dim, row_basis(vs, ambient_dim))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, row_basis(self.basis + other.basis, self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        n = self.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(n)
        # x = sum a_k u_k = sum b_l w_l  <=>  [U^T | -W^T] (a, b) = 0
        k = len(self.basis)
        cols = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        system = transpose(tuple(cols))
        sols = nullspace(system, len(cols))
        vecs = [lincomb(s[:k], self.basis, n) for s in sols]
        return Subspace.span(vecs, n)

    def contains_vector(self, v: Sequence) -> bool:
        v = vector(v)
        if not any(v):
            return True
        if not self.basis:
            return False
        return rank(self.basis + (v,)) == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def complement_in(self, bigger: "Subspace") -> Matrix:
        """Rows of ``bigger.basis`` (in order) spanning a complement of ``self``."""
        picked = []
        current = self
        for row in bigger.basis:
            if not current.contains_vector(row):
                picked.append(row)
                current = Subspace(self.ambient_dim,
                                   row_basis(current.basis + (row,), self.ambient_dim))
        return tuple(picked)

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_ops(a: Subspace, b: Subspace, op: str):
    """``op`` is ``"sum"``, ``"intersect"`` or ``"contains"`` (is b inside a)."""
    a._check(b)
    if op == "sum":
        return a + b
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        return a.contains(b)
    raise ValueError(f"unknown subspace operation {op!r}")

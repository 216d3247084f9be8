"""Changes of basis, isomorphism witnesses and isomorphism invariants.

Convention: the columns of a basis-change matrix ``P`` are the new basis
vectors written in the old basis, ``e'_j = sum_i P[i][j] e_i``.  The new
structure constants are ``c'(i, j) = P^{-1} [P e_i, P e_j]``.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .algebra import (AlgebraLaw, annihilators, bracket, bracket_span, is_lie,
                      left_centralizer, lower_central_series, right_centralizer,
                      right_mult_matrix, split_abelian_rank)
from .linalg import (Subspace, det, identity, inverse, matmul, matvec, rank,
                     solve_in_basis, transpose, vector)
from .nilpotent import (DEFAULT_SEED, characteristic_sequence, filiform_profile,
                        natural_gradation, sample_vectors)
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "SingularChangeError", "BasisChange", "change_of_basis", "verify_isomorphism",
    "InvariantVector", "invariant_vector", "subspace_battery", "NotFoundWithinGrid",
    "NotIsomorphic", "graded_iso_search", "SEARCH_GRID",
]


class SingularChangeError(ValueError):
    pass


class BasisChange:
    """Invertible matrix whose columns are the new basis vectors."""

    __slots__ = ("matrix", "_inverse")

    def __init__(self, matrix: Sequence[Sequence]):
        M = tuple(vector(row) for row in matrix)
        n = len(M)
        if any(len(row) != n for row in M):
            raise SingularChangeError("basis change must be square")
        if not det(M):
            raise SingularChangeError("basis change is singular")
        self.matrix = M
        self._inverse = None

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "BasisChange":
        return cls(transpose(tuple(vector(c) for c in columns)))

    @classmethod
    def from_images(cls, n: int, images: dict) -> "BasisChange":
        """Identity except ``e'_j = images[j]``; keys 1-based, values ``{k: c}`` 1-based."""
        cols = [list(identity(n)[j]) for j in range(n)]
        for j, img in images.items():
            col = [ZERO] * n
            for k, c in img.items():
                col[k - 1] = as_scalar(c)
            cols[j - 1] = col
        return cls.from_columns(cols)

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        return cls(identity(n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def inverse_matrix(self):
        if self._inverse is None:
            self._inverse = inverse(self.matrix)
        return self._inverse

    def then(self, other: "BasisChange") -> "BasisChange":
        """Apply ``self`` first, then ``other`` (expressed in the new basis)."""
        return BasisChange(matmul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, BasisChange) and self.matrix == other.matrix

    def __repr__(self):
        return f"BasisChange({[[str(c) for c in row] for row in self.matrix]})"


def change_of_basis(law: AlgebraLaw, P: BasisChange | Sequence, name=None) -> AlgebraLaw:
    if not isinstance(P, BasisChange):
        P = BasisChange(P)
    n = law.dim
    if P.dim != n:
        raise SingularChangeError(f"basis change of size {P.dim} for a {n}-dimensional law")
    cols = transpose(P.matrix)
    Pinv = P.inverse_matrix
    prods = {}
    for i in range(n):
        for j in range(n):
            v = bracket(law, cols[i], cols[j])
            if any(v):
                w = matvec(Pinv, v)
                prods[(i, j)] = {k: c for k, c in enumerate(w) if c}
    return AlgebraLaw(n, prods, law.labels, name or law.name)


def verify_isomorphism(a: AlgebraLaw, b: AlgebraLaw, P: BasisChange | Sequence) -> bool:
    """True iff rewriting ``a`` in the basis given by ``P`` yields exactly ``b``."""
    if a.dim != b.dim:
        return False
    try:
        moved = change_of_basis(a, P)
    except SingularChangeError:
        return False
    return moved == b


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------

def subspace_battery(law: AlgebraLaw) -> dict[str, int]:
    """Dimensions of canonically defined subspaces.

    Seeds are L, the terms L^k of the lower central series, the left and
    right annihilators and the center.  Level one applies the left and right
    centralizers and the products [S,S], [S,L], [L,S] to every seed; level
    two applies the centralizers and [S,S] to every level-one result.  Every
    entry is defined without reference to a basis, so isomorphic laws give
    equal batteries.
    """
    n = law.dim
    whole = Subspace.whole(n)
    series = lower_central_series(law)
    left, right, center = annihilators(law)
    seeds = {"L": whole}
    for k, s in enumerate(series.subspaces[1:], start=2):
        if s.dim:
            seeds[f"L^{k}"] = s
    seeds.update({"Lann": left, "Rann": right, "Z": center})
    cache: dict = {}

    def ops(name, S, full: bool):
        out = {}
        key = S.basis
        if key not in cache:
            cache[key] = (left_centralizer(law, S), right_centralizer(law, S),
                          bracket_span(law, S, S))
        cl, cr, ss = cache[key]
        out[f"CL({name})"] = cl
        out[f"CR({name})"] = cr
        out[f"[{name},{name}]"] = ss
        if full:
            out[f"[{name},L]"] = bracket_span(law, S, whole)
            out[f"[L,{name}]"] = bracket_span(law, whole, S)
        return out

    dims = {name: S.dim for name, S in seeds.items()}
    level1 = {}
    for name, S in seeds.items():
        level1.update(ops(name, S, True))
    dims.update({k: v.dim for k, v in level1.items()})
    for name, S in level1.items():
        dims.update({k: v.dim for k, v in ops(name, S, False).items()})
    return dims


def generic_ranks(law: AlgebraLaw, samples: int = 8, seed: int = DEFAULT_SEED) -> tuple[int, int]:
    """Largest ranks of ``R_y`` and ``R_y^2`` seen over deterministic samples.

    Lower bounds for the generic ranks; exact for a generic sample.
    """
    n = law.dim
    best1 = best2 = 0
    for y in sample_vectors(n, samples, seed):
        R = right_mult_matrix(law, y)
        best1 = max(best1, rank(R))
        best2 = max(best2, rank(matmul(R, R)))
    return best1, best2


@dataclass
class InvariantVector:
    dim: int
    series_dims: tuple
    nilindex: int | None
    left_ann_dim: int
    right_ann_dim: int
    center_dim: int
    reduced_left_ann_dim: int
    split_rank: int
    charseq: tuple
    layer_dims: tuple
    is_lie: bool
    p: int | None
    algebra_type: str
    positions: tuple
    generic_rank: tuple
    battery: dict = field(repr=False)

    def differences(self, other: "InvariantVector") -> list[str]:
        out = []
        a, b = asdict(self), asdict(other)
        for k in a:
            if k == "battery":
                continue
            if a[k] != b[k]:
                out.append(k)
        for k in sorted(set(self.battery) | set(other.battery)):
            if self.battery.get(k) != other.battery.get(k):
                out.append(f"battery:{k}")
        return out

    def to_json(self):
        d = asdict(self)
        d["series_dims"] = list(self.series_dims)
        d["charseq"] = list(self.charseq)
        d["layer_dims"] = list(self.layer_dims)
        d["positions"] = list(self.positions)
        d["generic_rank"] = list(self.generic_rank)
        return d


def invariant_vector(law: AlgebraLaw, samples: int = 8, seed: int = DEFAULT_SEED) -> InvariantVector:
    series = lower_central_series(law)
    left, right, center = annihilators(law)
    last = [s for s in series.subspaces if s.dim][-1]
    reduced = left.dim - left.intersect(last).dim
    cs, _ = characteristic_sequence(law, samples, seed)
    prof = filiform_profile(law, samples, seed)
    grad = natural_gradation(law)
    return InvariantVector(
        dim=law.dim, series_dims=tuple(series.dims), nilindex=series.nilindex,
        left_ann_dim=left.dim, right_ann_dim=right.dim, center_dim=center.dim,
        reduced_left_ann_dim=reduced, split_rank=split_abelian_rank(law),
        charseq=tuple(cs), layer_dims=tuple(grad.layer_dims), is_lie=is_lie(law),
        p=prof.p, algebra_type=prof.algebra_type.value, positions=tuple(prof.positions),
        generic_rank=generic_ranks(law, samples, seed), battery=subspace_battery(law))


# --------------------------------------------------------------------------
# graded isomorphism search
# --------------------------------------------------------------------------

SEARCH_GRID = tuple(as_scalar(v) for v in (0, 1, -1, 2, -2, "1/2", "-1/2", "i", "-i", "1+i", "1-i"))


@dataclass
class NotFoundWithinGrid:
    tried: int
    grid_size: int
    note: str = "consistent with non-isomorphism; not a proof"


@dataclass
class NotIsomorphic:
    reason: str


def _generator_words(law: AlgebraLaw, gens: Sequence[tuple]):
    """Left-normed words in ``gens`` whose values form a basis of ``law``.

    Returns ``(words, values)`` where each word is a tuple of generator
    indices ``(g0, g1, ...)`` standing for [[g0, g1], ...], or None if the
    generators do not generate the algebra.
    """
    n = law.dim
    words = [(k,) for k in range(len(gens))]
    values = [tuple(g) for g in gens]
    span = Subspace.span(values, n)
    if span.dim != len(gens):
        return None
    frontier = list(zip(words, values))
    while span.dim < n and frontier:
        nxt = []
        for w, v in frontier:
            for k, g in enumerate(gens):
                u = bracket(law, v, g)
                if any(u) and not span.contains_vector(u):
                    span = span + Subspace.span([u], n)
                    words.append(w + (k,))
                    values.append(u)
                    nxt.append((w + (k,), u))
        frontier = nxt
    if span.dim < n:
        return None
    return words, values


def _evaluate_word(law: AlgebraLaw, word, images):
    v = images[word[0]]
    for k in word[1:]:
        v = bracket(law, v, images[k])
    return v


def graded_iso_search(a: AlgebraLaw, b: AlgebraLaw, grid: Sequence = SEARCH_GRID,
                      budget: int = 200_000):
    """Search for ``P`` with ``verify_isomorphism(a, b, P)``.

    The degree-one layer of ``b`` generates ``b``; a homomorphism ``b -> a``
    is fixed by the images of those generators.  Images range over
    combinations of ``a``'s degree-one layer with coefficients from ``grid``;
    each candidate is extended along left-normed words and accepted only
    after :func:`verify_isomorphism` confirms it.
    """
    if a.dim != b.dim:
        return NotIsomorphic("dimensions differ")
    ga, gb = natural_gradation(a), natural_gradation(b)
    if tuple(ga.layer_dims) != tuple(gb.layer_dims):
        return NotIsomorphic(f"layer dims {ga.layer_dims} vs {gb.layer_dims}")
    n = a.dim
    gens_b = [tuple(v) for v in gb.layers[0]]
    layer_a = [tuple(v) for v in ga.layers[0]]
    found = _generator_words(b, gens_b)
    if found is None:
        return NotFoundWithinGrid(0, len(grid), "b is not generated by its degree-one layer")
    words, values = found
    # coordinates of b's basis in terms of the word values
    B = transpose(tuple(values))
    Binv = inverse(B)
    m, d = len(gens_b), len(layer_a)
    tried = 0
    for coeffs in itertools.product(grid, repeat=m * d):
        if tried >= budget:
            break
        tried += 1
        images = []
        for g in range(m):
            c = coeffs[g * d:(g + 1) * d]
            images.append(tuple(sum((c[t] * layer_a[t][k] for t in range(d)), ZERO)
                                for k in range(n)))
        if rank(tuple(images)) < m:
            continue
        word_images = [_evaluate_word(a, w, images) for w in words]
        W = transpose(tuple(word_images))
        P = matmul(W, Binv)  # columns: images of b's basis vectors in a
        if not det(P):
            continue
        if verify_isomorphism(a, b, P):
            return BasisChange(P)
    return NotFoundWithinGrid(tried, len(grid))

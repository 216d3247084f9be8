"""Nilpotent structure: Jordan partitions of R_x, characteristic sequences,
natural gradations and p-filiform profiles."""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import (AlgebraLaw, bracket_span, lower_central_series,
                      right_mult_matrix)
from .linalg import (Matrix, Subspace, gaussian_integer_form, integer_matmul,
                     integer_rank, matvec, row_basis, unit_vector,
                     vadd, vector)
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "NotNilpotentError", "GradationError", "AlgebraType", "Gradation",
    "FiliformProfile", "right_mult_matrix", "jordan_partition",
    "image_ranks", "characteristic_candidates", "characteristic_sequence",
    "natural_gradation", "filiform_profile", "filtration_degree",
    "DEFAULT_SEED", "DEFAULT_SAMPLES",
]

DEFAULT_SEED = 20060213
DEFAULT_SAMPLES = 8


class NotNilpotentError(ValueError):
    pass


class GradationError(ValueError):
    pass


class AlgebraType(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    NOT_APPLICABLE = "NotApplicable"


def image_ranks(M: Matrix) -> list[int]:
    """``[rank M^0, rank M^1, ...]`` down to the first repeated value."""
    n = len(M)
    if n == 0:
        return [0]
    re, im = gaussian_integer_form(M)
    return _integer_image_ranks(re, im)


def _integer_image_ranks(re, im) -> list[int]:
    ranks = [len(re)]
    pr, pi = re, im
    while True:
        ranks.append(integer_rank(pr, pi))
        if ranks[-1] == ranks[-2] or ranks[-1] == 0:
            break
        pr, pi = integer_matmul(pr, re, pi, im)
    return ranks


def _partition_from_ranks(ranks: list[int]) -> tuple[int, ...]:
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return tuple(parts)


class _IntegerRightMult:
    """``R_x`` as a pair of integer matrices, up to a positive scale.

    The structure constants are scaled to Gaussian integers once, so each
    candidate ``x`` costs only integer arithmetic.
    """

    def __init__(self, law: AlgebraLaw):
        n = law.dim
        den = 1
        for vec in law.products.values():
            for c in vec.values():
                den = math.lcm(den, int(c._re.denominator), int(c._im.denominator))
        self.n = n
        self.entries = []          # (j, k, i, re, im): x_j * c contributes to R[k][i]
        for (i, j), vec in law.products.items():
            for k, c in vec.items():
                self.entries.append((j, k, i, int(c._re * den), int(c._im * den)))

    def __call__(self, x):
        n = self.n
        den = 1
        for c in x:
            if c:
                den = math.lcm(den, int(c._re.denominator), int(c._im.denominator))
        xr = [int(c._re * den) for c in x]
        xi = [int(c._im * den) for c in x]
        re = [[0] * n for _ in range(n)]
        im = [[0] * n for _ in range(n)]
        complex_ = False
        for j, k, i, cr, ci in self.entries:
            a, b = xr[j], xi[j]
            if a or b:
                re[k][i] += a * cr - b * ci
                v = a * ci + b * cr
                if v:
                    im[k][i] += v
                    complex_ = True
        return re, (im if complex_ else None)

def jordan_partition(M: Matrix) -> tuple[int, ...]:
    """Block sizes of a nilpotent matrix, decreasing, from ranks of powers.

    The number of blocks of size >= k is ``rank M^(k-1) - rank M^k``.
    """
    n = len(M)
    if n == 0:
        return ()
    return _partition_from_ranks(image_ranks(M))


def _require_nilpotent(law: AlgebraLaw):
    series = lower_central_series(law)
    if not series.nilpotent:
        raise NotNilpotentError(f"{law!r} is not nilpotent")
    return series


_SAMPLE_VALUES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                  Fraction(3), Fraction(1, 2), Fraction(-1, 3), Fraction(0))


def sample_vectors(n: int, count: int, seed: int = DEFAULT_SEED) -> list[tuple]:
    rng = random.Random(seed)
    return [vector(rng.choice(_SAMPLE_VALUES) for _ in range(n)) for _ in range(count)]


def characteristic_candidates(law: AlgebraLaw, extra_samples: int = DEFAULT_SAMPLES,
                              seed: int = DEFAULT_SEED, series=None):
    """``(C(x), x)`` for the documented candidate set outside ``L^2``.

    Candidates, in order: basis vectors, sums of two basis vectors, then
    ``extra_samples`` seeded pseudo-random vectors.
    """
    series = series or _require_nilpotent(law)
    n = law.dim
    derived = series.subspaces[1] if len(series.subspaces) > 1 else Subspace.zero(n)
    basis = [unit_vector(n, k) for k in range(n)]
    cands = [e for e in basis]
    cands += [vadd(basis[a], basis[b]) for a, b in combinations(range(n), 2)]
    cands += sample_vectors(n, extra_samples, seed)
    rmul = _IntegerRightMult(law)
    out = []
    seen = set()
    for x in cands:
        if x in seen or derived.contains_vector(x):
            continue
        seen.add(x)
        out.append((_partition_from_ranks(_integer_image_ranks(*rmul(x))), x))
    return out


def characteristic_sequence(law: AlgebraLaw, extra_samples: int = DEFAULT_SAMPLES,
                            seed: int = DEFAULT_SEED):
    """Lexicographic max of ``C(x)`` over the candidate set, and a witness.

    Over an infinite field the maximum cannot be taken exhaustively; the
    value is a lower bound that is exact whenever the candidate set contains
    a generic element (always the case for adapted bases).
    """
    cands = characteristic_candidates(law, extra_samples, seed)
    if not cands:
        return (), None
    best = max(c for c, _ in cands)
    witness = next(x for c, x in cands if c == best)
    return best, witness


def filtration_degree(series, v) -> int:
    """Largest ``k`` with ``v`` in ``L^k`` (``inf`` is reported as ``len``)."""
    deg = 0
    for k, sub in enumerate(series.subspaces, start=1):
        if sub.contains_vector(v):
            deg = k
        else:
            break
    return deg


@dataclass
class Gradation:
    layers: list          # list of Matrix: rows spanning each layer
    layer_dims: list
    homogeneous: bool     # products of layer vectors stay in the layer of summed degree

    @property
    def subspaces(self):
        n = sum(self.layer_dims)
        return [Subspace.span(rows, n) for rows in self.layers]


def natural_gradation(law: AlgebraLaw) -> Gradation:
    """Layers ``L^i / L^{i+1}`` lifted into ``L`` (degree 1 is ``L / L^2``).

    Each layer is spanned by rows of the RREF basis of ``L^i`` chosen greedily
    against ``L^{i+1}``.  Raises :class:`GradationError` if some
    ``[layer_i, layer_j]`` escapes ``L^{i+j}``.
    """
    series = _require_nilpotent(law)
    subs = series.subspaces
    layers = []
    for i in range(len(subs) - 1):
        comp = subs[i + 1].complement_in(subs[i])
        if comp:
            layers.append(comp)
    n = law.dim
    spans = [Subspace(n, row_basis(rows, n)) for rows in layers]
    homogeneous = True
    for a, A in enumerate(spans):
        for b, B in enumerate(spans):
            prod = bracket_span(law, A, B)
            target = a + b + 1  # 0-based index of L^{(a+1)+(b+1)}
            bound = subs[target] if target < len(subs) else Subspace.zero(n)
            if not bound.contains(prod):
                raise GradationError(f"[L_{a + 1}, L_{b + 1}] not contained in L^{a + b + 2}")
            layer = spans[target] if target < len(spans) else Subspace.zero(n)
            if not layer.contains(prod):
                homogeneous = False
    return Gradation(layers, [len(l) for l in layers], homogeneous)


@dataclass
class FiliformProfile:
    p: int | None
    algebra_type: AlgebraType
    positions: tuple
    charseq: tuple
    witness: tuple | None = field(default=None, repr=False)


def _p_from_charseq(cs: tuple, n: int):
    if not cs or any(c != 1 for c in cs[1:]):
        return None
    return n - cs[0]


def _heads_chain(law, x, length) -> bool:
    R = right_mult_matrix(law, x)
    v = x
    for _ in range(length - 1):
        v = matvec(R, v)
    return any(v)


def filiform_profile(law: AlgebraLaw, extra_samples: int = DEFAULT_SAMPLES,
                     seed: int = DEFAULT_SEED) -> FiliformProfile:
    """p, type I/II and the gradation positions ``r_1 <= ... <= r_p``.

    Type I iff some maximal witness ``x`` satisfies ``R_x^(n-p-1) x != 0``.
    Positions are the filtration degrees induced on ``L / Im R_x`` with one
    degree-1 slot (the generator) removed.
    """
    series = _require_nilpotent(law)
    n = law.dim
    cands = characteristic_candidates(law, extra_samples, seed, series)
    if not cands:
        return FiliformProfile(None, AlgebraType.NOT_APPLICABLE, (), ())
    cs = max(c for c, _ in cands)
    p = _p_from_charseq(cs, n)
    if p is None:
        return FiliformProfile(None, AlgebraType.NOT_APPLICABLE, (), cs)
    witnesses = [x for c, x in cands if c == cs]
    length = n - p
    typeI = [x for x in witnesses if _heads_chain(law, x, length)]
    if typeI:
        atype, x = AlgebraType.TYPE_I, typeI[0]
    else:
        atype, x = AlgebraType.TYPE_II, witnesses[0]
    image = Subspace.span([matvec(right_mult_matrix(law, x), e)
                           for e in (unit_vector(n, k) for k in range(n))], n)
    # count of quotient vectors with degree >= k is dim(L^k + W) - dim W
    counts = [(s + image).dim - image.dim for s in series.subspaces]
    degrees = []
    for k in range(len(counts)):
        here = counts[k] - (counts[k + 1] if k + 1 < len(counts) else 0)
        degrees.extend([k + 1] * here)
    if degrees and degrees[0] == 1:
        degrees = degrees[1:]
    return FiliformProfile(p, atype, tuple(degrees), cs, x)

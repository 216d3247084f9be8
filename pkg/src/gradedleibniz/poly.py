"""Sparse multivariate polynomials with Q(i) coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs, so
polynomials over different variable sets combine without alignment.
Only construction, ring operations, substitution, evaluation and zero
testing are provided.
"""
from __future__ import annotations

import re
from typing import Mapping

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["Poly", "var", "const", "natural_key"]

Monomial = tuple


def natural_key(name: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), [(natural_key(v), e) for v, e in m])


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[tuple(sorted(m))] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    # construction -------------------------------------------------------
    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        c = as_scalar(x)
        return Poly._raw({(): c} if c else {})

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for m in self.terms for v, _ in m}
        return tuple(sorted(names, key=natural_key))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> Scalar:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def leading_coefficient(self) -> Scalar:
        return self.sorted_terms()[0][1] if self.terms else ZERO

    def monic(self) -> "Poly":
        """Scaled so that the leading term (graded order) has coefficient 1."""
        if not self.terms:
            return self
        inv = self.leading_coefficient().inverse()
        return Poly._raw({m: c * inv for m, c in self.terms.items()})

    # ring operations ------------------------------------------------------
    def __add__(self, other):
        o = Poly.coerce(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        o = Poly.coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # substitution -----------------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Replace variables by polynomials or scalars."""
        if not mapping:
            return self
        images = {k: Poly.coerce(v) for k, v in mapping.items()}
        out = Poly()
        for m, c in self.terms.items():
            term = Poly._raw({(): c})
            rest = []
            for v, e in m:
                if v in images:
                    term = term * images[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly._raw({tuple(rest): ONE})
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]) -> Scalar:
        """Value at a point assigning every variable that occurs."""
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * as_scalar(point[v]) ** e
            total = total + t
        return total

    def coefficients_in(self, name: str) -> dict[int, "Poly"]:
        """``{k: coefficient of name^k}`` viewing self as a polynomial in ``name``."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for v, e in m:
                if v == name:
                    k = e
                else:
                    rest.append((v, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly._raw(t) for k, t in sorted(out.items())}

    # text ----------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(f"({c})" if "+" in str(c)[1:] or "-" in str(c)[1:] else str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = str(c)
                cs = f"({cs})" if ("+" in cs[1:] or "-" in cs[1:]) else cs
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({str(self)!r})"


def var(name: str) -> Poly:
    return Poly._raw({((name, 1),): ONE})


def const(c) -> Poly:
    return Poly.coerce(c)

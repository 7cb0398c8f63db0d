"""Sparse Laurent polynomials in A with nonnegative powers of t.

Terms are stored as ``{(a_exp, t_exp): coef}`` with exact integer
coefficients. Coefficients are range-checked against a signed 64-bit
bound by default so that results which would not fit a machine word fail
loudly; call :func:`set_coefficient_bound` with ``None`` to lift the check.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "CoefficientOverflow",
    "SkeinPolynomial",
    "coefficient_bound",
    "set_coefficient_bound",
    "loop_factor",
]

_INT64_MAX = 2**63 - 1
_bound: int | None = _INT64_MAX


class CoefficientOverflow(ArithmeticError):
    """A coefficient left the configured machine-word range."""


def coefficient_bound() -> int | None:
    return _bound


def set_coefficient_bound(bound: int | None) -> int | None:
    """Set the coefficient magnitude bound; ``None`` means arbitrary precision.

    Returns the previous bound so callers can restore it.
    """
    global _bound
    previous = _bound
    _bound = bound
    return previous


def _checked(coef: int) -> int:
    if _bound is not None and not -_bound - 1 <= coef <= _bound:
        raise CoefficientOverflow(f"coefficient {coef} exceeds bound {_bound}")
    return coef


class SkeinPolynomial:
    """An element of Z[A, A^-1, t]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for (a, k), c in terms.items():
                if k < 0:
                    raise ValueError(f"negative t exponent {k}")
                if c:
                    clean[(int(a), int(k))] = _checked(int(c))
        self._terms = clean
        self._hash: int | None = None

    # construction helpers

    @classmethod
    def monomial(cls, coef: int = 1, a: int = 0, t: int = 0) -> SkeinPolynomial:
        return cls({(a, t): coef})

    @classmethod
    def zero(cls) -> SkeinPolynomial:
        return cls()

    @classmethod
    def one(cls) -> SkeinPolynomial:
        return cls({(0, 0): 1})

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], int]) -> SkeinPolynomial:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # container protocol

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        """Terms in canonical order: t exponent, then A exponent, ascending."""
        for key in sorted(self._terms, key=lambda at: (at[1], at[0])):
            yield key, self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, a: int, t: int = 0) -> int:
        return self._terms.get((a, t), 0)

    # arithmetic

    def __add__(self, other: SkeinPolynomial | int) -> SkeinPolynomial:
        other = _coerce(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = _checked(out.get(key, 0) + c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return SkeinPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> SkeinPolynomial:
        return SkeinPolynomial._raw({k: _checked(-c) for k, c in self._terms.items()})

    def __sub__(self, other: SkeinPolynomial | int) -> SkeinPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other: SkeinPolynomial | int) -> SkeinPolynomial:
        return _coerce(other) - self

    def __mul__(self, other: SkeinPolynomial | int) -> SkeinPolynomial:
        other = _coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, t1), c1 in self._terms.items():
            for (a2, t2), c2 in other._terms.items():
                key = (a1 + a2, t1 + t2)
                out[key] = _checked(out.get(key, 0) + _checked(c1 * c2))
        return SkeinPolynomial._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SkeinPolynomial:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            ((a, t), c), = self._terms.items()
            if t or c not in (1, -1):
                raise ValueError("only units c*A^a with c = +-1 are invertible")
            return SkeinPolynomial.monomial(c ** (-n), a * n, 0)
        result = SkeinPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, a: int = 0, t: int = 0, coef: int = 1) -> SkeinPolynomial:
        """Multiply by the monomial ``coef * A^a * t^t``."""
        if t < 0 and any(k + t < 0 for _, k in self._terms):
            raise ValueError("shift would create a negative t exponent")
        return SkeinPolynomial._raw(
            {(x + a, k + t): _checked(c * coef) for (x, k), c in self._terms.items()}
        )

    def invert_a(self) -> SkeinPolynomial:
        """Substitute A -> A^-1."""
        return SkeinPolynomial._raw({(-a, k): c for (a, k), c in self._terms.items()})

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SkeinPolynomial.monomial(other)
        if not isinstance(other, SkeinPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # degrees

    def max_degree_a(self) -> int:
        self._require_nonzero()
        return max(a for a, _ in self._terms)

    def min_degree_a(self) -> int:
        self._require_nonzero()
        return min(a for a, _ in self._terms)

    def span_a(self) -> int:
        return self.max_degree_a() - self.min_degree_a()

    def max_degree_t(self) -> int:
        self._require_nonzero()
        return max(k for _, k in self._terms)

    def t_part(self, k: int) -> SkeinPolynomial:
        """The coefficient of ``t^k`` as a polynomial in A alone."""
        return SkeinPolynomial._raw({(a, 0): c for (a, j), c in self._terms.items() if j == k})

    def _require_nonzero(self) -> None:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")

    # text forms

    def to_text(self) -> str:
        """Canonical ``coef*A^a*t^k`` form, terms joined by `` + ``."""
        if not self._terms:
            return "0"
        parts = []
        for (a, k), c in self.items():
            s = str(c)
            if a:
                s += f"*A^{a}"
            if k:
                s += f"*t^{k}"
            parts.append(s)
        return " + ".join(parts)

    def to_q_text(self) -> str:
        """Display form in q = A^-4; q exponents are exact rationals."""
        if not self._terms:
            return "0"
        parts = []
        for (a, k), c in self.items():
            s = str(c)
            e = Fraction(-a, 4)
            if e:
                s += f"*q^{e}" if e.denominator == 1 else f"*q^({e})"
            if k:
                s += f"*t^{k}"
            parts.append(s)
        return " + ".join(parts)

    def to_object(self) -> list[list[int]]:
        return [[a, k, c] for (a, k), c in self.items()]

    @classmethod
    def from_object(cls, rows: Iterable[Iterable[int]]) -> SkeinPolynomial:
        terms: dict[tuple[int, int], int] = {}
        for a, k, c in rows:
            terms[(a, k)] = terms.get((a, k), 0) + c
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> SkeinPolynomial:
        """Inverse of :meth:`to_text`."""
        text = text.strip()
        if text == "0":
            return cls()
        terms: dict[tuple[int, int], int] = {}
        for chunk in text.split(" + "):
            m = _TERM_RE.fullmatch(chunk.strip())
            if not m:
                raise ValueError(f"bad polynomial term {chunk!r}")
            key = (int(m["a"] or 0), int(m["t"] or 0))
            terms[key] = terms.get(key, 0) + int(m["c"])
        return cls(terms)

    def __repr__(self) -> str:
        return f"SkeinPolynomial({self.to_text()!r})"

    __str__ = to_text


_TERM_RE = re.compile(r"(?P<c>-?\d+)(?:\*A\^(?P<a>-?\d+))?(?:\*t\^(?P<t>\d+))?")


def _coerce(x: SkeinPolynomial | int) -> SkeinPolynomial:
    if isinstance(x, SkeinPolynomial):
        return x
    if isinstance(x, int):
        return SkeinPolynomial.monomial(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def loop_factor() -> SkeinPolynomial:
    """-A^2 - A^-2, the value of a disjoint trivial circle."""
    return SkeinPolynomial({(2, 0): -1, (-2, 0): -1})

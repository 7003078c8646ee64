"""Exact multivariate Laurent polynomials with rational coefficients.

Polynomials are stored as a map from integer exponent vectors to nonzero
``Fraction`` coefficients.  All arithmetic is exact; transformations with
non-rational scaling produce a parallel floating-complex variant
(:class:`ComplexLaurentPolynomial`) that exact verification code refuses
to accept.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

from .errors import DomainError, InexactCoefficientError, InvalidTransformError

Exponent = tuple[int, ...]


def _clean_terms(n: int, terms: Mapping[Exponent, Fraction]) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for exp, coeff in terms.items():
        exp = tuple(int(e) for e in exp)
        if len(exp) != n:
            raise ValueError(f"exponent {exp} does not have length {n}")
        c = Fraction(coeff)
        if c != 0:
            out[exp] = out.get(exp, Fraction(0)) + c
            if out[exp] == 0:
                del out[exp]
    return out


@dataclass(frozen=True)
class LaurentPolynomial:
    """A Laurent polynomial in ``n`` variables with exact rational coefficients."""

    n: int
    terms: dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean_terms(self.n, self.terms))

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "LaurentPolynomial":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def monomial(cls, n: int, exp: Iterable[int], coeff=1) -> "LaurentPolynomial":
        return cls(n, {tuple(int(e) for e in exp): Fraction(coeff)})

    @classmethod
    def variable(cls, n: int, j: int) -> "LaurentPolynomial":
        """The coordinate variable x_j (0-based index)."""
        exp = [0] * n
        exp[j] = 1
        return cls.monomial(n, exp)

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> set[Exponent]:
        return set(self.terms)

    def coefficient(self, exp: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(int(e) for e in exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in lexicographic exponent order (the canonical iteration order)."""
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, Rational):
            return self == LaurentPolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{j}^{e}" if e != 1 else f"x{j}"
                for j, e in enumerate(exp) if e != 0
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- ring operations ------------------------------------------------

    def __add__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return LaurentPolynomial(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, Rational):
            return LaurentPolynomial(
                self.n, {e: c * Fraction(other) for e, c in self.terms.items()}
            )
        other = self._coerce(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = LaurentPolynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            return other
        if isinstance(other, Rational):
            return LaurentPolynomial.constant(self.n, other)
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other)!r}")

    # -- evaluation -----------------------------------------------------

    def evaluate(self, x: Iterable[complex]) -> complex:
        """Evaluate at a complex point, summing in lexicographic exponent order."""
        x = tuple(complex(v) for v in x)
        if len(x) != self.n:
            raise ValueError("point dimension mismatch")
        total = 0j
        for exp, c in self.sorted_terms():
            mono = 1 + 0j
            for v, e in zip(x, exp):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise DomainError("zero coordinate with negative exponent")
                    mono = 0j
                    break
                mono *= v ** e
            total += complex(c) * mono
        return total

    def evaluate_exact(self, s: Iterable) -> Fraction:
        """Evaluate at a rational point with exact arithmetic.

        Requires nonnegative exponents at zero coordinates.
        """
        s = tuple(Fraction(v) for v in s)
        if len(s) != self.n:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for exp, c in self.sorted_terms():
            mono = Fraction(1)
            for v, e in zip(s, exp):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise DomainError("zero coordinate with negative exponent")
                    mono = Fraction(0)
                    break
                mono *= v ** e
            total += c * mono
        return total

    # -- transformations ------------------------------------------------

    def monomial_substitution(self, v, t=None, a=None, ell: int = 1):
        """Apply x^a * p(t_1 x^{v_1}, ..., t_n x^{v_n})^ell.

        ``v`` is an integer n-by-n matrix given as rows; ``t`` a nonzero scale
        vector (rationals keep the result exact, anything else yields a
        :class:`ComplexLaurentPolynomial`); ``a`` an integer shift vector.
        """
        n = self.n
        rows = [tuple(int(e) for e in row) for row in v]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("v must be an n-by-n integer matrix")
        if _int_det(rows) == 0:
            raise InvalidTransformError("singular exponent matrix")
        if t is None:
            t = (1,) * n
        t = tuple(t)
        if a is None:
            a = (0,) * n
        a = tuple(int(e) for e in a)
        if ell < 1:
            raise ValueError("ell must be a positive integer")
        if any(val == 0 for val in t):
            raise DomainError("t must have nonzero entries")

        exact = all(isinstance(val, Rational) for val in t)
        if exact:
            terms: dict[Exponent, Fraction] = {}
            for exp, c in self.terms.items():
                new_exp = tuple(
                    sum(exp[j] * rows[j][k] for j in range(n)) for k in range(n)
                )
                scale = Fraction(1)
                for val, e in zip(t, exp):
                    scale *= Fraction(val) ** e
                terms[new_exp] = terms.get(new_exp, Fraction(0)) + c * scale
            result = LaurentPolynomial(n, terms) ** ell
            shifted = {
                tuple(e + d for e, d in zip(exp, a)): c
                for exp, c in result.terms.items()
            }
            return LaurentPolynomial(n, shifted)

        cterms: dict[Exponent, complex] = {}
        for exp, c in self.terms.items():
            new_exp = tuple(
                sum(exp[j] * rows[j][k] for j in range(n)) for k in range(n)
            )
            scale = 1 + 0j
            for val, e in zip(t, exp):
                scale *= complex(val) ** e
            cterms[new_exp] = cterms.get(new_exp, 0j) + complex(c) * scale
        result = ComplexLaurentPolynomial(n, cterms) ** ell
        shifted_c = {
            tuple(e + d for e, d in zip(exp, a)): c
            for exp, c in result.terms.items()
        }
        return ComplexLaurentPolynomial(n, shifted_c)

    def hadamard_power(self, r):
        """Coefficientwise r-th power.

        Exact for nonnegative integer r (r = 0 gives the support indicator);
        otherwise all coefficients must be strictly positive and the result
        carries floating-point coefficients.
        """
        if isinstance(r, int) or (isinstance(r, Rational) and Fraction(r).denominator == 1):
            k = int(r)
            if k >= 0:
                return LaurentPolynomial(self.n, {e: c ** k for e, c in self.terms.items()})
        if any(c <= 0 for c in self.terms.values()):
            raise DomainError("fractional Hadamard power needs strictly positive coefficients")
        return ComplexLaurentPolynomial(
            self.n, {e: complex(float(c) ** float(r)) for e, c in self.terms.items()}
        )

    def shift(self, a: Iterable[int]) -> "LaurentPolynomial":
        a = tuple(int(e) for e in a)
        return LaurentPolynomial(
            self.n,
            {tuple(e + d for e, d in zip(exp, a)): c for exp, c in self.terms.items()},
        )

    def scaled_to_integers(self) -> "LaurentPolynomial":
        """Canonical constant multiple: integer coefficients with unit content."""
        if self.is_zero():
            return self
        denom = lcm(*(c.denominator for c in self.terms.values()))
        numer = gcd(*(abs(c.numerator) for c in self.terms.values()))
        return self * Fraction(denom, numer)

    def newton_polytope(self):
        from .polytope import newton_polytope

        return newton_polytope(self)


class ComplexLaurentPolynomial:
    """Floating-coefficient companion of :class:`LaurentPolynomial`.

    Produced by transformations with non-rational scale vectors and by
    fractional Hadamard powers.  Exact verification operations reject it;
    the amoeba numerics accept either flavor.
    """

    inexact = True

    def __init__(self, n: int, terms: Mapping[Exponent, complex]):
        self.n = n
        self.terms = {
            tuple(int(e) for e in exp): complex(c)
            for exp, c in terms.items()
            if c != 0
        }

    @property
    def support(self) -> set[Exponent]:
        return set(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __mul__(self, other):
        if isinstance(other, ComplexLaurentPolynomial):
            terms: dict[Exponent, complex] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, 0j) + c1 * c2
            return ComplexLaurentPolynomial(self.n, terms)
        return ComplexLaurentPolynomial(
            self.n, {e: c * complex(other) for e, c in self.terms.items()}
        )

    def __pow__(self, k: int):
        result = ComplexLaurentPolynomial(self.n, {(0,) * self.n: 1})
        for _ in range(k):
            result = result * self
        return result

    def evaluate(self, x: Iterable[complex]) -> complex:
        x = tuple(complex(v) for v in x)
        total = 0j
        for exp, c in self.sorted_terms():
            mono = 1 + 0j
            for v, e in zip(x, exp):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise DomainError("zero coordinate with negative exponent")
                    mono = 0j
                    break
                mono *= v ** e
            total += c * mono
        return total

    def __repr__(self):
        return f"ComplexLaurentPolynomial(n={self.n}, {len(self.terms)} terms)"


def require_exact(p) -> LaurentPolynomial:
    """Reject the inexact polynomial flavor in exact-verification code paths."""
    if isinstance(p, LaurentPolynomial):
        return p
    raise InexactCoefficientError(
        "operation requires a polynomial with exact rational coefficients"
    )


def _int_det(rows: list[tuple[int, ...]]) -> int:
    """Exact integer determinant by fraction-free cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    det = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [tuple(r[k] for k in range(n) if k != j) for r in rows[1:]]
        det += (-1) ** j * rows[0][j] * _int_det(minor)
    return det

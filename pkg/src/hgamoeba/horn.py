"""Ore-Sato coefficients, canonical polytope coefficients and Horn systems.

The central constructions: the reciprocal-Gamma coefficient attached to an
integer polytope via its facet inequalities, the hypergeometric polynomial it
generates, derivation of the operator pairs (P_j, Q_j) from Gamma-quotient
telescoping, and exact symbolic application of the operators.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import DomainError
from .laurent import LaurentPolynomial, require_exact
from .polytope import (
    IntegerPolytope,
    LatticeSupport,
    lattice_points,
    zn_connected_components,
)

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class GammaFactor:
    """A factor Gamma(<A, s> + c)^sign of an Ore-Sato coefficient."""

    A: IntVec
    c: Fraction
    sign: int  # +1 numerator Gamma, -1 reciprocal Gamma

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(int(a) for a in self.A))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def argument(self, s: Sequence) -> Fraction:
        return sum((Fraction(a) * Fraction(x) for a, x in zip(self.A, s)), self.c)


@dataclass(frozen=True)
class LinearForm:
    """An affine form <A, s> + c used in the rational part of a coefficient."""

    A: IntVec
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(int(a) for a in self.A))
        object.__setattr__(self, "c", Fraction(self.c))


@dataclass(frozen=True)
class OreSatoCoefficient:
    """t^s * U(s) * prod Gamma(<A_i, s> + c_i)^{sign_i}.

    The rational part U(s) is a quotient of products of affine forms; general
    periodic factors are out of scope.
    """

    n: int
    factors: tuple[GammaFactor, ...] = ()
    exponential: tuple[Fraction, ...] | None = None
    rational_num: tuple[LinearForm, ...] = ()
    rational_den: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "rational_num", tuple(self.rational_num))
        object.__setattr__(self, "rational_den", tuple(self.rational_den))
        if self.exponential is not None:
            t = tuple(Fraction(v) for v in self.exponential)
            if len(t) != self.n:
                raise ValueError("exponential vector dimension mismatch")
            if any(v == 0 for v in t):
                raise DomainError("exponential vector must be nonzero")
            object.__setattr__(self, "exponential", t)

    def is_reciprocal_only(self) -> bool:
        return all(f.sign == -1 for f in self.factors)

    def value_at(self, s: Sequence[int]) -> Fraction:
        """Exact value at an integer point.

        Only defined for reciprocal-only Gamma factors with integer
        arguments (reciprocal Gamma at a nonpositive integer is zero);
        the rational part and a rational exponential are multiplied in.
        """
        s = tuple(int(x) for x in s)
        value = Fraction(1)
        for f in self.factors:
            arg = f.argument(s)
            if arg.denominator != 1:
                raise DomainError("Gamma factor with non-integer argument at this point")
            arg = int(arg)
            if f.sign == -1:
                if arg <= 0:
                    return Fraction(0)
                value /= factorial(arg - 1)
            else:
                if arg <= 0:
                    raise DomainError("numerator Gamma pole; reflect to reciprocal form first")
                value *= factorial(arg - 1)
        for form in self.rational_num:
            value *= sum((Fraction(a * x) for a, x in zip(form.A, s)), form.c)
        for form in self.rational_den:
            den = sum((Fraction(a * x) for a, x in zip(form.A, s)), form.c)
            if den == 0:
                raise DomainError("rational part has a pole at this point")
            value /= den
        if self.exponential is not None:
            for t, x in zip(self.exponential, s):
                value *= Fraction(t) ** x
        return value


@dataclass(frozen=True)
class HornSystem:
    """Per-direction operator pairs x_j P_j(theta) f = Q_j(theta) f."""

    n: int
    pairs: tuple[tuple[LaurentPolynomial, LaurentPolynomial], ...]


def psi_from_polytope(P: IntegerPolytope) -> OreSatoCoefficient:
    """The canonical reciprocal coefficient 1 / prod_j Gamma(1 - <B_j, s> - c_j)."""
    factors = [
        GammaFactor(tuple(-b for b in f.B), Fraction(1 - f.c), -1) for f in P.facets
    ]
    return OreSatoCoefficient(P.n, tuple(factors))


def psi_coefficient(P: IntegerPolytope, s: Sequence[int]) -> Fraction:
    """Exact value of the canonical polytope coefficient at a lattice point.

    Positive exactly on the lattice points of P, zero elsewhere.
    """
    value = Fraction(1)
    for f in P.facets:
        arg = 1 - f.value(s)  # 1 - <B,s> - c
        if arg <= 0:
            return Fraction(0)
        value /= factorial(arg - 1)
    return value


def hypergeometric_polynomial(P: IntegerPolytope) -> LaurentPolynomial:
    """The canonical polynomial of the polytope, scaled to coprime integers.

    Emits a warning (not an error) when the lattice points split into several
    unit-step components; the construction still goes through but the result
    decomposes into independent solutions of the same system.
    """
    S = lattice_points(P)
    comps = zn_connected_components(S)
    if len(comps) > 1:
        names = ", ".join(str(sorted(c.points)) for c in comps)
        warnings.warn(
            f"lattice support splits into {len(comps)} unit-step components: {names}",
            stacklevel=2,
        )
    terms = {s: psi_coefficient(P, s) for s in S.points}
    return LaurentPolynomial(P.n, terms).scaled_to_integers()


def polynomial_from_coefficient(
    phi: OreSatoCoefficient, lo: Sequence[int], hi: Sequence[int]
) -> LaurentPolynomial:
    """Polynomial with coefficients phi(s) over an integer box scan."""
    import itertools

    ranges = [range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    terms = {}
    for s in itertools.product(*ranges):
        v = phi.value_at(s)
        if v != 0:
            terms[s] = v
    return LaurentPolynomial(phi.n, terms)


def reflect_to_reciprocal(phi: OreSatoCoefficient) -> OreSatoCoefficient:
    """Replace each numerator Gamma(l(s)) by 1/Gamma(1 - l(s)).

    The per-direction quotient functions are unchanged up to an exponential
    factor, which is dropped together with any existing exponential part
    (it affects neither the support nor the amoeba topology).
    """
    factors = []
    for f in phi.factors:
        if f.sign == 1:
            factors.append(GammaFactor(tuple(-a for a in f.A), 1 - f.c, -1))
        else:
            factors.append(f)
    return OreSatoCoefficient(
        phi.n, tuple(factors), None, phi.rational_num, phi.rational_den
    )


def _affine(n: int, A: Sequence[int], c: Fraction) -> LaurentPolynomial:
    terms = {(0,) * n: Fraction(c)}
    for j, a in enumerate(A):
        if a:
            exp = [0] * n
            exp[j] = 1
            terms[tuple(exp)] = Fraction(a)
    return LaurentPolynomial(n, terms)


def horn_system(phi: OreSatoCoefficient) -> HornSystem:
    """Operator pairs (P_j, Q_j) from Gamma-quotient telescoping.

    For each factor Gamma(<A,s>+c)^sigma and direction j with d = A_j, the
    quotient Gamma(<A,s>+d+c)/Gamma(<A,s>+c) contributes a telescoping
    product of |d| affine factors to P_j or to Q_j (written in the shifted
    variable so that the quotient reads P_j(s)/Q_j(s+e_j)).  Affine factors
    of the rational part telescope the same way, a numerator form L acting
    as Gamma(L) and a denominator form M as 1/Gamma(M+1), which reproduces
    the annihilator operators for generic supports.
    """
    n = phi.n
    if len(phi.factors) + len(phi.rational_num) + len(phi.rational_den) < n:
        raise DomainError("need at least n factors for a holonomic Horn system")
    effective = list(phi.factors)
    effective += [GammaFactor(f.A, f.c, 1) for f in phi.rational_num]
    effective += [GammaFactor(f.A, f.c + 1, -1) for f in phi.rational_den]

    pairs = []
    for j in range(n):
        P = LaurentPolynomial.constant(n, 1)
        Q = LaurentPolynomial.constant(n, 1)
        for f in effective:
            d = f.A[j]
            if d == 0:
                continue
            if f.sign == 1 and d > 0:
                for ell in range(d):
                    P = P * _affine(n, f.A, f.c + ell)
            elif f.sign == 1 and d < 0:
                for ell in range(-d):
                    Q = Q * _affine(n, f.A, f.c + ell)
            elif f.sign == -1 and d > 0:
                for ell in range(d):
                    Q = Q * _affine(n, f.A, f.c - d + ell)
            else:  # sign == -1, d < 0
                for ell in range(-d):
                    P = P * _affine(n, f.A, f.c + d + ell)
        if phi.exponential is not None:
            P = P * Fraction(phi.exponential[j])
        pairs.append((P, Q))
    return HornSystem(n, tuple(pairs))


def apply_horn_operator(p: LaurentPolynomial, j: int, H: HornSystem) -> LaurentPolynomial:
    """Exact action of x_j P_j(theta) - Q_j(theta) on a polynomial."""
    p = require_exact(p)
    P, Q = H.pairs[j]
    terms: dict[IntVec, Fraction] = {}
    for s, a in p.terms.items():
        up = tuple(e + (1 if k == j else 0) for k, e in enumerate(s))
        pv = a * P.evaluate_exact(s)
        qv = a * Q.evaluate_exact(s)
        if pv:
            terms[up] = terms.get(up, Fraction(0)) + pv
        if qv:
            terms[s] = terms.get(s, Fraction(0)) - qv
    return LaurentPolynomial(p.n, terms)


def is_horn_solution(
    p: LaurentPolynomial,
    phi: OreSatoCoefficient | HornSystem,
    up_to_monomial: bool = True,
) -> bool:
    """True iff every operator of the Horn system maps p to exactly zero.

    With ``up_to_monomial`` (the default) a polynomial is also accepted when
    some monomial multiple x^gamma p solves the system: solutions normalized
    into the positive quadrant are identified with their Laurent translates,
    consistent with identifying Newton polytopes up to translation.  The
    shift search needs the coefficient data, so it only runs when ``phi`` is
    an :class:`OreSatoCoefficient`.
    """
    p = require_exact(p)
    H = phi if isinstance(phi, HornSystem) else horn_system(phi)
    if _solves_exactly(p, H):
        return True
    if not up_to_monomial or p.is_zero() or isinstance(phi, HornSystem):
        return False
    for gamma in _candidate_shifts(p, phi, H):
        if _solves_exactly(p.shift(gamma), H):
            return True
    return False


def _solves_exactly(p: LaurentPolynomial, H: HornSystem) -> bool:
    return all(apply_horn_operator(p, j, H).is_zero() for j in range(H.n))


def _candidate_shifts(
    p: LaurentPolynomial, phi: OreSatoCoefficient, H: HornSystem
) -> Iterable[IntVec]:
    """Integer shifts worth testing, cheapest-necessary-condition first.

    The telescoped factors vanish only within a bounded distance of the
    support (bounded by the factor offsets and norms), so shifts outside
    that box cannot create new solutions.  One adjacent coefficient pair
    per direction serves as a fast filter before the full operator check.
    """
    import itertools

    n = p.n
    lo = [min(e[k] for e in p.terms) for k in range(n)]
    hi = [max(e[k] for e in p.terms) for k in range(n)]
    span = max(h - l for l, h in zip(lo, hi))
    forms = list(phi.factors) + [
        GammaFactor(f.A, f.c, 1) for f in phi.rational_num
    ] + [GammaFactor(f.A, f.c, -1) for f in phi.rational_den]
    if not forms:
        return
    c_bound = max(abs(f.c) for f in forms)
    a_bound = max(sum(abs(a) for a in f.A) for f in forms)
    radius = int(span + c_bound + a_bound + 2)

    # one adjacent support pair per direction as a necessary condition
    probes = []
    for j in range(n):
        P, Q = H.pairs[j]
        for s in sorted(p.terms):
            up = tuple(e + (1 if k == j else 0) for k, e in enumerate(s))
            if up in p.terms:
                probes.append((j, s, up, p.terms[s], p.terms[up]))
                break

    rng = range(-radius, radius + 1)
    for gamma in itertools.product(rng, repeat=n):
        if all(g == 0 for g in gamma):
            continue
        ok = True
        for j, s, up, a, b in probes:
            P, Q = H.pairs[j]
            sg = tuple(e + g for e, g in zip(s, gamma))
            ug = tuple(e + g for e, g in zip(up, gamma))
            if a * P.evaluate_exact(sg) != b * Q.evaluate_exact(ug):
                ok = False
                break
        if ok:
            yield gamma


def coefficient_recurrence_check(
    table: dict[IntVec, Fraction], phi: OreSatoCoefficient | HornSystem
) -> bool:
    """Check phi(s) P_j(s) = phi(s+e_j) Q_j(s+e_j) over the support, absent = 0."""
    H = phi if isinstance(phi, HornSystem) else horn_system(phi)
    n = H.n
    probe: set[IntVec] = set()
    for s in table:
        probe.add(tuple(s))
        for j in range(n):
            probe.add(tuple(e - (1 if k == j else 0) for k, e in enumerate(s)))
    for j in range(n):
        P, Q = H.pairs[j]
        for s in probe:
            up = tuple(e + (1 if k == j else 0) for k, e in enumerate(s))
            lhs = table.get(s, Fraction(0)) * P.evaluate_exact(s)
            rhs = table.get(up, Fraction(0)) * Q.evaluate_exact(up)
            if lhs != rhs:
                return False
    return True


def annihilator_for_support(S: LatticeSupport) -> OreSatoCoefficient:
    """Rational-part-only coefficient whose Horn system kills anything supported in S."""
    pts = S.sorted_points()
    num = [
        LinearForm((1,) * S.n, Fraction(-sum(alpha))) for alpha in pts
    ]
    den = []
    for j in range(S.n):
        unit = tuple(1 if k == j else 0 for k in range(S.n))
        den += [LinearForm(unit, Fraction(-alpha[j])) for alpha in pts]
    return OreSatoCoefficient(S.n, (), None, tuple(num), tuple(den))

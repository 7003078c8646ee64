"""Shared fixtures: reference polynomials, coefficients and systems.

The big coefficient tables are frozen oracles transcribed from published
worked examples; the constructions under test must reproduce them exactly.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from hgamoeba import (
    F1Parameters,
    GammaFactor,
    LaurentPolynomial,
    OreSatoCoefficient,
    facet_description,
    hypergeometric_polynomial,
    polynomial_from_coefficient,
)

# -- acceptance-criterion lines, printed in the terminal summary ----------

_CRITERION_LINES: list[str] = []


def record_criterion(num: int, name: str, ok: bool) -> None:
    _CRITERION_LINES.append(
        f"[PRIMARY] criterion {num} ({name}): {'PASS' if ok else 'FAIL'}"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)


# -- reference data -------------------------------------------------------

# p0: 21-term polynomial solution of the confluent system with coefficient
# phi0 = (Gamma(t+1) Gamma(1+6s-3t) Gamma(31-6s-2t))^{-1}
P0_TERMS = {
    (0, 0): 1,
    (1, 0): 593775,
    (2, 0): 86493225,
    (3, 0): 86493225,
    (4, 0): 593775,
    (5, 0): 1,
    (1, 1): 39331656000,
    (2, 1): 34936343442000,
    (3, 1): 55898149507200,
    (4, 1): 216324108000,
    (1, 2): 54513675216000,
    (2, 2): 2112950051372160000,
    (3, 2): 6867087666959520000,
    (4, 2): 10357598291040000,
    (2, 3): 15382276373989324800000,
    (3, 3): 169205040113882572800000,
    (4, 3): 33807200821954560000,
    (2, 4): 3045690722049886310400000,
    (3, 4): 639595051630476125184000000,
    (3, 5): 184203374869577124052992000000,
    (3, 6): 368406749739154248105984000000,
}

# p1: 37-term polynomial supported in an octagon
P1_TERMS = {
    (2, 0): 21, (3, 0): 64, (4, 0): 21,
    (1, 1): 126, (2, 1): 2016, (3, 1): 4704, (4, 1): 2016, (5, 1): 126,
    (0, 2): 21, (1, 2): 2016, (2, 2): 22050, (3, 2): 47040, (4, 2): 22050,
    (5, 2): 2016, (6, 2): 21,
    (0, 3): 64, (1, 3): 4704, (2, 3): 47040, (3, 3): 98000, (4, 3): 47040,
    (5, 3): 4704, (6, 3): 64,
    (0, 4): 21, (1, 4): 2016, (2, 4): 22050, (3, 4): 47040, (4, 4): 22050,
    (5, 4): 2016, (6, 4): 21,
    (1, 5): 126, (2, 5): 2016, (3, 5): 4704, (4, 5): 2016, (5, 5): 126,
    (2, 6): 21, (3, 6): 64, (4, 6): 21,
}

# p2: 21-term polynomial solution of the three-Gamma-factor system
P2_TERMS = {
    (5, 0): 2421619200, (6, 0): 172972800, (7, 0): 2882880,
    (8, 0): 14560, (9, 0): 20,
    (2, 1): 174356582400, (3, 1): 48432384000, (4, 1): 2421619200,
    (5, 1): 34594560, (6, 1): 160160, (7, 1): 208,
    (1, 2): 2421619200, (2, 2): 691891200, (3, 2): 21621600,
    (4, 2): 160160, (5, 2): 286,
    (1, 3): 524160, (2, 3): 14560, (3, 3): 56,
    (0, 4): 32, (1, 4): 1,
}

# p3: hypergeometric polynomial of the quadrilateral (2,0),(3,2),(2,3),(0,1)
P3_TERMS = {
    (2, 0): 240, (0, 1): 3, (1, 1): 240, (2, 1): 1080,
    (1, 2): 30, (2, 2): 180, (3, 2): 36, (2, 3): 2,
}

QUADRILATERAL_VERTICES = [(2, 0), (3, 2), (2, 3), (0, 1)]
OCTAGON_VERTICES = [
    (2, 0), (4, 0), (6, 2), (6, 4), (4, 6), (2, 6), (0, 4), (0, 2)
]


def _lp(terms) -> LaurentPolynomial:
    return LaurentPolynomial(2, {e: Fraction(c) for e, c in terms.items()})


@pytest.fixture(scope="session")
def p0_paper() -> LaurentPolynomial:
    return _lp(P0_TERMS)


@pytest.fixture(scope="session")
def p1_paper() -> LaurentPolynomial:
    return _lp(P1_TERMS)


@pytest.fixture(scope="session")
def p2_paper() -> LaurentPolynomial:
    return _lp(P2_TERMS)


@pytest.fixture(scope="session")
def p3_paper() -> LaurentPolynomial:
    return _lp(P3_TERMS)


@pytest.fixture(scope="session")
def p3_constructed() -> LaurentPolynomial:
    return hypergeometric_polynomial(facet_description(QUADRILATERAL_VERTICES))


@pytest.fixture(scope="session")
def phi_two_lines() -> OreSatoCoefficient:
    """Gamma(-s-t+1) Gamma(2s-t-2) Gamma(-s+2t-2); solved by x+y+6xy+x^2y^2."""
    return OreSatoCoefficient(
        2,
        (
            GammaFactor((-1, -1), Fraction(1), 1),
            GammaFactor((2, -1), Fraction(-2), 1),
            GammaFactor((-1, 2), Fraction(-2), 1),
        ),
    )


@pytest.fixture(scope="session")
def phi0() -> OreSatoCoefficient:
    """(Gamma(t+1) Gamma(1+6s-3t) Gamma(31-6s-2t))^{-1}."""
    return OreSatoCoefficient(
        2,
        (
            GammaFactor((0, 1), Fraction(1), -1),
            GammaFactor((6, -3), Fraction(1), -1),
            GammaFactor((-6, -2), Fraction(31), -1),
        ),
    )


@pytest.fixture(scope="session")
def phi1() -> OreSatoCoefficient:
    """Eight numerator Gamma factors; solved by the octagon polynomial p1."""
    data = [
        ((1, 0), -6), ((1, 1), -10), ((0, 1), -6), ((-1, 1), -4),
        ((-1, 0), 0), ((-1, -1), 2), ((0, -1), 0), ((1, -1), -4),
    ]
    return OreSatoCoefficient(
        2, tuple(GammaFactor(A, Fraction(c), 1) for A, c in data)
    )


@pytest.fixture(scope="session")
def phi2() -> OreSatoCoefficient:
    """Gamma(s+2t-5) Gamma(-2s-t-4) Gamma(-s-5t+1); solved by p2."""
    data = [((1, 2), -5), ((-2, -1), -4), ((-1, -5), 1)]
    return OreSatoCoefficient(
        2, tuple(GammaFactor(A, Fraction(c), 1) for A, c in data)
    )


@pytest.fixture(scope="session")
def p0_constructed(phi0) -> LaurentPolynomial:
    """p0 from its coefficient, normalized so the constant term is 1."""
    raw = polynomial_from_coefficient(phi0, (0, 0), (5, 6))
    return raw * (1 / raw.coefficient((0, 0)))


@pytest.fixture(scope="session")
def cross_poly() -> LaurentPolynomial:
    """x + y + 4xy + x^2 y + x y^2 (2D cross-polytope polynomial)."""
    P = facet_description([(1, 0), (0, 1), (-1, 0), (0, -1)])
    return hypergeometric_polynomial(P.canonical_translate())


@pytest.fixture(scope="session")
def hirzebruch_poly() -> LaurentPolynomial:
    """3x + 12xy + 2x^2y + 2y^2 + 3xy^2 (Hirzebruch-polytope polynomial)."""
    P = facet_description([(1, 0), (0, 1), (-1, 1), (0, -1)])
    return hypergeometric_polynomial(P.canonical_translate())


@pytest.fixture(scope="session")
def appell_5443() -> LaurentPolynomial:
    from hgamoeba import appell_f1

    return appell_f1(F1Parameters(-5, -4, -4, 3))

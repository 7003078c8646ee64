"""Simultaneous complex root finding for the amoeba fiber solves.

Aberth-Ehrlich iteration with initial guesses on a Fujiwara-bound circle.
The batch entry point solves many same-degree polynomials at once, which is
what the rasterizer needs (one polynomial per sampled angle).
"""

from __future__ import annotations

import numpy as np

MAX_ITER = 200
STEP_TOL = 1e-13


def fujiwara_bound(coeffs: np.ndarray) -> np.ndarray:
    """Upper bound for root moduli, per row of a (m, d+1) coefficient array.

    Coefficients are ordered from constant term to leading term.
    """
    c = np.asarray(coeffs, dtype=complex)
    d = c.shape[1] - 1
    lead = c[:, -1]
    ratios = np.abs(c[:, :-1] / lead[:, None])
    ratios[:, 0] /= 2.0
    ks = d - np.arange(d)  # k for coefficient c_{d-k}
    with np.errstate(divide="ignore"):
        terms = ratios ** (1.0 / ks)
    return 2.0 * terms.max(axis=1)


def aberth_roots_batch(coeffs: np.ndarray) -> np.ndarray:
    """Roots of m degree-d polynomials, returned as an (m, d) array.

    ``coeffs[i, k]`` is the coefficient of z^k of the i-th polynomial; all
    leading coefficients must be nonzero.  Deterministic: fixed initial
    configuration, fixed iteration policy.
    """
    c = np.asarray(coeffs, dtype=complex)
    m, width = c.shape
    d = width - 1
    if d < 1:
        return np.zeros((m, 0), dtype=complex)
    if np.any(c[:, -1] == 0):
        raise ValueError("leading coefficient must be nonzero")

    radius = fujiwara_bound(c)
    radius = np.where(np.isfinite(radius) & (radius > 0), radius, 1.0)
    # roots of unity, slightly rotated off the axes to avoid symmetry locking
    angles = 2.0 * np.pi * (np.arange(d) + 0.5) / d + 0.4
    z = radius[:, None] * np.exp(1j * angles)[None, :]

    dc = c[:, 1:] * np.arange(1, d + 1)
    converged = np.zeros(m, dtype=bool)
    for _ in range(MAX_ITER):
        active = ~converged
        if not active.any():
            break
        za = z[active]
        p = np.zeros_like(za)
        for k in range(d, -1, -1):
            p = p * za + c[active, k][:, None]
        dp = np.zeros_like(za)
        for k in range(d - 1, -1, -1):
            dp = dp * za + dc[active, k][:, None]

        with np.errstate(divide="ignore", invalid="ignore"):
            newton = p / dp
            diff = za[:, :, None] - za[:, None, :]
            np.einsum("ijj->ij", diff)[:] = np.inf
            repulsion = (1.0 / diff).sum(axis=2)
            denom = 1.0 - newton * repulsion
            step = newton / denom
        step = np.where(np.isfinite(step), step, newton)
        step = np.where(np.isfinite(step), step, 0.0)
        z[active] = za - step
        max_step = np.abs(step).max(axis=1)
        done = max_step < STEP_TOL * radius[active]
        idx = np.flatnonzero(active)
        converged[idx[done]] = True
    return z


def univariate_roots(coeffs) -> list[complex]:
    """All complex roots (with multiplicity) of a univariate polynomial.

    ``coeffs`` runs from the constant term upward.  Trailing zero
    coefficients are trimmed; a degree-0 polynomial yields an empty list and
    an identically zero input is an error.
    """
    c = [complex(v) for v in coeffs]
    scale = max((abs(v) for v in c), default=0.0)
    if scale == 0.0:
        raise ValueError("all-zero coefficient list")
    while c and abs(c[-1]) <= 1e-300:
        c.pop()
    if len(c) <= 1:
        return []
    arr = np.array([c], dtype=complex)
    roots = aberth_roots_batch(arr)[0]
    return sorted(roots.tolist(), key=lambda z: (round(z.real, 9), round(z.imag, 9)))

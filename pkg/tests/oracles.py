"""Independent reference implementations used to cross-check the library.

Nothing here imports from the integrator or the entanglement module's
eigenvalue path: the quartic eigensolver below goes through the
characteristic polynomial (Faddeev-LeVerrier coefficients, Durand-Kerner
root finding in extended precision, Newton polish), so agreement with
`np.linalg.eigvals` is a genuine two-route check rather than the same
code called twice.  The polynomial route is accurate for simple roots;
for heavily repeated roots (pure-state products) the algebraic
closed forms in the tests are the better oracle.
"""

from __future__ import annotations

import numpy as np


def char_poly_coefficients(m: np.ndarray) -> np.ndarray:
    """Coefficients c of det(xI - M) = x^4 + c[0] x^3 + c[1] x^2 + c[2] x + c[3]
    via the Faddeev-LeVerrier recurrence, in extended precision."""
    m = np.asarray(m, dtype=np.clongdouble)
    n = m.shape[0]
    assert m.shape == (n, n)
    coeffs = np.zeros(n, dtype=np.clongdouble)
    aux = np.eye(n, dtype=np.clongdouble)
    for k in range(1, n + 1):
        aux = m @ aux
        c = -np.trace(aux) / k
        coeffs[k - 1] = c
        aux = aux + c * np.eye(n, dtype=np.clongdouble)
    return coeffs


def _horner(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    acc = np.ones_like(x)
    for c in coeffs:
        acc = acc * x + c
    return acc


def quartic_roots(coeffs: np.ndarray) -> np.ndarray:
    """All four roots of the monic quartic: Durand-Kerner, then Newton."""
    coeffs = np.asarray(coeffs, dtype=np.clongdouble)
    assert coeffs.shape == (4,)
    scale = max(float(np.max(np.abs(coeffs))) ** 0.25, 1e-30)
    seed = np.clongdouble(0.4 + 0.9j) * scale
    roots = seed ** np.arange(1, 5, dtype=np.clongdouble)
    for _ in range(500):
        vals = _horner(coeffs, roots)
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, 1.0)
        den = diff.prod(axis=1)
        if np.any(den == 0.0):  # collision: nudge apart and retry
            roots = roots + np.clongdouble(1e-6) * scale * np.arange(1, 5)
            continue
        delta = vals / den
        roots = roots - delta
        if np.max(np.abs(delta)) <= 1e-17 * (np.max(np.abs(roots)) + scale):
            break
    dcoeffs = np.array(
        [4.0, 3.0 * coeffs[0], 2.0 * coeffs[1], coeffs[2]], dtype=np.clongdouble
    )
    for _ in range(4):
        deriv = ((dcoeffs[0] * roots + dcoeffs[1]) * roots + dcoeffs[2]) * roots \
            + dcoeffs[3]
        safe = np.abs(deriv) > 0.0
        step = np.where(safe, _horner(coeffs, roots) / np.where(safe, deriv, 1.0), 0.0)
        roots = roots - step
    return roots


def eigvals_4x4(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 4x4 matrix via its characteristic polynomial,
    returned as complex128 sorted by descending real part."""
    roots = quartic_roots(char_poly_coefficients(m))
    roots = np.asarray(roots, dtype=np.complex128)
    return roots[np.argsort(-roots.real)]


def concurrence_reference(rho: np.ndarray) -> float:
    """Concurrence via the characteristic-polynomial eigenvalue route.

    Uses the same relative noise floor as the library so both routes agree
    on which near-zero eigenvalues are rounding debris.
    """
    flip = np.zeros((4, 4))
    flip[0, 3], flip[1, 2], flip[2, 1], flip[3, 0] = -1.0, 1.0, 1.0, -1.0
    product = rho @ (flip @ rho.conj() @ flip)
    lams = eigvals_4x4(product).real
    lams = np.clip(lams, 0.0, None)
    floor = 16384.0 * np.finfo(float).eps * lams.max(initial=0.0)
    lams = np.where(lams < floor, 0.0, lams)
    s = np.sqrt(np.sort(lams)[::-1])
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def random_density(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix (Wishart-style)."""
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    return psi / np.linalg.norm(psi)


def free_block_solution(
    j: float, gamma: float, y0: float, z0: float, t: float
) -> tuple[float, float]:
    """Exact solution of y' = -2*gamma*y + 2*j*z, z' = -2*j*y, written in
    scalar form without matrix exponentials for independence from the
    library's propagator."""
    g = gamma
    mu = complex(g * g - 4.0 * j * j) ** 0.5
    if abs(mu * t) < 1e-150:
        ch, sh_over = 1.0 + 0j, t + 0j  # sinh(mu t)/mu -> t as mu -> 0
    else:
        ch = np.cosh(mu * t)
        sh_over = np.sinh(mu * t) / mu
    e = np.exp(-g * t)
    y = e * ((ch - g * sh_over) * y0 + 2.0 * j * sh_over * z0)
    z = e * (-2.0 * j * sh_over * y0 + (ch + g * sh_over) * z0)
    return (complex(y).real, complex(z).real)

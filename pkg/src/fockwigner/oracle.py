"""Independent integral-transform check of the Wigner coefficient fields.

Each coefficient field has a second route: the matrix element of the
displacement operator between number states,

    D_mu^nu(beta) = <mu|D(beta)|nu>
                  = e^{-|beta|^2/2} * { (-conj(beta))^{nu-mu} sqrt(mu!/nu!) L_mu^{nu-mu}(|beta|^2)   mu <  nu
                                      { beta^{mu-nu}          sqrt(nu!/mu!) L_nu^{mu-nu}(|beta|^2)   mu >= nu,

Fourier-transformed over the plane,

    C_mu^nu(alpha) = (1/pi^2) Int d^2beta  D_mu^nu(beta) e^{alpha conj(beta) - conj(alpha) beta}.

This module evaluates that double integral by polar quadrature with no shared
code path with the closed coefficient formula, so agreement between the two is
a real consistency check.  The integrand decays as e^{-b^2/2}, so a finite
radial cutoff b_max suffices; the default spec is adequate for the lowest
indices, while checks at indices up to 4 near 1e-6 absolute accuracy need
b_max around 9 with a correspondingly denser radial grid, because the
polynomial prefactor pushes weight outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import gammaln

from .errors import CostGuardError
from .wigner import laguerre_assoc

MAX_ORACLE_INDEX = 8


@dataclass(frozen=True)
class QuadratureSpec:
    """Polar-grid sizes for the plane integral.

    b_max: radial cutoff. n_radial: Simpson points in radius (made odd
    internally if needed). n_angular: uniform trapezoid points over 2 pi.
    """

    b_max: float = 6.0
    n_radial: int = 2000
    n_angular: int = 512

    def __post_init__(self):
        if self.b_max <= 0:
            raise ValueError(f"b_max must be positive, got {self.b_max}")
        if self.n_radial < 8 or self.n_angular < 8:
            raise ValueError("quadrature needs at least 8 points per axis")


def displaced_fock_coefficient(mu: int, nu: int, beta):
    """Displacement matrix element <mu|D(beta)|nu>; beta scalar or array."""
    if mu < 0 or nu < 0:
        raise ValueError(f"indices must be nonnegative, got ({mu}, {nu})")
    b = np.asarray(beta, dtype=complex)
    mag2 = (b * np.conj(b)).real
    envelope = np.exp(-0.5 * mag2)
    if mu < nu:
        k = nu - mu
        ratio = math.exp(0.5 * (gammaln(mu + 1.0) - gammaln(nu + 1.0)))
        out = envelope * ratio * (-np.conj(b)) ** k * laguerre_assoc(mu, k, mag2)
    else:
        k = mu - nu
        ratio = math.exp(0.5 * (gammaln(nu + 1.0) - gammaln(mu + 1.0)))
        out = envelope * ratio * b**k * laguerre_assoc(nu, k, mag2)
    return complex(out) if np.ndim(beta) == 0 else out


def wigner_coefficient_bruteforce(mu: int, nu: int, alpha: complex,
                                  quad: QuadratureSpec | None = None) -> complex:
    """Coefficient field C_mu^nu(alpha) by direct plane quadrature.

    Deliberately reimplements nothing from the closed-form path beyond the
    Laguerre recurrence inside the displacement element.  Cost grows with the
    quadrature sizes; indices above 8 are refused because the cutoff the
    default spec was sized for no longer holds there.
    """
    if max(mu, nu) > MAX_ORACLE_INDEX:
        raise CostGuardError(
            f"oracle indices capped at {MAX_ORACLE_INDEX}, got ({mu}, {nu})"
        )
    if quad is None:
        quad = QuadratureSpec()
    n_rad = quad.n_radial if quad.n_radial % 2 == 1 else quad.n_radial + 1
    radii = np.linspace(0.0, quad.b_max, n_rad)
    angles = np.linspace(0.0, 2.0 * math.pi, quad.n_angular, endpoint=False)

    a = complex(alpha)
    # beta on the polar grid, (n_rad, n_angular)
    beta = radii[:, None] * np.exp(1j * angles)[None, :]
    dmat = displaced_fock_coefficient(mu, nu, beta)
    # e^{alpha conj(beta) - conj(alpha) beta} = e^{-2 i Im(conj(alpha) beta)}
    phase = np.exp(-2j * (np.conj(a) * beta).imag)
    integrand = dmat * phase * radii[:, None]

    angular = integrand.sum(axis=1) * (2.0 * math.pi / quad.n_angular)
    total = simpson(angular.real, x=radii) + 1j * simpson(angular.imag, x=radii)
    return complex(total / math.pi**2)

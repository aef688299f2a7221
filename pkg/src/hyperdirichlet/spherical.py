"""Zonal spherical functions on H^d in all their realizations."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .numerics import QuadratureSpec, integrate
from .specfun import _hyp2f1_ex, _phi_core, spherical_bessel

__all__ = [
    "SpectralParams",
    "phi",
    "phi_legendre",
    "phi_angular_oracle",
    "phi_derivative",
    "eigen_residual",
    "euclidean_limit_error",
]


@dataclass(frozen=True)
class SpectralParams:
    """Dimension, curvature radius, and the derived Jacobi exponents.

    rho, a, b are computed from d so the defining relations
    rho = (d-1)/2, a = rho - 1/2, b = -1/2 hold by construction.
    """

    d: int
    R: float = 1.0
    rho: float = field(init=False)
    a: float = field(init=False)
    b: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise DomainError("dimension d must be an integer >= 1")
        if not self.R > 0:
            raise DomainError("curvature radius R must be positive")
        object.__setattr__(self, "rho", (self.d - 1) / 2.0)
        object.__setattr__(self, "a", self.rho - 0.5)
        object.__setattr__(self, "b", -0.5)


def phi(params, lam, chi):
    """Zonal spherical function Phi_lam(chi), normalized to Phi_lam(0) = 1.

    d = 1 reduces to cos(lam chi) and d = 3 to sin(lam chi)/(lam sinh chi);
    other dimensions evaluate the hypergeometric representation at
    -sinh^2(chi), escalating through argument transformations (and, for
    extreme lambda*chi, an integral representation) as cancellation demands.
    """
    if lam < 0 or chi < 0:
        raise DomainError("phi requires lam >= 0 and chi >= 0")
    if chi == 0.0:
        return 1.0
    if params.d == 1:
        return math.cos(lam * chi)
    if params.d == 3:
        u = lam * chi
        if abs(u) < 1e-6:
            s_over_lam = chi * (1.0 - u * u / 6.0 * (1.0 - u * u / 20.0))
        else:
            s_over_lam = math.sin(u) / lam
        return s_over_lam / math.sinh(chi)
    return _phi_core(params.rho, lam, chi)


def phi_legendre(params, lam, chi):
    """Second realization of phi through the associated Legendre function
    P^{-(rho-1/2)}_{-1/2+i lam}(cosh chi), evaluated by the half-argument
    hypergeometric representation. Numerically independent of phi."""
    if chi <= 0:
        raise DomainError("phi_legendre requires chi > 0 (use phi at 0)")
    mu = params.rho - 0.5
    x = math.cosh(chi)
    # P^{-mu}_nu(x) = ((x-1)/(x+1))^{mu/2} F(nu+1, -nu; 1+mu; (1-x)/2) / Gamma(1+mu)
    nu = -0.5 + 1j * lam
    zz = 0.5 * (1.0 - x)
    val, _est = _hyp2f1_ex(nu + 1.0, -nu, 1.0 + mu, zz)
    half = 0.5 * mu * (math.log(x - 1.0) - math.log(x + 1.0))
    legendre = cmath.exp(half - math.lgamma(1.0 + mu)) * val
    pref = math.exp((params.rho - 0.5) * math.log(2.0) + math.lgamma(params.rho + 0.5)
                    - (params.rho - 0.5) * math.log(math.sinh(chi)))
    return (pref * legendre).real


def phi_angular_oracle(params, lam, chi):
    """Brute-force Funk-Hecke quadrature of the spherical mean of the
    hyperbolic plane wave; the independent oracle for both phi realizations."""
    if params.d < 2:
        raise DomainError("the angular integral needs d >= 2")
    rho = params.rho
    lgB = math.lgamma(rho) + math.lgamma(0.5) - math.lgamma(rho + 0.5)
    norm = math.exp(-lgB)
    ch = math.cosh(chi)
    sh = math.sinh(chi)
    spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=4000)

    def make(trig):
        def f(theta):
            base = ch - math.cos(theta) * sh
            return base ** (-rho) * trig(lam * math.log(base)) * math.sin(theta) ** (2.0 * rho - 1.0)
        return f

    re = integrate(make(math.cos), 0.0, math.pi, spec).value
    im = integrate(make(math.sin), 0.0, math.pi, spec).value
    if abs(norm * im) >= 1e-10:
        raise DomainError("angular oracle produced a non-real value")
    return norm * re


def phi_derivative(params, lam, chi):
    """d/dz of Phi^{(a-1,b)} at z = -sinh^2(chi), expressed through the
    raised-parameter function: [((a+b)^2 + lam^2)/(4a)] Phi^{(a,b+1)}(z),
    with Phi^{(a,b+1)}(z) = (1-z)^{-(b+1)} 2F1((a-b+i lam)/2, (a-b-i lam)/2;
    a+1; z). Here a = rho - 1/2 of the d-dimensional parameter set."""
    a = params.a
    b = params.b
    if a == 0.0:
        raise DomainError("phi_derivative needs a > 0 (d >= 2 for the shifted pair)")
    if a < 0.5:
        raise DomainError("the shifted pair requires a >= 1/2 (d >= 3)")
    z = -math.sinh(chi) ** 2
    bracket = ((a + b) ** 2 + lam * lam) / (4.0 * a)
    p = 0.5 * (a - b)
    val, _est = _hyp2f1_ex(p + 0.5j * lam, p - 0.5j * lam, a + 1.0, z)
    raised = (1.0 - z) ** (-(b + 1.0)) * val
    return bracket * raised.real


def eigen_residual(params, lam, chi, h):
    """|L_{R,chi} Phi + (lam^2 + rho^2)/R^2 Phi| via 5-point finite
    differences of phi; a correctness certificate for the eigen-equation."""
    if not chi > h > 0:
        raise DomainError("eigen_residual requires chi > h > 0")
    f = [phi(params, lam, chi + j * h) for j in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    R2 = params.R ** 2
    lap = (d2 + (params.d - 1) / math.tanh(chi) * d1) / R2
    return abs(lap + (lam * lam + params.rho ** 2) / R2 * f[2])


def euclidean_limit_error(params, p_norm, r, R_values):
    """|phi at (lam = |p| R, chi = r/R) - spherical Bessel at |p| r| for each
    R; decays like O(1/R) as the curvature is flattened away."""
    if p_norm <= 0 or r < 0:
        raise DomainError("euclidean_limit_error requires p_norm > 0, r >= 0")
    target = spherical_bessel(params.a, p_norm * r)
    out = []
    for R in R_values:
        pa = SpectralParams(params.d, float(R))
        out.append(abs(phi(pa, p_norm * R, r / R) - target))
    return out

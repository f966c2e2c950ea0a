"""Factorized (oscillator) representations on the half-line.

For each admissible shift u = 4 upsilon^2 w (w >= w0) and mixing angle
mu, the potential V = g1/x^2 + g2 x^2 admits a strictly positive solution
of  -phi'' + V phi = -4 upsilon^2 w phi  of the form

    phi(x) = e^(-rho/2) rho^q S(rho),     rho = (upsilon x)^2, q = 1/4 + kappa/2,

with S a two-dimensional mixture of confluent hypergeometric solutions:

    kappa > 0:  S = sin(mu) Phi(alpha, beta; rho)
                  + cos(mu) [Gamma(alpha)/Gamma(kappa)] Psi(alpha, beta; rho)
    kappa = 0:  S = sin(mu) Phi(alpha, 1; rho)
                  + cos(mu) Gamma(alpha) Psi(alpha, 1; rho)
    w = w0:     S = 1 identically (alpha = 0, both lines degenerate)

where alpha = (1+kappa)/2 + w and beta = 1 + kappa.  Positivity holds
because Phi and Psi are positive here and the mixture coefficients are
nonnegative (mu in [0, pi/2]).  The Psi scalings are chosen so that as
rho -> 0

    kappa in (0,1):  S -> A~ + B~ rho^(-kappa),
        A~ = sin(mu) - cos(mu) G(1-k)G(alpha) / [G(1+k)G(alpha-k)],
        B~ = cos(mu),
    kappa = 0:       S -> A~ + B~ ln(upsilon x),
        A~ = sin(mu) + cos(mu) (2 psi(1) - psi(alpha)),
        B~ = -2 cos(mu),

which is the boundary data that picks a self-adjoint extension later.

From phi the superpotential h = phi'/phi defines the first-order pair

    (a f)(x) = f'(x) - h(x) f(x),      (b f)(x) = -f'(x) - h(x) f(x),

and the second-order identity  b a f = -f'' + (h' + h^2) f  must equal
-f'' + V f + 4 upsilon^2 w f  for every smooth f, since h' + h^2 =
phi''/phi = V + 4 upsilon^2 w.  `factorization_residual` measures exactly
that defect, with h' computed honestly from the series second derivative
(phi''/phi - h^2), never by assuming the identity it is checking.

Derivatives of S use the contiguous relations
    Phi' = (alpha/beta) Phi(alpha+1, beta+1),   Psi' = -alpha Psi(alpha+1, beta+1),
applied twice for S''.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .params import ReducedParams
from .specfun import digamma, gamma, kummer_phi, rgamma, tricomi_psi

__all__ = [
    "RepresentationParams",
    "EvaluableSolution",
    "AsymptoticCoefficients",
    "make_phi",
    "superpotential",
    "apply_a",
    "apply_b",
    "factorization_residual",
    "asymptotic_coeffs",
]

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class RepresentationParams:
    """One point of the representation family: mixing angle and shift.

    mu in [0, pi/2]; w >= w0.  At w = w0 the solution space collapses to
    the single power-exponential solution and mu is ignored.
    """

    mu: float
    w: float
    rp: ReducedParams

    def __post_init__(self) -> None:
        if not (0.0 <= self.mu <= _HALF_PI + 1e-15):
            raise DomainError(f"RepresentationParams: mu={self.mu} outside [0, pi/2]")
        if self.w < self.rp.w0 - 1e-14:
            raise DomainError(f"RepresentationParams: w={self.w} below the floor w0={self.rp.w0}")

    @property
    def u(self) -> float:
        return 4.0 * self.rp.upsilon**2 * self.w

    @property
    def at_floor(self) -> bool:
        return abs(self.w - self.rp.w0) < 1e-14


class EvaluableSolution:
    """Positive solution phi with analytic first and second derivatives."""

    def __init__(self, rep: RepresentationParams):
        self.rep = rep
        rp = rep.rp
        self._kappa = rp.kappa
        self._ups2 = rp.upsilon**2
        self._q = 0.25 + 0.5 * rp.kappa
        self._alpha = rp.alpha_of(rep.w)
        self._beta = rp.beta
        self._sin = math.sin(rep.mu)
        self._cos = math.cos(rep.mu)
        if self._cos < 1e-15:  # mu = pi/2 up to rounding: pure-Phi mixture
            self._sin, self._cos = 1.0, 0.0
        if self._sin < 1e-15:
            self._sin, self._cos = 0.0, 1.0
        if rep.at_floor:
            self._psi_scale = 0.0
        elif self._kappa > 0.0:
            self._psi_scale = gamma(self._alpha) * rgamma(self._kappa)
        else:
            self._psi_scale = gamma(self._alpha)

    # -- S and its rho-derivatives ------------------------------------

    def _S(self, rho: float, order: int) -> tuple[float, float, float]:
        if self.rep.at_floor:
            return 1.0, 0.0, 0.0
        a, b, sc = self._alpha, self._beta, self._psi_scale
        s = sp = spp = 0.0
        if self._sin != 0.0:
            s += self._sin * kummer_phi(a, b, rho)
            if order >= 1:
                sp += self._sin * (a / b) * kummer_phi(a + 1.0, b + 1.0, rho)
            if order >= 2:
                spp += self._sin * (a * (a + 1.0) / (b * (b + 1.0))) * kummer_phi(a + 2.0, b + 2.0, rho)
        if self._cos != 0.0:
            c = self._cos * sc
            s += c * tricomi_psi(a, b, rho)
            if order >= 1:
                sp += c * (-a) * tricomi_psi(a + 1.0, b + 1.0, rho)
            if order >= 2:
                spp += c * (a * (a + 1.0)) * tricomi_psi(a + 2.0, b + 2.0, rho)
        return s, sp, spp

    # -- x-space evaluations --------------------------------------------

    def _check_x(self, x: float) -> float:
        if not (x > 0.0 and math.isfinite(x)):
            raise DomainError(f"solution evaluation needs x > 0, got {x!r}")
        return self._ups2 * x * x

    def value_at(self, x: float) -> float:
        rho = self._check_x(x)
        s, _, _ = self._S(rho, 0)
        return math.exp(-0.5 * rho) * rho**self._q * s

    def derivative_at(self, x: float) -> float:
        rho = self._check_x(x)
        s, sp, _ = self._S(rho, 1)
        env = math.exp(-0.5 * rho) * rho**self._q
        # d phi/d rho, then chain through rho = (upsilon x)^2
        dphi_drho = env * ((self._q / rho - 0.5) * s + sp)
        return 2.0 * self._ups2 * x * dphi_drho

    def second_derivative_at(self, x: float) -> float:
        rho = self._check_x(x)
        s, sp, spp = self._S(rho, 2)
        env = math.exp(-0.5 * rho) * rho**self._q
        g = self._q / rho - 0.5
        dphi = env * (g * s + sp)
        d2phi = env * ((g * g - self._q / (rho * rho)) * s + 2.0 * g * sp + spp)
        c = 2.0 * self._ups2 * x
        return 2.0 * self._ups2 * dphi + c * c * d2phi

    def superpotential_at(self, x: float) -> float:
        rho = self._check_x(x)
        s, sp, _ = self._S(rho, 1)
        # h = (1/2 + kappa)/x - upsilon^2 x + 2 upsilon^2 x S'/S
        return (0.5 + self._kappa) / x - self._ups2 * x + 2.0 * self._ups2 * x * sp / s

    def superpotential_derivative_at(self, x: float) -> float:
        # h' = phi''/phi - h^2; independent series evaluations, so the
        # factorization check downstream is not circular
        h = self.superpotential_at(x)
        return self.second_derivative_at(x) / self.value_at(x) - h * h


def make_phi(rep: RepresentationParams) -> EvaluableSolution:
    """Construct the positive solution for one representation point."""
    return EvaluableSolution(rep)


def superpotential(rep: RepresentationParams, x: float) -> float:
    return EvaluableSolution(rep).superpotential_at(x)


def _value_and_derivative(f, x: float) -> tuple[float, float]:
    if hasattr(f, "value_at"):
        return f.value_at(x), f.derivative_at(x)
    if isinstance(f, tuple) and len(f) >= 2:
        return f[0](x), f[1](x)
    raise DomainError("apply_a/apply_b need an EvaluableSolution or a (f, f') tuple of callables")


def apply_a(rep: RepresentationParams, f, x: float) -> float:
    """(a f)(x) = f' - h f.  Annihilates phi itself."""
    v, d = _value_and_derivative(f, x)
    return d - superpotential(rep, x) * v


def apply_b(rep: RepresentationParams, f, x: float) -> float:
    """(b f)(x) = -f' - h f.  Annihilates 1/phi."""
    v, d = _value_and_derivative(f, x)
    return -d - superpotential(rep, x) * v


def factorization_residual(rep: RepresentationParams, f_triple, x: float, h_shift: float = 0.0) -> float:
    """(b a f)(x) - [-f'' + V f + 4 upsilon^2 w f](x); zero up to rounding.

    f_triple is (f, f', f'') as callables.  h_shift displaces the
    superpotential by a constant, which must break the identity; it
    exists so integrity checks can prove this test can fail.
    """
    f, _, fpp = f_triple
    sol = EvaluableSolution(rep)
    h = sol.superpotential_at(x) + h_shift
    hp = sol.superpotential_derivative_at(x)
    lhs = -fpp(x) + (hp + h * h) * f(x)
    rp = rep.rp
    v = rp.g1 / (x * x) + rp.g2 * x * x
    rhs = -fpp(x) + (v + 4.0 * rp.upsilon**2 * rep.w) * f(x)
    return lhs - rhs


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Small-x boundary data (A~, B~) of phi and its polar form.

    theta = atan2(A~, B~) for kappa in (0,1); in the logarithmic case
    kappa = 0 the conventional angle is atan(psi(alpha) - 2 psi(1) -
    tan mu), which equals atan(2 A~/B~) up to orientation.  c_norm is the
    plain amplitude hypot(A~, B~).
    """

    A_tilde: float
    B_tilde: float
    theta: float
    c_norm: float


def asymptotic_coeffs(rep: RepresentationParams) -> AsymptoticCoefficients:
    """Boundary coefficients of the solution; extension families only.

    Refuses kappa >= 1 (no boundary freedom there), mu = pi/2 and w = w0
    (one-sided asymptotics, the two-coefficient decomposition degenerates).
    """
    rp = rep.rp
    if rp.kappa >= 1.0:
        raise DomainError(f"asymptotic_coeffs: kappa={rp.kappa} >= 1, boundary decomposition undefined")
    if math.cos(rep.mu) < 1e-15 or abs(rep.mu - _HALF_PI) < 1e-12:
        raise DomainError("asymptotic_coeffs: mu = pi/2 solution has a one-sided asymptotic")
    if rep.at_floor:
        raise DomainError("asymptotic_coeffs: w = w0 solution has a one-sided asymptotic")
    alpha = rp.alpha_of(rep.w)
    smu, cmu = math.sin(rep.mu), math.cos(rep.mu)
    if rp.kappa > 0.0:
        k = rp.kappa
        gratio = gamma(1.0 - k) / gamma(1.0 + k) * gamma(alpha) * rgamma(alpha - k)
        a_t = smu - cmu * gratio
        b_t = cmu
        theta = math.atan2(a_t, b_t)
    else:
        two_psi1 = 2.0 * digamma(1.0)
        a_t = smu + cmu * (two_psi1 - digamma(alpha))
        b_t = -2.0 * cmu
        theta = math.atan(digamma(alpha) - two_psi1 - math.tan(rep.mu))
    return AsymptoticCoefficients(a_t, b_t, theta, math.hypot(a_t, b_t))

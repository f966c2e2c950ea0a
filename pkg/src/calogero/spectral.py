"""Self-adjoint extensions and their discrete spectra.

For kappa in [0, 1) the operator has deficiency indices (1,1) and a
one-parameter family of self-adjoint extensions, labelled by an angle
nu in [-pi/2, pi/2] with the endpoints identified; nu = +-pi/2 is the
Friedrichs extension.  For kappa >= 1 the operator is essentially
self-adjoint: one Hamiltonian, no choice to make.

Working in the scaled energy e = E / upsilon^2, everything reduces to
gamma-function transcendental equations in e (equivalently in the shift
w = -e/4 of the decaying solution):

    kappa in (0,1):   F(e) = G(1-k) G((1+k)/2 - e/4)
                             / [G(1+k) G((1-k)/2 - e/4)]  =  -tan(nu)
    kappa = 0:        psi(1/2 - e/4) = tan(nu) + 2 psi(1)

Both left-hand sides sweep every real value exactly once per "gap"
between consecutive poles of the numerator (at e = 2(2n+1+kappa), resp.
2(2n+1)), strictly decreasing, so each gap carries exactly one
eigenvalue and bracketed bisection cannot miss.  At nu = +-pi/2 the
roots sit on the poles themselves and the spectrum is the exact ladder
E_n = 2 upsilon^2 (2n+1+kappa) (also the kappa >= 1 spectrum); at nu=0,
kappa > 0, the roots are the zeros E_n = 2 upsilon^2 (2n+1-kappa) in
closed form.

The boundary angle theta(mu, w) of a representation solution and the
inverse problem w(mu, nu) (used to build the representation that
generates a given extension) live here too, built on the asymptotic
coefficients of the factorization layer.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConvergenceError, DomainError
from .factorization import EvaluableSolution, RepresentationParams, make_phi
from .params import ReducedParams
from .specfun import (
    digamma,
    exp_halfline_quad,
    gamma,
    gammaln_shift,
    gammaln_signed,
    tricomi_psi,
)

__all__ = [
    "ExtensionLabel",
    "Extension",
    "extension_for",
    "theta_of",
    "solve_w",
    "SpectrumResult",
    "spectrum",
    "ground_state_energy",
    "GroundState",
    "ground_state_wavefunction",
    "set_gamma_perturbation",
]

_HALF_PI = 0.5 * math.pi
_FRIEDRICHS_SNAP = 1e-6


class ExtensionLabel(enum.Enum):
    FRIEDRICHS = "friedrichs"
    UNIQUE = "unique"
    NU = "nu"


@dataclass(frozen=True)
class Extension:
    label: ExtensionLabel
    nu: float | None = None

    @property
    def is_ladder(self) -> bool:
        return self.label is not ExtensionLabel.NU


def extension_for(rp: ReducedParams, nu: float | None = None, friedrichs: bool = False) -> Extension:
    """Normalize user extension input against the coupling region.

    kappa >= 1 always yields the unique extension; a nu given there is
    ignored with a warning.  |nu| within 1e-6 of pi/2 snaps to Friedrichs
    (the two signs are the same extension).
    """
    if rp.kappa >= 1.0:
        if nu is not None:
            warnings.warn(
                f"kappa={rp.kappa:.6g} >= 1: operator is essentially self-adjoint, nu={nu} ignored",
                stacklevel=2,
            )
        return Extension(ExtensionLabel.UNIQUE)
    if friedrichs:
        return Extension(ExtensionLabel.FRIEDRICHS)
    if nu is None:
        raise DomainError("extension_for: kappa < 1 needs nu, or friedrichs=True")
    if not math.isfinite(nu) or abs(nu) > _HALF_PI + 1e-12:
        raise DomainError(f"extension_for: nu={nu!r} outside [-pi/2, pi/2]")
    if abs(abs(nu) - _HALF_PI) < _FRIEDRICHS_SNAP:
        return Extension(ExtensionLabel.FRIEDRICHS)
    return Extension(ExtensionLabel.NU, nu=float(nu))


# ---------------------------------------------------------------------------
# boundary angle of a representation and its inversion


# integrity hook: a nonzero value skews every Gamma/digamma boundary
# equation so cross-validation against the shooting oracle must fail;
# it exists to prove the verification rows are not vacuous
_gamma_perturbation = 0.0


def set_gamma_perturbation(eps: float) -> None:
    global _gamma_perturbation
    _gamma_perturbation = float(eps)


def _skewed(value: float) -> float:
    if _gamma_perturbation != 0.0 and math.isfinite(value):
        return value + _gamma_perturbation * (1.0 + abs(value))
    return value


def _gamma_ratio(rp: ReducedParams, w: float) -> float:
    return _skewed(_gamma_ratio_core(rp, w))


def _gamma_ratio_core(rp: ReducedParams, w: float) -> float:
    """G(1-k)/G(1+k) * G(alpha)/G(alpha-k) with alpha = (1+k)/2 + w, in
    log space; 0.0 on the exact poles of G(alpha-k), +-inf on overflow."""
    k = rp.kappa
    a = rp.alpha_of(w)
    am = a - k
    if am <= 0.0 and am == math.floor(am):
        return 0.0
    if a <= 0.0 and a == math.floor(a):  # pole of the numerator
        return math.inf
    lg1, _ = gammaln_signed(1.0 - k)
    lg2, _ = gammaln_signed(1.0 + k)
    if a > 0.0 and am > 0.0:
        # deep roots push alpha past 1e16, where alpha - k is not even a
        # distinct float; hand the shift -k over exactly and never subtract
        # two lgamma values of size alpha*ln(alpha)
        ln_r = lg1 - lg2 - gammaln_shift(a, -k)
        return math.exp(ln_r) if ln_r <= 709.0 else math.inf
    lg3, s3 = gammaln_signed(a)
    lg4, s4 = gammaln_signed(am)
    ln_r = lg1 - lg2 + lg3 - lg4
    if ln_r > 709.0:
        return math.inf * s3 * s4
    return s3 * s4 * math.exp(ln_r)


def theta_of(mu: float, w: float, rp: ReducedParams) -> float:
    """Boundary angle theta of the (mu, w) solution; kappa in [0,1) only.

    kappa > 0: theta = atan2(sin mu - cos mu * gamma_ratio, cos mu);
    kappa = 0: theta = atan(psi(1/2 + w) - 2 psi(1) - tan mu).
    """
    if rp.kappa >= 1.0:
        raise DomainError(f"theta_of: kappa={rp.kappa} >= 1 has no boundary angle")
    if not (0.0 <= mu <= _HALF_PI + 1e-15):
        raise DomainError(f"theta_of: mu={mu} outside [0, pi/2]")
    if w <= rp.w0:
        raise DomainError(f"theta_of: w={w} at or below the floor w0={rp.w0}")
    if abs(mu - _HALF_PI) < 1e-12:
        raise DomainError("theta_of: mu = pi/2 solution has a one-sided asymptotic")
    if rp.kappa > 0.0:
        smu, cmu = math.sin(mu), math.cos(mu)
        return math.atan2(smu - cmu * _gamma_ratio(rp, w), cmu)
    return math.atan(digamma(0.5 + w) - 2.0 * digamma(1.0) - math.tan(mu))


def solve_w(mu: float, nu: float, rp: ReducedParams) -> float:
    """Invert theta(mu, .): the w > w0 with boundary angle nu.

    Unique because tan theta is strictly monotone in w (decreasing for
    kappa > 0, increasing for kappa = 0), sweeping all of R.  Bisection
    on an expanding bracket; the residual is checked against
    1e-10 * (1 + |tan nu|) before returning.
    """
    if rp.kappa >= 1.0:
        raise DomainError(f"solve_w: kappa={rp.kappa} >= 1 has no extension family")
    if not (0.0 <= mu < _HALF_PI - 1e-12):
        raise DomainError(f"solve_w: mu={mu} outside [0, pi/2)")
    if not (-_HALF_PI < nu < _HALF_PI):
        raise DomainError(f"solve_w: nu={nu} must be interior to (-pi/2, pi/2)")
    tnu = math.tan(nu)
    tmu = math.tan(mu)
    if rp.kappa > 0.0:
        # tan theta = tan mu - gamma_ratio(w), decreasing; solve ratio = tmu - tnu
        target = tmu - tnu

        def f(w: float) -> float:
            return _gamma_ratio(rp, w) - target
    else:
        # psi(1/2 + w) = tan nu + 2 psi(1) + tan mu, increasing
        target = tnu + 2.0 * digamma(1.0) + tmu

        def f(w: float) -> float:
            return digamma(0.5 + w) - target

    # f is increasing from -inf at the floor; expand right edge until positive
    lo = rp.w0 + 1e-13
    hi = rp.w0 + 1.0
    while f(hi) <= 0.0:
        if hi > 1e280:
            raise ConvergenceError(f"solve_w: no sign change for mu={mu}, nu={nu}")
        hi = rp.w0 + 2.0 * (hi - rp.w0)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    w = 0.5 * (lo + hi)
    resid = abs(math.tan(theta_of(mu, w, rp)) - tnu)
    if resid > 1e-10 * (1.0 + abs(tnu)):
        raise ConvergenceError(f"solve_w: residual {resid:.2e} too large at mu={mu}, nu={nu}")
    return w


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class SpectrumResult:
    """First n_max eigenvalues of one extension.

    energies are physical (units of upsilon^2 times the scaled roots)
    unless scaled=True was requested, in which case they are e = E/ups^2.
    residuals hold |lhs - rhs| of the defining equation at each root
    (identically 0.0 for ladder/closed-form spectra).
    """

    energies: tuple[float, ...]
    n_max: int
    residuals: tuple[float, ...]
    method: str
    scaled: bool = False


def _pole(rp: ReducedParams, n: int) -> float:
    return 2.0 * (2 * n + 1 + rp.kappa)


def _scaled_F(rp: ReducedParams, e: float) -> float:
    if rp.kappa > 0.0:
        return _gamma_ratio(rp, -0.25 * e)
    return _skewed(digamma(0.5 - 0.25 * e) - 2.0 * digamma(1.0))


def _lowest_gap_floor(rp: ReducedParams, target: float) -> float:
    # scaled e with F(e) > target, i.e. strictly below the ground root.
    # F's first zero z0 splits the gap: a root with target <= 0 lies in
    # [z0, first pole), so a fixed offset below z0 suffices; target > 0
    # pushes the root toward -inf and the e -> -inf asymptotics of F are
    # inverted in logs (exponentially deep in target when kappa = 0)
    k = rp.kappa
    if target <= 0.0:
        z0 = 2.0 * (1.0 - k) if k > 0.0 else -0.9
        return z0 - 2.0
    if k > 0.0:
        ln_r = (
            math.log(target + 1.0)
            + math.lgamma(1.0 + k)
            - math.lgamma(1.0 - k)
        ) / k
    else:
        ln_r = target + 2.0 * abs(digamma(1.0))
    if ln_r > 690.0:
        raise ConvergenceError(
            f"ground state deeper than float64 range for this extension (ln|E| ~ {ln_r:.0f})"
        )
    return -4.0 * math.exp(ln_r) - 8.0


def _root_in_gap(rp: ReducedParams, target: float, lo: float, hi: float) -> tuple[float, float]:
    """One root of F(e) = target in (lo, hi); F decreases +inf -> -inf.

    Eight-point scan confirms the decreasing sweep and brackets the sign
    change, then bisection.  Returns (root, residual).  Endpoint nudges
    are relative to each endpoint separately: the gap ends can differ by
    many orders of magnitude when nu sits near +-pi/2.
    """
    a = lo + 1e-7 * max(1.0, abs(lo)) / 3.0
    b = hi - 1e-7 * max(1.0, abs(hi)) / 3.0

    def g(e: float) -> float:
        try:
            return _scaled_F(rp, e) - target
        except DomainError:  # landed on an exact gamma pole; step off it
            return _scaled_F(rp, math.nextafter(e, b)) - target

    # keep the last point exactly b: when |lo| dwarfs hi, a + (b-a) rounds
    # to ULP(|lo|) and can land past the pole at hi, where F flips sign
    pts = [a + (b - a) * i / 7.0 for i in range(7)] + [b]
    vals = [g(p) for p in pts]
    noise = 1e-9 * (1.0 + abs(target))
    bracket = None
    for i in range(7):
        if vals[i] > 0.0 >= vals[i + 1]:
            bracket = (pts[i], pts[i + 1])
            break
        if vals[i + 1] > vals[i] + noise:
            # a genuine rise would break the one-root-per-gap argument;
            # refuse rather than guess (sub-noise wiggles at the root are fine)
            raise ConvergenceError(
                f"spectral scan not decreasing on ({lo:.6g}, {hi:.6g}) near e={pts[i]:.6g}"
            )
    if bracket is None:
        # the sweep is +inf -> -inf, so a missing sign change means the
        # crossing hugs an endpoint; fall back to the nudged endpoints
        bracket = (a, b) if g(a) > 0.0 > g(b) else None
    if bracket is None:
        raise ConvergenceError(f"no eigenvalue bracket inside gap ({lo:.6g}, {hi:.6g})")
    x0, x1 = bracket
    for _ in range(200):
        mid = 0.5 * (x0 + x1)
        if mid == x0 or mid == x1:
            break
        try:
            gm = g(mid)
        except DomainError:
            mid = math.nextafter(mid, x1)
            gm = g(mid)
        if gm > 0.0:
            x0 = mid
        else:
            x1 = mid
    root = 0.5 * (x0 + x1)
    return root, abs(g(root))


def spectrum(
    rp: ReducedParams,
    ext: Extension,
    n_max: int,
    scaled: bool = False,
) -> SpectrumResult:
    """First n_max eigenvalues of the extension, in ascending order."""
    if n_max < 1:
        raise DomainError(f"spectrum: n_max must be >= 1, got {n_max}")
    ups2 = rp.energy_scale()
    unit = 1.0 if scaled else ups2

    if ext.is_ladder:
        # for kappa >= 1 the Friedrichs extension IS the unique one; the
        # ladder formula covers both labels
        es = tuple(_pole(rp, n) * unit for n in range(n_max))
        return SpectrumResult(es, n_max, (0.0,) * n_max, "pole-enumeration", scaled)

    nu = ext.nu
    if nu is None or not (-_HALF_PI < nu < _HALF_PI):
        raise DomainError(f"spectrum: interior nu required, got {nu!r}")
    if rp.kappa >= 1.0:
        raise DomainError("spectrum: nu-labelled extensions exist only for kappa < 1")

    if nu == 0.0 and rp.kappa > 0.0:
        # F = 0 exactly at the denominator poles
        es = tuple(2.0 * (2 * n + 1 - rp.kappa) * unit for n in range(n_max))
        return SpectrumResult(es, n_max, (0.0,) * n_max, "closed-form", scaled)

    # boundary condition: F = -tan(nu) for kappa > 0, but the digamma form
    # at kappa = 0 reads psi(1/2 - e/4) - 2 psi(1) = +tan(nu)
    tnu = math.tan(nu)
    target = -tnu if rp.kappa > 0.0 else tnu
    roots = []
    resids = []
    lo = _lowest_gap_floor(rp, target)
    for n in range(n_max):
        hi = _pole(rp, n)
        e, r = _root_in_gap(rp, target, lo, hi)
        roots.append(e * unit)
        resids.append(r)
        lo = hi
    return SpectrumResult(tuple(roots), n_max, tuple(resids), "bracketed-root", scaled)


def ground_state_energy(rp: ReducedParams, ext: Extension, scaled: bool = False) -> float:
    return spectrum(rp, ext, 1, scaled=scaled).energies[0]


# ---------------------------------------------------------------------------
# ground-state wavefunctions


@dataclass(frozen=True)
class GroundState:
    """L2-normalized ground state u(x) of one extension."""

    energy: float
    norm_constant: float
    solution: EvaluableSolution | None  # None for the closed-form ladder state
    rp: ReducedParams
    extension: Extension

    def __call__(self, x: float) -> float:
        if self.solution is not None:
            return self.norm_constant * self.solution.value_at(x)
        k, ups = self.rp.kappa, self.rp.upsilon
        rho = (ups * x) ** 2
        return self.norm_constant * (ups * x) ** (0.5 + k) * math.exp(-0.5 * rho)

    def derivative(self, x: float) -> float:
        if self.solution is not None:
            return self.norm_constant * self.solution.derivative_at(x)
        k, ups = self.rp.kappa, self.rp.upsilon
        u = self(x)
        return ((0.5 + k) / x - ups * ups * x) * u


@lru_cache(maxsize=256)
def _nu_state_norm(kappa: float, upsilon: float, w: float) -> float:
    """Q0 = integral of phi(mu=0, w)^2 over (0, inf), via the rho-space form

        (1/2 ups) * scale^2 * int_0^inf rho^(-k) [rho^k Psi(alpha,beta;rho)]^2
                              e^(-rho) d rho

    where scale = G(alpha)/G(kappa) (kappa > 0) or G(alpha) (kappa = 0);
    rho^k Psi is bounded at the origin, so the engine's power parameter
    carries the whole singularity.
    """
    beta = 1.0 + kappa
    alpha = 0.5 * beta + w
    scale = gamma(alpha) / gamma(kappa) if kappa > 0.0 else gamma(alpha)

    def g(t: float) -> float:
        return (t**kappa * tricomi_psi(alpha, beta, t)) ** 2

    integral = exp_halfline_quad(g, -kappa, rel_tol=1e-12)
    return scale * scale * integral / (2.0 * upsilon)


def ground_state_wavefunction(rp: ReducedParams, ext: Extension) -> GroundState:
    """Normalized ground state; closed form on the ladder, mu=0 solution
    with a cached numeric norm for interior nu."""
    e0 = ground_state_energy(rp, ext)
    if ext.is_ladder:
        # |U|^2 integrates to G(1+kappa)/(2 ups) against d rho; exact constant
        c = math.sqrt(2.0 * rp.upsilon / gamma(1.0 + rp.kappa))
        return GroundState(e0, c, None, rp, ext)
    w = -e0 / (4.0 * rp.energy_scale())
    if rp.kappa > 0.94:
        raise DomainError(
            "ground_state_wavefunction: normalization quadrature needs kappa <= 0.94 "
            "(the half-line engine wants its singular power above -0.95); "
            "ladder states are exact at any kappa"
        )
    rep = RepresentationParams(mu=0.0, w=w, rp=rp)
    q0 = _nu_state_norm(rp.kappa, rp.upsilon, w)
    return GroundState(e0, 1.0 / math.sqrt(q0), make_phi(rep), rp, ext)

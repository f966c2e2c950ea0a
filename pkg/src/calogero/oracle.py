"""Shooting-method eigenvalue oracle, numerically independent of the
gamma-function spectral equations.

The radial problem -u'' + (g1/x^2 + g2 x^2) u = E u is integrated with
the package's own Cash-Karp RK45 from both ends toward an interior match
point.  Left data comes from the Frobenius series fixed by the extension
angle nu, right data from the leading decaying asymptotics; E is an
eigenvalue exactly when the two solutions are proportional, i.e. their
Wronskian at the match point vanishes.

Left boundary data.  With s_pm = 1/2 +- kappa, the two Frobenius
solutions are F_s = (ups x)^s sum_k a_k x^{2k},

    a_0 = 1,   a_k = (-E a_{k-1} + g2 a_{k-2}) / (2k (2s + 2k - 1)),

and the extension nu selects  sin(nu) F_{s+} + cos(nu) F_{s-}  (for
kappa >= 1 or Friedrichs, pure F_{s+}).  At kappa = 0 the exponents
collide and the second solution grows a logarithm,

    L = F_{1/2} ln(ups x) + (ups x)^{1/2} sum_k b_k x^{2k},
    b_0 = 0,   b_k = (-4k a_k - E b_{k-1} + g2 b_{k-2}) / (4 k^2),

with the combination  sin(nu) F_{1/2} + 2 cos(nu) L  carrying boundary
angle nu.

Right boundary data.  chi = (ups x)^{-1/2 - 2w} exp(-(ups x)^2 / 2) with
w = -E/(4 ups^2) is the decaying solution to leading order; the O(1/x^2)
corrections it drops excite only the growing-at-infinity mode, which the
inward integration suppresses by exp(-(x_max^2 - x_match^2) ups^2 / 2),
around 1e-14 for the default window.

The Wronskian is normalized by the solution magnitudes at the match
point, which also cancels the integrator's renormalization factors, so
the mismatch function is a bounded, continuous function of E with simple
sign changes exactly at the eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .params import ReducedParams
from .rk45 import integrate
from .spectral import Extension, ExtensionLabel

__all__ = [
    "ShootingConfig",
    "OracleEigenfunction",
    "OracleSpectrum",
    "shoot_spectrum",
    "eigenfunction_overlap",
    "sample_on_grid",
]

_EULER_GAMMA = 0.5772156649015328606


@dataclass(frozen=True)
class ShootingConfig:
    """Window and tolerance knobs, all in physical x units (None means
    the upsilon-scaled default)."""

    x_min: float | None = None  # default 0.02 / upsilon
    x_max: float | None = None  # default 8 / upsilon
    x_match: float | None = None  # default 1 / upsilon
    rel_tol: float = 1e-10  # refinement integration tolerance
    scan_tol: float = 1e-7  # bracketing-scan integration tolerance
    scan_step: float = 0.4  # in units of upsilon^2
    n_grid: int = 801  # eigenfunction sample points (odd)

    def resolved(self, ups: float) -> tuple[float, float, float]:
        x_min = self.x_min if self.x_min is not None else 0.02 / ups
        x_max = self.x_max if self.x_max is not None else 8.0 / ups
        x_match = self.x_match if self.x_match is not None else 1.0 / ups
        if not (0.0 < x_min < x_match < x_max):
            raise DomainError(
                f"ShootingConfig: need 0 < x_min < x_match < x_max, got "
                f"({x_min}, {x_match}, {x_max})"
            )
        return x_min, x_max, x_match


@dataclass(frozen=True)
class OracleEigenfunction:
    grid: tuple[float, ...]
    values: tuple[float, ...]  # L2-normalized over the grid
    nodes: int


@dataclass(frozen=True)
class OracleSpectrum:
    energies: tuple[float, ...]
    mismatch_residuals: tuple[float, ...]
    eigenfunctions: tuple[OracleEigenfunction, ...] | None
    scaled: bool = False


# ---------------------------------------------------------------------------
# boundary data


def _frobenius(s: float, g2: float, E: float, ups: float, x: float, max_terms: int = 60):
    """(F_s, F_s') at x from the series around the origin."""
    a_km1, a_km2 = 1.0, 0.0
    x2 = x * x
    P = 1.0
    dP = 0.0
    xk = 1.0  # x^{2k}
    for k in range(1, max_terms + 1):
        a_k = (-E * a_km1 + g2 * a_km2) / (2.0 * k * (2.0 * s + 2.0 * k - 1.0))
        xk *= x2
        term = a_k * xk
        P += term
        dP += 2.0 * k * a_k * xk / x
        a_km2, a_km1 = a_km1, a_k
        if abs(term) <= 1e-18 * abs(P) and k >= 3:
            break
    else:
        raise ConvergenceError(
            f"left boundary series stalled at x = {x:.4g}, E = {E:.4g}; shrink x_min"
        )
    pw = (ups * x) ** s
    return pw * P, pw * (s * P / x + dP)


def _frobenius_log(g2: float, E: float, ups: float, x: float, max_terms: int = 60):
    """kappa = 0 second solution (L, L') at x; see the module docstring."""
    x2 = x * x
    a_km1, a_km2 = 1.0, 0.0
    b_km1, b_km2 = 0.0, 0.0
    P, dP = 1.0, 0.0
    B, dB = 0.0, 0.0
    xk = 1.0
    for k in range(1, max_terms + 1):
        a_k = (-E * a_km1 + g2 * a_km2) / (4.0 * k * k)
        b_k = (-4.0 * k * a_k - E * b_km1 + g2 * b_km2) / (4.0 * k * k)
        xk *= x2
        P += a_k * xk
        dP += 2.0 * k * a_k * xk / x
        B += b_k * xk
        dB += 2.0 * k * b_k * xk / x
        a_km2, a_km1 = a_km1, a_k
        b_km2, b_km1 = b_km1, b_k
        if abs(a_k * xk) <= 1e-18 * abs(P) and abs(b_k * xk) <= 1e-18 * (abs(B) + 1e-30) and k >= 3:
            break
    else:
        raise ConvergenceError(
            f"left boundary log-series stalled at x = {x:.4g}, E = {E:.4g}; shrink x_min"
        )
    pw = (ups * x) ** 0.5
    F = pw * P
    dF = pw * (0.5 * P / x + dP)
    ell = math.log(ups * x)
    L = F * ell + pw * B
    dL = dF * ell + F / x + pw * (0.5 * B / x + dB)
    return L, dL


def _left_state(rp: ReducedParams, ext: Extension, E: float, x: float):
    k, ups, g2 = rp.kappa, rp.upsilon, rp.g2
    sp = 0.5 + k
    if ext.is_ladder:
        return _frobenius(sp, g2, E, ups, x)
    nu = ext.nu
    if k > 0.0:
        fp, dfp = _frobenius(sp, g2, E, ups, x)
        fm, dfm = _frobenius(0.5 - k, g2, E, ups, x)
        sn, cn = math.sin(nu), math.cos(nu)
        return sn * fp + cn * fm, sn * dfp + cn * dfm
    f, df = _frobenius(0.5, g2, E, ups, x)
    L, dL = _frobenius_log(g2, E, ups, x)
    sn, cn = math.sin(nu), math.cos(nu)
    return sn * f + 2.0 * cn * L, sn * df + 2.0 * cn * dL


def _right_state(rp: ReducedParams, E: float, x: float):
    ups = rp.upsilon
    w = -E / (4.0 * ups * ups)
    z = ups * x
    ln_chi = (-0.5 - 2.0 * w) * math.log(z) - 0.5 * z * z
    chi = math.exp(ln_chi) if ln_chi > -700.0 else 1e-300
    dchi = (-ups * ups * x - (0.5 + 2.0 * w) / x) * chi
    return chi, dchi


# ---------------------------------------------------------------------------
# mismatch and root hunt


def _mismatch(rp: ReducedParams, ext: Extension, E: float, cfg: ShootingConfig, tol: float) -> float:
    x_min, x_max, x_match = cfg.resolved(rp.upsilon)
    g1, g2 = rp.g1, rp.g2

    def f(x, y):
        return (y[1], (g1 / (x * x) + g2 * x * x - E) * y[0])

    yl = _left_state(rp, ext, E, x_min)
    left = integrate(f, x_min, yl, x_match, rel_tol=tol)
    yr = _right_state(rp, E, x_max)
    right = integrate(f, x_max, yr, x_match, rel_tol=tol)
    ul, dul = left.y
    ur, dur = right.y
    wr = ul * dur - dul * ur
    return wr / (math.hypot(ul, dul) * math.hypot(ur, dur))


def _scan_floor(rp: ReducedParams, ext: Extension) -> float:
    """Scaled energy below the ground state, from the e -> -inf asymptotics
    of the boundary condition (estimation only; the roots come from the
    shooting itself)."""
    if ext.is_ladder:
        return 0.0
    k, t = rp.kappa, math.tan(ext.nu)
    if k > 0.0:
        if t >= 0.0:
            return -2.0 - 2.0 * k
        ln_r = (math.log(-t + 1.0) + math.lgamma(1.0 + k) - math.lgamma(1.0 - k)) / k
    else:
        if t <= 0.0:
            return -4.0
        ln_r = t + 2.0 * _EULER_GAMMA
    if ln_r > math.log(100.0):
        raise DomainError(
            f"shoot_spectrum: estimated ground state near -4 e^{ln_r:.1f} "
            "(scaled) is too deep for the shooting window"
        )
    return -4.0 * math.exp(ln_r) - 8.0


def shoot_spectrum(
    rp: ReducedParams,
    ext: Extension,
    n_max: int,
    cfg: ShootingConfig | None = None,
    want_eigenfunctions: bool = False,
    scaled: bool = False,
) -> OracleSpectrum:
    """First n_max eigenvalues by double shooting; ascending order."""
    if n_max < 1:
        raise DomainError(f"shoot_spectrum: n_max must be >= 1, got {n_max}")
    if ext.label is ExtensionLabel.NU:
        if ext.nu is None or not (-0.5 * math.pi < ext.nu < 0.5 * math.pi):
            raise DomainError(f"shoot_spectrum: interior nu required, got {ext.nu!r}")
        if rp.kappa >= 1.0:
            raise DomainError("shoot_spectrum: nu extensions exist only for kappa < 1")
    cfg = cfg or ShootingConfig()
    ups2 = rp.energy_scale()

    e_lo = _scan_floor(rp, ext)
    e_top = 2.0 * (2 * (n_max - 1) + 1 + rp.kappa) + 0.2
    step = cfg.scan_step

    roots: list[float] = []
    resids: list[float] = []
    e = e_lo
    w_prev = _mismatch(rp, ext, e * ups2, cfg, cfg.scan_tol)
    while e < e_top and len(roots) < n_max:
        e_next = min(e + step, e_top)
        w_next = _mismatch(rp, ext, e_next * ups2, cfg, cfg.scan_tol)
        if (w_prev > 0.0) != (w_next > 0.0):
            root, resid = _refine(rp, ext, e * ups2, e_next * ups2, cfg)
            roots.append(root)
            resids.append(resid)
        e, w_prev = e_next, w_next
    if len(roots) < n_max:
        raise ConvergenceError(
            f"shoot_spectrum: found {len(roots)} of {n_max} eigenvalues in "
            f"scaled window ({e_lo:.3g}, {e_top:.3g})"
        )

    funcs = None
    if want_eigenfunctions:
        funcs = tuple(_eigenfunction(rp, ext, E, cfg) for E in roots)
    unit = 1.0 / ups2 if scaled else 1.0
    return OracleSpectrum(
        tuple(r * unit for r in roots), tuple(resids), funcs, scaled
    )


def _refine(rp, ext, E_lo, E_hi, cfg) -> tuple[float, float]:
    # coarse bisection at scan tolerance down to a narrow bracket, then
    # secant at the refinement tolerance
    w_lo = _mismatch(rp, ext, E_lo, cfg, cfg.scan_tol)
    for _ in range(40):
        if E_hi - E_lo <= 1e-6 * (1.0 + abs(E_lo)):
            break
        mid = 0.5 * (E_lo + E_hi)
        w_mid = _mismatch(rp, ext, mid, cfg, cfg.scan_tol)
        if (w_mid > 0.0) == (w_lo > 0.0):
            E_lo, w_lo = mid, w_mid
        else:
            E_hi = mid
    a, b = E_lo, E_hi
    fa = _mismatch(rp, ext, a, cfg, cfg.rel_tol)
    fb = _mismatch(rp, ext, b, cfg, cfg.rel_tol)
    best, f_best = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    for _ in range(30):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        # keep the iterate inside a sane neighborhood of the bracket
        if not (min(a, b) - 1e-3 <= c <= max(a, b) + 1e-3):
            c = 0.5 * (a + b)
        fc = _mismatch(rp, ext, c, cfg, cfg.rel_tol)
        if abs(fc) < abs(f_best):
            best, f_best = c, fc
        a, fa, b, fb = b, fb, c, fc
        if abs(b - a) <= 1e-13 * (1.0 + abs(b)) or fc == 0.0:
            break
    return best, abs(f_best)


# ---------------------------------------------------------------------------
# eigenfunctions


def _simpson(vals: list[float], xs: list[float]) -> float:
    """Composite Simpson on a possibly non-uniform grid.

    Each adjacent interval pair gets the quadratic through its three
    points; an odd leftover interval gets the parabola through the last
    three points. Reduces to classic Simpson for uniform spacing.
    """
    n = len(vals) - 1
    acc = 0.0
    i = 0
    while i + 2 <= n:
        h0 = xs[i + 1] - xs[i]
        h1 = xs[i + 2] - xs[i + 1]
        acc += (h0 + h1) / 6.0 * (
            vals[i] * (2.0 - h1 / h0)
            + vals[i + 1] * (h0 + h1) ** 2 / (h0 * h1)
            + vals[i + 2] * (2.0 - h0 / h1)
        )
        i += 2
    if i < n:  # one interval left
        h0 = xs[n - 1] - xs[n - 2]
        h1 = xs[n] - xs[n - 1]
        acc += vals[n] * (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1))
        acc += vals[n - 1] * (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0)
        acc -= vals[n - 2] * h1 ** 3 / (6.0 * h0 * (h0 + h1))
    return acc


# sampled eigenfunctions carry a geometric tail below x_min, filled from the
# series initial data directly (it converges for arbitrarily small x); without
# it the overlap quadrature drops the [0, x_min) mass of states that stay
# finite at the origin (s- = 1/2 - kappa <= 0 near kappa = 1/2) and distinct
# states stop looking orthogonal
_ORIGIN_DEPTH = 2.0 ** 24
_ORIGIN_POINTS = 96


def _eigenfunction(rp, ext, E, cfg) -> OracleEigenfunction:
    x_min, x_max, x_match = cfg.resolved(rp.upsilon)
    n = cfg.n_grid if cfg.n_grid % 2 == 1 else cfg.n_grid + 1
    grid = [x_min + (x_max - x_min) * i / (n - 1) for i in range(n)]
    i_match = min(range(n), key=lambda i: abs(grid[i] - x_match))
    g1, g2 = rp.g1, rp.g2

    def f(x, y):
        return (y[1], (g1 / (x * x) + g2 * x * x - E) * y[0])

    # sample left branch up to the match index, right branch down to it,
    # tracking the renormalization ledger per sample
    def sweep(i_from, i_to, state, step_dir):
        out = {}
        x = grid[i_from]
        y = state
        ls = 0.0
        out[i_from] = (y[0], ls)
        i = i_from
        while i != i_to:
            j = i + step_dir
            res = integrate(f, x, y, grid[j], rel_tol=cfg.rel_tol)
            x, y, ls = grid[j], list(res.y), ls + res.log_scale
            out[j] = (y[0], ls)
            i = j
        return out, y, ls

    left_vals, yl, lsl = sweep(0, i_match, list(_left_state(rp, ext, E, x_min)), +1)
    right_vals, yr, lsr = sweep(n - 1, i_match, list(_right_state(rp, E, x_max)), -1)

    # proportionality factor, from values unless the state nearly vanishes
    # at the match point, then from derivatives
    if abs(yl[0]) * abs(yr[0]) >= abs(yl[1]) * abs(yr[1]):
        lam, ls_lam = yr[0] / yl[0], lsr - lsl
    else:
        lam, ls_lam = yr[1] / yl[1], lsr - lsl

    merged = []
    ls_ref = max(lsl + ls_lam, lsr)  # common ledger offset, keeps exp finite
    for i in range(n):
        if i <= i_match:
            v, ls = left_vals[i]
            merged.append(v * lam * math.exp(ls + ls_lam - ls_ref))
        else:
            v, ls = right_vals[i]
            merged.append(v * math.exp(ls - ls_ref))

    # origin tail: raw series values share the left sweep's scale (ledger 0)
    head = [x_min * _ORIGIN_DEPTH ** (k / _ORIGIN_POINTS - 1.0)
            for k in range(_ORIGIN_POINTS)]
    head_scale = lam * math.exp(ls_lam - ls_ref)
    head_vals = [_left_state(rp, ext, E, x)[0] * head_scale for x in head]
    grid = head + grid
    merged = head_vals + merged

    peak = max(abs(v) for v in merged)
    if peak == 0.0:
        raise ConvergenceError(f"eigenfunction identically zero at E = {E:.6g}")
    merged = [v / peak for v in merged]
    norm2 = _simpson([v * v for v in merged], grid)
    merged = [v / math.sqrt(norm2) for v in merged]
    return OracleEigenfunction(tuple(grid), tuple(merged), _count_nodes(merged))


def _count_nodes(vals) -> int:
    nodes = 0
    prev = 0.0
    for v in vals:
        if abs(v) < 1e-9:
            continue
        if prev != 0.0 and (v > 0.0) != (prev > 0.0):
            nodes += 1
        prev = v
    return nodes


def sample_on_grid(fn, grid) -> OracleEigenfunction:
    """Sample a callable u(x) on a grid and L2-normalize it with the same
    quadrature rule the oracle eigenfunctions use, so overlaps against them
    are apples to apples."""
    xs = [float(x) for x in grid]
    vals = [float(fn(x)) for x in xs]
    norm2 = _simpson([v * v for v in vals], xs)
    if not math.isfinite(norm2) or norm2 <= 0.0:
        raise DomainError(f"sample_on_grid: bad norm^2 = {norm2!r}")
    scale = 1.0 / math.sqrt(norm2)
    vals = [v * scale for v in vals]
    return OracleEigenfunction(tuple(xs), tuple(vals), _count_nodes(vals))


def eigenfunction_overlap(f1: OracleEigenfunction, f2: OracleEigenfunction) -> float:
    """|integral f1 f2 dx| over the shared grid (Simpson)."""
    if f1.grid != f2.grid:
        raise DomainError("eigenfunction_overlap: eigenfunctions on different grids")
    xs = list(f1.grid)
    return abs(_simpson([a * b for a, b in zip(f1.values, f2.values)], xs))

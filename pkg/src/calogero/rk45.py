"""Embedded Cash-Karp Runge-Kutta 4(5) integrator on plain Python floats.

This exists so the shooting-method eigenvalue oracle shares no numerical
machinery with the gamma-function spectral code it is checking: no numpy,
no scipy, just the textbook tableau and proportional step control.

Solutions of the radial problem sweep hundreds of orders of magnitude
under a potential barrier, so the state vector is renormalized to unit
scale whenever its magnitude passes `renorm_threshold`, and the running
log of the extracted factors is reported as `log_scale`: the true
solution is y * exp(log_scale).  Renormalization commutes with the
linear ODEs this package integrates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConvergenceError, DomainError

__all__ = ["IntegrationResult", "integrate"]

# Cash-Karp tableau
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


@dataclass(frozen=True)
class IntegrationResult:
    x: float
    y: tuple[float, ...]
    log_scale: float
    n_steps: int
    n_rejected: int

    def true_y(self) -> tuple[float, ...]:
        s = math.exp(self.log_scale)
        return tuple(v * s for v in self.y)


def integrate(
    f: Callable[[float, Sequence[float]], Sequence[float]],
    x0: float,
    y0: Sequence[float],
    x1: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    max_step: float | None = None,
    first_step: float | None = None,
    renorm_threshold: float = 1e100,
    max_steps: int = 200_000,
) -> IntegrationResult:
    """Integrate y' = f(x, y) from x0 to x1 (either direction).

    abs_tol = 0.0 makes the error control purely relative, which is the
    right frame for solutions that pass through 1e-200 on their way up a
    barrier; components near a simple zero are still guarded because the
    error is weighed against the max of old and new magnitudes.
    """
    if math.isnan(x0) or math.isnan(x1):
        raise DomainError("integrate: NaN endpoint")
    if x1 == x0:
        return IntegrationResult(x0, tuple(float(v) for v in y0), 0.0, 0, 0)
    if rel_tol < 1e-14 or rel_tol > 1e-2:
        raise DomainError(f"integrate: rel_tol {rel_tol} outside [1e-14, 1e-2]")

    direction = 1.0 if x1 > x0 else -1.0
    span = abs(x1 - x0)
    h = first_step if first_step is not None else span / 128.0
    if max_step is not None:
        h = min(h, max_step)
    h = max(h, 1e-14 * span)

    x = float(x0)
    y = [float(v) for v in y0]
    n = len(y)
    log_scale = 0.0
    n_steps = 0
    n_rejected = 0
    k = [[0.0] * n for _ in range(6)]

    while (x1 - x) * direction > 0.0:
        if n_steps + n_rejected >= max_steps:
            raise ConvergenceError(
                f"integrate: {max_steps} steps exhausted at x = {x:.6g} "
                f"(target {x1:.6g})"
            )
        h = min(h, abs(x1 - x))
        hs = h * direction

        k[0] = list(f(x, y))
        for i in range(1, 6):
            yi = y[:]
            for j, a in enumerate(_A[i]):
                if a != 0.0:
                    ah = a * hs
                    kj = k[j]
                    for m in range(n):
                        yi[m] += ah * kj[m]
            k[i] = list(f(x + _C[i] * hs, yi))

        y_new = y[:]
        err = [0.0] * n
        for i in range(6):
            b, e, ki = _B5[i], _E[i], k[i]
            for m in range(n):
                if b != 0.0:
                    y_new[m] += hs * b * ki[m]
                err[m] += hs * e * ki[m]

        # mixed error norm; scale guards both tiny and crossing components
        norm = 0.0
        for m in range(n):
            sc = abs_tol + rel_tol * max(abs(y[m]), abs(y_new[m]), 1e-290)
            norm = max(norm, abs(err[m]) / sc)

        if norm <= 1.0 or h <= 1e-13 * span:
            x = x1 if abs(x1 - (x + hs)) < 1e-14 * span else x + hs
            y = y_new
            n_steps += 1
            big = max(abs(v) for v in y)
            if big > renorm_threshold:
                log_scale += math.log(big)
                y = [v / big for v in y]
        else:
            n_rejected += 1

        grow = 0.9 * norm ** -0.2 if norm > 0.0 else 5.0
        h *= min(5.0, max(0.2, grow))
        if max_step is not None:
            h = min(h, max_step)

    return IntegrationResult(x, tuple(y), log_scale, n_steps, n_rejected)

"""Iteration drivers: power iteration and shifted inverse (Rayleigh
quotient) iteration, plus the pivoted tridiagonal solver they share.

All inner products and norms for the tridiagonal system live in the
weighted space L2(mu), where mu is the system's speed measure; that is
the space in which -Q is self-adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tridiag
from .errors import ConvergenceError, SingularShiftError, ZeroSpectralGapError
from .initials import InitialGuess, efficient_initials, rayleigh_quotient, speed_measure
from .tridiag import TridiagonalSystem

__all__ = [
    "IterationTrace",
    "RqiConfig",
    "power_iteration",
    "solve_tridiagonal",
    "solve_shifted",
    "rqi",
    "residual_bounds",
    "max_eigenpair",
    "POWER_ITERATION_CAP",
]

POWER_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class IterationTrace:
    """Record of one iteration run.

    ``steps`` holds ``(k, z, residual)`` triples with ``k`` strictly
    increasing (from 0 for power iteration, from 1 for RQI); ``z`` is the
    current estimate of the bottom eigenvalue of ``-Q`` and ``residual``
    the achieved residual norm of the recorded pair.  ``final_vector`` and
    ``z_final`` are the best pair at exit -- for RQI that pair is the
    by-product of the convergence-probe solve and is typically several
    digits better than the last recorded step.
    """

    steps: tuple
    final_vector: np.ndarray
    converged: bool
    pitfall_warning: bool
    z_final: float
    mode: str

    @property
    def zs(self) -> np.ndarray:
        """The recorded eigenvalue estimates, in order."""
        return np.array([z for _, z, _ in self.steps])


@dataclass(frozen=True)
class RqiConfig:
    """Knobs for the RQI driver.

    ``tol`` is the relative stagnation tolerance on successive ``z``;
    ``resid_rtol`` the relative residual level at which the probe solve
    declares the previous pair converged; ``mu`` optionally overrides the
    weight sequence of the L2 norm (default: the system's speed measure).
    """

    tol: float = 1e-12
    max_iters: int = 50
    resid_rtol: float = 1e-7
    mu: np.ndarray | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


def _mu_norm(v: np.ndarray, mu: np.ndarray) -> float:
    return float(np.sqrt(np.dot(mu * v, v)))


def _sign_fixed(v: np.ndarray) -> np.ndarray:
    """Flip the sign so the last component is positive (when nonzero)."""
    return -v if v[-1] < 0 else v


def power_iteration(
    q: TridiagonalSystem, v0, max_iters: int = 1000, shift: float | None = None
) -> IterationTrace:
    """Power iteration on the nonnegative matrix ``A = Q + m*I``.

    The shift is ``m = max_i |Q_ii| + 1`` unless overridden; adding one
    keeps the diagonal strictly positive (primitivity) and is the
    convention under which the recorded sequence matches the published
    reference table.  Iterates are normalized in l1; step ``k`` records
    ``m - ||A v_k||_1``, the current estimate of the bottom eigenvalue of
    ``-Q`` (the estimate at ``k = 0`` is independent of ``m``).
    """
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if max_iters > POWER_ITERATION_CAP:
        raise ValueError(f"max_iters capped at {POWER_ITERATION_CAP}")
    m = float(np.max(np.abs(q.diagonal()))) + 1.0 if shift is None else float(shift)
    v = np.asarray(v0, float)
    nrm = float(np.sum(np.abs(v)))
    if nrm == 0.0:
        raise ValueError("v0 must be nonzero")
    v = v / nrm
    steps = []
    prev = None
    for k in range(max_iters):
        w = tridiag.apply(q, v) + m * v
        nrm = float(np.sum(np.abs(w)))
        if nrm == 0.0:
            raise SingularShiftError("A v vanished: shift made A singular on v")
        est = m - nrm
        resid = float(np.sum(np.abs(w - nrm * v)))
        steps.append((k, est, resid))
        v = w / nrm
        prev = est
    converged = (
        len(steps) >= 2
        and abs(steps[-1][1] - steps[-2][1]) <= 1e-12 * max(1.0, abs(steps[-1][1]))
    ) or len(steps) == 1 and q.dimension == 1
    return IterationTrace(
        steps=tuple(steps),
        final_vector=_sign_fixed(v),
        converged=converged,
        pitfall_warning=False,
        z_final=prev,
        mode="power",
    )


def solve_tridiagonal(lower, diag, upper, rhs) -> np.ndarray:
    """Solve a general tridiagonal system by Gaussian elimination with
    partial pivoting (one super-super-diagonal of fill-in).

    ``lower`` holds the entries ``T[i+1, i]`` (length n-1), ``diag`` the
    diagonal (length n), ``upper`` the entries ``T[i, i+1]`` (length n-1).
    Raises :class:`SingularShiftError` when a pivot falls below the
    numerical-rank threshold.
    """
    d = np.array(diag, float)
    n = d.size
    dl = np.array(lower, float)
    du = np.array(upper, float)
    x = np.array(rhs, float)
    if dl.size != n - 1 or du.size != n - 1 or x.size != n:
        raise ValueError("band/right-hand-side lengths are inconsistent")
    scale = max(
        float(np.max(np.abs(d))) if n else 0.0,
        float(np.max(np.abs(dl))) if n > 1 else 0.0,
        float(np.max(np.abs(du))) if n > 1 else 0.0,
    )
    if scale == 0.0:
        raise SingularShiftError("zero matrix")
    thresh = 32.0 * np.finfo(float).eps * scale
    du2 = np.zeros(n - 2) if n > 2 else np.zeros(0)
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if abs(d[i]) <= thresh:
                raise SingularShiftError(f"pivot {d[i]:.3e} below threshold at row {i}")
            fact = dl[i] / d[i]
            d[i + 1] -= fact * du[i]
            x[i + 1] -= fact * x[i]
        else:
            # swap rows i and i+1
            if abs(dl[i]) <= thresh:
                raise SingularShiftError(f"pivot {dl[i]:.3e} below threshold at row {i}")
            fact = d[i] / dl[i]
            d[i] = dl[i]
            old_d1 = d[i + 1]
            d[i + 1] = du[i] - fact * old_d1
            du[i] = old_d1
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            x[i], x[i + 1] = x[i + 1], x[i] - fact * x[i + 1]
    if abs(d[n - 1]) <= thresh:
        raise SingularShiftError(f"pivot {d[n - 1]:.3e} below threshold at row {n - 1}")
    x[n - 1] /= d[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
    return x


def _perturbed_solve(q: TridiagonalSystem, z: float, rhs) -> np.ndarray | None:
    """Retry a singular shifted solve with progressively larger shift
    perturbations (below the eigenvalue first); ``None`` when every retry
    stays singular."""
    scale = max(1.0, abs(z))
    for delta in (1e-10, 1e-7, 1e-4):
        for sign in (-1.0, 1.0):
            try:
                return solve_shifted(q, z + sign * delta * scale, rhs)
            except SingularShiftError:
                continue
    return None


def solve_shifted(q: TridiagonalSystem, z: float, rhs) -> np.ndarray:
    """Solve ``(-Q - z*I) w = rhs``.

    ``-Q`` has diagonal ``a_i + b_i + c_i`` and off-diagonals ``-a``,
    ``-b``.  A (numerically) singular shift -- ``z`` equal to an
    eigenvalue of ``-Q`` to working precision -- raises
    :class:`SingularShiftError`, which iteration drivers treat as
    convergence.
    """
    rhs = np.asarray(rhs, float)
    if rhs.shape != (q.dimension,):
        raise ValueError(f"rhs length {rhs.size} != system dimension {q.dimension}")
    diag = (q.sub_padded() + q.super_padded() + q.c) - z
    return solve_tridiagonal(-q.a, diag, -q.b, rhs)


def rqi(
    q: TridiagonalSystem,
    guess: InitialGuess | None = None,
    cfg: RqiConfig | None = None,
    *,
    v0=None,
    z0: float | None = None,
) -> IterationTrace:
    """Shifted inverse iteration with Rayleigh-quotient updates.

    Starting from ``(v0, z0)`` -- taken from ``guess`` unless given
    explicitly; the default shift of a guess is its automatic Rayleigh
    quotient -- each step solves ``(-Q - z_{k-1}) w_k = v_{k-1}``,
    normalizes ``v_k = w_k / ||w_k||`` in L2(mu) and records
    ``z_k = (v_k, -Q v_k)_mu`` together with the exact residual
    ``||(-Q - z_{k-1}) v_k|| = 1 / ||w_k||`` of the new vector at the old
    shift.

    Stopping: once at least one step is recorded, a solve whose residual
    satisfies ``1/||w|| <= resid_rtol * |z|`` acts as a convergence probe
    -- the previous recorded estimate was already converged, no new step
    is recorded, and the probe's (further refined) vector and quotient are
    returned as ``final_vector`` / ``z_final``.  A singular solve means
    the shift hit an eigenvalue exactly: the eigenvector is extracted by
    retrying with a minutely perturbed shift and the refined pair is
    returned as converged (the pre-solve pair, if every retry stays
    singular).  Stagnation (``|z_k - z_{k-1}| <= tol * |z_k|``) also
    stops.  Exceeding ``max_iters`` raises :class:`ConvergenceError` with
    the partial trace attached.

    ``pitfall_warning`` is set when the final estimate exceeds ``2/delta1``
    -- the upper end of the bracket that must contain the bottom
    eigenvalue -- meaning the iteration converged to a higher eigenvalue.
    """
    cfg = cfg or RqiConfig()
    if guess is not None:
        v_start = guess.v0 if v0 is None else np.asarray(v0, float)
        z = guess.z0_automatic if z0 is None else float(z0)
        delta1 = guess.delta1
    else:
        if v0 is None or z0 is None:
            raise ValueError("need either a guess or explicit v0 and z0")
        v_start = np.asarray(v0, float)
        z = float(z0)
        delta1 = None
    mu = speed_measure(q) if cfg.mu is None else np.asarray(cfg.mu, float)
    v = v_start / _mu_norm(v_start, mu)

    if delta1 is None:
        try:
            delta1 = efficient_initials(q).delta1
        except ZeroSpectralGapError:
            delta1 = None

    def finish(vec, z_val, steps, converged):
        warn = delta1 is not None and z_val > 2.0 / delta1
        return IterationTrace(
            steps=tuple(steps),
            final_vector=_sign_fixed(vec),
            converged=converged,
            pitfall_warning=warn,
            z_final=float(z_val),
            mode="rqi",
        )

    steps = []
    for k in range(1, cfg.max_iters + 1):
        try:
            w = solve_shifted(q, z, v)
        except SingularShiftError:
            # the shift sits on an eigenvalue to machine precision; nudge
            # it off to extract the eigenvector, then report that pair
            w = _perturbed_solve(q, z, v)
            if w is None:
                return finish(v, z, steps, True)
            v_new = w / _mu_norm(w, mu)
            return finish(v_new, rayleigh_quotient(q, v_new, mu), steps, True)
        omega = _mu_norm(w, mu)
        resid = 1.0 / omega
        v_new = w / omega
        if steps and resid <= cfg.resid_rtol * abs(z):
            # probe solve: the recorded pair was converged; return the
            # refined pair produced by this extra inverse-iteration step
            return finish(v_new, rayleigh_quotient(q, v_new, mu), steps, True)
        z_new = rayleigh_quotient(q, v_new, mu)
        steps.append((k, z_new, resid))
        v = v_new
        if abs(z_new - z) <= cfg.tol * abs(z_new):
            return finish(v, z_new, steps, True)
        z = z_new
    raise ConvergenceError(
        f"RQI did not meet the stopping rule within {cfg.max_iters} iterations",
        trace=finish(v, z, steps, False),
    )


def residual_bounds(q: TridiagonalSystem, v, z: float, mu=None) -> tuple[float, float]:
    """Interval ``z -/+ r`` with ``r = ||(-Q - z)v||_mu / ||v||_mu``.

    Because ``-Q`` is self-adjoint in L2(mu), the interval contains at
    least one eigenvalue of ``-Q``.
    """
    v = np.asarray(v, float)
    mu = speed_measure(q) if mu is None else np.asarray(mu, float)
    nrm = _mu_norm(v, mu)
    if nrm == 0.0:
        raise ValueError("residual bounds of the zero vector")
    resid = _mu_norm(-tridiag.apply(q, v) - z * v, mu) / nrm
    return float(z - resid), float(z + resid)


def max_eigenpair(
    q: TridiagonalSystem, cfg: RqiConfig | None = None
) -> tuple[float, np.ndarray, IterationTrace]:
    """Maximal eigenpair of ``Q`` via efficient initials + RQI.

    Returns ``(lambda0, g, trace)`` where ``lambda0`` is the bottom
    eigenvalue of ``-Q`` (so the maximal eigenvalue of ``Q`` is
    ``-lambda0``) and ``g`` is the positive eigenvector scaled to
    ``g_N = 1``.  Systems without any killing are an exact special case:
    ``lambda0 = 0`` with constant eigenvector.
    """
    try:
        guess = efficient_initials(q)
    except ZeroSpectralGapError:
        g = np.ones(q.dimension)
        trace = IterationTrace(
            steps=(),
            final_vector=g / _mu_norm(g, speed_measure(q)),
            converged=True,
            pitfall_warning=False,
            z_final=0.0,
            mode="exact",
        )
        return 0.0, g, trace
    trace = rqi(q, guess, cfg)
    g = trace.final_vector / trace.final_vector[-1]
    return trace.z_final, g, trace

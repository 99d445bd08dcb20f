"""Independent spectrum oracle for tridiagonal systems.

Eigenvalues come from bisection driven by Sturm-sequence counts on the
symmetrized matrix -- no external eigensolver and no code shared with the
iteration drivers -- so golden values produced here genuinely cross-check
the rest of the package.  Eigenvectors use a couple of inverse-iteration
passes through the pivoted band solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularShiftError
from .iterate import solve_tridiagonal
from .tridiag import TridiagonalSystem

__all__ = [
    "SymmetricTridiagonal",
    "SpectrumResult",
    "symmetrize",
    "sturm_spectrum",
    "spectrum",
    "max_eigenpair_reference",
    "DEFAULT_ORACLE_CAP",
]

DEFAULT_ORACLE_CAP = 10_000


@dataclass(frozen=True)
class SymmetricTridiagonal:
    """Symmetric similarity transform of ``Q``: diagonal unchanged,
    off-diagonal ``i <-> i+1`` replaced by ``sqrt(a_{i+1} b_i)``."""

    diag: np.ndarray
    off: np.ndarray


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenvalues of ``-Q`` with multiplicity flags (all 1 for
    irreducible tridiagonal systems)."""

    eigenvalues: np.ndarray
    multiplicities: np.ndarray


def symmetrize(q: TridiagonalSystem) -> SymmetricTridiagonal:
    """Similarity transform by ``diag(sqrt(mu))``; spectrum preserved.

    Uses the reversibility identity ``mu_i b_i = mu_{i+1} a_{i+1}``: the
    transformed off-diagonal is ``sqrt(a_{i+1} b_i)``, the diagonal of
    ``Q`` is unchanged.
    """
    return SymmetricTridiagonal(diag=q.diagonal(), off=np.sqrt(q.a * q.b))


def _count_below(diag: np.ndarray, off2: np.ndarray, x: float, pivmin: float) -> int:
    """Number of eigenvalues (of the symmetric matrix) strictly below x,
    by the standard LDL^T pivot-sign count."""
    count = 0
    d = diag[0] - x
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0:
        count += 1
    for i in range(1, diag.size):
        d = diag[i] - x - off2[i - 1] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def sturm_spectrum(sym: SymmetricTridiagonal, k: int | None = None) -> SpectrumResult:
    """The ``k`` smallest eigenvalues of ``-Q``, bisected to
    floating-point resolution.

    ``sym`` is the symmetrized ``Q``; internally the bisection runs on its
    negation (the count only uses squared off-diagonals, so the sign
    convention of the off-diagonal is irrelevant).
    """
    n = sym.diag.size
    if k is None:
        k = n
    if not 1 <= k <= n:
        raise ValueError(f"eigenvalue count k={k} out of range 1..{n}")
    diag = -np.asarray(sym.diag, float)  # matrix -Q (symmetrized)
    off = np.asarray(sym.off, float)
    off2 = off * off
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += np.abs(off)
        radius[1:] += np.abs(off)
    lo0 = float(np.min(diag - radius))
    hi0 = float(np.max(diag + radius))
    scale = max(abs(lo0), abs(hi0), 1.0)
    pivmin = np.finfo(float).eps * scale * 1e-3
    eigenvalues = np.empty(k)
    lo_j = lo0
    for j in range(k):
        lo, hi = lo_j, hi0
        # bisect until the interval is no longer representable (roughly
        # one ulp of the eigenvalue) so that small eigenvalues keep their
        # relative accuracy; 120 halvings bound the subnormal case
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _count_below(diag, off2, mid, pivmin) >= j + 1:
                hi = mid
            else:
                lo = mid
        eigenvalues[j] = 0.5 * (lo + hi)
        lo_j = lo  # eigenvalues are requested in ascending order
    widths = np.maximum(1e-10, 1e-10 * np.abs(eigenvalues))
    mult = np.array(
        [
            _count_below(diag, off2, ev + w, pivmin)
            - _count_below(diag, off2, ev - w, pivmin)
            for ev, w in zip(eigenvalues, widths)
        ]
    )
    return SpectrumResult(eigenvalues=eigenvalues, multiplicities=np.maximum(mult, 1))


def spectrum(q: TridiagonalSystem, k: int | None = None) -> SpectrumResult:
    """Convenience wrapper: symmetrize then run the Sturm bisection."""
    return sturm_spectrum(symmetrize(q), k)


def _speed_measure(q: TridiagonalSystem) -> np.ndarray:
    # local one-liner to keep the oracle self-contained
    if q.n_max == 0:
        return np.ones(1)
    return np.concatenate(([1.0], np.cumprod(q.b / q.a)))


def max_eigenpair_reference(
    q: TridiagonalSystem, cap: int = DEFAULT_ORACLE_CAP
) -> tuple[float, np.ndarray]:
    """Reference maximal eigenpair: ``lambda0`` (bottom eigenvalue of
    ``-Q``) and the positive eigenvector ``g`` scaled so ``g_N = 1``.

    The eigenvector comes from two inverse-iteration passes at
    ``lambda0 + 1e-10*max(1, |lambda0|)`` from a seeded positive start,
    run on the symmetrized matrix and mapped back through ``sqrt(mu)``.
    """
    if q.n_max > cap:
        raise ValueError(f"system size N={q.n_max} exceeds the oracle cap {cap}")
    sym = symmetrize(q)
    lam0 = float(sturm_spectrum(sym, 1).eigenvalues[0])
    n = q.dimension
    if n == 1:
        return lam0, np.ones(1)
    # inverse iteration on the symmetrized -Q (off-diagonal sign matters
    # for the vector: the true transform of -Q carries -sqrt(ab))
    off = -sym.off
    delta = 1e-10 * max(1.0, abs(lam0))
    rng = np.random.default_rng(0)
    y = rng.uniform(0.5, 1.5, size=n)
    passes = 0
    attempts = 0
    while passes < 2 and attempts < 8:
        attempts += 1
        diag = -sym.diag - (lam0 + delta)
        try:
            y_new = solve_tridiagonal(off, diag, off, y)
        except SingularShiftError:
            delta *= 1000.0  # nudge the shift off the exact eigenvalue
            continue
        y = y_new / float(np.linalg.norm(y_new))
        passes += 1
    g = y / np.sqrt(_speed_measure(q))
    if g[-1] < 0:
        g = -g
    if g[-1] == 0:  # pragma: no cover - cannot happen for a Perron vector
        raise ArithmeticError("degenerate eigenvector scaling")
    return lam0, g / g[-1]

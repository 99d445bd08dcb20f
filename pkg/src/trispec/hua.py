"""Input-output economy collapse simulation.

An economy is a nonnegative structure matrix ``A`` and a positive initial
product row vector ``x0``; year ``n`` consumes according to
``x_n = x_{n-1} A^{-1}`` (computed by linear solves, never by forming the
inverse).  The economy collapses the first year some component becomes
nonpositive; starting exactly along the maximal left eigenvector is the
only ray that grows forever, by a factor ``1/rho(A)`` per year.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, FormatError, InvalidSystemError
from .tridiag import DenseMatrix

__all__ = [
    "Economy",
    "CollapseReport",
    "collapse_time",
    "dense_max_eigenpair",
    "parse_economy",
]


@dataclass(frozen=True)
class Economy:
    """Structure matrix (nonnegative, invertible) plus initial input."""

    structure: DenseMatrix
    input: np.ndarray

    def __post_init__(self):
        x0 = np.asarray(self.input, float)
        object.__setattr__(self, "input", x0)
        if np.any(self.structure.entries < 0):
            raise InvalidSystemError("structure matrix entries must be nonnegative")
        if x0.ndim != 1 or x0.size != self.structure.order:
            raise InvalidSystemError("input vector length must match the matrix order")
        if np.any(x0 <= 0):
            raise InvalidSystemError("input vector entries must be strictly positive")


@dataclass(frozen=True)
class CollapseReport:
    """Outcome of a collapse simulation.

    ``trajectory`` holds ``x_0, x_1, ...`` up to (and including) the
    collapse year, or up to the horizon when no collapse occurred;
    ``offending_component`` is the first index that went nonpositive.
    """

    collapse_year: int | None
    offending_component: int | None
    trajectory: tuple

    @property
    def collapsed(self) -> bool:
        return self.collapse_year is not None


def collapse_time(economy: Economy, horizon: int = 1000) -> CollapseReport:
    """Iterate ``x_n A = x_{n-1}`` and report the first nonpositive year.

    Nonpositivity is the strict test ``<= 0`` with no epsilon.  Raises on
    a singular structure matrix.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    a_t = economy.structure.entries.T
    x = economy.input
    trajectory = [x.copy()]
    for year in range(1, horizon + 1):
        try:
            x = np.linalg.solve(a_t, x)
        except np.linalg.LinAlgError as exc:
            raise InvalidSystemError(f"structure matrix is singular: {exc}") from exc
        trajectory.append(x.copy())
        bad = np.flatnonzero(x <= 0.0)
        if bad.size:
            return CollapseReport(
                collapse_year=year,
                offending_component=int(bad[0]),
                trajectory=tuple(trajectory),
            )
    return CollapseReport(
        collapse_year=None, offending_component=None, trajectory=tuple(trajectory)
    )


def dense_max_eigenpair(
    a: DenseMatrix, last: float = 1.0
) -> tuple[float, np.ndarray, np.ndarray]:
    """Maximal eigenvalue of a nonnegative irreducible matrix with its
    left and right eigenvectors.

    Power method on ``A + s*I`` (``s = 1 + max |diag|`` makes the matrix
    primitive), the left vector via the transpose.  ``u`` and ``g`` are
    scaled so their last component equals ``last`` (the published 2x2
    example uses the input convention ``u = (..., 20)``).
    """
    entries = a.entries
    if np.any(entries < 0):
        raise InvalidSystemError("matrix entries must be nonnegative")
    s = 1.0 + float(np.max(np.abs(np.diagonal(entries)))) if a.order > 0 else 1.0
    shifted = entries + s * np.eye(a.order)

    def perron(m: np.ndarray) -> tuple[float, np.ndarray]:
        v = np.ones(m.shape[0])
        v /= v.sum()
        rho_est = 0.0
        for _ in range(100_000):
            w = m @ v
            nrm = float(np.sum(np.abs(w)))
            if nrm == 0.0:
                raise InvalidSystemError("matrix annihilated a positive vector")
            w /= nrm
            if abs(nrm - rho_est) <= 1e-15 * nrm and float(np.max(np.abs(w - v))) <= 1e-14:
                return nrm, w
            v, rho_est = w, nrm
        raise ConvergenceError(
            "power method failed to converge (matrix may be reducible)"
        )

    rho_right, g = perron(shifted)
    rho_left, u = perron(shifted.T)
    rho = 0.5 * (rho_right + rho_left) - s
    if u[-1] <= 0 or g[-1] <= 0:
        raise InvalidSystemError("eigenvector not positive: matrix may be reducible")
    return rho, u * (last / u[-1]), g * (last / g[-1])


def parse_economy(text: str) -> Economy:
    """Parse the labeled text format for an economy.

    ``A:`` starts the matrix, one row per line (continuation lines are
    further rows); ``x0:`` gives the input vector inline.  Elements are
    decimal literals separated by whitespace or commas; ``#`` starts a
    comment.
    """
    rows: list[list[float]] = []
    x0: list[float] | None = None
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("a:"):
            current = "a"
            line = line[2:].strip()
        elif lowered.startswith("x0:"):
            if x0 is not None:
                raise FormatError(f"economy line {lineno}: duplicate x0")
            current = "x0"
            x0 = []
            line = line[3:].strip()
        elif current is None:
            raise FormatError(f"economy line {lineno}: data before any 'A:'/'x0:' label")
        if not line:
            continue
        try:
            values = [float(tok) for tok in _split_tokens(line)]
        except ValueError as exc:
            raise FormatError(f"economy line {lineno}: {exc}") from None
        if current == "a":
            rows.append(values)
        else:
            x0.extend(values)
    if not rows:
        raise FormatError("economy input is missing the matrix 'A:'")
    if x0 is None:
        raise FormatError("economy input is missing the vector 'x0:'")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise FormatError("economy matrix rows have inconsistent lengths")
    try:
        matrix = DenseMatrix(np.array(rows, float))
        return Economy(structure=matrix, input=np.array(x0, float))
    except InvalidSystemError as exc:
        raise FormatError(f"invalid economy: {exc}") from exc


def _split_tokens(line: str) -> list[str]:
    return [tok for tok in re.split(r"[,\s]+", line) if tok]

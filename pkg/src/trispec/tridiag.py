"""Tridiagonal systems in birth-death form.

A system is the matrix ``Q`` on indices ``0..N`` whose row ``i`` holds
``a_i`` on the sub-diagonal, ``-(a_i + b_i + c_i)`` on the diagonal (with
the conventions ``a_0 = 0`` and ``b_N = 0``) and ``b_i`` on the
super-diagonal.  The off-diagonal couplings ``a`` and ``b`` are strictly
positive, the killing rates ``c`` are nonnegative, and every row sums to
``-c_i``.  Only the three sequences are stored; a dense matrix is formed
on demand (the reference solver needs one for small cross-checks).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, InvalidSystemError

__all__ = [
    "TridiagonalSystem",
    "DenseMatrix",
    "build_system",
    "square_model",
    "apply",
    "shift_to_canonical",
    "parse_system",
]


def _frozen_array(values, dtype=float):
    arr = np.asarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TridiagonalSystem:
    """Immutable tridiagonal system defined by its three sequences.

    ``a`` stores ``a_1..a_N`` (length ``N``), ``b`` stores ``b_0..b_{N-1}``
    (length ``N``) and ``c`` stores ``c_0..c_N`` (length ``N + 1``).
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    n_max: int = field(init=False)

    def __post_init__(self):
        a = _frozen_array(self.a)
        b = _frozen_array(self.b)
        c = _frozen_array(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if c.ndim != 1 or a.ndim != 1 or b.ndim != 1 or c.size == 0:
            raise InvalidSystemError("a, b, c must be one-dimensional and c nonempty")
        n = c.size - 1
        if a.size != n or b.size != n:
            raise InvalidSystemError(
                f"length mismatch: need len(a) = len(b) = {n} and len(c) = {n + 1}, "
                f"got {a.size}, {b.size}, {c.size}"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise InvalidSystemError("entries must be finite")
        if np.any(a <= 0):
            raise InvalidSystemError("sub-diagonal couplings a_i must be strictly positive")
        if np.any(b <= 0):
            raise InvalidSystemError("super-diagonal couplings b_i must be strictly positive")
        if np.any(c < 0):
            raise InvalidSystemError("killing rates c_i must be nonnegative")
        object.__setattr__(self, "n_max", n)

    @property
    def dimension(self) -> int:
        """Matrix order ``N + 1``."""
        return self.n_max + 1

    def sub_padded(self) -> np.ndarray:
        """``a_0..a_N`` with the convention ``a_0 = 0``."""
        return np.concatenate(([0.0], self.a))

    def super_padded(self) -> np.ndarray:
        """``b_0..b_N`` with the convention ``b_N = 0``."""
        return np.concatenate((self.b, [0.0]))

    def diagonal(self) -> np.ndarray:
        """Diagonal of ``Q``: ``-(a_i + b_i + c_i)``."""
        return -(self.sub_padded() + self.super_padded() + self.c)

    def dense(self) -> np.ndarray:
        """Dense ``(N+1) x (N+1)`` form of ``Q`` (on demand only)."""
        n = self.dimension
        q = np.zeros((n, n))
        q[np.arange(n), np.arange(n)] = self.diagonal()
        if self.n_max:
            idx = np.arange(1, n)
            q[idx, idx - 1] = self.a
            q[idx - 1, idx] = self.b
        return q


@dataclass(frozen=True)
class DenseMatrix:
    """Small dense square matrix (row-major) for oracles and examples."""

    entries: np.ndarray
    order: int = field(init=False)

    def __post_init__(self):
        entries = _frozen_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidSystemError("dense matrix must be square")
        if not np.all(np.isfinite(entries)):
            raise InvalidSystemError("dense matrix entries must be finite")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "order", entries.shape[0])


def build_system(a, b, c) -> TridiagonalSystem:
    """Validate the three sequences and assemble a system.

    ``a`` and ``b`` have length ``N`` and ``c`` has length ``N + 1``;
    positivity requirements are as in :class:`TridiagonalSystem`.
    """
    return TridiagonalSystem(np.asarray(a, float), np.asarray(b, float), np.asarray(c, float))


def square_model(n_max: int) -> TridiagonalSystem:
    """The quadratic-rates benchmark family.

    ``a_k = k**2``, ``b_k = (k + 1)**2``, ``c_k = 0`` except
    ``c_N = (N + 1)**2``.  ``n_max`` must be at least 1.
    """
    if n_max < 1:
        raise InvalidSystemError("square_model requires n_max >= 1")
    k = np.arange(1, n_max + 1, dtype=float)
    a = k**2
    b = k**2  # b_{k-1} = k**2, i.e. b_j = (j+1)**2
    c = np.zeros(n_max + 1)
    c[n_max] = (n_max + 1) ** 2
    return TridiagonalSystem(a, b, c)


def apply(q: TridiagonalSystem, v) -> np.ndarray:
    """Matrix-vector product ``Q v`` computed row-wise in O(N)."""
    v = np.asarray(v, float)
    if v.shape != (q.dimension,):
        raise InvalidSystemError(f"vector length {v.size} != system dimension {q.dimension}")
    out = q.diagonal() * v
    if q.n_max:
        out[1:] += q.a * v[:-1]
        out[:-1] += q.b * v[1:]
    return out


def shift_to_canonical(m: DenseMatrix) -> tuple[TridiagonalSystem, float]:
    """Convert a tridiagonal matrix with positive couplings to canonical form.

    Returns ``(system, shift)`` with ``shift`` equal to the maximal row sum,
    so that the input equals ``Q + shift*I`` and the two share eigenvalues
    up to that additive shift.
    """
    entries = m.entries
    n = m.order
    band_mask = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) <= 1
    if np.any(entries[~band_mask] != 0.0):
        raise InvalidSystemError("matrix is not tridiagonal")
    sub = np.diagonal(entries, -1).copy()
    sup = np.diagonal(entries, 1).copy()
    if np.any(sub < 0) or np.any(sup < 0):
        raise InvalidSystemError("off-diagonal entries must be nonnegative")
    if n > 1 and (np.any(sub == 0) or np.any(sup == 0)):
        raise InvalidSystemError("zero coupling: matrix is reducible")
    row_sums = entries.sum(axis=1)
    shift = float(np.max(row_sums))
    c = shift - row_sums
    np.maximum(c, 0.0, out=c)  # clip roundoff at the maximal row
    return TridiagonalSystem(sub, sup, c), shift


_LABEL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(.*)$")


def _tokenize_arrays(text: str, what: str) -> dict[str, list[float]]:
    """Parse labeled arrays: ``name: v v ...`` with continuation lines.

    Elements are separated by whitespace and/or commas; ``#`` starts a
    comment; a line without a ``name:`` prefix continues the current array.
    """
    arrays: dict[str, list[float]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LABEL_RE.match(line)
        if match:
            current = match.group(1).lower()
            if current in arrays:
                raise FormatError(f"{what} line {lineno}: duplicate array '{current}'")
            arrays[current] = []
            line = match.group(2)
        elif current is None:
            raise FormatError(f"{what} line {lineno}: data before any 'name:' label")
        for token in re.split(r"[,\s]+", line):
            if not token:
                continue
            try:
                arrays[current].append(float(token))
            except ValueError:
                raise FormatError(
                    f"{what} line {lineno}: invalid number {token!r}"
                ) from None
    return arrays


def parse_system(text: str) -> TridiagonalSystem:
    """Parse the labeled-array text format into a system.

    Grammar (documented in the README): three arrays labeled ``a:``,
    ``b:``, ``c:``; decimal literals separated by whitespace or commas;
    unlabeled lines continue the preceding array; ``#`` starts a comment.
    ``a`` and ``b`` may be empty for 1x1 systems.
    """
    arrays = _tokenize_arrays(text, "system")
    unknown = set(arrays) - {"a", "b", "c"}
    if unknown:
        raise FormatError(f"unknown array label(s): {', '.join(sorted(unknown))}")
    missing = {"a", "b", "c"} - set(arrays)
    if missing:
        raise FormatError(f"missing array label(s): {', '.join(sorted(missing))}")
    try:
        return build_system(arrays["a"], arrays["b"], arrays["c"])
    except InvalidSystemError as exc:
        raise FormatError(f"invalid system: {exc}") from exc

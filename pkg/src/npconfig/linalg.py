"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays of shape ``(n, n)``; :func:`as_cmatrix`
validates and converts. The Hermitian eigensolver is a cyclic Jacobi method with
complex rotations, written so that a whole stack of matrices is diagonalized at
once (the numerical-range sweep needs one eigenproblem per angle).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonFinite, NoConvergence, NotHermitian

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class HermEigen:
    values: np.ndarray  # (n,) real, descending
    vectors: np.ndarray  # (n, n) complex, column i pairs with values[i]


def as_cmatrix(a) -> np.ndarray:
    """Return ``a`` as a finite, square complex array."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has non-finite entries")
    return m


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse ``{"n": n, "entries": [[[re, im], ...], ...]}``."""
    n = int(obj["n"])
    rows = obj["entries"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("ragged matrix entries")
    m = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        for j, z in enumerate(row):
            if len(z) != 2:
                raise ValueError("each entry must be [re, im]")
            m[i, j] = complex(float(z[0]), float(z[1]))
    return as_cmatrix(m)


def matrix_to_json(a) -> dict:
    m = as_cmatrix(a)
    return {
        "n": m.shape[0],
        "entries": [[[z.real, z.imag] for z in row] for row in m],
    }


def _jacobi_batch(a: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a stack ``(B, n, n)`` of Hermitian matrices in place.

    Sweeps run over the upper triangle in row-major order. Every matrix in the
    stack receives the same rotation schedule; rotations on an already-small
    entry are skipped, so converged members are left untouched.
    """
    nb, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    if n == 1:
        return a, v
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    scale = np.where(scale > 0, scale, 1.0)
    iu = np.triu_indices(n, 1)
    tiny = np.finfo(float).tiny

    def off(m):
        return np.sqrt(2.0 * np.sum(np.abs(m[:, iu[0], iu[1]]) ** 2, axis=1))

    extra = False
    for _ in range(MAX_SWEEPS):
        if np.all(off(a) <= tol * scale):
            if extra:
                return a, v
            # one more sweep: Jacobi converges quadratically, so this pushes
            # residuals from tol down to rounding level
            extra = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                live = mag > tiny
                if not np.any(live):
                    continue
                ph = np.where(live, apq / np.where(live, mag, 1.0), 1.0)
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                safe = np.where(live, mag, 1.0)
                tau = (aqq - app) / (2.0 * safe)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                c = np.where(live, c, 1.0)
                s = np.where(live, s, 0.0)
                ph = np.where(live, ph, 1.0)
                # G restricted to (p, q): [[c, s], [-s conj(ph), c conj(ph)]]
                g = np.empty((nb, 2, 2), dtype=complex)
                g[:, 0, 0] = c
                g[:, 0, 1] = s
                g[:, 1, 0] = -s * np.conj(ph)
                g[:, 1, 1] = c * np.conj(ph)
                cols = a[:, :, [p, q]] @ g
                a[:, :, p] = cols[:, :, 0]
                a[:, :, q] = cols[:, :, 1]
                rows = np.conj(np.swapaxes(g, 1, 2)) @ a[:, [p, q], :]
                a[:, p, :] = rows[:, 0, :]
                a[:, q, :] = rows[:, 1, :]
                a[:, p, q] = np.where(live, 0.0, a[:, p, q])
                a[:, q, p] = np.where(live, 0.0, a[:, q, p])
                a[:, p, p] = a[:, p, p].real
                a[:, q, q] = a[:, q, q].real
                vc = v[:, :, [p, q]] @ g
                v[:, :, p] = vc[:, :, 0]
                v[:, :, q] = vc[:, :, 1]
    raise NoConvergence(f"Jacobi sweep limit ({MAX_SWEEPS}) exceeded")


def herm_eig_batch(stack, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a stack of Hermitian matrices.

    Returns ``(values, vectors)`` with shapes ``(B, n)`` and ``(B, n, n)``,
    eigenvalues sorted descending in every row.
    """
    a = np.array(stack, dtype=complex)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected a stack of square matrices")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has non-finite entries")
    asym = np.max(np.abs(a - np.conj(np.swapaxes(a, 1, 2))), axis=(1, 2))
    norm = np.maximum(np.max(np.abs(a), axis=(1, 2)), 1.0)
    if np.any(asym > tol * norm):
        raise NotHermitian(f"max |A - A*| = {asym.max():.3e}")
    a = 0.5 * (a + np.conj(np.swapaxes(a, 1, 2)))
    d, v = _jacobi_batch(a, tol)
    vals = np.real(np.diagonal(d, axis1=1, axis2=2))
    order = np.argsort(-vals, axis=1, kind="stable")
    vals = np.take_along_axis(vals, order, axis=1)
    vecs = np.take_along_axis(v, order[:, None, :], axis=2)
    return vals, vecs


def herm_eig(a, tol: float = DEFAULT_TOL) -> HermEigen:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.

    Raises NotHermitian when ``max|A - A*|`` exceeds ``tol`` (relative to the
    largest entry, floored at 1) and NoConvergence after 100 sweeps.
    """
    m = as_cmatrix(a)
    vals, vecs = herm_eig_batch(m[None], tol)
    return HermEigen(values=vals[0], vectors=vecs[0])


def op_norm(a, tol: float = DEFAULT_TOL) -> float:
    """Spectral norm, computed as sqrt of the top eigenvalue of A*A."""
    m = as_cmatrix(a)
    if not np.any(m):
        return 0.0
    g = np.conj(m.T) @ m
    g = 0.5 * (g + np.conj(g.T))
    lam = herm_eig(g, tol).values[0]
    return float(np.sqrt(max(lam, 0.0)))


def poly_apply(coeffs: Sequence[complex], a) -> np.ndarray:
    """Evaluate ``p(A)`` by Horner's rule; ``coeffs`` are in ascending degree."""
    m = as_cmatrix(a)
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("need at least one coefficient")
    if not np.all(np.isfinite(c)):
        raise NonFinite("non-finite polynomial coefficient")
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    out = c[-1] * eye
    with np.errstate(over="ignore", invalid="ignore"):
        for ck in c[-2::-1]:
            out = out @ m + ck * eye
    if not np.all(np.isfinite(out)):
        raise NonFinite("p(A) overflowed")
    return out

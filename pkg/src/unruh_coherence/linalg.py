"""Dense Hermitian linear algebra on small matrices.

Everything here operates on explicit numpy arrays.  Matrices may carry
arbitrary leading batch axes; the last two axes are the matrix proper.
Eigenvalues come from a hand-rolled cyclic Jacobi iteration on the real
symmetric embedding of the Hermitian input, vectorised over the batch,
so results are bit-for-bit reproducible across runs on the same
platform and do not depend on LAPACK dispatch.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionError,
    DomainError,
    PositivityError,
    ValidationError,
)

# Hermiticity / trace / positivity tolerance for state validation.
DEFAULT_TOL = 1e-9

# Eigenvalues of a density matrix in [-EIGENVALUE_CLIP_TOL, 0) are
# treated as round-off and clipped to zero; anything more negative is a
# genuine positivity violation and raises.
EIGENVALUE_CLIP_TOL = 1e-12

# Jacobi sweep control: converged once the off-diagonal Frobenius norm
# of every matrix in the batch falls below _OFFDIAG_TOL.
_OFFDIAG_TOL = 1e-13
_MAX_SWEEPS = 100


def _as_square(m, name="matrix"):
    m = np.asarray(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError(f"{name} contains non-finite entries")
    return m


def _offdiagonal_norm(a):
    """Frobenius norm of the off-diagonal part, per batch entry.

    Computed by masking the diagonal rather than subtracting norms,
    which would lose all precision once the off-diagonal part is tiny.
    """
    off = a * ~np.eye(a.shape[-1], dtype=bool)
    return np.sqrt(np.einsum("nij,nij->n", off, off))


def _jacobi_sweep(a):
    """One cyclic sweep of Jacobi rotations, in place, over the batch."""
    dim = a.shape[-1]
    for p in range(dim - 1):
        for q in range(p + 1, dim):
            apq = a[:, p, q]
            app = a[:, p, p]
            aqq = a[:, q, q]
            rotate = apq != 0.0
            # Stable closed-form rotation angle: t is the smaller root
            # of t^2 + 2*tau*t - 1 = 0, which zeroes the (p, q) entry.
            # Overflow to inf for denormal apq is harmless (t -> 0).
            with np.errstate(over="ignore", divide="ignore"):
                tau = (aqq - app) / np.where(rotate, 2.0 * apq, 1.0)
                t = np.where(tau >= 0.0, 1.0, -1.0) / (
                    np.abs(tau) + np.hypot(1.0, tau)
                )
            t = np.where(rotate, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            c = c[:, None]
            s = s[:, None]
            row_p = a[:, p, :].copy()
            row_q = a[:, q, :].copy()
            a[:, p, :] = c * row_p - s * row_q
            a[:, q, :] = s * row_p + c * row_q
            col_p = a[:, :, p].copy()
            col_q = a[:, :, q].copy()
            a[:, :, p] = c * col_p - s * col_q
            a[:, :, q] = s * col_p + c * col_q


def symmetric_eigenvalues(sym):
    """Eigenvalues of a batch of real symmetric matrices, ascending.

    Parameters
    ----------
    sym : ndarray, shape (..., d, d)
        Real symmetric matrices.

    Returns
    -------
    ndarray, shape (..., d)
    """
    sym = np.asarray(sym, dtype=float)
    batch_shape = sym.shape[:-2]
    dim = sym.shape[-1]
    a = sym.reshape((-1, dim, dim)).copy()
    for _ in range(_MAX_SWEEPS):
        if float(np.max(_offdiagonal_norm(a))) < _OFFDIAG_TOL:
            break
        _jacobi_sweep(a)
    else:
        worst = float(np.max(_offdiagonal_norm(a)))
        raise ValidationError(
            f"Jacobi iteration did not converge in {_MAX_SWEEPS} sweeps "
            f"(residual off-diagonal norm {worst:.3e})"
        )
    values = np.sort(np.diagonal(a, axis1=-2, axis2=-1), axis=-1)
    return values.reshape(batch_shape + (dim,))


def hermitian_eigenvalues(matrix, tol=DEFAULT_TOL):
    """Eigenvalues of Hermitian matrices via the real symmetric embedding.

    A Hermitian H = A + iB maps to the real symmetric 2d x 2d block
    matrix [[A, -B], [B, A]], whose spectrum is that of H with every
    eigenvalue doubled; we deflate by taking every other sorted value.

    Parameters
    ----------
    matrix : ndarray, shape (..., d, d)
        Hermitian (within `tol` in max-norm) complex or real matrices.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    ndarray, shape (..., d)
        Real eigenvalues in ascending order.
    """
    m = _as_square(np.asarray(matrix, dtype=complex))
    defect = float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2)))))
    if defect > tol:
        raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e})")
    # Force exact hermiticity so the embedding is exactly symmetric; for
    # already-Hermitian input this is a bitwise no-op.
    m = 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))
    re, im = m.real, m.imag
    top = np.concatenate([re, -im], axis=-1)
    bottom = np.concatenate([im, re], axis=-1)
    doubled = symmetric_eigenvalues(np.concatenate([top, bottom], axis=-2))
    return doubled[..., ::2]


def spectrum_entropy(values):
    """Shannon entropy (base 2) of one or more probability spectra.

    Values in [-1e-12, 0) are clipped to zero before the 0*log(0) = 0
    convention is applied; more negative entries raise PositivityError.

    Parameters
    ----------
    values : ndarray, shape (..., k)

    Returns
    -------
    ndarray or float, shape (...)
    """
    w = np.asarray(values, dtype=float)
    low = float(np.min(w)) if w.size else 0.0
    if low < -EIGENVALUE_CLIP_TOL:
        raise PositivityError(
            f"spectrum entry {low:.6e} below -{EIGENVALUE_CLIP_TOL:.0e}"
        )
    w = np.where(w < 0.0, 0.0, w)
    terms = np.zeros_like(w)
    positive = w > 0.0
    np.log2(w, out=terms, where=positive)
    return -np.sum(w * terms, axis=-1)


def von_neumann_entropy(rho, tol=DEFAULT_TOL):
    """Base-2 von Neumann entropy of density matrices (batch aware)."""
    w = hermitian_eigenvalues(rho, tol=tol)
    trace_defect = float(np.max(np.abs(np.sum(w, axis=-1) - 1.0)))
    if trace_defect > tol:
        raise ValidationError(f"trace differs from 1 by {trace_defect:.3e}")
    return spectrum_entropy(w)


def validate_density_matrix(rho, tol=DEFAULT_TOL):
    """Check hermiticity, unit trace and positivity; return the array.

    Raises ValidationError / PositivityError / DimensionError with a
    description of the first violated property.
    """
    m = _as_square(np.asarray(rho, dtype=complex), name="density matrix")
    defect = float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2)))))
    if defect > tol:
        raise ValidationError(f"density matrix not Hermitian (defect {defect:.3e})")
    trace = np.einsum("...ii->...", m)
    trace_defect = float(np.max(np.abs(trace - 1.0)))
    if trace_defect > tol:
        raise ValidationError(f"density matrix trace differs from 1 by {trace_defect:.3e}")
    smallest = float(np.min(hermitian_eigenvalues(m, tol=tol)))
    if smallest < -tol:
        raise PositivityError(f"density matrix has eigenvalue {smallest:.6e}")
    return m


def maximally_mixed(dim):
    """The maximally mixed state I/d on a `dim`-dimensional space."""
    if int(dim) != dim or dim < 1:
        raise DomainError(f"dimension must be a positive integer, got {dim!r}")
    return np.eye(int(dim), dtype=complex) / float(dim)


def equal_mixture(a, b):
    """The midpoint (a + b)/2 of two equal-dimension matrices."""
    a = _as_square(np.asarray(a, dtype=complex), name="first operand")
    b = _as_square(np.asarray(b, dtype=complex), name="second operand")
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(
            f"operands have different dimensions {a.shape[-1]} and {b.shape[-1]}"
        )
    return 0.5 * (a + b)


def tensor_product(a, b):
    """Kronecker product, batched over leading axes."""
    a = _as_square(np.asarray(a, dtype=complex), name="first factor")
    b = _as_square(np.asarray(b, dtype=complex), name="second factor")
    da, db = a.shape[-1], b.shape[-1]
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(out.shape[:-4] + (da * db, da * db))


def partial_trace(rho, keep, dims):
    """Trace out all tensor factors except `keep`.

    Parameters
    ----------
    rho : ndarray, shape (..., D, D) with D = prod(dims)
    keep : int
        Index of the factor to retain.
    dims : sequence of int
        Dimension of each tensor factor, in order.

    Returns
    -------
    ndarray, shape (..., dims[keep], dims[keep])
    """
    rho = _as_square(np.asarray(rho, dtype=complex))
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"factor dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if rho.shape[-1] != total:
        raise DimensionError(
            f"matrix dimension {rho.shape[-1]} != product of factors {total}"
        )
    if not 0 <= keep < len(dims):
        raise DimensionError(f"keep index {keep} out of range for {len(dims)} factors")
    batch_ndim = rho.ndim - 2
    work = rho.reshape(rho.shape[:-2] + dims + dims)
    remaining = list(range(len(dims)))
    while len(remaining) > 1:
        traced = next(i for i in remaining if i != keep)
        pos = remaining.index(traced)
        work = np.trace(
            work,
            axis1=batch_ndim + pos,
            axis2=batch_ndim + len(remaining) + pos,
        )
        remaining.remove(traced)
    return work

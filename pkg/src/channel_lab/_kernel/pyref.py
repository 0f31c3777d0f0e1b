"""Pure-numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not built
(or when CHANNEL_LAB_BACKEND=python forces it). The compiled module
``_core`` exposes the same five functions with the same contracts; the
eigensolver there is a cyclic Jacobi scheme, while here we lean on LAPACK
through :mod:`numpy.linalg`.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

# Ensemble members lighter than this carry no weight and are skipped.
MEMBER_CUTOFF = 1e-15


def _square_hermitian(h: np.ndarray) -> np.ndarray:
    a = np.asarray(h, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return 0.5 * (a + a.conj().T)


def eigh(h):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    The input is symmetrized before decomposition; the columns of the
    returned matrix are the eigenvectors.
    """
    return np.linalg.eigh(_square_hermitian(h))


def eigvalsh(h):
    """Ascending eigenvalues of a Hermitian matrix."""
    return np.linalg.eigvalsh(_square_hermitian(h))


def output_entropy_pure(kraus, psi):
    """Entropy (nats) of ``sum_i (K_i psi)(K_i psi)^dagger`` for unit psi.

    ``kraus`` is a stack of shape (m, dim_out, dim_in); ``psi`` a vector of
    length dim_in.
    """
    k = np.asarray(kraus, dtype=np.complex128)
    v = k @ np.asarray(psi, dtype=np.complex128)  # (m, dim_out)
    rho = v.T @ v.conj()
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    w = np.where(w > 0.0, w, 1.0)
    return float(max(0.0, -np.sum(w * np.log(w))))


def ensemble_output_entropy(images, mixer):
    """Weighted output entropy of the pure ensemble selected by an isometry.

    ``images`` has shape (m, r, d): images[i, j] is Kraus operator i applied
    to the j-th weighted eigenvector of the input state. ``mixer`` is an
    (M, r) matrix with orthonormal columns; its row s defines the
    unnormalized ensemble member v_s = sum_j mixer[s, j] * eigvec_j, whose
    weight is pi_s = |v_s|^2. Returns sum_s pi_s * S(output of member s).
    """
    b = np.asarray(images, dtype=np.complex128)
    t = np.asarray(mixer, dtype=np.complex128)
    v = np.einsum("sj,ijd->isd", t, b)
    rho = np.einsum("isd,ise->sde", v, v.conj())
    rho = 0.5 * (rho + rho.conj().transpose(0, 2, 1))
    pis = np.trace(rho, axis1=1, axis2=2).real
    mask = pis >= MEMBER_CUTOFF
    if not mask.any():
        return 0.0
    w = np.linalg.eigvalsh(rho[mask])
    w = np.where(w > 0.0, w, 1.0)
    total = np.dot(pis[mask], np.log(pis[mask])) - np.sum(w * np.log(w))
    return float(max(0.0, total))


def givens_isometry(params, m, r):
    """Build an (m, r) isometry from Givens angles and phases.

    Layout of ``params``: first r column phases, then (theta, phi) pairs for
    the rotations (i, j) with pivot i < r and i < j < m, pivot-major. The
    rotations act on the seed [I_r; 0]; every isometry is reachable (QR
    elimination argument), so this parameterizes the full Stiefel manifold.
    """
    p = np.asarray(params, dtype=np.float64)
    if p.size != isometry_param_count(m, r):
        raise ValueError(
            f"expected {isometry_param_count(m, r)} parameters for a "
            f"{m}x{r} isometry, got {p.size}"
        )
    t = np.zeros((m, r), dtype=np.complex128)
    t[np.arange(r), np.arange(r)] = np.exp(1j * p[:r])
    idx = r
    for i in range(r):
        for j in range(i + 1, m):
            c = np.cos(p[idx])
            s = np.sin(p[idx])
            e = np.exp(1j * p[idx + 1])
            idx += 2
            row_i = t[i].copy()
            row_j = t[j].copy()
            t[i] = c * row_i - s * np.conj(e) * row_j
            t[j] = s * e * row_i + c * row_j
    return t


def isometry_param_count(m, r):
    """Number of parameters `givens_isometry` expects for an (m, r) isometry."""
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got r={r}, m={m}")
    return r + 2 * sum(m - 1 - i for i in range(r))

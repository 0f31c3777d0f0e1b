# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled kernels: a cyclic Jacobi eigensolver for Hermitian matrices plus
fused entropy objectives for the optimizer and verification loops.

Mirrors the contracts of ``pyref``; selected at import by ``_kernel``.
"""

from libc.math cimport sqrt, log, cos, sin, fabs

import numpy as np

BACKEND = "compiled"

MEMBER_CUTOFF = 1e-15

cdef double _MEMBER_CUTOFF = 1e-15
cdef int _MAX_SWEEPS = 60


cdef double _offdiag_sq(double complex[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0, re, im
    for i in range(n - 1):
        for j in range(i + 1, n):
            re = a[i, j].real
            im = a[i, j].imag
            s += re * re + im * im
    return 2.0 * s


cdef void _jacobi(double complex[:, ::1] a, double complex[:, ::1] q,
                  Py_ssize_t n, bint vectors) noexcept nogil:
    """Diagonalize Hermitian ``a`` in place by cyclic Jacobi rotations.

    When ``vectors`` is set, accumulates the rotations into ``q`` (which must
    start as the identity) so that columns of q are eigenvectors.
    """
    cdef Py_ssize_t p, r, i, sweep
    cdef double fro2 = 0.0, tol2, absh, alpha, beta, tau, t, c, s, re, im
    cdef double complex h, phase, aip, air, qip, qir

    for i in range(n):
        for r in range(n):
            re = a[i, r].real
            im = a[i, r].imag
            fro2 += re * re + im * im
    # stop once the off-diagonal Frobenius norm is <= 1e-14 * ||a||_F
    tol2 = fro2 * 1e-28

    for sweep in range(_MAX_SWEEPS):
        if _offdiag_sq(a, n) <= tol2:
            return
        for p in range(n - 1):
            for r in range(p + 1, n):
                h = a[p, r]
                absh = sqrt(h.real * h.real + h.imag * h.imag)
                if absh == 0.0:
                    continue
                alpha = a[p, p].real
                beta = a[r, r].real
                tau = (beta - alpha) / (2.0 * absh)
                # smaller-magnitude root of t^2 - 2*tau*t - 1 = 0
                if tau >= 0.0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                phase = h / absh
                a[p, p] = alpha + t * absh
                a[r, r] = beta - t * absh
                a[p, r] = 0.0
                a[r, p] = 0.0
                for i in range(n):
                    if i == p or i == r:
                        continue
                    aip = a[i, p]
                    air = a[i, r]
                    a[i, p] = c * aip + s * phase.conjugate() * air
                    a[i, r] = -s * phase * aip + c * air
                    a[p, i] = a[i, p].conjugate()
                    a[r, i] = a[i, r].conjugate()
                if vectors:
                    for i in range(n):
                        qip = q[i, p]
                        qir = q[i, r]
                        q[i, p] = c * qip + s * phase.conjugate() * qir
                        q[i, r] = -s * phase * qip + c * qir


cdef double _entropy_from_diag(double complex[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    cdef double w, total = 0.0
    for i in range(n):
        w = a[i, i].real
        if w > 0.0:
            total -= w * log(w)
    if total < 0.0:
        total = 0.0
    return total


def _prepare(h):
    a = np.asarray(h, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return np.ascontiguousarray(0.5 * (a + a.conj().T))


def eigh(h):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix."""
    a = _prepare(h)
    cdef Py_ssize_t n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] av = a
    cdef double complex[:, ::1] qv = q
    with nogil:
        _jacobi(av, qv, n, True)
    w = np.diagonal(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(q[:, order])


def eigvalsh(h):
    """Ascending eigenvalues of a Hermitian matrix."""
    a = _prepare(h)
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex[:, ::1] av = a
    with nogil:
        _jacobi(av, av, n, False)
    w = np.diagonal(a).real.copy()
    w.sort(kind="stable")
    return w


def output_entropy_pure(kraus, psi):
    """Entropy (nats) of ``sum_i (K_i psi)(K_i psi)^dagger`` for unit psi."""
    k_arr = np.ascontiguousarray(kraus, dtype=np.complex128)
    x_arr = np.ascontiguousarray(psi, dtype=np.complex128)
    if k_arr.ndim != 3 or x_arr.ndim != 1 or k_arr.shape[2] != x_arr.shape[0]:
        raise ValueError("kraus stack and state vector have mismatched shapes")
    cdef double complex[:, :, ::1] k = k_arr
    cdef double complex[::1] x = x_arr
    cdef Py_ssize_t m = k.shape[0], dout = k.shape[1], din = k.shape[2]
    rho_arr = np.zeros((dout, dout), dtype=np.complex128)
    v_arr = np.zeros(dout, dtype=np.complex128)
    cdef double complex[:, ::1] rho = rho_arr
    cdef double complex[::1] v = v_arr
    cdef Py_ssize_t i, a, b, j
    cdef double complex acc
    cdef double out
    with nogil:
        for i in range(m):
            for a in range(dout):
                acc = 0.0
                for j in range(din):
                    acc = acc + k[i, a, j] * x[j]
                v[a] = acc
            for a in range(dout):
                for b in range(dout):
                    rho[a, b] = rho[a, b] + v[a] * v[b].conjugate()
        _jacobi(rho, rho, dout, False)
        out = _entropy_from_diag(rho, dout)
    return out


def ensemble_output_entropy(images, mixer):
    """Weighted output entropy of the pure ensemble selected by an isometry.

    Same contract as ``pyref.ensemble_output_entropy``: ``images`` is
    (m, r, d) with images[i, j] = K_i applied to weighted eigvec j, and
    ``mixer`` is (M, r) with orthonormal columns.
    """
    b_arr = np.ascontiguousarray(images, dtype=np.complex128)
    t_arr = np.ascontiguousarray(mixer, dtype=np.complex128)
    if b_arr.ndim != 3 or t_arr.ndim != 2 or b_arr.shape[1] != t_arr.shape[1]:
        raise ValueError("images stack and mixer have mismatched shapes")
    cdef double complex[:, :, ::1] bb = b_arr
    cdef double complex[:, ::1] tt = t_arr
    cdef Py_ssize_t m = bb.shape[0], r = bb.shape[1], d = bb.shape[2]
    cdef Py_ssize_t nmem = tt.shape[0]
    rho_arr = np.zeros((d, d), dtype=np.complex128)
    v_arr = np.zeros(d, dtype=np.complex128)
    cdef double complex[:, ::1] rho = rho_arr
    cdef double complex[::1] v = v_arr
    cdef Py_ssize_t s, i, j, a, c
    cdef double complex acc
    cdef double pi_s, w, total = 0.0
    with nogil:
        for s in range(nmem):
            for a in range(d):
                for c in range(d):
                    rho[a, c] = 0.0
            for i in range(m):
                for a in range(d):
                    acc = 0.0
                    for j in range(r):
                        acc = acc + tt[s, j] * bb[i, j, a]
                    v[a] = acc
                for a in range(d):
                    for c in range(d):
                        rho[a, c] = rho[a, c] + v[a] * v[c].conjugate()
            pi_s = 0.0
            for a in range(d):
                pi_s += rho[a, a].real
            if pi_s < _MEMBER_CUTOFF:
                continue
            _jacobi(rho, rho, d, False)
            for a in range(d):
                w = rho[a, a].real
                if w > 0.0:
                    total -= w * log(w)
            total += pi_s * log(pi_s)
    if total < 0.0:
        total = 0.0
    return total


def givens_isometry(params, m, r):
    """Build an (m, r) isometry from Givens angles and phases.

    Identical parameter layout to ``pyref.givens_isometry``: r column phases
    first, then (theta, phi) pairs for rotations (i, j), pivot-major.
    """
    p_arr = np.ascontiguousarray(params, dtype=np.float64)
    cdef Py_ssize_t mm = m, rr = r
    if not 1 <= rr <= mm:
        raise ValueError(f"need 1 <= r <= m, got r={r}, m={m}")
    if p_arr.ndim != 1 or p_arr.shape[0] != isometry_param_count(m, r):
        raise ValueError(
            f"expected {isometry_param_count(m, r)} parameters for a "
            f"{m}x{r} isometry, got {p_arr.shape}"
        )
    t_arr = np.zeros((mm, rr), dtype=np.complex128)
    cdef double[::1] p = p_arr
    cdef double complex[:, ::1] t = t_arr
    cdef Py_ssize_t i, j, col, idx
    cdef double c, s
    cdef double complex e, ti, tj
    with nogil:
        for i in range(rr):
            t[i, i] = cos(p[i]) + 1j * sin(p[i])
        idx = rr
        for i in range(rr):
            for j in range(i + 1, mm):
                c = cos(p[idx])
                s = sin(p[idx])
                e = cos(p[idx + 1]) + 1j * sin(p[idx + 1])
                idx += 2
                for col in range(rr):
                    ti = t[i, col]
                    tj = t[j, col]
                    t[i, col] = c * ti - s * e.conjugate() * tj
                    t[j, col] = s * e * ti + c * tj
    return t_arr


def isometry_param_count(m, r):
    """Number of parameters `givens_isometry` expects for an (m, r) isometry."""
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got r={r}, m={m}")
    return r + 2 * sum(m - 1 - i for i in range(r))

"""Hot numeric kernels on raw arrays.

Everything here takes and returns plain float64 ndarrays so it can be compiled
by numba.  Public wrappers with typed values live in the other modules.

Conventions: a group element is a 5x5 matrix ``[[Q, b, q], [0, 1, d], [0, 0, 1]]``
and a tangent vector is ordered ``(omega, a, w, kappa)``.
"""
import numpy as np

from ._jit import njit

# Below this angle the trigonometric coefficients switch to Taylor series.
SERIES_THRESHOLD = 0.2
# Rotation drift above this triggers a polar re-projection.
ORTHO_DRIFT = 1e-12

# 16-point Gauss-Legendre rule mapped to [0, 1].
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
GL_NODES = 0.5 * (_GL_X + 1.0)
GL_WEIGHTS = 0.5 * _GL_W


@njit
def _rot(M):
    return np.ascontiguousarray(M[:3, :3])


@njit
def _col(M, j):
    return np.ascontiguousarray(M[:3, j])


@njit
def skew(w):
    S = np.zeros((3, 3))
    S[0, 1] = -w[2]
    S[0, 2] = w[1]
    S[1, 0] = w[2]
    S[1, 2] = -w[0]
    S[2, 0] = -w[1]
    S[2, 1] = w[0]
    return S


@njit
def _sinc(t):
    # sin(t) / t
    if t < SERIES_THRESHOLD:
        t2 = t * t
        return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)))
    return np.sin(t) / t


@njit
def _coef_a(t):
    # (1 - cos t) / t^2
    if t < SERIES_THRESHOLD:
        t2 = t * t
        return 0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 ** 3 / 40320.0 + t2 ** 4 / 3628800.0
    s = np.sin(0.5 * t)
    return 2.0 * s * s / (t * t)


@njit
def _coef_b(t):
    # (t - sin t) / t^3
    if t < SERIES_THRESHOLD:
        t2 = t * t
        return (1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 ** 3 / 362880.0
                + t2 ** 4 / 39916800.0)
    return (t - np.sin(t)) / (t * t * t)


@njit
def _coef_c(t):
    # (t^2 / 2 + cos t - 1) / t^4
    if t < SERIES_THRESHOLD:
        t2 = t * t
        return (1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0 - t2 ** 3 / 3628800.0
                + t2 ** 4 / 479001600.0)
    s = np.sin(0.5 * t)
    return (0.5 * t * t - 2.0 * s * s) / (t * t * t * t)


@njit
def _coef_vinv(t):
    # (1 - (t/2) cot(t/2)) / t^2, the W^2 coefficient of the inverse left Jacobian
    if t < SERIES_THRESHOLD:
        t2 = t * t
        return (1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0 + t2 ** 3 / 1209600.0
                + t2 ** 4 / 47900160.0)
    h = 0.5 * t
    return (1.0 - h * np.cos(h) / np.sin(h)) / (t * t)


@njit
def so3_exp(w):
    t = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    W = skew(w)
    return np.eye(3) + _sinc(t) * W + _coef_a(t) * (W @ W)


@njit
def so3_left_jacobian(w):
    t = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    W = skew(w)
    return np.eye(3) + _coef_a(t) * W + _coef_b(t) * (W @ W)


@njit
def so3_left_jacobian_inv(w):
    t = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    W = skew(w)
    return np.eye(3) - 0.5 * W + _coef_vinv(t) * (W @ W)


@njit
def _second_series(w):
    # sum_m W^m / (m + 2)!
    t = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    W = skew(w)
    return 0.5 * np.eye(3) + _coef_b(t) * W + _coef_c(t) * (W @ W)


@njit
def so3_angle(R):
    cos_t = 0.5 * (R[0, 0] + R[1, 1] + R[2, 2] - 1.0)
    sx = 0.5 * (R[2, 1] - R[1, 2])
    sy = 0.5 * (R[0, 2] - R[2, 0])
    sz = 0.5 * (R[1, 0] - R[0, 1])
    return np.arctan2(np.sqrt(sx * sx + sy * sy + sz * sz), cos_t)


@njit
def so3_log(R):
    """Rotation vector of ``R``; callers must reject angles at pi."""
    cos_t = 0.5 * (R[0, 0] + R[1, 1] + R[2, 2] - 1.0)
    s = np.empty(3)
    s[0] = 0.5 * (R[2, 1] - R[1, 2])
    s[1] = 0.5 * (R[0, 2] - R[2, 0])
    s[2] = 0.5 * (R[1, 0] - R[0, 1])
    sin_t = np.sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2])
    t = np.arctan2(sin_t, cos_t)
    if cos_t > -0.5:
        return s / _sinc(t)
    # Near pi the antisymmetric part is small; take the axis from the symmetric part.
    B = 0.5 * (R + R.T)
    for i in range(3):
        B[i, i] -= cos_t
    k = 0
    if B[1, 1] > B[k, k]:
        k = 1
    if B[2, 2] > B[k, k]:
        k = 2
    n = B[:, k].copy()
    n /= np.sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2])
    if n[0] * s[0] + n[1] * s[1] + n[2] * s[2] < 0.0:
        n = -n
    return t * n


@njit
def orthonormalize(R):
    R = np.ascontiguousarray(R)
    D = R.T @ R
    drift = 0.0
    for i in range(3):
        for j in range(3):
            e = abs(D[i, j] - (1.0 if i == j else 0.0))
            if e > drift:
                drift = e
    if drift <= ORTHO_DRIFT:
        return R
    U, _, Vt = np.linalg.svd(R)
    Q = U @ Vt
    if np.linalg.det(Q) < 0.0:
        U[:, 2] = -U[:, 2]
        Q = U @ Vt
    return Q


@njit
def gal_matrix(Q, b, q, d):
    M = np.eye(5)
    M[:3, :3] = Q
    M[:3, 3] = b
    M[:3, 4] = q
    M[3, 4] = d
    return M


@njit
def gal_compose(A, B):
    C = np.eye(5)
    QA = _rot(A)
    bA = _col(A, 3)
    C[:3, :3] = orthonormalize(QA @ _rot(B))
    C[:3, 3] = QA @ _col(B, 3) + bA
    C[:3, 4] = QA @ _col(B, 4) + B[3, 4] * bA + _col(A, 4)
    C[3, 4] = A[3, 4] + B[3, 4]
    return C


@njit
def gal_inverse(M):
    Qt = np.ascontiguousarray(_rot(M).T)
    b = _col(M, 3)
    q = _col(M, 4)
    d = M[3, 4]
    out = np.eye(5)
    out[:3, :3] = Qt
    out[:3, 3] = -(Qt @ b)
    out[:3, 4] = -(Qt @ (q - d * b))
    out[3, 4] = -d
    return out


@njit
def gal_wedge(xi):
    U = np.zeros((5, 5))
    U[:3, :3] = skew(xi[0:3])
    U[:3, 3] = xi[3:6]
    U[:3, 4] = xi[6:9]
    U[3, 4] = xi[9]
    return U


@njit
def gal_exp(xi):
    w = xi[0:3]
    a = xi[3:6]
    k = xi[9]
    t = np.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    W = skew(w)
    W2 = W @ W
    I3 = np.eye(3)
    R = I3 + _sinc(t) * W + _coef_a(t) * W2
    V = I3 + _coef_a(t) * W + _coef_b(t) * W2
    P = 0.5 * I3 + _coef_b(t) * W + _coef_c(t) * W2
    M = np.eye(5)
    M[:3, :3] = R
    M[:3, 3] = V @ a
    M[:3, 4] = V @ xi[6:9] + k * (P @ a)
    M[3, 4] = k
    return M


@njit
def gal_log(M):
    w = so3_log(_rot(M))
    Vinv = so3_left_jacobian_inv(w)
    k = M[3, 4]
    a = Vinv @ _col(M, 3)
    P = _second_series(w)
    xi = np.empty(10)
    xi[0:3] = w
    xi[3:6] = a
    xi[6:9] = Vinv @ (_col(M, 4) - k * (P @ a))
    xi[9] = k
    return xi


@njit
def gal_adjoint(M):
    Q = _rot(M)
    b = _col(M, 3)
    d = M[3, 4]
    c = _col(M, 4) - d * b
    A = np.zeros((10, 10))
    A[0:3, 0:3] = Q
    A[3:6, 0:3] = skew(b) @ Q
    A[3:6, 3:6] = Q
    A[6:9, 0:3] = skew(c) @ Q
    A[6:9, 3:6] = -d * Q
    A[6:9, 6:9] = Q
    A[6:9, 9] = b
    A[9, 9] = 1.0
    return A


@njit
def gal_ad(xi):
    W = skew(xi[0:3])
    A = np.zeros((10, 10))
    A[0:3, 0:3] = W
    A[3:6, 0:3] = skew(xi[3:6])
    A[3:6, 3:6] = W
    A[6:9, 0:3] = skew(xi[6:9])
    A[6:9, 6:9] = W
    A[6:9, 9] = xi[3:6]
    for i in range(3):
        A[6 + i, 3 + i] = -xi[9]
    return A


@njit
def gal_right_jacobian(xi):
    # J_r = int_0^1 Ad(exp(-s xi)) ds, integrated by Gauss-Legendre
    J = np.zeros((10, 10))
    for i in range(GL_NODES.shape[0]):
        J += GL_WEIGHTS[i] * gal_adjoint(gal_exp(-GL_NODES[i] * xi))
    return J


@njit
def compose_batch(A, B):
    out = np.empty_like(A)
    for i in range(A.shape[0]):
        out[i] = gal_compose(A[i], B[i])
    return out


@njit
def exp_batch(xis):
    out = np.empty((xis.shape[0], 5, 5))
    for i in range(xis.shape[0]):
        out[i] = gal_exp(xis[i])
    return out


@njit
def log_batch(Ms):
    out = np.empty((Ms.shape[0], 10))
    for i in range(Ms.shape[0]):
        out[i] = gal_log(Ms[i])
    return out


@njit
def compose_chain(Ms):
    """Left-to-right running product; returns the final element."""
    acc = np.eye(5)
    for i in range(Ms.shape[0]):
        acc = gal_compose(acc, Ms[i])
    return acc


@njit
def preintegrate(times, omega_b, accel_b, omega_ref, accel_ref):
    """Relative frames F_0j for every sample j under zero-order-hold inputs.

    Integrates Fdot = F N - N F - U_ref F + F U_b exactly per segment as
    exp(-h (U_ref + N)) F exp(h (U_b + N)), then stamps the elapsed time.
    """
    n = times.shape[0]
    out = np.empty((n, 5, 5))
    F = np.eye(5)
    out[0] = F
    xi_b = np.zeros(10)
    xi_r = np.zeros(10)
    for j in range(n - 1):
        h = times[j + 1] - times[j]
        xi_b[0:3] = h * omega_b[j]
        xi_b[3:6] = h * accel_b[j]
        xi_b[9] = h
        xi_r[0:3] = -h * omega_ref[j]
        xi_r[3:6] = -h * accel_ref[j]
        xi_r[9] = -h
        F = gal_compose(gal_compose(gal_exp(xi_r), F), gal_exp(xi_b))
        F[3, 4] = 0.0
        out[j + 1] = F
        out[j + 1, 3, 4] = times[j + 1] - times[0]
    return out


@njit
def _point_mass(mu, center, x):
    r = x - center
    n = np.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
    return -mu * r / (n * n * n)


@njit
def _noninertial_field(F, omega_a, accel_a, omega_b, accel_b):
    # F N - N F - U_a F + F U_b for isochronous F, written out in blocks
    R = _rot(F)
    v = _col(F, 3)
    p = _col(F, 4)
    D = np.zeros((5, 5))
    D[:3, :3] = -skew(omega_a) @ R + R @ skew(omega_b)
    D[:3, 3] = -np.cross(omega_a, v) - accel_a + R @ accel_b
    D[:3, 4] = -np.cross(omega_a, p) + v
    return D


@njit
def rk4_rotating(F0, omega_a, accel_a, omega_b, accel_b, mu, center, rmin, dt):
    """RK4 on the non-inertial isochronous field with sampled body inputs.

    ``omega_b``/``accel_b`` hold one row per step (zero-order hold).  With
    ``mu > 0`` a point-mass gravity model fixed in the reference frame adds
    g(0) to the reference input and R^T g(p) to the body input.  Rows from the
    first non-finite state (or the first state closer than ``rmin`` to the
    point mass) onwards are NaN.
    """
    n = omega_b.shape[0]
    out = np.empty((n + 1, 5, 5))
    F = F0.copy()
    out[0] = F
    zero = np.zeros(3)
    a_ref = accel_a.copy()
    if mu > 0.0:
        a_ref = a_ref + _point_mass(mu, center, zero)
    for i in range(n):
        wb = omega_b[i]
        ab = accel_b[i]
        if mu > 0.0:
            r = _col(F, 4) - center
            if np.sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) < rmin:
                out[i:] = np.nan
                return out
            k1 = _noninertial_field(F, omega_a, a_ref, wb,
                                    ab + np.ascontiguousarray(_rot(F).T) @ _point_mass(mu, center, _col(F, 4)))
            F2 = F + 0.5 * dt * k1
            k2 = _noninertial_field(F2, omega_a, a_ref, wb,
                                    ab + np.ascontiguousarray(_rot(F2).T) @ _point_mass(mu, center, _col(F2, 4)))
            F3 = F + 0.5 * dt * k2
            k3 = _noninertial_field(F3, omega_a, a_ref, wb,
                                    ab + np.ascontiguousarray(_rot(F3).T) @ _point_mass(mu, center, _col(F3, 4)))
            F4 = F + dt * k3
            k4 = _noninertial_field(F4, omega_a, a_ref, wb,
                                    ab + np.ascontiguousarray(_rot(F4).T) @ _point_mass(mu, center, _col(F4, 4)))
        else:
            k1 = _noninertial_field(F, omega_a, a_ref, wb, ab)
            k2 = _noninertial_field(F + 0.5 * dt * k1, omega_a, a_ref, wb, ab)
            k3 = _noninertial_field(F + 0.5 * dt * k2, omega_a, a_ref, wb, ab)
            k4 = _noninertial_field(F + dt * k3, omega_a, a_ref, wb, ab)
        F = F + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        F[:3, :3] = orthonormalize(_rot(F))
        if not np.all(np.isfinite(F)):
            out[i + 1:] = np.nan
            return out
        out[i + 1] = F
    return out

"""Independent reference computations used by the tests.

Nothing here calls into galikit's kernels: each oracle is built from plain
matrix arithmetic so that it can catch errors in the closed forms.
"""
import numpy as np


def hat3(w):
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


def algebra_matrix(xi):
    U = np.zeros((5, 5))
    U[:3, :3] = hat3(xi[:3])
    U[:3, 3] = xi[3:6]
    U[:3, 4] = xi[6:9]
    U[3, 4] = xi[9]
    return U


def algebra_vector(U):
    return np.array([U[2, 1], U[0, 2], U[1, 0], *U[:3, 3], *U[:3, 4], U[3, 4]])


def expm(A, terms=30):
    """Matrix exponential by scaling and squaring of a truncated Taylor series."""
    norm = np.abs(A).sum(axis=1).max()
    s = max(0, int(np.ceil(np.log2(norm / 0.25))) if norm > 0 else 0)
    B = A / 2.0**s
    E = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, terms):
        term = term @ B / k
        E = E + term
    for _ in range(s):
        E = E @ E
    return E


def element_matrix(Q, b, q, d):
    M = np.eye(5)
    M[:3, :3] = Q
    M[:3, 3] = b
    M[:3, 4] = q
    M[3, 4] = d
    return M


def random_rotation(rng):
    # QR of a Gaussian matrix, sign-fixed to be uniform on SO(3)
    A = rng.standard_normal((3, 3))
    Q, R = np.linalg.qr(A)
    Q = Q @ np.diag(np.sign(np.diag(R)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_element_matrix(rng, scale=1.0):
    return element_matrix(random_rotation(rng), scale * rng.standard_normal(3),
                          scale * rng.standard_normal(3), scale * rng.standard_normal())


def commutator_ad(xi):
    """10x10 matrix of eta -> vee([xi^, eta^]) built column by column."""
    X = algebra_matrix(xi)
    A = np.zeros((10, 10))
    for j in range(10):
        e = np.zeros(10)
        e[j] = 1.0
        E = algebra_matrix(e)
        A[:, j] = algebra_vector(X @ E - E @ X)
    return A


def conjugation_adjoint(M):
    """10x10 matrix of eta -> vee(M eta^ M^-1)."""
    Minv = np.linalg.inv(M)
    A = np.zeros((10, 10))
    for j in range(10):
        e = np.zeros(10)
        e[j] = 1.0
        A[:, j] = algebra_vector(M @ algebra_matrix(e) @ Minv)
    return A


def log_near_identity(M, terms=60):
    """Matrix logarithm by the Mercator series; only for M close to I."""
    X = M - np.eye(M.shape[0])
    L = np.zeros_like(M)
    P = np.eye(M.shape[0])
    for k in range(1, terms):
        P = P @ X
        L = L + ((-1.0) ** (k + 1)) * P / k
    return L


def fd_right_jacobian(exp_fn, log_fn, xi, h=1e-6):
    """Central differences of d -> log(exp(xi)^-1 exp(xi + d))."""
    base_inv = np.linalg.inv(exp_fn(xi))
    J = np.zeros((10, 10))
    for j in range(10):
        e = np.zeros(10)
        e[j] = h
        plus = log_fn(base_inv @ exp_fn(xi + e))
        minus = log_fn(base_inv @ exp_fn(xi - e))
        J[:, j] = (plus - minus) / (2.0 * h)
    return J


def nilpotent_right_jacobian(xi, terms=12):
    """Series sum_k (-ad)^k / (k+1)!, exact when the rotation part is zero."""
    A = -commutator_ad(xi)
    J = np.zeros((10, 10))
    P = np.eye(10)
    fact = 1.0
    for k in range(terms):
        fact *= (k + 1)
        J = J + P / fact
        P = P @ A
    return J


def dh_transform(theta, d, a, alpha):
    ct, st, ca, sa = np.cos(theta), np.sin(theta), np.cos(alpha), np.sin(alpha)
    # Rz(theta) Tz(d) Tx(a) Rx(alpha)
    Rz = np.array([[ct, -st, 0, 0], [st, ct, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1.0]])
    Tz = np.eye(4)
    Tz[2, 3] = d
    Tx = np.eye(4)
    Tx[0, 3] = a
    Rx = np.array([[1, 0, 0, 0], [0, ca, -sa, 0], [0, sa, ca, 0], [0, 0, 0, 1.0]])
    return Rz @ Tz @ Tx @ Rx


def rk4_fixed(f, y0, t0, t1, n):
    """Classical RK4 on a flat state vector with n equal steps."""
    h = (t1 - t0) / n
    y = np.array(y0, dtype=float)
    t = t0
    for _ in range(n):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def fusion_linear_oracle(R, v, p, t, cov, y, tau, sigma_p, sigma_t):
    """Dense least squares for a position fix on a state with error slots (omega, a, w, kappa).

    To first order the body-frame offset of the fix observes the position
    slot w and the time offset observes kappa.  Returns the correction and
    the information matrix of the whitened stacked system.
    """
    z = np.r_[R.T @ (y - p - (tau - t) * v), tau - t]
    H = np.zeros((4, 10))
    H[:3, 6:9] = np.eye(3)
    H[3, 9] = 1.0
    S = np.zeros((4, 4))
    S[:3, :3] = R.T @ (sigma_p + sigma_t * np.outer(v, v)) @ R
    S[3, 3] = cov[9, 9]
    Wq = np.linalg.inv(np.linalg.cholesky(cov))
    Ws = np.linalg.inv(np.linalg.cholesky(S))
    A = np.vstack([Wq, Ws @ H])
    b = np.r_[np.zeros(10), Ws @ z]
    eps, *_ = np.linalg.lstsq(A, b, rcond=None)
    return eps, A.T @ A

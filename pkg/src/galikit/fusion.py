"""Fusing one position measurement with an uncertain timestamp into a Galilean state.

The state is a concentrated Gaussian ``F = F_hat exp(eta^)`` with ``eta`` a
zero-mean 10-vector in ``(omega, a, w, kappa)`` order, so the prior covariance
also carries the uncertainty of the state's own timestamp.  The update works
in error coordinates ``E = F_hat^-1 F = exp(eps^)``, linearised once about
the identity.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError

from . import _kernels as K
from .frames import GalileanFrame
from .liegroup import Event, GalileanError, _vec, right_jacobian

# Eigenvalues of the relative measurement covariance below this fraction of
# its trace are lifted to the floor.
REGULARIZATION_FLOOR = 1e-12
SYMMETRY_TOL = 1e-12

_I4_BAR = np.vstack([np.eye(4), np.zeros((1, 4))])
_Y0 = np.array([0.0, 0.0, 0.0, 0.0, 1.0])


class FusionError(GalileanError, ArithmeticError):
    """The information matrix could not be factorised."""

    def __init__(self, message, condition=np.inf):
        super().__init__(f"{message} (condition number {condition:.3g})")
        self.condition = condition


def _spd_check(S, name):
    scale = max(1.0, float(np.abs(S).max()))
    if np.abs(S - S.T).max() > SYMMETRY_TOL * scale:
        raise ValueError(f"{name} must be symmetric")
    if np.linalg.eigvalsh(0.5 * (S + S.T)).min() <= 0.0:
        raise ValueError(f"{name} must be positive definite")


@dataclass(frozen=True, eq=False)
class ConcentratedGaussian:
    mean: GalileanFrame
    cov: np.ndarray

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        if cov.shape != (10, 10):
            raise ValueError("cov must be 10x10")
        _spd_check(cov, "cov")
        object.__setattr__(self, "cov", cov)

    def sample(self, rng, n):
        """``n`` frames drawn as mean exp(eta^) with eta ~ N(0, cov)."""
        L = np.linalg.cholesky(self.cov)
        eta = rng.standard_normal((n, 10)) @ L.T
        M = self.mean.matrix
        return np.stack([K.gal_compose(M, K.gal_exp(e)) for e in eta])


@dataclass(frozen=True, eq=False)
class PositionMeasurement:
    y: np.ndarray
    tau: float
    sigma_p: np.ndarray
    sigma_t: float

    def __post_init__(self):
        object.__setattr__(self, "y", _vec(self.y, 3, "y").copy())
        object.__setattr__(self, "tau", float(self.tau))
        Sp = np.array(self.sigma_p, dtype=float)
        if Sp.shape != (3, 3):
            raise ValueError("sigma_p must be 3x3")
        _spd_check(Sp, "sigma_p")
        object.__setattr__(self, "sigma_p", Sp)
        st = float(self.sigma_t)
        if not st >= 0.0:
            raise ValueError("sigma_t must be non-negative")
        object.__setattr__(self, "sigma_t", st)

    @property
    def covariance(self):
        S = np.zeros((4, 4))
        S[:3, :3] = self.sigma_p
        S[3, 3] = self.sigma_t
        return S


@dataclass(frozen=True, eq=False)
class FusionResult:
    posterior: ConcentratedGaussian
    correction: np.ndarray
    innovation: np.ndarray
    information: np.ndarray
    relative: GalileanFrame
    regularized: bool = False


def measurement_event(m):
    return Event(m.y, m.tau)


def relative_frame_estimate(prior, tau):
    """Relative frame from the state to the measurement under near-inertial motion.

    Only the time entry differs from the identity: ``tau - t_hat``.
    """
    return GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), float(tau) - prior.mean.t)


def error_measurement(prior, y_bar):
    """First four entries of F_hat^-1 y_bar."""
    yh = y_bar.homogeneous if isinstance(y_bar, Event) else _vec(y_bar, 5, "event")
    return (K.gal_inverse(prior.mean.matrix) @ yh)[:4]


def noise_mapping(prior):
    """Matrices mapping measurement noise and prior noise into the relative measurement."""
    N_mu = _I4_BAR.T @ K.gal_inverse(prior.mean.matrix) @ _I4_BAR
    N_mu[3, 3] -= 1.0
    N_eta = np.zeros((4, 10))
    N_eta[3, 9] = 1.0
    return N_mu, N_eta


def relative_covariance(N_mu, sigma, N_eta, Q):
    """Covariance of the relative measurement noise and whether it was regularised."""
    S = N_mu @ sigma @ N_mu.T + N_eta @ Q @ N_eta.T
    S = 0.5 * (S + S.T)
    floor = REGULARIZATION_FLOOR * np.trace(S)
    if floor > 0.0 and np.linalg.eigvalsh(S).min() < floor:
        return S + floor * np.eye(4), True
    return S, False


def measurement_matrix(F_rel, y0=_Y0):
    """4x10 matrix C with C eps = -(eps^ F_rel y0)[:4]."""
    yh = y0.homogeneous if isinstance(y0, Event) else _vec(y0, 5, "event")
    z = (F_rel.matrix if not isinstance(F_rel, np.ndarray) else F_rel) @ yh
    C = np.zeros((4, 10))
    C[:3, 0:3] = K.skew(np.ascontiguousarray(z[:3]))
    C[:3, 3:6] = -z[3] * np.eye(3)
    C[:3, 6:9] = -z[4] * np.eye(3)
    C[3, 9] = -z[4]
    return C


def _factor(A, name):
    try:
        return cho_factor(A, lower=True)
    except LinAlgError:
        raise FusionError(f"{name} is not positive definite", np.linalg.cond(A)) from None


def map_update(prior, m, relative=None):
    """Single-step MAP fusion of a position measurement with timestamp jitter.

    ``relative`` is the estimated frame from the state to the measurement
    instant; it defaults to ``relative_frame_estimate`` and may be replaced by
    a pre-integrated frame.
    """
    F_rel = relative_frame_estimate(prior, m.tau) if relative is None else relative
    d = error_measurement(prior, measurement_event(m))
    predicted = (F_rel.matrix @ _Y0)[:4]
    innovation = d - predicted
    C = measurement_matrix(F_rel)
    N_mu, N_eta = noise_mapping(prior)
    S, regularized = relative_covariance(N_mu, m.covariance, N_eta, prior.cov)
    S_f = _factor(S, "relative measurement covariance")
    Q_f = _factor(prior.cov, "prior covariance")
    information = cho_solve(Q_f, np.eye(10)) + C.T @ cho_solve(S_f, C)
    information = 0.5 * (information + information.T)
    I_f = _factor(information, "information matrix")
    # With E = exp(eps^) ~ I + eps^ the residual is innovation + C eps.
    correction = -cho_solve(I_f, C.T @ cho_solve(S_f, innovation))
    P = cho_solve(I_f, np.eye(10))
    J = right_jacobian(correction)
    post_cov = J @ P @ J.T
    post_cov = 0.5 * (post_cov + post_cov.T)
    mean = GalileanFrame.from_matrix(K.gal_compose(prior.mean.matrix, K.gal_exp(correction)))
    return FusionResult(ConcentratedGaussian(mean, post_cov), correction, innovation,
                        information, F_rel, regularized)


def classical_fuse(prior, m):
    """Time-blind baseline: the measurement is taken to be exactly at the state's time."""
    blind = PositionMeasurement(m.y, prior.mean.t, m.sigma_p, 0.0)
    return map_update(prior, blind, relative_frame_estimate(prior, prior.mean.t))


def position_covariance(g):
    """First-order covariance of the world position of mean exp(eta^)."""
    Jp = np.zeros((3, 10))
    Jp[:, 6:9] = g.mean.R
    Jp[:, 9] = g.mean.v
    return Jp @ g.cov @ Jp.T


def velocity_covariance(g):
    Jv = np.zeros((3, 10))
    Jv[:, 3:6] = g.mean.R
    return Jv @ g.cov @ Jv.T


def ellipse(cov2, n_std=1.0, n_points=64):
    """Points on the ``n_std`` contour of a 2x2 covariance, centred at zero."""
    vals, vecs = np.linalg.eigh(cov2)
    s = np.linspace(0.0, 2.0 * np.pi, n_points + 1)
    circle = np.stack([np.cos(s), np.sin(s)])
    return (vecs @ (n_std * np.sqrt(np.maximum(vals, 0.0))[:, None] * circle)).T

"""The Galilean group Gal(3) as 5x5 matrices.

An element ``(Q, b, q, delta)`` embeds as::

    [[Q, b, q    ],
     [0, 1, delta],
     [0, 0, 1    ]]

with ``Q`` a rotation, ``b`` a velocity boost, ``q`` a spatial translation and
``delta`` a time offset.  Tangent vectors are 10-vectors ordered
``(omega, a, w, kappa)``.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels as K

# Tolerance for the zero pattern checked by ``vee``.
VEE_TOL = 1e-12
# Angles closer than this to pi are rejected by ``log``.
LOG_PI_MARGIN = 1e-10


class GalileanError(Exception):
    """Base class for errors raised by galikit."""


class StructureError(GalileanError, ValueError):
    """A matrix does not have the required block pattern."""


class SingularityError(GalileanError, ValueError):
    """The logarithm is undefined for rotations by pi."""


def _vec(x, n, name):
    a = np.asarray(x, dtype=float).reshape(-1)
    if a.shape != (n,):
        raise ValueError(f"{name} must have {n} entries, got {a.size}")
    return a


@dataclass(frozen=True, eq=False)
class GalileanElement:
    Q: np.ndarray
    b: np.ndarray
    q: np.ndarray
    delta: float

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        if Q.shape != (3, 3):
            raise ValueError("Q must be 3x3")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "b", _vec(self.b, 3, "b").copy())
        object.__setattr__(self, "q", _vec(self.q, 3, "q").copy())
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def matrix(self):
        return K.gal_matrix(self.Q, self.b, self.q, self.delta)

    @classmethod
    def from_matrix(cls, M, check=True):
        M = np.asarray(M, dtype=float)
        if M.shape != (5, 5):
            raise StructureError("expected a 5x5 matrix")
        if check:
            tail = M[3:, :]
            expected = np.array([[0, 0, 0, 1, tail[0, 4]], [0, 0, 0, 0, 1.0]])
            if not np.array_equal(tail, expected):
                raise StructureError("bottom rows must be (0,0,0,1,delta) and (0,0,0,0,1)")
        return cls(M[:3, :3], M[:3, 3], M[:3, 4], M[3, 4])

    def __matmul__(self, other):
        if isinstance(other, GalileanElement):
            return compose(self, other)
        return NotImplemented

    def __repr__(self):
        return (f"GalileanElement(Q={self.Q.tolist()}, b={self.b.tolist()}, "
                f"q={self.q.tolist()}, delta={self.delta!r})")


def identity():
    return GalileanElement(np.eye(3), np.zeros(3), np.zeros(3), 0.0)


def compose(G1, G2):
    """Group product; the rotation block is re-projected if it has drifted."""
    return GalileanElement.from_matrix(K.gal_compose(G1.matrix, G2.matrix), check=False)


def inverse(G):
    return GalileanElement.from_matrix(K.gal_inverse(G.matrix), check=False)


def skew3(w):
    return K.skew(_vec(w, 3, "omega"))


def unskew3(S):
    S = np.asarray(S, dtype=float)
    return np.array([S[2, 1], S[0, 2], S[1, 0]])


def wedge(xi):
    return K.gal_wedge(_vec(xi, 10, "tangent"))


def vee(U, check=True):
    """Inverse of ``wedge``.  Raises StructureError off the algebra pattern."""
    U = np.asarray(U, dtype=float)
    if U.shape != (5, 5):
        raise StructureError("expected a 5x5 matrix")
    if check:
        W = U[:3, :3]
        off = max(np.abs(W + W.T).max(), np.abs(U[3, :4]).max(), np.abs(U[4, :]).max())
        if off > VEE_TOL:
            raise StructureError(f"matrix is not in the Galilean algebra (residual {off:.3g})")
    return np.concatenate([unskew3(U[:3, :3]), U[:3, 3], U[:3, 4], [U[3, 4]]])


def tangent(omega=(0, 0, 0), a=(0, 0, 0), w=(0, 0, 0), kappa=0.0):
    return np.concatenate([_vec(omega, 3, "omega"), _vec(a, 3, "a"), _vec(w, 3, "w"), [float(kappa)]])


def exp(xi):
    return GalileanElement.from_matrix(K.gal_exp(_vec(xi, 10, "tangent")), check=False)


def rotation_angle(Q):
    return float(K.so3_angle(np.ascontiguousarray(Q, dtype=float)))


def log(G):
    if rotation_angle(G.Q) > np.pi - LOG_PI_MARGIN:
        raise SingularityError("log undefined: rotation angle is pi")
    return K.gal_log(G.matrix)


def adjoint(G):
    """10x10 matrix with wedge(adjoint(G) @ xi) == G wedge(xi) G^-1."""
    return K.gal_adjoint(G.matrix)


def ad(xi):
    """Algebra adjoint: wedge(ad(x) @ y) is the commutator [wedge(x), wedge(y)]."""
    return K.gal_ad(_vec(xi, 10, "tangent"))


def right_jacobian(xi):
    """exp(xi + d) ~ exp(xi) exp(right_jacobian(xi) @ d) to first order in d."""
    xi = _vec(xi, 10, "tangent")
    if np.linalg.norm(xi[:3]) >= np.pi:
        raise SingularityError("right Jacobian requires rotation angle below pi")
    return K.gal_right_jacobian(xi)


def so3_exp(w):
    return K.so3_exp(_vec(w, 3, "omega"))


def so3_log(R):
    R = np.ascontiguousarray(R, dtype=float)
    if K.so3_angle(R) > np.pi - LOG_PI_MARGIN:
        raise SingularityError("log undefined: rotation angle is pi")
    return K.so3_log(R)


def is_rotation(R, tol=1e-9):
    R = np.asarray(R, dtype=float)
    return (R.shape == (3, 3) and np.abs(R.T @ R - np.eye(3)).max() <= tol
            and abs(np.linalg.det(R) - 1.0) <= tol)


# Homogeneous coordinates.  Each type stores its physical fields and exposes
# the 5-vector embedding as ``.homogeneous``.

@dataclass(frozen=True, eq=False)
class Event:
    p: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "p", _vec(self.p, 3, "p").copy())
        object.__setattr__(self, "t", float(self.t))

    @property
    def homogeneous(self):
        return np.array([*self.p, self.t, 1.0])

    @classmethod
    def from_homogeneous(cls, x):
        x = _vec(x, 5, "event")
        if x[4] != 1.0:
            raise StructureError("event must have fifth entry 1")
        return cls(x[:3], x[3])


@dataclass(frozen=True, eq=False)
class Velocity:
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", _vec(self.v, 3, "v").copy())

    @property
    def homogeneous(self):
        return np.array([*self.v, 1.0, 0.0])

    @classmethod
    def from_homogeneous(cls, x):
        x = _vec(x, 5, "velocity")
        if x[3] != 1.0 or x[4] != 0.0:
            raise StructureError("velocity must end in (1, 0)")
        return cls(x[:3])


@dataclass(frozen=True, eq=False)
class Direction:
    eta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eta", _vec(self.eta, 3, "eta").copy())

    @property
    def homogeneous(self):
        return np.array([*self.eta, 0.0, 0.0])

    @classmethod
    def from_homogeneous(cls, x):
        x = _vec(x, 5, "direction")
        if x[3] != 0.0 or x[4] != 0.0:
            raise StructureError("direction must end in (0, 0)")
        return cls(x[:3])


@dataclass(frozen=True, eq=False)
class EventNoise:
    mu_p: np.ndarray
    mu_t: float

    def __post_init__(self):
        object.__setattr__(self, "mu_p", _vec(self.mu_p, 3, "mu_p").copy())
        object.__setattr__(self, "mu_t", float(self.mu_t))

    @property
    def homogeneous(self):
        return np.array([*self.mu_p, self.mu_t, 0.0])

    @classmethod
    def from_homogeneous(cls, x):
        x = _vec(x, 5, "event noise")
        if x[4] != 0.0:
            raise StructureError("event noise must have fifth entry 0")
        return cls(x[:3], x[3])


@dataclass(frozen=True, eq=False)
class VelocityNoise:
    mu_v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu_v", _vec(self.mu_v, 3, "mu_v").copy())

    @property
    def homogeneous(self):
        return np.array([*self.mu_v, 0.0, 0.0])

    @classmethod
    def from_homogeneous(cls, x):
        x = _vec(x, 5, "velocity noise")
        if x[3] != 0.0 or x[4] != 0.0:
            raise StructureError("velocity noise must end in (0, 0)")
        return cls(x[:3])


def act_event(G, e):
    return Event(G.Q @ e.p + e.t * G.b + G.q, e.t + G.delta)


def act_velocity(G, v):
    return Velocity(G.Q @ v.v + G.b)


def act_direction(G, d):
    return Direction(G.Q @ d.eta)


def act_event_noise(G, mu):
    # the time component of the noise is smeared along the boost
    return EventNoise(G.Q @ mu.mu_p + mu.mu_t * G.b, mu.mu_t)


def act_velocity_noise(G, mu):
    return VelocityNoise(G.Q @ mu.mu_v)

"""Derivative fields and integrators for Galilean frames and extended poses.

Fields return the raw 5x5 time derivative of a frame matrix.  Combined terms
such as ``F N - N F`` are not required to lie in any particular Lie algebra,
so no membership checks are made on the results.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import _kernels as K
from .frames import ExtendedPose, GalileanFrame, IsochronousFrame
from .liegroup import GalileanError, _vec, vee

# Sidereal rotation rate of the Earth (rad/s).
SIDEREAL_DAY = 86164.1
EARTH_RATE = 2.0 * math.pi / SIDEREAL_DAY
# Unit vector pointing down in a local z-down frame.
E3 = np.array([0.0, 0.0, 1.0])

TIME_MATRIX = np.zeros((5, 5))
TIME_MATRIX[3, 4] = 1.0
TIME_MATRIX.flags.writeable = False
N = TIME_MATRIX


class IntegrationError(GalileanError, ArithmeticError):
    """Raised when the state stops being finite."""

    def __init__(self, message, step):
        super().__init__(f"{message} (step {step})")
        self.step = step


class GravityError(GalileanError, ValueError):
    """Gravity model queried where it is undefined."""


@dataclass(frozen=True, eq=False)
class GalileanInput:
    omega: np.ndarray
    accel: np.ndarray
    w: np.ndarray = field(default_factory=lambda: np.zeros(3))
    kappa: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "omega", _vec(self.omega, 3, "omega").copy())
        object.__setattr__(self, "accel", _vec(self.accel, 3, "accel").copy())
        object.__setattr__(self, "w", _vec(self.w, 3, "w").copy())
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def tangent(self):
        return np.concatenate([self.omega, self.accel, self.w, [self.kappa]])

    @property
    def matrix(self):
        return K.gal_wedge(self.tangent)

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), np.zeros(3))


@dataclass(frozen=True, eq=False)
class ImuSample:
    omega: np.ndarray
    accel: np.ndarray
    timestamp: float

    def __post_init__(self):
        object.__setattr__(self, "omega", _vec(self.omega, 3, "omega").copy())
        object.__setattr__(self, "accel", _vec(self.accel, 3, "accel").copy())
        object.__setattr__(self, "timestamp", float(self.timestamp))


class ZeroGravity:
    def __call__(self, p):
        return np.zeros(3)


@dataclass(frozen=True, eq=False)
class UniformGravity:
    g: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "g", _vec(self.g, 3, "g").copy())

    def __call__(self, p):
        return self.g.copy()


@dataclass(frozen=True, eq=False)
class PointMassGravity:
    mu: float
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    min_radius: float = 1.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("mu must be positive")
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "center", _vec(self.center, 3, "center").copy())

    def __call__(self, p):
        r = _vec(p, 3, "p") - self.center
        n = np.linalg.norm(r)
        if n < self.min_radius:
            raise GravityError(f"point-mass gravity undefined {n:.3g} m from its center")
        return -self.mu * r / n**3


def frame_gravity(model, F):
    """Gravity at the origin of frame F, expressed in F's own axes."""
    return F.R.T @ model(F.p)


@dataclass(frozen=True, eq=False)
class EarthParams:
    omega_e: np.ndarray
    g_a: float

    def __post_init__(self):
        w = _vec(self.omega_e, 3, "omega_e").copy()
        g = float(self.g_a)
        bad = []
        if not np.all(np.isfinite(w)) or np.linalg.norm(w) >= 1e-3:
            bad.append(f"|omega_e| = {np.linalg.norm(w):.3g} rad/s must be below 1e-3")
        if not 9.0 < g < 10.5:
            bad.append(f"g_a = {g} m/s^2 must lie in (9.0, 10.5)")
        if bad:
            raise ValueError("; ".join(bad))
        object.__setattr__(self, "omega_e", w)
        object.__setattr__(self, "g_a", g)

    @classmethod
    def at_latitude(cls, latitude, g_a=9.80665):
        """Earth rate in a local north-east-down frame at ``latitude`` (rad)."""
        return cls(EARTH_RATE * np.array([math.cos(latitude), 0.0, -math.sin(latitude)]), g_a)


def _mat(F):
    return F if isinstance(F, np.ndarray) else F.matrix


def _input(U):
    if isinstance(U, GalileanInput):
        return U.matrix
    U = np.asarray(U, dtype=float)
    return K.gal_wedge(U) if U.shape == (10,) else U


def origin_derivative(F, U):
    """d/dt F = F (U + N): a frame driven by body inputs against a fixed origin."""
    return _mat(F) @ (_input(U) + N)


def isochronous_inertial_derivative(F, U_b):
    """d/dt F = F N - N F + F U_b for an isochronous frame over an inertial reference."""
    F = _mat(F)
    X = F @ N - N @ F
    return X + F @ _input(U_b)


def noninertial_derivative(F, U_a, U_b):
    """d/dt F = F N - N F - U_a F + F U_b for a reference with input U_a."""
    F = _mat(F)
    X = F @ N - N @ F
    X = X - _input(U_a) @ F
    return X + F @ _input(U_b)


def imu_gravity_derivative(F, imu_a, imu_b, g_a, g_b):
    """Relative field driven by two IMUs plus modelled gravity.

    ``g_a`` and ``g_b`` are gravity at each frame's origin in that frame's own
    axes (see ``frame_gravity``).
    """
    F = _mat(F)
    U_a = GalileanInput(imu_a.omega, imu_a.accel).matrix
    U_b = GalileanInput(imu_b.omega, imu_b.accel).matrix
    G_a = GalileanInput(np.zeros(3), g_a).matrix
    G_b = GalileanInput(np.zeros(3), g_b).matrix
    return F @ N - N @ F - U_a @ F + F @ U_b - G_a @ F + F @ G_b


def rotating_earth_derivative(F, imu_b, earth, gravity_correction=None):
    """Body frame relative to an Earth-fixed, z-down surface frame.

    The surface frame rotates at ``earth.omega_e`` and its origin has proper
    acceleration ``-g_a e3`` (the surface pushes up).  Without a correction
    pair the gravity at both origins is taken as equal, which gives
    ``vdot = -Omega x v + g_a e3 + R a_imu``.  With ``(g_A(p_A), g_B(p_B))``
    the field carries ``- g_A(p_A) + R g_B(p_B)`` on top.
    """
    a_ref = -earth.g_a * E3
    a_body = imu_b.accel
    if gravity_correction is not None:
        g_a, g_b = gravity_correction
        a_ref = a_ref + _vec(g_a, 3, "g_a")
        a_body = a_body + _vec(g_b, 3, "g_b")
    return noninertial_derivative(F, GalileanInput(earth.omega_e, a_ref),
                                  GalileanInput(imu_b.omega, a_body))


def relative_angular_velocity(omega_b, omega_a, R):
    return _vec(omega_b, 3, "omega_b") - np.asarray(R).T @ _vec(omega_a, 3, "omega_a")


def relative_coordinate_acceleration(a_b, a_a, omega_a, omega_a_dot, R, p, pdot):
    """Body-axis coordinate acceleration of B seen from a rotating, accelerating A."""
    R = np.asarray(R, dtype=float)
    w = _vec(omega_a, 3, "omega_a")
    p = _vec(p, 3, "p")
    inertial = (_vec(a_a, 3, "a_a") + np.cross(_vec(omega_a_dot, 3, "omega_a_dot"), p)
                + 2.0 * np.cross(w, _vec(pdot, 3, "pdot")) + np.cross(w, np.cross(w, p)))
    return _vec(a_b, 3, "a_b") - R.T @ inertial


def extended_pose_derivative(Kp, U_rel):
    """d/dt K = K N - N K + K U_rel."""
    Km = _mat(Kp)
    X = Km @ N - N @ Km
    return X + Km @ _input(U_rel)


def extended_relative_input(Kp, omega_b, a_b, omega_a, a_a, omega_a_dot=(0, 0, 0)):
    """Relative input for ``extended_pose_derivative`` from the absolute inputs."""
    Km = _mat(Kp)
    R, pdot, p = Km[:3, :3], Km[:3, 3], Km[:3, 4]
    return GalileanInput(relative_angular_velocity(omega_b, omega_a, R),
                         relative_coordinate_acceleration(a_b, a_a, omega_a, omega_a_dot, R, p, pdot))


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray

    def __len__(self):
        return self.times.shape[0]

    def frame(self, i):
        return GalileanFrame.from_matrix(self.states[i])

    @property
    def final(self):
        return self.frame(-1)


def _time_grid(t0, t1, dt):
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t1 < t0:
        raise ValueError("t_span must be increasing")
    n = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    times = t0 + dt * np.arange(n + 1)
    times[-1] = t1
    return times


def _lie_euler_step(F, X, h):
    xi = vee(K.gal_inverse(F) @ X, check=False)
    return K.gal_compose(F, K.gal_exp(h * xi))


def integrate(F0, field_fn, t_span, dt=1e-3, method="rk4"):
    """Integrate ``dF/dt = field_fn(F, t)`` from ``F0`` over ``t_span``.

    ``field_fn`` receives and returns 5x5 arrays.  ``method="lie_euler"``
    steps by ``F exp(h vee(F^-1 X))`` and so stays on the group; ``"rk4"`` is
    classical Runge-Kutta on the embedding with the rotation block projected
    back onto SO(3) after every step.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    times = _time_grid(t0, t1, dt)
    states = np.empty((times.size, 5, 5))
    F = np.array(_mat(F0), dtype=float)
    states[0] = F
    for i in range(times.size - 1):
        t = times[i]
        h = times[i + 1] - t
        if method == "rk4":
            k1 = field_fn(F, t)
            k2 = field_fn(F + 0.5 * h * k1, t + 0.5 * h)
            k3 = field_fn(F + 0.5 * h * k2, t + 0.5 * h)
            k4 = field_fn(F + h * k3, t + h)
            F = F + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if np.all(np.isfinite(F)):
                F[:3, :3] = K.orthonormalize(np.ascontiguousarray(F[:3, :3]))
        elif method == "lie_euler":
            F = _lie_euler_step(F, field_fn(F, t), h)
        else:
            raise ValueError(f"unknown method {method!r}")
        if not np.all(np.isfinite(F)):
            raise IntegrationError("state became non-finite", i + 1)
        states[i + 1] = F
    return Trajectory(times, states)


def integrate_rotating(F0, omega_a, accel_a, omega_b, accel_b, dt, gravity=None):
    """Fast RK4 for the non-inertial field with per-step body inputs.

    ``omega_b``/``accel_b`` have one row per step.  ``gravity`` may be None,
    or a PointMassGravity fixed in the reference frame.
    """
    omega_b = np.ascontiguousarray(omega_b, dtype=float)
    accel_b = np.ascontiguousarray(accel_b, dtype=float)
    if gravity is None:
        mu, center, rmin = 0.0, np.zeros(3), 0.0
    elif isinstance(gravity, PointMassGravity):
        mu, center, rmin = gravity.mu, gravity.center, gravity.min_radius
    else:
        raise TypeError("integrate_rotating supports only point-mass gravity")
    states = K.rk4_rotating(np.array(_mat(F0), dtype=float), _vec(omega_a, 3, "omega_a"),
                            _vec(accel_a, 3, "accel_a"), omega_b, accel_b, float(mu),
                            center, float(rmin), float(dt))
    bad = ~np.isfinite(states).all(axis=(1, 2))
    if bad.any():
        raise IntegrationError("state became non-finite or entered the gravity exclusion zone",
                               int(np.argmax(bad)))
    return Trajectory(dt * np.arange(states.shape[0]), states)


def _stack(inputs, n, name):
    omega = np.zeros((n, 3))
    accel = np.zeros((n, 3))
    if inputs is not None:
        if len(inputs) < n:
            raise ValueError(f"{name} needs at least {n} entries")
        for j in range(n):
            omega[j] = inputs[j].omega
            accel[j] = inputs[j].accel
    return omega, accel


def preintegrate(samples, reference=None, return_all=False):
    """Relative frame between the first and last IMU sample.

    Each sample's input is held constant until the next timestamp.
    ``reference`` optionally gives the reference frame's input per sample
    (default zero, an inertial reference).  Per segment the relative frame
    evolves exactly as ``exp(-h (U_ref + N)) F exp(h (U_b + N))``; the elapsed
    time is then written into the time entry.
    """
    if len(samples) < 2:
        raise ValueError("preintegrate needs at least two samples")
    times = np.array([s.timestamp for s in samples])
    if np.any(np.diff(times) <= 0):
        raise ValueError("IMU timestamps must be strictly increasing")
    n = len(samples) - 1
    omega_b, accel_b = _stack(samples, n, "samples")
    omega_r, accel_r = _stack(reference, n, "reference")
    out = K.preintegrate(times, omega_b, accel_b, omega_r, accel_r)
    if return_all:
        return Trajectory(times, out)
    return GalileanFrame.from_matrix(out[-1])

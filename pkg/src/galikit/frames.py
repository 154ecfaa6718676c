"""Galilean frames, isochronous frames and extended poses.

A frame ``F_AB = (R, v, p, t)`` shares the 5x5 layout of a group element but
is a separate type: it describes frame B relative to frame A, with ``v`` the
inertial velocity of B's origin.  An extended pose ``(R, pdot, p)`` uses the
coordinate velocity instead and always has zero time offset.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .liegroup import (Direction, Event, GalileanElement, StructureError, Velocity, _vec)


@dataclass(frozen=True, eq=False)
class GalileanFrame:
    R: np.ndarray
    v: np.ndarray
    p: np.ndarray
    t: float

    def __post_init__(self):
        R = np.array(self.R, dtype=float)
        if R.shape != (3, 3):
            raise ValueError("R must be 3x3")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "v", _vec(self.v, 3, "v").copy())
        object.__setattr__(self, "p", _vec(self.p, 3, "p").copy())
        object.__setattr__(self, "t", float(self.t))

    @property
    def matrix(self):
        return K.gal_matrix(self.R, self.v, self.p, self.t)

    @classmethod
    def from_matrix(cls, M):
        M = np.asarray(M, dtype=float)
        if M.shape != (5, 5):
            raise StructureError("expected a 5x5 matrix")
        return cls(M[:3, :3], M[:3, 3], M[:3, 4], M[3, 4])

    def __repr__(self):
        return (f"{type(self).__name__}(R={self.R.tolist()}, v={self.v.tolist()}, "
                f"p={self.p.tolist()}, t={self.t!r})")


class IsochronousFrame(GalileanFrame):
    """A frame whose time offset is exactly zero."""

    def __init__(self, R, v, p, t=0.0):
        if float(t) != 0.0:
            raise ValueError(f"isochronous frame needs t == 0, got {t}")
        super().__init__(R, v, p, 0.0)


@dataclass(frozen=True, eq=False)
class ExtendedPose:
    R: np.ndarray
    pdot: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=float)
        if R.shape != (3, 3):
            raise ValueError("R must be 3x3")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "pdot", _vec(self.pdot, 3, "pdot").copy())
        object.__setattr__(self, "p", _vec(self.p, 3, "p").copy())

    @property
    def matrix(self):
        return K.gal_matrix(self.R, self.pdot, self.p, 0.0)

    @classmethod
    def from_matrix(cls, M):
        M = np.asarray(M, dtype=float)
        if M.shape != (5, 5):
            raise StructureError("expected a 5x5 matrix")
        return cls(M[:3, :3], M[:3, 3], M[:3, 4])


def identity_frame():
    return GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0)


def _wrap(M, iso):
    if iso and M[3, 4] == 0.0:
        return IsochronousFrame(M[:3, :3], M[:3, 3], M[:3, 4])
    return GalileanFrame.from_matrix(M)


def frame_compose(F_ab, F_bc):
    """F_ac = F_ab F_bc; time offsets add."""
    iso = isinstance(F_ab, IsochronousFrame) and isinstance(F_bc, IsochronousFrame)
    return _wrap(K.gal_compose(F_ab.matrix, F_bc.matrix), iso)


def frame_inverse(F_ab):
    return _wrap(K.gal_inverse(F_ab.matrix), isinstance(F_ab, IsochronousFrame))


def relative_frame(F_0a, F_0b):
    """F_ab = F_0a^-1 F_0b for two frames given against the same reference."""
    iso = isinstance(F_0a, IsochronousFrame) and isinstance(F_0b, IsochronousFrame)
    return _wrap(K.gal_compose(K.gal_inverse(F_0a.matrix), F_0b.matrix), iso)


def relative_frame_closed_form(F_0a, F_0b):
    """Same as ``relative_frame`` written out component-wise."""
    Rt = F_0a.R.T
    dt = F_0b.t - F_0a.t
    return GalileanFrame(Rt @ F_0b.R, Rt @ (F_0b.v - F_0a.v),
                         Rt @ ((F_0b.p - F_0a.p) - dt * F_0a.v), dt)


def change_event(F_ab, e_b):
    """Express an event given in B in the coordinates of A."""
    return Event(F_ab.R @ e_b.p + e_b.t * F_ab.v + F_ab.p, F_ab.t + e_b.t)


def change_velocity(F_ab, v_b):
    return Velocity(F_ab.R @ v_b.v + F_ab.v)


def change_direction(F_ab, d_b):
    return Direction(F_ab.R @ d_b.eta)


def frame_to_extended(F, omega_a):
    """Coordinate velocity pdot = v - omega_a x p seen from a frame rotating at omega_a."""
    if F.t != 0.0:
        raise ValueError("frame_to_extended needs an isochronous frame")
    omega_a = _vec(omega_a, 3, "omega_a")
    return ExtendedPose(F.R, F.v - np.cross(omega_a, F.p), F.p)


def extended_to_frame(Kp, omega_a):
    omega_a = _vec(omega_a, 3, "omega_a")
    return IsochronousFrame(Kp.R, Kp.pdot + np.cross(omega_a, Kp.p), Kp.p)


def as_element(F):
    """Reinterpret a frame or extended pose as a group element."""
    M = F.matrix
    return GalileanElement(M[:3, :3], M[:3, 3], M[:3, 4], M[3, 4])


def as_frame(G):
    return GalileanFrame(G.Q, G.b, G.q, G.delta)

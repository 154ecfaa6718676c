"""Generalised Denavit-Hartenberg (GDH) kinematics for serial chains.

Each link is an extended pose whose fourth column holds the coordinate
velocity of the link frame relative to its parent, so links compose by plain
matrix products and their second-order kinematics add through the adjoint.
Standard (distal) DH parameters are used throughout.
"""
from dataclasses import dataclass, replace
import json
import math

import numpy as np

from . import _kernels as K
from .frames import ExtendedPose
from .kinematics import TIME_MATRIX, GalileanInput

REVOLUTE = "revolute"
PRISMATIC = "prismatic"


@dataclass(frozen=True)
class GdhLink:
    kind: str
    theta: float
    d: float
    length: float
    alpha: float
    q: float = 0.0
    w: float = 0.0
    qdot: float = 0.0
    wdot: float = 0.0

    def __post_init__(self):
        if self.kind not in (REVOLUTE, PRISMATIC):
            raise ValueError(f"link kind must be revolute or prismatic, got {self.kind!r}")
        for name in ("theta", "d", "length", "alpha", "q", "w", "qdot", "wdot"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.kind == REVOLUTE and (self.w != 0.0 or self.wdot != 0.0):
            raise ValueError("revolute joint needs w = wdot = 0")
        if self.kind == PRISMATIC and (self.q != 0.0 or self.qdot != 0.0):
            raise ValueError("prismatic joint needs q = qdot = 0")


@dataclass(frozen=True)
class GdhChain:
    links: tuple

    def __post_init__(self):
        links = tuple(self.links)
        if len(links) < 1:
            raise ValueError("chain needs at least one link")
        object.__setattr__(self, "links", links)

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)


def _rotation(link):
    ct, st = math.cos(link.theta), math.sin(link.theta)
    ca, sa = math.cos(link.alpha), math.sin(link.alpha)
    return np.array([[ct, -st * ca, st * sa],
                     [st, ct * ca, -ct * sa],
                     [0.0, sa, ca]])


def _gdh(link):
    ct, st = math.cos(link.theta), math.sin(link.theta)
    M = np.eye(5)
    M[:3, :3] = _rotation(link)
    M[:3, 3] = (-link.length * st * link.q, link.length * ct * link.q, link.w)
    M[:3, 4] = (link.length * ct, link.length * st, link.d)
    return M


def gdh_matrix(link):
    return ExtendedPose.from_matrix(_gdh(link))


def classical_dh(link):
    """The classical 4x4 homogeneous DH transform of a link."""
    T = np.eye(4)
    T[:3, :3] = _rotation(link)
    T[:3, 3] = (link.length * math.cos(link.theta), link.length * math.sin(link.theta), link.d)
    return T


def _matrices(chain):
    return np.stack([_gdh(link) for link in chain])


def forward_kinematics(chain):
    """Base-to-end-effector extended pose K_01 K_12 ... K_(n-1)n."""
    return ExtendedPose.from_matrix(K.compose_chain(_matrices(chain)))


def link_angular_velocity(link):
    """Joint angular velocity in the child frame's axes."""
    return np.array([0.0, link.q * math.sin(link.alpha), link.q * math.cos(link.alpha)])


def link_acceleration(link):
    """Child-axis derivative of the link's coordinate velocity."""
    ca, sa = math.cos(link.alpha), math.sin(link.alpha)
    a = link.length
    return np.array([-a * link.q**2,
                     a * ca * link.qdot + sa * link.wdot,
                     -a * sa * link.qdot + ca * link.wdot])


def link_input(link):
    return GalileanInput(link_angular_velocity(link), link_acceleration(link))


def end_effector_input(chain):
    """Sum of the link inputs, each moved into the end-effector frame by the adjoint."""
    Ms = _matrices(chain)
    total = np.zeros(10)
    outer = np.eye(5)
    # walk from the tip so that ``outer`` is K_i,n for link i
    for i in range(len(Ms) - 1, -1, -1):
        xi = link_input(chain.links[i]).tangent
        total += K.gal_adjoint(K.gal_inverse(outer)) @ xi
        outer = K.gal_compose(Ms[i], outer)
    return GalileanInput(total[:3], total[3:6], total[6:9], total[9])


def chain_derivative(chain):
    """Time derivative of the forward-kinematics matrix, K N - N K + K U."""
    Km = forward_kinematics(chain).matrix
    U = end_effector_input(chain).matrix
    X = Km @ TIME_MATRIX - TIME_MATRIX @ Km
    return X + Km @ U


def end_effector_velocity(chain):
    """Time derivative of the end-effector position.

    The fourth column of the forward-kinematics product sums each link's
    velocity column rotated into the base, but leaves out the motion that
    upstream joint rotations impart to the downstream offsets.  The full
    derivative adds ``R w`` with ``w`` the translational slot of the
    end-effector input.
    """
    Km = forward_kinematics(chain).matrix
    U = end_effector_input(chain)
    return Km[:3, 3] + Km[:3, :3] @ U.w


def advance(chain, t):
    """Chain after ``t`` seconds of constant joint acceleration."""
    links = []
    for link in chain:
        links.append(replace(link,
                             theta=link.theta + link.q * t + 0.5 * link.qdot * t * t,
                             q=link.q + link.qdot * t,
                             d=link.d + link.w * t + 0.5 * link.wdot * t * t,
                             w=link.w + link.wdot * t))
    return GdhChain(tuple(links))


LINK_KEYS = ("kind", "theta", "d", "a", "alpha", "q", "w", "qdot", "wdot")


def link_from_dict(entry):
    """Build a link from a mapping with keys kind, theta, d, a, alpha, q, w, qdot, wdot."""
    unknown = set(entry) - set(LINK_KEYS)
    if unknown:
        raise ValueError(f"unknown link keys: {sorted(unknown)}")
    missing = [k for k in ("kind", "theta", "d", "a", "alpha") if k not in entry]
    if missing:
        raise ValueError(f"missing link keys: {missing}")
    return GdhLink(entry["kind"], entry["theta"], entry["d"], entry["a"], entry["alpha"],
                   entry.get("q", 0.0), entry.get("w", 0.0),
                   entry.get("qdot", 0.0), entry.get("wdot", 0.0))


def load_chain(source):
    """Chain from a JSON file path, JSON text, or a list of link mappings."""
    if isinstance(source, (list, tuple)):
        entries = source
    else:
        text = str(source)
        if not text.lstrip().startswith(("[", "{")):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        entries = json.loads(text)
        if isinstance(entries, dict):
            entries = entries["links"]
    return GdhChain(tuple(link_from_dict(e) for e in entries))


def scara(theta=(0.0, 0.0, 0.0), d3=0.1, rates=(0.0, 0.0, 0.0, 0.0)):
    """Four-axis SCARA arm: two planar revolute links, a vertical slide and a wrist roll."""
    q1, q2, w3, q4 = rates
    return GdhChain((
        GdhLink(REVOLUTE, theta[0], 0.4, 0.35, 0.0, q=q1),
        GdhLink(REVOLUTE, theta[1], 0.0, 0.30, math.pi, q=q2),
        GdhLink(PRISMATIC, 0.0, d3, 0.0, 0.0, w=w3),
        GdhLink(REVOLUTE, theta[2], 0.05, 0.0, 0.0, q=q4),
    ))


"""Command-line scenarios: ``galikit <kind> --config <file> --out <dir> [--seed N] [--plot]``.

Kinds are ``earth-sim``, ``gdh-fk``, ``fuse-demo`` and ``preintegrate``.
Configs are JSON objects; every scenario writes CSV files (first line a
header, values printed with 17 significant digits) and, with ``--plot``, an
SVG figure.

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O failure.

Random draws use numpy's counter-based Philox generator seeded with the
scenario seed; normal deviates come from the Box-Muller transform
``sqrt(-2 ln(1 - u1)) cos(2 pi u2)`` on consecutive uniform pairs, so a
given seed always yields the same stream.
"""
import argparse
import copy
from dataclasses import dataclass, field
import json
import math
import os
import sys

import jsonschema
import numpy as np

from . import _kernels as K
from .frames import GalileanFrame, IsochronousFrame
from .fusion import (ConcentratedGaussian, PositionMeasurement, classical_fuse, ellipse,
                     map_update, position_covariance)
from .kinematics import (E3, EarthParams, ImuSample, GalileanInput,
                         PointMassGravity, integrate_rotating, preintegrate)
from .liegroup import GalileanError, so3_exp, so3_log
from .manipulator import (advance, end_effector_input, end_effector_velocity,
                          forward_kinematics, load_chain)

KINDS = ("earth-sim", "gdh-fk", "fuse-demo", "preintegrate")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
MAX_SEED = 2**64 - 1
EARTH_MU = 3.986004418e14
EARTH_RADIUS = 6371000.0


class ConfigError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _num(lo=None, hi=None, exclusive_lo=False, default=None):
    s = {"type": "number"}
    if lo is not None:
        s["exclusiveMinimum" if exclusive_lo else "minimum"] = lo
    if hi is not None:
        s["maximum"] = hi
    if default is not None:
        s["default"] = default
    return s


def _vec3(default=None, bound=None):
    item = {"type": "number"}
    if bound is not None:
        item.update(minimum=-bound, maximum=bound)
    s = {"type": "array", "items": item, "minItems": 3, "maxItems": 3}
    if default is not None:
        s["default"] = list(default)
    return s


def _obj(props, required=()):
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


_COMMON = {"kind": {"enum": list(KINDS)},
           "seed": {"type": "integer", "minimum": 0, "maximum": MAX_SEED}}

_NOISE = _obj({"gyro_std": _num(0.0, 1.0, default=0.0),
               "accel_std": _num(0.0, 10.0, default=0.0)})

_LINK = _obj({"kind": {"enum": ["revolute", "prismatic"]},
              "theta": _num(-100.0, 100.0), "d": _num(-100.0, 100.0),
              "a": _num(-100.0, 100.0), "alpha": _num(-100.0, 100.0),
              "q": _num(-100.0, 100.0, default=0.0), "w": _num(-100.0, 100.0, default=0.0),
              "qdot": _num(-1e3, 1e3, default=0.0), "wdot": _num(-1e3, 1e3, default=0.0)},
             required=("kind", "theta", "d", "a", "alpha"))

SCARA_LINKS = [
    {"kind": "revolute", "theta": 0.0, "d": 0.4, "a": 0.35, "alpha": 0.0, "q": 0.5, "qdot": 0.2},
    {"kind": "revolute", "theta": 0.3, "d": 0.0, "a": 0.30, "alpha": math.pi, "q": -0.8},
    {"kind": "prismatic", "theta": 0.0, "d": 0.1, "a": 0.0, "alpha": 0.0, "w": 0.05, "wdot": -0.02},
    {"kind": "revolute", "theta": 0.0, "d": 0.05, "a": 0.0, "alpha": 0.0, "q": 1.0},
]

SCHEMAS = {
    "earth-sim": _obj({
        **_COMMON,
        "duration": _num(0.0, 86400.0, exclusive_lo=True, default=10.0),
        "dt": _num(0.0, 1.0, exclusive_lo=True, default=1e-3),
        "output_stride": {"type": "integer", "minimum": 1, "default": 1},
        "latitude_deg": _num(-90.0, 90.0, default=45.0),
        "omega_e": _vec3(bound=1e-3),
        "g_a": _num(9.0, 10.5, default=9.80665),
        "gravity": {"enum": ["homogeneous", "point-mass", "none"], "default": "homogeneous"},
        "mu": _num(0.0, 1e20, exclusive_lo=True, default=EARTH_MU),
        "center": _vec3(default=(0.0, 0.0, EARTH_RADIUS), bound=1e12),
        "rotvec0": _vec3(default=(0.0, 0.0, 0.0), bound=3.14),
        "v0": _vec3(default=(0.0, 0.0, 0.0), bound=1e4),
        "p0": _vec3(default=(0.0, 0.0, 0.0), bound=1e7),
        "omega_b": _vec3(bound=100.0),
        "accel_b": _vec3(bound=1e3),
        "noise": {**_NOISE, "default": {}},
    }, required=("kind",)),
    "gdh-fk": _obj({
        **_COMMON,
        "links": {"type": "array", "items": _LINK, "minItems": 1, "maxItems": 64,
                  "default": SCARA_LINKS},
        "duration": _num(0.0, 3600.0, exclusive_lo=True, default=2.0),
        "dt": _num(0.0, 1.0, exclusive_lo=True, default=1e-3),
    }, required=("kind",)),
    "fuse-demo": _obj({
        **_COMMON,
        "mode": {"enum": ["galilean", "classical", "both"], "default": "both"},
        "prior": {**_obj({
            "rotvec": _vec3(default=(0.0, 0.0, 0.0), bound=3.14),
            "v": _vec3(default=(1.0, 0.0, 0.0), bound=1e4),
            "p": _vec3(default=(0.0, 0.0, 0.0), bound=1e7),
            "t": _num(-1e9, 1e9, default=0.0),
            "cov_diag": {"type": "array", "items": _num(0.0, exclusive_lo=True),
                         "minItems": 10, "maxItems": 10,
                         "default": [1e-4] * 3 + [1e-2] * 3 + [1.0] * 3 + [1e-4]},
            "cov": {"type": "array", "items": {"type": "number"}, "minItems": 100, "maxItems": 100},
        }), "default": {}},
        "measurement": _obj({
            "y": _vec3(bound=1e7),
            "tau": _num(-1e9, 1e9),
            "sigma_p": {"type": "array", "items": {"type": "number"}, "minItems": 9, "maxItems": 9},
            "sigma_t": _num(0.0, 1e6),
        }, required=("y", "tau", "sigma_p", "sigma_t")),
        "truth": {**_obj({
            "delay": _num(-1e3, 1e3, default=0.0),
            "position_std": _num(0.0, 1e3, exclusive_lo=True, default=0.3),
            "time_std": _num(0.0, 1e3, default=1.0),
        }), "default": {}},
    }, required=("kind",)),
    "preintegrate": _obj({
        **_COMMON,
        "samples": {"type": "array", "minItems": 2, "items": _obj({
            "t": {"type": "number"}, "omega": _vec3(bound=100.0), "accel": _vec3(bound=1e3)},
            required=("t", "omega", "accel"))},
        "rate_hz": _num(0.0, 1e5, exclusive_lo=True, default=200.0),
        "duration": _num(0.0, 3600.0, exclusive_lo=True, default=1.0),
        "omega": _vec3(default=(0.0, 0.0, 0.2), bound=100.0),
        "accel": _vec3(default=(1.0, 0.0, 0.0), bound=1e3),
        "omega_ref": _vec3(default=(0.0, 0.0, 0.0), bound=100.0),
        "accel_ref": _vec3(default=(0.0, 0.0, 0.0), bound=1e3),
        "noise": {**_NOISE, "default": {}},
    }, required=("kind",)),
}


def _apply_defaults(schema, value):
    if schema.get("type") != "object" or not isinstance(value, dict):
        return value
    for key, sub in schema["properties"].items():
        if key not in value and "default" in sub:
            value[key] = copy.deepcopy(sub["default"])
        if key in value:
            value[key] = _apply_defaults(sub, value[key])
    return value


def _path(err):
    return ".".join(str(p) for p in err.absolute_path) or "<root>"


@dataclass
class Scenario:
    kind: str
    params: dict
    seed: int = None
    output_dir: str = None
    plot: bool = False
    stochastic: bool = field(default=False)


def _is_stochastic(kind, params):
    if kind in ("earth-sim", "preintegrate"):
        noise = params.get("noise", {})
        return noise.get("gyro_std", 0.0) > 0 or noise.get("accel_std", 0.0) > 0
    if kind == "fuse-demo":
        return "measurement" not in params
    return False


def parse_scenario(text, kind=None, seed=None):
    """Validate a JSON config and fill in defaults.

    ``kind``/``seed`` (from the command line) are used when the config omits
    them and must agree with it otherwise.  Raises ConfigError listing every
    problem found.
    """
    text = text.strip() if isinstance(text, str) else text.decode("utf-8").strip()
    try:
        data = json.loads(text) if text else {}
    except json.JSONDecodeError as exc:
        raise ConfigError([f"<root>: invalid JSON ({exc})"]) from None
    if not isinstance(data, dict):
        raise ConfigError(["<root>: config must be a JSON object"])
    errors = []
    if kind is not None:
        if "kind" in data and data["kind"] != kind:
            errors.append(f"kind: config says {data['kind']!r} but {kind!r} was requested")
        data.setdefault("kind", kind)
    if seed is not None:
        data["seed"] = seed
    if "kind" not in data:
        raise ConfigError(["kind: 'kind' is a required property"] + errors)
    if data["kind"] not in SCHEMAS:
        raise ConfigError([f"kind: unknown kind {data['kind']!r}, expected one of {list(KINDS)}"]
                          + errors)
    schema = SCHEMAS[data["kind"]]
    validator = jsonschema.Draft202012Validator(schema)
    for err in sorted(validator.iter_errors(data), key=lambda e: (_path(e), e.message)):
        errors.append(f"{_path(err)}: {err.message}")
    if errors:
        raise ConfigError(errors)
    params = _apply_defaults(schema, copy.deepcopy(data))
    errors += _cross_checks(params)
    k = params.pop("kind")
    s = params.pop("seed", None)
    stochastic = _is_stochastic(k, params)
    if stochastic and s is None:
        errors.append("seed: a seed is required for a stochastic scenario")
    if errors:
        raise ConfigError(errors)
    return Scenario(k, params, s, stochastic=stochastic)


def _cross_checks(p):
    errors = []
    kind = p["kind"]
    if "dt" in p and "duration" in p and p["dt"] > p["duration"]:
        errors.append("dt: must not exceed duration")
    if kind == "earth-sim":
        g = p["g_a"]
        try:
            EarthParams(p.get("omega_e", (0.0, 0.0, 0.0)), g)
        except ValueError as exc:
            errors.append(f"omega_e/g_a: {exc}")
        if p["gravity"] == "point-mass":
            r = np.linalg.norm(np.asarray(p["p0"]) - np.asarray(p["center"]))
            if r < 1.0:
                errors.append("p0: initial position lies inside the gravity exclusion radius")
    if kind == "fuse-demo":
        prior = p["prior"]
        cov = np.array(prior["cov"]).reshape(10, 10) if "cov" in prior else np.diag(prior["cov_diag"])
        if np.abs(cov - cov.T).max() > 1e-12 or np.linalg.eigvalsh(0.5 * (cov + cov.T)).min() <= 0:
            errors.append("prior.cov: must be symmetric positive definite")
        if "measurement" in p:
            Sp = np.array(p["measurement"]["sigma_p"]).reshape(3, 3)
            if np.abs(Sp - Sp.T).max() > 1e-12 or np.linalg.eigvalsh(0.5 * (Sp + Sp.T)).min() <= 0:
                errors.append("measurement.sigma_p: must be symmetric positive definite")
    if kind == "preintegrate" and "samples" in p:
        ts = [s["t"] for s in p["samples"]]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            errors.append("samples: timestamps must be strictly increasing")
    return errors


# ---------------------------------------------------------------- randomness

def make_rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def gaussian(rng, shape):
    """Standard normal draws by Box-Muller on Philox uniforms."""
    n = int(np.prod(shape))
    m = (n + 1) // 2
    u1 = rng.random(m)
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log1p(-u1))
    z = np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])
    return z[:n].reshape(shape)


# ---------------------------------------------------------------- output

def _fmt(x):
    if isinstance(x, str):
        return x
    return "%.17g" % float(x)


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "galikit"
    return plt


def _save_trace(path, series, xlabel, ylabel, title):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 5))
    for label, x, y in series:
        ax.plot(x, y, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend()
    ax.axis("equal")
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _rotvec(R):
    return so3_log(R) if K.so3_angle(np.ascontiguousarray(R)) < np.pi - 1e-10 else np.full(3, np.nan)


# ---------------------------------------------------------------- scenarios

def _imu_noise(p, n, rng):
    noise = p.get("noise", {})
    g = noise.get("gyro_std", 0.0)
    a = noise.get("accel_std", 0.0)
    if rng is None or (g == 0.0 and a == 0.0):
        return np.zeros((n, 3)), np.zeros((n, 3))
    return g * gaussian(rng, (n, 3)), a * gaussian(rng, (n, 3))


def run_earth_sim(p, out, rng, plot):
    if "omega_e" in p:
        earth = EarthParams(p["omega_e"], p["g_a"])
    else:
        earth = EarthParams.at_latitude(math.radians(p["latitude_deg"]), p["g_a"])
    dt = p["dt"]
    n = max(1, math.ceil(p["duration"] / dt - 1e-9))
    dw, da = _imu_noise(p, n, rng)
    R0 = so3_exp(p["rotvec0"])
    # without explicit IMU data the body sits still on the surface
    rest_accel = np.zeros(3) if p["gravity"] == "none" else -earth.g_a * E3
    omega_b = np.asarray(p.get("omega_b", R0.T @ earth.omega_e)) + dw
    accel_b = np.asarray(p.get("accel_b", R0.T @ rest_accel)) + da
    F0 = IsochronousFrame(R0, p["v0"], p["p0"])
    gravity = None
    accel_a = -earth.g_a * E3
    if p["gravity"] == "none":
        accel_a = np.zeros(3)
    elif p["gravity"] == "point-mass":
        gravity = PointMassGravity(p["mu"], p["center"])
    traj = integrate_rotating(F0, earth.omega_e, accel_a, omega_b, accel_b, dt, gravity)
    rows = []
    for i in range(0, len(traj), p["output_stride"]):
        S = traj.states[i]
        rows.append([traj.times[i], *_rotvec(S[:3, :3]), *S[:3, 3], *S[:3, 4]])
    header = ["time", "rx", "ry", "rz", "vx", "vy", "vz", "px", "py", "pz"]
    write_csv(os.path.join(out, "trajectory.csv"), header, rows)
    if plot:
        P = traj.states[:, :3, 4]
        _save_trace(os.path.join(out, "positions.svg"), [("position", P[:, 1], P[:, 0])],
                    "east (m)", "north (m)", "earth-sim horizontal position")


def run_gdh_fk(p, out, rng, plot):
    chain0 = load_chain(p["links"])
    dt = p["dt"]
    n = max(1, math.ceil(p["duration"] / dt - 1e-9))
    rows = []
    P = np.empty((n + 1, 3))
    for i in range(n + 1):
        t = min(i * dt, p["duration"])
        chain = advance(chain0, t)
        Kp = forward_kinematics(chain)
        U = end_effector_input(chain)
        P[i] = Kp.p
        rows.append([t, *Kp.p, *end_effector_velocity(chain), *Kp.pdot, *U.omega])
    header = ["time", "px", "py", "pz", "pdx", "pdy", "pdz", "vcx", "vcy", "vcz",
              "wx", "wy", "wz"]
    write_csv(os.path.join(out, "fk.csv"), header, rows)
    if plot:
        _save_trace(os.path.join(out, "fk.svg"), [("end effector", P[:, 0], P[:, 1])],
                    "x (m)", "y (m)", "end-effector path")


def _fuse_inputs(p, rng):
    pr = p["prior"]
    cov = np.array(pr["cov"]).reshape(10, 10) if "cov" in pr else np.diag(pr["cov_diag"])
    cov = 0.5 * (cov + cov.T)
    mean = GalileanFrame(so3_exp(pr["rotvec"]), pr["v"], pr["p"], pr["t"])
    prior = ConcentratedGaussian(mean, cov)
    if "measurement" in p:
        m = p["measurement"]
        meas = PositionMeasurement(m["y"], m["tau"], np.array(m["sigma_p"]).reshape(3, 3),
                                   m["sigma_t"])
        return prior, meas, None
    tr = p["truth"]
    # truth drawn from the prior, then an event on its inertial track
    eta = np.linalg.cholesky(cov) @ gaussian(rng, (10,))
    truth = GalileanFrame.from_matrix(K.gal_compose(mean.matrix, K.gal_exp(eta)))
    t_i = truth.t + tr["delay"]
    p_i = truth.p + tr["delay"] * truth.v
    noise = gaussian(rng, (4,))
    y = p_i + tr["position_std"] * noise[:3]
    tau = t_i + tr["time_std"] * noise[3]
    meas = PositionMeasurement(y, tau, tr["position_std"] ** 2 * np.eye(3), tr["time_std"] ** 2)
    return prior, meas, p_i


def _axis_angle_deg(cov2):
    vals, vecs = np.linalg.eigh(cov2)
    major = vecs[:, -1]
    return math.degrees(math.atan2(major[1], major[0])) % 180.0, float(vals[-1]), float(vals[0])


def run_fuse_demo(p, out, rng, plot):
    prior, meas, truth_p = _fuse_inputs(p, rng)
    modes = ["galilean", "classical"] if p["mode"] == "both" else [p["mode"]]
    results = {}
    for mode in modes:
        results[mode] = map_update(prior, meas) if mode == "galilean" else classical_fuse(prior, meas)
    header = ["mode", "px", "py", "pz", "vx", "vy", "vz", "t", "trace_cov", "pos_major_var",
              "pos_minor_var", "pos_axis_deg", "regularized"] + [f"eps{j}" for j in range(10)]
    rows = []
    for mode, r in results.items():
        post = r.posterior
        Pc = position_covariance(post)
        ang, major, minor = _axis_angle_deg(Pc[:2, :2])
        rows.append([mode, *post.mean.p, *post.mean.v, post.mean.t, np.trace(post.cov),
                     major, minor, ang, int(r.regularized), *r.correction])
    write_csv(os.path.join(out, "fusion.csv"), header, rows)
    shapes = [("prior", prior.mean.p[:2], position_covariance(prior)[:2, :2]),
              ("measurement", meas.y[:2], meas.sigma_p[:2, :2])]
    shapes += [(mode, r.posterior.mean.p[:2], position_covariance(r.posterior)[:2, :2])
               for mode, r in results.items()]
    erows = []
    for label, c, cov2 in shapes:
        for k, xy in enumerate(ellipse(cov2)):
            erows.append([label, k, c[0] + xy[0], c[1] + xy[1]])
    write_csv(os.path.join(out, "ellipses.csv"), ["label", "k", "x", "y"], erows)
    if plot:
        plt = _pyplot()
        fig, axes = plt.subplots(len(results), 1, figsize=(6, 5 * len(results)), squeeze=False)
        colours = {"prior": "red", "measurement": "cyan", "galilean": "blue", "classical": "blue"}
        for ax, mode in zip(axes[:, 0], results):
            for label, c, cov2 in shapes:
                if label in results and label != mode:
                    continue
                e = ellipse(cov2) + c
                ax.plot(e[:, 0], e[:, 1], color=colours[label], label=label)
                ax.plot(*c, "o" if label != "measurement" else "x", color=colours[label])
            ax.annotate("", xy=prior.mean.p[:2] + prior.mean.v[:2], xytext=prior.mean.p[:2],
                        arrowprops={"arrowstyle": "->"})
            if truth_p is not None:
                ax.plot(*truth_p[:2], "*", color="black", label="truth")
            ax.set_title(f"{mode} fusion")
            ax.axis("equal")
            ax.legend()
        fig.savefig(os.path.join(out, "fusion.svg"), format="svg", metadata={"Date": None})
        plt.close(fig)


def _samples(p, rng):
    if "samples" in p:
        return [ImuSample(s["omega"], s["accel"], s["t"]) for s in p["samples"]]
    n = max(1, math.ceil(p["duration"] * p["rate_hz"] - 1e-9))
    times = np.arange(n + 1) / p["rate_hz"]
    dw, da = _imu_noise(p, n + 1, rng)
    omega = np.asarray(p["omega"]) + dw
    accel = np.asarray(p["accel"]) + da
    return [ImuSample(omega[j], accel[j], times[j]) for j in range(n + 1)]


def run_preintegrate(p, out, rng, plot):
    samples = _samples(p, rng)
    ref = [GalileanInput(p.get("omega_ref", (0, 0, 0)), p.get("accel_ref", (0, 0, 0)))] * len(samples)
    traj = preintegrate(samples, ref, return_all=True)
    rows = []
    for t, S in zip(traj.times, traj.states):
        rows.append([t, *_rotvec(S[:3, :3]), *S[:3, 3], *S[:3, 4], S[3, 4]])
    header = ["time", "rx", "ry", "rz", "vx", "vy", "vz", "px", "py", "pz", "t"]
    write_csv(os.path.join(out, "preintegration.csv"), header, rows)
    if plot:
        P = traj.states[:, :3, 4]
        _save_trace(os.path.join(out, "preintegration.svg"), [("relative position", P[:, 0], P[:, 1])],
                    "x (m)", "y (m)", "pre-integrated relative position")


RUNNERS = {"earth-sim": run_earth_sim, "gdh-fk": run_gdh_fk,
           "fuse-demo": run_fuse_demo, "preintegrate": run_preintegrate}


def run_scenario(s, out=None, plot=None):
    """Run a parsed scenario, writing its files to ``out``; returns an exit code."""
    out = out or s.output_dir
    plot = s.plot if plot is None else plot
    if plot:
        try:
            _pyplot()
        except ImportError:
            print("galikit: matplotlib not installed, skipping plots", file=sys.stderr)
            plot = False
    os.makedirs(out, exist_ok=True)
    rng = make_rng(s.seed) if s.seed is not None else None
    RUNNERS[s.kind](s.params, out, rng, plot)
    return EXIT_OK


def main(argv=None):
    ap = argparse.ArgumentParser(prog="galikit", description=__doc__.split("\n")[0])
    ap.add_argument("kind", choices=KINDS)
    ap.add_argument("--config", required=True, help="JSON scenario file")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--plot", action="store_true", help="also write an SVG figure")
    args = ap.parse_args(argv)
    try:
        with open(args.config, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"galikit: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        scenario = parse_scenario(text, kind=args.kind, seed=args.seed)
    except (ConfigError, UnicodeDecodeError) as exc:
        errors = exc.errors if isinstance(exc, ConfigError) else [str(exc)]
        for e in errors:
            print(f"galikit: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    scenario.output_dir = args.out
    scenario.plot = args.plot
    try:
        return run_scenario(scenario)
    except GalileanError as exc:
        print(f"galikit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"galikit: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

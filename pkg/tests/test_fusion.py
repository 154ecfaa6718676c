import numpy as np
import pytest

import galikit.fusion as fu
from galikit.frames import GalileanFrame
from galikit.liegroup import Event, GalileanElement, exp, log, right_jacobian
import oracles as orc


def random_spd(rng, n, scale=1.0, floor=1e-2):
    A = rng.standard_normal((n, n))
    return scale * (A @ A.T / n + floor * np.eye(n))


def random_prior(rng, t=None):
    mean = GalileanFrame(orc.random_rotation(rng), rng.standard_normal(3), rng.standard_normal(3),
                         rng.standard_normal() if t is None else t)
    return fu.ConcentratedGaussian(mean, random_spd(rng, 10, 0.1))


def random_measurement(rng, prior, sigma_t=None):
    tau = prior.mean.t + 0.3 * rng.standard_normal()
    y = prior.mean.p + (tau - prior.mean.t) * prior.mean.v + 0.5 * rng.standard_normal(3)
    st = rng.uniform(0, 0.5) if sigma_t is None else sigma_t
    return fu.PositionMeasurement(y, tau, random_spd(rng, 3, 0.2), st)


def jitter_scenario(sigma_t=1.0):
    cov = np.diag([1e-4] * 3 + [1e-2] * 3 + [1.0] * 3 + [1e-4])
    prior = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), [1.0, 0, 0], np.zeros(3), 0.0), cov)
    m = fu.PositionMeasurement([0.4, -0.3, 0.0], 0.2, 0.09 * np.eye(3), sigma_t)
    return prior, m


def principal_angle_deg(cov2):
    vals, vecs = np.linalg.eigh(cov2)
    major = vecs[:, -1]
    return np.degrees(np.arctan2(abs(major[1]), abs(major[0])))


# ---------------------------------------------------------------- types

def test_type_validation():
    with pytest.raises(ValueError):
        fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), -np.eye(10))
    with pytest.raises(ValueError):
        fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), np.eye(9))
    with pytest.raises(ValueError):
        fu.PositionMeasurement(np.zeros(3), 0.0, np.eye(3), -1.0)
    bad = np.eye(3)
    bad[0, 1] = 0.5
    with pytest.raises(ValueError):
        fu.PositionMeasurement(np.zeros(3), 0.0, bad, 0.0)


def test_sample_distribution(rng):
    prior = random_prior(rng)
    draws = prior.sample(rng, 4000)
    eta = np.array([log(orc_element(prior.mean.matrix, D)) for D in draws])
    assert np.abs(np.cov(eta.T) - prior.cov).max() <= 0.1 * np.abs(prior.cov).max()


def orc_element(M, D):
    return GalileanElement.from_matrix(np.linalg.inv(M) @ D, check=False)


# ---------------------------------------------------------------- building blocks

def test_measurement_event():
    m = fu.PositionMeasurement([1, 2, 3], 4.0, np.eye(3), 0.0)
    e = fu.measurement_event(m)
    assert np.array_equal(e.homogeneous, [1, 2, 3, 4, 1])
    z = fu.measurement_event(fu.PositionMeasurement(np.zeros(3), 0.0, np.eye(3), 0.0))
    assert np.array_equal(z.homogeneous, [0, 0, 0, 0, 1])
    assert np.array_equal(e.p, m.y) and e.t == m.tau


def test_relative_frame_estimate(rng):
    prior = random_prior(rng, t=10.0)
    assert np.array_equal(fu.relative_frame_estimate(prior, 10.0).matrix, np.eye(5))
    assert abs(fu.relative_frame_estimate(prior, 9.8).t - (-0.2)) < 1e-14


def test_error_measurement(rng):
    ident = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), np.eye(10))
    assert np.array_equal(fu.error_measurement(ident, Event([1, 2, 3], 4.0)), [1, 2, 3, 4])
    for _ in range(50):
        prior = random_prior(rng)
        e = Event(rng.standard_normal(3), rng.standard_normal())
        oracle = (np.linalg.inv(prior.mean.matrix) @ e.homogeneous)[:4]
        assert np.abs(fu.error_measurement(prior, e) - oracle).max() <= 1e-12
        rel = GalileanFrame(orc.random_rotation(rng), rng.standard_normal(3), rng.standard_normal(3), 0.4)
        y0 = np.array([0, 0, 0, 0, 1.0])
        pred = prior.mean.matrix @ rel.matrix @ y0
        d = fu.error_measurement(prior, pred)
        assert np.abs(d - (rel.matrix @ y0)[:4]).max() <= 1e-12


def test_noise_mapping(rng):
    ident = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), np.eye(10))
    N_mu, N_eta = fu.noise_mapping(ident)
    assert np.array_equal(N_mu, np.diag([1.0, 1, 1, 0]))
    assert np.count_nonzero(N_eta) == 1 and N_eta[3, 9] == 1.0
    for _ in range(50):
        prior = random_prior(rng)
        N_mu, N_eta = fu.noise_mapping(prior)
        Finv = np.linalg.inv(prior.mean.matrix)
        oracle = Finv[:4, :4].copy()
        oracle[3, 3] -= 1.0
        assert np.abs(N_mu - oracle).max() <= 1e-12
        S = N_mu @ random_spd(rng, 4) @ N_mu.T + N_eta @ prior.cov @ N_eta.T
        assert np.linalg.eigvalsh(0.5 * (S + S.T)).min() >= -1e-12


def test_relative_covariance(rng):
    N_mu = np.diag([1.0, 1, 1, 0])
    N_eta = np.zeros((4, 10))
    N_eta[3, 9] = 1.0
    Sp = random_spd(rng, 3)
    sigma = np.zeros((4, 4))
    sigma[:3, :3] = Sp
    sigma[3, 3] = 0.7
    Q = random_spd(rng, 10)
    S, flag = fu.relative_covariance(N_mu, sigma, N_eta, Q)
    oracle = np.zeros((4, 4))
    oracle[:3, :3] = Sp
    oracle[3, 3] = Q[9, 9]
    assert np.abs(S - oracle).max() <= 1e-15 and not flag
    Z, flag = fu.relative_covariance(N_mu, np.zeros((4, 4)), N_eta, np.zeros((10, 10)))
    assert np.array_equal(Z, np.zeros((4, 4))) and not flag
    for _ in range(50):
        S, _ = fu.relative_covariance(rng.standard_normal((4, 4)), random_spd(rng, 4), N_eta, random_spd(rng, 10))
        assert np.array_equal(S, S.T) and np.linalg.eigvalsh(S).min() >= -1e-12


def test_regularization_flag():
    cov = np.diag([1e-2] * 9 + [1e-16])
    prior = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), cov)
    m = fu.PositionMeasurement([0.1, 0, 0], 0.0, np.eye(3), 0.0)
    r = fu.map_update(prior, m)
    assert r.regularized
    assert not fu.map_update(*jitter_scenario()).regularized


def test_measurement_matrix_definition(rng):
    y0 = np.array([0, 0, 0, 0, 1.0])
    for _ in range(50):
        rel = GalileanFrame(orc.random_rotation(rng), rng.standard_normal(3), rng.standard_normal(3),
                            rng.standard_normal())
        C = fu.measurement_matrix(rel)
        for j in range(10):
            e = np.zeros(10)
            e[j] = 1.0
            direct = -(orc.algebra_matrix(e) @ rel.matrix @ y0)[:4]
            assert np.abs(C[:, j] - direct).max() <= 1e-13
        eps = rng.standard_normal(10)
        assert np.abs(C @ eps + (orc.algebra_matrix(eps) @ rel.matrix @ y0)[:4]).max() <= 1e-13


def test_measurement_matrix_time_offset():
    t = 0.35
    C = fu.measurement_matrix(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), t))
    assert np.array_equal(C[:, :3], np.zeros((4, 3)))
    assert np.allclose(C[:3, 3:6], -t * np.eye(3)) and np.allclose(C[:3, 6:9], -np.eye(3))
    assert np.array_equal(C[:, 9], [0, 0, 0, -1.0])
    C0 = fu.measurement_matrix(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0))
    assert np.array_equal(C0[:, 3:6], np.zeros((4, 3)))


# ---------------------------------------------------------------- update

def test_zero_innovation_keeps_mean(rng):
    prior = random_prior(rng)
    m = fu.PositionMeasurement(prior.mean.p, prior.mean.t, 0.1 * np.eye(3), 0.0)
    r = fu.map_update(prior, m)
    assert np.abs(r.correction).max() <= 1e-15
    assert np.abs(r.posterior.mean.matrix - prior.mean.matrix).max() <= 1e-15
    assert np.trace(r.posterior.cov) < np.trace(prior.cov)
    c = fu.classical_fuse(prior, m)
    assert np.abs(c.correction).max() <= 1e-15


def test_estimate_moves_toward_measurement():
    cov = np.eye(10) * 1e-2
    prior = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), np.zeros(3), np.zeros(3), 0.0), cov)
    m = fu.PositionMeasurement([1.0, 0, 0], 0.0, 0.01 * np.eye(3), 0.0)
    p = fu.map_update(prior, m).posterior.mean.p
    # scalar gain prior / (prior + noise) along the measured axis
    assert abs(p[0] - 0.5) < 1e-9 and np.allclose(p[1:], 0)


def linear_oracle(prior, m):
    g = prior.mean
    return orc.fusion_linear_oracle(g.R, g.v, g.p, g.t, prior.cov, m.y, m.tau, m.sigma_p, m.sigma_t)


def test_linear_oracle(rng):
    for _ in range(200):
        prior = random_prior(rng)
        if rng.random() < 0.5:
            prior = fu.ConcentratedGaussian(GalileanFrame(np.eye(3), prior.mean.v, prior.mean.p, prior.mean.t),
                                            prior.cov)
        m = fu.PositionMeasurement(prior.mean.p + 0.3 * rng.standard_normal(3), prior.mean.t,
                                   random_spd(rng, 3, 0.2), 0.0)
        r = fu.map_update(prior, m)
        eps, info = linear_oracle(prior, m)
        assert np.abs(r.correction - eps).max() <= 1e-9
        assert np.abs(r.information - info).max() <= 1e-9 * np.abs(info).max()


def test_classical_matches_galilean_when_aligned(rng):
    prior = random_prior(rng)
    m = fu.PositionMeasurement(prior.mean.p + 0.2, prior.mean.t, 0.1 * np.eye(3), 0.0)
    a, b = fu.map_update(prior, m), fu.classical_fuse(prior, m)
    assert np.array_equal(a.correction, b.correction)
    assert np.array_equal(a.posterior.cov, b.posterior.cov)


def test_jitter_scenario():
    prior, m = jitter_scenario()
    gal = fu.map_update(prior, m)
    cls = fu.classical_fuse(prior, m)
    Pg = fu.position_covariance(gal.posterior)
    assert principal_angle_deg(Pg[:2, :2]) <= 5.0
    assert np.trace(cls.posterior.cov) < np.trace(gal.posterior.cov)
    Pc = fu.position_covariance(cls.posterior)
    assert Pg[0, 0] > 3 * Pc[0, 0]


def test_posterior_validity_and_information(rng):
    for _ in range(200):
        prior = random_prior(rng)
        r = fu.map_update(prior, random_measurement(rng, prior))
        Q = r.posterior.cov
        assert np.array_equal(Q, Q.T) and np.linalg.eigvalsh(Q).min() > 0
        gain = r.information - np.linalg.inv(prior.cov)
        assert np.linalg.eigvalsh(0.5 * (gain + gain.T)).min() >= -1e-9 * np.abs(r.information).max()


def test_invariance_under_common_transform(rng):
    for _ in range(50):
        prior = random_prior(rng)
        m = random_measurement(rng, prior)
        rel = fu.relative_frame_estimate(prior, m.tau)
        Gq = orc.random_rotation(rng)
        G = GalileanFrame(Gq, np.zeros(3), rng.standard_normal(3), rng.standard_normal())
        moved = fu.ConcentratedGaussian(GalileanFrame.from_matrix(G.matrix @ prior.mean.matrix), prior.cov)
        y = G.matrix @ fu.measurement_event(m).homogeneous
        m2 = fu.PositionMeasurement(y[:3], y[3], Gq @ m.sigma_p @ Gq.T, m.sigma_t)
        a = fu.map_update(prior, m, rel)
        b = fu.map_update(moved, m2, rel)
        assert np.abs(a.correction - b.correction).max() <= 1e-9


def test_posterior_covariance_transport(rng):
    # F_hat exp(eps), eps ~ N(eps_hat, P), re-centred at F_hat exp(eps_hat)
    eps_hat = np.r_[0.9, -0.6, 0.7, rng.standard_normal(7)]
    P = random_spd(rng, 10, 1e-6)
    J = right_jacobian(eps_hat)
    draws = eps_hat + rng.standard_normal((20000, 10)) @ np.linalg.cholesky(P).T
    centre_inv = exp(-eps_hat)
    eta = np.array([log(centre_inv @ exp(e)) for e in draws])
    emp = np.cov(eta.T)
    scale = np.abs(emp).max()
    assert np.abs(emp - J @ P @ J.T).max() <= 0.05 * scale
    assert np.abs(emp - J.T @ P @ J).max() > 0.05 * scale


def test_covariance_projections():
    prior, _ = jitter_scenario()
    Pc = fu.position_covariance(prior)
    # position picks up w directly and the timing slot through the velocity
    assert np.allclose(Pc, np.eye(3) + 1e-4 * np.diag([1.0, 0, 0]))
    assert np.allclose(fu.velocity_covariance(prior), 1e-2 * np.eye(3))


def test_ellipse():
    pts = fu.ellipse(np.diag([4.0, 1.0]), n_std=1.0, n_points=8)
    assert pts.shape == (9, 2)
    assert np.allclose((pts[:, 0] / 2) ** 2 + pts[:, 1] ** 2, 1.0)
    assert np.allclose(np.abs(pts).max(axis=0), [2.0, 1.0])

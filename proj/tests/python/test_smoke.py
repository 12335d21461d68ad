import math

import dcsb


def make_params(gamma=0.0, zeta=0.0):
    p = dcsb.PhysParams()
    p.gamma = gamma
    p.zeta = zeta
    return p


def test_special_functions():
    assert abs(dcsb.gamma_real(1.1) - 0.951350769866873184) < 1e-14
    assert abs(dcsb.gamma(0.5 + 0j).real - math.sqrt(math.pi)) < 5e-14
    assert abs(dcsb.digamma(1.0) + 0.577215664901532861) < 1e-13
    assert abs(dcsb.trigamma(1.1) - 1.43329915079275882) < 1e-13


def test_bath_quadrature_matches_closed_form():
    p = make_params(gamma=0.1)
    for t in (0.01, 0.1, 1.0):
        q1, q2 = dcsb.q_quadrature(p, t)
        assert abs(q1 - dcsb.q_prime(p, t)) < 1e-8
        assert abs(q2 - dcsb.q_double_prime(p, t)) < 1e-8


def test_franck_condon():
    p = make_params(gamma=0.1, zeta=0.1)
    value, warnings = dcsb.franck_condon(p, dcsb.ExponentMode.paper)
    assert abs(value - 0.936699599117201332) < 1e-14
    assert warnings == []


def test_free_limit_is_cosine():
    p = make_params()
    ps = dcsb.find_poles(dcsb.build_rational(p, dcsb.KernelConfig()))
    grid = [0.05 * i for i in range(1001)]
    tr = dcsb.reconstruct_time(ps, grid)
    w = p.delta_freq()
    assert max(abs(v - math.cos(w * t)) for t, v in zip(grid, tr.values)) < 1e-6


def test_dc_pole_structure():
    p = make_params(gamma=0.3, zeta=0.1)
    ps = dcsb.find_poles(dcsb.build_rational(p, dcsb.KernelConfig()))
    assert abs(sum(ps.residues) - 1.0) < 1e-8
    assert all(z.real <= 1e-10 for z in ps.poles)
    rep = dcsb.coherence_report(ps)
    assert rep.modes[0].freq > 0.0
    assert abs(rep.modes[0].tau_phi - 96.3698) < 1e-2


def test_zeta_zero_reduction():
    p = make_params(gamma=0.15)
    c = dcsb.KernelConfig()
    for lam in (0.1 + 0.2j, 0.5 - 1.0j):
        dc = dcsb.sigma_dc_laplace(p, c, lam)
        sb = dcsb.sigma_sb_laplace(p, c, lam)
        assert abs(dc - sb) < 1e-12 * abs(sb)


def test_transition_scan_sb():
    c = dcsb.KernelConfig()
    c.variant = dcsb.Variant.sb
    g = dcsb.transition_scan(make_params(), c, 0.001, 0.1)
    assert 0.007 < g < 0.017

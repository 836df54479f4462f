import numpy as np
import pytest

from lipframe import (
    ConvergenceError,
    DivergenceError,
    Frame,
    FrameMismatchError,
    LipMap,
    MembershipError,
    SeqVec,
    SolverCfg,
    analysis,
    basis_vector,
    certify_frame,
    coefficient_projection,
    disc_frame,
    frame_map,
    full_space,
    invert_frame_map,
    linear_frame,
    lp_norm,
    reconstruct,
    sample_pairs,
    sample_points,
    synthesis,
)


def frame_map_termwise(F, x):
    # independent oracle: accumulate f_n(x) tau_n one term at a time
    out = np.zeros(F.M.ambient_dim, dtype=complex)
    for m, t in zip(F.f, F.tau):
        out = out + m.eval(np.asarray(x, dtype=complex)) * t
    return out


def zero_decorated(N=4):
    zero = LipMap(eval=lambda pt: 0.0 + 0.0j, label="0")
    return Frame(
        M=full_space(1, "real"),
        p=1.0,
        f=(zero,) * N,
        tau=np.ones((N, 1), dtype=complex),
        tail_bound=lambda x: 0.0,
    )


# ---------------------------------------------------------------- analysis

def test_analysis_disc_at_zero(disc30):
    assert np.all(analysis(disc30, 0.0).entries == 0.0)


def test_analysis_disc_at_one_third(disc30):
    # z/(1+z) = 1/4, so entry n is 4^-n
    got = analysis(disc30, 1.0 / 3.0).entries
    expected = np.array([4.0 ** -(n + 1) for n in range(30)])
    assert np.allclose(got, expected, rtol=1e-13, atol=0.0)


def test_analysis_log_at_one(log40):
    got = analysis(log40, 1.0).entries
    assert got[0] == 1.0
    assert np.all(got[1:] == 0.0)


def test_analysis_membership_error(disc30):
    with pytest.raises(MembershipError):
        analysis(disc30, 2.0)


# --------------------------------------------------------------- synthesis

def test_synthesis_basis_vector_picks_tau(disc30):
    out = synthesis(disc30, basis_vector(1, 30, 1.0))
    assert np.array_equal(out, disc30.tau[0])


def test_synthesis_zero_vector(disc30):
    assert np.all(synthesis(disc30, SeqVec(np.zeros(30), 1.0)) == 0.0)


def test_synthesis_roundtrip_geometric(disc30):
    # sum of 4^-n differs from 1/3 by the geometric tail 4^-N / 3
    out = synthesis(disc30, analysis(disc30, 1.0 / 3.0))
    assert abs(out[0] - 1.0 / 3.0) <= 2.0 ** -30


def test_synthesis_mismatch(disc30):
    with pytest.raises(FrameMismatchError):
        synthesis(disc30, SeqVec(np.zeros(29), 1.0))
    with pytest.raises(FrameMismatchError):
        synthesis(disc30, SeqVec(np.zeros(30), 2.0))


# --------------------------------------------------------------- frame map

def test_frame_map_disc_identity_within_tail(disc30):
    assert abs(frame_map(disc30, 1.0 / 3.0)[0] - 1.0 / 3.0) <= 2.0 ** -30


def test_frame_map_log_at_e(log40):
    x = float(np.e)
    err = abs(frame_map(log40, x)[0] - x)
    assert err <= log40.tail_bound(np.array([x + 0j])) + 1e-12


def test_frame_map_zero_decorated():
    F = zero_decorated()
    assert np.all(frame_map(F, 0.7) == 0.0)


def test_frame_map_factorization_exact(disc30):
    for x in sample_points(disc30.M, 20, seed=2):
        lhs = frame_map(disc30, x)
        rhs = synthesis(disc30, analysis(disc30, x))
        assert np.array_equal(lhs, rhs)


def test_frame_map_matches_termwise_oracle(disc30, log40, lin_double):
    for F in (disc30, log40, lin_double):
        for x in sample_points(F.M, 50, seed=4):
            assert F.M.norm(frame_map(F, x) - frame_map_termwise(F, x)) <= 1e-12


# ---------------------------------------------------------------- inversion

def test_invert_identity_fixture_immediate(ortho_pair):
    F = ortho_pair[0]
    y = np.array([0.8 + 0j])
    assert np.array_equal(invert_frame_map(F, y), y)


def test_invert_near_identity_disc(disc30):
    y = np.array([0.25 + 0.1j])
    x = invert_frame_map(disc30, y)
    assert disc30.M.norm(frame_map(disc30, x, check=False) - y) <= 1e-10


def test_invert_linear_double(lin_double, tight_solver):
    x = invert_frame_map(lin_double, 3.0, tight_solver)
    assert abs(x[0] - 1.5) <= 1e-12


def test_invert_divergence_at_large_damping(lin_double):
    with pytest.raises(DivergenceError):
        invert_frame_map(lin_double, 3.0, SolverCfg(damping=10.0, max_iter=100))


def test_invert_no_convergence_at_unit_damping(lin_double):
    # iteration factor |1 - damping * 2| = 1: the residual never decays
    with pytest.raises(ConvergenceError):
        invert_frame_map(lin_double, 3.0, SolverCfg(damping=1.0, max_iter=80))


# ------------------------------------------------------------ reconstruction

def test_reconstruct_disc(disc30):
    err = disc30.M.norm(reconstruct(disc30, 1.0 / 3.0) - np.array([1.0 / 3.0]))
    assert err <= 2.0 ** -29


def test_reconstruct_log(log40):
    err = log40.M.norm(reconstruct(log40, 2.0) - np.array([2.0]))
    assert err <= log40.tail_bound(np.array([2.0 + 0j])) + 1e-9


def test_reconstruct_zero_decorated_fails():
    with pytest.raises(ConvergenceError):
        reconstruct(zero_decorated(), 0.7)


def test_reconstruction_error_bound(disc30, log40, lin_double, tight_solver):
    # || reconstruct(x) - x || <= 2 tail(x) + 1e-8 over 200 samples per fixture
    for F, cfg in ((disc30, None), (log40, None), (lin_double, tight_solver)):
        cfg = cfg or SolverCfg()
        for x in sample_points(F.M, 200, seed=6):
            err = F.M.norm(reconstruct(F, x, cfg) - x)
            assert err <= 2.0 * F.tail_bound(x) + 1e-8


def test_linear_reconstruction_exact_to_solver_tol(lin_double_n2, tight_solver):
    for x in sample_points(lin_double_n2.M, 100, seed=8):
        err = lin_double_n2.M.norm(reconstruct(lin_double_n2, x, tight_solver) - x)
        assert err <= 1e-11


# ------------------------------------------------- injectivity / surjectivity

def test_analysis_injectivity_restated(disc30):
    cert = certify_frame(disc30, 400, 16, seed=9)
    pairs = sample_pairs(disc30.M, 200, seed=10)
    ratio = cert.a_hat / cert.d_hat
    for x, y in pairs:
        sep = disc30.M.norm(x - y)
        gap = lp_norm(analysis(disc30, x) - analysis(disc30, y))
        tail = max(disc30.tail_bound(x), disc30.tail_bound(y))
        assert gap >= ratio * sep - 2.0 * tail


def test_synthesis_surjectivity_restated(disc30, tight_solver):
    for x in sample_points(disc30.M, 100, seed=11):
        coeffs = analysis(disc30, invert_frame_map(disc30, x, tight_solver), check=False)
        assert disc30.M.norm(synthesis(disc30, coeffs) - x) <= 1e-11


# ----------------------------------------------------------------- projection

def test_projection_fixes_analysis_image(disc30, tight_solver):
    a = analysis(disc30, 1.0 / 3.0)
    assert lp_norm(coefficient_projection(disc30, a, tight_solver) - a) <= 2.0 ** -29


def test_projection_of_first_basis_vector(disc30, tight_solver):
    # synthesis(e1) = 1 and S^-1(1) = 1 up to tail, so entries are 2^-n
    got = coefficient_projection(disc30, basis_vector(1, 30, 1.0), tight_solver)
    expected = np.array([2.0 ** -(n + 1) for n in range(30)])
    assert np.max(np.abs(got.entries - expected)) <= 2.0 ** -30


def test_projection_idempotent(disc30, log40, lin_double_n2, tight_solver):
    for F in (disc30, log40, lin_double_n2):
        probes = [basis_vector(n, F.N, F.p) for n in range(1, F.N + 1)]
        probes += [analysis(F, x) for x in sample_points(F.M, 16, seed=12)]
        for a in probes:
            once = coefficient_projection(F, a, tight_solver)
            twice = coefficient_projection(F, once, tight_solver)
            assert lp_norm(twice - once) <= 1e-8


# ------------------------------------------------------------------- frames

def test_frame_shape_validation():
    ident = LipMap(eval=lambda pt: pt[0])
    with pytest.raises(FrameMismatchError):
        Frame(
            M=full_space(1, "real"),
            p=1.0,
            f=(ident,),
            tau=np.ones((2, 1), dtype=complex),
            tail_bound=lambda x: 0.0,
        )


def test_linear_frame_singular_product():
    from lipframe import NotInvertibleError

    with pytest.raises(NotInvertibleError):
        linear_frame([[1.0]], [[0.0]])

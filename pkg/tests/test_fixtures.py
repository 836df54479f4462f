import math

import numpy as np
import pytest

from lipframe import (
    Frame,
    NotInvertibleError,
    SchemaError,
    analysis,
    canonical_dual,
    certify_frame,
    disc_frame,
    estimate_lipschitz,
    frame_map,
    linear_frame,
    log_frame,
    lp_norm,
    orthogonal_pair,
    parse_fixture,
    sample_pairs,
    sample_points,
)


# ----------------------------------------------------------------------- disc

def test_disc_membership():
    M = disc_frame(3).M
    assert M.member(np.array([1.0 / 3.0 + 0j]))
    assert M.member(np.array([1.0 + 0j]))  # boundary: |z| = |z+1|/2 exactly
    assert M.member(np.array([0j]))
    assert not M.member(np.array([2.0 + 0j]))
    assert not M.member(np.array([-0.5 + 0j]))


def test_disc_one_plus_z_bounded_below(disc30):
    pts = sample_points(disc30.M, 10_000, seed=0)
    assert np.min(np.abs(pts[:, 0] + 1.0)) >= 2.0 / 3.0 - 1e-12


def test_disc_frame_map_is_identity_up_to_tail(disc30):
    for x in sample_points(disc30.M, 300, seed=1):
        assert disc30.M.norm(frame_map(disc30, x) - x) <= 2.0 ** -30


def test_disc_maps_satisfy_claimed_lipschitz_bounds(disc30):
    for n in range(10):
        claimed = 2.25 * (n + 1) * 2.0 ** -n
        assert disc30.f[n].claimed_lip == pytest.approx(claimed)
        est = estimate_lipschitz(disc30.f[n], disc30.M, 2000, seed=2)
        assert est <= claimed


def test_disc_analysis_bound_below_nine(disc30):
    report = certify_frame(disc30, 1000, 8, seed=3)
    assert report.c_hat <= 9.0


# ------------------------------------------------------------------------ log

def test_log_analysis_is_isometry_up_to_tail(log40):
    for x, y in sample_pairs(log40.M, 200, seed=4):
        gap = lp_norm(analysis(log40, x) - analysis(log40, y))
        tail = max(log40.tail_bound(x), log40.tail_bound(y))
        assert abs(gap - log40.M.norm(x - y)) <= 2.0 * tail + 1e-12


def test_log_frame_map_at_e(log40):
    x = float(np.e)
    assert abs(frame_map(log40, x)[0] - x) <= 1e-12


def test_log_frame_map_at_one_exact(log40):
    assert frame_map(log40, 1.0)[0] == 1.0


def test_log_reindexing_starts_with_constant(log40):
    x = np.array([5.0 + 0j])
    assert log40.f[0].eval(x) == 1.0
    assert abs(log40.f[1].eval(x) - math.log(5.0)) <= 1e-15


def test_log_lipschitz_constants_against_grid_maximum():
    # |f'| = (log x)^(k-1) / ((k-1)! x); compare the sampled difference
    # quotients with a dense grid maximum of the derivative on the window
    F = log_frame(10, right_end=10.0)
    grid = np.linspace(1.0, 10.0, 200_001)
    for k in range(1, 9):
        deriv = np.log(grid) ** (k - 1) / (math.factorial(k - 1) * grid)
        grid_max = float(np.max(deriv))
        est = estimate_lipschitz(F.f[k], F.M, 2000, seed=5)
        assert est <= grid_max * (1.0 + 1e-6) + 1e-12
        assert F.f[k].claimed_lip >= grid_max - 1e-9


def test_log_tail_bound_formula():
    F = log_frame(5)
    x = np.array([np.e ** 2 + 0j])  # log x = 2
    expected = math.exp(2.0) * 2.0 ** 5 / math.factorial(5)
    assert F.tail_bound(x) == pytest.approx(expected, rel=1e-12)
    assert F.tail_bound(np.array([1.0 + 0j])) == 0.0


# --------------------------------------------------------------------- linear

def test_linear_frame_double_identity(lin_double, tight_solver):
    x = np.array([3.0 + 0j])
    assert frame_map(lin_double, x)[0] == 6.0
    dual = canonical_dual(lin_double, tight_solver)
    assert abs(dual.tau[0, 0] - 0.5) <= 1e-12


def test_linear_frame_identity_matrices_give_identity_frame():
    F = linear_frame(np.eye(3), np.eye(3), p=2.0)
    assert F.kind_hint == "SF"
    for x in sample_points(F.M, 50, seed=6):
        assert F.M.norm(frame_map(F, x) - x) <= 1e-14


def test_linear_frame_rejects_singular_product():
    with pytest.raises(NotInvertibleError):
        linear_frame([[1.0]], [[0.0]])
    with pytest.raises(NotInvertibleError):
        linear_frame([[1.0, 0.0], [0.0, 0.0]], np.eye(2))


def test_linear_frame_certifies_exactly(lin_double):
    report = certify_frame(lin_double, 300, 16, seed=7)
    assert report.a_hat == pytest.approx(2.0, abs=1e-12)
    assert report.b_hat == pytest.approx(2.0, abs=1e-12)
    assert report.d_hat == pytest.approx(1.0, abs=1e-12)


# ------------------------------------------------------------ orthogonal pair

def test_orthogonal_pair_properties(ortho_pair):
    from lipframe import is_dual, is_orthogonal

    F, G = ortho_pair
    assert is_orthogonal(F, G, samples=100, seed=8, tol=1e-12)
    assert not is_dual(F, G, samples=50, seed=9, tol=1e-8)
    report = certify_frame(F, 200, 8, seed=10)
    assert report.a_hat == pytest.approx(1.0, abs=1e-12)
    assert report.b_hat == pytest.approx(1.0, abs=1e-12)


# -------------------------------------------------------------- fixture parse

def test_parse_disc_defaults():
    F = parse_fixture("disc")
    assert isinstance(F, Frame) and F.N == 30


def test_parse_disc_with_N():
    assert parse_fixture("disc:N=12").N == 12


def test_parse_log_params():
    F = parse_fixture("log:N=8,right=4")
    assert F.N == 8
    assert "4" in F.M.description


def test_parse_linear_matrices():
    F = parse_fixture("linear:U=2,V=1")
    assert F.N == 1
    x = np.array([3.0 + 0j])
    assert frame_map(F, x)[0] == 6.0


def test_parse_linear_multirow():
    F = parse_fixture("linear:U=1 0;0 1,V=1 0;0 1,p=2")
    assert F.N == 2 and F.p == 2.0


def test_parse_orthopair():
    pair = parse_fixture("orthopair")
    assert isinstance(pair, tuple) and len(pair) == 2


def test_parse_errors():
    with pytest.raises(SchemaError):
        parse_fixture("bogus")
    with pytest.raises(SchemaError):
        parse_fixture("disc:N=abc")
    with pytest.raises(SchemaError):
        parse_fixture("disc:K=3")
    with pytest.raises(SchemaError):
        parse_fixture("linear:U=1")  # V missing
    with pytest.raises(SchemaError):
        parse_fixture("linear:U=1 2;3,V=1")  # ragged rows
    with pytest.raises(SchemaError):
        parse_fixture("linear:U=1,V=1,p=0.5")
    with pytest.raises(SchemaError):
        parse_fixture("orthopair:N=2")


def test_fixture_constructor_validation():
    with pytest.raises(ValueError):
        disc_frame(0)
    with pytest.raises(ValueError):
        log_frame(5, right_end=1.0)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lipframe import (
    SamplerExhaustedError,
    SeqVec,
    SubsetSpec,
    basis_vector,
    coordinate,
    disc_frame,
    lp_norm,
    sample_pairs,
    sample_points,
)

FINITE = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def test_lp_norm_zero_vector():
    assert lp_norm(SeqVec(np.zeros(5), 1.0)) == 0.0


def test_lp_norm_hand_values():
    assert lp_norm(SeqVec([3.0, 4.0], 2.0)) == pytest.approx(5.0, abs=1e-12)
    assert lp_norm(SeqVec([1.0, -2.0, 3.0], 1.0)) == pytest.approx(6.0, abs=1e-12)


def test_lp_norm_positive_unless_zero():
    v = SeqVec([0.0, 1e-300], 1.0)
    assert lp_norm(v) > 0.0


@settings(max_examples=60, deadline=None, derandomize=True)
@given(
    u=arrays(np.float64, 6, elements=FINITE),
    v=arrays(np.float64, 6, elements=FINITE),
    p=st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_lp_norm_triangle_inequality(u, v, p):
    a, b = SeqVec(u, p), SeqVec(v, p)
    lhs = lp_norm(a + b)
    rhs = lp_norm(a) + lp_norm(b)
    assert lhs <= rhs + 1e-12 * max(1.0, rhs)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(
    u=arrays(np.float64, 6, elements=FINITE),
    alpha=st.floats(min_value=-100, max_value=100, allow_nan=False),
    p=st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_lp_norm_absolute_homogeneity(u, alpha, p):
    v = SeqVec(u, p)
    assert lp_norm(alpha * v) == pytest.approx(abs(alpha) * lp_norm(v), rel=1e-12, abs=1e-12)


def test_basis_vector_entries():
    assert np.array_equal(basis_vector(1, 3, 1.0).entries, [1, 0, 0])
    assert np.array_equal(basis_vector(3, 3, 1.0).entries, [0, 0, 1])


def test_basis_vector_out_of_range():
    with pytest.raises(IndexError):
        basis_vector(4, 3, 1.0)
    with pytest.raises(IndexError):
        basis_vector(0, 3, 1.0)


def test_coordinate_reads_entries():
    assert coordinate(SeqVec([5.0, 7.0], 1.0), 2) == 7.0
    with pytest.raises(IndexError):
        coordinate(SeqVec([5.0, 7.0], 1.0), 3)


def test_coordinate_biorthogonality():
    for n in range(1, 5):
        for k in range(1, 5):
            assert coordinate(basis_vector(k, 4, 1.0), n) == (1.0 if n == k else 0.0)


def test_coordinate_linearity_exact():
    u = SeqVec([1.25, -2.5, 0.75], 2.0)
    v = SeqVec([0.5, 3.0, -1.0], 2.0)
    alpha, beta = 2.5, -0.375
    combo = alpha * u + beta * v
    for n in range(1, 4):
        assert coordinate(combo, n) == alpha * coordinate(u, n) + beta * coordinate(v, n)


def test_seqvec_rejects_bad_input():
    with pytest.raises(ValueError):
        SeqVec([np.inf], 1.0)
    with pytest.raises(ValueError):
        SeqVec([1.0], 0.5)
    with pytest.raises(ValueError):
        SeqVec(np.zeros(0), 1.0)


def test_sample_pairs_empty():
    M = disc_frame(3).M
    assert sample_pairs(M, 0, seed=1) == []


def test_sample_pairs_membership_and_separation():
    M = disc_frame(3).M
    pairs = sample_pairs(M, 100, seed=7, min_sep=1e-6)
    assert len(pairs) == 100
    for x, y in pairs:
        assert M.member(x) and M.member(y)
        assert M.norm(x - y) >= 1e-6
        # the defining inequality of the disc
        assert abs(x[0]) <= 0.5 * abs(x[0] + 1.0) + 1e-12


def test_sample_pairs_deterministic():
    M = disc_frame(3).M
    first = sample_pairs(M, 50, seed=7)
    second = sample_pairs(M, 50, seed=7)
    for (x1, y1), (x2, y2) in zip(first, second):
        assert np.array_equal(x1, x2) and np.array_equal(y1, y2)


def test_sample_pairs_nesting():
    # a larger count with the same seed extends the smaller run
    M = disc_frame(3).M
    small = sample_pairs(M, 40, seed=11)
    large = sample_pairs(M, 400, seed=11)
    for (x1, y1), (x2, y2) in zip(small, large[:40]):
        assert np.array_equal(x1, x2) and np.array_equal(y1, y2)


def test_sample_pairs_exhaustion():
    stuck = SubsetSpec(
        ambient_dim=1,
        scalar_field="real",
        contains=lambda pt, tol: True,
        sampler=lambda rng, n: np.zeros((n, 1), dtype=complex),
        description="a single point",
    )
    with pytest.raises(SamplerExhaustedError):
        sample_pairs(stuck, 5, seed=0, min_sep=1e-3)


def test_samplers_produce_members(disc30, log40, lin_double, ortho_pair):
    for frame in (disc30, log40, lin_double, ortho_pair[0]):
        for pt in sample_points(frame.M, 200, seed=3):
            assert frame.M.member(pt)

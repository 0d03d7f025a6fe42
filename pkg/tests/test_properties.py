"""Property-based checks over random inputs."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

import frenetsim as fs
from frenetsim.series import (
    flow_series,
    series_compose,
    series_derivative,
    series_mul,
    series_reciprocal,
    series_sqrt,
)

_t = np.linspace(0.0, 2 * math.pi, 400, endpoint=False)
BASE_CIRCLE = fs.builtin_evaluate(fs.circle(1.5, t_span=(0.0, 2 * math.pi)), _t)
BASE_FR = fs.frenet_apparatus(fs.arclength_reparam(BASE_CIRCLE, 400))
BASE_SC = fs.indicatrix_curve(BASE_FR, 1)
BASE_SIG = fs.shape_curvatures(BASE_FR, 1)

coeff = st.floats(min_value=-2.0, max_value=2.0,
                  allow_nan=False, allow_infinity=False)
lead = st.floats(min_value=0.5, max_value=2.0)


def series(order):
    return st.tuples(lead, st.lists(coeff, min_size=order - 1,
                                    max_size=order - 1)).map(
        lambda t: np.array([t[0]] + t[1]))


@settings(deadline=None, max_examples=25)
@given(series(6))
def test_reciprocal_inverts(a):
    out = series_mul(a, series_reciprocal(a))
    want = np.zeros(6)
    want[0] = 1.0
    assert np.abs(out - want).max() < 1e-9


@settings(deadline=None, max_examples=25)
@given(series(6))
def test_sqrt_squares_back(a):
    r = series_sqrt(a)
    assert np.abs(series_mul(r, r) - a).max() < 1e-9


@settings(deadline=None, max_examples=25)
@given(series(5), series(5))
def test_mul_commutes(a, b):
    # summation order differs, so only near-equality holds
    assert np.abs(series_mul(a, b) - series_mul(b, a)).max() < 1e-12


@settings(deadline=None, max_examples=20)
@given(series(5))
def test_flow_solves_its_equation(g):
    # tau' = g(tau) order by order, with tau(0) = 0
    tau = flow_series(g, 7)
    lhs = series_derivative(tau)
    gg = np.zeros(tau.shape[0])
    gg[: g.shape[0]] = g
    rhs = series_compose(gg, tau)[: lhs.shape[0]]
    assert np.abs(lhs - rhs).max() < 1e-8


@settings(deadline=None, max_examples=15)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_similarity_is_direct(seed):
    T = fs.random_similarity(seed, (0.5, 2.0), 3)
    assert np.abs(T.A @ T.A.T - np.eye(3)).max() < 1e-12
    assert abs(np.linalg.det(T.A) - 1.0) < 1e-9
    assert 0.5 <= T.lam <= 2.0


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=0, max_value=10 ** 6))
def test_compose_matches_sequential(s1, s2):
    t1 = fs.random_similarity(s1, (0.5, 2.0), 4)
    t2 = fs.random_similarity(s2, (0.5, 2.0), 4)
    both = fs.compose(t2, t1)
    pts = np.random.default_rng(0).normal(size=(20, 4))
    cur = fs.SampledCurve(4, np.linspace(0, 1, 20), pts)
    a = fs.apply_similarity(t2, fs.apply_similarity(t1, cur)).points
    b = fs.apply_similarity(both, cur).points
    assert np.abs(a - b).max() < 1e-10


@settings(deadline=None, max_examples=8)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_turning_angle_invariance(seed):
    T = fs.random_similarity(seed, (0.5, 2.0), 2)
    fr = fs.frenet_apparatus(fs.arclength_reparam(
        fs.apply_similarity(T, BASE_CIRCLE), 400))
    sc = fs.indicatrix_curve(fr, 1)
    assert np.abs(sc.sigma - BASE_SC.sigma).max() < 1e-3


@settings(deadline=None, max_examples=8)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_shape_signature_invariance(seed):
    T = fs.random_similarity(seed, (0.5, 2.0), 2)
    fr = fs.frenet_apparatus(fs.arclength_reparam(
        fs.apply_similarity(T, BASE_CIRCLE), 400))
    sig = fs.shape_curvatures(fr, 1)
    assert np.abs(sig.kt - BASE_SIG.kt).max() < 1e-3
    assert np.abs(sig.ktj[0] - BASE_SIG.ktj[0]).max() < 1e-3


@settings(deadline=None, max_examples=15)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_transform_json_round_trip(seed):
    T = fs.random_similarity(seed, (0.5, 2.0), 5)
    back = fs.transform_from_json(fs.transform_to_json(T))
    assert back.lam == T.lam
    assert np.array_equal(back.A, T.A)
    assert np.array_equal(back.b, T.b)

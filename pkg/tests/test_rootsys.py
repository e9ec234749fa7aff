from math import comb

import numpy as np
import pytest

from wickgit.errors import NonIntegerWeightError
from wickgit.realforms import build_o_pq, sl2_real
from wickgit.rootsys import (
    boost_generators,
    bw_decompose,
    centralizer_in_p,
    maximal_abelian,
    null_frame_pq,
    restricted_roots,
    sg_property,
    transform_covariant,
)


def _expected_roots(p, q):
    """o(p,q), p >= q: roots ±e_i ± e_j (mult 1) and ±e_i (mult p - q)."""
    k = min(p, q)
    out = {}
    for i in range(k):
        for j in range(i + 1, k):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * k
                    v[i], v[j] = si, sj
                    out[tuple(v)] = 1
        if abs(p - q):
            for s in (1, -1):
                v = [0] * k
                v[i] = s
                out[tuple(v)] = abs(p - q)
    return out


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 3), (4, 2)])
def test_restricted_roots_match_structure_theory(p, q):
    rs = restricted_roots(build_o_pq(p, q))
    assert rs.rank == min(p, q)
    assert dict(rs.roots) == _expected_roots(p, q)
    assert rs.m_dim == comb(abs(p - q), 2)
    assert rs.dimension_identity()
    assert len(rs.simple_roots) == rs.rank


def test_maximal_abelian_is_certified():
    g = build_o_pq(3, 2).real_algebra()
    a = maximal_abelian(g)
    assert a.dim == 2
    assert centralizer_in_p(g, list(a.elements())).dim == 2


def test_sl2_rank_one():
    rs = restricted_roots(sl2_real())
    assert rs.rank == 1 and rs.dimension_identity()


def test_simple_dual_duality():
    rs = restricted_roots(build_o_pq(3, 3))
    x = boost_generators(rs, "simple-dual")
    assert np.allclose(x.duality, np.eye(3))
    assert x.commute_norm() < 1e-12


def test_null_frame_weights_follow_counting_rule():
    rs = restricted_roots(build_o_pq(2, 2))
    x = boost_generators(rs, "orthogonal")
    P = null_frame_pq(2, 2)
    expected = {0: (-1, 0), 1: (1, 0), 2: (0, -1), 3: (0, 1)}
    for a, w in expected.items():
        e = np.zeros(4)
        e[a] = 1.0
        t = P @ e  # covector e^a in the orthonormal frame (P orthogonal)
        dec = bw_decompose(t, x)
        assert dec.support == {w}
    # e^2 (x) e^2 has weight (2, 0); the metric has weight (0, 0)
    e2 = P[:, 1]
    assert bw_decompose(np.outer(e2, e2), x).support == {(2, 0)}
    eta = np.diag([-1.0, -1, 1, 1])
    assert bw_decompose(eta, x).support == {(0, 0)}
    null = transform_covariant(eta, P)
    assert np.allclose(null, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_bw_reconstructs_tensor():
    rng = np.random.default_rng(0)
    x = boost_generators(restricted_roots(build_o_pq(2, 2)), "orthogonal")
    T = rng.normal(size=(4, 4, 4))
    dec = bw_decompose(T, x)
    assert np.allclose(dec.reconstruct(), T)


def test_simple_dual_gives_half_integers_on_vectors_for_o22():
    x = boost_generators(restricted_roots(build_o_pq(2, 2)), "simple-dual")
    with pytest.raises(NonIntegerWeightError):
        bw_decompose(null_frame_pq(2, 2)[:, 1], x)


def test_sg_examples():
    r = sg_property([(2, -2), (-1, -1)])
    assert r.strict and r.lam == (0, 1) and r.strict_count == 2
    r = sg_property([(0, 0), (-2, 2)])
    assert r.strict and r.lam == (1, -1)
    assert not sg_property([(1, 0), (-1, 0)]).strict
    assert not sg_property([(0, 0)]).strict


def test_sg_lp_agrees_with_exact():
    supp = [(1, -1, 0), (-1, 0, 0), (0, -1, -1)]
    ex = sg_property(supp, "exact")
    lp = sg_property(supp, "lp")
    assert ex.strict and lp.strict
    for lam in (ex.lam, lp.lam):
        assert all(np.dot(b, lam) <= 1e-9 for b in supp)

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wickgit.errors import DegenerateFormError
from wickgit.numkernel import (
    Subspace,
    char_poly,
    exact_form_signature,
    exact_inverse,
    exact_rank,
    form_signature,
    skew_normal_form,
    subspace_meet,
    subspace_sum,
)


def test_char_poly_exact_matches_frozen_oracle():
    # coefficients computed independently with sympy Matrix.charpoly
    assert char_poly(np.array([[1, 2, 0], [3, -1, 4], [0, 5, 2]], dtype=object)) == [1, -2, -27, 34]
    m = np.array([[Fraction(1, 2), 0, 1, 0], [2, Fraction(-1, 3), 0, 1], [0, 1, 1, 0], [1, 0, 0, 2]], dtype=object)
    assert char_poly(m) == [1, Fraction(-19, 6), Fraction(7, 3), Fraction(-11, 6), Fraction(8, 3)]


def test_char_poly_float():
    c = char_poly(np.array([[0.0, 3.0], [-3.0, 0.0]]))
    assert np.allclose(c, [1, 0, 9])


def test_skew_normal_form_example():
    a = np.zeros((5, 5))
    a[0, 3], a[3, 0] = 2.0, -2.0
    a[1, 4], a[4, 1] = -1.0, 1.0
    g, blocks = skew_normal_form(a)
    assert np.allclose(g @ g.T, np.eye(5), atol=1e-13)
    assert np.allclose(sorted(blocks.rotations), [1.0, 2.0])
    assert blocks.zeros == 1
    assert np.allclose(g @ a @ g.T, blocks.matrix(), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10_000))
def test_skew_normal_form_property(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, n))
    a = x - x.T
    g, blocks = skew_normal_form(a)
    assert np.allclose(g @ g.T, np.eye(n), atol=1e-10)
    assert np.allclose(g @ a @ g.T, blocks.matrix(), atol=1e-9)
    assert all(t > 0 for t in blocks.rotations)


def test_form_signature_convention_is_neg_pos():
    assert form_signature(np.diag([-1.0, -1.0, 1.0, 1.0, 1.0])) == (2, 3)
    with pytest.raises(DegenerateFormError):
        form_signature(np.diag([1.0, 0.0]))


def test_exact_signature_and_inverse():
    b = [[0, 1, 0], [1, 0, 0], [0, 0, -3]]
    assert exact_form_signature(b) == (2, 1)
    inv = exact_inverse([[2, 1], [1, 1]])
    assert inv == [[1, -1], [-1, 2]]
    assert exact_rank([[1, 2], [2, 4]]) == 1


def test_subspace_meet_and_sum():
    u = Subspace.span([np.array([1.0, 0, 0]), np.array([0, 1.0, 0])])
    v = Subspace.span([np.array([0, 1.0, 0]), np.array([0, 0, 1.0])])
    assert subspace_meet(u, v).dim == 1
    assert subspace_sum(u, v).dim == 3
    assert u.contains(np.array([2.0, -1.0, 0]))
    assert not u.contains(np.array([0, 0, 1.0]))

import itertools
from math import comb

import numpy as np
import pytest

from wickgit.errors import AmbientMismatchError, DegenerateFormError, SchemaError
from wickgit.numkernel import form_signature
from wickgit.realforms import (
    CompatibleTriple,
    VectorRealForm,
    build_o_pq,
    check_compatible_triple,
    intersect_cartan_parts,
    is_real_slice,
    killing_form,
    killing_theta_signature,
    o_pq_real,
    parse_form_name,
    random_complex_orthogonal,
    real_form_from_json,
    sl2_real,
    slice_vectors,
    standard_triple,
)


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (2, 2), (3, 0), (2, 3), (3, 3), (1, 4)])
def test_killing_signature_counts(p, q):
    assert killing_theta_signature(build_o_pq(p, q)) == (comb(p, 2) + comb(q, 2), p * q)


def test_low_dimension_is_degenerate():
    with pytest.raises(DegenerateFormError):
        killing_form(build_o_pq(1, 1), strict=True)


def test_sl2_killing_gram_frozen():
    # oracle: tr(ad ad) on H = diag(1,-1), E, F with sympy
    from wickgit.realforms import killing_gram, sl2_basis

    assert np.allclose(killing_gram(sl2_basis()), [[8, 0, 0], [0, 0, 4], [0, 4, 0]])
    assert form_signature(killing_form(sl2_real())) == (1, 2)


def test_real_frame_cartan_parts():
    g = o_pq_real(2, 2)
    assert len(g.t_mats) == 2 and len(g.p_mats) == 4
    for t in g.t_mats:
        assert np.allclose(t, -t.T)
    for x in g.p_mats:
        assert np.allclose(x, x.T)
    eta = np.diag([-1.0, -1, 1, 1])
    for b in g.basis:
        assert np.allclose(b.T @ eta + eta @ b, 0)


def test_conjugations_are_involutions_and_fix_the_form():
    f = build_o_pq(3, 1)
    for b in f.basis:
        assert np.allclose(f.conjugation(b), b)
        assert np.allclose(f.theta(f.theta(b)), b)
    t, p = f.t_mats[0], f.p_mats[0]
    assert np.allclose(f.theta(t), t) and np.allclose(f.theta(p), -p)


def test_real_frame_roundtrip():
    f = build_o_pq(2, 2)
    for b in f.basis:
        y = f.to_real_frame(b)
        assert np.allclose(f.from_real_frame(y), b)


def test_standard_triple_commutes_with_cartan_meets():
    rep = check_compatible_triple(standard_triple(3, 1, 2, 2))
    assert rep.commutes and rep.direct_sum_ok
    assert intersect_cartan_parts(standard_triple(3, 1, 2, 2)) == (1, 2)
    assert intersect_cartan_parts(standard_triple(4, 0, 2, 2)) == (2, 0)


def test_conjugated_embedding_breaks_compatibility():
    rng = np.random.default_rng(3)
    A = random_complex_orthogonal(4, rng)
    t = CompatibleTriple(build_o_pq(3, 1), build_o_pq(2, 2, A), build_o_pq(0, 4))
    rep = check_compatible_triple(t)
    assert not rep.commutes
    assert not rep.direct_sum_ok


def test_conjugated_form_is_still_a_real_form():
    rng = np.random.default_rng(5)
    A = random_complex_orthogonal(4, rng)
    f = build_o_pq(2, 2, A)
    for b in f.basis:
        assert np.allclose(f.conjugation(b), b, atol=1e-9)
    assert killing_theta_signature(f) == (2, 4)


def test_vector_forms_and_slices():
    g = np.eye(4)
    rep = is_real_slice(slice_vectors(1, 3), g)
    assert rep.slice and rep.signature == (1, 3)
    bad = [np.array([1, 1j, 0, 0]), np.array([0, 0, 1, 0])]
    assert not is_real_slice(bad, g).slice
    t = CompatibleTriple(VectorRealForm.from_signs([-1, 1, 1]), VectorRealForm.from_signs([-1, -1, 1]),
                         VectorRealForm.from_signs([1, 1, 1]))
    assert check_compatible_triple(t).commutes


def test_mixed_ambient_rejected():
    t = CompatibleTriple(build_o_pq(2, 1), VectorRealForm.from_signs([1, 1, 1]), build_o_pq(0, 3))
    with pytest.raises(AmbientMismatchError):
        check_compatible_triple(t)


def test_json_and_names():
    f = real_form_from_json({"n": 4, "p": 3, "q": 1, "embedding": "standard"})
    assert f.signature == (3, 1)
    assert real_form_from_json(f.to_json()).signature == (3, 1)
    assert parse_form_name("o4").signature == (0, 4)
    with pytest.raises(SchemaError):
        real_form_from_json({"n": 4, "p": 3, "q": 2})
    with pytest.raises(SchemaError):
        parse_form_name("su3")


def test_all_small_standard_triples_commute():
    for n in range(2, 5):
        for s1, s2 in itertools.product([(p, n - p) for p in range(n + 1)], repeat=2):
            assert check_compatible_triple(standard_triple(*s1, *s2)).commutes

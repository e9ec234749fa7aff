import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wickgit.errors import NonClosedOrbitError, NotMinimalError, PositiveWeightError, ShapeError
from wickgit.orbits import (
    FlowConfig,
    RepAction,
    adjoint_invariants,
    check_compatible_hermitian,
    degeneration_limit,
    find_so2_conjugator,
    intersect_with_compact,
    is_minimal,
    kempf_ness_flow,
    lorentz_canonical_form,
    moment,
    orbit_dim,
    sl2_real_orbit_count,
    swapped_block_example,
)
from wickgit.realforms import (
    CompatibleTriple,
    build_o_pq,
    o_pq_real,
    random_complex_orthogonal,
    sl2_real,
    standard_triple,
)
from wickgit.rootsys import boost_generators, bw_decompose, restricted_roots
from wickgit.suites import random_K_lorentz, random_minimal_lorentz

SL2 = RepAction.adjoint_of(sl2_real())
E = np.array([[0.0, 1.0], [0.0, 0.0]])
H = np.diag([1.0, -1.0])
R = np.array([[0.0, 1.0], [-1.0, 0.0]])


def test_representations_are_compatible():
    assert SL2.verify()
    assert RepAction.tensors(o_pq_real(2, 2), 2).verify()
    assert RepAction.adjoint_of(o_pq_real(3, 1)).verify()


def test_shape_checks():
    with pytest.raises(ShapeError):
        SL2.check(np.zeros(3))
    with pytest.raises(ValueError):
        RepAction(sl2_real(), 0, False)


def test_sl2_flow_verdicts():
    assert kempf_ness_flow(E, SL2).verdict == "non_closed"
    rep = kempf_ness_flow(H, SL2)
    assert rep.verdict == "closed" and rep.iterations == 0
    rep = kempf_ness_flow(np.array([[1.0, 3.0], [0.2, -1.0]]), SL2)
    assert rep.verdict == "closed"
    assert is_minimal(rep.minimal_vector, SL2)
    # the minimal vector lies in the orbit
    assert np.allclose(SL2.group_act(rep.group_element, np.array([[1.0, 3.0], [0.2, -1.0]])),
                       rep.minimal_vector, atol=1e-8)


def test_flow_cap_gives_undecided():
    rep = kempf_ness_flow(np.array([[1.0, 50.0], [0.01, -1.0]]), SL2, FlowConfig(max_iter=1))
    assert rep.verdict == "undecided"


def test_flow_report_is_reproducible():
    x = np.array([[0.3, 2.0], [-0.1, -0.3]])
    a, b = kempf_ness_flow(x, SL2).to_json(), kempf_ness_flow(x, SL2).to_json()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_moment_is_K_equivariant_in_norm(seed):
    rng = np.random.default_rng(seed)
    r = RepAction.tensors(o_pq_real(2, 1), 2)
    v = rng.normal(size=(3, 3))
    k = r.random_K(rng)
    w = r.group_act(k, v)
    assert np.isclose(r.norm(w), r.norm(v))
    assert np.isclose(np.linalg.norm(moment(w, r)), np.linalg.norm(moment(v, r)))
    assert orbit_dim(w, r) == orbit_dim(v, r)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_is_K_invariant(seed):
    rng = np.random.default_rng(seed)
    a, b, c = rng.normal(size=3)
    x = np.array([[a, b], [c, -a]])
    k = SL2.random_K(rng)
    assert kempf_ness_flow(x, SL2).verdict == kempf_ness_flow(SL2.group_act(k, x), SL2).verdict


def test_degeneration_limit():
    x = boost_generators(restricted_roots(build_o_pq(2, 2)), "orthogonal")
    rng = np.random.default_rng(1)
    T = rng.normal(size=(4, 4))
    T = T + T.T
    dec = bw_decompose(T, x)
    with pytest.raises(PositiveWeightError):
        degeneration_limit(dec, (1, 0))
    # keep only components with weight pairing <= 0 against (1, 0)
    keep = sum(c for b, c in dec.components.items() if b[0] <= 0)
    lim = degeneration_limit(bw_decompose(keep, x), (1, 0))
    expect = sum(c for b, c in dec.components.items() if b[0] == 0)
    assert np.allclose(lim, expect)


def test_lorentz_canonical_form_is_K_invariant():
    rng = np.random.default_rng(2)
    for n in (3, 4, 6):
        for _ in range(10):
            x = random_minimal_lorentz(n, rng)
            k = random_K_lorentz(n, rng)
            a, b = lorentz_canonical_form(x), lorentz_canonical_form(k @ x @ k.T)
            assert a.equals(b)
            assert np.allclose(a.conjugator @ x @ a.conjugator.T, a.residual, atol=1e-9)


def test_lorentz_rejects_non_minimal():
    x = np.zeros((3, 3))
    x[0, 1], x[1, 0] = 1.0, -1.0
    x[0, 2] = x[2, 0] = 1.0
    with pytest.raises(NotMinimalError):
        lorentz_canonical_form(x)
    with pytest.raises(ShapeError):
        lorentz_canonical_form(np.ones((3, 3)))


def test_lorentz_distinguishes_invariants():
    rng = np.random.default_rng(4)
    x = random_minimal_lorentz(5, rng)
    assert not lorentz_canonical_form(x).equals(lorentz_canonical_form(2 * x))
    assert not adjoint_invariants(x).matches(adjoint_invariants(2 * x))


def test_sl2_orbit_counts():
    for t in (1.0, -2.0):
        assert sl2_real_orbit_count(t * R).count == 2
    assert sl2_real_orbit_count(H).count == 1
    assert sl2_real_orbit_count(np.array([[0.0, 3.0], [3.0, 0.0]])).count == 1
    assert sl2_real_orbit_count(np.array([[1.0, 4.0], [0.5, -1.0]])).count == 1
    with pytest.raises(NonClosedOrbitError):
        sl2_real_orbit_count(E)


def test_so2_conjugator():
    phi = find_so2_conjugator(H, -H)
    assert phi is not None and np.isclose(abs(np.cos(phi)), 0, atol=1e-7)
    assert find_so2_conjugator(R, -R) is None


def test_intersect_with_compact():
    rng = np.random.default_rng(7)
    x = np.array([[0.4, 2.0], [-0.3, -0.4]])
    w = intersect_with_compact(x, SL2)
    assert w.compact_minimal
    assert np.allclose(SL2.group_act(w.group_element, x), w.witness, atol=1e-8)
    assert np.array_equal(intersect_with_compact(2 * R, SL2).witness, 2 * R)
    with pytest.raises(NonClosedOrbitError):
        intersect_with_compact(E, SL2)
    k = SL2.random_K(rng)
    # K-translate of the witness still meets the compact orbit at a minimal vector
    assert is_minimal(SL2.group_act(k, w.witness), SL2)


def test_swapped_block():
    rep = swapped_block_example(1.0, 2.0, 2, 2)
    assert rep.same_compact_orbit and not rep.same_KK_orbit
    rep = swapped_block_example(1.5, 1.5, 2, 2)
    assert rep.same_compact_orbit and rep.same_KK_orbit
    with pytest.raises(ValueError):
        swapped_block_example(1.0, 2.0, 1, 2)


def test_hermitian_compatible():
    for d in (1, 2):
        assert check_compatible_hermitian(standard_triple(3, 1, 2, 2), d).ok


def test_hermitian_negative_control():
    A = random_complex_orthogonal(4, np.random.default_rng(11))
    t = CompatibleTriple(build_o_pq(3, 1), build_o_pq(2, 2, A), build_o_pq(0, 4))
    rep = check_compatible_hermitian(t, 1)
    assert not rep.ok and rep.violation is not None

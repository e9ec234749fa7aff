"""Named check suites reproducing the model results: one item per claim, pass/fail with details."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import orbits as ob
from .geometry import (
    coord_curvature,
    curvature_span_dim,
    einstein_constant,
    example_specs,
    g2_metric,
    g2_sample_points,
    lie_group_curvature,
    maurer_cartan_residuals,
    su2_metric,
    walker_classify,
    walker_curvature,
    wick_rotate_frame_metric,
)
from .geometry.walker import walker_boost_weights
from .numkernel import exact_form_signature, form_signature
from .realforms import (
    build_o_pq,
    check_compatible_triple,
    intersect_cartan_parts,
    is_simple_noncompact,
    isomorphic,
    killing_form,
    sl2_real,
    standard_triple,
)


@dataclass
class SuiteItem:
    id: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.id}"

    def to_json(self):
        return {"id": self.id, "passed": self.passed, "detail": self.detail}


# ---------------------------------------------------------------- Walker table

def walker_table(seed: int = 0):
    expected = {"ds1": ("W1", False), "ds2": ("W2", True), "ds3": ("W3", False), "ds4": ("W4", True)}
    items = []
    for key, w in example_specs().items():
        tag, closed = expected[key]
        cls = walker_classify(w, run_flow=True, seed=seed)
        cd = walker_curvature(w)
        no_positive = all(b1 + b2 <= 0 for b1, b2 in walker_boost_weights(cd))
        ok = cls.tag == tag and cls.closed == closed and bool(cls.flow_agrees) and no_positive
        items.append(SuiteItem(f"walker-table/{key}", ok, {**cls.to_json(), "no_positive_weights": no_positive}))
    return items


# ---------------------------------------------------------------- Einstein metrics

def einstein(seed: int = 0):
    items = []
    for lam in (Fraction(1), Fraction(2), Fraction(1, 3)):
        m = su2_metric(lam, factors=2)
        lam_in = einstein_constant(m, lie_group_curvature(m))
        w = wick_rotate_frame_metric(m)
        lam_out = einstein_constant(w, lie_group_curvature(w))
        sig = w.signature()
        ok = lam_in is not None and lam_in == lam_out == 1 / (4 * lam) and sig == (4, 2) \
            and m.signature() == (0, 6)
        items.append(SuiteItem(f"einstein/lambda={lam}", ok, {
            "einstein_constant": str(lam_in), "wick_einstein_constant": str(lam_out),
            "signature": list(m.signature()), "wick_signature": list(sig)}))
    return items


# ---------------------------------------------------------------- G2 pair and Maurer-Cartan

def g2(seed: int = 0, n_points: int = 10):
    rng = np.random.default_rng(seed)
    items = []
    for wick, target in ((False, (0, 7)), (True, (4, 3))):
        m = g2_metric(wick)
        ric, sigs = [], []
        for x in g2_sample_points(n_points, rng):
            ric.append(coord_curvature(m, x).max_abs_ricci())
            sigs.append(form_signature(m(x)))
        name = "g2split" if wick else "g2"
        ok = max(ric) < 1e-6 and all(s == target for s in sigs)
        items.append(SuiteItem(f"g2/{name}/ricci-signature", ok, {
            "max_abs_ricci": max(ric), "signatures": sorted({tuple(s) for s in sigs})}))
        x0 = np.array([2.0, 0.1, 0.2, 0.3, -0.1, 0.25, 0.4])
        span = curvature_span_dim(coord_curvature(m, x0))
        items.append(SuiteItem(f"g2/{name}/curvature-span", span <= 14, {"span_dim": span}))
    return items


def maurer_cartan(seed: int = 0, n_points: int = 50):
    rng = np.random.default_rng(seed)
    items = []
    for kind in ("su2", "sl2"):
        worst = [0.0, 0.0, 0.0]
        for x in rng.uniform(-np.pi, np.pi, size=(n_points, 3)):
            if kind == "sl2":
                x[1] = x[1] / np.pi  # hyperbolic coordinate in [-1, 1]
            res = maurer_cartan_residuals(kind, x)
            worst = [max(a, b) for a, b in zip(worst, res)]
        items.append(SuiteItem(f"maurer-cartan/{kind}", max(worst) < 1e-10, {"residuals": worst}))
    return items


# ---------------------------------------------------------------- sl(2,R) orbits

def _exact_det(x) -> Fraction:
    a, b, c, d = (Fraction(float(v)) for v in np.asarray(x).reshape(-1))
    return a * d - b * c


def sl2_samples(n: int, rng):
    """Mixture of generic elements, exact nilpotents and nilpotents perturbed off the cone."""
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            a, b, c = rng.normal(size=3)
            out.append(np.array([[a, b], [c, -a]]))
        else:
            p, q = rng.integers(-4, 5, size=2)
            while p == 0 and q == 0:
                p, q = rng.integers(-4, 5, size=2)
            N = np.array([[p * q, p * p], [-q * q, -p * q]], dtype=float)
            if kind == 2:
                a, b, c = rng.normal(size=3) * 10.0 ** rng.uniform(-3, -1)
                N = N + np.array([[a, b], [c, -a]])
            out.append(N)
    return out


def sl2_orbits(seed: int = 0, n_random: int = 500):
    rng = np.random.default_rng(seed)
    items = []
    R = np.array([[0.0, 1.0], [-1.0, 0.0]])
    counts_t = [ob.sl2_real_orbit_count(t * R).count for t in (1.0, -2.5, 0.3)]
    counts_p = [ob.sl2_real_orbit_count(x).count for x in
                (np.diag([1.0, -1.0]), np.array([[0.0, 2.0], [2.0, 0.0]]), np.array([[0.5, -1.5], [-1.5, -0.5]]))]
    items.append(SuiteItem("sl2-orbits/counts", all(c == 2 for c in counts_t) and all(c == 1 for c in counts_p),
                           {"so2_counts": counts_t, "p_counts": counts_p}))
    r = ob.RepAction.adjoint_of(sl2_real())
    dis = und = 0
    tally = {"closed": 0, "non_closed": 0, "undecided": 0}
    for x in sl2_samples(n_random, rng):
        semisimple = _exact_det(x) != 0
        v = ob.kempf_ness_flow(x, r).verdict
        tally[v] += 1
        if v == "undecided":
            und += 1
        elif (v == "closed") != semisimple:
            dis += 1
    ok = dis == 0 and und <= 0.02 * n_random
    items.append(SuiteItem("sl2-orbits/flow-vs-oracle", ok,
                           {"samples": n_random, "disagreements": dis, "undecided": und, "verdicts": tally}))
    return items


# ---------------------------------------------------------------- Lorentz canonical forms

def random_minimal_lorentz(n: int, rng) -> np.ndarray:
    """[[A, a], [a^T, 0]] with A skew and A a = 0 in o(n-1,1)."""
    m = n - 1
    nblocks = rng.integers(0, (m - 1) // 2 + 1)  # leave at least one kernel direction
    B = np.zeros((m, m))
    for j in range(nblocks):
        th = rng.uniform(0.2, 3.0)
        B[2 * j, 2 * j + 1], B[2 * j + 1, 2 * j] = th, -th
    Q, _ = np.linalg.qr(rng.normal(size=(m, m)))
    A = Q @ B @ Q.T
    kv = np.zeros(m)
    kv[2 * nblocks:] = rng.normal(size=m - 2 * nblocks)
    a = Q @ kv
    x = np.zeros((n, n))
    x[:m, :m] = A
    x[:m, m] = a
    x[m, :m] = a
    return x


def random_K_lorentz(n: int, rng) -> np.ndarray:
    Q, _ = np.linalg.qr(rng.normal(size=(n - 1, n - 1)))
    k = np.eye(n)
    k[: n - 1, : n - 1] = Q
    k[n - 1, n - 1] = rng.choice([-1.0, 1.0])
    return k


def lorentz(seed: int = 0, per_n: int = 100):
    rng = np.random.default_rng(seed)
    items = []
    for n in (3, 4, 5, 6):
        xs = [random_minimal_lorentz(n, rng) for _ in range(per_n)]
        same_fail = 0
        forms = []
        for x in xs:
            k = random_K_lorentz(n, rng)
            cx = ob.lorentz_canonical_form(x)
            cy = ob.lorentz_canonical_form(k @ x @ k.T)
            forms.append(cx)
            if not cx.equals(cy):
                same_fail += 1
        distinct_fail = checked = 0
        for i, j in itertools.combinations(range(len(xs)), 2):
            if not ob.adjoint_invariants(xs[i]).matches(ob.adjoint_invariants(xs[j]), 1e-8):
                checked += 1
                if forms[i].equals(forms[j]):
                    distinct_fail += 1
        ok = same_fail == 0 and distinct_fail == 0
        items.append(SuiteItem(f"lorentz/n={n}", ok, {"samples": per_n, "conjugate_mismatch": same_fail,
                                                        "distinct_pairs": checked, "distinct_collisions": distinct_fail}))
    return items


# ---------------------------------------------------------------- swapped blocks

def swapped_block(seed: int = 0):
    rep = ob.swapped_block_example(1.0, 2.0, 2, 2)
    ok = rep.same_compact_orbit and not rep.same_KK_orbit
    return [SuiteItem("swapped-block/o22", ok, {"same_compact_orbit": rep.same_compact_orbit,
                                                "same_KK_orbit": rep.same_KK_orbit})]


# ---------------------------------------------------------------- triples and Killing signatures

def _signatures(n):
    return [(p, n - p) for p in range(n + 1)]


def triples(seed: int = 0, max_n: int = 6):
    items = []
    for n in range(2, max_n + 1):
        bad, meet_bad, count = [], [], 0
        for s1, s2 in itertools.product(_signatures(n), repeat=2):
            t = standard_triple(*s1, *s2)
            rep = check_compatible_triple(t)
            count += 1
            if not (rep.commutes and rep.direct_sum_ok):
                bad.append([list(s1), list(s2)])
            if is_simple_noncompact(*s1) and is_simple_noncompact(*s2) and not isomorphic(s1, s2):
                dt, dp = intersect_cartan_parts(t)
                if dt < 1 or dp < 1:
                    meet_bad.append([list(s1), list(s2), dt, dp])
        items.append(SuiteItem(f"triples/n={n}", not bad and not meet_bad,
                               {"triples": count, "failed": bad, "cartan_meet_failures": meet_bad}))
    return items


def _exact_killing_signature(p: int, q: int):
    """Oracle: integer basis E_ij -/+ E_ji, exact ad matrices, exact trace form, exact signature."""
    n = p + q
    basis = []
    for i, j in itertools.combinations(range(n), 2):
        e = np.zeros((n, n), dtype=int)
        e[i, j] = 1
        e[j, i] = -1 if (i < p) == (j < p) else 1
        basis.append(e)
    pos = {}
    for k, b in enumerate(basis):
        i, j = map(int, np.argwhere(np.triu(b != 0))[0])
        pos[(i, j)] = (k, b[i, j])

    def coords(m):
        c = [0] * len(basis)
        for (i, j), (k, s) in pos.items():
            c[k] = int(m[i, j]) * s  # s = 1, entries above the diagonal identify the element
        return c

    ads = []
    for x in basis:
        ads.append(np.array([coords(x @ y - y @ x) for y in basis], dtype=object).T)
    K = [[int(np.trace(ads[a].dot(ads[b]))) for b in range(len(basis))] for a in range(len(basis))]
    return exact_form_signature(K)


def killing(seed: int = 0, max_n: int = 6):
    items = []
    for n in range(3, max_n + 1):
        for p in range(n + 1):
            q = n - p
            expected = (comb(p, 2) + comb(q, 2), p * q)
            oracle = _exact_killing_signature(p, q)
            computed = form_signature(killing_form(build_o_pq(p, q)))
            ok = tuple(oracle) == expected == tuple(computed)
            items.append(SuiteItem(f"killing/o({p},{q})", ok, {"expected": list(expected), "oracle": list(oracle),
                                                               "computed": list(computed)}))
    return items


# ---------------------------------------------------------------- witness of the compact intersection

def witness(seed: int = 0, n_samples: int = 20):
    rng = np.random.default_rng(seed)
    r = ob.RepAction.adjoint_of(sl2_real())
    bad = []
    for i in range(n_samples):
        a, b, c = rng.normal(size=3)
        x = np.array([[a, b], [c, -a]])
        w = ob.intersect_with_compact(x, r)
        moved = r.group_act(w.group_element, x)
        dist = float(np.linalg.norm(moved - w.witness)) / max(1.0, float(np.linalg.norm(w.witness)))
        if not (ob.is_minimal(w.witness, r) and dist <= 1e-8):
            bad.append({"sample": i, "distance": dist})
    R = np.array([[0.0, 1.0], [-1.0, 0.0]])
    fixed = []
    for t in (1.0, -0.7, 3.0):
        w = ob.intersect_with_compact(t * R, r)
        fixed.append(bool(np.array_equal(w.witness, t * R)))
    return [SuiteItem("witness/sl2-closed", not bad, {"samples": n_samples, "failures": bad}),
            SuiteItem("witness/so2-seed-fixed", all(fixed), {"fixed": fixed})]


# ---------------------------------------------------------------- compatible Hermitian products

def hermitian(seed: int = 0, max_n: int = 6):
    items = []
    for d in (1, 2):
        bad, count = [], 0
        for n in range(2, max_n + 1):
            for s1, s2 in itertools.product(_signatures(n), repeat=2):
                rep = ob.check_compatible_hermitian(standard_triple(*s1, *s2), d)
                count += 1
                if not rep.ok:
                    bad.append([list(s1), list(s2), rep.violation])
        items.append(SuiteItem(f"hermitian/valence={d}", not bad, {"triples": count, "failed": bad}))
    return items


SUITES = {
    "walker-table": walker_table,
    "einstein": einstein,
    "g2": g2,
    "maurer-cartan": maurer_cartan,
    "sl2-orbits": sl2_orbits,
    "lorentz": lorentz,
    "swapped-block": swapped_block,
    "triples": triples,
    "killing": killing,
    "witness": witness,
    "hermitian": hermitian,
}


def run_suite(name: str, seed: int = 0):
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed=seed)

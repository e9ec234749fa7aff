"""Walker metrics 2du(dv + A du + C dU) + 2dU(dV + B dU): exact curvature and W1-W4 typing."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import FrameTagError
from ..poly import Poly
from ..realforms import o_pq_real
from ..rootsys import null_frame_pq, transform_covariant
from .coord import CoordMetric
from .curvature import CurvatureData

WVARS = ("u", "v", "U", "V")
NULL_ETA = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def _poly(p) -> Poly:
    if isinstance(p, Poly):
        return p.with_variables(WVARS)
    if isinstance(p, str):
        return Poly.parse(p, WVARS)
    return Poly.const(p, WVARS)


@dataclass
class WalkerSpec:
    A: Poly
    B: Poly
    C: Poly
    point: tuple | None = None
    name: str = ""

    def __post_init__(self):
        self.A, self.B, self.C = _poly(self.A), _poly(self.B), _poly(self.C)
        if self.point is not None:
            if len(self.point) != 4:
                raise ValueError("Walker point needs 4 coordinates (u, v, U, V)")
            self.point = tuple(Fraction(x) if not isinstance(x, float) else x for x in self.point)

    def metric_polys(self):
        z, one = Poly.const(0, WVARS), Poly.const(1, WVARS)
        A2, B2 = self.A * 2, self.B * 2
        return [[A2, one, self.C, z], [one, z, z, z], [self.C, z, B2, one], [z, z, one, z]]

    def inverse_polys(self):
        z, one = Poly.const(0, WVARS), Poly.const(1, WVARS)
        return [[z, one, z, z], [one, -self.A * 2, z, -self.C], [z, z, z, one], [z, -self.C, one, -self.B * 2]]

    def frame_polys(self):
        """E[mu][i]: coordinate components of the frame dual to the null coframe."""
        z, one = Poly.const(0, WVARS), Poly.const(1, WVARS)
        return [[one, z, z, z], [-self.A, one, -self.C, z], [z, z, one, z], [z, z, -self.B, one]]

    def coord_metric(self) -> CoordMetric:
        g = self.metric_polys()

        def ev(x):
            pt = {k: float(val) for k, val in zip(WVARS, x)}
            return np.array([[float(e.evaluate(pt)) for e in row] for row in g])

        return CoordMetric(4, ev, np.inf, self.name or "walker")

    def to_json(self):
        out = {"A": str(self.A), "B": str(self.B), "C": str(self.C)}
        if self.point is not None:
            out["point"] = [str(x) for x in self.point]
        return out


def _obj(shape):
    a = np.empty(shape, dtype=object)
    a[...] = Poly.const(0, WVARS)
    return a


def walker_curvature(w: WalkerSpec) -> CurvatureData:
    """Exact curvature; lowered components in the null coframe (e1, e2, e3, e4) =
    (du, dv + A du + C dU, dU, dV + B dU)."""
    n = 4
    R = range(n)
    g = w.metric_polys()
    gi = w.inverse_polys()
    dg = [[[g[a][b].diff(WVARS[e]) for b in R] for a in R] for e in R]  # dg[e][a][b]
    gamma = _obj((n, n, n))
    for a, b, c in itertools.product(R, R, R):
        s = Poly.const(0, WVARS)
        for d in R:
            if gi[a][d].is_zero():
                continue
            t = dg[b][d][c] + dg[c][d][b] - dg[d][b][c]
            if not t.is_zero():
                s = s + gi[a][d] * t
        gamma[a, b, c] = s / 2
    dgam = [[[[gamma[a, b, c].diff(WVARS[e]) for c in R] for b in R] for a in R] for e in R]
    Ru = _obj((n, n, n, n))
    for a, b, c, d in itertools.product(R, R, R, R):
        if (c, d) != tuple(sorted((c, d))) or c == d:
            continue
        s = dgam[c][a][d][b] - dgam[d][a][c][b]
        for e in R:
            s = s + gamma[a, c, e] * gamma[e, d, b] - gamma[a, d, e] * gamma[e, c, b]
        Ru[a, b, c, d] = s
        Ru[a, b, d, c] = -s
    Rl = _obj((n, n, n, n))
    for a, b, c, d in itertools.product(R, R, R, R):
        s = Poly.const(0, WVARS)
        for e in R:
            if not g[a][e].is_zero() and not Ru[e, b, c, d].is_zero():
                s = s + g[a][e] * Ru[e, b, c, d]
        Rl[a, b, c, d] = s
    # to the null frame, one slot at a time
    E = w.frame_polys()
    T = Rl
    for slot in range(4):
        T2 = _obj((n, n, n, n))
        for idx in itertools.product(R, R, R, R):
            s = Poly.const(0, WVARS)
            for mu in R:
                if E[mu][idx[slot]].is_zero():
                    continue
                j = list(idx)
                j[slot] = mu
                x = T[tuple(j)]
                if not x.is_zero():
                    s = s + x * E[mu][idx[slot]]
            T2[idx] = s
        T = T2
    Rn = T
    eta = np.array([[Fraction(int(x)) for x in row] for row in NULL_ETA], dtype=object)
    Run = _obj((n, n, n, n))
    for a, b, c, d in itertools.product(R, R, R, R):
        e = (1, 0, 3, 2)[a]  # eta^{-1} = eta, one nonzero entry per row
        Run[a, b, c, d] = Rn[e, b, c, d]
    ric = _obj((n, n))
    for b, d in itertools.product(R, R):
        s = Poly.const(0, WVARS)
        for a in R:
            s = s + Run[a, b, a, d]
        ric[b, d] = s
    scal = Poly.const(0, WVARS)
    for b in R:
        scal = scal + ric[b, (1, 0, 3, 2)[b]]
    return CurvatureData(gamma, Run, Rn, ric, scal, "null-coframe", eta, gamma_basis="coordinate",
                         extra={"coordinate_riemann": Rl})


# ---------------------------------------------------------------- boost weights

def counting_weight(idx) -> tuple:
    """(#2 - #1, #4 - #3) for a 0-based index tuple."""
    cnt = [list(idx).count(j) for j in range(4)]
    return (cnt[1] - cnt[0], cnt[3] - cnt[2])


def swap_weight(b) -> tuple:
    return (b[1], b[0])


def swap_index(idx) -> tuple:
    return tuple((2, 3, 0, 1)[i] for i in idx)


def walker_boost_weights(c: CurvatureData, tol: float = 0.0) -> set:
    if c.frame_tag != "null-coframe":
        raise FrameTagError(f"boost weights by index counting need a null-coframe tensor, got {c.frame_tag}")
    return {counting_weight(idx) for idx in c.nonzero_components(tol)}


def null_to_orthonormal(T) -> np.ndarray:
    """Covariant components in the null frame -> orthonormal real frame of o(2,2)."""
    P = null_frame_pq(2, 2)
    return transform_covariant(np.asarray(T, dtype=float), P.T)


# ---------------------------------------------------------------- classification

TABLE = {
    # (b1+b2>0, b1+b2<0, 0<b1=-b2, b1=-b2<0) -> tag, closed
    "W1": ((False, True, None, None), False),
    "W2": ((False, False, True, True), True),
    "W3": ((False, False, False, True), False),
    "W4": ((False, False, False, False), True),
}


def weight_pattern(support) -> tuple:
    s = list(support)
    return (
        any(b1 + b2 > 0 for b1, b2 in s),
        any(b1 + b2 < 0 for b1, b2 in s),
        any(b1 == -b2 and b1 > 0 for b1, b2 in s),
        any(b1 == -b2 and b1 < 0 for b1, b2 in s),
    )


def match_row(pattern):
    for tag, (row, _) in TABLE.items():
        if all(r is None or r == p for r, p in zip(row, pattern)):
            return tag
    # the frame swap exchanges the last two columns
    swapped = (pattern[0], pattern[1], pattern[3], pattern[2])
    for tag, (row, _) in TABLE.items():
        if all(r is None or r == p for r, p in zip(row, swapped)):
            return tag
    return None


@dataclass
class WalkerClass:
    tag: str
    weight_pattern: tuple
    closed: bool | None
    support: list = field(default_factory=list)
    flow_verdict: str | None = None
    flow_agrees: bool | None = None
    point: tuple | None = None

    def to_json(self):
        return {
            "tag": self.tag,
            "weight_pattern": list(self.weight_pattern),
            "closed": self.closed,
            "support": sorted([list(b) for b in self.support]),
            "flow_verdict": self.flow_verdict,
            "flow_agrees": self.flow_agrees,
            "point": None if self.point is None else [str(x) for x in self.point],
        }


def _generic_point(seed: int):
    rng = np.random.default_rng(seed)
    return tuple(Fraction(int(k), 7) for k in rng.integers(-20, 21, size=4))


def walker_classify(w: WalkerSpec, run_flow: bool = True, flow_config=None, seed: int = 0) -> WalkerClass:
    """Type from the weight support. With w.point set the support is taken at that point,
    otherwise from the polynomial components (generic point)."""
    from ..orbits import RepAction, kempf_ness_flow

    cd = walker_curvature(w)
    if w.point is not None:
        pt = dict(zip(WVARS, w.point))
        num = cd.evaluate(pt)
        support = walker_boost_weights(num)
    else:
        pt = dict(zip(WVARS, _generic_point(seed)))
        num = cd.evaluate(pt)
        support = walker_boost_weights(cd)
    pattern = weight_pattern(support)
    tag = match_row(pattern)
    closed = TABLE[tag][1] if tag else None
    verdict = agrees = None
    if run_flow:
        T = null_to_orthonormal(num.riemann)
        if not np.any(np.abs(T) > 1e-14):
            verdict = "closed"
        else:
            r = RepAction.tensors(o_pq_real(2, 2), 4)
            verdict = kempf_ness_flow(T, r, flow_config).verdict
        if closed is not None:
            if closed:
                agrees = verdict == "closed"
            elif tag == "W3":
                agrees = verdict in ("non_closed", "undecided")
            else:
                agrees = verdict == "non_closed"
    return WalkerClass(tag or "unclassified", pattern, closed, sorted(support), verdict, agrees,
                       w.point if w.point is not None else None)


def example_specs():
    """The four model metrics with a = 1, b = 2, c = 3, d = 5 and the points used for typing."""
    return {
        "ds1": WalkerSpec("V", "v^4", "0", (0, 1, 0, 0), "ds1"),
        "ds2": WalkerSpec("v^2 + 2*V^2", "3*v^2 + 5*V^2", "0", (0, 0, 0, 0), "ds2"),
        "ds3": WalkerSpec("v^2 + 2*V^2", "3*V^2", "0", (0, 0, 0, 0), "ds3"),
        "ds4": WalkerSpec("v^2", "2*V^2", "0", (0, 0, 0, 0), "ds4"),
    }

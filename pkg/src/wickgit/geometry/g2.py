"""Left-invariant coframes on SU(2) and SL(2,R), Maurer-Cartan checks and the G2 metric pair."""
from __future__ import annotations

import numpy as np

from ..errors import CoordinateDegeneracyError
from .coord import CoordMetric

ETA_SPLIT = np.diag([-1.0, -1.0, 1.0])
# dσ^i = sign_i σ^j ∧ σ^k for (i, j, k) cyclic
MC_SIGNS = {"su2": (-1, -1, -1), "sl2": (-1, -1, 1), "abelian": (0, 0, 0)}
CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def su2_coframe(x) -> np.ndarray:
    """S[i, mu] with σ^i = S[i, mu] dx^mu in the Euler-type chart (x1, x2, x3)."""
    _, x2, x3 = np.asarray(x, dtype=float)
    c2, s2 = np.cos(2 * x2), np.sin(2 * x2)
    c3, s3 = np.cos(2 * x3), np.sin(2 * x3)
    return 2 * np.array([[c2 * s3, c3, 0.0],
                         [c2 * c3, -s3, 0.0],
                         [-s2, 0.0, 1.0]])


def su2_coframe_d(x) -> np.ndarray:
    """D[i, m, mu] = ∂_m S[i, mu]."""
    _, x2, x3 = np.asarray(x, dtype=float)
    c2, s2 = np.cos(2 * x2), np.sin(2 * x2)
    c3, s3 = np.cos(2 * x3), np.sin(2 * x3)
    D = np.zeros((3, 3, 3))
    D[0, 1, 0], D[0, 2, 0], D[0, 2, 1] = -4 * s2 * s3, 4 * c2 * c3, -4 * s3
    D[1, 1, 0], D[1, 2, 0], D[1, 2, 1] = -4 * s2 * c3, -4 * c2 * s3, -4 * c3
    D[2, 1, 0] = -4 * c2
    return D


def sl2_coframe(y) -> np.ndarray:
    """Real left-invariant coframe on SL(2,R) from the real section (i y1, i y2, x3):
    σ~1 = -iσ1, σ~2 = -iσ2, σ~3 = σ3, written in the real chart (y1, y2, x3)."""
    _, y2, x3 = np.asarray(y, dtype=float)
    ch, sh = np.cosh(2 * y2), np.sinh(2 * y2)
    c3, s3 = np.cos(2 * x3), np.sin(2 * x3)
    return 2 * np.array([[ch * s3, c3, 0.0],
                         [ch * c3, -s3, 0.0],
                         [sh, 0.0, 1.0]])


def sl2_coframe_d(y) -> np.ndarray:
    _, y2, x3 = np.asarray(y, dtype=float)
    ch, sh = np.cosh(2 * y2), np.sinh(2 * y2)
    c3, s3 = np.cos(2 * x3), np.sin(2 * x3)
    D = np.zeros((3, 3, 3))
    D[0, 1, 0], D[0, 2, 0], D[0, 2, 1] = 4 * sh * s3, 4 * ch * c3, -4 * s3
    D[1, 1, 0], D[1, 2, 0], D[1, 2, 1] = 4 * sh * c3, -4 * ch * s3, -4 * c3
    D[2, 1, 0] = 4 * ch
    return D


def abelian_coframe(x) -> np.ndarray:
    return np.eye(3)


def abelian_coframe_d(x) -> np.ndarray:
    return np.zeros((3, 3, 3))


COFRAMES = {
    "su2": (su2_coframe, su2_coframe_d),
    "sl2": (sl2_coframe, sl2_coframe_d),
    "abelian": (abelian_coframe, abelian_coframe_d),
}


def exterior_d(D) -> np.ndarray:
    """(dσ^i)_{m mu} = ∂_m S_mu - ∂_mu S_m as antisymmetric matrices."""
    return D - D.transpose(0, 2, 1)


def wedge(a, b) -> np.ndarray:
    return np.outer(a, b) - np.outer(b, a)


def maurer_cartan_residuals(kind: str, x, d_override=None) -> list:
    """max |dσ^i - sign_i σ^j∧σ^k| for each cyclic relation at the point."""
    S_fn, D_fn = COFRAMES[kind]
    S = S_fn(x)
    D = D_fn(x) if d_override is None else d_override(x)
    dS = exterior_d(D)
    out = []
    for (i, j, k), sgn in zip(CYCLIC, MC_SIGNS[kind]):
        out.append(float(np.max(np.abs(dS[i] - sgn * wedge(S[j], S[k])))))
    return out


def numeric_coframe_d(kind: str, h: float = 1e-4):
    """Finite-difference ∂S (Richardson on central differences) used to cross-check the analytic jets."""
    S_fn = COFRAMES[kind][0]

    def D(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros((3, 3, 3))
        for m in range(3):
            e = np.zeros(3)
            e[m] = 1.0
            d1 = (S_fn(x + h * e) - S_fn(x - h * e)) / (2 * h)
            d2 = (S_fn(x + h / 2 * e) - S_fn(x - h / 2 * e)) / h
            out[:, m, :] = (4 * d2 - d1) / 3
        return out

    return D


# ---------------------------------------------------------------- G2 metrics

def g2_profile(r: float):
    """(α², β², γ²)."""
    f = 1.0 - r ** -3
    return 1.0 / f, r * r * f / 9.0, r * r / 12.0


def _g2_domain(x):
    if x[0] <= 1.0:
        raise CoordinateDegeneracyError("G2 metric needs r > 1", r=float(x[0]))


def g2_coframe(x, wick: bool) -> np.ndarray:
    """7x7 coframe rows: α dr, β(σ - Σ/2), γ Σ in coordinates (r, x1, x2, x3, y1, y2, y3)."""
    x = np.asarray(x, dtype=float)
    r = x[0]
    a2, b2, c2 = g2_profile(r)
    S_fn = sl2_coframe if wick else su2_coframe
    s = S_fn(x[1:4])
    S = S_fn(x[4:7])
    th = np.zeros((7, 7))
    th[0, 0] = np.sqrt(a2)
    th[1:4, 1:4] = np.sqrt(b2) * s
    th[1:4, 4:7] = -0.5 * np.sqrt(b2) * S
    th[4:7, 4:7] = np.sqrt(c2) * S
    return th


def g2_frame_metric(wick: bool) -> np.ndarray:
    e = ETA_SPLIT if wick else np.eye(3)
    N = np.eye(7)
    N[1:4, 1:4] = e
    N[4:7, 4:7] = e
    return N


def g2_metric(wick: bool = False) -> CoordMetric:
    N = g2_frame_metric(wick)

    def ev(x):
        th = g2_coframe(x, wick)
        return th.T @ N @ th

    return CoordMetric(7, ev, 0.5, "g2split" if wick else "g2", _g2_domain)


def g2_sample_points(n: int, rng, r_range=(1.5, 5.0), angle: float = 0.6) -> np.ndarray:
    """Random points with r in r_range; angles in [-angle, angle] keep the chart nondegenerate."""
    pts = rng.uniform(-angle, angle, size=(n, 7))
    pts[:, 0] = rng.uniform(*r_range, size=n)
    return pts

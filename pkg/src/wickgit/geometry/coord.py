"""Curvature of a metric given by a point evaluator, via finite differences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DegenerateFormError, ShapeError
from .curvature import CurvatureData

STEP = 2e-2
LEVELS = 2


@dataclass
class CoordMetric:
    dim: int
    evaluator: Callable
    smoothness_radius: float = 1.0
    name: str = ""
    domain_check: Callable | None = None

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ShapeError(f"point must have {self.dim} coordinates")
        if self.domain_check is not None:
            self.domain_check(x)
        g = np.asarray(self.evaluator(x), dtype=float)
        if g.shape != (self.dim, self.dim):
            raise ShapeError("evaluator returned a matrix of the wrong shape")
        return g


def flat(signs) -> CoordMetric:
    d = np.diag(np.asarray(signs, dtype=float))
    return CoordMetric(len(signs), lambda x: d.copy(), np.inf, "flat")


def sphere2() -> CoordMetric:
    """Unit sphere in (theta, phi)."""
    return CoordMetric(2, lambda x: np.diag([1.0, np.sin(x[0]) ** 2]), 1.0, "sphere2")


def _richardson(f, h, levels):
    """Richardson tableau on an even-order (h^2) central formula f(h)."""
    row = [f(h / 2**k) for k in range(levels + 1)]
    for lev in range(1, levels + 1):
        fac = 4.0**lev
        row = [(fac * row[k + 1] - row[k]) / (fac - 1) for k in range(len(row) - 1)]
    return row[0]


def _jet(m: CoordMetric, x, h0: float, levels: int = 1):
    """g, dg[e] = ∂_e g and ddg[e, f] = ∂_e ∂_f g by central differences with Richardson extrapolation."""
    n = m.dim
    x = np.asarray(x, dtype=float)
    g0 = m(x)
    hs = h0 * np.maximum(1.0, np.abs(x))
    E = np.eye(n)

    def at(*shifts):
        y = x.copy()
        for i, s in shifts:
            y = y + s * E[i]
        return m(y)

    def d1(i, h):
        return (at((i, h)) - at((i, -h))) / (2 * h)

    def d2(i, h):
        return (at((i, h)) - 2 * g0 + at((i, -h))) / (h * h)

    def dmix(i, j, hi, hj):
        return (at((i, hi), (j, hj)) - at((i, hi), (j, -hj)) - at((i, -hi), (j, hj))
                + at((i, -hi), (j, -hj))) / (4 * hi * hj)

    dg = np.zeros((n, n, n))
    ddg = np.zeros((n, n, n, n))
    for i in range(n):
        h = hs[i]
        dg[i] = _richardson(lambda t: d1(i, t), h, levels)
        ddg[i, i] = _richardson(lambda t: d2(i, t), h, levels)
    for i, j in itertools.combinations(range(n), 2):
        ratio = hs[j] / hs[i]
        v = _richardson(lambda t: dmix(i, j, t, t * ratio), hs[i], levels)
        ddg[i, j] = ddg[j, i] = v
    return g0, dg, ddg


def curvature_from_jet(g, dg, ddg) -> CurvatureData:
    """Christoffels, Riemann, Ricci from the metric and its first two derivatives at a point."""
    n = g.shape[0]
    g = 0.5 * (g + g.T)
    if abs(np.linalg.det(g)) < 1e-14 * max(1.0, np.max(np.abs(g))) ** n:
        raise DegenerateFormError("metric is degenerate at the point")
    gi = np.linalg.inv(g)
    # S[d, b, c] = ∂_b g_dc + ∂_c g_db - ∂_d g_bc ; dg[e, a, b] = ∂_e g_ab
    S = dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg
    gamma = 0.5 * np.einsum("ad,dbc->abc", gi, S)  # gamma[a,b,c] = Γ^a_{bc}
    # ddg[e, f, a, b] = ∂_e ∂_f g_ab; dS[e, d, b, c] = ∂_e S[d, b, c]
    dS = (np.einsum("ebdc->edbc", ddg) + np.einsum("ecdb->edbc", ddg) - np.einsum("edbc->edbc", ddg))
    dgi = -np.einsum("ap,epq,qd->ead", gi, dg, gi)
    dgamma = 0.5 * (np.einsum("ead,dbc->eabc", dgi, S) + np.einsum("ad,edbc->eabc", gi, dS))
    # R^a_{bcd} = ∂_c Γ^a_{db} - ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} - Γ^a_{de} Γ^e_{cb}
    Ru = (np.einsum("cadb->abcd", dgamma) - np.einsum("dacb->abcd", dgamma)
          + np.einsum("ace,edb->abcd", gamma, gamma) - np.einsum("ade,ecb->abcd", gamma, gamma))
    Rl = np.einsum("ae,ebcd->abcd", g, Ru)
    ric = np.einsum("abad->bd", Ru)
    scal = float(np.sum(gi * ric))
    return CurvatureData(gamma, Ru, Rl, ric, scal, "coordinate", g)


def coord_curvature(m: CoordMetric, point, step: float = STEP, levels: int = LEVELS) -> CurvatureData:
    g, dg, ddg = _jet(m, point, step, levels)
    sym = np.max(np.abs(g - g.T))
    if sym > 1e-12 * max(1.0, np.max(np.abs(g))):
        raise ShapeError("metric evaluator is not symmetric")
    return curvature_from_jet(g, dg, ddg)

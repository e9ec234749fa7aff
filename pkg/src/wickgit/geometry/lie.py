"""Left-invariant metrics on Lie groups from structure constants (exact rational arithmetic)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DegenerateFormError, JacobiError, NotSU2Error, ShapeError
from ..numkernel import exact_form_signature, exact_inverse
from .curvature import CurvatureData


def _F(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


@dataclass
class FrameMetric:
    """[e_i, e_j] = c[k][i][j] e_k and <e_i, e_j> = eta[i][j]."""

    dim: int
    structure_constants: np.ndarray  # c[k, i, j], object dtype of Fraction
    eta: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = np.vectorize(_F, otypes=[object])(np.asarray(self.structure_constants, dtype=object))
        e = np.vectorize(_F, otypes=[object])(np.asarray(self.eta, dtype=object))
        n = self.dim
        if c.shape != (n, n, n) or e.shape != (n, n):
            raise ShapeError(f"structure constants must be {n}x{n}x{n} and eta {n}x{n}")
        self.structure_constants = c
        self.eta = e

    def antisymmetry_ok(self) -> bool:
        c = self.structure_constants
        return all(c[k, i, j] == -c[k, j, i] for k, i, j in itertools.product(range(self.dim), repeat=3))

    def jacobi_defect(self) -> Fraction:
        c = self.structure_constants
        n = self.dim
        worst = Fraction(0)
        for i, j, k, m in itertools.product(range(n), repeat=4):
            s = sum(c[l, i, j] * c[m, l, k] + c[l, j, k] * c[m, l, i] + c[l, k, i] * c[m, l, j]
                    for l in range(n))
            worst = max(worst, abs(s))
        return worst

    def signature(self):
        return exact_form_signature(self.eta)

    def killing(self) -> np.ndarray:
        c = self.structure_constants
        n = self.dim
        ad = [np.array([[c[k, i, j] for j in range(n)] for k in range(n)], dtype=object) for i in range(n)]
        return np.array([[sum((ad[i].dot(ad[j]))[a, a] for a in range(n)) for j in range(n)]
                         for i in range(n)], dtype=object)

    def to_json(self):
        return {"dim": self.dim, "name": self.name,
                "structure_constants": [[[str(x) for x in row] for row in m] for m in self.structure_constants],
                "eta": [[str(x) for x in row] for row in self.eta]}


def abelian(n: int, eta=None) -> FrameMetric:
    eta = np.eye(n, dtype=object) if eta is None else eta
    return FrameMetric(n, np.zeros((n, n, n), dtype=object), eta, "abelian")


def su2_structure(scale=1) -> np.ndarray:
    """[e1,e2]=s e3, [e2,e3]=s e1, [e3,e1]=s e2."""
    c = np.zeros((3, 3, 3), dtype=object)
    c[...] = Fraction(0)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[k, i, j] = Fraction(scale)
        c[k, j, i] = -Fraction(scale)
    return c


def direct_sum(*metrics: FrameMetric) -> FrameMetric:
    n = sum(m.dim for m in metrics)
    c = np.empty((n, n, n), dtype=object)
    c[...] = Fraction(0)
    e = np.empty((n, n), dtype=object)
    e[...] = Fraction(0)
    o = 0
    for m in metrics:
        d = m.dim
        c[o:o + d, o:o + d, o:o + d] = m.structure_constants
        e[o:o + d, o:o + d] = m.eta
        o += d
    return FrameMetric(n, c, e, "+".join(m.name for m in metrics))


def bi_invariant(c, lam=1) -> FrameMetric:
    """Metric h = -lam * Killing form for the given structure constants."""
    n = np.asarray(c).shape[0]
    m = FrameMetric(n, c, np.eye(n, dtype=object))
    k = m.killing()
    return FrameMetric(n, c, -_F(lam) * k)


def su2_metric(lam=1, factors: int = 1) -> FrameMetric:
    one = bi_invariant(su2_structure(), lam)
    one.name = "su(2)"
    return direct_sum(*([one] * factors)) if factors > 1 else one


def lie_group_curvature(m: FrameMetric, check_jacobi: bool = True) -> CurvatureData:
    """Levi-Civita curvature of a left-invariant metric in the left-invariant frame.

    Koszul for constant inner products: 2<∇_i e_j, e_l> = c_ijl - c_jli + c_lij, c_ijl = <[e_i,e_j], e_l>.
    """
    n = m.dim
    c = m.structure_constants
    eta = m.eta
    if check_jacobi and m.jacobi_defect() != 0:
        raise JacobiError("structure constants violate the Jacobi identity")
    if not m.antisymmetry_ok():
        raise ShapeError("structure constants are not antisymmetric")
    try:
        eta_inv = exact_inverse(eta)
    except (ZeroDivisionError, ValueError) as exc:
        raise DegenerateFormError("frame metric is degenerate") from exc
    eta_inv = np.array(eta_inv, dtype=object)
    R = range(n)
    low = np.empty((n, n, n), dtype=object)  # low[i,j,l] = <[e_i,e_j], e_l>
    for i, j, l in itertools.product(R, R, R):
        low[i, j, l] = sum(c[k, i, j] * eta[k, l] for k in R)
    G_low = np.empty((n, n, n), dtype=object)  # <∇_i e_j, e_l>
    for i, j, l in itertools.product(R, R, R):
        G_low[i, j, l] = (low[i, j, l] - low[j, l, i] + low[l, i, j]) / 2
    gamma = np.empty((n, n, n), dtype=object)  # gamma[k,i,j]: ∇_i e_j = gamma[k,i,j] e_k
    for k, i, j in itertools.product(R, R, R):
        gamma[k, i, j] = sum(eta_inv[k, l] * G_low[i, j, l] for l in R)
    Ru = np.empty((n, n, n, n), dtype=object)  # Ru[r,s,a,b]: r-component of R(e_a,e_b) e_s
    for r, s, a, b in itertools.product(R, R, R, R):
        Ru[r, s, a, b] = sum(gamma[mm, b, s] * gamma[r, a, mm] - gamma[mm, a, s] * gamma[r, b, mm]
                             - c[mm, a, b] * gamma[r, mm, s] for mm in R)
    Rl = np.empty_like(Ru)
    for a, b, cc, d in itertools.product(R, R, R, R):
        Rl[a, b, cc, d] = sum(eta[a, e] * Ru[e, b, cc, d] for e in R)
    ric = np.empty((n, n), dtype=object)
    for b, d in itertools.product(R, R):
        ric[b, d] = sum(Ru[a, b, a, d] for a in R)
    scal = sum(eta_inv[b, d] * ric[b, d] for b in R for d in R)
    return CurvatureData(gamma, Ru, Rl, ric, Fraction(scal), "left-invariant", eta)


def einstein_constant(m: FrameMetric, cd: CurvatureData | None = None):
    """Λ with Ric = Λ eta exactly, or None if the metric is not Einstein."""
    cd = cd or lie_group_curvature(m)
    n = m.dim
    lam = None
    for i, j in itertools.product(range(n), repeat=2):
        e, r = m.eta[i, j], cd.ricci[i, j]
        if e == 0:
            if r != 0:
                return None
            continue
        q = r / e
        if lam is None:
            lam = q
        elif q != lam:
            return None
    return Fraction(0) if lam is None else lam


def _su2_factors(m: FrameMetric):
    """Check block structure: each consecutive 3-block is standard su(2) with eta = -lam*Killing."""
    n = m.dim
    if n % 3:
        raise NotSU2Error("dimension is not a multiple of 3")
    std = su2_structure()
    lams = []
    for o in range(0, n, 3):
        blk = slice(o, o + 3)
        c = m.structure_constants
        for k, i, j in itertools.product(range(n), repeat=3):
            inside = o <= k < o + 3 and o <= i < o + 3 and o <= j < o + 3
            expected = std[k - o, i - o, j - o] if inside else None
            if inside and c[k, i, j] != expected:
                raise NotSU2Error(f"factor at {o} is not standard su(2)")
            if not inside and (o <= i < o + 3 or o <= j < o + 3) and c[k, i, j] != 0:
                raise NotSU2Error("factors do not commute")
        e = m.eta[blk, blk]
        lam = e[0, 0] / 2  # Killing of standard su(2) is -2 I
        target = np.diag([2 * lam] * 3)
        if lam <= 0 or any(e[a, b] != target[a, b] for a in range(3) for b in range(3)):
            raise NotSU2Error(f"factor at {o} does not carry -lam*Killing with lam > 0")
        lams.append(lam)
    off = [(i, j) for i in range(n) for j in range(n) if i // 3 != j // 3 and m.eta[i, j] != 0]
    if off:
        raise NotSU2Error("metric couples different factors")
    return lams


def wick_rotate_frame_metric(m: FrameMetric) -> FrameMetric:
    """Replace each su(2) factor by sl(2,R) via e1 -> i e1, e2 -> i e2, e3 -> e3.

    With phases d, c~^k_ij = c^k_ij d_i d_j / d_k and eta~_ij = d_i d_j eta_ij, all real here.
    """
    _su2_factors(m)
    n = m.dim
    ph = [1j, 1j, 1] * (n // 3)
    c = m.structure_constants
    ct = np.empty_like(c)
    et = np.empty_like(m.eta)
    for k, i, j in itertools.product(range(n), repeat=3):
        f = ph[i] * ph[j] / ph[k]
        ct[k, i, j] = c[k, i, j] * int(round(f.real)) if c[k, i, j] != 0 else Fraction(0)
    for i, j in itertools.product(range(n), repeat=2):
        f = ph[i] * ph[j]
        et[i, j] = m.eta[i, j] * int(round(f.real)) if m.eta[i, j] != 0 else Fraction(0)
    name = m.name.replace("su(2)", "sl(2,R)") if m.name else "sl(2,R)"
    return FrameMetric(n, ct, et, name)

"""Curvature container shared by the exact and numeric engines.

Conventions: R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z, stored as
riemann_up[a, b, c, d] = R^a_{bcd} = a-component of R(e_c, e_d) e_b,
riemann[a, b, c, d] = g_{ae} R^e_{bcd}, ricci[b, d] = R^a_{bad}.
Arrays of dtype object hold exact entries (Fraction or Poly).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..poly import Poly
from ..rootsys import transform_covariant

FRAME_TAGS = ("coordinate", "null-coframe", "left-invariant")


def _is_exact(arr) -> bool:
    return isinstance(arr, np.ndarray) and arr.dtype == object


def _zero_like(x):
    if isinstance(x, Poly):
        return x.is_zero()
    return x == 0


@dataclass
class CurvatureData:
    gamma: np.ndarray
    riemann_up: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: object
    frame_tag: str
    metric: np.ndarray
    gamma_basis: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.frame_tag not in FRAME_TAGS:
            raise ValueError(f"frame tag must be one of {FRAME_TAGS}")
        if not self.gamma_basis:
            self.gamma_basis = self.frame_tag

    @property
    def dim(self) -> int:
        return self.riemann.shape[0]

    @property
    def exact(self) -> bool:
        return _is_exact(self.riemann)

    def symmetry_defects(self) -> dict:
        """Largest violation of each algebraic identity (0 for exact engines that pass)."""
        R = self.riemann
        n = self.dim
        out = {"antisym_12": 0.0, "antisym_34": 0.0, "pair": 0.0, "bianchi": 0.0}
        if self.exact:
            checks = {
                "antisym_12": lambda a, b, c, d: R[a, b, c, d] + R[b, a, c, d],
                "antisym_34": lambda a, b, c, d: R[a, b, c, d] + R[a, b, d, c],
                "pair": lambda a, b, c, d: R[a, b, c, d] - R[c, d, a, b],
                "bianchi": lambda a, b, c, d: R[a, b, c, d] + R[a, c, d, b] + R[a, d, b, c],
            }
            for key, f in checks.items():
                for idx in itertools.product(range(n), repeat=4):
                    if not _zero_like(f(*idx)):
                        out[key] = 1.0
                        break
            return out
        R = np.asarray(R, dtype=float)
        out["antisym_12"] = float(np.max(np.abs(R + R.transpose(1, 0, 2, 3))))
        out["antisym_34"] = float(np.max(np.abs(R + R.transpose(0, 1, 3, 2))))
        out["pair"] = float(np.max(np.abs(R - R.transpose(2, 3, 0, 1))))
        out["bianchi"] = float(np.max(np.abs(R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2))))
        return out

    def symmetries_ok(self, tol: float = 1e-6) -> bool:
        d = self.symmetry_defects()
        scale = 1.0 if self.exact else max(1.0, float(np.max(np.abs(np.asarray(self.riemann, float)))))
        return all(v <= (0 if self.exact else tol * scale) for v in d.values())

    def evaluate(self, point) -> "CurvatureData":
        """Numeric copy with every Poly entry evaluated at the point."""
        def ev(arr):
            if not _is_exact(arr):
                return np.asarray(arr, dtype=float)
            flat = [float(x.evaluate(point)) if isinstance(x, Poly) else float(x) for x in arr.reshape(-1)]
            return np.array(flat).reshape(arr.shape)

        sc = self.scalar
        sc = float(sc.evaluate(point)) if isinstance(sc, Poly) else float(sc)
        return CurvatureData(ev(self.gamma), ev(self.riemann_up), ev(self.riemann), ev(self.ricci), sc,
                             self.frame_tag, ev(self.metric), self.gamma_basis, dict(self.extra))

    def in_frame(self, E, tag: str) -> "CurvatureData":
        """Numeric components in a new frame with vectors E[:, i] (old components)."""
        E = np.asarray(E, dtype=float)
        Rl = transform_covariant(np.asarray(self.riemann, float), E)
        g = transform_covariant(np.asarray(self.metric, float), E)
        gi = np.linalg.inv(g)
        Ru = np.einsum("ae,ebcd->abcd", gi, Rl)
        ric = np.einsum("abad->bd", Ru)
        return CurvatureData(np.asarray(self.gamma, float), Ru, Rl, ric, float(np.sum(gi * ric)), tag, g,
                             self.gamma_basis)

    def nonzero_components(self, tol: float = 0.0):
        """Index tuples of nonzero lowered components."""
        out = []
        for idx in itertools.product(range(self.dim), repeat=4):
            x = self.riemann[idx]
            if isinstance(x, Poly):
                if not x.is_zero():
                    out.append(idx)
            elif abs(x) > tol:
                out.append(idx)
        return out

    def endomorphisms(self) -> list:
        """Curvature operators R(e_c, e_d) as numeric matrices (R^a_{b c d})_{a b}, c < d."""
        Ru = np.asarray(self.riemann_up, dtype=float)
        n = self.dim
        return [Ru[:, :, c, d] for c, d in itertools.combinations(range(n), 2)]

    def max_abs_ricci(self) -> float:
        return float(np.max(np.abs(np.asarray(self.ricci, dtype=float))))

    def to_json(self):
        if self.exact:
            comps = {}
            for idx in self.nonzero_components():
                a, b, c, d = idx
                if a < b and c < d and (a, b) <= (c, d):
                    comps["".join(str(i + 1) for i in idx)] = str(self.riemann[idx])
            return {"frame_tag": self.frame_tag, "components": comps, "scalar": str(self.scalar)}
        return {
            "frame_tag": self.frame_tag,
            "max_abs_riemann": float(np.max(np.abs(self.riemann))),
            "max_abs_ricci": self.max_abs_ricci(),
            "scalar": float(self.scalar),
            "ricci": np.asarray(self.ricci, float).tolist(),
        }


def frac_array(a) -> np.ndarray:
    arr = np.asarray(a, dtype=object)
    return np.vectorize(lambda x: x if isinstance(x, (Fraction, Poly)) else Fraction(x), otypes=[object])(arr)


def curvature_span_dim(c: CurvatureData, tol: float = 1e-8, max_rounds: int = 20) -> int:
    """Dimension of the Lie algebra generated by the curvature operators R(X,Y) at a point."""
    mats = c.endomorphisms()
    n = c.dim
    if not mats:
        return 0
    M = np.array([m.reshape(-1) for m in mats])
    scale = float(np.max(np.abs(M)))
    if scale == 0:
        return 0
    M = M / scale
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    keep = s > tol * s[0]
    Q = Vt[keep]  # orthonormal rows spanning the curvature operators
    for _ in range(max_rounds):
        basis = [q.reshape(n, n) for q in Q]
        cands = []
        for a, b in itertools.combinations(range(len(basis)), 2):
            br = basis[a] @ basis[b] - basis[b] @ basis[a]
            v = br.reshape(-1)
            v = v - Q.T @ (Q @ v)
            cands.append(v)
        if not cands:
            break
        C = np.array(cands)
        uu, ss, vv = np.linalg.svd(C, full_matrices=False)
        new = vv[ss > tol]
        if len(new) == 0:
            break
        Q2 = np.vstack([Q, new])
        q, _ = np.linalg.qr(Q2.T)
        Q = q.T[: len(Q2)]
    return int(len(Q))

"""Minimal vectors, the norm-minimizing flow and orbit-closure verdicts.

A representation is given in the real frame: the algebra g = t + p is a real matrix
algebra (t skew, p symmetric, orthonormal bases for tr(x^T y)) acting either on
covariant tensors of valence d or on g itself (adjoint). The inner product is the
Euclidean one on components, which is K-invariant and makes dp symmetric and dt skew.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from .errors import (
    NonClosedOrbitError,
    NotMinimalError,
    PositiveWeightError,
    ShapeError,
    UndecidedError,
)
from .numkernel import char_poly, numeric_rank, skew_normal_form
from .realforms import CompatibleTriple, RealForm, RealLieAlgebra, o_pq_real, sl2_real
from .rootsys import BoostWeightDecomp, tensor_act, tensor_group_act

MIN_TOL = 1e-10


# ---------------------------------------------------------------- representations

@dataclass
class RepAction:
    algebra: RealLieAlgebra
    valence: int = 0
    adjoint: bool = False

    def __post_init__(self):
        if isinstance(self.algebra, RealForm):
            self.algebra = self.algebra.real_algebra()
        if self.valence == 0 and not self.adjoint:
            raise ValueError("valence 0 needs adjoint=True")

    @classmethod
    def adjoint_of(cls, algebra) -> "RepAction":
        return cls(algebra, 0, True)

    @classmethod
    def tensors(cls, algebra, valence: int) -> "RepAction":
        return cls(algebra, valence, False)

    @property
    def n(self):
        return self.algebra.n

    @property
    def shape(self):
        return (self.n, self.n) if self.adjoint else (self.n,) * self.valence

    def check(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape != self.shape:
            raise ShapeError(f"vector of shape {v.shape} does not match representation shape {self.shape}")
        return v

    def act(self, x, v):
        x = np.asarray(x)
        v = np.asarray(v)
        if self.adjoint:
            return x @ v - v @ x
        return tensor_act(x, v)

    def group_act(self, g, v):
        g = np.asarray(g)
        if self.adjoint:
            return g @ v @ np.linalg.inv(g)
        return tensor_group_act(g, v)

    @staticmethod
    def inner(a, b) -> float:
        return float(np.vdot(np.asarray(a).reshape(-1), np.asarray(b).reshape(-1)).real)

    def norm(self, v) -> float:
        return float(np.linalg.norm(np.asarray(v).reshape(-1)))

    def operator(self, x) -> np.ndarray:
        """Matrix of dρ(x) on flattened (row-major) vectors."""
        x = np.asarray(x, dtype=float)
        n = self.n
        if self.adjoint:
            return np.kron(x, np.eye(n)) - np.kron(np.eye(n), x.T)
        d = self.valence
        out = np.zeros((n**d, n**d))
        for s in range(d):
            mats = [np.eye(n)] * d
            mats[s] = x.T
            k = mats[0]
            for m in mats[1:]:
                k = np.kron(k, m)
            out -= k
        return out

    @cached_property
    def p_ops(self):
        return [self.operator(x) for x in self.algebra.p_mats]

    @cached_property
    def all_ops(self):
        return [self.operator(x) for x in self.algebra.basis]

    def verify(self, tol=1e-10) -> bool:
        """dp symmetric and dt skew for the inner product."""
        ok = all(np.max(np.abs(o - o.T)) <= tol for o in self.p_ops)
        t_ops = [self.operator(x) for x in self.algebra.t_mats]
        return ok and all(np.max(np.abs(o + o.T)) <= tol for o in t_ops)

    def random_K(self, rng) -> np.ndarray:
        """Random element of the maximal compact subgroup (exp of random t)."""
        if not self.algebra.t_mats:
            return np.eye(self.n)
        c = rng.normal(size=len(self.algebra.t_mats)) * 3
        return expm(sum(ci * t for ci, t in zip(c, self.algebra.t_mats)))

    def random_G(self, rng, scale=1.0) -> np.ndarray:
        c = rng.normal(size=self.algebra.dim) * scale
        return expm(sum(ci * b for ci, b in zip(c, self.algebra.basis)))


def act(x, v, r: RepAction):
    v = r.check(v)
    x = np.asarray(x, dtype=float)
    if x.shape != (r.n, r.n):
        raise ShapeError(f"Lie algebra element must be {r.n}x{r.n}")
    return r.act(x, v)


def moment(v, r: RepAction) -> np.ndarray:
    """<x_i v, v> for the p basis."""
    flat = np.asarray(v, dtype=float).reshape(-1)
    return np.array([flat @ (o @ flat) for o in r.p_ops])


def is_minimal(v, r: RepAction, tol: float = MIN_TOL) -> bool:
    v = r.check(v)
    nrm2 = r.inner(v, v)
    if nrm2 == 0:
        return True
    return bool(np.max(np.abs(moment(v, r)), initial=0.0) <= tol * nrm2)


def orbit_singular_values(v, r: RepAction) -> np.ndarray:
    """Singular values of x -> x.v on g, for the normalized vector."""
    flat = np.asarray(v, dtype=float).reshape(-1)
    nv = np.linalg.norm(flat)
    if nv == 0:
        return np.zeros(0)
    u = flat / nv
    T = np.column_stack([o @ u for o in r.all_ops])
    return np.linalg.svd(T, compute_uv=False)


def orbit_dim(v, r: RepAction, tol: float = 1e-8) -> int:
    s = orbit_singular_values(v, r)
    return int(np.sum(s > tol)) if s.size else 0


# ---------------------------------------------------------------- the flow

@dataclass
class FlowConfig:
    g_tol: float = 1e-10
    armijo_c: float = 1e-4
    shrink: float = 0.5
    max_iter: int = 100_000
    max_step: float = 1.0
    zero_tol: float = 1e-8        # relative norm treated as reaching 0
    cond_tol: float = 1e-4        # orbit-map conditioning accepted for a genuine minimum
    collapse_tol: float = 1e-5    # orbit-map singular value accepted as a collapsed direction
    noise_eps: float = 1e-14      # relative rounding level of the input components
    noise_margin: float = 1e4     # a genuine minimum must sit this far above the noise floor
    min_divergence: float = 2.0   # displacement needed before declaring a nonzero limit
    confirm_steps: int = 200
    method: str = "newton"
    seed: int = 0
    trace_points: int = 50


@dataclass
class OrbitReport:
    verdict: str
    minimal_vector: np.ndarray | None
    limit_vector: np.ndarray | None
    final_gradient_norm: float
    final_norm: float
    iterations: int
    invariant_certificate: dict
    norm_trace: list = field(default_factory=list)
    displacement: float = 0.0
    group_element: np.ndarray | None = None

    def to_json(self):
        return {
            "verdict": self.verdict,
            "gradient_norm": self.final_gradient_norm,
            "final_norm": self.final_norm,
            "iterations": self.iterations,
            "displacement": self.displacement,
            "norm_trace": self.norm_trace,
            "invariants": self.invariant_certificate,
            "minimal_vector": None if self.minimal_vector is None else np.asarray(self.minimal_vector).tolist(),
            "limit_vector": None if self.limit_vector is None else np.asarray(self.limit_vector).tolist(),
        }


def _displacement(g) -> float:
    """|P| for the polar decomposition g = k exp(P)."""
    w = np.linalg.eigvalsh(g @ g.T)
    return float(0.5 * np.sqrt(np.sum(np.log(w) ** 2)))


def _rep_opnorm(r: RepAction, g) -> float:
    """Operator norm of rho(g): exact for tensor powers, an upper bound for the adjoint."""
    ginv = np.linalg.norm(np.linalg.inv(g), 2)
    if r.adjoint:
        return float(np.linalg.norm(g, 2) * ginv)
    return float(ginv ** r.valence)


def _downsample(trace, k):
    if len(trace) <= k:
        return [float(x) for x in trace]
    idx = np.unique(np.linspace(0, len(trace) - 1, k).round().astype(int))
    return [float(trace[i]) for i in idx]


def kempf_ness_flow(v, r: RepAction, config: FlowConfig | None = None) -> OrbitReport:
    """Minimise log |g.v|^2 over exp(p) with Armijo backtracking.

    The descent direction is a regularised Newton direction in p coordinates (plain
    steepest descent as fallback). Verdicts:
      closed      - relative moment below g_tol at an iterate whose orbit map is well
                    conditioned (orbit dimension preserved);
      non_closed  - the norm tends to 0, or the iterates approach a point with a strictly
                    smaller orbit dimension while the group displacement grows;
      undecided   - otherwise (cap reached or stagnation without a certificate).
    """
    cfg = config or FlowConfig()
    v0 = r.check(v)
    N0 = r.norm(v0)
    if N0 == 0:
        raise ValueError("flow needs a nonzero vector")
    n = r.n
    P = r.algebra.p_mats
    ops = r.p_ops
    sv0 = orbit_singular_values(v0, r)
    dim0 = int(np.sum(sv0 > 1e-8))
    cert = {"orbit_dim": dim0}
    if r.adjoint:
        cert["char_poly"] = [float(c) for c in np.real(char_poly(v0))]

    g = np.eye(n)
    vk = v0.copy()
    trace = [N0]

    def rel_moment(w):
        return np.abs(moment(w, r)) / max(r.inner(w, w), 1e-300)

    M = rel_moment(vk)
    if np.max(M, initial=0.0) <= cfg.g_tol:
        return OrbitReport("closed", vk.copy(), None, float(np.max(M, initial=0.0)), N0, 0, cert,
                           [N0], 0.0, g.copy())

    first_small = None
    it = 0
    stalled = False
    while it < cfg.max_iter:
        flat = vk.reshape(-1)
        N2 = flat @ flat
        Nk = np.sqrt(N2)
        xv = np.array([o @ flat for o in ops])  # rows x_i . v
        grad = 2 * (xv @ flat) / N2
        relm = float(np.max(np.abs(grad)) / 2)
        floor = cfg.noise_eps * N0 * _rep_opnorm(r, g)
        if Nk / N0 < cfg.zero_tol or Nk <= cfg.noise_margin * floor:
            # the iterate is indistinguishable from 0 at the amplified rounding level
            cert.update({"limit_norm": 0.0, "orbit_dim_limit": 0, "norm_ratio": float(Nk / N0),
                         "noise_floor": float(floor)})
            return OrbitReport("non_closed", None, np.zeros_like(v0), relm, float(Nk), it, cert,
                               _downsample(trace, cfg.trace_points), _displacement(g), g.copy())
        if relm <= cfg.g_tol or stalled:
            svk = orbit_singular_values(vk, r)
            smin = float(svk[dim0 - 1]) if dim0 else 1.0
            disp = _displacement(g)
            if relm <= cfg.g_tol and smin >= cfg.cond_tol:
                cert.update({"orbit_sigma_min": smin, "noise_floor": float(floor)})
                return OrbitReport("closed", vk.copy(), None, relm, float(Nk), it, cert,
                                   _downsample(trace, cfg.trace_points), disp, g.copy())
            if first_small is None and relm <= cfg.g_tol:
                first_small = (it, smin, disp)
            done = stalled or (first_small is not None and it - first_small[0] >= cfg.confirm_steps)
            if smin <= cfg.collapse_tol and disp >= cfg.min_divergence:
                lim_dim = int(np.sum(svk > cfg.collapse_tol))
                cert.update({"orbit_sigma_min": smin, "orbit_dim_limit": lim_dim,
                             "limit_norm": float(Nk)})
                if r.adjoint:
                    cert["limit_char_poly"] = [float(c) for c in np.real(char_poly(vk))]
                return OrbitReport("non_closed", None, vk.copy(), relm, float(Nk), it, cert,
                                   _downsample(trace, cfg.trace_points), disp, g.copy())
            if done:
                cert.update({"orbit_sigma_min": smin})
                return OrbitReport("undecided", None, None, relm, float(Nk), it, cert,
                                   _downsample(trace, cfg.trace_points), disp, g.copy())
        # direction
        dirs = []
        if cfg.method == "newton":
            H = 4 * (xv @ xv.T) / N2 - np.outer(grad, grad)
            w, U = np.linalg.eigh(0.5 * (H + H.T))
            floor = 1e-8 * max(1.0, float(np.max(np.abs(w), initial=0.0)))
            w = np.maximum(w, floor)
            dirs.append(-(U @ ((U.T @ grad) / w)))
        dirs.append(-grad)
        accepted = False
        for d in dirs:
            dn = np.linalg.norm(d)
            if dn == 0:
                continue
            if dn > cfg.max_step:
                d = d * (cfg.max_step / dn)
            slope = float(grad @ d)
            if slope >= 0:
                continue
            s = 1.0
            while s > 1e-14:
                step = expm(sum(si * x for si, x in zip(s * d, P)))
                vn = r.group_act(step, vk)
                dv = (vn - vk).reshape(-1)
                # relative change of |v|^2, computed without cancellation
                rel = float(dv @ (vn.reshape(-1) + flat)) / N2
                dF = np.log1p(rel) if rel > -1 else -np.inf
                if dF <= cfg.armijo_c * s * slope:
                    accepted = True
                    break
                s *= cfg.shrink
            if accepted:
                break
        it += 1
        if not accepted:
            stalled = True
            continue
        stalled = False
        vk = vn
        g = step @ g
        trace.append(r.norm(vk))
    flat = vk.reshape(-1)
    relm = float(np.max(rel_moment(vk), initial=0.0))
    return OrbitReport("undecided", None, None, relm, r.norm(vk), it, cert,
                       _downsample(trace, cfg.trace_points), _displacement(g), g.copy())


# ---------------------------------------------------------------- degeneration limits

def degeneration_limit(bw: BoostWeightDecomp, lam, tol: float = 1e-12):
    lam = np.asarray(lam, dtype=float)
    if lam.size != bw.k:
        raise ShapeError(f"lambda must have {bw.k} entries")
    out = None
    for b, comp in bw.components.items():
        val = float(np.dot(b, lam))
        if b in bw.support and val > tol:
            raise PositiveWeightError(f"weight {b} pairs positively with lambda", weight=list(b))
        if abs(val) <= tol:
            out = comp.copy() if out is None else out + comp
    if out is None:
        out = np.zeros_like(next(iter(bw.components.values())))
    return out


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class InvariantRecord:
    char_poly: tuple
    norm: float
    orbit_dim: int

    @property
    def is_zero(self):
        return self.norm == 0

    def matches(self, other: "InvariantRecord", tol: float = 1e-10) -> bool:
        """Equality of the conjugation-invariant parts (char poly, orbit dimension, zero test)."""
        a, b = np.array(self.char_poly), np.array(other.char_poly)
        if a.shape != b.shape:
            return False
        scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        return (bool(np.max(np.abs(a - b)) <= tol * scale) and self.orbit_dim == other.orbit_dim
                and self.is_zero == other.is_zero)

    def to_json(self):
        return {"char_poly": list(self.char_poly), "norm": self.norm, "orbit_dim": self.orbit_dim}


def adjoint_invariants(x) -> InvariantRecord:
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    cp = tuple(float(c) for c in np.real(char_poly(x)))
    ad = np.kron(x, np.eye(n)) - np.kron(np.eye(n), x.T)
    rk = numeric_rank(ad, 1e-9) if np.any(x) else 0
    return InvariantRecord(cp, float(np.linalg.norm(x)), rk)


# ---------------------------------------------------------------- Lorentz canonical form

@dataclass
class CanonicalForm:
    rotation_params: tuple
    kernel_vector_norms: tuple
    residual: np.ndarray
    zeros: int = 0
    conjugator: np.ndarray | None = None

    def equals(self, other: "CanonicalForm", tol: float = 1e-8) -> bool:
        if len(self.rotation_params) != len(other.rotation_params) or self.zeros != other.zeros:
            return False
        a = np.array(self.rotation_params + self.kernel_vector_norms)
        b = np.array(other.rotation_params + other.kernel_vector_norms)
        return bool(np.max(np.abs(a - b), initial=0.0) <= tol * max(1.0, np.max(np.abs(a), initial=0.0)))

    def to_json(self):
        return {
            "rotation_params": list(self.rotation_params),
            "kernel_vector_norms": list(self.kernel_vector_norms),
            "zeros": self.zeros,
            "residual": np.asarray(self.residual).tolist(),
        }


def lorentz_canonical_form(x, tol: float = 1e-9) -> CanonicalForm:
    """Canonical K-representative of a minimal vector of o(n-1,1).

    x is a real-frame matrix [[A, a], [a^T, 0]] with A skew (the o(n-1) block on the
    first n-1 directions) and a the boost part on the last direction.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if x.shape != (n, n) or n < 2 or n > 8:
        raise ShapeError("expected an n x n matrix with 2 <= n <= 8")
    A = x[: n - 1, : n - 1]
    a = x[: n - 1, n - 1]
    scale = max(1.0, float(np.max(np.abs(x))))
    if (np.max(np.abs(A + A.T)) > tol * scale or np.max(np.abs(x[n - 1, : n - 1] - a)) > tol * scale
            or abs(x[n - 1, n - 1]) > tol * scale):
        raise ShapeError("matrix is not in o(n-1,1) (real frame, last direction distinguished)")
    if np.linalg.norm(A @ a) > 1e-8 * scale * scale:
        raise NotMinimalError("not a minimal vector: A a != 0")
    g, blocks = skew_normal_form(A)
    ap = g @ a
    m = len(blocks.rotations)
    ker = ap[2 * m:]
    c = float(np.linalg.norm(ker))
    # rotate the kernel part onto the first kernel axis (Householder reflection)
    z = blocks.zeros
    R = np.eye(z)
    if z and c > 0:
        e = np.zeros(z)
        e[0] = 1.0
        u = ker / c - e
        if np.linalg.norm(u) > 1e-14:
            u /= np.linalg.norm(u)
            R = np.eye(z) - 2 * np.outer(u, u)
    k_block = np.eye(n - 1)
    k_block[2 * m:, 2 * m:] = R
    k = np.eye(n)
    k[: n - 1, : n - 1] = k_block @ g
    resid = k @ x @ k.T
    resid[np.abs(resid) < 1e-13 * scale] = 0.0
    norms = (c,) if z else ()
    return CanonicalForm(tuple(blocks.rotations), norms, resid, z, k)


# ---------------------------------------------------------------- sl(2,R) orbit counts

@dataclass
class OrbitCount:
    count: int
    representatives: list
    conjugating_angle: float | None = None

    def to_json(self):
        return {"count": self.count, "representatives": [np.asarray(r).tolist() for r in self.representatives],
                "conjugating_angle": self.conjugating_angle}


def _rot(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


def find_so2_conjugator(x, y, tol: float = 1e-8):
    """An angle phi with R(phi) x R(phi)^T = y, or None. Grid search then bounded polish."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scale = max(np.linalg.norm(x), np.linalg.norm(y), 1e-300)

    def f(phi):
        R = _rot(phi)
        return float(np.linalg.norm(R @ x @ R.T - y)) / scale

    grid = np.linspace(0.0, np.pi, 2001)
    vals = np.array([f(p) for p in grid])
    best = None
    for i in np.argsort(vals)[:4]:
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        if best is None or res.fun < best[1]:
            best = (float(res.x), float(res.fun))
    if best[1] <= tol:
        return best[0]
    return None


def sl2_real_orbit_count(x, config: FlowConfig | None = None) -> OrbitCount:
    x = np.asarray(x, dtype=float)
    if x.shape != (2, 2) or abs(np.trace(x)) > 1e-10 * max(1.0, np.max(np.abs(x))):
        raise ShapeError("expected a traceless 2x2 real matrix")
    if not np.any(x):
        return OrbitCount(1, [x.copy()])
    r = RepAction.adjoint_of(sl2_real())
    m = x
    if not is_minimal(x, r):
        rep = kempf_ness_flow(x, r, config)
        if rep.verdict == "non_closed":
            raise NonClosedOrbitError("orbit is not closed (nilpotent element)")
        if rep.verdict != "closed":
            raise UndecidedError("could not certify a closed orbit")
        m = rep.minimal_vector
    # -m has the same characteristic polynomial; decide -m in Km by a rotation search
    phi = find_so2_conjugator(m, -m)
    if phi is not None:
        return OrbitCount(1, [x.copy()], phi)
    return OrbitCount(2, [x.copy(), -x.copy()])


# ---------------------------------------------------------------- intersection with compact orbits

@dataclass
class Witness:
    witness: np.ndarray
    group_element: np.ndarray
    report: OrbitReport
    compact_minimal: bool

    def to_json(self):
        return {"witness": self.witness.tolist(), "verdict": self.report.verdict,
                "compact_minimal": self.compact_minimal}


def intersect_with_compact(v, r: RepAction, compact: RepAction | None = None,
                           config: FlowConfig | None = None) -> Witness:
    """A point of Gv on the compact orbit: the minimal vector reached by the flow."""
    v = r.check(v)
    rep = kempf_ness_flow(v, r, config)
    if rep.verdict == "non_closed":
        raise NonClosedOrbitError("orbit is not closed, so it misses the compact orbit")
    if rep.verdict != "closed":
        raise UndecidedError("flow did not certify a closed orbit")
    w = rep.minimal_vector
    # for the adjoint case, minimality for the complexified action means w is normal
    normal = True
    if r.adjoint:
        normal = bool(np.max(np.abs(w @ w.T - w.T @ w)) <= MIN_TOL * max(1.0, r.inner(w, w)))
    return Witness(w, rep.group_element, rep, normal and is_minimal(w, r))


# ---------------------------------------------------------------- swapped-block example

@dataclass(frozen=True)
class SwapReport:
    same_compact_orbit: bool
    same_KK_orbit: bool
    x: np.ndarray
    x_swapped: np.ndarray

    def to_json(self):
        return {"same_compact_orbit": self.same_compact_orbit, "same_KK_orbit": self.same_KK_orbit,
                "x": self.x.tolist(), "x_swapped": self.x_swapped.tolist()}


def _so2(a):
    return np.array([[0.0, a], [-a, 0.0]])


def swapped_block_example(a: float, b: float, p: int, q: int) -> SwapReport:
    if p < 2 or q < 2:
        raise ValueError("need p, q >= 2")
    n = p + q
    x = np.zeros((n, n))
    y = np.zeros((n, n))
    x[0:2, 0:2], x[p:p + 2, p:p + 2] = _so2(a), _so2(b)
    y[0:2, 0:2], y[p:p + 2, p:p + 2] = _so2(b), _so2(a)

    def close(c1, c2):
        return bool(np.max(np.abs(np.array(c1, float) - np.array(c2, float))) <= 1e-10)

    same_compact = close(char_poly(x), char_poly(y))
    same_kk = close(char_poly(x[:p, :p]), char_poly(y[:p, :p])) and \
        close(char_poly(x[p:, p:]), char_poly(y[p:, p:]))
    return SwapReport(same_compact, same_kk, x, y)


# ---------------------------------------------------------------- compatible Hermitian products

@dataclass
class HermitianReport:
    ok: bool
    violation: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "violation": self.violation}


def _kron_power(M, d):
    out = np.eye(1, dtype=complex)
    for _ in range(d):
        out = np.kron(out, M)
    return out


def check_compatible_hermitian(triple: CompatibleTriple, r, tol: float = 1e-10) -> HermitianReport:
    """Standard Hermitian product in the compact-adapted frame on (C^n)^{(x)d}:
    U-invariant (d u skew-Hermitian) and real on both real forms V, V~."""
    d = r if isinstance(r, int) else (r.valence if not r.adjoint else 2)
    comp = triple.compact
    n = comp.n
    Sc = comp.slice_basis
    Sinv = np.linalg.inv(Sc)
    H1 = Sinv.conj().T @ Sinv
    H = _kron_power(H1, d)
    # U-invariance: the compact algebra acts on each slot
    for idx, X in enumerate(comp.t_mats):
        op = np.zeros((n**d, n**d), dtype=complex)
        for s in range(d):
            mats = [np.eye(n)] * d
            mats[s] = X
            k = np.eye(1)
            for m in mats:
                k = np.kron(k, m)
            op += k
        defect = H @ op + op.conj().T @ H
        err = float(np.max(np.abs(defect)))
        if err > tol:
            return HermitianReport(False, {"check": "u_invariance", "generator": idx, "defect": err})
    for name, f in (("f1", triple.f1), ("f2", triple.f2)):
        S = _kron_power(f.slice_basis, d)  # columns: real basis of the real form of the tensor space
        G = S.conj().T @ H @ S
        err = float(np.max(np.abs(G.imag)))
        if err > tol * max(1.0, float(np.max(np.abs(G)))):
            i, j = np.unravel_index(np.argmax(np.abs(G.imag)), G.shape)
            return HermitianReport(False, {"check": f"real_on_{name}", "pair": [int(i), int(j)], "imag": err})
    return HermitianReport(True)

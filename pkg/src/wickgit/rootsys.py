"""Restricted roots of o(p,q), boost generators, boost-weight decompositions and the S^G test.

Everything here works with real-frame matrices: o(p,q) as real n x n matrices
preserving eta = diag(-1,..,-1, 1,..,1) (first p directions timelike), with
t = skew part and p = symmetric part. Tensors are covariant component arrays in
the pseudo-orthonormal frame.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import NonIntegerWeightError, ShapeError, WickgitError
from .numkernel import Subspace, exact_nullspace, exact_rank, numeric_rank, orth
from .realforms import RealForm, RealLieAlgebra, o_pq_real

WEIGHT_TOL = 1e-8


class NotAbelianError(WickgitError, ValueError):
    code = "not_abelian"


class SingularSystemError(WickgitError, ValueError):
    code = "singular_system"


def _algebra(f) -> RealLieAlgebra:
    if isinstance(f, RealForm):
        return f.real_algebra()
    return f


def _vec(m):
    return np.asarray(m, dtype=float).reshape(-1)


def _bracket(x, y):
    return x @ y - y @ x


# ---------------------------------------------------------------- maximal abelian subspace

def maximal_abelian(f, tol: float = 1e-10) -> Subspace:
    """A maximal abelian subspace of p, as a Subspace of R^{n*n} with shape (n, n).

    For o(p,q) the standard choice boosts timelike direction I against spacelike
    direction p+I, for I = 1..min(p,q). Other algebras use a greedy centralizer
    extension. Either way maximality is certified by z_p(a) = a.
    """
    g = _algebra(f)
    n = g.n
    if g.signature is not None:
        p, q = g.signature
        mats = []
        for I in range(min(p, q)):
            a = np.zeros((n, n))
            a[I, p + I] = a[p + I, I] = 1.0
            mats.append(a)
    else:
        mats = _greedy_abelian(g, tol)
    space = Subspace.span([_vec(m) for m in mats], ambient_dim=n * n, shape=(n, n)) if mats \
        else Subspace(n * n, np.zeros((n * n, 0)), shape=(n, n))
    # keep the chosen generators themselves as the basis, so root coordinates are integers
    if mats:
        space = Subspace(n * n, np.column_stack([_vec(m) for m in mats]), shape=(n, n))
    cert = centralizer_in_p(g, mats, tol)
    if cert.dim != len(mats):
        raise WickgitError("abelian subspace is not maximal")
    return space


def centralizer_in_p(g: RealLieAlgebra, mats, tol=1e-10) -> Subspace:
    n = g.n
    P = g.p_mats
    if not P:
        return Subspace(n * n, np.zeros((n * n, 0)), shape=(n, n))
    if not mats:
        return Subspace.span([_vec(x) for x in P], ambient_dim=n * n, shape=(n, n))
    # solve [sum c_i P_i, a] = 0 for all a in mats
    rows = np.vstack([np.column_stack([_vec(_bracket(x, a)) for x in P]) for a in mats])
    _, s, vh = np.linalg.svd(rows)
    r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    null = vh[r:].T
    vecs = [sum(c * _vec(x) for c, x in zip(col, P)) for col in null.T]
    return Subspace.span(vecs, ambient_dim=n * n, shape=(n, n)) if vecs else \
        Subspace(n * n, np.zeros((n * n, 0)), shape=(n, n))


def _greedy_abelian(g: RealLieAlgebra, tol):
    mats = []
    while True:
        z = centralizer_in_p(g, mats, tol)
        cur = Subspace.span([_vec(m) for m in mats], ambient_dim=g.n ** 2) if mats else None
        pick = None
        for b in z.elements():
            if cur is None or not cur.contains(b.reshape(-1), 1e-8):
                pick = b
                break
        if pick is None:
            return mats
        mats.append(pick)


# ---------------------------------------------------------------- restricted roots

@dataclass
class RestrictedRootSystem:
    algebra: RealLieAlgebra
    a_basis: Subspace
    a_mats: list
    roots: list  # list of (coefficient vector as tuple, multiplicity)
    simple_roots: list
    chamber: str
    m_dim: int
    root_spaces: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self):
        return len(self.a_mats)

    def dimension_identity(self) -> bool:
        return self.algebra.dim == self.rank + self.m_dim + sum(m for _, m in self.roots)

    def to_json(self):
        return {
            "rank": self.rank,
            "roots": [{"coeffs": list(r), "multiplicity": m} for r, m in self.roots],
            "simple_roots": [list(r) for r in self.simple_roots],
            "m_dim": self.m_dim,
            "chamber": self.chamber,
        }


def _lex_positive(v, tol=1e-9):
    for x in v:
        if x > tol:
            return True
        if x < -tol:
            return False
    return False


def _clean(x):
    r = round(x)
    return int(r) if abs(x - r) < 1e-9 else float(x)


def restricted_roots(f, a: Subspace | None = None, tol: float = 1e-9) -> RestrictedRootSystem:
    g = _algebra(f)
    if a is None:
        a = maximal_abelian(g)
    n = g.n
    a_mats = [m for m in a.elements()]
    for x, y in itertools.combinations(a_mats, 2):
        if np.max(np.abs(_bracket(x, y))) > 1e-10:
            raise NotAbelianError("supplied subspace is not abelian")
    basis = g.basis  # orthonormal for tr(x^T y)
    B = np.column_stack([_vec(b) for b in basis])
    m = len(basis)
    k = len(a_mats)

    def ad(x):
        cols = [np.linalg.lstsq(B, _vec(_bracket(x, b)), rcond=None)[0] for b in basis]
        return np.array(cols).T

    ads = [ad(x) for x in a_mats]
    # ad of elements of p is symmetric for the orthonormal basis
    if k == 0:
        return RestrictedRootSystem(g, a, [], [], [], "lexicographic", g.dim)
    weights = np.array([1.0 + 0.1 * np.sqrt(2 + i) for i in range(k)])
    Y = sum(w * A for w, A in zip(weights, ads))
    Y = 0.5 * (Y + Y.T)
    evals, evecs = np.linalg.eigh(Y)
    # group eigenvectors into clusters of equal eigenvalue, then read off each functional
    groups = {}
    order = np.argsort(evals)
    clusters = []
    for i in order:
        if clusters and abs(evals[i] - evals[clusters[-1][-1]]) < 1e-7:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    for cl in clusters:
        V = evecs[:, cl]
        lam = []
        for A in ads:
            M = V.T @ A @ V
            vals = np.linalg.eigvalsh(0.5 * (M + M.T))
            if np.ptp(vals) > 1e-7:
                raise WickgitError("root space split failed: non-generic combination")
            lam.append(_clean(float(np.mean(vals))))
        key = tuple(lam)
        groups.setdefault(key, []).append(V)
    roots, spaces = [], {}
    m_dim = 0
    for key, Vs in groups.items():
        V = np.hstack(Vs)
        if all(abs(x) < tol for x in key):
            m_dim = V.shape[1] - k
            spaces[key] = V
            continue
        roots.append((key, V.shape[1]))
        spaces[key] = V
    roots.sort(key=lambda r: tuple(-x for x in r[0]))
    positive = [r for r, _ in roots if _lex_positive(r)]
    simple = []
    pos_set = [np.array(r, dtype=float) for r in positive]
    for r in positive:
        rv = np.array(r, dtype=float)
        decomposable = any(
            np.allclose(rv, s1 + s2, atol=1e-9)
            for s1, s2 in itertools.combinations_with_replacement(pos_set, 2)
        )
        if not decomposable:
            simple.append(r)
    return RestrictedRootSystem(g, a, a_mats, roots, simple, "lexicographic", m_dim, spaces)


# ---------------------------------------------------------------- boost generators

@dataclass
class BoostGenerators:
    x_list: list  # real n x n matrices spanning a
    normalization: str
    duality: np.ndarray | None = None  # alpha_J(X^I) matrix for the simple-dual choice

    @property
    def k(self):
        return len(self.x_list)

    def commute_norm(self) -> float:
        return max((float(np.max(np.abs(_bracket(x, y)))) for x, y in itertools.combinations(self.x_list, 2)),
                   default=0.0)


def boost_generators(rs: RestrictedRootSystem, normalization: str = "simple-dual") -> BoostGenerators:
    """Generators X^I of a.

    "simple-dual": alpha_J(X^I) = delta^I_J against the simple roots.
    "orthogonal":  X^I = a_I, the elementary boosts of the null-frame construction; these
                   give the index-counting weights (#(2I) - #(2I-1)) on a null coframe.
    """
    k = rs.rank
    if normalization == "orthogonal":
        return BoostGenerators([m / np.sqrt(np.sum(m * m) / 2) for m in rs.a_mats], "orthogonal")
    if normalization != "simple-dual":
        raise ValueError(f"unknown normalization {normalization!r}")
    if len(rs.simple_roots) != k:
        raise SingularSystemError(f"expected {k} simple roots, found {len(rs.simple_roots)}")
    if k == 0:
        return BoostGenerators([], "simple-dual", np.zeros((0, 0)))
    # the functional coefficients refer to the a_mats basis as stored (unit trace norm basis)
    S = np.array(rs.simple_roots, dtype=float)  # S[J, m] = alpha_J(a_m)
    if abs(np.linalg.det(S)) < 1e-12:
        raise SingularSystemError("simple-root matrix is singular")
    # exact solve over Q (simple-root coefficients are rational in the standard basis)
    Sf = [[Fraction(x).limit_denominator(10**6) for x in row] for row in S]
    C = _exact_inverse(Sf)  # C[m][I]
    xs = []
    for I in range(k):
        xs.append(sum(float(C[m][I]) * rs.a_mats[m] for m in range(k)))
    D = np.array([[sum(S[J, m] * float(C[m][I]) for m in range(k)) for I in range(k)] for J in range(k)])
    return BoostGenerators(xs, "simple-dual", D)


def _exact_inverse(A):
    from .numkernel import exact_inverse

    return exact_inverse(A)


# ---------------------------------------------------------------- tensor actions

def tensor_act(x, T) -> np.ndarray:
    """Derivation action on a covariant tensor: (x.T)_{a..} = -sum_slots x_{e a} T_{..e..}."""
    T = np.asarray(T)
    x = np.asarray(x)
    out = np.zeros(T.shape, dtype=np.result_type(T, x))
    for s in range(T.ndim):
        # contract slot s of T with the first index of x
        moved = np.tensordot(x, T, axes=([0], [s]))  # new axis 0 is the old slot s
        out -= np.moveaxis(moved, 0, s)
    return out


def tensor_group_act(g, T) -> np.ndarray:
    """(g.T)(v_1, ..) = T(g^{-1} v_1, ..) on covariant components."""
    ginv = np.linalg.inv(np.asarray(g))
    return transform_covariant(T, ginv)


def transform_covariant(T, M) -> np.ndarray:
    """T'_{a b ..} = sum T_{i j ..} M_{i a} M_{j b} ..."""
    T = np.asarray(T)
    for s in range(T.ndim):
        T = np.moveaxis(np.tensordot(T, M, axes=([s], [0])), -1, s)
    return T


def null_frame(x: BoostGenerators, tol=1e-10):
    """Euclidean-orthonormal simultaneous eigenframe of the (symmetric) generators.

    Returns (P, mu) with P[:, a] the a-th frame vector and mu[a, I] its eigenvalue under X^I.
    """
    if x.k == 0:
        raise ValueError("no generators")
    n = x.x_list[0].shape[0]
    weights = [1.0 + 0.37 * np.sqrt(I + 2) for I in range(x.k)]
    Y = sum(w * X for w, X in zip(weights, x.x_list))
    evals, P = np.linalg.eigh(0.5 * (Y + Y.T))
    mu = np.array([[P[:, a] @ X @ P[:, a] for X in x.x_list] for a in range(n)])
    for X in x.x_list:
        R = X @ P - P @ np.diag([P[:, a] @ X @ P[:, a] for a in range(n)])
        if np.max(np.abs(R)) > 1e-8:
            raise WickgitError("generators are not simultaneously diagonal in the computed frame")
    return P, mu


# ---------------------------------------------------------------- boost-weight decomposition

@dataclass
class BoostWeightDecomp:
    k: int
    components: dict  # weight tuple -> component array (original frame)
    support: set

    def reconstruct(self):
        arrs = list(self.components.values())
        return sum(arrs[1:], arrs[0]) if arrs else None

    def to_json(self):
        return {"k": self.k, "support": sorted([list(b) for b in self.support])}


def bw_decompose(t, x: BoostGenerators, tol: float = 1e-12, weight_tol: float = WEIGHT_TOL) -> BoostWeightDecomp:
    """Split a covariant tensor into simultaneous eigencomponents of the tensorial X^I actions.

    The covector dual to a frame vector with X^I-eigenvalue mu carries weight -mu.
    """
    T = np.asarray(t)
    if x.k == 0:
        return BoostWeightDecomp(0, {(): T.copy()}, {()} if np.any(T) else set())
    n = x.x_list[0].shape[0]
    if any(s != n for s in T.shape):
        raise ShapeError(f"tensor shape {T.shape} does not match n={n}")
    P, mu = null_frame(x)
    cw = -mu  # covector weights per frame index
    rounded = np.round(cw)
    if np.max(np.abs(cw - rounded)) > weight_tol:
        raise NonIntegerWeightError(
            "non-integer boost weight (tensor frame and generators do not match)",
            weights=cw.tolist(),
        )
    cw = rounded.astype(int)
    Tn = transform_covariant(T, P)  # components in the eigenframe
    d = T.ndim
    scale = max(1.0, float(np.max(np.abs(T)))) if T.size else 1.0
    groups = {}
    for idx in itertools.product(range(n), repeat=d):
        b = tuple(int(v) for v in np.sum(cw[list(idx)], axis=0)) if d else (0,) * x.k
        groups.setdefault(b, []).append(idx)
    comps, support = {}, set()
    for b, idxs in groups.items():
        Cn = np.zeros_like(Tn)
        for idx in idxs:
            Cn[idx] = Tn[idx]
        C = transform_covariant(Cn, P.T)
        comps[b] = C
        if np.max(np.abs(C), initial=0.0) > tol * scale:
            support.add(b)
    comps = {b: c for b, c in comps.items() if b in support} or {(0,) * x.k: np.zeros_like(T)}
    return BoostWeightDecomp(x.k, comps, support)


def null_frame_pq(p: int, q: int) -> np.ndarray:
    """Columns E_1..E_n: for I <= k, E_{2I-1} = (t_I + s_I)/sqrt2, E_{2I} = (s_I - t_I)/sqrt2,
    then the unpaired directions. Null pairs satisfy g(E_{2I-1}, E_{2I}) = 1."""
    n = p + q
    k = min(p, q)
    cols = []
    r = 1 / np.sqrt(2)
    for I in range(k):
        t = np.eye(n)[I]
        s = np.eye(n)[p + I]
        cols.append(r * (t + s))
        cols.append(r * (s - t))
    used = set(range(k)) | {p + I for I in range(k)}
    cols += [np.eye(n)[j] for j in range(n) if j not in used]
    return np.column_stack(cols)


# ---------------------------------------------------------------- S^G property

@dataclass
class SGResult:
    lam: tuple | None
    strict: bool
    strict_count: int = 0

    def to_json(self):
        return {"lambda": list(self.lam) if self.lam is not None else None, "strict": self.strict}


def _primitive(v):
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints) if g else tuple(ints)


def sg_property(support, method: str = "auto") -> SGResult:
    """Find lambda with b.lambda <= 0 for all b in the support, strictly for at least one.

    k <= 3 (or method="exact"): exact enumeration of the extreme rays of the cone
    {lambda : B lambda <= 0} modulo its lineality space. Otherwise an LP.
    Among candidates the one with the most strict inequalities wins.
    """
    G = sorted({tuple(int(x) for x in b) for b in support})
    if not G:
        raise ValueError("support must be nonempty")
    k = len(G[0])
    if method == "auto":
        method = "exact" if k <= 3 else "lp"
    if method == "lp":
        return _sg_lp(G, k)
    rows = [list(b) for b in G]
    r = exact_rank(rows)
    if r == 0:
        return SGResult(tuple([0] * k), False, 0)
    rays = _extreme_rays(G, k, r)
    if not rays:
        return SGResult(tuple([0] * k), False, 0)
    cands = list(rays)
    if len(rays) > 1:
        cands.append(_primitive([sum(ray[i] for ray in rays) for i in range(k)]))
    best = None
    for lam in cands:
        vals = [sum(bi * li for bi, li in zip(b, lam)) for b in G]
        if any(v > 0 for v in vals):
            continue
        cnt = sum(1 for v in vals if v < 0)
        if cnt and (best is None or cnt > best[1]):
            best = (lam, cnt)
    return SGResult(best[0], True, best[1])


def _extreme_rays(G, k, r):
    """Primitive integer generators of the rays of {B lam <= 0} inside the row space of B."""
    rows = [list(b) for b in G]
    lineality = exact_nullspace(rows, k)
    rays = []
    for size in range(r):
        for S in itertools.combinations(range(len(G)), size):
            eqs = [rows[i] for i in S] + [list(v) for v in lineality]
            null = exact_nullspace(eqs, k) if eqs else exact_nullspace([], k)
            if len(null) != 1:
                continue
            for sgn in (1, -1):
                lam = [sgn * x for x in null[0]]
                vals = [sum(Fraction(bi) * li for bi, li in zip(b, lam)) for b in G]
                if all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                    prim = _primitive(lam)
                    if prim not in rays:
                        rays.append(prim)
    return rays


def _sg_lp(G, k) -> SGResult:
    from scipy.optimize import linprog

    B = np.array(G, dtype=float)
    # minimise sum_b b.lambda subject to B lambda <= 0, |lambda_i| <= 1
    res = linprog(B.sum(axis=0), A_ub=B, b_ub=np.zeros(len(G)), bounds=[(-1, 1)] * k, method="highs")
    if res.status != 0 or res.fun > -1e-9:
        return SGResult(tuple([0] * k), False, 0)
    lam = res.x
    vals = B @ lam
    if np.max(vals) > 1e-9:
        return SGResult(tuple([0] * k), False, 0)
    scale = np.max(np.abs(lam))
    lam = lam / scale
    return SGResult(tuple(float(x) for x in lam), True, int(np.sum(vals < -1e-9)))

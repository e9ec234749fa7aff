"""Dense linear algebra helpers, exact rational matrices and the spectral normal forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg as sla

from .errors import (
    AmbientMismatchError,
    DegenerateFormError,
    NotSkewError,
    NotSymmetricError,
    ShapeError,
)
from .poly import Poly  # noqa: F401  (re-exported)

SKEW_TOL = 1e-10
ZERO_EIG_TOL = 1e-9


def as_mat(m, dtype=None) -> np.ndarray:
    a = np.asarray(m, dtype=dtype)
    if a.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of shape {a.shape}")
    if a.dtype != object and not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _is_exact(a: np.ndarray) -> bool:
    if a.dtype == object:
        return all(isinstance(x, (int, Fraction)) for x in a.flat)
    return a.dtype.kind in "iu"


# ---------------------------------------------------------------- characteristic polynomial

def char_poly(m) -> list:
    """Coefficients [1, c1, ..., cn] of det(lambda*I - m), highest degree first.

    Integer and Fraction inputs are handled exactly (Faddeev-LeVerrier over Q);
    floating inputs use the eigenvalue product.
    """
    a = as_mat(m if not isinstance(m, np.ndarray) else m, dtype=None)
    n, k = a.shape
    if n != k:
        raise ShapeError(f"char_poly needs a square matrix, got {a.shape}")
    if n == 0:
        return [1]
    if _is_exact(a):
        A = [[Fraction(x) for x in row] for row in a.tolist()]
        coeffs = [Fraction(1)]
        M = [[Fraction(0)] * n for _ in range(n)]
        for kk in range(1, n + 1):
            # M_k = A M_{k-1} + c_{k-1} I
            AM = _fmatmul(A, M)
            c_prev = coeffs[-1]
            M = [[AM[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
            AM = _fmatmul(A, M)
            c = -sum(AM[i][i] for i in range(n)) / kk
            coeffs.append(c)
        return coeffs
    c = np.poly(a.astype(complex))
    if np.isrealobj(a) or np.max(np.abs(c.imag)) < 1e-12 * max(1.0, np.max(np.abs(c))):
        c = c.real
    return list(c)


# ---------------------------------------------------------------- exact rational linear algebra

def _fmatmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def frac_matrix(m):
    return [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]


def exact_rref(rows):
    """Reduced row echelon form over Q. Returns (rref rows, pivot columns)."""
    R = [[Fraction(x) for x in row] for row in rows]
    if not R:
        return R, []
    ncol = len(R[0])
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def exact_nullspace(rows, ncol=None):
    """Basis (list of Fraction vectors) of {x : rows @ x = 0} over Q."""
    if not rows:
        n = ncol or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, piv = exact_rref(rows)
    n = len(R[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def exact_rank(rows) -> int:
    return len(exact_rref(rows)[1]) if rows else 0


def exact_inverse(m):
    A = frac_matrix(m)
    n = len(A)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = exact_rref(aug)
    if piv[:n] != list(range(n)):
        raise DegenerateFormError("matrix is singular")
    return [row[n:] for row in R]


# ---------------------------------------------------------------- spectral normal forms

@dataclass(frozen=True)
class SkewBlocks:
    rotations: tuple  # nonnegative rotation parameters, descending
    zeros: int

    def matrix(self) -> np.ndarray:
        n = 2 * len(self.rotations) + self.zeros
        out = np.zeros((n, n))
        for i, x in enumerate(self.rotations):
            out[2 * i, 2 * i + 1] = x
            out[2 * i + 1, 2 * i] = -x
        return out


def skew_normal_form(m, tol: float = SKEW_TOL, zero_tol: float = ZERO_EIG_TOL):
    """Orthogonal g with g m g^T = blockdiag([[0,x1],[-x1,0]], ..., 0, ..., 0).

    Rotation parameters are nonnegative and sorted descending, zeros last.
    """
    a = as_mat(m, dtype=float)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ShapeError("skew_normal_form needs a square matrix")
    scale = max(1.0, np.max(np.abs(a))) if a.size else 1.0
    if np.max(np.abs(a + a.T), initial=0.0) > tol * scale:
        raise NotSkewError("matrix is not skew-symmetric within tolerance")
    a = 0.5 * (a - a.T)
    if n == 0:
        return np.zeros((0, 0)), SkewBlocks((), 0)
    # i*a is Hermitian; its eigenvalues come in +-x pairs
    w, vecs = np.linalg.eigh(1j * a)
    thr = zero_tol * scale
    pos = [i for i in np.argsort(-w) if w[i] > thr]
    rows = []
    params = []
    for i in pos:
        z = vecs[:, i]
        # for i*a z = x z one has a (Re z) = x Im z and a (Im z) = -x Re z
        e1 = np.sqrt(2.0) * z.real
        e2 = np.sqrt(2.0) * z.imag
        rows.extend([e2, e1])
        params.append(float(w[i]))
    basis = np.array(rows).reshape(len(rows), n)
    k = n - basis.shape[0]
    if k:
        comp = sla.null_space(basis) if basis.shape[0] else np.eye(n)
        basis = np.vstack([basis, comp.T])
    g = basis
    # sign fix: make each block's upper entry positive
    nf = g @ a @ g.T
    for b in range(len(params)):
        if nf[2 * b, 2 * b + 1] < 0:
            g[2 * b] *= -1
    return g, SkewBlocks(tuple(params), k)


def svd_block(a):
    """h in O(p), g in O(q), sigma descending nonnegative with h^T a g = diag(sigma)."""
    a = as_mat(a, dtype=float)
    h, s, gt = np.linalg.svd(a, full_matrices=True)
    return h, gt.T, s


def form_signature(b, tol: float = SKEW_TOL, zero_tol: float = ZERO_EIG_TOL):
    """(number of negative eigenvalues, number of positive eigenvalues) of a symmetric form."""
    a = as_mat(b)
    if a.dtype == object:
        a = a.astype(float)
    a = a.astype(float)
    if a.shape[0] != a.shape[1]:
        raise ShapeError("form_signature needs a square matrix")
    if a.size == 0:
        return (0, 0)
    scale = max(1.0, np.max(np.abs(a)))
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise NotSymmetricError("form is not symmetric within tolerance")
    w = np.linalg.eigvalsh(0.5 * (a + a.T))
    small = np.abs(w) <= zero_tol * scale
    if np.any(small):
        raise DegenerateFormError(
            f"form is degenerate: {int(small.sum())} eigenvalue(s) below threshold",
            eigenvalues=w.tolist(),
        )
    return (int(np.sum(w < 0)), int(np.sum(w > 0)))


def exact_form_signature(b):
    """Signature of a rational symmetric form, exactly.

    All eigenvalues of a real symmetric matrix are real, so Descartes' rule of signs
    applied to the exact characteristic polynomial counts them without error.
    """
    A = frac_matrix(b)
    n = len(A)
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise NotSymmetricError("form is not symmetric")
    c = char_poly(np.array(A, dtype=object))
    if c[-1] == 0:
        raise DegenerateFormError("form is degenerate")

    def changes(seq):
        s = [x for x in seq if x != 0]
        return sum(1 for x, y in zip(s, s[1:]) if (x < 0) != (y < 0))

    pos = changes(c)
    neg = changes([x * (-1) ** (n - i) for i, x in enumerate(c)])
    return (neg, pos)


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Column span of `basis` inside an ambient space of dimension `ambient_dim`.

    `field` is "real" or "complex". `shape`, when set, reshapes basis columns into
    structured elements (for instance matrices).
    """

    ambient_dim: int
    basis: np.ndarray
    field: str = "real"
    shape: tuple | None = None

    def __post_init__(self):
        b = np.asarray(self.basis)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise ShapeError(f"basis must have {self.ambient_dim} rows, got shape {b.shape}")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def elements(self):
        if self.shape is None:
            return [self.basis[:, i] for i in range(self.dim)]
        return [self.basis[:, i].reshape(self.shape) for i in range(self.dim)]

    @classmethod
    def span(cls, vectors, ambient_dim=None, field="real", shape=None, tol=1e-10):
        vecs = [np.asarray(v).reshape(-1) for v in vectors]
        if ambient_dim is None:
            if not vecs:
                raise ShapeError("ambient dimension needed for an empty span")
            ambient_dim = vecs[0].size
        dt = complex if field == "complex" else float
        if not vecs:
            return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=dt), field, shape)
        m = np.column_stack(vecs).astype(dt)
        return cls(ambient_dim, orth(m, tol), field, shape)

    def contains(self, x, tol=1e-10) -> bool:
        x = np.asarray(x).reshape(-1)
        if self.dim == 0:
            return np.linalg.norm(x) <= tol
        c, *_ = np.linalg.lstsq(self.basis, x, rcond=None)
        return np.linalg.norm(self.basis @ c - x) <= tol * max(1.0, np.linalg.norm(x))

    def projector(self) -> np.ndarray:
        q = orth(self.basis)
        return q @ q.conj().T


def orth(m, tol=1e-10) -> np.ndarray:
    """Orthonormal basis of the column span, rank decided relative to the top singular value."""
    m = np.asarray(m)
    if m.size == 0 or m.shape[1] == 0:
        return np.zeros((m.shape[0], 0), dtype=m.dtype)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((m.shape[0], 0), dtype=m.dtype)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    return u[:, :r]


def numeric_rank(m, tol=1e-10) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * max(1.0, s[0])))


def subspace_meet(u: Subspace, v: Subspace, tol: float = 1e-10) -> Subspace:
    """Intersection of two subspaces, from the null space of [U, -V]."""
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise AmbientMismatchError(
            f"cannot intersect subspaces of {u.field}^{u.ambient_dim} and {v.field}^{v.ambient_dim}"
        )
    n = u.ambient_dim
    dt = complex if u.field == "complex" else float
    if u.dim == 0 or v.dim == 0:
        return Subspace(n, np.zeros((n, 0), dtype=dt), u.field, u.shape)
    U = orth(u.basis, tol)
    V = orth(v.basis, tol)
    M = np.hstack([U, -V])
    _, s, vh = np.linalg.svd(M)
    r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
    null = vh[r:].conj().T
    if null.shape[1] == 0:
        return Subspace(n, np.zeros((n, 0), dtype=dt), u.field, u.shape)
    vecs = U @ null[: U.shape[1]]
    return Subspace(n, orth(vecs, tol).astype(dt), u.field, u.shape)


def subspace_sum(u: Subspace, v: Subspace, tol: float = 1e-10) -> Subspace:
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise AmbientMismatchError("cannot add subspaces of different ambient spaces")
    return Subspace(u.ambient_dim, orth(np.hstack([u.basis, v.basis]), tol), u.field, u.shape)

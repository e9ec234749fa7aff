"""Real forms of o(n,C), conjugation maps, Cartan involutions and compatible triples.

Elements of o(n,C) are complex antisymmetric n x n matrices. The real form o(p,q)
sits inside through the slice R^n_p = span(i e_1, ..., i e_p, e_{p+1}, ..., e_n),
so the first p (timelike) directions carry a factor i:

    t = real antisymmetric matrices supported on same-sign index pairs,
    p = i * (antisymmetric matrices supported on mixed index pairs).

The "real frame" version of an element Y is D^{-1} Y D with D = diag(i,..,i,1,..,1);
it is a real matrix preserving diag(-1,..,-1,1,..,1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbientMismatchError, DegenerateFormError, SchemaError, ShapeError
from .numkernel import Subspace, form_signature, numeric_rank, orth, subspace_meet

COMMUTE_TOL = 1e-12


# ---------------------------------------------------------------- antilinear maps

@dataclass(frozen=True)
class AntilinearMap:
    """z -> sign * m @ conj(z)            (kind="vector")
       X -> sign * m @ conj(X) @ m^{-1}   (kind="adjoint")"""

    matrix: np.ndarray
    sign: int = 1
    kind: str = "adjoint"

    def __call__(self, z):
        m = self.matrix
        if self.kind == "vector":
            return self.sign * (m @ np.conj(z))
        return self.sign * (m @ np.conj(z) @ np.linalg.inv(m))

    def then(self, other: "AntilinearMap"):
        """The complex-linear map other(self(.))."""
        return lambda z: other(self(z))

    def is_involution(self, basis, tol=1e-12) -> bool:
        return all(np.max(np.abs(self(self(b)) - b)) <= tol * max(1.0, np.max(np.abs(b))) for b in basis)


def commutator_norm(s1: AntilinearMap, s2: AntilinearMap, basis) -> float:
    """max over a complex basis (and i times it) of |s1 s2 z - s2 s1 z|."""
    worst = 0.0
    for b in basis:
        for z in (b, 1j * b):
            d = s1(s2(z)) - s2(s1(z))
            worst = max(worst, float(np.max(np.abs(d))))
    return worst


# ---------------------------------------------------------------- realification of o(n,C)

def antisym_basis(n: int):
    """Complex basis E_ij - E_ji (i<j) of o(n,C)."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        e = np.zeros((n, n), dtype=complex)
        e[i, j], e[j, i] = 1, -1
        out.append(e)
    return out


def realify(X) -> np.ndarray:
    """Real coordinates (Re, Im of the upper-triangular entries) of X in o(n,C)."""
    X = np.asarray(X)
    iu = np.triu_indices(X.shape[0], 1)
    z = X[iu]
    return np.concatenate([z.real, z.imag]).astype(float)


def derealify(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    m = n * (n - 1) // 2
    z = x[:m] + 1j * x[m:]
    X = np.zeros((n, n), dtype=complex)
    iu = np.triu_indices(n, 1)
    X[iu] = z
    return X - X.T


@dataclass(frozen=True)
class ComplexStructure:
    ambient_dim: int
    j: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.j, dtype=float)
        if j.shape != (self.ambient_dim, self.ambient_dim):
            raise ShapeError("complex structure has the wrong shape")
        if np.max(np.abs(j @ j + np.eye(self.ambient_dim)), initial=0.0) > 1e-12:
            raise ValueError("J o J != -Id")
        object.__setattr__(self, "j", j)

    @classmethod
    def standard(cls, m: int) -> "ComplexStructure":
        """Multiplication by i on R^{2m} laid out as (Re, Im)."""
        z = np.zeros((m, m))
        return cls(2 * m, np.block([[z, -np.eye(m)], [np.eye(m), z]]))

    def apply(self, w: Subspace) -> Subspace:
        return Subspace(w.ambient_dim, self.j @ w.basis, w.field, w.shape)


def vector_realify(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    return np.concatenate([z.real, z.imag])


def real_span_of_vectors(vectors) -> Subspace:
    """Real span of complex vectors, as a subspace of the realification R^{2n}."""
    vecs = [vector_realify(v) for v in vectors]
    n2 = vecs[0].size
    return Subspace.span(vecs, ambient_dim=n2)


def is_totally_real(w: Subspace, j: ComplexStructure) -> bool:
    if w.ambient_dim != j.ambient_dim:
        raise AmbientMismatchError("subspace and complex structure live in different spaces")
    return subspace_meet(w, j.apply(w)).dim == 0


@dataclass(frozen=True)
class SliceReport:
    slice: bool
    signature: tuple | None
    reason: str = ""

    def __bool__(self):
        return self.slice


def is_real_slice(w, g, tol: float = 1e-12) -> SliceReport:
    """Is g (holomorphic symmetric bilinear, z^T g z') real and nondegenerate on w?

    `w` is a list of complex vectors spanning a real subspace, or a realified Subspace.
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if isinstance(w, Subspace):
        if w.ambient_dim != 2 * n:
            raise AmbientMismatchError("subspace is not inside the realification of C^n")
        vecs = [b[:n] + 1j * b[n:] for b in w.basis.T]
    else:
        vecs = [np.asarray(v, dtype=complex) for v in w]
    B = np.array([[a @ g @ b for b in vecs] for a in vecs])
    scale = max(1.0, float(np.max(np.abs(B)))) if B.size else 1.0
    if B.size and np.max(np.abs(B.imag)) > tol * scale:
        return SliceReport(False, None, "form takes non-real values")
    try:
        sig = form_signature(B.real)
    except DegenerateFormError:
        return SliceReport(False, None, "restriction is degenerate")
    return SliceReport(True, sig)


def slice_vectors(p: int, q: int):
    """Basis i e_1..i e_p, e_{p+1}..e_n of R^n_p."""
    n = p + q
    return [(1j if k < p else 1.0) * np.eye(n, dtype=complex)[k] for k in range(n)]


# ---------------------------------------------------------------- real Lie algebras (real frame)

@dataclass
class RealLieAlgebra:
    """A real matrix Lie algebra with Cartan decomposition g = t + p and theta(x) = -x^T.

    t_mats are skew, p_mats symmetric, both orthonormal for <x,y> = tr(x^T y).
    """

    name: str
    n: int
    t_mats: list
    p_mats: list
    group: str = "O(p,q)"
    signature: tuple | None = None

    @property
    def basis(self):
        return list(self.t_mats) + list(self.p_mats)

    @property
    def dim(self):
        return len(self.t_mats) + len(self.p_mats)

    @staticmethod
    def theta(x):
        return -np.asarray(x).T

    def coords(self, x) -> np.ndarray:
        """Coordinates of x in `basis` (least squares, exact for members)."""
        B = np.array([b.reshape(-1) for b in self.basis]).T
        c, *_ = np.linalg.lstsq(B, np.asarray(x, dtype=float).reshape(-1), rcond=None)
        return c

    def member_residual(self, x) -> float:
        c = self.coords(x)
        B = np.array([b.reshape(-1) for b in self.basis]).T
        return float(np.linalg.norm(B @ c - np.asarray(x).reshape(-1)))


def sl2_real() -> RealLieAlgebra:
    H = np.array([[1.0, 0], [0, -1]])
    S = np.array([[0.0, 1], [1, 0]])
    R = np.array([[0.0, 1], [-1, 0]])
    s = 1 / np.sqrt(2)
    return RealLieAlgebra("sl(2,R)", 2, [s * R], [s * H, s * S], group="SL(2,R)")


def o_pq_real(p: int, q: int) -> RealLieAlgebra:
    n = p + q
    t, pp = [], []
    s = 1 / np.sqrt(2)
    for i, j in itertools.combinations(range(n), 2):
        e = np.zeros((n, n))
        same = (i < p) == (j < p)
        if same:
            e[i, j], e[j, i] = s, -s
            t.append(e)
        else:
            e[i, j], e[j, i] = s, s
            pp.append(e)
    return RealLieAlgebra(f"o({p},{q})", n, t, pp, signature=(p, q))


# ---------------------------------------------------------------- real forms of o(n,C)

def ipq(p: int, q: int) -> np.ndarray:
    return np.diag([-1.0] * p + [1.0] * q).astype(complex)


@dataclass
class RealForm:
    """o(p,q) embedded in o(n,C) as A o(p,q)_std A^{-1} for a complex orthogonal A.

    conjugation: sigma(X) = c conj(X) c^{-1} with c = A I_{p,q} conj(A)^{-1}
    compact:     tau(X)   = k conj(X) k^{-1}  with k = A conj(A)^{-1}; theta = tau restricted.
    """

    n: int
    signature: tuple
    conjugator: np.ndarray
    conjugation: AntilinearMap
    compact_conjugation: AntilinearMap
    t_mats: list
    p_mats: list
    t_basis: Subspace = field(repr=False)
    p_basis: Subspace = field(repr=False)
    slice_basis: np.ndarray = field(repr=False)

    @property
    def p(self):
        return self.signature[0]

    @property
    def q(self):
        return self.signature[1]

    @property
    def basis(self):
        return list(self.t_mats) + list(self.p_mats)

    @property
    def dim(self):
        return len(self.t_mats) + len(self.p_mats)

    @property
    def space(self) -> Subspace:
        return Subspace.span([realify(b) for b in self.basis], ambient_dim=self.n * (self.n - 1)) \
            if self.basis else Subspace(self.n * (self.n - 1), np.zeros((self.n * (self.n - 1), 0)))

    def theta(self, X):
        return self.compact_conjugation(X)

    @property
    def vector_conjugation(self) -> AntilinearMap:
        return AntilinearMap(self.conjugation.matrix, self.conjugation.sign, "vector")

    @property
    def is_standard(self) -> bool:
        return np.allclose(self.conjugator, np.eye(self.n))

    def to_real_frame(self, X) -> np.ndarray:
        """Real matrix of X with respect to the real basis of the slice."""
        S = self.slice_basis
        Y = np.linalg.solve(S, np.asarray(X) @ S)
        if np.max(np.abs(Y.imag), initial=0.0) > 1e-9 * max(1.0, np.max(np.abs(Y))):
            raise ValueError("element is not in the real form")
        return Y.real

    def from_real_frame(self, Y) -> np.ndarray:
        S = self.slice_basis
        return S @ np.asarray(Y) @ np.linalg.inv(S)

    def real_algebra(self) -> RealLieAlgebra:
        return o_pq_real(self.p, self.q)

    def to_json(self):
        out = {"n": self.n, "p": self.p, "q": self.q}
        if self.is_standard:
            out["embedding"] = "standard"
        else:
            out["embedding"] = {"conjugator": complex_matrix_to_json(self.conjugator)}
        return out


def _subspace_of(mats, n):
    amb = n * (n - 1)
    if not mats:
        return Subspace(amb, np.zeros((amb, 0)))
    return Subspace.span([realify(m) for m in mats], ambient_dim=amb)


def build_o_pq(p: int, q: int, conjugator=None) -> RealForm:
    """o(p,q) inside o(n,C); with `conjugator` A (complex orthogonal) the image A o(p,q) A^{-1}."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("need p, q >= 0 and p + q >= 1")
    n = p + q
    A = np.eye(n, dtype=complex) if conjugator is None else np.asarray(conjugator, dtype=complex)
    if A.shape != (n, n):
        raise ShapeError(f"conjugator must be {n}x{n}")
    if np.max(np.abs(A.T @ A - np.eye(n))) > 1e-10 * max(1.0, np.max(np.abs(A)) ** 2):
        raise ValueError("conjugator is not complex orthogonal (A^T A != I)")
    Ainv = A.T
    t, pp = [], []
    for i, j in itertools.combinations(range(n), 2):
        e = np.zeros((n, n), dtype=complex)
        if (i < p) == (j < p):
            e[i, j], e[j, i] = 1, -1
            t.append(A @ e @ Ainv)
        else:
            e[i, j], e[j, i] = 1j, -1j
            pp.append(A @ e @ Ainv)
    c = A @ ipq(p, q) @ np.linalg.inv(np.conj(A))
    k = A @ np.linalg.inv(np.conj(A))
    D = np.diag([1j] * p + [1.0] * q)
    return RealForm(
        n=n,
        signature=(p, q),
        conjugator=A,
        conjugation=AntilinearMap(c, 1, "adjoint"),
        compact_conjugation=AntilinearMap(k, 1, "adjoint"),
        t_mats=t,
        p_mats=pp,
        t_basis=_subspace_of(t, n),
        p_basis=_subspace_of(pp, n),
        slice_basis=A @ D,
    )


def random_complex_orthogonal(n: int, rng, scale: float = 0.5) -> np.ndarray:
    from scipy.linalg import expm

    Z = scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return expm(Z - Z.T)


# ---------------------------------------------------------------- Killing forms

def structure_matrices(basis) -> np.ndarray:
    """ad matrices: ad[i][:, j] = coordinates of [b_i, b_j] in the basis (real span)."""
    B = np.array([_real_coords(b) for b in basis]).T
    ads = []
    for x in basis:
        cols = []
        for y in basis:
            br = x @ y - y @ x
            c, res, *_ = np.linalg.lstsq(B, _real_coords(br), rcond=None)
            cols.append(c)
        ads.append(np.array(cols).T)
    return np.array(ads)


def _real_coords(x) -> np.ndarray:
    x = np.asarray(x)
    return np.concatenate([x.real.reshape(-1), x.imag.reshape(-1)])


def killing_gram(basis) -> np.ndarray:
    ads = structure_matrices(basis)
    m = len(basis)
    K = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            K[i, j] = np.trace(ads[i] @ ads[j]).real
    return K


def is_degenerate(gram, zero_tol=1e-9) -> bool:
    g = np.asarray(gram, dtype=float)
    if g.size == 0:
        return True
    scale = max(1.0, np.max(np.abs(g)))
    return bool(np.min(np.abs(np.linalg.eigvalsh(0.5 * (g + g.T)))) <= zero_tol * scale)


def killing_form(f, strict: bool = False) -> np.ndarray:
    """Gram matrix of kappa(X,Y) = tr(ad X ad Y) on the basis t_mats + p_mats of f.

    `f` may be a RealForm, a RealLieAlgebra or a plain list of basis matrices.
    With strict=True a degenerate result raises DegenerateFormError.
    """
    basis = f if isinstance(f, (list, tuple)) else f.basis
    if not basis:
        K = np.zeros((0, 0))
    else:
        K = killing_gram(basis)
    if strict and is_degenerate(K):
        raise DegenerateFormError("Killing form is degenerate (algebra is not semisimple)")
    return K


def killing_theta_signature(f) -> tuple:
    """(dim t, dim p): the kappa-signature split, after checking -kappa(., theta .) > 0."""
    K = killing_form(f, strict=True)
    basis = f.basis
    theta = f.theta if isinstance(f, RealForm) else RealLieAlgebra.theta
    tb = [theta(b) for b in basis]
    # -kappa(x, theta y) as a Gram matrix, using ad matrices of theta-images
    full = basis + tb
    ads = structure_matrices_in(basis, full)
    m = len(basis)
    P = np.array([[-np.trace(ads[i] @ ads[m + j]).real for j in range(m)] for i in range(m)])
    if form_signature(P)[0] != 0:
        raise DegenerateFormError("-kappa(., theta .) is not positive definite")
    neg, pos = form_signature(K)
    return (neg, pos)


def structure_matrices_in(basis, elements) -> np.ndarray:
    B = np.array([_real_coords(b) for b in basis]).T
    out = []
    for x in elements:
        cols = []
        for y in basis:
            c, *_ = np.linalg.lstsq(B, _real_coords(x @ y - y @ x), rcond=None)
            cols.append(c)
        out.append(np.array(cols).T)
    return np.array(out)


def sl2_basis():
    H = np.array([[1.0, 0], [0, -1]])
    E = np.array([[0.0, 1], [0, 0]])
    F = np.array([[0.0, 0], [1, 0]])
    return H, E, F


# ---------------------------------------------------------------- compatible triples

@dataclass
class VectorRealForm:
    """A real form of C^n: the fixed set of z -> m conj(z), with a real basis."""

    n: int
    conjugation: AntilinearMap
    vectors: list
    name: str = ""

    @classmethod
    def from_signs(cls, signs):
        """Fixed set of z -> diag(s) conj(z): real where s=+1, imaginary where s=-1."""
        n = len(signs)
        m = np.diag(np.asarray(signs, dtype=complex))
        vecs = [(1.0 if s > 0 else 1j) * np.eye(n, dtype=complex)[k] for k, s in enumerate(signs)]
        return cls(n, AntilinearMap(m, 1, "vector"), vecs)

    @property
    def space(self) -> Subspace:
        return real_span_of_vectors(self.vectors)

    @property
    def ambient_space_dim(self):
        return 2 * self.n


@dataclass
class CompatibleTriple:
    f1: object
    f2: object
    compact: object


@dataclass
class TripleReport:
    commutes: bool
    commutator_norms: dict
    decomposition_dims: dict
    direct_sum_ok: bool

    def __bool__(self):
        return self.commutes

    def to_json(self):
        return {
            "commutes": self.commutes,
            "commutator_norms": self.commutator_norms,
            "decomposition_dims": self.decomposition_dims,
            "direct_sum_ok": self.direct_sum_ok,
        }


def _ambient(f):
    if isinstance(f, RealForm):
        return ("adjoint", f.n)
    return ("vector", f.n)


def _complex_basis(f):
    kind, n = _ambient(f)
    if kind == "adjoint":
        return antisym_basis(n)
    return list(np.eye(n, dtype=complex))


def _space(f) -> Subspace:
    return f.space


def _i_space(f) -> Subspace:
    s = f.space
    m = s.ambient_dim // 2
    J = ComplexStructure.standard(m)
    return J.apply(s)


def check_compatible_triple(t: CompatibleTriple, tol: float = COMMUTE_TOL) -> TripleReport:
    forms = {"f1": t.f1, "f2": t.f2, "compact": t.compact}
    kinds = {_ambient(f) for f in forms.values()}
    if len(kinds) != 1:
        raise AmbientMismatchError(f"forms live in different ambient spaces: {sorted(kinds)}")
    basis = _complex_basis(t.f1)
    norms = {}
    for a, b in (("f1", "f2"), ("f1", "compact"), ("f2", "compact")):
        norms[f"{a},{b}"] = commutator_norm(forms[a].conjugation, forms[b].conjugation, basis)
    commutes = all(v <= tol for v in norms.values())
    dims = {}
    ok = True
    for a, b in (("f1", "f2"), ("f2", "f1"), ("f1", "compact"), ("f2", "compact")):
        W, Wt = forms[a], forms[b]
        d_real = subspace_meet(_space(W), _space(Wt)).dim
        d_imag = subspace_meet(_space(W), _i_space(Wt)).dim
        dims[f"{a}^{b}"] = d_real
        dims[f"{a}^i{b}"] = d_imag
        if commutes and d_real + d_imag != _space(W).dim:
            ok = False
    return TripleReport(commutes, norms, dims, ok if commutes else False)


def intersect_cartan_parts(t: CompatibleTriple) -> tuple:
    f1, f2 = t.f1, t.f2
    return (subspace_meet(f1.t_basis, f2.t_basis).dim, subspace_meet(f1.p_basis, f2.p_basis).dim)


def standard_triple(p1, q1, p2, q2) -> CompatibleTriple:
    n = p1 + q1
    if p2 + q2 != n:
        raise AmbientMismatchError("the two real forms must have the same n")
    return CompatibleTriple(build_o_pq(p1, q1), build_o_pq(p2, q2), build_o_pq(0, n))


def is_simple_noncompact(p: int, q: int) -> bool:
    n = p + q
    return p > 0 and q > 0 and n >= 3 and not (p == 2 and q == 2)


def isomorphic(a: tuple, b: tuple) -> bool:
    return tuple(sorted(a)) == tuple(sorted(b))


# ---------------------------------------------------------------- JSON

def complex_matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict) and "re" in obj:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise SchemaError("re and im parts have different shapes")
        return re + 1j * im
    if isinstance(obj, list):
        return np.asarray(obj, dtype=float).astype(complex)
    raise SchemaError("complex matrix must be {'re': [[..]], 'im': [[..]]} or a nested list")


def complex_matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def real_form_from_json(doc) -> RealForm:
    if not isinstance(doc, dict):
        raise SchemaError("real form must be a JSON object")
    for key in ("n", "p", "q"):
        if not isinstance(doc.get(key), int):
            raise SchemaError(f"field {key!r} must be an integer")
    n, p, q = doc["n"], doc["p"], doc["q"]
    if p + q != n or p < 0 or q < 0 or n < 1:
        raise SchemaError(f"inconsistent signature: n={n}, p={p}, q={q}")
    emb = doc.get("embedding", "standard")
    if emb == "standard":
        return build_o_pq(p, q)
    if isinstance(emb, dict) and "conjugator" in emb:
        return build_o_pq(p, q, complex_matrix_from_json(emb["conjugator"]))
    raise SchemaError("embedding must be 'standard' or {'conjugator': matrix}")


def parse_form_name(name: str):
    """Shorthand 'o31' -> o(3,1), 'o4' -> o(0,4) compact, 'sl2' -> sl(2,R)."""
    name = name.strip().lower()
    if name in ("sl2", "sl2r"):
        return sl2_real()
    if name.startswith("o") and name[1:].isdigit():
        digits = name[1:]
        if len(digits) == 2:
            return build_o_pq(int(digits[0]), int(digits[1]))
        if len(digits) == 1:
            return build_o_pq(0, int(digits))
    raise SchemaError(f"unknown form name {name!r}")

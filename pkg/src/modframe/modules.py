"""Hilbert A-modules over A = M_n(C), their operators and A-valued forms.

Every module is realised inside an ambient space of ``n x w`` complex matrices
with the inner product ``<X, Y>_A = X Y*`` and left action ``a . X = a X``:

* ``free(d, n)`` is A^d, stored as ``[x_1 | ... | x_d]`` (``w = d n``);
  coordinates are the blocks ``x_i`` flattened row-major, block after block.
* ``pattern(p, q, P)`` is the complex subspace of ``p x q`` matrices supported
  on the 1-based positions ``P``; coordinates follow ``P`` sorted row-major.

Coordinates are plain entries of the ambient matrix, so the trace form
``tr <x, y>_A`` is the standard inner product of coordinate vectors.  Operators
are stored as coordinate matrices; their trace adjoint is the conjugate
transpose, and A-linearity / the A-valued adjoint identity are checked at
runtime.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import algebra as alg
from .algebra import DEFAULT_TOL, Status, ToleranceConfig, Verdict
from .errors import DomainError, InputError, NotAdjointable

_LINEAR_RTOL = 1e-10


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@dataclass(frozen=True)
class ModuleSpace:
    kind: str
    n: int
    width: int
    positions: tuple
    rank: Optional[int] = None
    cells: Optional[tuple] = None

    @classmethod
    def free(cls, rank: int, algebra_dim: int) -> "ModuleSpace":
        d, n = int(rank), int(algebra_dim)
        if d < 1 or n < 1:
            raise InputError(f"free module needs rank >= 1 and algebra_dim >= 1, got ({d}, {n})")
        pos = tuple((r, i * n + c) for i in range(d) for r in range(n) for c in range(n))
        return cls("free", n, d * n, pos, rank=d)

    @classmethod
    def pattern(cls, rows: int, cols: int, pattern: Iterable) -> "ModuleSpace":
        p, q = int(rows), int(cols)
        if p < 1 or q < 1:
            raise InputError(f"pattern module needs rows, cols >= 1, got ({p}, {q})")
        cells = sorted({(int(i), int(j)) for i, j in pattern})
        if not cells:
            raise InputError("pattern must contain at least one position")
        for i, j in cells:
            if not (1 <= i <= p and 1 <= j <= q):
                raise InputError(f"pattern position {(i, j)} outside {p}x{q}")
        pos = tuple((i - 1, j - 1) for i, j in cells)
        return cls("pattern", p, q, pos, cells=tuple(cells))

    @property
    def is_free(self) -> bool:
        return self.kind == "free"

    @property
    def dim(self) -> int:
        """Ambient complex dimension D."""
        return len(self.positions)

    @property
    def _index(self):
        rows = np.array([r for r, _ in self.positions], dtype=int)
        cols = np.array([c for _, c in self.positions], dtype=int)
        return rows, cols

    def describe(self) -> dict:
        if self.is_free:
            return {"kind": "free", "rank": self.rank, "algebra_dim": self.n}
        return {"kind": "pattern", "rows": self.n, "cols": self.width,
                "pattern": [list(c) for c in self.cells]}

    def embed(self, coords) -> np.ndarray:
        """Coordinates (shape ``(..., D)``) to ambient matrices ``(..., n, w)``."""
        coords = np.asarray(coords, dtype=complex)
        if coords.shape[-1] != self.dim:
            raise InputError(f"expected {self.dim} coordinates, got {coords.shape[-1]}")
        out = np.zeros(coords.shape[:-1] + (self.n, self.width), dtype=complex)
        r, c = self._index
        out[..., r, c] = coords
        return out

    def extract(self, M, atol: Optional[float] = None) -> np.ndarray:
        """Ambient matrices to coordinates; with ``atol`` reject mass off the pattern."""
        M = np.asarray(M, dtype=complex)
        if M.shape[-2:] != (self.n, self.width):
            raise InputError(f"expected ambient shape {(self.n, self.width)}, got {M.shape[-2:]}")
        r, c = self._index
        coords = M[..., r, c]
        if atol is not None:
            rest = M.copy()
            rest[..., r, c] = 0
            if rest.size and np.max(np.abs(rest)) > atol:
                raise DomainError("matrix leaves the module's support pattern")
        return coords

    def inner(self, x, y) -> np.ndarray:
        X, Y = self.embed(x), self.embed(y)
        return X @ np.conj(np.swapaxes(Y, -1, -2))

    def a_basis(self) -> np.ndarray:
        """Coordinates of the free basis ``e_i`` (identity in block ``i``), shape ``(d, D)``."""
        if not self.is_free:
            raise InputError("only free modules have an A-basis")
        E = np.zeros((self.rank, self.n, self.width), dtype=complex)
        for i in range(self.rank):
            E[i, :, i * self.n:(i + 1) * self.n] = np.eye(self.n)
        return self.extract(E)

    def stabilizer_mask(self) -> np.ndarray:
        """Entries ``(i, k)`` of ``a`` allowed so that ``a X`` stays in the module."""
        if self.is_free:
            return np.ones((self.n, self.n), dtype=bool)
        support = np.zeros((self.n, self.width), dtype=bool)
        r, c = self._index
        support[r, c] = True
        # a_ik may be nonzero only if row k's support is contained in row i's
        return np.array([[np.all(support[i] | ~support[k]) for k in range(self.n)]
                         for i in range(self.n)])

    def left_act(self, a, x) -> np.ndarray:
        a = alg.as_element(a, self.n)
        return self.extract(a @ self.embed(x), atol=1e-12 * max(1.0, alg.opnorm(a)))

    def random_coords(self, rng, count: Optional[int] = None) -> np.ndarray:
        shape = (self.dim,) if count is None else (count, self.dim)
        return _crandn(rng, *shape)

    def random_scalar_action(self, rng) -> np.ndarray:
        """Random algebra element from the subalgebra preserving the module."""
        return _crandn(rng, self.n, self.n) * self.stabilizer_mask()


@dataclass
class ModuleVector:
    space: ModuleSpace
    coords: np.ndarray

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=complex).reshape(-1)
        if self.coords.shape[0] != self.space.dim:
            raise InputError(f"vector has {self.coords.shape[0]} coordinates, space needs {self.space.dim}")

    @property
    def matrix(self) -> np.ndarray:
        return self.space.embed(self.coords)

    def norm(self) -> float:
        """``||x|| = ||<x, x>_A||^(1/2)``."""
        return float(np.sqrt(alg.opnorm(inner_product(self, self))))


def inner_product(x: ModuleVector, y: ModuleVector) -> np.ndarray:
    if x.space != y.space:
        raise InputError("inner_product: vectors live in different modules")
    return x.space.inner(x.coords, y.coords)


# ---------------------------------------------------------------------------
# operators


@dataclass(eq=False)
class ModuleOperator:
    domain: ModuleSpace
    codomain: ModuleSpace
    matrix: np.ndarray
    a_linear_checked: bool = False
    adjointable_checked: bool = False

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        want = (self.codomain.dim, self.domain.dim)
        if self.matrix.shape != want:
            raise InputError(f"operator matrix has shape {self.matrix.shape}, expected {want}")
        if self.domain.n != self.codomain.n:
            raise InputError("domain and codomain must be modules over the same algebra")

    def __call__(self, x):
        if isinstance(x, ModuleVector):
            if x.space != self.domain:
                raise InputError("operator applied to a vector outside its domain")
            return ModuleVector(self.codomain, self.matrix @ x.coords)
        return np.asarray(x, dtype=complex) @ self.matrix.T

    def __matmul__(self, other: "ModuleOperator") -> "ModuleOperator":
        if other.codomain != self.domain:
            raise InputError("composition of incompatible operators")
        return ModuleOperator(other.domain, self.codomain, self.matrix @ other.matrix)

    def _check_same(self, other):
        if other.domain != self.domain or other.codomain != self.codomain:
            raise InputError("operators act between different modules")

    def __add__(self, other):
        self._check_same(other)
        return ModuleOperator(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_same(other)
        return ModuleOperator(self.domain, self.codomain, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return ModuleOperator(self.domain, self.codomain, complex(scalar) * self.matrix)

    __rmul__ = __mul__

    def __neg__(self):
        return -1 * self

    @property
    def H(self) -> "ModuleOperator":
        """Trace-form adjoint (conjugate transpose), without A-valued verification."""
        return ModuleOperator(self.codomain, self.domain, alg.adjoint(self.matrix))

    def norm(self) -> float:
        return alg.opnorm(self.matrix)

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def power(self, k: int) -> "ModuleOperator":
        if not self.is_endomorphism:
            raise InputError("power of a non-endomorphism")
        return ModuleOperator(self.domain, self.domain, np.linalg.matrix_power(self.matrix, k))


def identity(space: ModuleSpace) -> ModuleOperator:
    return ModuleOperator(space, space, np.eye(space.dim, dtype=complex))


def zero_operator(domain: ModuleSpace, codomain: Optional[ModuleSpace] = None) -> ModuleOperator:
    codomain = domain if codomain is None else codomain
    return ModuleOperator(domain, codomain, np.zeros((codomain.dim, domain.dim), dtype=complex))


def from_ambient_map(domain: ModuleSpace, codomain: ModuleSpace, fn) -> ModuleOperator:
    """Operator induced by a linear map on ambient matrices (``fn(n x w) -> n x w'``)."""
    cols = [codomain.extract(fn(domain.embed(e)), atol=1e-12)
            for e in np.eye(domain.dim, dtype=complex)]
    return ModuleOperator(domain, codomain, np.array(cols).T)


def right_multiplication(domain: ModuleSpace, codomain: ModuleSpace, R) -> ModuleOperator:
    """``X -> X R`` between free modules; every A-linear map between free modules has this form."""
    if not (domain.is_free and codomain.is_free):
        raise InputError("right_multiplication is defined between free modules")
    R = np.asarray(R, dtype=complex)
    if R.shape != (domain.width, codomain.width):
        raise InputError(f"right factor must have shape {(domain.width, codomain.width)}, got {R.shape}")
    n = domain.n
    # row-major vec(X R) = (I_n kron R^T) vec(X); coordinates are a permutation of vec
    big = np.kron(np.eye(n), R.T)
    return ModuleOperator(domain, codomain,
                          big[np.ix_(_vec_index(codomain), _vec_index(domain))])


def _vec_index(space: ModuleSpace) -> np.ndarray:
    return np.array([r * space.width + c for r, c in space.positions], dtype=int)


def mask_operator(space: ModuleSpace, keep: Sequence) -> ModuleOperator:
    """Projection keeping the listed 1-based ambient positions and zeroing the rest."""
    keep0 = {(int(i) - 1, int(j) - 1) for i, j in keep}
    diag = np.array([1.0 if p in keep0 else 0.0 for p in space.positions])
    return ModuleOperator(space, space, np.diag(diag).astype(complex))


def left_multiplication(space: ModuleSpace, a) -> ModuleOperator:
    """``X -> a X``; A-linear only when ``a`` is central."""
    a = alg.as_element(a, space.n)
    return from_ambient_map(space, space, lambda X: a @ X)


def operator_sqrt(T: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    if not T.is_endomorphism:
        raise InputError("square root of a non-endomorphism")
    return ModuleOperator(T.domain, T.domain, alg.sqrt_psd(T.matrix, cfg))


def operator_inverse(T: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    if not T.is_endomorphism:
        raise InputError("inverse of a non-endomorphism")
    return ModuleOperator(T.domain, T.domain, alg.inverse(T.matrix, cfg))


def operator_function(T: ModuleOperator, fn, cfg: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    """Real function of a self-adjoint operator through its spectrum."""
    return ModuleOperator(T.domain, T.domain, alg.psd_function(T.matrix, fn, cfg))


def commutator_norm(S: ModuleOperator, T: ModuleOperator) -> float:
    return alg.opnorm(S.matrix @ T.matrix - T.matrix @ S.matrix)


def adjoint(T: ModuleOperator, samples: int = 50, seed=0) -> ModuleOperator:
    """Adjoint of ``T`` checked against ``<Tx, y>_A = <x, T*y>_A``.

    The candidate is the trace-form adjoint; the A-valued identity is then
    tested on ``samples`` random pairs.  Raises :class:`NotAdjointable` with the
    worst pair when the relative defect exceeds 1e-10.
    """
    Ts = T.H
    rng = _rng(seed)
    scale = max(1.0, T.norm())
    worst, worst_pair = 0.0, None
    for _ in range(samples):
        x = T.domain.random_coords(rng)
        y = T.codomain.random_coords(rng)
        lhs = T.codomain.inner(T(x), y)
        rhs = T.domain.inner(x, Ts(y))
        err = alg.opnorm(lhs - rhs) / (scale * np.linalg.norm(x) * np.linalg.norm(y))
        if err > worst:
            worst, worst_pair = err, (x, y)
    if worst > _LINEAR_RTOL:
        raise NotAdjointable(f"A-valued adjoint identity fails (relative defect {worst:.3e})",
                             witness=worst_pair, error=worst)
    Ts.adjointable_checked = True
    T.adjointable_checked = True
    return Ts


def verify_a_linear(T: ModuleOperator, samples: int = 50, seed=0) -> Verdict:
    """Check ``T(a x) = a T(x)`` on random pairs.

    ``a`` ranges over the algebra elements that keep both domain and codomain
    invariant (all of A for free modules).
    """
    rng = _rng(seed)
    mask = T.domain.stabilizer_mask() & T.codomain.stabilizer_mask()
    scale = max(1.0, T.norm())
    worst, witness = 0.0, None
    for _ in range(samples):
        a = _crandn(rng, T.domain.n, T.domain.n) * mask
        x = T.domain.random_coords(rng)
        lhs = T(T.domain.left_act(a, x))
        rhs = T.codomain.left_act(a, T(x))
        err = np.linalg.norm(lhs - rhs) / (scale * max(1.0, alg.opnorm(a)) * np.linalg.norm(x))
        if err > worst:
            worst, witness = err, (a, x)
    if worst > _LINEAR_RTOL:
        return Verdict(Status.FALSIFIED, -worst, witness=witness,
                       note="T(a x) != a T(x) on the witness pair")
    T.a_linear_checked = True
    return Verdict(Status.CERTIFIED, 0.0)


# ---------------------------------------------------------------------------
# A-valued forms and their Gram tables


def form_basis(space: ModuleSpace) -> np.ndarray:
    """Basis used for Gram tables: the A-basis for free modules, the complex basis otherwise."""
    return space.a_basis() if space.is_free else np.eye(space.dim, dtype=complex)


def form_gram(space: ModuleSpace, terms) -> np.ndarray:
    """Gram table of ``Q(x, y) = sum_k w_k <L_k x, R_k y>_A`` over :func:`form_basis`.

    ``terms`` is an iterable of ``(w, L, R)``; the result has shape ``(m, m, n, n)``
    with ``G[i, j] = Q(b_i, b_j)``.
    """
    B = form_basis(space)
    m, n = B.shape[0], space.n
    G = np.zeros((m, m, n, n), dtype=complex)
    for w, L, R in terms:
        if w == 0:
            continue
        if L.domain != space or R.domain != space or L.codomain != R.codomain:
            raise InputError("form terms must map the form's space into a common module")
        LB = L.codomain.embed(L(B))
        RB = R.codomain.embed(R(B))
        G += w * np.einsum("irc,jsc->ijrs", LB, np.conj(RB))
    return G


def operator_gram(space: ModuleSpace, T: ModuleOperator) -> np.ndarray:
    """Gram table of ``(x, y) -> <T x, y>_A``."""
    return form_gram(space, [(1.0, T, identity(space))])


def block_matrix(G) -> np.ndarray:
    """``(m, m, n, n)`` Gram table to the ``(m n, m n)`` matrix with blocks ``G[i, j]``."""
    G = np.asarray(G)
    m, _, n, _ = G.shape
    return G.transpose(0, 2, 1, 3).reshape(m * n, m * n)


def free_witness(space: ModuleSpace, v) -> ModuleVector:
    """Module vector ``f`` with ``<T f, f>_A[0, 0] = v* G v`` for the flattened Gram ``G``.

    Row 0 of the ambient matrix is ``conj(v)``, all other rows vanish.
    """
    X = np.zeros((space.n, space.width), dtype=complex)
    X[0] = np.conj(v)
    return ModuleVector(space, space.extract(X))


def free_form_value(G, f: ModuleVector) -> np.ndarray:
    """``Q(f, f) = sum_ij x_i G_ij x_j*`` for a free-basis Gram table."""
    space = f.space
    X = f.matrix.reshape(space.n, space.rank, space.n).transpose(1, 0, 2)  # blocks x_i
    return np.einsum("iab,ijbc,jdc->ad", X, G, np.conj(X))


def free_block_verdict(space: ModuleSpace, Gblock, cfg: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Exact positivity verdict for an A-valued form on a free module.

    Positivity of the form is positivity of its flattened free-basis Gram
    matrix.  A non-Hermitian Gram matrix means some value ``Q(f, f)`` is not
    self-adjoint, which is reported as Falsified with that ``f``.
    """
    Gblock = np.asarray(Gblock, dtype=complex)
    s = alg.scale_of(Gblock)
    base = alg.is_psd(Gblock, cfg)
    if base.certified:
        return base
    if base.falsified:
        f = free_witness(space, base.witness)
        return Verdict(Status.FALSIFIED, base.margin, witness=f,
                       note="negative direction of the flattened Gram matrix")
    skew = (Gblock - alg.adjoint(Gblock)) / 2j
    w, V = np.linalg.eigh(alg.herm(skew))
    k = int(np.argmax(np.abs(w)))
    if abs(w[k]) > cfg.tol_falsify * s:
        f = free_witness(space, V[:, k])
        return Verdict(Status.FALSIFIED, -float(abs(w[k])), witness=f,
                       note="form value is not self-adjoint at the witness")
    return base


def flatten_positive_test(T: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Positivity of an A-linear endomorphism of a free module via ``G_ij = <T e_i, e_j>_A``."""
    if not (T.is_endomorphism and T.domain.is_free):
        raise InputError("flatten_positive_test needs an endomorphism of a free module; use form_compare")
    G = operator_gram(T.domain, T)
    v = free_block_verdict(T.domain, block_matrix(G), cfg)
    if v.witness is not None:
        v.violation = free_form_value(G, v.witness)
    return v


# ---------------------------------------------------------------------------
# three-stage comparison for forms on non-free modules


def _form_value(G, c) -> np.ndarray:
    return np.einsum("i,j,ijrs->rs", c, np.conj(c), G)


def _violation(Q, s, cfg) -> float:
    lam = float(np.linalg.eigvalsh(alg.herm(Q))[0])
    skew = alg.opnorm(Q - alg.adjoint(Q)) / 2
    if skew > cfg.tol_h * s:
        return min(lam, -skew)
    return lam


def _rank_one_candidates(Vs) -> list:
    """Coefficient vectors hidden in reshaped eigenvectors ``V`` (rows ~ conj(c_i) u^T)."""
    V = np.hstack(Vs)
    U, sv, _ = np.linalg.svd(V, full_matrices=False)
    if sv[0] == 0:
        return []
    keep = sv > 1e-8 * sv[0]
    cands = [np.conj(U[:, k]) for k in np.flatnonzero(keep)]
    if keep.sum() > 1:
        cands.append(np.conj(U[:, keep] @ sv[keep]))
    return cands


def form_compare(G1, G2, space: ModuleSpace, cfg: ToleranceConfig = DEFAULT_TOL,
                 samples: int = 200, seed=0) -> Verdict:
    """Verdict on ``Q2(f, f) - Q1(f, f) >= 0`` for every module element ``f``.

    ``G1``/``G2`` are Gram tables over the complex basis of ``space``.  Stages:
    exact equality; the block-matrix certificate (sufficient); a falsification
    search over eigenvector-derived, basis, random and alternately refined
    coefficient vectors.  Witnesses are normalised to module norm one.
    """
    G1, G2 = np.asarray(G1, dtype=complex), np.asarray(G2, dtype=complex)
    m = space.dim
    if G1.shape != G2.shape or G1.shape != (m, m, space.n, space.n):
        raise InputError(f"Gram tables must have shape {(m, m, space.n, space.n)}")
    D = G2 - G1
    Dblock = block_matrix(D)
    s = alg.scale_of(Dblock)
    if np.max(np.abs(D)) <= cfg.tol_h * s:
        return Verdict(Status.CERTIFIED, 0.0, note="forms coincide")
    cert = alg.is_psd(Dblock, cfg)
    if cert.certified:
        return Verdict(Status.CERTIFIED, cert.margin, note="block Gram certificate")

    rng = _rng(seed)
    p = space.n
    cands = [np.eye(m, dtype=complex)[i] for i in range(m)]
    w, V = np.linalg.eigh(alg.herm(Dblock))
    neg = np.flatnonzero(w < -cfg.tol_falsify * s)
    for k in neg:
        cands += _rank_one_candidates([V[:, k].reshape(m, p)])
    # degenerate eigenvalues: combine the whole eigenspace
    for group in np.split(neg, np.flatnonzero(np.diff(w[neg]) > 1e-9 * s) + 1):
        if group.size > 1:
            cands += _rank_one_candidates([V[:, k].reshape(m, p) for k in group])
    cands += list(space.random_coords(rng, samples))

    def score(c):
        Q = _form_value(D, c)
        ff = space.inner(c, c)
        nrm = alg.opnorm(ff)
        if nrm == 0:
            return np.inf, 0.0
        full = float(np.linalg.eigvalsh(alg.herm(ff))[0]) / nrm
        return _violation(Q, s, cfg) / nrm, full

    scored = [(score(c), c) for c in cands]
    scored.sort(key=lambda t: t[0][0])
    for (_, c0) in scored[:5]:
        c = c0
        for _ in range(25):
            wq, vq = np.linalg.eigh(alg.herm(_form_value(D, c)))
            u = vq[:, 0]
            Hu = np.einsum("r,ijrs,s->ij", np.conj(u), D, u)
            _, vz = np.linalg.eigh(alg.herm(Hu))
            c = np.conj(vz[:, 0])
        scored.append((score(c), c))

    best = min(t[0][0] for t in scored)
    ties = [t for t in scored if t[0][0] <= best + 1e-9 * s]
    (viol, _), c = max(ties, key=lambda t: t[0][1])
    if viol < -cfg.tol_falsify * s:
        c = c / np.sqrt(alg.opnorm(space.inner(c, c)))
        return Verdict(Status.FALSIFIED, float(viol), witness=ModuleVector(space, c),
                       violation=_form_value(D, c), note="sampled module element violates the order")
    return Verdict(Status.UNDETERMINED, float(cert.margin),
                   note=f"block certificate fails (lambda_min {cert.margin:.3e}); no violation found "
                        f"(best sampled {best:.3e})")


def order_verdict(space: ModuleSpace, G_low, G_high, cfg: ToleranceConfig = DEFAULT_TOL,
                  seed=0) -> Verdict:
    """Verdict on ``Q_low <= Q_high`` for Gram tables over :func:`form_basis`."""
    if space.is_free:
        D = np.asarray(G_high) - np.asarray(G_low)
        v = free_block_verdict(space, block_matrix(D), cfg)
        if v.witness is not None:
            v.violation = free_form_value(D, v.witness)
        return v
    return form_compare(G_low, G_high, space, cfg, seed=seed)


# ---------------------------------------------------------------------------
# finite sections of l^2(Omega, {K_w})


@dataclass
class L2Section:
    """One range-module block per quadrature node, paired with the node weights."""

    space: ModuleSpace
    weights: np.ndarray
    blocks: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.blocks = np.asarray(self.blocks, dtype=complex)
        if self.blocks.shape != (self.weights.shape[0], self.space.dim):
            raise InputError(f"section needs {self.weights.shape[0]} blocks of {self.space.dim} coordinates")


def l2_inner(y: L2Section, z: L2Section) -> np.ndarray:
    """``<y, z> = sum_k w_k <y_k, z_k>_A``."""
    if y.space != z.space or not np.array_equal(y.weights, z.weights):
        raise InputError("sections over different measures or modules")
    vals = y.space.inner(y.blocks, z.blocks)
    return np.einsum("k,krs->rs", y.weights, vals)


def l2_norm(y: L2Section) -> float:
    return float(np.sqrt(alg.opnorm(l2_inner(y, y))))

"""Controlled continuous g-frames on finite quadratures.

The measure space is replaced by a finite list of nodes and non-negative
weights, the integral by the weighted sum.  A :class:`FrameInstance` bundles
the module, the quadrature, the family ``Lambda_w``, the controllers ``C, C'``
and the target operator ``K``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from . import algebra as alg
from .algebra import DEFAULT_TOL, Status, ToleranceConfig, Verdict
from .errors import DomainError, InputError
from .modules import (L2Section, ModuleOperator, ModuleSpace, ModuleVector, adjoint,
                      commutator_norm, flatten_positive_test, form_gram, identity,
                      mask_operator, operator_sqrt, verify_a_linear)

RULES = ("gauss_legendre", "trapezoid", "midpoint")
COMMUTE_RTOL = 1e-8


@dataclass
class MeasureDiscretization:
    nodes: np.ndarray
    weights: np.ndarray
    provenance: dict = field(default_factory=lambda: {"type": "discrete"})

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float).reshape(-1)
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if self.nodes.shape != self.weights.shape or self.nodes.size == 0:
            raise InputError("measure needs matching, non-empty node and weight lists")
        if np.any(self.weights < 0) or not np.all(np.isfinite(self.weights)):
            raise InputError("quadrature weights must be finite and non-negative")
        if not np.all(np.isfinite(self.nodes)):
            raise InputError("quadrature nodes must be finite")

    def __len__(self):
        return self.nodes.size

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, fn) -> float:
        return float(sum(w * fn(x) for x, w in zip(self.nodes, self.weights)))


def discrete_measure(pairs) -> MeasureDiscretization:
    pairs = np.asarray(pairs, dtype=float).reshape(-1, 2)
    return MeasureDiscretization(pairs[:, 0], pairs[:, 1])


def discretize_interval(a: float, b: float, rule: str = "gauss_legendre", N: int = 16) -> MeasureDiscretization:
    """Nodes and weights of a composite rule on ``[a, b]``.

    ``N`` counts Gauss points, trapezoid panels (``N + 1`` nodes) or midpoint
    panels.  The Gauss rule integrates polynomials of degree ``<= 2N - 1`` exactly.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise InputError(f"interval needs a < b, got [{a}, {b}]")
    if int(N) != N or N < 1:
        raise InputError(f"number of points must be a positive integer, got {N}")
    N = int(N)
    if rule == "gauss_legendre":
        x, w = np.polynomial.legendre.leggauss(N)
        nodes = 0.5 * (b - a) * x + 0.5 * (b + a)
        weights = 0.5 * (b - a) * w
    elif rule == "trapezoid":
        nodes = np.linspace(a, b, N + 1)
        weights = np.full(N + 1, (b - a) / N)
        weights[[0, -1]] *= 0.5
    elif rule == "midpoint":
        h = (b - a) / N
        nodes = a + h * (np.arange(N) + 0.5)
        weights = np.full(N, h)
    else:
        raise InputError(f"unknown quadrature rule {rule!r}; expected one of {RULES}")
    prov = {"type": "interval", "a": a, "b": b, "rule": rule, "n": N}
    return MeasureDiscretization(nodes, weights, prov)


@dataclass
class OperatorFamily:
    """``Lambda_w`` either tabulated per node or ``p(w) * base`` for a polynomial ``p``."""

    kind: str
    domain: ModuleSpace
    codomain: ModuleSpace
    ops: Optional[list] = None
    base: Optional[ModuleOperator] = None
    coeffs: Optional[np.ndarray] = None

    @classmethod
    def table(cls, ops: Sequence[ModuleOperator]) -> "OperatorFamily":
        ops = list(ops)
        if not ops:
            raise InputError("table family needs at least one operator")
        dom, cod = ops[0].domain, ops[0].codomain
        for op in ops:
            if op.domain != dom or op.codomain != cod:
                raise InputError("all family operators must share domain and range module")
        return cls("table", dom, cod, ops=ops)

    @classmethod
    def scalar_profile(cls, base: ModuleOperator, coeffs) -> "OperatorFamily":
        coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)
        if coeffs.size == 0:
            raise InputError("scalar profile needs at least one coefficient")
        return cls("scalar_profile", base.domain, base.codomain, base=base, coeffs=coeffs)

    def materialize(self, measure: MeasureDiscretization) -> list:
        if self.kind == "table":
            if len(self.ops) != len(measure):
                raise InputError(f"table family has {len(self.ops)} operators for {len(measure)} nodes")
            return list(self.ops)
        vals = np.polynomial.polynomial.polyval(measure.nodes, self.coeffs)
        return [complex(v) * self.base for v in vals]

    def compose_right(self, op: ModuleOperator) -> "OperatorFamily":
        """The family ``Lambda_w o op``."""
        if self.kind == "table":
            return OperatorFamily.table([L @ op for L in self.ops])
        return OperatorFamily.scalar_profile(self.base @ op, self.coeffs)


@dataclass
class FrameInstance:
    space: ModuleSpace
    measure: MeasureDiscretization
    family: OperatorFamily
    C: ModuleOperator
    Cprime: ModuleOperator
    K: Optional[ModuleOperator] = None
    name: str = ""

    def __post_init__(self):
        if self.family.domain != self.space:
            raise InputError("family domain differs from the instance module")
        for label, op in (("C", self.C), ("Cprime", self.Cprime), ("K", self.K)):
            if op is not None and (op.domain != self.space or op.codomain != self.space):
                raise InputError(f"{label} must be an endomorphism of the instance module")

    @property
    def range_space(self) -> ModuleSpace:
        return self.family.codomain

    @property
    def K_op(self) -> ModuleOperator:
        return identity(self.space) if self.K is None else self.K

    def ops(self) -> list:
        return self.family.materialize(self.measure)

    def with_(self, **changes) -> "FrameInstance":
        return replace(self, **changes)


# ---------------------------------------------------------------------------
# hypotheses on controllers


def gl_plus(T: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL, max_cond: float = 1e12) -> Verdict:
    """Membership in GL+: self-adjoint, bounded below by more than ``tol_psd``, finite condition."""
    if not T.is_endomorphism:
        return Verdict(Status.FALSIFIED, -math.inf, note="not an endomorphism")
    M = T.matrix
    if not alg.is_hermitian(M, cfg):
        return Verdict(Status.FALSIFIED, -alg.opnorm(M - alg.adjoint(M)), note="not self-adjoint")
    w = np.linalg.eigvalsh(alg.herm(M))
    if not w[0] > cfg.tol_psd * alg.scale_of(M):
        return Verdict(Status.FALSIFIED, float(w[0]), note="not positive invertible")
    if w[-1] / w[0] > max_cond:
        return Verdict(Status.UNDETERMINED, float(w[0]), note="condition number too large")
    return Verdict(Status.CERTIFIED, float(w[0]))


def commutes(S: ModuleOperator, T: ModuleOperator, rtol: float = COMMUTE_RTOL) -> Verdict:
    scale = max(1.0, S.norm() * T.norm())
    c = commutator_norm(S, T)
    if c <= rtol * scale:
        return Verdict(Status.CERTIFIED, -c)
    return Verdict(Status.FALSIFIED, -c, note=f"commutator norm {c:.3e}")


def validate_instance(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Structural checks: GL+ controllers, A-linear and adjointable family members."""
    out = {"C_in_GL_plus": gl_plus(inst.C, cfg), "Cprime_in_GL_plus": gl_plus(inst.Cprime, cfg)}
    worst = Verdict(Status.CERTIFIED, 0.0)
    for k, L in enumerate(inst.ops()):
        v = verify_a_linear(L, samples=10, seed=k)
        if not v.certified:
            worst = Verdict(v.status, v.margin, v.witness, note=f"node {k}: {v.note}")
            break
        try:
            adjoint(L, samples=10, seed=k)
        except Exception as exc:  # NotAdjointable
            worst = Verdict(Status.FALSIFIED, -1.0, note=f"node {k}: {exc}")
            break
    out["family_adjointable"] = worst
    return out


# ---------------------------------------------------------------------------
# frame operator, synthesis and analysis


@dataclass
class FrameOperators:
    controlled: ModuleOperator
    plain: ModuleOperator
    commuting: bool
    self_adjoint_defect: float
    positive: Optional[Verdict] = None


def assemble_frame_operator(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> FrameOperators:
    """``S_(C,C') = sum_k w_k C' Lambda_k* Lambda_k C`` and the plain ``S = sum_k w_k Lambda_k* Lambda_k``.

    When ``C`` and ``C'`` commute with each other and with every
    ``Lambda_k* Lambda_k`` the controlled operator is also checked positive.
    """
    D = inst.space.dim
    S = np.zeros((D, D), dtype=complex)
    commuting = commutes(inst.C, inst.Cprime).certified
    for w, L in zip(inst.measure.weights, inst.ops()):
        if w == 0:
            continue
        LL = L.H @ L
        S += w * LL.matrix
        if commuting:
            commuting = commutes(inst.C, LL).certified and commutes(inst.Cprime, LL).certified
    plain = ModuleOperator(inst.space, inst.space, S)
    controlled = inst.Cprime @ plain @ inst.C
    M = controlled.matrix
    defect = alg.opnorm(M - alg.adjoint(M))
    positive = None
    if commuting:
        if inst.space.is_free:
            positive = flatten_positive_test(controlled, cfg)
        else:
            positive = alg.is_psd(M, cfg)
    return FrameOperators(controlled, plain, commuting, defect, positive)


def integral_form_gram(inst: FrameInstance) -> np.ndarray:
    """Gram table of ``f -> sum_k w_k <Lambda_k C f, Lambda_k C' f>_A`` over the form basis."""
    terms = [(w, L @ inst.C, L @ inst.Cprime) for w, L in zip(inst.measure.weights, inst.ops())]
    return form_gram(inst.space, terms)


def controller_root(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    """``(C C')^(1/2)``; refused unless the controllers commute."""
    if not commutes(inst.C, inst.Cprime).certified:
        raise DomainError("C and C' do not commute, (CC')^(1/2) is undefined")
    return operator_sqrt(inst.C @ inst.Cprime, cfg)


def synthesis_apply(inst: FrameInstance, y: L2Section, cfg: ToleranceConfig = DEFAULT_TOL) -> ModuleVector:
    """``sum_k w_k (CC')^(1/2) Lambda_k* y_k``."""
    if y.space != inst.range_space or not np.array_equal(y.weights, inst.measure.weights):
        raise InputError("section does not match the instance's measure and range module")
    R = controller_root(inst, cfg)
    acc = np.zeros(inst.space.dim, dtype=complex)
    for w, L, yk in zip(inst.measure.weights, inst.ops(), y.blocks):
        acc += w * L.H(yk)
    return ModuleVector(inst.space, R(acc))


def analysis_apply(inst: FrameInstance, x: ModuleVector, cfg: ToleranceConfig = DEFAULT_TOL) -> L2Section:
    """``{Lambda_k (C'C)^(1/2) x}_k``."""
    if x.space != inst.space:
        raise InputError("vector is not in the instance module")
    R = controller_root(inst, cfg)
    Rx = R(x.coords)
    blocks = np.array([L(Rx) for L in inst.ops()])
    return L2Section(inst.range_space, inst.measure.weights, blocks)


def synthesis_matrix(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Synthesis operator on sqrt(w)-scaled stacked section coordinates.

    With this scaling the section module is the plain direct sum of range
    modules, so spectral norms of this matrix are module operator norms.
    """
    R = controller_root(inst, cfg).matrix
    cols = [np.sqrt(w) * (R @ L.H.matrix) for w, L in zip(inst.measure.weights, inst.ops())]
    return np.hstack(cols)


# ---------------------------------------------------------------------------
# canonical instances

EXAMPLE_PATTERN = ((1, 1), (1, 2), (2, 2), (2, 4))
EXAMPLE_KEEP = ((1, 2), (2, 2))


def build_paper_example(alpha: float = 1.0, beta: float = 1.0, rule: str = "gauss_legendre",
                        N: int = 2) -> FrameInstance:
    """The 2x4 pattern module with ``C = alpha I``, ``C' = beta I``, ``Lambda_w = w * mask(b, c)``, ``K = mask(b, c)``.

    ``M = [[a, b, 0, 0], [0, c, 0, d]]`` over ``A = M_2(C)`` and ``Omega = [0, 1]``.
    """
    if not (alpha > 0 and beta > 0):
        raise InputError("alpha and beta must be strictly positive")
    H = ModuleSpace.pattern(2, 4, EXAMPLE_PATTERN)
    keep_bc = mask_operator(H, EXAMPLE_KEEP)
    family = OperatorFamily.scalar_profile(keep_bc, [0.0, 1.0])
    I = identity(H)
    return FrameInstance(H, discretize_interval(0.0, 1.0, rule, N), family,
                         float(alpha) * I, float(beta) * I, K=keep_bc, name="paper_example")


def identity_instance(n: int = 2, rank: int = 1) -> FrameInstance:
    """Single node of weight one with ``Lambda = C = C' = K = I`` on ``A^rank``."""
    H = ModuleSpace.free(rank, n)
    I = identity(H)
    meas = MeasureDiscretization([0.0], [1.0])
    return FrameInstance(H, meas, OperatorFamily.table([I]), I, I, K=I, name="identity")

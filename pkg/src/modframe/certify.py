"""Certification of the controlled K-g-frame inequalities and optimal bounds.

For an instance the three A-valued forms in play are

    integral  f -> sum_k w_k <Lambda_k C f, Lambda_k C' f>_A
    identity  f -> <f, f>_A
    K-form    f -> <K* f, K* f>_A

and every inequality ``a * Q_low <= Q_high`` is decided on their Gram tables:
exactly on free modules, by certificate plus falsification search otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra as alg
from .algebra import DEFAULT_TOL, Status, ToleranceConfig, Verdict
from .errors import DomainError, InputError
from .frame import FrameInstance, assemble_frame_operator, gl_plus, integral_form_gram
from .modules import (ModuleOperator, _rank_one_candidates, block_matrix,
                      form_gram, identity, operator_gram, operator_sqrt, order_verdict)

__all__ = ["Verdict", "Status", "FormTables", "form_tables", "certify_upper", "certify_lower_K",
           "BoundsReport", "optimal_bounds", "DouglasResult", "douglas_check",
           "controller_spectral_data", "bisect_upper", "bisect_lower"]

EXACT_RTOL = 1e-9
TIGHT_TOL = 1e-8


@dataclass
class FormTables:
    space: object
    integral: np.ndarray
    ident: np.ndarray
    kform: np.ndarray


def form_tables(inst: FrameInstance, K: Optional[ModuleOperator] = None) -> FormTables:
    K = inst.K_op if K is None else K
    space = inst.space
    ident = operator_gram(space, identity(space))
    kform = form_gram(space, [(1.0, K.H, K.H)])
    return FormTables(space, integral_form_gram(inst), ident, kform)


def certify_upper(inst: FrameInstance, B: float, cfg: ToleranceConfig = DEFAULT_TOL,
                  tables: Optional[FormTables] = None) -> Verdict:
    """Verdict on ``integral(f) <= B <f, f>_A`` for all ``f``."""
    if not B > 0:
        raise InputError("upper bound must be positive")
    t = form_tables(inst) if tables is None else tables
    return order_verdict(t.space, t.integral, B * t.ident, cfg)


def certify_lower_K(inst: FrameInstance, A: float, cfg: ToleranceConfig = DEFAULT_TOL,
                    K: Optional[ModuleOperator] = None, tables: Optional[FormTables] = None) -> Verdict:
    """Verdict on ``A <K* f, K* f>_A <= integral(f)``; an absent ``K`` means the identity."""
    if not A > 0:
        raise InputError("lower bound must be positive")
    t = form_tables(inst, K) if tables is None else tables
    return order_verdict(t.space, A * t.kform, t.integral, cfg)


def bisect_upper(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL, steps: int = 40,
                 tables: Optional[FormTables] = None) -> float:
    """Least certified Bessel constant by bisection on :func:`certify_upper`."""
    t = form_tables(inst) if tables is None else tables
    hi = max(1.0, alg.opnorm(block_matrix(t.integral)))
    while not certify_upper(inst, hi, cfg, tables=t).certified:
        hi *= 2
    lo = 0.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid > 0 and certify_upper(inst, mid, cfg, tables=t).certified:
            hi = mid
        else:
            lo = mid
    return hi


def bisect_lower(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL, steps: int = 40,
                 K: Optional[ModuleOperator] = None, tables: Optional[FormTables] = None,
                 hi: Optional[float] = None) -> float:
    """Greatest certified lower K-bound by bisection on :func:`certify_lower_K`."""
    t = form_tables(inst, K) if tables is None else tables
    if hi is None:
        hi = 1.0
        while certify_lower_K(inst, hi, cfg, tables=t).certified:
            hi *= 2
            if hi > 1e12:
                return math.inf
    lo = 0.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if certify_lower_K(inst, mid, cfg, tables=t).certified:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# Douglas factorisation


@dataclass
class DouglasResult:
    in_range: bool
    residual: float
    lambda_min: Optional[float] = None
    D: Optional[ModuleOperator] = None


def douglas_check(T: ModuleOperator, Tprime: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL,
                  bisect: bool = True, steps: int = 60) -> DouglasResult:
    """Range inclusion ``R(T') in R(T)``, a solution of ``T X = T'`` and the least ``lambda``
    with ``T' T'* <= lambda T T*``.

    ``lambda`` is found by bisection with :func:`algebra.loewner_leq` as the
    oracle over ``[0, (||T'|| / sigma_min+(T))^2 + 1]``, after whitening both
    sides on ``R(T)``.
    """
    if T.codomain != Tprime.codomain:
        raise InputError("douglas_check needs operators with a common codomain")
    X, *_ = np.linalg.lstsq(T.matrix, Tprime.matrix, rcond=None)
    residual = alg.opnorm(T.matrix @ X - Tprime.matrix)
    if residual > cfg.tol_residual * alg.opnorm(Tprime.matrix):
        return DouglasResult(False, residual)
    D = ModuleOperator(Tprime.domain, T.domain, X)
    if not bisect:
        return DouglasResult(True, residual, alg.opnorm(X) ** 2, D)
    P = alg.herm(Tprime.matrix @ alg.adjoint(Tprime.matrix))
    w, V = np.linalg.eigh(alg.herm(T.matrix @ alg.adjoint(T.matrix)))
    keep = w > 1e-10 * w[-1] if w.size and w[-1] > 0 else np.zeros(w.shape, dtype=bool)
    if not np.any(keep) or alg.opnorm(P) == 0.0:  # T' = 0
        return DouglasResult(True, residual, 0.0, D)
    # whiten on R(T): with R(T') in R(T) the congruence keeps the order, and the
    # oracle's tolerance becomes relative to both sides
    W = V[:, keep] / np.sqrt(w[keep])
    Pw = alg.herm(alg.adjoint(W) @ P @ W)
    unit = alg.opnorm(Pw)
    Pw, Iw = Pw / unit, np.eye(Pw.shape[0])
    sigma_min = float(np.sqrt(w[keep][0]))
    lo, hi = 0.0, ((Tprime.norm() / sigma_min) ** 2 + 1.0) / unit
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if alg.loewner_leq(Pw, mid * Iw, cfg).certified:
            hi = mid
        else:
            lo = mid
    return DouglasResult(True, residual, hi * unit, D)


def controller_spectral_data(C: ModuleOperator, cfg: ToleranceConfig = DEFAULT_TOL):
    """``(m, M)`` with ``m I <= C <= M I``."""
    if not gl_plus(C, cfg).certified:
        raise DomainError("controller is not in GL+")
    w = np.linalg.eigvalsh(alg.herm(C.matrix))
    return float(w[0]), float(w[-1])


# ---------------------------------------------------------------------------
# optimal bounds


@dataclass
class BoundsReport:
    """Optimal constants of an instance.

    ``B_opt``: least Bessel constant against ``<f, f>``.  ``A_opt``: greatest
    lower bound against ``<K* f, K* f>`` (None when ``R(K)`` escapes the range
    of ``S_(C,C')^(1/2)``; ``inf`` when ``K = 0``).  ``B_K``: least upper bound
    against the K-form, used for tightness.  ``A_id``: lower frame bound
    against ``<f, f>``.
    """

    B_opt: float
    A_opt: Optional[float]
    B_K: Optional[float]
    A_id: float
    tight: bool
    parseval: bool
    frame_class: str
    exact: bool
    route: str
    gaps: dict = field(default_factory=dict)
    consistency: dict = field(default_factory=dict)


def _ratio(Ql, Qh) -> float:
    return alg.max_lower_scalar(Ql, Qh)


def _bracket(space, L, H, rng, samples: int = 64):
    """``(certified, witnessed)`` brackets of ``sup{a : a Q_L <= Q_H}`` on a non-free module.

    The block-Gram certificate gives a lower bracket; the best ratio over
    candidate module elements gives an upper one.
    """
    Lb, Hb = block_matrix(L), block_matrix(H)
    if not (alg.is_psd(Lb).certified and alg.is_psd(Hb).certified):
        cert = 0.0
    else:
        cert = _ratio(Lb, Hb)
    m, p = space.dim, space.n
    cands = [np.eye(m, dtype=complex)[i] for i in range(m)]
    w, V = np.linalg.eigh(alg.herm(Hb))
    top = max(float(w[-1]), 0.0)
    keep = w > 1e-10 * max(top, 1e-300)
    if np.any(keep):
        U = V[:, keep] / np.sqrt(w[keep])
        _, Y = np.linalg.eigh(alg.herm(alg.adjoint(U) @ Lb @ U))
        cands += _rank_one_candidates([(U @ Y[:, -1]).reshape(m, p)])
    if np.any(~keep):
        K0 = V[:, ~keep]
        _, Y = np.linalg.eigh(alg.herm(alg.adjoint(K0) @ Lb @ K0))
        cands += _rank_one_candidates([(K0 @ Y[:, -1]).reshape(m, p)])
    cands += list(space.random_coords(rng, samples))
    wit = math.inf
    for c in cands:
        Ql = np.einsum("i,j,ijrs->rs", c, np.conj(c), L)
        Qh = np.einsum("i,j,ijrs->rs", c, np.conj(c), H)
        wit = min(wit, _ratio(Ql, Qh))
    return cert, wit


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is b
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= EXACT_RTOL * max(1.0, abs(a), abs(b))


def _inv(a):
    if a is None:
        return None
    if a == 0:
        return math.inf
    return 1.0 / a


def optimal_bounds(inst: FrameInstance, cfg: ToleranceConfig = DEFAULT_TOL, seed=0) -> BoundsReport:
    """Optimal frame constants.

    Free modules: ``B_opt = lambda_max(S_(C,C'))`` and, when
    :func:`douglas_check` confirms ``R(K) in R(S^(1/2))``,
    ``A_opt = 1 / lambda_max(K* S^+ K)``.  Other modules: block certificates
    bracketed by witnessed ratios; any residual gap is listed in ``gaps``.
    """
    t = form_tables(inst)
    Hb = block_matrix(t.integral)
    if not alg.is_hermitian(Hb, cfg):
        raise DomainError("controlled frame operator is not positive self-adjoint (broken instance)")
    gaps = {}
    if inst.space.is_free:
        route, exact = "free-exact", True
        fo = assemble_frame_operator(inst, cfg)
        S = ModuleOperator(inst.space, inst.space, alg.herm(fo.controlled.matrix))
        if not alg.is_psd(S.matrix, cfg).certified:
            raise DomainError("controlled frame operator is not positive (broken instance)")
        w = np.linalg.eigvalsh(alg.herm(Hb))
        B_opt = float(w[-1])
        A_id = max(float(w[0]), 0.0)
        K = inst.K_op
        if K.norm() == 0:
            A_opt = math.inf
        else:
            dg = douglas_check(operator_sqrt(S, cfg), K, cfg, bisect=False)
            if dg.in_range:
                M = alg.adjoint(K.matrix) @ alg.pinv_psd(S.matrix) @ K.matrix
                A_opt = 1.0 / float(np.linalg.eigvalsh(alg.herm(M))[-1])
            else:
                A_opt = None
        B_K = _inv(_ratio(Hb, block_matrix(t.kform)))
    else:
        route, exact = "pattern-certificate", True
        rng = np.random.default_rng(seed)
        a_cert, a_wit = _bracket(inst.space, t.integral, t.ident, rng)
        B_opt, B_lo = _inv(a_cert), _inv(a_wit)
        if not _same(a_cert, a_wit):
            exact = False
            gaps["B_opt"] = [B_lo, B_opt]
        A_cert, A_wit = _bracket(inst.space, t.kform, t.integral, rng)
        A_opt = A_cert if A_cert > 0 else None
        if not _same(A_cert, A_wit):
            exact = False
            gaps["A_opt"] = [A_cert, A_wit]
        k_cert, k_wit = _bracket(inst.space, t.integral, t.kform, rng)
        B_K = _inv(k_cert)
        if not _same(k_cert, k_wit):
            exact = False
            gaps["B_K"] = [_inv(k_wit), B_K]
        A_id, id_wit = _bracket(inst.space, t.ident, t.integral, rng)
        if not _same(A_id, id_wit):
            exact = False
            gaps["A_id"] = [A_id, id_wit]

    scale = max(1.0, B_opt)
    if A_id > cfg.tol_psd * scale:
        frame_class = "ControlledGFrame"
    elif A_opt is not None and A_opt > cfg.tol_psd * scale:
        frame_class = "ControlledKgFrame"
    else:
        frame_class = "BesselOnly"
    tight = (A_opt is not None and B_K is not None and not math.isinf(A_opt)
             and abs(A_opt - B_K) <= TIGHT_TOL * max(1.0, A_opt))
    parseval = tight and abs(A_opt - 1.0) <= TIGHT_TOL

    consistency = {}
    if B_opt > 0 and math.isfinite(B_opt):
        consistency["upper_at_B_opt_plus"] = certify_upper(inst, B_opt * (1 + 1e-3), cfg, tables=t).status.value
    if A_opt is not None and 0 < A_opt < math.inf:
        consistency["lower_at_A_opt_minus"] = certify_lower_K(inst, A_opt * (1 - 1e-3), cfg,
                                                              tables=t).status.value
    return BoundsReport(B_opt, A_opt, B_K, A_id, tight, parseval, frame_class, exact, route,
                        gaps, consistency)

"""Executable verifiers for the structural results on controlled K-g-frames.

Each verifier checks its hypotheses numerically, builds the transformed
instance, evaluates the claimed constants from their closed-form expressions
and certifies them with :mod:`modframe.certify`.  A failed hypothesis stops
the verifier with status ``HypothesesNotMet``: the claim is then untested,
not refuted.

Frame bounds taken as hypotheses default to the optimal ones, relaxed by
``relax`` (1e-6 relative) so that derived claims are not decided exactly on
the boundary of the order, where rounding alone would pick the verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import algebra as alg
from .algebra import DEFAULT_TOL, Status, ToleranceConfig, Verdict, combine
from .certify import (BoundsReport, certify_lower_K, certify_upper, controller_spectral_data,
                      douglas_check, optimal_bounds)
from .errors import InputError, NotAdjointable
from .frame import (FrameInstance, assemble_frame_operator, commutes, integral_form_gram,
                    validate_instance)
from .modules import (ModuleOperator, adjoint, block_matrix, flatten_positive_test, form_gram,
                      identity, operator_gram, operator_inverse, operator_sqrt, order_verdict,
                      verify_a_linear, zero_operator)

HYPOTHESES_NOT_MET = "HypothesesNotMet"
RELAX = 1e-6
IDENTITY_RTOL = 1e-12
FORM_RTOL = 1e-10
ORTHO_RTOL = 1e-8

THEOREM_TAGS = (
    "gframe_implies_kgframe",
    "bessel_compose",
    "lower_iff_inequality",
    "compose_K_adjoint",
    "single_controller_reduction",
    "sqrt_reduction",
    "controlled_iff_plain",
    "range_inclusion_transfer",
    "combine_orthogonal",
    "subalgebra_corollary",
)


@dataclass
class TheoremReport:
    """Outcome of one verifier.

    ``hypotheses`` and ``checks`` map names to verdicts; ``checks`` make up the
    conclusion.  ``details`` holds verdicts that are reported but not part of
    the conclusion, ``optimal`` the optimal bounds of the transformed
    instance(s).
    """

    theorem_id: str
    hypotheses: dict = field(default_factory=dict)
    claimed_constants: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    optimal: dict = field(default_factory=dict)
    conclusion: Optional[Verdict] = None
    status: str = Status.UNDETERMINED.value
    notes: list = field(default_factory=list)

    @property
    def hypotheses_ok(self) -> bool:
        return all(v.certified for v in self.hypotheses.values())


# ---------------------------------------------------------------------------
# shared plumbing


def _not_met(rep: TheoremReport) -> TheoremReport:
    bad = [k for k, v in rep.hypotheses.items() if not v.certified]
    rep.status = HYPOTHESES_NOT_MET
    rep.conclusion = None
    rep.notes.append("hypotheses not met: " + ", ".join(bad))
    return rep


def _finish(rep: TheoremReport) -> TheoremReport:
    verdicts = list(rep.checks.values())
    status = combine(verdicts)
    margin = min((v.margin for v in verdicts), default=0.0)
    rep.conclusion = Verdict(status, margin)
    rep.status = status.value
    return rep


def _flag(ok: bool, margin: float = 0.0, note: str = "") -> Verdict:
    return Verdict(Status.CERTIFIED if ok else Status.FALSIFIED, margin, note=note)


def _controller_hypotheses(rep: TheoremReport, inst: FrameInstance, cfg) -> bool:
    """GL+ controllers, adjointable family, and the commutation needed for S_(C,C') >= 0."""
    rep.hypotheses.update(validate_instance(inst, cfg))
    rep.hypotheses["C_Cprime_commute"] = commutes(inst.C, inst.Cprime)
    worst = Verdict(Status.CERTIFIED, 0.0)
    for k, (w, L) in enumerate(zip(inst.measure.weights, inst.ops())):
        if w == 0:
            continue
        LL = L.H @ L
        for label, ctrl in (("C", inst.C), ("Cprime", inst.Cprime)):
            v = commutes(ctrl, LL)
            if not v.certified:
                worst = Verdict(v.status, v.margin, note=f"{label} vs Lambda*Lambda at node {k}: {v.note}")
                break
        if not worst.certified:
            break
    rep.hypotheses["controllers_commute_with_family"] = worst
    return rep.hypotheses_ok


def _operator_hypotheses(rep: TheoremReport, name: str, T: ModuleOperator) -> bool:
    v = verify_a_linear(T, samples=20)
    rep.hypotheses[f"{name}_A_linear"] = v
    try:
        adjoint(T, samples=20)
        rep.hypotheses[f"{name}_adjointable"] = Verdict(Status.CERTIFIED, 0.0)
    except NotAdjointable as exc:
        rep.hypotheses[f"{name}_adjointable"] = Verdict(Status.FALSIFIED, -float(exc.error), note=str(exc))
    return rep.hypotheses_ok


def _commute_hyp(rep, name, S, T) -> bool:
    rep.hypotheses[name] = commutes(S, T)
    return rep.hypotheses[name].certified


def _lower(inst, A, K, cfg) -> Verdict:
    """``A <K* f, K* f> <= integral``; an infinite constant is only legitimate for ``K = 0``."""
    if A is None:
        return Verdict(Status.UNDETERMINED, 0.0, note="no lower constant available")
    if math.isinf(A):
        if K.norm() != 0:
            return Verdict(Status.FALSIFIED, -math.inf, note="infinite lower constant for K != 0")
        return certify_lower_K(inst, 1.0, cfg, K=K)
    if A <= 0:
        return Verdict(Status.CERTIFIED, 0.0, note="non-positive lower constant is vacuous")
    return certify_lower_K(inst, A, cfg, K=K)


def _upper(inst, B, cfg) -> Verdict:
    if B > 0:
        return certify_upper(inst, B, cfg)
    G = integral_form_gram(inst)
    return order_verdict(inst.space, G, np.zeros_like(G), cfg)


def _relaxed(br: BoundsReport, relax: float, use_identity: bool = False):
    A = br.A_id if use_identity else br.A_opt
    if A is not None and math.isfinite(A):
        A = A * (1 - relax)
    return A, br.B_opt * (1 + relax)


def _frame_hypotheses(rep, inst, cfg, seed, relax, K=None, label="frame", A=None, B=None,
                      need_lower=True, use_identity=False):
    """Bounds ``(A, B)`` of ``inst`` for target ``K``, certified as hypotheses under ``label``."""
    target = inst.K_op if K is None else K
    br = optimal_bounds(inst.with_(K=target), cfg, seed=seed)
    A0, B0 = _relaxed(br, relax, use_identity)
    A = A0 if A is None else float(A)
    B = B0 if B is None else float(B)
    rep.hypotheses[f"{label}_upper"] = _upper(inst, B, cfg)
    if need_lower:
        if A is None or not A > cfg.tol_psd * max(1.0, B):
            rep.hypotheses[f"{label}_lower"] = Verdict(Status.FALSIFIED, 0.0,
                                                       note="no positive lower bound exists")
        else:
            K_lower = identity(inst.space) if use_identity else target
            rep.hypotheses[f"{label}_lower"] = _lower(inst, A, K_lower, cfg)
    return A, B, br


def _bounds_dict(br: BoundsReport) -> dict:
    return {"A_opt": br.A_opt, "B_opt": br.B_opt, "A_id": br.A_id, "B_K": br.B_K,
            "frame_class": br.frame_class, "exact": br.exact}


def _within_optimal(lower, upper, br: BoundsReport, tol: float = 1e-6) -> Verdict:
    """Claims never beat the optimal constants: ``lower <= A_opt``, ``upper >= B_opt``."""
    ok = True
    if lower is not None and br.A_opt is not None and math.isfinite(lower) and math.isfinite(br.A_opt):
        ok &= lower <= br.A_opt * (1 + tol) + tol
    if upper is not None:
        ok &= upper >= br.B_opt * (1 - tol) - tol
    return _flag(ok, note="" if ok else "claimed constant beats the optimal bound")


def _inv_sq(x: float) -> float:
    return math.inf if x == 0 else 1.0 / x ** 2


# ---------------------------------------------------------------------------
# verifiers


def verify_gframe_implies_kgframe(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                  cfg: ToleranceConfig = DEFAULT_TOL, seed=0, A=None, B=None,
                                  relax: float = RELAX) -> TheoremReport:
    """A controlled g-frame with bounds ``(A, B)`` is a K-g-frame with bounds ``(A ||K||^-2, B)``."""
    rep = TheoremReport("gframe_implies_kgframe")
    K = inst.K_op if K is None else K
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)):
        return _not_met(rep)
    A, B, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, label="g_frame", A=A, B=B,
                                use_identity=True)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    lower = A * _inv_sq(K.norm()) if K.norm() else math.inf
    rep.claimed_constants = {"A": A, "B": B, "norm_K": K.norm(), "lower_K": lower, "upper": B}
    rep.checks["lower_K"] = _lower(inst, lower, K, cfg)
    rep.checks["upper"] = _upper(inst, B, cfg)
    br = optimal_bounds(inst.with_(K=K), cfg, seed=seed)
    rep.optimal["K_frame"] = _bounds_dict(br)
    rep.checks["within_optimal"] = _within_optimal(lower, B, br)
    return _finish(rep)


def verify_bessel_compose(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                          cfg: ToleranceConfig = DEFAULT_TOL, seed=0, B=None,
                          relax: float = RELAX) -> TheoremReport:
    """The family ``Lambda_w K`` is Bessel with constant ``||K||^2 B``.

    Moving ``K`` past the controllers requires ``K`` to commute with ``C`` and
    ``C'``; this is checked as a hypothesis.
    """
    rep = TheoremReport("bessel_compose")
    K = inst.K_op if K is None else K
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)):
        return _not_met(rep)
    _commute_hyp(rep, "K_commutes_with_C", K, inst.C)
    _commute_hyp(rep, "K_commutes_with_Cprime", K, inst.Cprime)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    _, B, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, label="bessel", B=B, need_lower=False)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    new = inst.with_(family=inst.family.compose_right(K), name=f"{inst.name}|Lambda K")
    upper = K.norm() ** 2 * B
    rep.claimed_constants = {"B": B, "norm_K": K.norm(), "upper": upper}
    rep.checks["upper"] = _upper(new, upper, cfg)
    br = optimal_bounds(new.with_(K=identity(inst.space)), cfg, seed=seed)
    rep.optimal["composed"] = _bounds_dict(br)
    rep.checks["within_optimal"] = _within_optimal(None, upper, br)
    return _finish(rep)


def verify_lower_iff_inequality(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                A: Optional[float] = None, cfg: ToleranceConfig = DEFAULT_TOL,
                                seed=0, relax: float = RELAX) -> TheoremReport:
    """The form inequality ``A <K* f, K* f> <= integral`` and ``A K K* <= S_(C,C')`` agree.

    The first is decided on the integral form, the second on the assembled
    operator; the conclusion is that the two verdicts coincide.  ``A`` defaults
    to half the optimal lower bound.
    """
    rep = TheoremReport("lower_iff_inequality")
    K = inst.K_op if K is None else K
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)):
        return _not_met(rep)
    _, _, br = _frame_hypotheses(rep, inst, cfg, seed, relax, K=K, label="bessel", need_lower=False)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    if A is None:
        A = br.A_opt / 2 if br.A_opt is not None and math.isfinite(br.A_opt) and br.A_opt > 0 else 1.0
    A = float(A)
    rep.claimed_constants = {"A": A}
    form = certify_lower_K(inst, A, cfg, K=K)
    S = assemble_frame_operator(inst, cfg).controlled
    T = S - A * (K @ K.H)
    if inst.space.is_free:
        op = flatten_positive_test(T, cfg)
    else:
        G = operator_gram(inst.space, T)
        op = order_verdict(inst.space, np.zeros_like(G), G, cfg, seed=seed)
    rep.details = {"form_inequality": form, "operator_inequality": op}
    same = form.status is op.status
    rep.checks["routes_agree"] = _flag(same, min(form.margin, op.margin),
                                       note="" if same else "form and operator verdicts diverge")
    rep.optimal["K_frame"] = _bounds_dict(br)
    return _finish(rep)


def verify_compose_K_adjoint(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                             cfg: ToleranceConfig = DEFAULT_TOL, seed=0, A=None, B=None,
                             relax: float = RELAX) -> TheoremReport:
    """If ``K*`` commutes with ``C, C'``, ``Lambda_w K*`` is a K-g-frame with bounds ``(A, B ||K*||^2)``."""
    rep = TheoremReport("compose_K_adjoint")
    K = inst.K_op if K is None else K
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)):
        return _not_met(rep)
    _commute_hyp(rep, "Kstar_commutes_with_C", K.H, inst.C)
    _commute_hyp(rep, "Kstar_commutes_with_Cprime", K.H, inst.Cprime)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    A, B, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, label="g_frame", A=A, B=B,
                                use_identity=True)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    new = inst.with_(family=inst.family.compose_right(K.H), K=K, name=f"{inst.name}|Lambda K*")
    upper = B * K.norm() ** 2
    rep.claimed_constants = {"A": A, "B": B, "norm_Kstar": K.norm(), "lower_K": A, "upper": upper}
    rep.checks["lower_K"] = _lower(new, A, K, cfg)
    rep.checks["upper"] = _upper(new, upper, cfg)
    br = optimal_bounds(new, cfg, seed=seed)
    rep.optimal["composed"] = _bounds_dict(br)
    rep.checks["within_optimal"] = _within_optimal(A, upper, br)
    return _finish(rep)


def _reduction_hypotheses(rep, inst, cfg) -> bool:
    ok = _controller_hypotheses(rep, inst, cfg)
    S = assemble_frame_operator(inst, cfg).plain
    _commute_hyp(rep, "C_commutes_with_S", inst.C, S)
    _commute_hyp(rep, "Cprime_commutes_with_S", inst.Cprime, S)
    return ok and rep.hypotheses_ok


def _transfer(rep, inst, new, K, cfg, seed, relax):
    """Bounds of ``inst`` certified on ``new`` and vice versa."""
    br_old = optimal_bounds(inst.with_(K=K), cfg, seed=seed)
    br_new = optimal_bounds(new.with_(K=K), cfg, seed=seed)
    A_old, B_old = _relaxed(br_old, relax)
    A_new, B_new = _relaxed(br_new, relax)
    rep.claimed_constants.update({"A": A_old, "B": B_old, "A_reduced": A_new, "B_reduced": B_new})
    rep.checks["upper_forward"] = _upper(new, B_old, cfg)
    rep.checks["upper_backward"] = _upper(inst, B_new, cfg)
    if A_old is None or A_new is None:
        rep.notes.append("no lower K-bound on one side; only the upper bound is transferred")
        rep.details["lower_K_exists"] = _flag(A_old is None and A_new is None,
                                              note="lower bound exists on one side only")
        rep.checks["lower_presence_agrees"] = rep.details["lower_K_exists"]
    else:
        rep.checks["lower_forward"] = _lower(new, A_old, K, cfg)
        rep.checks["lower_backward"] = _lower(inst, A_new, K, cfg)
    rep.optimal["original"] = _bounds_dict(br_old)
    rep.optimal["reduced"] = _bounds_dict(br_new)


def _forms_equal(inst, new) -> Verdict:
    G1, G2 = integral_form_gram(inst), integral_form_gram(new)
    scale = max(1.0, alg.opnorm(block_matrix(G1)))
    err = float(np.max(np.abs(G1 - G2))) if G1.size else 0.0
    return _flag(err <= FORM_RTOL * scale, -err, note=f"max Gram difference {err:.3e}")


def verify_single_controller_reduction(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                       cfg: ToleranceConfig = DEFAULT_TOL, seed=0,
                                       relax: float = RELAX) -> TheoremReport:
    """``(C, C')`` versus ``(C'C, I)`` control: same frame operator, same bounds."""
    rep = TheoremReport("single_controller_reduction")
    K = inst.K_op if K is None else K
    if not _reduction_hypotheses(rep, inst, cfg):
        return _not_met(rep)
    D = inst.space.dim
    summed = np.zeros((D, D), dtype=complex)
    for w, L in zip(inst.measure.weights, inst.ops()):
        summed += w * (inst.Cprime.matrix @ L.H.matrix @ L.matrix @ inst.C.matrix)
    fo = assemble_frame_operator(inst, cfg)
    err = alg.opnorm(summed - inst.Cprime.matrix @ fo.plain.matrix @ inst.C.matrix)
    rep.checks["S_CCprime_equals_CprimeSC"] = _flag(err <= IDENTITY_RTOL * alg.scale_of(summed), -err,
                                                    note=f"defect {err:.3e}")
    new = inst.with_(C=inst.Cprime @ inst.C, Cprime=identity(inst.space), name=f"{inst.name}|(C'C, I)")
    rep.checks["forms_equal"] = _forms_equal(inst, new)
    _transfer(rep, inst, new, K, cfg, seed, relax)
    return _finish(rep)


def verify_sqrt_reduction(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                          cfg: ToleranceConfig = DEFAULT_TOL, seed=0,
                          relax: float = RELAX) -> TheoremReport:
    """``(C, C')`` versus ``((C'C)^(1/2), (C'C)^(1/2))`` control."""
    rep = TheoremReport("sqrt_reduction")
    K = inst.K_op if K is None else K
    if not _reduction_hypotheses(rep, inst, cfg):
        return _not_met(rep)
    R = operator_sqrt(inst.Cprime @ inst.C, cfg)
    new = inst.with_(C=R, Cprime=R, name=f"{inst.name}|sqrt")
    rep.checks["forms_equal"] = _forms_equal(inst, new)
    _transfer(rep, inst, new, K, cfg, seed, relax)
    return _finish(rep)


def verify_controlled_iff_plain(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                cfg: ToleranceConfig = DEFAULT_TOL, seed=0,
                                relax: float = RELAX) -> TheoremReport:
    """Controlled and plain K-g-frames with the spectral-data constants.

    Forward: plain bounds ``(A, B)`` give controlled bounds ``(m m' A, M M' B)``.
    Reverse: controlled bounds give plain bounds
    ``(A ||(CC')^(1/2)||^-2, B ||(CC')^(-1/2)||^2)``.  Besides ``CK = KC``,
    ``C'K = KC'`` and ``CS = SC`` the forward step also needs ``C'S = SC'``.
    """
    rep = TheoremReport("controlled_iff_plain")
    K = inst.K_op if K is None else K
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)):
        return _not_met(rep)
    S = assemble_frame_operator(inst, cfg).plain
    _commute_hyp(rep, "CK_equals_KC", inst.C, K)
    _commute_hyp(rep, "CprimeK_equals_KCprime", inst.Cprime, K)
    _commute_hyp(rep, "CS_equals_SC", inst.C, S)
    _commute_hyp(rep, "CprimeS_equals_SCprime", inst.Cprime, S)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    I = identity(inst.space)
    plain = inst.with_(C=I, Cprime=I, name=f"{inst.name}|plain")
    A_p, B_p, _ = _frame_hypotheses(rep, plain, cfg, seed, relax, K=K, label="plain_K_frame")
    A_c, B_c, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, K=K, label="controlled_K_frame")
    if not rep.hypotheses_ok:
        return _not_met(rep)
    m, M = controller_spectral_data(inst.C, cfg)
    mp, Mp = controller_spectral_data(inst.Cprime, cfg)
    R = operator_sqrt(inst.C @ inst.Cprime, cfg)
    Rinv = operator_inverse(R, cfg)
    fwd_lower, fwd_upper = m * mp * A_p, M * Mp * B_p
    rev_lower, rev_upper = A_c / R.norm() ** 2, B_c * Rinv.norm() ** 2
    rep.claimed_constants = {"m": m, "M": M, "m_prime": mp, "M_prime": Mp,
                             "A_plain": A_p, "B_plain": B_p, "A_controlled": A_c, "B_controlled": B_c,
                             "forward_lower": fwd_lower, "forward_upper": fwd_upper,
                             "reverse_lower": rev_lower, "reverse_upper": rev_upper}
    rep.checks["forward_lower"] = _lower(inst, fwd_lower, K, cfg)
    rep.checks["forward_upper"] = _upper(inst, fwd_upper, cfg)
    rep.checks["reverse_lower"] = _lower(plain, rev_lower, K, cfg)
    rep.checks["reverse_upper"] = _upper(plain, rev_upper, cfg)
    br_c = optimal_bounds(inst.with_(K=K), cfg, seed=seed)
    br_p = optimal_bounds(plain.with_(K=K), cfg, seed=seed)
    rep.optimal["controlled"] = _bounds_dict(br_c)
    rep.optimal["plain"] = _bounds_dict(br_p)
    rep.checks["forward_within_optimal"] = _within_optimal(fwd_lower, fwd_upper, br_c)
    rep.checks["reverse_within_optimal"] = _within_optimal(rev_lower, rev_upper, br_p)
    return _finish(rep)


def verify_range_inclusion_transfer(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                    T: Optional[ModuleOperator] = None,
                                    cfg: ToleranceConfig = DEFAULT_TOL, seed=0, A=None, B=None,
                                    relax: float = RELAX) -> TheoremReport:
    """``R(T) in R(K)`` turns a K-g-frame ``(A, B)`` into a T-g-frame ``(A / m, B)``
    with ``T T* <= m K K*``."""
    rep = TheoremReport("range_inclusion_transfer")
    K = inst.K_op if K is None else K
    if T is None:
        raise InputError("range_inclusion_transfer needs an operator T")
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K", K)
            and _operator_hypotheses(rep, "T", T)):
        return _not_met(rep)
    dg = douglas_check(K, T, cfg)
    rep.hypotheses["range_T_in_range_K"] = _flag(dg.in_range, -dg.residual,
                                                 note=f"least-squares residual {dg.residual:.3e}")
    if not rep.hypotheses_ok:
        return _not_met(rep)
    A, B, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, K=K, label="K_frame", A=A, B=B)
    if not rep.hypotheses_ok:
        return _not_met(rep)
    m = dg.lambda_min
    lower = math.inf if m == 0 else (A / m if math.isfinite(A) else math.inf)
    if math.isinf(A) and T.norm() != 0:
        lower = None
    rep.claimed_constants = {"A": A, "B": B, "m": m, "lower_T": lower, "upper": B}
    normD2 = dg.D.norm() ** 2
    rep.details["m_le_norm_D_squared"] = _flag(m <= normD2 * (1 + 1e-8) + cfg.tol_psd,
                                               note=f"m = {m:.6g}, ||D||^2 = {normD2:.6g}")
    rep.checks["lower_T"] = _lower(inst, lower, T, cfg)
    rep.checks["upper"] = _upper(inst, B, cfg)
    br = optimal_bounds(inst.with_(K=T), cfg, seed=seed)
    rep.optimal["T_frame"] = _bounds_dict(br)
    rep.checks["within_optimal"] = _within_optimal(lower, B, br)
    return _finish(rep)


def verify_combine_orthogonal(inst: FrameInstance, K1: ModuleOperator, K2: ModuleOperator,
                              alpha: complex = 1.0, beta: complex = 1.0,
                              cfg: ToleranceConfig = DEFAULT_TOL, seed=0,
                              relax: float = RELAX) -> TheoremReport:
    """K1- and K2-g-frames with ``R(K1) _|_ R(K2)`` are ``(alpha K1 + beta K2)``- and ``K1 K2``-g-frames.

    Sum: lower ``A1 A2 / (2 (|alpha|^2 A2 + |beta|^2 A1))``, upper ``(B1 + B2) / 2``.
    Product: lower ``A1 ||K2*||^-2``, upper ``B1``.
    """
    rep = TheoremReport("combine_orthogonal")
    if not (_controller_hypotheses(rep, inst, cfg) and _operator_hypotheses(rep, "K1", K1)
            and _operator_hypotheses(rep, "K2", K2)):
        return _not_met(rep)
    cross = form_gram(inst.space, [(1.0, K1, K2)])
    scale = max(1.0, K1.norm() * K2.norm())
    err = float(np.max(np.abs(cross))) if cross.size else 0.0
    rep.hypotheses["ranges_orthogonal"] = _flag(err <= ORTHO_RTOL * scale, -err,
                                                note=f"max cross inner product {err:.3e}")
    if not rep.hypotheses_ok:
        return _not_met(rep)
    A1, B1, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, K=K1, label="K1_frame")
    A2, B2, _ = _frame_hypotheses(rep, inst, cfg, seed, relax, K=K2, label="K2_frame")
    if not rep.hypotheses_ok:
        return _not_met(rep)
    a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
    # A1 A2 / (2 (|a|^2 A2 + |b|^2 A1)) written so that A_i = inf (K_i = 0) is harmless
    denom = 2 * (a2 / A1 + b2 / A2)
    sum_lower = math.inf if denom == 0 else 1.0 / denom
    sum_upper = (B1 + B2) / 2
    prod_lower = A1 * _inv_sq(K2.norm()) if K2.norm() else math.inf
    Ksum = complex(alpha) * K1 + complex(beta) * K2
    Kprod = K1 @ K2
    rep.claimed_constants = {"A1": A1, "B1": B1, "A2": A2, "B2": B2,
                             "alpha": complex(alpha), "beta": complex(beta),
                             "sum_lower": sum_lower, "sum_upper": sum_upper,
                             "product_lower": prod_lower, "product_upper": B1}
    rep.checks["sum_lower"] = _lower(inst, sum_lower, Ksum, cfg)
    rep.checks["sum_upper"] = _upper(inst, sum_upper, cfg)
    rep.checks["product_lower"] = _lower(inst, prod_lower, Kprod, cfg)
    rep.checks["product_upper"] = _upper(inst, B1, cfg)
    br_s = optimal_bounds(inst.with_(K=Ksum), cfg, seed=seed)
    br_p = optimal_bounds(inst.with_(K=Kprod), cfg, seed=seed)
    rep.optimal["sum"] = _bounds_dict(br_s)
    rep.optimal["product"] = _bounds_dict(br_p)
    rep.checks["sum_within_optimal"] = _within_optimal(sum_lower, sum_upper, br_s)
    rep.checks["product_within_optimal"] = _within_optimal(prod_lower, B1, br_p)
    return _finish(rep)


def polynomial_in(K: ModuleOperator, poly) -> ModuleOperator:
    """``sum_j c_j K^j``; ``c_0`` multiplies the identity."""
    poly = list(poly)
    out = zero_operator(K.domain)
    P = identity(K.domain)
    for c in poly:
        out = out + complex(c) * P
        P = P @ K
    return out


def verify_subalgebra_corollary(inst: FrameInstance, K: Optional[ModuleOperator] = None,
                                poly=(0.0, 1.0), cfg: ToleranceConfig = DEFAULT_TOL, seed=0,
                                relax: float = RELAX) -> TheoremReport:
    """A K-g-frame is a ``p(K)``-g-frame for polynomials ``p`` without constant term.

    Runs the range-inclusion transfer with ``T = p(K)``.  A nonzero constant
    term is outside the (non-unital) subalgebra and fails the hypotheses.
    """
    K = inst.K_op if K is None else K
    poly = [complex(c) for c in poly]
    if not poly:
        raise InputError("polynomial needs at least one coefficient")
    no_const = poly[0] == 0
    if not no_const:
        rep = TheoremReport("subalgebra_corollary")
        rep.hypotheses["no_constant_term"] = _flag(False, -abs(poly[0]),
                                                   note="constant term leaves the subalgebra generated by K")
        return _not_met(rep)
    Theta = polynomial_in(K, poly)
    rep = verify_range_inclusion_transfer(inst, K, Theta, cfg, seed=seed, relax=relax)
    rep.theorem_id = "subalgebra_corollary"
    rep.hypotheses = {"no_constant_term": _flag(True), **rep.hypotheses}
    rep.claimed_constants["poly"] = poly
    return rep


# ---------------------------------------------------------------------------
# dispatch


def run_verifier(tag: str, inst: FrameInstance, extras: Optional[dict] = None,
                 cfg: ToleranceConfig = DEFAULT_TOL, seed=0) -> TheoremReport:
    """Run the verifier ``tag`` with operands taken from ``extras`` (``K1``, ``K2``, ``T``,
    ``poly``, ``A``, ``alpha``, ``beta``)."""
    extras = extras or {}
    if tag not in THEOREM_TAGS:
        raise InputError(f"unknown theorem tag {tag!r}; known tags: {', '.join(THEOREM_TAGS)}")

    def need(key):
        if extras.get(key) is None:
            raise InputError(f"verifier {tag} needs '{key}' in the instance extras")
        return extras[key]

    if tag == "gframe_implies_kgframe":
        return verify_gframe_implies_kgframe(inst, cfg=cfg, seed=seed)
    if tag == "bessel_compose":
        return verify_bessel_compose(inst, cfg=cfg, seed=seed)
    if tag == "lower_iff_inequality":
        return verify_lower_iff_inequality(inst, A=extras.get("A"), cfg=cfg, seed=seed)
    if tag == "compose_K_adjoint":
        return verify_compose_K_adjoint(inst, cfg=cfg, seed=seed)
    if tag == "single_controller_reduction":
        return verify_single_controller_reduction(inst, cfg=cfg, seed=seed)
    if tag == "sqrt_reduction":
        return verify_sqrt_reduction(inst, cfg=cfg, seed=seed)
    if tag == "controlled_iff_plain":
        return verify_controlled_iff_plain(inst, cfg=cfg, seed=seed)
    if tag == "range_inclusion_transfer":
        return verify_range_inclusion_transfer(inst, T=need("T"), cfg=cfg, seed=seed)
    if tag == "combine_orthogonal":
        return verify_combine_orthogonal(inst, need("K1"), need("K2"), extras.get("alpha", 1.0),
                                         extras.get("beta", 1.0), cfg=cfg, seed=seed)
    return verify_subalgebra_corollary(inst, poly=extras.get("poly", (0.0, 1.0)), cfg=cfg, seed=seed)

"""The matrix C*-algebra M_n(C): positivity, square roots and Loewner comparison.

Algebra elements are plain complex ``numpy`` arrays of shape ``(n, n)``.  The
same routines are reused on flattened operator matrices, which are just larger
elements of some M_N(C).

Every positivity decision is three-valued.  With ``s = max(1, ||X||)``::

    lambda_min(Herm X) >= -tol_psd * s       -> Certified
    lambda_min(Herm X) <  -tol_falsify * s   -> Falsified (eigenvector witness)
    otherwise                                -> Undetermined
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace
from typing import Any, Optional

import numpy as np

from .errors import DomainError, InputError

TOL_SCALE_ENV = "MODFRAME_TOL_SCALE"


@dataclass(frozen=True)
class ToleranceConfig:
    tol_h: float = 1e-10
    tol_psd: float = 1e-9
    tol_falsify: float = 1e-6
    tol_residual: float = 1e-8

    def __post_init__(self):
        vals = (self.tol_h, self.tol_psd, self.tol_falsify, self.tol_residual)
        if not all(math.isfinite(v) and v >= 0 for v in vals):
            raise InputError(f"tolerances must be finite and non-negative: {vals}")
        if not self.tol_falsify > self.tol_psd:
            raise InputError("tol_falsify must exceed tol_psd")

    def scaled(self, factor: float) -> "ToleranceConfig":
        return ToleranceConfig(self.tol_h * factor, self.tol_psd * factor,
                               self.tol_falsify * factor, self.tol_residual * factor)

    def with_overrides(self, **overrides) -> "ToleranceConfig":
        return replace(self, **overrides)

    @classmethod
    def from_env(cls, **overrides) -> "ToleranceConfig":
        """Defaults (plus overrides), scaled by ``$MODFRAME_TOL_SCALE`` when set."""
        cfg = cls(**overrides)
        raw = os.environ.get(TOL_SCALE_ENV)
        if raw:
            try:
                factor = float(raw)
            except ValueError:
                raise InputError(f"{TOL_SCALE_ENV}={raw!r} is not a number") from None
            if not (math.isfinite(factor) and factor > 0):
                raise InputError(f"{TOL_SCALE_ENV} must be a positive finite number")
            cfg = cfg.scaled(factor)
        return cfg


DEFAULT_TOL = ToleranceConfig()


class Status(str, enum.Enum):
    CERTIFIED = "Certified"
    FALSIFIED = "Falsified"
    UNDETERMINED = "Undetermined"


@dataclass
class Verdict:
    """Outcome of a certification.

    ``margin`` is the signed smallest eigenvalue of the decisive Hermitian
    object (scaled as documented by the producer).  ``witness`` is present
    whenever ``status`` is Falsified.
    """

    status: Status
    margin: float
    witness: Any = None
    violation: Optional[np.ndarray] = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    @property
    def falsified(self) -> bool:
        return self.status is Status.FALSIFIED

    def __bool__(self):
        return self.certified


def combine(verdicts) -> Status:
    """Conjunction of verdicts: any Falsified wins, then any Undetermined."""
    statuses = [v.status for v in verdicts]
    if Status.FALSIFIED in statuses:
        return Status.FALSIFIED
    if Status.UNDETERMINED in statuses:
        return Status.UNDETERMINED
    return Status.CERTIFIED


# ---------------------------------------------------------------------------
# elementwise plumbing


def as_element(X, n: Optional[int] = None) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise InputError(f"algebra element must be square, got shape {X.shape}")
    if n is not None and X.shape[0] != n:
        raise InputError(f"expected a {n}x{n} element, got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InputError("algebra element has non-finite entries")
    return X


def adjoint(X) -> np.ndarray:
    return np.conj(np.transpose(X))


def herm(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    return 0.5 * (X + adjoint(X))


def opnorm(X) -> float:
    X = np.asarray(X)
    if X.size == 0:
        return 0.0
    return float(np.linalg.norm(X, 2))


def scale_of(X) -> float:
    return max(1.0, opnorm(X))


def is_hermitian(X, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    X = np.asarray(X, dtype=complex)
    dev = np.max(np.abs(X - adjoint(X))) if X.size else 0.0
    return bool(dev <= cfg.tol_h * scale_of(X))


def _same_shape(X, Y):
    if X.shape != Y.shape:
        raise InputError(f"dimension mismatch: {X.shape} vs {Y.shape}")


def add(X, Y):
    X, Y = as_element(X), as_element(Y)
    _same_shape(X, Y)
    return X + Y


def multiply(X, Y):
    X, Y = as_element(X), as_element(Y)
    _same_shape(X, Y)
    return X @ Y


def inverse(X, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Inverse of an element whose modulus ``|X|`` is bounded below by ``tol_psd``."""
    X = as_element(X)
    smin = np.linalg.svd(X, compute_uv=False).min()
    if not smin > cfg.tol_psd:
        raise DomainError(f"element is not invertible (sigma_min = {smin:.3e})")
    Xi = np.linalg.inv(X)
    res = opnorm(X @ Xi - np.eye(X.shape[0]))
    if res > cfg.tol_residual * scale_of(X) * max(1.0, opnorm(Xi)):
        raise DomainError(f"inverse residual {res:.3e} too large (ill-conditioned element)")
    return Xi


# ---------------------------------------------------------------------------
# spectral routines


def extremal_eigs(X, cfg: ToleranceConfig = DEFAULT_TOL):
    """Smallest/largest eigenvalue of ``Herm(X)`` with unit eigenvectors.

    Returns ``(lam_min, lam_max, (v_min, v_max))``.
    """
    X = as_element(X)
    if not is_hermitian(X, cfg):
        raise InputError("extremal_eigs requires a Hermitian element")
    w, V = np.linalg.eigh(herm(X))
    return float(w[0]), float(w[-1]), (V[:, 0], V[:, -1])


def is_psd(X, cfg: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Three-valued positivity test (see the module docstring)."""
    X = as_element(X)
    s = scale_of(X)
    w, V = np.linalg.eigh(herm(X))
    lam = float(w[0])
    hermitian = is_hermitian(X, cfg)
    if hermitian and lam >= -cfg.tol_psd * s:
        return Verdict(Status.CERTIFIED, lam)
    if lam < -cfg.tol_falsify * s:
        return Verdict(Status.FALSIFIED, lam, witness=V[:, 0])
    note = "" if hermitian else "element is not Hermitian within tol_h"
    return Verdict(Status.UNDETERMINED, lam, note=note)


def loewner_leq(X, Y, cfg: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Verdict on ``X <= Y``, i.e. on positivity of ``Y - X``."""
    X, Y = as_element(X), as_element(Y)
    _same_shape(X, Y)
    if not (is_hermitian(X, cfg) and is_hermitian(Y, cfg)):
        raise InputError("loewner_leq requires Hermitian arguments")
    return is_psd(Y - X, cfg)


def sqrt_psd(X, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Positive square root via the spectral decomposition (negative rounding clamped)."""
    X = as_element(X)
    if not is_psd(X, cfg).certified:
        raise DomainError("sqrt_psd requires a positive semidefinite element")
    w, V = np.linalg.eigh(herm(X))
    R = (V * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(V)
    return herm(R)


def psd_function(X, fn, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Apply a real function to the spectrum of a Hermitian element."""
    X = as_element(X)
    if not is_hermitian(X, cfg):
        raise InputError("psd_function requires a Hermitian element")
    w, V = np.linalg.eigh(herm(X))
    return (V * fn(w)) @ adjoint(V)


def modulus(X) -> np.ndarray:
    """``|X| = (X* X)^(1/2)``."""
    X = as_element(X)
    return sqrt_psd(herm(adjoint(X) @ X))


def pinv_psd(X, rtol: float = 1e-10) -> np.ndarray:
    """Moore-Penrose inverse of a Hermitian PSD matrix, cutting eigenvalues below ``rtol * lam_max``."""
    w, V = np.linalg.eigh(herm(X))
    cut = rtol * max(float(np.max(np.abs(w))) if w.size else 0.0, 1e-300)
    inv = np.where(w > cut, 1.0 / np.where(w > cut, w, 1.0), 0.0)
    return (V * inv) @ adjoint(V)


def max_lower_scalar(L, H, rtol: float = 1e-10) -> float:
    """Supremum of ``a >= 0`` with ``a L <= H`` for Hermitian PSD ``L`` and ``H``.

    Returns ``inf`` when ``L`` vanishes and ``0`` when ``range(L)`` is not
    contained in ``range(H)``; otherwise ``1 / lambda_max(H^{+1/2} L H^{+1/2})``.
    """
    L, H = herm(L), herm(H)
    sL = opnorm(L)
    if sL == 0.0:
        return math.inf
    w, V = np.linalg.eigh(H)
    top = max(float(w[-1]), 0.0)
    keep = w > rtol * max(top, 1e-300)
    if top == 0.0 or not np.any(keep):
        return 0.0
    kernel = V[:, ~keep]
    if kernel.shape[1]:
        leak = opnorm(adjoint(kernel) @ L @ kernel)
        if leak > rtol * 1e2 * sL:
            return 0.0
    U = V[:, keep] / np.sqrt(w[keep])
    M = herm(adjoint(U) @ L @ U)
    lam = float(np.linalg.eigvalsh(M)[-1])
    if lam <= 0.0:
        return math.inf
    return 1.0 / lam

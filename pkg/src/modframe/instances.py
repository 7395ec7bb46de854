"""Instance files (UTF-8 JSON) and seeded instance generators.

Layout of a file::

    {
     "version": "1.0",
     "algebra_dim": n,
     "module": {"kind": "free", "rank": d, "algebra_dim": n}
               | {"kind": "pattern", "rows": p, "cols": q, "pattern": [[i, j], ...]},
     "range_module": <module>,                      (optional, defaults to "module")
     "measure": {"type": "interval", "a": 0, "b": 1, "rule": "gauss_legendre", "n": 16}
                | {"type": "discrete", "nodes": [[w, weight], ...]},
     "family": {"type": "scalar_profile", "coeffs": [c0, ...], "base": <matrix>}
               | {"type": "table", "ops": [<matrix>, ...]},
     "C": <matrix>, "Cprime": <matrix>, "K": <matrix>,   (K optional)
     "tolerances": {"tol_psd": ...},                 (optional)
     "extras": {"K1": <matrix>, "K2": <matrix>, "T": <matrix>, "poly": [...],
                "A": a, "alpha": x, "beta": y}       (optional)
    }

A matrix acts on module coordinates (``codomain dim x domain dim``) and is
written row-major with every entry an ``[re, im]`` pair; scalars may also be
plain numbers or ``[re, im]`` pairs.

Generators draw from ``numpy.random.default_rng(seed)`` (PCG64), so a seed
gives the same file on every platform.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import ToleranceConfig
from .errors import InputError
from .frame import (EXAMPLE_PATTERN, FrameInstance, MeasureDiscretization, OperatorFamily,
                    build_paper_example, discretize_interval)
from .modules import ModuleOperator, ModuleSpace, identity, mask_operator, right_multiplication

VERSION = "1.0"
PROFILES = ("free_commuting", "pattern_example_like", "orthogonal_ranges", "range_included",
            "noncommuting_adversarial")
EXTRA_OPERATORS = ("K1", "K2", "T")
TOLERANCE_KEYS = ("tol_h", "tol_psd", "tol_falsify", "tol_residual")


@dataclass
class InstanceBundle:
    """A parsed instance file: the frame instance plus verifier operands and tolerance overrides."""

    instance: FrameInstance
    extras: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    version: str = VERSION

    def config(self) -> ToleranceConfig:
        return ToleranceConfig.from_env(**self.tolerances)


class _SchemaError(Exception):
    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = tuple(path)


# ---------------------------------------------------------------------------
# source positions for diagnostics

_WS = re.compile(r"\s*")


def _value_offsets(text: str) -> dict:
    """Offsets of every value in a valid JSON document, keyed by path tuples."""
    dec = json.JSONDecoder()
    out = {}

    def skip(i):
        return _WS.match(text, i).end()

    def value(i, path):
        i = skip(i)
        out[path] = i
        ch = text[i]
        if ch == "{":
            i = skip(i + 1)
            if text[i] == "}":
                return i + 1
            while True:
                key, i = json.decoder.scanstring(text, skip(i) + 1)
                i = skip(i) + 1  # colon
                i = skip(value(i, path + (key,)))
                if text[i] == ",":
                    i += 1
                    continue
                return i + 1
        if ch == "[":
            i = skip(i + 1)
            if text[i] == "]":
                return i + 1
            k = 0
            while True:
                i = skip(value(i, path + (k,)))
                k += 1
                if text[i] == ",":
                    i += 1
                    continue
                return i + 1
        return dec.raw_decode(text, i)[1]

    value(0, ())
    return out


def _line_of(text: str, path) -> int:
    offsets = _value_offsets(text)
    path = tuple(path)
    while path not in offsets and path:
        path = path[:-1]
    return text.count("\n", 0, offsets.get(path, 0)) + 1


def _fmt_path(path) -> str:
    s = ""
    for p in path:
        s += f"[{p}]" if isinstance(p, int) else (f".{p}" if s else p)
    return s or "<root>"


# ---------------------------------------------------------------------------
# decoding


def _get(doc, key, path, kind=None, required=True):
    if not isinstance(doc, dict):
        raise _SchemaError("expected an object", path)
    if key not in doc:
        if required:
            raise _SchemaError(f"missing key '{key}'", path)
        return None
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise _SchemaError(f"'{key}' has the wrong type", path + (key,))
    return v


def _number(v, path) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _SchemaError("expected a number", path)
    if not math.isfinite(v):
        raise _SchemaError("number is not finite", path)
    return float(v)


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise _SchemaError("expected an integer", path)
    return v


def _scalar(v, path) -> complex:
    if isinstance(v, list):
        if len(v) != 2:
            raise _SchemaError("complex entry must be an [re, im] pair", path)
        return complex(_number(v[0], path + (0,)), _number(v[1], path + (1,)))
    return complex(_number(v, path))


def _matrix(v, rows, cols, path) -> np.ndarray:
    if not isinstance(v, list):
        raise _SchemaError("matrix must be a list of rows", path)
    if len(v) != rows:
        raise _SchemaError(f"matrix has {len(v)} rows, expected {rows}", path)
    M = np.zeros((rows, cols), dtype=complex)
    for r, row in enumerate(v):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise _SchemaError(f"matrix row {r} has {got} entries, expected {cols}", path + (r,))
        for c, entry in enumerate(row):
            M[r, c] = _scalar(entry, path + (r, c))
    return M


def _module(doc, path) -> ModuleSpace:
    kind = _get(doc, "kind", path, str)
    try:
        if kind == "free":
            return ModuleSpace.free(_int(_get(doc, "rank", path), path + ("rank",)),
                                    _int(_get(doc, "algebra_dim", path), path + ("algebra_dim",)))
        if kind == "pattern":
            pat = _get(doc, "pattern", path, list)
            cells = []
            for k, cell in enumerate(pat):
                if not (isinstance(cell, list) and len(cell) == 2):
                    raise _SchemaError("pattern entries are [row, col] pairs", path + ("pattern", k))
                cells.append((_int(cell[0], path + ("pattern", k, 0)), _int(cell[1], path + ("pattern", k, 1))))
            return ModuleSpace.pattern(_int(_get(doc, "rows", path), path + ("rows",)),
                                       _int(_get(doc, "cols", path), path + ("cols",)), cells)
    except InputError as exc:
        raise _SchemaError(str(exc), path) from None
    raise _SchemaError(f"unknown module kind {kind!r}", path + ("kind",))


def _measure(doc, path) -> MeasureDiscretization:
    kind = _get(doc, "type", path, str)
    try:
        if kind == "interval":
            return discretize_interval(_number(_get(doc, "a", path), path + ("a",)),
                                       _number(_get(doc, "b", path), path + ("b",)),
                                       _get(doc, "rule", path, str),
                                       _int(_get(doc, "n", path), path + ("n",)))
        if kind == "discrete":
            nodes = _get(doc, "nodes", path, list)
            pairs = []
            for k, node in enumerate(nodes):
                if not (isinstance(node, list) and len(node) == 2):
                    raise _SchemaError("discrete nodes are [point, weight] pairs", path + ("nodes", k))
                pairs.append((_number(node[0], path + ("nodes", k, 0)), _number(node[1], path + ("nodes", k, 1))))
            if not pairs:
                raise _SchemaError("discrete measure needs at least one node", path + ("nodes",))
            arr = np.array(pairs, dtype=float)
            return MeasureDiscretization(arr[:, 0], arr[:, 1])
    except InputError as exc:
        raise _SchemaError(str(exc), path) from None
    raise _SchemaError(f"unknown measure type {kind!r}", path + ("type",))


def _operator(doc, key, dom, cod, path, required=True) -> Optional[ModuleOperator]:
    v = _get(doc, key, path, required=required)
    if v is None:
        return None
    return ModuleOperator(dom, cod, _matrix(v, cod.dim, dom.dim, path + (key,)))


def _family(doc, H, R, path) -> OperatorFamily:
    kind = _get(doc, "type", path, str)
    if kind == "scalar_profile":
        coeffs = _get(doc, "coeffs", path, list)
        if not coeffs:
            raise _SchemaError("coefficient list is empty", path + ("coeffs",))
        cs = [_scalar(c, path + ("coeffs", k)) for k, c in enumerate(coeffs)]
        return OperatorFamily.scalar_profile(_operator(doc, "base", H, R, path), cs)
    if kind == "table":
        ops = _get(doc, "ops", path, list)
        if not ops:
            raise _SchemaError("table family needs at least one operator", path + ("ops",))
        return OperatorFamily.table([ModuleOperator(H, R, _matrix(m, R.dim, H.dim, path + ("ops", k)))
                                     for k, m in enumerate(ops)])
    raise _SchemaError(f"unknown family type {kind!r}", path + ("type",))


def _decode(doc) -> InstanceBundle:
    if not isinstance(doc, dict):
        raise _SchemaError("instance file must hold a JSON object")
    version = _get(doc, "version", (), str)
    if version.split(".")[0] != VERSION.split(".")[0]:
        raise _SchemaError(f"unsupported version {version!r}", ("version",))
    n = _int(_get(doc, "algebra_dim", ()), ("algebra_dim",))
    H = _module(_get(doc, "module", (), dict), ("module",))
    if H.n != n:
        raise _SchemaError(f"module is over M_{H.n}, but algebra_dim is {n}", ("module",))
    R = H
    if doc.get("range_module") is not None:
        R = _module(_get(doc, "range_module", (), dict), ("range_module",))
        if R.n != n:
            raise _SchemaError("range module is over a different algebra", ("range_module",))
    measure = _measure(_get(doc, "measure", (), dict), ("measure",))
    family = _family(_get(doc, "family", (), dict), H, R, ("family",))
    if family.kind == "table" and len(family.ops) != len(measure):
        raise _SchemaError(f"table family has {len(family.ops)} operators for {len(measure)} nodes",
                           ("family", "ops"))
    C = _operator(doc, "C", H, H, ())
    Cp = _operator(doc, "Cprime", H, H, ())
    K = _operator(doc, "K", H, H, (), required=False)
    name = doc.get("name", "")
    inst = FrameInstance(H, measure, family, C, Cp, K=K, name=name if isinstance(name, str) else "")

    tol = doc.get("tolerances") or {}
    if not isinstance(tol, dict):
        raise _SchemaError("tolerances must be an object", ("tolerances",))
    tolerances = {}
    for k, v in tol.items():
        if k not in TOLERANCE_KEYS:
            raise _SchemaError(f"unknown tolerance {k!r}", ("tolerances", k))
        tolerances[k] = _number(v, ("tolerances", k))
    try:
        ToleranceConfig(**tolerances)
    except InputError as exc:
        raise _SchemaError(str(exc), ("tolerances",)) from None

    ex = doc.get("extras") or {}
    if not isinstance(ex, dict):
        raise _SchemaError("extras must be an object", ("extras",))
    extras = {}
    for key, v in ex.items():
        p = ("extras", key)
        if key in EXTRA_OPERATORS:
            extras[key] = ModuleOperator(H, H, _matrix(v, H.dim, H.dim, p))
        elif key == "poly":
            if not isinstance(v, list) or not v:
                raise _SchemaError("poly must be a non-empty coefficient list", p)
            extras[key] = [_scalar(c, p + (k,)) for k, c in enumerate(v)]
        elif key == "A":
            extras[key] = _number(v, p)
        elif key in ("alpha", "beta"):
            extras[key] = _scalar(v, p)
        else:
            raise _SchemaError(f"unknown extra {key!r}", p)
    return InstanceBundle(inst, extras, tolerances, version)


def parse_instance(text: str, source: str = "<string>") -> InstanceBundle:
    """Parse an instance document; errors carry ``source:line`` diagnostics."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        return _decode(doc)
    except _SchemaError as exc:
        line = _line_of(text, exc.path)
        raise InputError(f"{source}:{line}: {_fmt_path(exc.path)}: {exc}") from None
    except InputError as exc:
        raise InputError(f"{source}:1: {exc}") from None


def load_instance(path) -> InstanceBundle:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read instance file: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path}: instance file is not UTF-8") from None
    return parse_instance(text, str(path))


# ---------------------------------------------------------------------------
# encoding


def _enc_scalar(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _enc_matrix(M) -> list:
    return [[_enc_scalar(z) for z in row] for row in np.asarray(M)]


def _enc_coeff(z):
    z = complex(z)
    return float(z.real) if z.imag == 0 else _enc_scalar(z)


def encode_instance(bundle: InstanceBundle) -> dict:
    inst = bundle.instance
    doc = {"version": bundle.version, "algebra_dim": inst.space.n, "module": inst.space.describe()}
    if inst.name:
        doc["name"] = inst.name
    if inst.range_space != inst.space:
        doc["range_module"] = inst.range_space.describe()
    prov = inst.measure.provenance
    if prov.get("type") == "interval":
        doc["measure"] = dict(prov)
    else:
        doc["measure"] = {"type": "discrete",
                          "nodes": [[float(x), float(w)] for x, w in zip(inst.measure.nodes, inst.measure.weights)]}
    fam = inst.family
    if fam.kind == "scalar_profile":
        doc["family"] = {"type": "scalar_profile", "coeffs": [_enc_coeff(c) for c in fam.coeffs],
                         "base": _enc_matrix(fam.base.matrix)}
    else:
        doc["family"] = {"type": "table", "ops": [_enc_matrix(L.matrix) for L in fam.ops]}
    doc["C"] = _enc_matrix(inst.C.matrix)
    doc["Cprime"] = _enc_matrix(inst.Cprime.matrix)
    if inst.K is not None:
        doc["K"] = _enc_matrix(inst.K.matrix)
    if bundle.tolerances:
        doc["tolerances"] = {k: float(v) for k, v in sorted(bundle.tolerances.items())}
    if bundle.extras:
        ex = {}
        for k, v in sorted(bundle.extras.items()):
            if k in EXTRA_OPERATORS:
                ex[k] = _enc_matrix(v.matrix)
            elif k == "poly":
                ex[k] = [_enc_coeff(c) for c in v]
            elif k == "A":
                ex[k] = float(v)
            else:
                ex[k] = _enc_coeff(v)
        doc["extras"] = ex
    return doc


def _depth(obj) -> int:
    if isinstance(obj, list):
        return 1 + max((_depth(x) for x in obj), default=0)
    return 0


def dumps(obj, indent: int = 0) -> str:
    """JSON text with one matrix row per line; deterministic for a given object."""
    pad = " " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    if isinstance(obj, list) and _depth(obj) > 2:
        items = [pad + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"
    return json.dumps(obj, separators=(", ", ": "))


def serialize_instance(bundle: InstanceBundle) -> str:
    return dumps(encode_instance(bundle)) + "\n"


def save_instance(bundle: InstanceBundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(bundle))


def instances_equal(a: InstanceBundle, b: InstanceBundle) -> bool:
    """Structural equality of two bundles (exact floating-point comparison)."""
    ia, ib = a.instance, b.instance

    def same_op(x, y):
        if x is None or y is None:
            return x is y
        return x.domain == y.domain and x.codomain == y.codomain and np.array_equal(x.matrix, y.matrix)

    fa, fb = ia.family, ib.family
    if fa.kind != fb.kind:
        return False
    if fa.kind == "table":
        fam = len(fa.ops) == len(fb.ops) and all(same_op(x, y) for x, y in zip(fa.ops, fb.ops))
    else:
        fam = same_op(fa.base, fb.base) and np.array_equal(fa.coeffs, fb.coeffs)
    if set(a.extras) != set(b.extras):
        return False
    for k in a.extras:
        x, y = a.extras[k], b.extras[k]
        if isinstance(x, ModuleOperator):
            if not same_op(x, y):
                return False
        elif not np.array_equal(np.asarray(x), np.asarray(y)):
            return False
    return (ia.space == ib.space and ia.range_space == ib.range_space and fam
            and np.array_equal(ia.measure.nodes, ib.measure.nodes)
            and np.array_equal(ia.measure.weights, ib.measure.weights)
            and ia.measure.provenance == ib.measure.provenance
            and same_op(ia.C, ib.C) and same_op(ia.Cprime, ib.Cprime) and same_op(ia.K, ib.K)
            and a.tolerances == b.tolerances and a.version == b.version and ia.name == ib.name)


def paper_example_bundle(alpha: float = 1.0, beta: float = 1.0, rule: str = "gauss_legendre",
                         N: int = 2, with_K: bool = True) -> InstanceBundle:
    inst = build_paper_example(alpha, beta, rule, N)
    if not with_K:
        inst = inst.with_(K=None, name="paper_example_no_K")
    return InstanceBundle(inst, {"A": 1.0 / 3.0})


# ---------------------------------------------------------------------------
# generators


def _crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _unitary(rng, N) -> np.ndarray:
    Q, R = np.linalg.qr(_crandn(rng, N, N))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def _spectral(U, vals) -> np.ndarray:
    return (U * vals) @ U.conj().T


_SHAPES = [(1, 1), (1, 2), (1, 3), (1, 4), (1, 6), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]


def _free_core(rng, commuting: bool = True):
    """Free module with commuting controllers ``p(P)``, ``q(P)`` and a family diagonal in ``P``'s basis."""
    # width 1 would make every operator a scalar, which commutes with everything
    shapes = _SHAPES if commuting else [s for s in _SHAPES if s[0] * s[1] > 1]
    n, d = shapes[rng.integers(len(shapes))]
    H = ModuleSpace.free(d, n)
    N = H.width
    U = _unitary(rng, N)
    lam = rng.uniform(0.5, 2.0, N)
    p = rng.uniform(0.2, 1.0, 3)
    q = rng.uniform(0.2, 1.0, 3)
    C = _spectral(U, np.polynomial.polynomial.polyval(lam, p))
    U2 = U if commuting else _unitary(rng, N)
    Cp = _spectral(U2, np.polynomial.polynomial.polyval(lam, q))
    nodes = int(rng.integers(2, 5))
    pts = np.sort(rng.uniform(0.0, 1.0, nodes))
    wts = rng.uniform(0.2, 1.0, nodes)
    ops = []
    for _ in range(nodes):
        h = rng.uniform(0.3, 1.5, N)
        V = _unitary(rng, N)
        R = _spectral(U, h) @ V if commuting else _crandn(rng, N, N) / np.sqrt(N)
        ops.append(right_multiplication(H, H, R))
    measure = MeasureDiscretization(pts, wts)
    return H, U, measure, ops, right_multiplication(H, H, C), right_multiplication(H, H, Cp)


def _commuting_K(rng, H, U) -> ModuleOperator:
    kappa = _crandn(rng, H.width) / np.sqrt(2)
    if rng.random() < 0.3:
        kappa[rng.integers(H.width)] = 0.0
    return right_multiplication(H, H, _spectral(U, kappa))


def _generic(rng, H, rank: Optional[int] = None) -> ModuleOperator:
    N = H.width
    G = _crandn(rng, N, N) / np.sqrt(2 * N)
    if rank is not None and rank < N:
        G = _crandn(rng, N, rank) @ _crandn(rng, rank, N) / np.sqrt(2 * N)
    return right_multiplication(H, H, G)


def _orthogonal_pair(rng, H):
    N = H.width
    W = _unitary(rng, N)
    r = int(rng.integers(1, N)) if N > 1 else 1
    P1 = W[:, :r] @ W[:, :r].conj().T
    P2 = np.eye(N) - P1
    M1, M2 = _crandn(rng, N, N) / np.sqrt(2 * N), _crandn(rng, N, N) / np.sqrt(2 * N)
    return right_multiplication(H, H, M1 @ P1), right_multiplication(H, H, M2 @ P2)


def _poly(rng) -> list:
    deg = int(rng.integers(1, 4))
    return [0.0] + [float(c) for c in rng.uniform(-1.0, 1.0, deg)]


def _scalars(rng):
    return complex(*rng.uniform(-1.5, 1.5, 2)), complex(*rng.uniform(-1.5, 1.5, 2))


def generate(seed: int, profile: str) -> InstanceBundle:
    """Deterministic random instance for ``profile`` (see :data:`PROFILES`).

    ``free_commuting``: ``C = p(P)``, ``C' = q(P)`` for a random positive ``P``
    and positive-coefficient polynomials, ``Lambda_k`` and ``K`` diagonal in
    the eigenbasis of ``P``.  ``orthogonal_ranges`` adds ``K1, K2`` with
    ``K1* K2 = 0``; ``range_included`` a generic, possibly singular ``K`` and
    ``T = K D``.  ``pattern_example_like`` varies the shape, masks, profile
    and scalar controllers of the pattern example.  ``noncommuting_adversarial``
    breaks controller commutation, orthogonality and range inclusion at once.
    """
    if profile not in PROFILES:
        raise InputError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    rng = np.random.default_rng(seed)
    name = f"{profile}/{seed}"
    if profile == "pattern_example_like":
        return _pattern_like(rng, name)
    commuting = profile != "noncommuting_adversarial"
    H, U, measure, ops, C, Cp = _free_core(rng, commuting)
    family = OperatorFamily.table(ops)
    alpha, beta = _scalars(rng)
    extras = {"poly": _poly(rng), "alpha": alpha, "beta": beta}
    if profile == "free_commuting":
        K = _commuting_K(rng, H, U)
        K1, K2 = _orthogonal_pair(rng, H)
        extras.update(K1=K1, K2=K2, T=K @ _commuting_K(rng, H, U))
    elif profile == "orthogonal_ranges":
        K1, K2 = _orthogonal_pair(rng, H)
        K = K1
        extras.update(K1=K1, K2=K2, T=K1 @ _generic(rng, H))
    elif profile == "range_included":
        rank = int(rng.integers(1, H.width + 1))
        K = _generic(rng, H, rank)
        extras.update(T=K @ _generic(rng, H))
        K1, K2 = _orthogonal_pair(rng, H)
        extras.update(K1=K1, K2=K2)
    else:
        N = H.width
        K = _generic(rng, H, max(1, N - 1))
        extras.update(K1=_generic(rng, H), K2=_generic(rng, H), T=_generic(rng, H))
    inst = FrameInstance(H, measure, family, C, Cp, K=K, name=name)
    return InstanceBundle(inst, extras)


def _pattern_like(rng, name) -> InstanceBundle:
    p = int(rng.integers(2, 4))
    q = int(rng.integers(2, 5))
    cells = [(i, j) for i in range(1, p + 1) for j in range(1, q + 1)]
    size = int(rng.integers(2, min(len(cells), 6) + 1))
    pick = rng.choice(len(cells), size=size, replace=False)
    pattern = sorted(cells[k] for k in pick)
    H = ModuleSpace.pattern(p, q, pattern)
    nkeep = int(rng.integers(1, size + 1))
    keep = sorted(pattern[k] for k in rng.choice(size, size=nkeep, replace=False))
    mask = mask_operator(H, keep)
    coeffs = [0.0] + [float(c) for c in rng.uniform(0.2, 1.0, int(rng.integers(1, 3)))]
    alpha, beta = (float(x) for x in rng.uniform(0.5, 3.0, 2))
    I = identity(H)
    inst = FrameInstance(H, discretize_interval(0.0, 1.0, "gauss_legendre", 4),
                         OperatorFamily.scalar_profile(mask, coeffs), alpha * I, beta * I,
                         K=mask, name=name)
    return InstanceBundle(inst, {"poly": [0.0, 1.0]})


__all__ = ["InstanceBundle", "PROFILES", "VERSION", "parse_instance", "load_instance",
           "serialize_instance", "save_instance", "encode_instance", "instances_equal",
           "generate", "paper_example_bundle", "dumps", "EXAMPLE_PATTERN"]

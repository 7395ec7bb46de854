"""Command-line front end.

Exit codes: 0 certified, 1 falsified (witness in the report), 2 undetermined
or hypotheses not met, 3 input error.  Reports are JSON written with sorted
keys; they carry a SHA-256 digest of the instance and of the report itself,
and timing only when ``--timing`` is given, so identical inputs give
byte-identical reports.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .algebra import Status, ToleranceConfig, Verdict
from .certify import BoundsReport, certify_lower_K, certify_upper, optimal_bounds
from .errors import DomainError, InputError, ModFrameError
from .frame import RULES, commutes, validate_instance
from .instances import (PROFILES, InstanceBundle, generate, load_instance, paper_example_bundle,
                        serialize_instance)
from .modules import ModuleVector
from .theorems import THEOREM_TAGS, TheoremReport, run_verifier

EXIT_OK, EXIT_FALSIFIED, EXIT_UNDETERMINED, EXIT_INPUT = 0, 1, 2, 3
PROBE_AS = (1e-3, 1e-2, 0.1, 1.0)


# ---------------------------------------------------------------------------
# JSON conversion


def jsonable(obj):
    """Plain JSON data for reports: complex numbers as ``[re, im]``, infinities as strings."""
    if isinstance(obj, Verdict):
        out = {"status": obj.status.value, "margin": jsonable(obj.margin)}
        if obj.note:
            out["note"] = obj.note
        if obj.witness is not None:
            out["witness"] = jsonable(obj.witness)
        if obj.violation is not None:
            out["violation"] = jsonable(obj.violation)
        return out
    if isinstance(obj, ModuleVector):
        return {"module": obj.space.describe(), "coords": jsonable(obj.coords)}
    if isinstance(obj, Status):
        return obj.value
    if isinstance(obj, BoundsReport):
        return {k: jsonable(v) for k, v in vars(obj).items()}
    if isinstance(obj, TheoremReport):
        return {"theorem_id": obj.theorem_id, "status": obj.status,
                "hypotheses": jsonable(obj.hypotheses), "claimed_constants": jsonable(obj.claimed_constants),
                "checks": jsonable(obj.checks), "details": jsonable(obj.details),
                "optimal": jsonable(obj.optimal),
                "conclusion": jsonable(obj.conclusion), "notes": list(obj.notes)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return [jsonable(z.real), jsonable(z.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def render(report: dict) -> str:
    """Deterministic report text, with ``report_sha256`` over the report without it."""
    body = jsonable(report)
    body.pop("report_sha256", None)
    timing = body.pop("timing_seconds", None)
    canon = json.dumps(body, sort_keys=True, indent=2)
    body["report_sha256"] = hashlib.sha256(canon.encode()).hexdigest()
    if timing is not None:
        body["timing_seconds"] = timing
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _base(command: str, bundle: InstanceBundle, cfg: ToleranceConfig) -> dict:
    return {"tool": "modframe", "tool_version": __version__, "command": command,
            "instance": {"name": bundle.instance.name, "sha256": _digest(serialize_instance(bundle)),
                         "module": bundle.instance.space.describe()},
            "tolerances": vars(cfg).copy()}


# ---------------------------------------------------------------------------
# commands


def _label(br: BoundsReport) -> str:
    if br.parseval:
        return "Parseval"
    if br.tight:
        return "Tight"
    return br.frame_class


def run_check(bundle: InstanceBundle, cfg: ToleranceConfig, seed: int = 0):
    """Certify the lower and upper frame inequalities; returns ``(report, exit_code)``."""
    inst = bundle.instance
    report = _base("check", bundle, cfg)
    hyps = validate_instance(inst, cfg)
    hyps["C_Cprime_commute"] = commutes(inst.C, inst.Cprime)
    report["hypotheses"] = hyps
    checks = {}
    try:
        br = optimal_bounds(inst, cfg, seed=seed)
    except DomainError as exc:
        br = None
        report["bounds_error"] = str(exc)
    if br is not None:
        report["bounds"] = br
        report["classification"] = _label(br)
    has_lower = br is not None and br.A_opt is not None and br.A_opt > 0
    if has_lower:
        B = br.B_opt * (1 + 1e-3)
        checks["upper"] = certify_upper(inst, B, cfg) if B > 0 else Verdict(Status.CERTIFIED, 0.0)
        if math.isfinite(br.A_opt):
            checks["lower"] = certify_lower_K(inst, br.A_opt * (1 - 1e-3), cfg)
        report["checks"] = checks
        status = [v.status for v in checks.values()]
        if all(s is Status.CERTIFIED for s in status):
            return report, EXIT_OK
        if Status.FALSIFIED in status:
            return report, EXIT_FALSIFIED
        return report, EXIT_UNDETERMINED
    # no positive lower bound: probe a ladder of constants for witnesses
    for A in PROBE_AS:
        checks[f"lower_A={A:g}"] = certify_lower_K(inst, A, cfg)
    report["checks"] = checks
    status = [v.status for v in checks.values()]
    if all(s is Status.FALSIFIED for s in status):
        return report, EXIT_FALSIFIED
    if Status.UNDETERMINED in status:
        return report, EXIT_UNDETERMINED
    return report, EXIT_FALSIFIED if Status.FALSIFIED in status else EXIT_UNDETERMINED


def run_bounds(bundle: InstanceBundle, cfg: ToleranceConfig, seed: int = 0):
    report = _base("bounds", bundle, cfg)
    br = optimal_bounds(bundle.instance, cfg, seed=seed)
    report["bounds"] = br
    report["classification"] = _label(br)
    return report, EXIT_OK


def run_verify(tag: str, bundle: InstanceBundle, cfg: ToleranceConfig, seed: int = 0):
    report = _base("verify", bundle, cfg)
    rep = run_verifier(tag, bundle.instance, bundle.extras, cfg, seed)
    report["theorem"] = rep
    report["seed"] = seed
    if rep.status == Status.CERTIFIED.value:
        return report, EXIT_OK
    if rep.status == Status.FALSIFIED.value:
        return report, EXIT_FALSIFIED
    return report, EXIT_UNDETERMINED


def quadrature_error_bound(rule: str, N: int) -> float:
    """A priori error bound for the rule on ``int_0^1 w^2 dw`` (second derivative 2)."""
    if rule == "trapezoid":
        return 2.0 / (12 * N ** 2)
    if rule == "midpoint":
        return 2.0 / (24 * N ** 2)
    if rule == "gauss_legendre":
        # error = f^(2N)(xi) (N!)^4 / ((2N + 1) ((2N)!)^3), zero for N >= 2
        return 2.0 / 24 if N == 1 else 0.0
    raise InputError(f"unknown rule {rule!r}")


def run_paper_example(alpha: float = 1.0, beta: float = 1.0, rule: str = "gauss_legendre",
                      N: int = 2, cfg: Optional[ToleranceConfig] = None):
    """Reproduce the pattern-module example and check its two displayed facts.

    Facts: the Bessel constant against ``<M, M>`` is ``alpha beta / 3`` and the
    lower and upper constants against ``<K* M, K* M>`` are both ``alpha beta / 3``
    (up to the rule's a priori quadrature error); without ``K`` every lower
    constant is falsified by a witness with ``b = c = 0``.
    """
    cfg = ToleranceConfig.from_env() if cfg is None else cfg
    bundle = paper_example_bundle(alpha, beta, rule, N)
    inst = bundle.instance
    report = _base("paper-example", bundle, cfg)
    report["parameters"] = {"alpha": alpha, "beta": beta, "rule": rule, "n": N}
    br = optimal_bounds(inst, cfg)
    expected = alpha * beta / 3.0
    tol = alpha * beta * quadrature_error_bound(rule, N) + 1e-12 * max(1.0, expected)
    facts = {
        "bessel_constant": {"value": br.B_opt, "expected": expected,
                            "holds": abs(br.B_opt - expected) <= tol},
        "tight_lower": {"value": br.A_opt, "expected": expected,
                        "holds": br.A_opt is not None and abs(br.A_opt - expected) <= tol},
        "tight_upper": {"value": br.B_K, "expected": expected,
                        "holds": br.B_K is not None and abs(br.B_K - expected) <= tol},
        "tight": {"value": br.tight, "holds": bool(br.tight)},
    }
    plain = inst.with_(K=None)
    probes = {}
    ok_plain = True
    for A in PROBE_AS:
        v = certify_lower_K(plain, A, cfg)
        probes[f"A={A:g}"] = v
        if not v.falsified:
            ok_plain = False
            continue
        c = v.witness.coords
        bc = np.linalg.norm(c[[1, 2]])
        ok_plain &= bool(bc <= 1e-8 * np.linalg.norm(c))
    facts["plain_frame_falsified"] = {"holds": ok_plain}
    report["bounds"] = br
    report["quadrature_error_bound"] = tol
    report["facts"] = facts
    report["plain_lower_probes"] = probes
    ok = all(f["holds"] for f in facts.values())
    return report, EXIT_OK if ok else EXIT_FALSIFIED


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modframe",
                                description="Certify controlled K-g-frame inequalities on matrix-algebra modules.")
    p.add_argument("--version", action="version", version=f"modframe {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")

    sp = sub.add_parser("check", help="certify the frame inequalities of an instance")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser("bounds", help="optimal frame bounds and classification")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser("verify", help="run a theorem verifier on an instance")
    sp.add_argument("tag", help="one of: " + ", ".join(THEOREM_TAGS))
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser("paper-example", help="reproduce the 2x4 pattern-module example")
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--rule", choices=RULES, default="gauss_legendre")
    sp.add_argument("--n", type=int, default=2, help="quadrature points or panels")
    common(sp, seed=False)
    sp = sub.add_parser("generate", help="write a seeded random instance file")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--profile", choices=PROFILES, required=True)
    sp.add_argument("--out", help="output path (default stdout)")
    return p


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    start = time.perf_counter()
    try:
        if args.command == "generate":
            _emit(serialize_instance(generate(args.seed, args.profile)), args.out)
            return EXIT_OK
        if args.command == "verify" and args.tag not in THEOREM_TAGS:
            print(f"modframe: unknown theorem tag {args.tag!r}; known tags:\n  " + "\n  ".join(THEOREM_TAGS),
                  file=sys.stderr)
            return EXIT_INPUT
        if args.command == "paper-example":
            if not (args.alpha > 0 and args.beta > 0):
                raise InputError("--alpha and --beta must be positive")
            report, code = run_paper_example(args.alpha, args.beta, args.rule, args.n)
        else:
            bundle = load_instance(args.file)
            cfg = bundle.config()
            if args.command == "check":
                report, code = run_check(bundle, cfg, args.seed)
            elif args.command == "bounds":
                report, code = run_bounds(bundle, cfg, args.seed)
            else:
                report, code = run_verify(args.tag, bundle, cfg, args.seed)
    except InputError as exc:
        print(f"modframe: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModFrameError as exc:
        print(f"modframe: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    report["exit_code"] = code
    if args.timing:
        report["timing_seconds"] = time.perf_counter() - start
    _emit(render(report), args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

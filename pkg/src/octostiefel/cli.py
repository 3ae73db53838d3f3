"""Command-line front end.

Exit codes: 0 success, 1 verification failure or domain error, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import OctoStiefelError, ParseError, UnknownSuite
from .exactnum import EXACT, Float, ScalarMode, format_scalar, parse_scalar
from .extgeom import austere_test, base_point, mean_curvature_component, shape_operator_spectrum
from .frames import OctFrame, classify, fiber_kernel_dim
from .omega import OmegaPoint, deformation_curve, is_member, pi_lift, sample, system_from_json, vector
from .omega.curves import KINDS
from .suites import SUITES, run_suite

__all__ = ["main", "build_parser", "classify_file", "member_file", "lift_file"]


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _mode(args) -> ScalarMode:
    if args.mode == "float":
        return Float(eps=args.eps) if args.eps is not None else Float()
    return EXACT


def classify_file(path: str, mode: ScalarMode = EXACT) -> dict:
    return classify(OctFrame.from_json(_load(path)), mode).to_json()


def _system_for(obj: dict, l=None, m=None, family=None):
    desc = {"l": l if l is not None else obj.get("l"), "m": m if m is not None else obj.get("m")}
    desc["family"] = family if family is not None else obj.get("family")
    return system_from_json(desc)


def member_file(path: str, mode: ScalarMode = EXACT, l=None, m=None, family=None) -> bool:
    obj = _load(path)
    p = OmegaPoint.from_json(obj)
    return is_member(_system_for(obj, l if l is not None else p.l, m, family), p, mode)


def lift_file(path: str, mode: ScalarMode = EXACT) -> OmegaPoint:
    obj = _load(path)
    raw = obj.get("c") if isinstance(obj, dict) else obj
    if not isinstance(raw, list):
        raise ParseError("lift input needs a c array")
    c = vector([parse_scalar(x) for x in raw])
    return pi_lift(c, obj.get("n") if isinstance(obj, dict) else None, mode)


def _minimality_report(n: int) -> dict:
    x0 = base_point(n)
    values = {str(b): format_scalar(mean_curvature_component(n, x0, b)) for b in range(1, 15)}
    out = {"n": n, "mean_curvature": values, "minimal": all(v == "0" for v in values.values())}
    if n == 3:
        spec = shape_operator_spectrum(3)
        out["spectrum"] = spec.to_json()
        out["austere"] = austere_test(spec)
    return out


def _emit(obj, fmt: str) -> None:
    if fmt == "markdown":
        print(_markdown(obj))
    else:
        print(json.dumps(obj, indent=2, ensure_ascii=False))


def _markdown(obj) -> str:
    if isinstance(obj, dict) and "items" in obj:
        lines = ["| claim | status | mode | computed | expected | locator |", "|---|---|---|---|---|---|"]
        for it in obj["items"]:
            lines.append(
                "| {claim_id} | {status} | {mode} | {computed} | {expected} | {locator} |".format(**it)
            )
        return "\n".join(lines)
    if isinstance(obj, dict):
        lines = ["| key | value |", "|---|---|"]
        for k, v in obj.items():
            lines.append(f"| {k} | {json.dumps(v, ensure_ascii=False)} |")
        return "\n".join(lines)
    return str(obj)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--eps", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "markdown"), default="json")

    parser = argparse.ArgumentParser(prog="octostiefel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}")

    p = sub.add_parser("classify", parents=[common], help="regular/critical classification of a frame")
    p.add_argument("file")

    p = sub.add_parser("member", parents=[common], help="membership of a triple (a, b, c)")
    p.add_argument("file")
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--family")

    p = sub.add_parser("lift", parents=[common], help="lift a unit c to a member (a, b, c)")
    p.add_argument("file")

    p = sub.add_parser("sample", parents=[common], help="random float member")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--family")

    p = sub.add_parser("spectrum", parents=[common], help="minimality and shape operator report")
    p.add_argument("--n", type=int, default=3)

    p = sub.add_parser("fiber", parents=[common], help="dimension of the octonionic complement of a frame")
    p.add_argument("file")

    p = sub.add_parser("curve", parents=[common], help="evaluate a deformation curve")
    p.add_argument("file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--t", type=float, required=True)
    return parser


def _run(args) -> tuple[object, int]:
    mode = _mode(args)
    if args.command == "verify":
        report = run_suite(args.suite, mode, args.seed)
        return report.to_json(), 1 if report.failed else 0
    if args.command == "classify":
        return classify_file(args.file, mode), 0
    if args.command == "member":
        return {"member": member_file(args.file, mode, args.l, args.m, args.family)}, 0
    if args.command == "lift":
        obj = lift_file(args.file, mode)
        return obj.to_json(), 0
    if args.command == "sample":
        sys_ = system_from_json({"l": args.l, "m": args.m, "family": args.family})
        p = sample(sys_, args.seed)
        return p.to_json(sys_), 0
    if args.command == "spectrum":
        report = _minimality_report(args.n)
        return report, 0 if report["minimal"] and not report.get("austere", False) else 1
    if args.command == "fiber":
        A = OctFrame.from_json(_load(args.file))
        return {"fiber_kernel_dim": fiber_kernel_dim(A, mode)}, 0
    if args.command == "curve":
        obj = _load(args.file)
        sys_ = _system_for(obj)
        if args.kind == "path-step":
            out = deformation_curve(sys_, args.kind, OmegaPoint.from_json(obj), args.t)
            return out.to_json(sys_), 0
        try:
            pair = (vector([float(x) for x in obj["a"]]), vector([float(x) for x in obj["b"]]))
        except (KeyError, TypeError, ValueError):
            raise ParseError("curve input needs numeric a and b arrays") from None
        a, b = deformation_curve(sys_, args.kind, pair, args.t)
        return {"a": [float(x) for x in a], "b": [float(x) for x in b]}, 0
    raise ParseError(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = _run(args)
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OctoStiefelError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())

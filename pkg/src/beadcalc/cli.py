"""Command-line front end.  Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import formats
from .beads import split_by_bead_degree
from .canon import canonicalize, decode
from .diagram import ENV_MAX_DEGREE, max_degree, validate
from .errors import BeadcalcError, CapExceeded, ValidationError
from .hair import DEFAULT_TRUNCATION, hair, kernel_check
from .linear import LinComb
from .relations import is_zero, quotient_basis, reduce_element
from .vogel import (
    LEGS3,
    LambdaElement,
    antisymmetrize,
    as_lambda,
    builtin_t,
    builtin_x,
    insert_comb,
    lambda_mult,
    verify_scalar_relation,
)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_comb(path: str) -> LinComb:
    data = _load(path)
    if isinstance(data, dict):
        data = [{"coeff": "1", "diagram": data}]
    return formats.parse_lincomb(data)


def _load_beaded(path: str) -> LinComb:
    data = _load(path)
    if isinstance(data, dict):
        data = [{"coeff": "1", "diagram": data}]
    return formats.parse_beaded_lincomb(data)


def parse_legs(text: str) -> tuple[str, ...]:
    """``"3"`` means legs 1, 2, 3; otherwise a comma separated list of labels."""
    text = text.strip()
    if text.isdigit():
        return tuple(str(i) for i in range(1, int(text) + 1))
    if not text:
        return ()
    return tuple(x.strip() for x in text.split(","))


def _lambda_json(lam: LambdaElement) -> dict:
    return {"degree": lam.degree, "element": formats.lincomb_to_json(lam.value), "certified": lam.certify()}


def _lambda_from(path: str, anti: bool) -> LambdaElement:
    v = _load_comb(path)
    return antisymmetrize(v) if anti else as_lambda(v)


# subcommands


def cmd_canon(args) -> dict:
    d = validate(_load(args.file))
    cf = canonicalize(d)
    out = {"hex": cf.hex, "sign": cf.sign, "zero": cf.is_zero, "degree": d.degree}
    if not cf.is_zero:
        out["diagram"] = cf.representative().to_json()
    return out


def cmd_dim(args) -> dict:
    legs = parse_legs(args.legs)
    q = quotient_basis(args.degree, legs, connected=args.connected, require_trivalent=args.require_trivalent)
    return {
        "degree": args.degree,
        "legs": list(q.legs),
        "connected": args.connected,
        "require_trivalent": args.require_trivalent,
        "classes": q.n_classes,
        "relations_rank": q.span.rank,
        "dimension": q.dimension,
        "basis": [cf.hex for cf in q.basis],
    }


def cmd_reduce(args) -> dict:
    v = _load_comb(args.file)
    if args.degree is not None:
        legs = parse_legs(args.legs or "")
        zero = is_zero(v, args.degree, legs)
    pieces = []
    for (deg, legs_), red in reduce_element(v).items():
        pieces.append({"degree": deg, "legs": list(legs_), "reduced": formats.lincomb_to_json(red), "is_zero": not red})
    if args.degree is None:
        zero = all(p["is_zero"] for p in pieces)
    return {"pieces": pieces, "is_zero": zero}


def cmd_bead_split(args) -> dict:
    v = _load_beaded(args.file)
    parts = split_by_bead_degree(v)
    return {
        "parts": [
            {"bead_degree": p, "element": formats.beaded_lincomb_to_json(parts[p])} for p in sorted(parts)
        ]
    }


def _truncation_cap(args) -> int:
    return max(DEFAULT_TRUNCATION, args.max_degree or 0)


def cmd_hair(args) -> dict:
    v = _load_beaded(args.file)
    image = hair(v, args.truncate, cap=_truncation_cap(args))
    degrees = {}
    for d in range(0, args.truncate + 1):
        part = image.part(d)
        if part or d >= 1:
            degrees[str(d)] = {"element": formats.lincomb_to_json(part), "is_zero": not part}
    return {"truncate": args.truncate, "degrees": degrees}


def cmd_kernel_check(args) -> dict:
    v = _load_beaded(args.file)
    verdict = kernel_check(v, args.truncate, cap=_truncation_cap(args))
    return {
        "truncate": args.truncate,
        "is_zero": {str(d): z for d, z in verdict.items()},
        "in_kernel": all(verdict.values()),
    }


def cmd_lambda(args) -> dict:
    if args.lambda_cmd == "t":
        return _lambda_json(builtin_t())
    if args.lambda_cmd == "x":
        return _lambda_json(builtin_x(args.n))
    if args.lambda_cmd == "mult":
        a = _lambda_from(args.a, args.antisymmetrize)
        b = _lambda_from(args.b, args.antisymmetrize)
        return _lambda_json(lambda_mult(a, b, args.at))
    if args.lambda_cmd == "insert":
        lam = _lambda_from(args.a, args.antisymmetrize)
        target = _load_comb(args.diagram)
        for key in target.keys():
            if not 0 <= args.at < decode(key).trivalent:
                raise ValidationError(f"vertex {args.at} is not trivalent in every term")
        raw = insert_comb(lam, target, args.at)
        pieces = [
            {"degree": deg, "legs": list(lg), "reduced": formats.lincomb_to_json(red), "is_zero": not red}
            for (deg, lg), red in reduce_element(raw).items()
        ]
        return {"pieces": pieces}
    if args.lambda_cmd == "verify":
        lhs, rhs = _load_comb(args.lhs), _load_comb(args.rhs)
        degrees = {decode(k).degree for k in (lhs - rhs).keys()} or {decode(k).degree for k in lhs.keys()}
        if args.degree is not None:
            degree = args.degree
        elif len(degrees) == 1:
            degree = degrees.pop()
        elif not degrees:
            return {"equal": True}
        else:
            raise ValidationError("sides mix degrees; pass --degree")
        legs = parse_legs(args.legs) if args.legs is not None else LEGS3
        return {"degree": degree, "equal": verify_scalar_relation(lhs, rhs, degree, legs)}
    raise ValidationError(f"unknown lambda subcommand {args.lambda_cmd!r}")


def cmd_report(args) -> dict:
    from .report import dimension_table, write_report

    rows = dimension_table(args.upto)
    files = write_report(rows, Path(args.out))
    return {"rows": rows, "files": [str(f) for f in files]}


def cmd_run(args) -> dict:
    raise AssertionError("run is dispatched in main")


def manifest_argv(manifest: dict, base: Path) -> list[str]:
    """Translate a manifest object into an argument vector."""
    if not isinstance(manifest, dict) or "command" not in manifest:
        raise ValidationError("manifest needs a 'command'")
    command = manifest["command"]
    argv = command.split() if isinstance(command, str) else [str(c) for c in command]
    if argv and argv[0] == "run":
        raise ValidationError("manifests cannot nest 'run'")
    caps = manifest.get("caps", {}) or {}
    pre: list[str] = []
    for name, value in caps.items():
        if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
            raise ValidationError(f"cap {name} must be a positive integer")
    if "max_degree" in caps:
        pre += ["--max-degree", str(caps["max_degree"])]
    if manifest.get("output"):
        pre += ["--output", str(base / manifest["output"])]
    if manifest.get("pretty"):
        pre.append("--pretty")
    for path in manifest.get("inputs", []):
        p = base / path
        if not p.is_file():
            raise ValidationError(f"manifest input {path} does not exist")
        argv.append(str(p))
    extra = manifest.get("args", {}) or {}
    if "truncate" in caps:
        extra = {**extra, "truncate": caps["truncate"]}
    for key, value in extra.items():
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value is not False and value is not None:
            argv += [flag, str(value)]
    return pre + argv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beadcalc", description="Exact computations with Jacobi diagrams and beads.")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--output", "-o", help="write the JSON here instead of stdout")
    p.add_argument("--max-degree", type=int, help=f"enumeration cap (also ${ENV_MAX_DEGREE})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("canon", help="canonical hex encoding and sign of a diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("dim", help="quotient dimension and basis")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--legs", default="0", help="a count n (legs 1..n) or comma separated labels")
    s.add_argument("--connected", action="store_true")
    s.add_argument("--require-trivalent", action="store_true", help="drop diagrams without trivalent vertices")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("reduce", help="reduce a combination modulo AS and IHX")
    s.add_argument("file")
    s.add_argument("--degree", type=int)
    s.add_argument("--legs")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("bead-split", help="decompose a beaded combination by bead degree")
    s.add_argument("file")
    s.set_defaults(func=cmd_bead_split)

    s = sub.add_parser("hair", help="truncated hair map image, reduced per degree")
    s.add_argument("file")
    s.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION)
    s.set_defaults(func=cmd_hair)

    s = sub.add_parser("kernel-check", help="per-degree vanishing of the hair image")
    s.add_argument("file")
    s.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION)
    s.set_defaults(func=cmd_kernel_check)

    s = sub.add_parser("lambda", help="Vogel algebra operations")
    lsub = s.add_subparsers(dest="lambda_cmd", required=True)
    lsub.add_parser("t")
    lx = lsub.add_parser("x")
    lx.add_argument("n", type=int)
    lm = lsub.add_parser("mult")
    lm.add_argument("a")
    lm.add_argument("b")
    lm.add_argument("--at", type=int, default=0, help="vertex of b's terms to insert at")
    li = lsub.add_parser("insert")
    li.add_argument("a")
    li.add_argument("diagram")
    li.add_argument("--at", type=int, default=0)
    for q in (lm, li):
        q.add_argument("--antisymmetrize", action="store_true", help="antisymmetrise inputs first")
    lv = lsub.add_parser("verify")
    lv.add_argument("lhs")
    lv.add_argument("rhs")
    lv.add_argument("--degree", type=int)
    lv.add_argument("--legs")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("report", help="dimension table as TSV plus a plot")
    s.add_argument("--upto", type=int, default=4)
    s.add_argument("--out", default="report")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("run", help="execute a JSON manifest")
    s.add_argument("manifest")
    s.set_defaults(func=cmd_run)
    return p


def _emit(result: dict, args) -> None:
    text = json.dumps(result, sort_keys=True, indent=2 if args.pretty else None)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _fail(exc: BeadcalcError) -> int:
    diag = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    sys.stderr.write(json.dumps(diag, sort_keys=True) + "\n")
    return exc.exit_code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            path = Path(args.manifest)
            argv2 = manifest_argv(_load(str(path)), path.parent)
            return main(argv2)
        if args.max_degree is not None:
            if args.max_degree <= 0:
                raise ValidationError("--max-degree must be positive")
            os.environ[ENV_MAX_DEGREE] = str(args.max_degree)
        max_degree()
        result = args.func(args)
    except BeadcalcError as exc:
        return _fail(exc)
    except RecursionError:
        return _fail(CapExceeded("input too large"))
    _emit(result, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())

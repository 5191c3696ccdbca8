"""Command-line front end: build, verify, certify, refute, envelope, twist and report."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .builders import (build_bicrossed, build_drinfeld_double, build_function_algebra, build_group_algebra,
                       build_twisted_group_algebra, dual_bicrossed)
from .coideal import PreconditionViolated
from .hopf import HopfData, from_json, identity_map, to_json, verify_hopf
from .io import (SpecError, bicharacter_of, cocycles_of, group_of, load_spec, matched_pair_of, resolve)
from .magic import FORMAT_TAG as CERT_FORMAT
from .magic import RelationFailure, cayley_magic, cert_from_json, permutation_magic
from .matchedpair import orbits_and_stabilizers, power_labels
from .permgrp import DEFAULT_ORDER_CAP, OrderLimitExceeded
from .qpacert import (NOT_QPA_REFUTED, QPA_CERTIFIED, UNDECIDED, StructureMismatch, Verdict, envelope,
                      full_pipeline, refute_c4_s3, refute_prime)
from .twist import check_suff_twist, cocycle_deform_algebra, doi_twist, function_algebra_projection, \
    lift_cocycle, suff_twist_violation

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2
ALGEBRAS = ("function", "group", "double", "double-dual")
MAX_CONDUCTOR = 10_000


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# inputs


def _spec(args, path: str):
    spec = load_spec(path)
    if args.conductor is not None:
        spec.data["conductor"] = args.conductor
    return spec


def _input_path(args) -> tuple[str, str]:
    given = [(k, getattr(args, k)) for k in ("hopf", "factorization", "group", "cocycle", "spec")
             if getattr(args, k, None)]
    if len(given) != 1:
        raise UsageError("give exactly one of --hopf, --factorization, --group, --cocycle, --spec")
    return given[0]


def load_algebra(args) -> HopfData:
    """The Hopf algebra named by the command-line inputs."""
    key, path = _input_path(args)
    if key == "hopf":
        with open(resolve(path), encoding="utf-8") as fh:
            obj = json.load(fh)
        if obj.get("format") == CERT_FORMAT:
            obj = obj["parent"]
        H = from_json(obj)
        if not args.trust:
            rep = verify_hopf(H)
            if not rep.is_hopf:
                raise SpecError(f"not a Hopf algebra: {rep.first_failure()}", path)
        return H
    spec = _spec(args, path)
    cap = args.order_cap
    if spec.kind in ("factorization", "bicrossed"):
        mp = matched_pair_of(spec, cap)
        cc = cocycles_of(spec, mp) if spec.kind == "bicrossed" else None
        H = build_bicrossed(mp, cc, verify=not args.trust)
        return dual_bicrossed(H, verify=not args.trust) if args.dual else H
    if spec.kind == "group":
        G = group_of(spec, cap)
        algebra = args.algebra or spec.get("algebra", str, "function")
        if algebra not in ALGEBRAS:
            raise spec.error("algebra", f"expected one of {', '.join(ALGEBRAS)}")
        if algebra == "function":
            return build_function_algebra(G)
        if algebra == "group":
            return build_group_algebra(G)
        D, Dstar = build_drinfeld_double(G, verify=not args.trust)
        return D if algebra == "double" else Dstar
    if spec.kind == "lifted_cocycle":
        return build_function_algebra(group_of(spec, cap))
    if spec.kind == "bicharacter":
        return build_group_algebra(bicharacter_of(spec, cap).group)
    raise SpecError(f"unsupported kind {spec.kind!r}", path)


# ---------------------------------------------------------------------------
# output


def _flag(v: bool) -> str:
    return "yes" if v else "no"


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if (isinstance(v, dict) and v) or (isinstance(v, list) and not all(isinstance(x, (str, int)) and len(str(x)) <= 24 for x in v)):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: {', '.join(map(str, v)) if v else '-'}")
            elif isinstance(v, bool):
                lines.append(f"{pad}{k}: {_flag(v)}")
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for x in obj:
            if isinstance(x, dict):
                head = x.get("claim") or x.get("kind") or ""
                lines.append(f"{pad}- {head}")
                rest = {k: v for k, v in x.items() if k not in ("claim",)}
                lines += _text(rest, indent + 2)
            else:
                lines.append(f"{pad}- {x}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def emit(args, obj: dict) -> None:
    if args.output == "json":
        text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(_text(obj)) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _verdict_code(v: Verdict) -> int:
    return EXIT_UNDECIDED if v.status == UNDECIDED else EXIT_OK


def _verdict_json(args, v: Verdict) -> dict:
    out = v.to_json(embed_parent=args.output == "json")
    if args.output == "text" and "certificate" in out:
        c = out.pop("certificate")
        out["certificate"] = {k: c[k] for k in ("size", "generated_dim", "generation_method", "full")}
        out["certificate"]["blocks"] = [f"{p['kind']} ({p['size']})" for p in c["provenance"]]
    if args.output == "text" and out.get("refutation"):
        # the case enumeration is summarized; the json report keeps every entry
        log = out.pop("refutation")
        cases = [e for e in log if e["kind"] == "case"]
        out["proof"] = [f"{e['claim']} [{'ok' if e['result'] is not False else 'FAILED'}]"
                        for e in log if e["kind"] != "case"]
        if cases:
            tally: dict = {}
            for e in cases:
                tally[e["result"] or "admissible"] = tally.get(e["result"] or "admissible", 0) + 1
            out["cases"] = {"examined": len(cases), **tally}
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    H = load_algebra(args)
    if args.output == "json":
        emit(args, to_json(H))
    else:
        rep = verify_hopf(H)
        emit(args, {"kind": H.meta.get("kind", ""), "dim": H.dim, "conductor": H.conductor(),
                    **rep.flags()})
    return EXIT_OK


def _verify_certificate(args, obj: dict) -> int:
    H = from_json(obj["parent"])
    if not args.trust:
        rep = verify_hopf(H)
        if not rep.is_hopf:
            emit(args, {"certificate": False, "parent": rep.flags()})
            return EXIT_ERROR
    try:
        cert = cert_from_json(obj, H)
    except RelationFailure as exc:
        emit(args, {"certificate": False, "failure": str(exc)})
        return EXIT_ERROR
    out = {"certificate": True, "size": cert.size, "parent_dim": H.dim,
           "generated_dim": cert.generated_dim, "full": cert.is_full_certificate,
           "generation_method": cert.generation_method}
    emit(args, out)
    return EXIT_OK if cert.is_full_certificate else EXIT_ERROR


def cmd_verify(args) -> int:
    if getattr(args, "hopf", None):
        with open(resolve(args.hopf), encoding="utf-8") as fh:
            obj = json.load(fh)
        if obj.get("format") == CERT_FORMAT:
            return _verify_certificate(args, obj)
        if "certificate" in obj and isinstance(obj["certificate"], dict):
            return _verify_certificate(args, obj["certificate"])
        H = from_json(obj)
    else:
        args.trust = True
        H = load_algebra(args)
    rep = verify_hopf(H)
    out = {"dim": H.dim, **rep.flags()}
    if not rep.is_hopf:
        out["witnesses"] = rep.witnesses
    emit(args, out)
    return EXIT_OK if rep.is_hopf else EXIT_ERROR


def cmd_certify(args) -> int:
    H = load_algebra(args)
    v = full_pipeline(H, trust=True)
    emit(args, _verdict_json(args, v))
    return _verdict_code(v)


def cmd_refute(args) -> int:
    H = load_algebra(args)
    notes = []
    for fn in (refute_prime, refute_c4_s3):
        try:
            v = fn(H)
        except (PreconditionViolated, StructureMismatch) as exc:
            notes.append(f"{fn.__name__}: {exc}")
            continue
        if v.status == NOT_QPA_REFUTED:
            emit(args, _verdict_json(args, v))
            return EXIT_OK
        notes += v.notes
    v = Verdict(UNDECIDED, H.dim, "refute", notes=notes)
    emit(args, _verdict_json(args, v))
    return EXIT_UNDECIDED


def cmd_envelope(args) -> int:
    H = load_algebra(args)
    try:
        v = envelope(H)
    except (PreconditionViolated, StructureMismatch) as exc:
        v = Verdict(UNDECIDED, H.dim, "envelope", notes=[str(exc)])
    out = _verdict_json(args, v)
    emit(args, out)
    return EXIT_OK if v.envelope is not None else EXIT_UNDECIDED


def cmd_twist(args) -> int:
    key, path = _input_path(args)
    spec = _spec(args, path)
    cap = args.order_cap
    if spec.kind == "bicharacter":
        bc = bicharacter_of(spec, cap)
        Hg = build_group_algebra(bc.group)
        sigma = lift_cocycle(Hg, identity_map(Hg), bc)
        A = cocycle_deform_algebra(sigma)
        tga = build_twisted_group_algebra(bc.group, bc)
        emit(args, {"kind": "twisted_group_algebra", "dim": A.dim, "center_dim": A.center_dim,
                    "associative": tga.associative, "commutative": A.center_dim == A.dim,
                    "central_simple": A.center_dim == 1})
        return EXIT_OK
    if spec.kind != "lifted_cocycle":
        raise SpecError("twist needs a lifted_cocycle or bicharacter spec", path)
    G = group_of(spec, cap)
    bc = bicharacter_of(spec, cap)
    H = build_function_algebra(G)
    sigma = lift_cocycle(H, function_algebra_projection(H, bc.group, bc.gens), bc)
    T = doi_twist(H, sigma)
    rep = verify_hopf(T)
    checks = {}
    for name, make in (("permutation", permutation_magic), ("cayley", cayley_magic)):
        cert = make(H)
        bad = suff_twist_violation(cert, sigma)
        if bad is None:
            tc = check_suff_twist(cert, sigma, T)
            checks[name] = {"condition": True, "size": tc.size, "generated_dim": tc.generated_dim,
                            "full": tc.is_full_certificate}
        else:
            checks[name] = {"condition": False, "first_violation": str(bad)}
    if args.output == "json":
        out = {"kind": "doi_twist", "dim": T.dim, **rep.flags(), "suff_twist": checks, "hopf": to_json(T)}
    else:
        out = {"kind": "doi_twist", "dim": T.dim, **rep.flags(), "suff_twist": checks}
    emit(args, out)
    return EXIT_OK if rep.is_hopf else EXIT_ERROR


def cmd_report(args) -> int:
    key, path = _input_path(args)
    H = load_algebra(args)
    out: dict = {"input": Path(path).name, "dim": H.dim, "kind": H.meta.get("kind", "")}
    st = H.structure
    mp = getattr(st, "mp", None)
    if mp is not None and H.meta.get("kind") == "bicrossed":
        gl = power_labels(mp.Gamma)
        gname = (lambda g: gl(mp.Gamma.elements[g])) if gl else mp.gname
        names = {"left": mp.fname, "right": gname}
        for side, key in (("left", "orbits_of_Gamma_on_F"), ("right", "orbits_of_F_on_Gamma")):
            out[key] = [{"orbit": [names[side](m) for m in o.members], "stabilizer_order": len(o.stabilizer)}
                        for o in orbits_and_stabilizers(mp, side)]
    out["axioms"] = verify_hopf(H).flags()
    v = full_pipeline(H, trust=True)
    out["verdict"] = _verdict_json(args, v)
    if v.envelope is None and v.status != QPA_CERTIFIED:
        try:
            out["envelope"] = envelope(H).to_json(embed_parent=False).get("envelope")
        except (PreconditionViolated, StructureMismatch) as exc:
            out["envelope"] = str(exc)
    emit(args, out)
    return _verdict_code(v)


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "certify": cmd_certify, "refute": cmd_refute,
            "envelope": cmd_envelope, "twist": cmd_twist, "report": cmd_report}


def _positive(lo: int, hi: int):
    def parse(text: str) -> int:
        v = int(text)
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"must lie in {lo}..{hi}")
        return v
    return parse


class _Parser(argparse.ArgumentParser):
    # exit status 2 is reserved for undecided verdicts
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="text")
    common.add_argument("--order-cap", type=_positive(1, 10**7), default=DEFAULT_ORDER_CAP,
                        help="largest group order accepted while closing generators")
    common.add_argument("--conductor", type=_positive(1, MAX_CONDUCTOR),
                        help="cyclotomic conductor used to read scalars, overriding the input file")
    common.add_argument("--trust", action="store_true", help="skip re-verification of loaded structures")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    src = common.add_argument_group("inputs")
    src.add_argument("--factorization", metavar="TOML", help="factorization or bicrossed spec")
    src.add_argument("--group", metavar="TOML", help="group spec")
    src.add_argument("--cocycle", metavar="TOML", help="lifted_cocycle or bicharacter spec")
    src.add_argument("--spec", metavar="TOML", help="any spec; the kind key decides")
    src.add_argument("--hopf", metavar="JSON", help="serialized Hopf algebra or certificate")
    src.add_argument("--algebra", choices=ALGEBRAS, help="algebra built from a group spec")
    src.add_argument("--dual", action="store_true", help="use the dual bicrossed product")

    parser = _Parser(prog="qpalg", description="Quantum permutation algebra toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "build": "build an algebra and print it (json) or its axiom flags (text)",
        "verify": "check Hopf axioms, or re-verify a magic certificate",
        "certify": "run the decision pipeline",
        "refute": "run the refutation criteria only",
        "envelope": "compute the quantum permutation envelope",
        "twist": "cocycle twists and twisted group algebras",
        "report": "orbits, axioms, verdict and envelope in one report",
    }
    for name, h in helps.items():
        sub.add_parser(name, parents=[common], help=h)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SpecError, UsageError, OrderLimitExceeded, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

Subcommands: blocks, support-simple, support-block, phi-lambda, verify-dist,
and oracle verify.  Output is JSON on stdout (or a file via --out); --format
text renders compact human tables instead.  Exit status: 0 pass, 1
verification mismatch, 2 usage error, 3 admissibility-gate refusal (also
returned, as an advisory, when a failing gate is overridden with --unsafe).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

from . import dpalg, linkage, oracle, varieties
from .errors import FKError
from .ffield import _is_prime
from .rootsys import Weight, gate_check, parse_group

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GATE = 3


@dataclass
class CommandRequest:
    """Validated invocation of one subcommand."""

    command: str
    group: str = None
    p: int = None
    r: int = None
    lam: Weight = None
    registry_path: str = None
    field_ext: int = 1
    dump: bool = False
    unsafe: bool = False
    fmt: str = "json"
    out: str = None
    checks: tuple = ()


@dataclass
class Report:
    """Uniform result wrapper: status, payload, and the computation kind."""

    status: str
    provenance: str
    payload: dict = dc_field(default_factory=dict)

    def as_dict(self):
        doc = {"status": self.status, "provenance": self.provenance}
        doc.update(self.payload)
        return doc


class UsageError(FKError):
    pass


def _parse_lambda(text, rank):
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--lambda must be comma-separated integers, got {text!r}")
    if len(coords) != rank:
        raise UsageError(
            f"--lambda has {len(coords)} coordinates but the group has rank {rank}")
    return Weight(coords)


def _require_prime(p):
    if not _is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fksupport",
        description="Support-variety descriptors for Frobenius kernels of "
                    "classical groups, with symbolic and matrix-level checkers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, group=True, r=True, lam=False, registry=False):
        if group:
            sp.add_argument("--group", required=True,
                            help="group name: A3, B3, C2, D4, SL4, Sp4, SO7, ...")
        sp.add_argument("--p", required=True, type=int, help="prime characteristic")
        if r:
            sp.add_argument("--r", required=True, type=int, help="kernel depth r >= 1")
        if lam:
            sp.add_argument("--lambda", dest="lam", required=True,
                            help="weight coordinates, comma separated")
        if registry:
            sp.add_argument("--registry", default=None,
                            help="JSON registry of kernel-one support data")
        sp.add_argument("--unsafe", action="store_true",
                        help="run even when the admissibility gate p > h*c fails")
        sp.add_argument("--format", dest="fmt", choices=("json", "text"),
                        default="json")
        sp.add_argument("--out", default=None, help="write output to a file")

    common(sub.add_parser("blocks", help="linkage classes of the restricted region"))
    common(sub.add_parser("support-simple",
                          help="tuple descriptor of a simple module"),
           lam=True, registry=True)
    common(sub.add_parser("support-block",
                          help="tuple descriptor of a block"), lam=True)
    common(sub.add_parser("phi-lambda",
                          help="roots with pairing divisible by p, plus the "
                               "Levi conjugation"), r=False, lam=True)

    vd = sub.add_parser("verify-dist",
                        help="check the divided-power splitting identity")
    common(vd, group=False)
    vd.add_argument("--dump", action="store_true",
                    help="print the full expansion in stable text form")

    orc = sub.add_parser("oracle", help="exhaustive matrix oracle (SL2)")
    orc_sub = orc.add_subparsers(dest="oracle_command", required=True)
    ov = orc_sub.add_parser("verify", help="run oracle/descriptor comparisons")
    common(ov, group=False)
    ov.add_argument("--check", choices=("simple", "equal", "block", "h0-remark"),
                    default=None, help="run a single check (default: all three)")
    ov.add_argument("--field-ext", dest="field_ext", type=int, choices=(1, 2),
                    default=1, help="sweep over the degree-2 field extension")
    return parser


def _emit(doc, req):
    if req.fmt == "json":
        text = json.dumps(doc, indent=2)
    else:
        text = _render_text(doc)
    if req.out:
        with open(req.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {req.out}", file=sys.stderr)
    else:
        print(text)


def _render_text(doc):
    if isinstance(doc, list):
        # one compact line per item (e.g. per linkage class)
        return "\n".join(json.dumps(item) for item in doc)
    lines = []
    for key, value in doc.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _apply_gate(req, rs):
    """Returns (gate_report, refusal_exit or None)."""
    report = gate_check(req.p, rs)
    if report.passed:
        return report, None
    if not req.unsafe:
        print(f"refused: p={req.p} fails the admissibility gate p > h*c "
              f"(h={report.coxeter_number}, c={report.constant}, "
              f"h*c={report.bound}); pass --unsafe to override",
              file=sys.stderr)
        return report, EXIT_GATE
    print(f"WARNING: p={req.p} fails the admissibility gate p > h*c "
          f"(h*c={report.bound}); results are outside the proven range",
          file=sys.stderr)
    return report, None


def _descriptor_payload(rs, tv, registry=None, lam=None, p=None, r=None):
    dims = [varieties.orbit_dim(rs, v) for v in tv.coords]
    total = None if any(d is None for d in dims) else sum(dims)
    payload = {
        "descriptor": tv.as_dict(),
        "coordinate_dims": dims,
        "dimension": total,
    }
    if registry is not None:
        payload["complexity_upper"] = varieties.complexity_upper(
            rs, lam, p, r, registry)
    return payload


def _cmd_blocks(req):
    spec = parse_group(req.group)
    rs = spec.root_system()
    gate, refusal = _apply_gate(req, rs)
    if refusal is not None:
        return refusal
    classes = linkage.enumerate_classes(rs, req.p, req.r)
    doc = [cls.as_dict() for cls in classes]
    _emit(doc, req)
    return EXIT_GATE if not gate.passed else EXIT_PASS


def _cmd_support_simple(req):
    spec = parse_group(req.group)
    rs = spec.root_system()
    lam = _parse_lambda(req.lam, rs.rank)
    gate, refusal = _apply_gate(req, rs)
    if refusal is not None:
        return refusal
    registry = varieties.load_registry(req.registry_path)
    tv = varieties.simple_variety(rs, lam, req.p, req.r, registry)
    report = Report("pass", "simple-module-descriptor", {
        "group": req.group, "p": req.p, "r": req.r,
        "lambda": list(lam.coords),
        "gate": gate.as_dict(),
        **_descriptor_payload(rs, tv, registry, lam, req.p, req.r),
    })
    _emit(report.as_dict(), req)
    return EXIT_GATE if not gate.passed else EXIT_PASS


def _cmd_support_block(req):
    spec = parse_group(req.group)
    rs = spec.root_system()
    lam = _parse_lambda(req.lam, rs.rank)
    gate, refusal = _apply_gate(req, rs)
    if refusal is not None:
        return refusal
    tv = varieties.block_variety(rs, lam, req.p, req.r)
    report = Report("pass", "block-descriptor", {
        "group": req.group, "p": req.p, "r": req.r,
        "lambda": list(lam.coords),
        "m": linkage.digit_depth(lam, req.p, req.r),
        "gate": gate.as_dict(),
        **_descriptor_payload(rs, tv),
    })
    _emit(report.as_dict(), req)
    return EXIT_GATE if not gate.passed else EXIT_PASS


def _cmd_phi_lambda(req):
    spec = parse_group(req.group)
    rs = spec.root_system()
    lam = _parse_lambda(req.lam, rs.rank)
    gate, refusal = _apply_gate(req, rs)
    if refusal is not None:
        return refusal
    roots = varieties.p_divisible_roots(rs, lam, req.p)
    payload = {
        "group": req.group, "p": req.p, "lambda": list(lam.coords),
        "gate": gate.as_dict(),
        "roots": [list(alpha.simple_coords) for alpha in roots],
        "count": len(roots),
    }
    if gate.passed:
        w, levi = varieties.levi_conjugate(rs, roots)
        payload["levi"] = [i + 1 for i in levi]
        payload["word"] = [i + 1 for i in w.word]
    report = Report("pass", "divisible-pairing-roots", payload)
    _emit(report.as_dict(), req)
    return EXIT_GATE if not gate.passed else EXIT_PASS


def _cmd_verify_dist(req):
    result = dpalg.verify_split_identity(req.r, req.p, keep_text=req.dump)
    payload = result.as_dict()
    if req.dump:
        payload["expansion"] = result.expansion_text
    report = Report("pass" if result.passed else "fail",
                    "distribution-split-identity", payload)
    _emit(report.as_dict(), req)
    print(result.summary(), file=sys.stderr)
    return EXIT_PASS if result.passed else EXIT_MISMATCH


def _cmd_oracle_verify(req):
    from .rootsys import build_root_system
    rs = build_root_system("A", 1)
    gate, refusal = _apply_gate(req, rs)
    if refusal is not None:
        return refusal
    runners = {
        "simple": oracle.verify_simple,
        "equal": oracle.verify_equal,
        "block": oracle.verify_block,
        "h0-remark": oracle.h0_remark,
    }
    names = req.checks or ("simple", "equal", "block")
    reports = [runners[name](req.p, req.r, req.field_ext) for name in names]
    failed = any(not rep.passed and not rep.informational for rep in reports)
    doc = {
        "status": "fail" if failed else "pass",
        "provenance": "matrix-oracle-sweep",
        "reports": [rep.as_dict() for rep in reports],
    }
    _emit(doc, req)
    for rep in reports:
        print(rep.summary(), file=sys.stderr)
    if failed:
        return EXIT_MISMATCH
    return EXIT_GATE if not gate.passed else EXIT_PASS


def _request_from_args(args):
    req = CommandRequest(command=args.command)
    req.unsafe = getattr(args, "unsafe", False)
    req.fmt = getattr(args, "fmt", "json")
    req.out = getattr(args, "out", None)
    req.group = getattr(args, "group", None)
    req.lam = getattr(args, "lam", None)
    req.registry_path = getattr(args, "registry", None)
    req.dump = getattr(args, "dump", False)
    req.field_ext = getattr(args, "field_ext", 1)
    req.p = args.p
    _require_prime(req.p)
    if hasattr(args, "r"):
        if args.r < 1:
            raise UsageError(f"--r must be >= 1, got {args.r}")
        req.r = args.r
    if getattr(args, "check", None):
        req.checks = (args.check,)
    return req


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        req = _request_from_args(args)
        if args.command == "blocks":
            return _cmd_blocks(req)
        if args.command == "support-simple":
            return _cmd_support_simple(req)
        if args.command == "support-block":
            return _cmd_support_block(req)
        if args.command == "phi-lambda":
            return _cmd_phi_lambda(req)
        if args.command == "verify-dist":
            return _cmd_verify_dist(req)
        if args.command == "oracle":
            return _cmd_oracle_verify(req)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front end.

Every command builds a :class:`Report`.  ``--json`` prints it whole; otherwise a
short text summary is printed.  Exit status: 0 ok, 1 a check failed, 2 usage
or parse error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from . import multicube as mc
from . import randgen as rg
from . import wire
from .binary import (BinaryComplex, bot, embed_nenashev, h_functor, h_ses_witnesses, top, validate_binary,
                     validate_dses)
from .complexes import ChainComplex, homology, validate_complex
from .errors import BinaryKError, ParseError
from .exactrings import ring_from_string
from .exactrings.rings import ExtensionField, PrimeField
from .ktorsion import calibrate_epsilon, k1_class, nenashev_det_oracle
from .relative import ExactFunctorSpec, boundary, certify_rel_relation, rel_class, validate_triple
from .suites import SUITES, run_suites
from .verdict import Verdict

DEFAULT_SEED = 1729
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    checks: list[dict] = field(default_factory=list)
    result: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def add(self, name: str, verdict: Verdict | bool, **witness) -> bool:
        status = "pass" if verdict else "fail"
        if isinstance(verdict, Verdict) and not verdict:
            witness = {"message": verdict.message, **verdict.witness, **witness}
        rec: dict[str, Any] = {"name": name, "status": status}
        if status == "fail" and witness:
            rec["witness"] = witness
        self.checks.append(rec)
        return status == "pass"

    def body(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "outcome": "ok" if self.ok else "fail",
                "checks": self.checks, "result": self.result}

    @property
    def digest(self) -> str:
        """sha256 of the canonical body; timing is excluded."""
        return hashlib.sha256(wire.canonical(self.body()).encode()).hexdigest()

    def to_json(self) -> dict:
        out = self.body()
        out["digest"] = self.digest
        out["timing"] = self.timing
        return out


def _default_seed() -> int:
    raw = os.environ.get("BINARYK_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return rg.describe_seed(raw)
    except ValueError:
        raise ParseError(f"BINARYK_SEED={raw!r} is not an integer") from None


def _resolve(path: str, args) -> Path:
    p = Path(path)
    if not p.is_absolute() and args.fixture_dir:
        p = Path(args.fixture_dir) / p
    return p


def _load(path: str, args):
    p = _resolve(path, args)
    payload = wire.read_json(p)
    digest = hashlib.sha256(wire.canonical(payload).encode()).hexdigest()
    kind, value = wire.load(payload)
    return kind, value, {"file": p.name, "sha256": digest}


def _expect(kind: str, allowed: tuple[str, ...], command: str) -> None:
    if kind not in allowed:
        raise ParseError(f"{command} accepts {', '.join(allowed)} payloads, got {kind}")


def _value(ring, x) -> dict[str, str]:
    return {"value": ring.to_str(x), "display": ring.display(x)}


# commands

def cmd_validate(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    rep = Report("validate", {**inputs, "kind": kind})
    if kind == "complex":
        rep.add("complex", validate_complex(obj))
    elif kind == "binary":
        if rep.add("binary", validate_binary(obj)):
            rep.result["acyclic"] = obj.is_acyclic()
    elif kind == "dses":
        rep.add("dses", validate_dses(obj))
    elif kind == "multicomplex":
        x, sig = obj
        rep.add("multicomplex", mc.validate_multicomplex(x, sig))
        rep.result["signature"] = list(sig)
    elif kind == "triple":
        t, f = obj
        rep.add("triple", validate_triple(t, f))
    else:
        rel, sig = obj
        rep.add(kind, mc.certify_relation(rel, sig))
    return rep


def _homology_strings(c: ChainComplex) -> dict[str, str]:
    return {str(n): str(homology(c, n)) for n in c.degrees}


def cmd_homology(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    _expect(kind, ("complex", "binary"), "homology")
    rep = Report("homology", {**inputs, "kind": kind})
    if kind == "complex":
        if rep.add("complex", validate_complex(obj)):
            rep.result["homology"] = _homology_strings(obj)
    else:
        if rep.add("binary", validate_binary(obj)):
            rep.result["top"] = _homology_strings(top(obj))
            rep.result["bot"] = _homology_strings(bot(obj))
    return rep


def _as_binary(kind: str, obj, rep: Report) -> BinaryComplex | None:
    if kind == "dses":
        if not rep.add("dses", validate_dses(obj)):
            return None
        return embed_nenashev(obj)
    if not rep.add("binary", validate_binary(obj)):
        return None
    return obj


def cmd_k1class(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    _expect(kind, ("binary", "dses"), "k1class")
    rep = Report("k1class", {**inputs, "kind": kind})
    b = _as_binary(kind, obj, rep)
    if b is not None and rep.add("acyclic", b.is_acyclic(), message="a row of the binary complex is not acyclic"):
        v = k1_class(b)
        rep.result.update(_value(v.ring, v.value))
    return rep


def _calibration_samples(seed: int, cases: int, extra=()) -> list:
    samples = list(extra)
    rings = [ring_from_string(r) for r in ("F5", "F7", "Q")]
    for i in range(cases):
        rng = random.Random(f"{seed}/calibrate/{i}")
        samples.append(rg.random_dses(rings[i % 3], rng.randrange(4), rng.randrange(4), rng))
    samples.append(rg.r_example(ring_from_string("F5"), 2))
    return samples


def cmd_nenashev(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    _expect(kind, ("dses",), "nenashev-class")
    rep = Report("nenashev-class", {**inputs, "seed": args.seed, "cases": args.cases})
    if not rep.add("dses", validate_dses(obj)):
        return rep
    eps = calibrate_epsilon(_calibration_samples(args.seed, args.cases))
    oracle = nenashev_det_oracle(obj)
    k1 = k1_class(embed_nenashev(obj))
    cls = oracle ** eps
    rep.add("k1class_matches_oracle", k1 == cls, k1=str(k1), oracle=str(oracle), epsilon=eps)
    rep.result.update(_value(cls.ring, cls.value))
    rep.result.update(oracle=oracle.ring.to_str(oracle.value), epsilon=eps)
    return rep


def cmd_calibrate(args) -> Report:
    extra, files = [], []
    for path in args.paths:
        kind, obj, inputs = _load(path, args)
        _expect(kind, ("dses",), "calibrate")
        extra.append(obj)
        files.append(inputs)
    rep = Report("calibrate", {"files": files, "seed": args.seed, "cases": args.cases})
    samples = _calibration_samples(args.seed, args.cases, extra)
    try:
        eps = calibrate_epsilon(samples)
    except BinaryKError as exc:
        rep.add("consistent", False, message=str(exc))
        return rep
    rep.add("consistent", True)
    pinning = sum(1 for s in samples if nenashev_det_oracle(s).value not in (s.ring.one, s.ring.neg(s.ring.one)))
    rep.result.update(epsilon=eps, samples=len(samples), pinning_samples=pinning)
    return rep


def cmd_hfunctor(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    _expect(kind, ("binary", "dses"), "hfunctor")
    rep = Report("hfunctor", {**inputs, "kind": kind})
    b = _as_binary(kind, obj, rep)
    if b is None:
        return rep
    h = h_functor(b)
    try:
        h_ses_witnesses(b)
    except AssertionError as exc:
        rep.add("witnesses", False, message=str(exc))
    else:
        rep.add("witnesses", True)
    if b.is_acyclic() and b.ring.is_field:
        rep.add("k1_invariant", k1_class(h) == k1_class(b), h=str(k1_class(h)), n=str(k1_class(b)))
    rep.result["h"] = wire.dump_binary(h)
    return rep


def cmd_multicheck(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    _expect(kind, ("multicomplex", "multi_ses", "multi_diagonal", "binary"), "multicheck")
    rep = Report("multicheck", {**inputs, "kind": kind})
    if kind == "binary":
        x, sig = mc.from_binary(obj), [mc.BQ]
    else:
        x, sig = obj
    if args.signature:
        sig = [s.strip() for s in args.signature.split(",")]
        rep.inputs["signature"] = sig
    if kind in ("multicomplex", "binary"):
        rep.add("multicomplex", mc.validate_multicomplex(x, sig))
        rep.result["signature"] = list(sig)
        binary_axes = [i for i in range(x.n) if x.is_binary(i)]
        rep.result["diagonal_axes"] = [i for i in binary_axes if mc.is_axis_diagonal(x, i)]
    else:
        rep.add(kind, mc.certify_relation(x, sig))
    return rep


def cmd_relative(args) -> Report:
    kind, obj, inputs = _load(args.path, args)
    sub = args.action
    rep = Report(f"relative {sub}", {**inputs, "kind": kind})
    if sub == "certify":
        _expect(kind, ("triple_ses", "triple_diagonal", "weak_equivalence"), "relative certify")
        rel, _ = obj
        rep.add(kind, certify_rel_relation(rel))
        return rep
    _expect(kind, ("triple",), f"relative {sub}")
    t, f = obj
    if sub == "boundary":
        # the formula applies to any well-formed triple; validity is reported alongside
        rep.result["boundary"] = boundary(t)
        rep.result["valid"] = bool(validate_triple(t, f))
        return rep
    valid = rep.add("triple", validate_triple(t, f))
    if sub == "validate":
        if valid:
            rep.result["evaluable"] = t.n.is_acyclic()
        return rep
    if not valid:
        return rep
    if not rep.add("evaluable", t.n.is_acyclic(), message="N has a row that is not acyclic"):
        return rep
    c = rel_class(t, f, validate=False)
    order = c.order()
    rep.result.update({"value": f.target.to_str(c.value), "class": str(c), "order": order,
                       "text": f"class order {order}"})
    return rep


def cmd_selftest(args) -> Report:
    names = args.suite or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise ParseError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    rep = Report("selftest", {"seed": args.seed, "cases": args.cases, "suites": names})
    checks, timing = run_suites(args.seed, args.cases, names)
    rep.checks = [c.to_json() for c in checks]
    rep.timing.update(timing)
    rep.result["summary"] = _counts(checks)
    rep.result["suites"] = {n: _counts([c for c in checks if c.name.split(".")[0] == n]) for n in names}
    return rep


def _counts(checks) -> dict[str, int]:
    return {
        "checks": len(checks),
        "passed": sum(c.status == "pass" for c in checks),
        "failed": sum(c.status == "fail" for c in checks),
        "warnings": sum(c.status == "warn" for c in checks),
        "cases": sum(c.cases for c in checks),
    }


RANDGEN_KINDS = ("complex", "acyclic", "binary", "dses", "multicomplex", "triple", "triple-general",
                 "triple-ses", "weak-equivalence", "triple-diagonal", "multi-ses")


def _functor_for(args) -> ExactFunctorSpec:
    target = ring_from_string(args.ring or "F4")
    if args.source:
        source = ring_from_string(args.source)
    elif isinstance(target, ExtensionField):
        source = PrimeField(target.p)
    else:
        source = target
    return ExactFunctorSpec(source, target)


def randgen_payload(kind: str, ring_name: str | None, size: int, seed: int, source: str | None = None,
                    signature: str | None = None) -> dict:
    ns = argparse.Namespace(ring=ring_name, source=source)
    rng = random.Random(f"{seed}/randgen/{kind}/{size}")
    ring = ring_from_string(ring_name or "F5")
    if kind == "complex":
        return wire.dump_complex(rg.random_complex(ring, size, rng))
    if kind == "acyclic":
        return wire.dump_complex(rg.random_acyclic(ring, size, rng))
    if kind == "binary":
        return wire.dump_binary(rg.random_binary_acyclic(ring, size, rng))
    if kind == "dses":
        a = rng.randrange(size + 1)
        return wire.dump_dses(rg.random_dses(ring, a, size - a, rng))
    if kind in ("multicomplex", "multi-ses"):
        sig = [s.strip() for s in (signature or "Bq,Bq").split(",")]
        if size == 0:
            x = mc.MultiComplex(ring, len(sig), {}, [[{}] * (2 if s == mc.BQ else 1) for s in sig])
        else:
            x = rg.random_multicomplex(ring, sig, size, rng)
        if kind == "multicomplex":
            return wire.dump_multicomplex(x, sig)
        z = rg.random_multicomplex(ring, sig, max(size, 1), rng)
        return wire.dump_relation(mc.split_ses(x, z), sig)
    f = _functor_for(ns)
    if kind == "triple":
        return wire.dump_triple(rg.random_evaluable_triple(f, size, rng), f)
    if kind == "triple-general":
        return wire.dump_triple(rg.random_triple(f, size, rng), f)
    if kind == "triple-ses":
        return wire.dump_relation(rg.random_triple_ses(f, size, rng))
    if kind == "weak-equivalence":
        return wire.dump_relation(rg.random_weak_equivalence(f, size, rng))
    if kind == "triple-diagonal":
        return wire.dump_relation(rg.random_diagonal_triple(f, size, rng))
    raise ParseError(f"unknown randgen kind {kind!r}")


# argument parsing and output

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $BINARYK_SEED or 1729)")
    common.add_argument("--cases", type=int, default=None, help="cases per check")
    common.add_argument("--ring", default=None, help="ring name: F5, F4, F2^3, Q, Z")
    common.add_argument("--json", action="store_true", help="print the full JSON report")
    common.add_argument("--fixture-dir", default=None, help="directory for relative input paths")

    p = argparse.ArgumentParser(prog="binaryk", description="Binary complexes, torsion and relative K-classes.")
    p.add_argument("--version", action="version", version=f"binaryk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate any payload")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)
    s = sub.add_parser("homology", parents=[common], help="homology of a complex or both rows of a binary complex")
    s.add_argument("path")
    s.set_defaults(func=cmd_homology)
    s = sub.add_parser("k1class", parents=[common], help="K1 class of a binary acyclic complex or DSES")
    s.add_argument("path")
    s.set_defaults(func=cmd_k1class)
    s = sub.add_parser("nenashev-class", parents=[common], help="determinant class of a DSES")
    s.add_argument("path")
    s.set_defaults(func=cmd_nenashev)
    s = sub.add_parser("calibrate", parents=[common], help="calibrate the exponent between k1class and the oracle")
    s.add_argument("paths", nargs="*")
    s.set_defaults(func=cmd_calibrate)
    s = sub.add_parser("hfunctor", parents=[common], help="apply H and check its two sequences")
    s.add_argument("path")
    s.set_defaults(func=cmd_hfunctor)
    s = sub.add_parser("multicheck", parents=[common], help="validate a multicomplex or certify a relation")
    s.add_argument("path")
    s.add_argument("--signature", default=None, help="override, e.g. Bq,Cq")
    s.set_defaults(func=cmd_multicheck)
    s = sub.add_parser("relative", parents=[common], help="relative triples")
    s.add_argument("action", choices=("validate", "class", "boundary", "certify"))
    s.add_argument("path")
    s.set_defaults(func=cmd_relative)
    s = sub.add_parser("selftest", parents=[common], help="run the property suites")
    s.add_argument("--suite", action="append", default=None, help=f"one of {', '.join(SUITES)} (repeatable)")
    s.set_defaults(func=cmd_selftest)
    s = sub.add_parser("randgen", parents=[common], help="print a random valid payload")
    s.add_argument("kind", choices=RANDGEN_KINDS)
    s.add_argument("--size", type=int, default=3)
    s.add_argument("--source", default=None, help="source field for triples (default: prime subfield)")
    s.add_argument("--signature", default=None, help="multicomplex signature, e.g. Bq,Cq")
    s.set_defaults(func=None)
    return p


def _print_text(rep: Report, out) -> None:
    print(f"{rep.command}: {'ok' if rep.ok else 'FAIL'}", file=out)
    for c in rep.checks:
        extra = f" ({c['cases']} cases)" if "cases" in c else ""
        print(f"  [{c['status']}] {c['name']}{extra}", file=out)
        if c["status"] == "fail" and c.get("witness"):
            print(f"      witness: {json.dumps(c['witness'], sort_keys=True)}", file=out)
    for k, v in rep.result.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        print(f"{k}: {v}", file=out)
    print(f"digest: {rep.digest}", file=out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.func is None:
            if args.size < 0:
                raise ParseError("--size must be >= 0")
            payload = randgen_payload(args.kind, args.ring, args.size, args.seed, args.source, args.signature)
            json.dump(payload, out, indent=None if args.json else 1, sort_keys=False)
            out.write("\n")
            return EXIT_OK
        if args.cases is None:
            args.cases = None if args.func is cmd_selftest else 30
        elif args.cases < 0:
            raise ParseError("--cases must be >= 0")
        t0 = time.perf_counter()
        rep = args.func(args)
        rep.timing.setdefault("total", round(time.perf_counter() - t0, 3))
    except ParseError as exc:
        print(f"binaryk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BinaryKError as exc:
        print(f"binaryk: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        json.dump(rep.to_json(), out, indent=1)
        out.write("\n")
    else:
        _print_text(rep, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

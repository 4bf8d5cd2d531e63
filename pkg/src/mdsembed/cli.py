"""Command-line front end.

Exit status: 0 when the requested construction or check succeeds, 1 when a
verification fails (the report names a witness), 2 on usage or file errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .combinators import Subcube, flatten, generalized_product, mcneish_product, permute_coordinate, switch_subcode
from .core_codes import AxisPlane, ExhaustiveLimitError, ExplicitCode, is_mds
from .embed_general import (
    EmbeddingError,
    InvariantError,
    PatchedMdsCode,
    build_patched_code,
    oracle_complete_plane,
    oracle_contains,
    verify_patched,
)
from .embed_latin import LatinEmbeddingCertificate, PartialLatinError, embed_partial_latin
from .io import FileFormatError, emit_certificate, emit_code, parse_certificate, parse_code_file
from .linear_mds import ENUMERATION_LIMIT, LinearMdsCode, build_check_matrix, verify_mds_matrix


class UsageError(Exception):
    pass


class Outcome:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.summary: dict = {}
        self.ok = True

    def say(self, line: str) -> None:
        self.lines.append(line)

    def check(self, ok: bool, line: str) -> None:
        self.ok = self.ok and bool(ok)
        self.say(line)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str, out: Outcome) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    out.say(f"wrote {path}")


def _load_code(path: str) -> ExplicitCode:
    return parse_code_file(_read(path))


def _one_input(args) -> str:
    if not args.input or len(args.input) != 1:
        raise UsageError("exactly one --input is required")
    return args.input[0]


def cmd_gen_mds(args, out: Outcome) -> None:
    H = build_check_matrix(args.p, args.d, args.t)
    report = verify_mds_matrix(H)
    out.say("check matrix: " + json.dumps([list(r) for r in H.rows]))
    out.check(report.ok, report.summary())
    L = LinearMdsCode(H)
    out.summary.update(p=args.p, d=args.d, t=args.t, check_matrix=[list(r) for r in H.rows], matrix_ok=report.ok)
    if L.size <= ENUMERATION_LIMIT:
        C = L.explicit()
        mds = is_mds(C, args.t)
        out.check(mds.ok, mds.summary())
        _write(args.out, emit_code(C), out)
    elif args.out:
        raise UsageError(f"code has {L.size} words; too large to write out")


def _verify_general(P: PatchedMdsCode, C: ExplicitCode, args, out: Outcome) -> None:
    report = verify_patched(P, C, args.verify, budget=args.samples, seed=args.seed)
    out.check(report.ok, report.summary())
    out.summary.update(verified=report.ok, mode=report.mode, q_prime=P.q_prime)
    if report.enumerated_size is not None:
        out.summary["enumerated_size"] = report.enumerated_size


def cmd_embed_general(args, out: Outcome) -> None:
    C = _load_code(_one_input(args))
    P = build_patched_code(C, args.t)
    out.say(f"p={P.p} n={P.n} q'={P.p}^{P.n}={P.q_prime} patches={len(P.patches)}")
    for cert in P.certificates:
        out.check(cert.ok, f"{cert.family} subcodes pairwise disjoint: {cert.ok} ({cert.pairs_checked} pairs)")
    out.summary.update(p=P.p, n=P.n, d=P.d, t=P.t, q_prime=P.q_prime, patches=len(P.patches))
    if args.verify:
        _verify_general(P, C, args, out)
    _write(args.out, emit_certificate(P, C), out)


def cmd_embed_latin(args, out: Outcome) -> None:
    C = _load_code(_one_input(args))
    cert = embed_partial_latin(C)
    report = cert.verify()
    out.check(report.ok, report.summary())
    out.say(f"switches at top level: {len(cert.trace.get('switches', []))}")
    out.summary.update(order=cert.order, bound=report.bound, verified=report.ok)
    _write(args.out, emit_certificate(cert), out)


def cmd_verify_mds(args, out: Outcome) -> None:
    C = _load_code(_one_input(args))
    samples = args.samples if args.verify == "sample" else None
    try:
        report = is_mds(C, args.t, samples=samples, seed=args.seed)
    except ExhaustiveLimitError as exc:
        raise UsageError(f"{exc} (use --verify sample)") from None
    out.check(report.ok, report.summary())
    out.summary.update(mds=report.ok, planes_checked=report.planes_checked)


def cmd_verify_embedding(args, out: Outcome) -> None:
    obj = parse_certificate(_read(_one_input(args)))
    if isinstance(obj, LatinEmbeddingCertificate):
        report = obj.verify()
        out.check(report.ok, report.summary())
        out.summary.update(kind="latin_embedding", verified=report.ok, order=obj.order)
        return
    P, C = obj
    for cert in P.certificates:
        out.check(cert.ok, f"{cert.family} subcodes pairwise disjoint: {cert.ok}")
    if args.verify is None:
        args.verify = "exhaustive" if P.size <= ENUMERATION_LIMIT else "sample"
    out.summary["kind"] = "patched_mds"
    _verify_general(P, C, args, out)


def _replay_squares() -> dict[str, ExplicitCode]:
    C = fixtures.square_code(fixtures.L1)
    out = {"L1": C}
    for k, s in enumerate(fixtures.SWITCHES):
        sub = Subcube((s["rows"], s["cols"], s["symbols"]))
        C1 = sub.intersect(C)
        C = switch_subcode(C, C1, permute_coordinate(C1, s["coord"], s["perm"]), 1, sub)
        out[f"L{k + 2}"] = C
    return out


def cmd_verify_fixture(args, out: Outcome) -> None:
    name = args.name
    if name == "C3":
        C = fixtures.c3_code()
        cert = embed_partial_latin(C)
        report = cert.verify()
        out.check(report.ok, "C3 embeds: " + report.summary())
        return
    if name not in fixtures.SQUARES:
        raise UsageError(f"unknown fixture {name!r}; choose from C3, {', '.join(fixtures.SQUARES)}")
    C = fixtures.square_code(fixtures.SQUARES[name])
    mds = is_mds(C, 1)
    out.check(mds.ok, f"{name} is a Latin square of order 9: {mds.summary()}")
    if name == "L1":
        product = flatten(generalized_product(fixtures.a_code(), 2, fixtures.u_codes()))
        same = fixtures.square_from_code(product) == fixtures.L1
        out.check(same, f"L1 equals the generalized product of A with U_a, U_b, U_c: {same}")
    else:
        same = _replay_squares()[name].words == C.words
        out.check(same, f"{name} equals the replayed switching sequence: {same}")
    if name == "L5":
        contained = [(r, c, x) in C for (r, c), x in fixtures.C3_CELLS.items()]
        out.check(all(contained), f"L5 contains all {len(contained)} cells of C3: {all(contained)}")
    out.summary.update(fixture=name, ok=out.ok)


def cmd_product(args, out: Outcome) -> None:
    if args.kind == "mcneish":
        if not args.input or len(args.input) != 2:
            raise UsageError("mcneish needs two --input files")
        M1, M2 = (_load_code(p) for p in args.input)
        P = mcneish_product(M1, M2, args.t)
    else:
        B = _load_code(_one_input(args))
        if not args.inner:
            raise UsageError("generalized needs --inner files, one per symbol of the key coordinate")
        key = args.key % B.d
        if len(args.inner) != len(B.alphabets[key]):
            raise UsageError(f"{len(B.alphabets[key])} --inner files needed, got {len(args.inner)}")
        U = {s: _load_code(p) for s, p in zip(B.alphabets[key], args.inner)}
        P = generalized_product(B, key, U, args.t)
    P = flatten(P)
    report = is_mds(P, args.t)
    out.check(report.ok, report.summary())
    out.summary.update(order=P.order, size=len(P), mds=report.ok)
    _write(args.out, emit_code(P), out)


def _load_patched(args) -> PatchedMdsCode:
    obj = parse_certificate(_read(_one_input(args)))
    if isinstance(obj, LatinEmbeddingCertificate):
        raise UsageError("queries need a patched_mds certificate")
    return obj[0]


def cmd_query(args, out: Outcome) -> None:
    P = _load_patched(args)
    if args.kind == "contains":
        if args.word is None:
            raise UsageError("--word is required")
        try:
            Y = json.loads(args.word)
            result = oracle_contains(P, Y)
        except (json.JSONDecodeError, ValueError) as exc:
            raise UsageError(f"bad --word: {exc}") from None
        out.check(result, f"contains: {str(result).lower()}")
        out.summary["contains"] = result
    else:
        if args.plane is None:
            raise UsageError("--plane is required")
        try:
            fixed = {int(k): tuple(v) for k, v in json.loads(args.plane).items()}
            plane = AxisPlane.from_mapping(P.d, fixed)
            Y = oracle_complete_plane(P, plane)
        except (json.JSONDecodeError, ValueError, AttributeError, TypeError) as exc:
            raise UsageError(f"bad --plane: {exc}") from None
        out.say("completion: " + json.dumps([list(r) for r in Y]))
        out.summary["completion"] = [list(r) for r in Y]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdsembed", description="Embed codes into MDS codes and verify the results.")
    parser.add_argument("--json", action="store_true", help="append a machine-readable summary line")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, verify_default=None):
        p.add_argument("--input", action="append", help="input file (repeat for two-input commands)")
        p.add_argument("--out", help="output file")
        p.add_argument("--t", type=int, default=1, help="code distance minus one")
        p.add_argument("--verify", choices=["exhaustive", "sample"], default=verify_default)
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)

    gen = sub.add_parser("gen").add_subparsers(dest="kind", required=True)
    g = gen.add_parser("mds", help="linear MDS code from a Reed-Solomon check matrix")
    common(g)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.set_defaults(func=cmd_gen_mds)

    emb = sub.add_parser("embed").add_subparsers(dest="kind", required=True)
    e = emb.add_parser("general", help="embed a code of distance t+1 into an MDS code")
    common(e)
    e.set_defaults(func=cmd_embed_general)
    e = emb.add_parser("latin", help="embed a partial Latin hypercube")
    common(e)
    e.set_defaults(func=cmd_embed_latin)

    ver = sub.add_parser("verify").add_subparsers(dest="kind", required=True)
    v = ver.add_parser("mds")
    common(v, verify_default="exhaustive")
    v.set_defaults(func=cmd_verify_mds)
    v = ver.add_parser("embedding")
    common(v)
    v.set_defaults(func=cmd_verify_embedding)
    v = ver.add_parser("fixture")
    v.add_argument("--name", required=True, help="C3 or L1..L5")
    v.set_defaults(func=cmd_verify_fixture)

    prod = sub.add_parser("product").add_subparsers(dest="kind", required=True)
    for kind in ("mcneish", "generalized"):
        p = prod.add_parser(kind)
        common(p)
        p.set_defaults(func=cmd_product)
    p.add_argument("--inner", action="append", help="inner code for each key symbol, in alphabet order")
    p.add_argument("--key", type=int, default=-1, help="key coordinate of the outer code")

    qry = sub.add_parser("query").add_subparsers(dest="kind", required=True)
    q = qry.add_parser("contains")
    common(q)
    q.add_argument("--word", help="JSON list of d vectors")
    q.set_defaults(func=cmd_query)
    q = qry.add_parser("complete-plane")
    common(q)
    q.add_argument("--plane", help='JSON object {"coordinate": vector, ...}')
    q.set_defaults(func=cmd_query)
    return parser


def run_command(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Outcome()
    try:
        args.func(args, out)
    except (UsageError, FileFormatError, EmbeddingError, PartialLatinError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        out.check(False, f"invariant failure: {exc}")
    for line in out.lines:
        print(line, file=stdout)
    if args.json:
        out.summary["ok"] = out.ok
        print(json.dumps(out.summary, sort_keys=True), file=stdout)
    return 0 if out.ok else 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

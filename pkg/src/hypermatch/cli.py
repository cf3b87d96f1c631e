"""Command-line interface.

Exit codes: 0 perfect matching / valid certificate, 1 no perfect matching /
invalid certificate, 2 unreadable input, 3 regime violation.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from fractions import Fraction

from .construct import KINDS, InstanceSpec, generate
from .decide import DEFAULT_EPS, DEFAULT_GAMMA, decide_pm, find_certificate, verify_certificate
from .errors import HypermatchError, InvalidArgument, ParseError, RegimeViolation
from .hypergraph import brute_force_pm
from .io import certificate_from_text, certificate_to_text, dumps_json, read_instance, serialize_instance
from .search import find_pm

EXIT_PM, EXIT_NO_PM, EXIT_PARSE, EXIT_REGIME = 0, 1, 2, 3


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational like 1/20") from None


def int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from None


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERMATCH_THREADS", "1")))
    except ValueError:
        return 1


def _solver_args(p):
    p.add_argument("instance", help="instance file ('-' for stdin)")
    p.add_argument("--gamma", type=rational, default=DEFAULT_GAMMA, help="codegree slack, e.g. 1/20")
    p.add_argument("--eps", type=rational, default=DEFAULT_EPS, help="square of a rational, e.g. 1/10000")
    p.add_argument("--C", dest="C", type=int, default=None, help="far-set budget (default 2k(k-3))")
    p.add_argument("--brute-threshold", type=int, default=None,
                   help="decide instances with fewer vertices by exhaustive search")
    p.add_argument("--threads", type=int, default=default_threads(),
                   help="worker processes for the certificate search (env HYPERMATCH_THREADS)")
    p.add_argument("--seed", type=int, default=0, help="accepted for interface symmetry; the solver is deterministic")
    p.add_argument("--no-fallback", action="store_true",
                   help="raise on a regime break instead of finishing by exhaustive search")
    p.add_argument("--cert-out", help="also write the certificate JSON to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide whether a perfect matching exists")
    _solver_args(p)
    p = sub.add_parser("find", help="find a perfect matching or a certificate")
    _solver_args(p)
    p = sub.add_parser("certify", help="search for a certificate only")
    _solver_args(p)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--sizes", type=int_list, help="part sizes, comma separated")
    p.add_argument("--s", type=int, help="size of S for the space barrier")
    p.add_argument("--target", type=int, help="minimum codegree for random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("bench", help="sweep generated instances and write CSV")
    p.add_argument("--kinds", default="random_dense,parity,space_barrier,complete")
    p.add_argument("--k", type=int_list, default=[3])
    p.add_argument("--n", type=int_list, default=[6, 9, 12])
    p.add_argument("--seeds", type=int, default=3, help="random instances per grid point")
    p.add_argument("--gamma", type=rational, default=DEFAULT_GAMMA)
    p.add_argument("--brute-threshold", type=int, default=0)
    p.add_argument("--threads", type=int, default=default_threads())
    p.add_argument("--timing", action="store_true", help="add a wall-clock column")
    p.add_argument("-o", "--output")
    return parser


def _read(path):
    if path == "-":
        from .io import parse_instance

        return parse_instance(sys.stdin.read())
    return read_instance(path)


def _emit(obj, out):
    out.write(dumps_json(obj) + "\n")


def _decision_json(decision, with_matching):
    obj = {"result": decision.outcome, "mode": decision.mode}
    obj["certificate"] = decision.certificate.to_json() if decision.certificate else None
    if with_matching:
        obj["matching"] = [list(e) for e in decision.matching] if decision.matching else None
    if decision.notes:
        obj["notes"] = list(decision.notes)
    return obj


def _write_cert(cert, path):
    if cert is not None and path:
        with open(path, "w") as fh:
            fh.write(certificate_to_text(cert))


def cmd_solve(args, out):
    h = _read(args.instance)
    if args.command == "certify":
        cert = find_certificate(h, args.gamma, args.C, parallelism=args.threads)
        _emit({"certificate": cert.to_json() if cert else None}, out)
        _write_cert(cert, args.cert_out)
        return EXIT_NO_PM if cert else EXIT_PM
    solver = find_pm if args.command == "find" else decide_pm
    kwargs = dict(C=args.C, parallelism=args.threads, fallback=not args.no_fallback)
    if solver is find_pm:
        decision = find_pm(h, args.gamma, args.eps, args.brute_threshold, **kwargs)
    else:
        decision = decide_pm(h, args.gamma, args.brute_threshold, eps=args.eps, **kwargs)
    _emit(_decision_json(decision, args.command == "find"), out)
    _write_cert(decision.certificate, args.cert_out)
    return EXIT_PM if decision.has_pm else EXIT_NO_PM


def cmd_verify(args, out):
    h = _read(args.instance)
    with open(args.certificate) as fh:
        cert = certificate_from_text(fh.read())
    try:
        ok = verify_certificate(h, cert)
    except InvalidArgument as exc:
        out.write(f"invalid: {exc}\n")
        return EXIT_NO_PM
    out.write("valid\n" if ok else "invalid\n")
    return EXIT_PM if ok else EXIT_NO_PM


def cmd_gen(args, out):
    spec = InstanceSpec(args.kind, args.k, args.n, tuple(args.sizes) if args.sizes else None,
                        args.s, args.target, args.seed)
    text = serialize_instance(generate(spec))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


BENCH_COLUMNS = ["kind", "k", "n", "seed", "edges", "result", "mode", "cert_d", "cert_far_size",
                 "brute_agrees"]


def bench_specs(kinds, ks, ns, seeds):
    """The instance grid swept by ``bench``; invalid combinations are skipped."""
    for kind in kinds:
        for k in ks:
            for n in ns:
                if n % k or n < k:
                    continue
                if kind == "random_dense":
                    target = max(1, -(-2 * (n - k + 1) // 3))
                    for seed in range(seeds):
                        yield InstanceSpec(kind, k, n, target=target, seed=seed)
                elif kind == "parity":
                    a = n // 3 if (n // 3) % 2 else n // 3 + 1
                    yield InstanceSpec(kind, k, n, sizes=(a, n - a))
                elif kind == "space_barrier":
                    yield InstanceSpec(kind, k, n, s=(n - 1) // k)
                elif kind in ("mod3", "general_nopm") and k >= 4:
                    yield InstanceSpec(kind, k, n)
                elif kind == "nested" and k >= 5:
                    yield InstanceSpec(kind, k, None)
                elif kind == "complete":
                    yield InstanceSpec(kind, k, n)


def cmd_bench(args, out):
    kinds = [s for s in args.kinds.split(",") if s]
    for kind in kinds:
        if kind not in KINDS:
            raise InvalidArgument(f"unknown kind {kind!r}")
    columns = BENCH_COLUMNS + (["seconds"] if args.timing else [])
    fh = open(args.output, "w", newline="") if args.output else out
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for spec in bench_specs(kinds, args.k, args.n, args.seeds):
            try:
                h = generate(spec)
            except HypermatchError:
                continue
            t0 = time.perf_counter()
            decision = decide_pm(h, args.gamma, args.brute_threshold, parallelism=args.threads)
            elapsed = time.perf_counter() - t0
            cert = decision.certificate
            agrees = ""
            if h.n <= 16:
                agrees = int((brute_force_pm(h) is not None) == decision.has_pm)
            row = [spec.kind, h.k, h.n, spec.seed, len(h.edges), decision.outcome, decision.mode,
                   cert.lattice.d if cert else "", len(cert.far_set) if cert else "", agrees]
            if args.timing:
                row.append(f"{elapsed:.3f}")
            writer.writerow(row)
    finally:
        if fh is not out:
            fh.close()
    return 0


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s %(message)s")
    handlers = {"decide": cmd_solve, "find": cmd_solve, "certify": cmd_solve,
                "verify": cmd_verify, "gen": cmd_gen, "bench": cmd_bench}
    try:
        return handlers[args.command](args, out)
    except (ParseError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except RegimeViolation as exc:
        sys.stderr.write(f"regime violation: {exc} (partial matching of {len(exc.partial)} edges)\n")
        return EXIT_REGIME
    except (InvalidArgument, HypermatchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

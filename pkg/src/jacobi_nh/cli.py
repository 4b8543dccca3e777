"""
Command line front end.

Exit codes: 0 success, 1 usage error, 2 hypothesis violated, 3 exact identity
failed, 4 numeric tolerance exceeded, 5 I/O or parse error.  ``JD_THREADS``
sets the worker count for commands that fan out over independent inputs.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import HypothesisViolated, JacobiError, ParseError, SingularIndex
from .exactcore import HalfIntSymMatrix, multiplicity_mu
from .maassops import OperatorExpr, commutator_check, commutator_table, generating_family
from .randomdata import random_components, random_holomorphic_vs, random_index, random_nh, rng_for
from .scalarproj import nh_assemble, nh_decompose
from .vvsplit import vv_assemble, vv_decompose

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_EXACT = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _workers():
    try:
        return max(1, int(os.environ.get("JD_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    workers = _workers()
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


def _read_index(path):
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict):
        if "two_m" in doc:
            return HalfIntSymMatrix.from_two_m(doc["two_m"])
        doc = doc["m"]
    return HalfIntSymMatrix([[Fraction(str(x)) for x in row] for row in doc])


def _echo_config(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    print("config: " + json.dumps(cfg, sort_keys=True, default=str), flush=True)


def _write(path, data):
    if path is None:
        return
    with open(path, "wb") as fh:
        fh.write(data)
    print(f"wrote {path}")


# -- commands ------------------------------------------------------------------


def cmd_verify_commutators(args):
    h = args.h or 1
    if args.index_file:
        indices = [_read_index(args.index_file)]
    else:
        rng = rng_for(args.seed)
        indices = [random_index(h, rng) for _ in range(args.count)]

    def run(m):
        k = args.k if args.k is not None else 7
        family = generating_family(m.h, m, k, args.max_degree)
        reports = []
        for name, A, B, expected in commutator_table(m.h, m, printed_delta=args.as_printed):
            if args.inject_fault and args.inject_fault in name:
                expected = (expected if isinstance(expected, OperatorExpr) else OperatorExpr.scalar(expected)) + 1
            reports.append(commutator_check(A, B, expected, family, name))
        return m, reports

    failed = 0
    for m, reports in _pmap(run, indices):
        print(f"index m = {m}")
        for rep in reports:
            print(f"  {rep}")
            if not rep.passed:
                failed += 1
                print(f"    first counterexample: {rep.counterexample['input'].pretty()}")
    print(f"{'FAIL' if failed else 'PASS'}: {failed} failing relation(s)")
    return EXIT_EXACT if failed else EXIT_OK


def _load_nh(path):
    from .formsio.serialize import deserialize_nh

    with open(path, "rb") as fh:
        return deserialize_nh(fh.read())


def cmd_decompose(args):
    from .formsio.serialize import serialize_components, serialize_decomposition

    if not args.input:
        raise ParseError("--in is required", "--in")
    f = _load_nh(args.input)
    if f.is_holomorphic() and args.d is None:
        t = vv_decompose(f)
        print(f"decomposition of weight ({f.k}, {f.s}), cogenus {f.h}:")
        for level, part in enumerate(t.parts):
            expected = multiplicity_mu(f.s - level, f.h)
            print(f"  level {level}: weight {f.k + level}, multiplicity {len(part)} (binom = {expected})")
        if vv_assemble(t) != f:
            print("FAIL: reassembly differs from the input")
            return EXIT_EXACT
        _write(args.out, serialize_components(t))
    else:
        dec = nh_decompose(f, args.d)
        print(f"holomorphic projection of depth {dec.d}, weight {dec.k}:")
        for level, count in enumerate(dec.multiplicities()):
            print(f"  degree {level}: weight {dec.k - level}, components {count}")
        _write(args.out, serialize_decomposition(dec))
    return EXIT_OK


def cmd_roundtrip(args):
    h = args.h or 1
    seeds = list(range(args.seed, args.seed + args.count))

    def run(seed):
        rng = rng_for(seed)
        m = _read_index(args.index_file) if args.index_file else random_index(h, rng)
        if args.d is not None:
            k = args.k if args.k is not None else args.d + m.h + 1
            f = random_nh(k, m, args.d, rng)
            dec = nh_decompose(f, args.d, check=False)
            ok = nh_assemble(dec) == f
            dec2 = nh_decompose(nh_assemble(dec), args.d, check=False)
            return seed, ok and dec2 == dec
        s = args.s if args.s is not None else 1
        k = args.k if args.k is not None else s + m.h + 1
        t = random_components(k, s, m, rng)
        phi = random_holomorphic_vs(k, s, m, rng)
        return seed, vv_decompose(vv_assemble(t)) == t and vv_assemble(vv_decompose(phi)) == phi

    bad = [seed for seed, ok in _pmap(run, seeds) if not ok]
    print(f"{'FAIL' if bad else 'PASS'}: {len(seeds) - len(bad)}/{len(seeds)} seeds round-trip exactly")
    if bad:
        print(f"  failing seeds: {bad}")
    return EXIT_EXACT if bad else EXIT_OK


def cmd_theta(args):
    from .formsio.lattice import e8_spec, theta_series
    from .formsio.serialize import serialize

    roots = tuple(int(x) for x in args.roots.split(",")) if args.roots else tuple(range(0, 2 * (args.h or 2), 2))[: args.h or 2]
    phi = theta_series(e8_spec(roots), args.trunc if args.trunc is not None else 10)
    bad = phi.violations()
    print(f"E8 theta series: h = {phi.h}, k = {phi.k}, m = {phi.m}, modes = {len(phi.coeffs.modes())}")
    print(f"support violations: {len(bad)}")
    _write(args.out, serialize(phi))
    return EXIT_EXACT if bad else EXIT_OK


def cmd_slashcheck(args):
    from .formsio.lattice import e8_spec, theta_series
    from .formsio.numeric import delta_covariance_check, slash_check, standard_generators

    if args.input:
        f = _load_nh(args.input)
    else:
        h = args.h or 2
        f = theta_series(e8_spec(tuple(range(0, 2 * h, 2))[:h]), args.trunc if args.trunc is not None else 10).to_nh()
    tol = args.tol if args.tol is not None else 1e-6
    failed = 0
    for name, g in standard_generators(f.h).items():
        rep = slash_check(f, g, tol=tol, name=f"slash {name}")
        print(rep)
        failed += not rep.passed
        if f.s == 0 and f.is_holomorphic():
            rep = delta_covariance_check(f, g, tol=10 * tol, name=f"Delta covariance {name}")
            print(rep)
            failed += not rep.passed
    print(f"{'FAIL' if failed else 'PASS'}: {failed} check(s) above tolerance")
    return EXIT_NUMERIC if failed else EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=int, help="cogenus")
    common.add_argument("--k", type=int, help="weight")
    common.add_argument("--s", type=int, help="symmetric power degree")
    common.add_argument("--d", type=int, help="depth bound")
    common.add_argument("--index-file", help="JSON file with the Jacobi index (two_m or m)")
    common.add_argument("--level", type=int, default=1, help="Fourier level N")
    common.add_argument("--trunc", type=int, help="truncation bound B")
    common.add_argument("--tol", type=float, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--in", dest="input", help="input file")
    common.add_argument("--out", help="output file")

    parser = _Parser(prog="jacobi-nh", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-commutators", parents=[common], help="check the raising/lowering commutators")
    p.add_argument("--count", type=int, default=5, help="number of random indices")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--as-printed", action="store_true", help="use coefficient 1/2 in the [L, Dt_k] relation")
    p.add_argument("--inject-fault", metavar="NAME", help="perturb every relation whose name contains NAME")
    p.set_defaults(func=cmd_verify_commutators)

    p = sub.add_parser("decompose", parents=[common], help="split a form file into holomorphic components")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("roundtrip", parents=[common], help="seeded assemble/decompose round trips")
    p.add_argument("--count", type=int, default=1, help="number of seeds")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("theta", parents=[common], help="E8 theta series data")
    p.add_argument("--roots", help="comma separated simple root indices (0-based)")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("slashcheck", parents=[common], help="numeric slash invariance")
    p.set_defaults(func=cmd_slashcheck)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    _echo_config(args)
    try:
        return args.func(args)
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        for nu, r, c in exc.diagnostic:
            print(f"  non-positive ladder constant at nu={nu}, r={r}: {c}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SingularIndex as exc:
        print(f"singular index: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except JacobiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_EXACT


if __name__ == "__main__":
    sys.exit(main())

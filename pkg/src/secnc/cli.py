"""Command line front end.

Exit codes: 0 success/pass, 1 usage or unreadable input, 2 validation
rejection, 3 run or audit failure, 4 budget refusal.  Every randomized
subcommand prints the seed it used so runs can be replayed exactly.
"""

from __future__ import annotations

import argparse
import secrets
import sys
import time

import numpy as np

from . import fileio
from .audit import reliability_audit, secrecy_audit
from .errors import BudgetExceededError, ParameterError, ValidationError
from . import linalg as la
from .network import (
    iter_exhaustive_realizations,
    noncoherent_decode,
    sample_realization,
    transmit,
    transmit_lifted,
)
from .scheme import build_broken_instance, build_instance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_FAILURE = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    """A file could not be read or parsed; distinct from value rejection."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract reserves 2 for
    # validation rejections, so usage problems must exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_input(fn, *args, what: str):
    try:
        return fn(*args)
    except OSError as e:
        raise UsageError(f"cannot read {what}: {e}") from None
    except ParameterError as e:
        raise UsageError(f"malformed {what}: {e}") from None


def _load_config(args):
    return _read_input(fileio.read_config, args.config, what="config file")


def _resolve_seed(args, config_seed):
    seed = args.seed if args.seed is not None else config_seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed={seed}", file=sys.stderr)
    return seed


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_params(args) -> int:
    params, _ = _load_config(args)
    inst = build_instance(params)
    p = inst.params
    print(f"q={p.q} m={p.m} n={p.n} t={p.t} mu={p.mu} k={p.k}")
    print(f"modulus={fileio.format_digits(inst.F.modulus, p.q)}")
    print(f"outer_code_min_distance={p.min_distance}")
    print(f"rate_packets={p.k} rate_bits={p.rate_bits:g}")
    print("status=ok")
    return EXIT_OK


def cmd_encode(args) -> int:
    params, config_seed = _load_config(args)
    inst = build_instance(params)
    S = _read_input(fileio.read_packets, args.message, inst.F,
                    what="message file")
    if args.force_v is not None:
        V = [inst.F.parse_element(tok) for tok in args.force_v.split(",") if tok]
        X = inst.encode(S, force_v=V)
    else:
        seed = _resolve_seed(args, config_seed)
        X = inst.encode(S, rng=np.random.default_rng(seed))
    _emit(fileio.format_packets(X, inst.F), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    params, _ = _load_config(args)
    inst = build_instance(params)
    F = inst.F
    if args.noncoherent:
        Y = np.array(
            _read_input(fileio.read_matrix, args.payload, params.q,
                        what="payload file"),
            dtype=np.int64,
        )
        out = noncoherent_decode(inst, Y)
    elif args.erasure:
        if not args.transfer:
            raise UsageError("erasure decoding needs --transfer")
        A_prime = _read_input(fileio.read_matrix, args.transfer, params.q,
                              what="transfer file")
        y = _read_input(fileio.read_packets, args.payload, F,
                        what="payload file")
        out = inst.erasure_decode_scheme(la.expand(F, y), A_prime)
    else:
        y = _read_input(fileio.read_packets, args.payload, F,
                        what="payload file")
        if args.transfer:
            A = _read_input(fileio.read_matrix, args.transfer, params.q,
                            what="transfer file")
        else:
            A = np.eye(params.n, dtype=np.int64)
        out = inst.coherent_decode(la.expand(F, y), A)
    if not out.ok:
        print(f"decode failed: {out.reason}", file=sys.stderr)
        return EXIT_FAILURE
    _emit(fileio.format_packets(out.message, F), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    params, config_seed = _load_config(args)
    inst = build_instance(params)
    F = inst.F
    N = args.N if args.N is not None else params.n + params.t
    failures = 0
    cases = 0
    rank_seen = {}
    start = time.monotonic()

    def run(S, X, real):
        nonlocal failures, cases
        cases += 1
        if args.noncoherent:
            res = transmit_lifted(F, X, real)
            out = noncoherent_decode(inst, res.Y)
        else:
            res = transmit(F, X, real)
            out = inst.coherent_decode(res.Y, real.A)
        if out.ok and out.message == tuple(S):
            rank_seen[out.error_rank] = rank_seen.get(out.error_rank, 0) + 1
        else:
            failures += 1

    if args.adversary == "exhaustive":
        gen = iter_exhaustive_realizations(params, lifted=args.noncoherent,
                                           budget=args.budget)
        seed = _resolve_seed(args, config_seed)
        rng = np.random.default_rng(seed)
        S = [int(v) for v in rng.integers(0, F.order, size=params.k)]
        X = inst.encode(S, rng=rng)
        for real in gen:
            run(S, X, real)
    else:
        seed = _resolve_seed(args, config_seed)
        rng = np.random.default_rng(seed)
        if args.trials > args.budget:
            raise BudgetExceededError(args.trials, args.budget,
                                      "simulation trials")
        for _ in range(args.trials):
            S = [int(v) for v in rng.integers(0, F.order, size=params.k)]
            X = inst.encode(S, rng=rng)
            real = sample_realization(params, N, rng, "random",
                                      lifted=args.noncoherent)
            run(S, X, real)

    elapsed = time.monotonic() - start
    ranks = ",".join(f"{r}:{c}" for r, c in sorted(rank_seen.items()))
    report = "\n".join([
        f"simulate adversary={args.adversary} "
        f"noncoherent={str(args.noncoherent).lower()}",
        f"cases={cases} failures={failures}",
        f"error_ranks={ranks}",
        f"elapsed_seconds={elapsed:.3f}",
        f"verdict={'pass' if failures == 0 else 'FAIL'}",
    ]) + "\n"
    _emit(report, args.out)
    return EXIT_OK if failures == 0 else EXIT_FAILURE


def cmd_audit(args) -> int:
    params, config_seed = _load_config(args)
    inst = build_broken_instance(params) if args.break_mrd else build_instance(params)
    rng = None
    if args.mode == "sampled" or (args.kind == "reliability" and args.transfers):
        rng = np.random.default_rng(_resolve_seed(args, config_seed))
    if args.kind == "secrecy":
        rep = secrecy_audit(inst, mode=args.mode, rng=rng,
                            tap_rows=args.tap_rows, lifted=args.lifted,
                            samples=args.samples, budget=args.budget)
    else:
        if args.break_mrd:
            raise ParameterError(
                "a deliberately broken instance has no decoder to audit"
            )
        rep = reliability_audit(inst, mode=args.mode, rng=rng,
                                random_transfers=args.transfers,
                                trials=args.trials, budget=args.budget)
    text = rep.text()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    return EXIT_OK if rep.passed else EXIT_FAILURE


# ----------------------------------------------------------------------
# Parser assembly
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="secnc",
        description="Rank-metric coset coding for secure network coding.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(sp, seeded=True):
        sp.add_argument("--config", required=True,
                        help="JSON scheme parameters (q, m, n, t, mu, k)")
        if seeded:
            sp.add_argument("--seed", type=int, default=None,
                            help="64-bit RNG seed; omitted = entropy, printed")

    sp = sub.add_parser("params", help="validate parameters, print summary")
    common(sp, seeded=False)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("encode", help="encode a message file into a payload")
    common(sp)
    sp.add_argument("--message", required=True, help="k packet lines")
    sp.add_argument("--out", default=None, help="payload path (default stdout)")
    sp.add_argument("--force-v", default=None, metavar="ELEMS",
                    help="UNSAFE comma-separated padding elements; fixing V "
                         "voids the secrecy guarantee, test use only")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="recover the message from observations")
    common(sp, seeded=False)
    sp.add_argument("--payload", required=True,
                    help="packet lines; a 'rows cols' matrix for --noncoherent")
    sp.add_argument("--transfer", default=None,
                    help="transfer matrix file (default identity)")
    sp.add_argument("--erasure", action="store_true",
                    help="treat --transfer as a full-rank (n-2t) x n map")
    sp.add_argument("--noncoherent", action="store_true",
                    help="decode a lifted observation without the transfer")
    sp.add_argument("--out", default=None, help="message path (default stdout)")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("simulate", help="run transmissions against adversaries")
    common(sp)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--N", type=int, default=None,
                    help="received packet count (default n + t)")
    sp.add_argument("--adversary", choices=["random", "exhaustive"],
                    default="random")
    sp.add_argument("--noncoherent", action="store_true",
                    help="lift transmissions and decode without the transfer")
    sp.add_argument("--budget", type=int, default=1 << 22)
    sp.add_argument("--out", default=None, help="report path (default stdout)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("audit", help="exhaustive secrecy/reliability checks")
    common(sp)
    sp.add_argument("kind", choices=["secrecy", "reliability"])
    sp.add_argument("--mode", choices=["exhaustive", "sampled"],
                    default="exhaustive")
    sp.add_argument("--budget", type=int, default=1 << 22)
    sp.add_argument("--tap-rows", type=int, default=None,
                    help="eavesdropper rows (default mu)")
    sp.add_argument("--lifted", action="store_true",
                    help="audit taps on lifted transmissions")
    sp.add_argument("--samples", type=int, default=20,
                    help="tap samples in sampled secrecy mode")
    sp.add_argument("--transfers", type=int, default=20,
                    help="random transfer matrices in the reliability audit")
    sp.add_argument("--trials", type=int, default=1000,
                    help="cases in sampled reliability mode")
    sp.add_argument("--break-mrd", action="store_true",
                    help="UNSAFE negative control: spoil the code so the "
                         "secrecy audit must report leakage")
    sp.add_argument("--report", default=None, help="also write the report here")
    sp.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"secnc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"secnc: refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationError as e:
        print(f"secnc: rejected ({e.reason}): {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ParameterError as e:
        print(f"secnc: rejected: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"secnc: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

"""Command line entry point: ``zetadist <subcommand> ...``.

Exit status 0 when every check passes, 1 when a verification fails, 2 for
usage errors (bad flags, malformed input, violated preconditions).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..iwasawa import (Branch, PrecisionInsufficient, char_ideal_from_presentation, evaluate,
                       invariants_of_branch, mellin, parse_matrix)
from ..lfunc import DirichletChar, PoleAtOne, euler_strip, l_value
from ..padic import PadicInt
from ..zeta_tower import build_distribution, embed_padic, equivariant_l, regularize
from .config import ConfigError, VerificationConfig, load_config, parse_int_list
from .report import Report, fmt_value
from .suites import base_weight, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--emit", choices=("json", "text"), default="text")
    p.add_argument("--config", metavar="PATH", help="key = value file mirroring the flags")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zetadist", description="Equivariant L-values and Iwasawa invariants.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lvalue", help="exact L(chi, 1-k)")
    s.add_argument("--chi", default="chi:1:1:0:1")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--S", type=parse_int_list, default=(), help="strip Euler factors at these primes")
    s.add_argument("--cross-check", action="store_true",
                   help="admit the trivial character at k = 1 (zeta(0))")
    _common(s)

    s = sub.add_parser("equivariant", help="equivariant L-element in Q[G_n]")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--chi", default="chi:1:1:0:1")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--S", type=parse_int_list, default=())
    _common(s)

    s = sub.add_parser("padic-l", help="f/g of a branch series evaluated at weight k")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--k0", type=int, default=None, help="weight of the measure (default: chosen per k)")
    s.add_argument("--chi", default="chi:1:1:0:1")
    s.add_argument("--n-max", type=int, default=2)
    s.add_argument("--N", type=int, default=8)
    s.add_argument("--S", type=parse_int_list, default=())
    _common(s)

    s = sub.add_parser("invariants", help="(mu, lambda) of one branch")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--branch", type=int, required=True)
    s.add_argument("--chi", default="chi:1:1:0:1")
    s.add_argument("--k0", type=int, default=None)
    s.add_argument("--n-max", type=int, default=1)
    s.add_argument("--N", type=int, default=8)
    _common(s)

    s = sub.add_parser("charideal", help="characteristic ideal of a presentation matrix file")
    s.add_argument("matrix", help="plain-text matrix file")
    _common(s)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", choices=("interpolation", "compatibility", "irregular"))
    s.add_argument("--p", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--N", type=int)
    s.add_argument("--m-cap", type=int)
    s.add_argument("--chi")
    s.add_argument("--k", type=parse_int_list, help="k-range, e.g. 2,6,10 or 2-20")
    s.add_argument("--S", type=parse_int_list)
    s.add_argument("--c", type=int)
    s.add_argument("--k0", type=int)
    s.add_argument("--no-negative-control", action="store_true")
    _common(s)
    return ap


def _emit(args, payload: dict, text: str):
    if args.emit == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _config_defaults(args) -> dict:
    return load_config(args.config) if getattr(args, "config", None) else {}


def _cmd_lvalue(args) -> int:
    chi = DirichletChar.parse(args.chi)
    try:
        v = l_value(chi, args.k, cross_check=args.cross_check)
    except PoleAtOne as exc:
        raise UsageError(f"{exc}; pass --cross-check for zeta(0)") from None
    if args.S:
        v = euler_strip(v, args.S)
    out = fmt_value(v.value)
    _emit(args, {"chi": chi.serialize(), "k": args.k, "s": 1 - args.k, "S": sorted(v.S),
                 "value": out, "precision": "exact"}, out)
    return 0


def _cmd_equivariant(args) -> int:
    S = args.S or (args.p,)
    e = equivariant_l(args.p, args.n, DirichletChar.parse(args.chi), args.k, S)
    entries = [[i, j, fmt_value(c)] for (i, j), c in e.element.items()]
    text = "\n".join(f"delta^{i} gamma^{j}: {c}" for i, j, c in entries)
    _emit(args, {"p": args.p, "n": args.n, "k": args.k, "S": sorted(S), "chi": args.chi,
                 "entries": entries, "precision": "exact"}, text)
    return 0


def _cmd_padic_l(args) -> int:
    p, k = args.p, args.k
    chi = DirichletChar.parse(args.chi)
    S = frozenset(args.S or (p,))
    if k % (p - 1) == 0:
        raise UsageError(f"k = {k} is divisible by p - 1: the regularizer vanishes there")
    k0 = base_weight(p, k, chi.parity, args.k0)
    i = (k - k0) % (p - 1)
    pair = regularize(build_distribution(p, args.n_max, chi, k0, S), None, args.N)
    F, G = mellin(pair, Branch(p, i))
    t = PadicInt(pow(1 + p, k - k0, p**args.N) - 1, p, args.N)
    lhs = evaluate(F, t) / evaluate(G, t)
    exact = euler_strip(l_value(chi, k), S).value
    rhs = embed_padic(exact.to_rational() if exact.is_rational() else exact, p, lhs.prec)
    ok = lhs.congruent(rhs)
    text = (f"L_p at k={k} (measure weight {k0}, branch {i}): {fmt_value(lhs)}\n"
            f"stripped L(chi, 1-k) = {fmt_value(exact)} = {fmt_value(rhs)}\n"
            f"{'agree' if ok else 'DISAGREE'} to {lhs.prec} digits")
    _emit(args, {"p": p, "k": k, "k0": k0, "branch": i, "lhs": fmt_value(lhs),
                 "rhs": fmt_value(rhs), "exact": fmt_value(exact), "precision": lhs.prec,
                 "pass": ok}, text)
    return 0 if ok else 1


def _cmd_invariants(args) -> int:
    inv = invariants_of_branch(args.p, args.branch, DirichletChar.parse(args.chi), args.k0,
                               args.n_max, args.N)
    payload = {"p": args.p, "branch": args.branch, "k0": inv.k0, "mu": inv.mu, "lambda": inv.lam,
               "pole": inv.pole, "precision": inv.f.N_cert}
    text = f"p={args.p} branch {args.branch} (k0={inv.k0}): mu={inv.mu} lambda={inv.lam}"
    if inv.pole:
        text += f" (f/g with pole; f alone: mu={inv.f.mu} lambda={inv.f.lam})"
    _emit(args, payload, text)
    return 0


def _cmd_charideal(args) -> int:
    path = Path(args.matrix)
    A = parse_matrix(path.read_text(), base_dir=path.parent)
    cls = char_ideal_from_presentation(A, provenance=str(path))
    poly = " + ".join(f"{c}*T^{j}" for j, c in enumerate(cls.distinguished))
    _emit(args, {"mu": cls.mu, "lambda": cls.lam, "distinguished": list(cls.distinguished),
                 "precision": cls.N_cert, "p": cls.p},
          f"mu={cls.mu} lambda={cls.lam} distinguished={poly} (mod {cls.p}^{cls.N_cert})")
    return 0


def _cmd_verify(args) -> int:
    values = _config_defaults(args)
    flags = {"suite": args.suite, "p": args.p, "n_max": args.n_max, "N": args.N,
             "M_cap": args.m_cap, "chi": args.chi, "k_range": args.k, "S": args.S, "c": args.c,
             "k0": args.k0}
    values.update({k: v for k, v in flags.items() if v is not None})
    if args.no_negative_control:
        values["negative_control"] = False
    if "suite" not in values:
        raise UsageError("verify needs --suite (or suite = ... in the config file)")
    cfg = VerificationConfig(**values)
    try:
        cfg.validate()
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    rep: Report = run_suite(cfg)
    if args.emit == "json":
        print(rep.to_json())
    else:
        print(rep.to_text())
    return rep.exit_status


_COMMANDS = {"lvalue": _cmd_lvalue, "equivariant": _cmd_equivariant, "padic-l": _cmd_padic_l,
             "invariants": _cmd_invariants, "charideal": _cmd_charideal, "verify": _cmd_verify}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.command != "verify" and getattr(args, "config", None):
            # subcommands other than verify read the config as flag defaults
            for key, value in load_config(args.config).items():
                dest = {"k_range": "k", "n_max": "n_max"}.get(key, key)
                if hasattr(args, dest) and value is not None:
                    setattr(args, dest, value[0] if dest == "k" and isinstance(value, tuple) else value)
        return _COMMANDS[args.command](args)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"zetadist: error: {exc}", file=sys.stderr)
        return 2
    except PrecisionInsufficient as exc:
        print(f"zetadist: precision insufficient: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"zetadist: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

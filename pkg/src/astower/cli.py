"""Command-line front end: tables and verifiers for the tower over GF(2^s).

Exit codes: 0 all checks passed, 1 a check failed, 2 bad configuration,
3 aborted for lack of series precision or constant-field room.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import census
from .engine import ConstantFieldOverflow
from .gf import MAX_DEGREE, FieldCtx, FieldError
from .series import PrecisionExhausted
from .symbolic import IDENTITIES, verify_identity, verify_identity_numeric

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_ABORT = 0, 1, 2, 3
PRECISION_ENV = "ASTOWER_PRECISION"
# the unpruned geometric run doubles the constant field at each inert step
GEOMETRIC_LOCUS_DEPTH = 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    s: int
    depth: int = 10
    precision: int = 64
    modulus_override: int | None = None
    output: str = "tsv"
    seed: int = 0

    def validate(self) -> "RunConfig":
        if not 1 <= self.s <= MAX_DEGREE:
            raise ConfigError(f"--s must be in 1..{MAX_DEGREE}, got {self.s}")
        if self.depth < 0:
            raise ConfigError(f"--depth must be >= 0, got {self.depth}")
        if self.precision < 16:
            raise ConfigError(f"--precision must be >= 16, got {self.precision}")
        if self.output not in ("tsv", "json"):
            raise ConfigError(f"--output must be tsv or json, got {self.output}")
        return self

    def field(self) -> FieldCtx:
        try:
            return FieldCtx(self.s, self.modulus_override)
        except FieldError as exc:
            raise ConfigError(str(exc)) from exc


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return 64
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{PRECISION_ENV}={raw!r} is not an integer") from None


def _modulus(text: str) -> int:
    return int(text, 0)


def _emit(cfg: RunConfig, doc: dict, lines: list[str]) -> None:
    if cfg.output == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# -- subcommands ---------------------------------------------------------------------------


def cmd_s_set(cfg: RunConfig) -> int:
    ctx = cfg.field()
    S = census.compute_s_set(ctx)
    members = list(S.members)
    _emit(cfg, {"s": cfg.s, "modulus": ctx.modulus, "size": len(S), "members": members},
          [f"S={{{','.join(str(b) for b in members)}}}", f"|S|={len(S)}"])
    return EXIT_OK


def _report_out(cfg, rep) -> int:
    sys.stdout.write(rep.to_json() if cfg.output == "json" else rep.to_tsv())
    return EXIT_OK if all(rep.verdicts.values()) else EXIT_FAIL


def cmd_census(cfg: RunConfig) -> int:
    ctx = cfg.field()
    return _report_out(cfg, census.limit_report(ctx, cfg.depth, cfg.precision))


def cmd_genus(cfg: RunConfig) -> int:
    ctx = cfg.field()
    return _report_out(cfg, census.genus_table(ctx, cfg.depth, cfg.precision))


def _verdict_out(cfg, name, verdict, extra=None) -> int:
    details = dict(verdict.details)
    if extra:
        details.update(extra)
    status = "PASS" if verdict.ok else "FAIL"
    lines = [f"{name}\t{status}"] + [f"# {k}\t{v}" for k, v in details.items()]
    _emit(cfg, {"s": cfg.s, "check": name, "pass": verdict.ok,
                "details": json.loads(json.dumps(details, default=str))}, lines)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig, which: str) -> int:
    ctx = cfg.field()
    if which == "odd":
        if cfg.s % 2 == 0:
            raise ConfigError("--which odd needs an odd --s")
        v = census.verify_theorem_4_2(ctx, cfg.depth, cfg.precision)
        return _verdict_out(cfg, "odd-count", v)
    if which == "even":
        if cfg.s % 2:
            raise ConfigError("--which even needs an even --s")
        run = census.rational_run(ctx, cfg.depth, cfg.precision)
        v = census.verify_even_splitting(ctx, cfg.depth, cfg.precision, run=run)
        rep = census.rational_census(ctx, cfg.depth, cfg.precision, run=run)
        gr = census.genus_run(ctx.s, cfg.depth, ctx.modulus, cfg.precision)
        for row, g in zip(rep.levels, gr.genus):
            row.g = g
        lams = [r.lambda_ for r in rep.levels[2:] if r.lambda_ is not None]
        lam_ok = all(x * 8 >= 1 for x in lams)
        v = census.Verdict(v.ok and lam_ok,
                           {**v.details, "lambda_ok": lam_ok,
                            "lambda_min": str(min(lams)) if lams else None})
        return _verdict_out(cfg, "even-splitting", v)
    if which == "locus":
        runs = [census.rational_run(ctx, cfg.depth, cfg.precision),
                census.genus_run(ctx.s, min(cfg.depth, GEOMETRIC_LOCUS_DEPTH), ctx.modulus,
                                 cfg.precision, prune=False).run]
        return _verdict_out(cfg, "ramification-locus", census.verify_locus(runs))
    if which == "weakram":
        runs = [census.rational_run(ctx, cfg.depth, cfg.precision),
                census.genus_run(ctx.s, cfg.depth, ctx.modulus, cfg.precision).run]
        return _verdict_out(cfg, "weak-ramification", census.verify_weak_ramification(runs))
    raise ConfigError(f"unknown check {which!r}")


def cmd_identities(cfg: RunConfig) -> int:
    num_ctx = FieldCtx(10)
    rows = []
    for name in IDENTITIES:
        exact = verify_identity(name)
        mutant = verify_identity(name, mutate=True)
        numeric = verify_identity_numeric(name, num_ctx, seed=cfg.seed)
        rows.append({"name": name, "exact": exact, "mutation_rejected": not mutant,
                     "numeric": numeric, "pass": exact and not mutant and numeric})
    passed = sum(r["pass"] for r in rows)
    lines = ["name\texact\tmutation_rejected\tnumeric\tverdict"]
    lines += [f"{r['name']}\t{r['exact']}\t{r['mutation_rejected']}\t{r['numeric']}\t"
              f"{'PASS' if r['pass'] else 'FAIL'}" for r in rows]
    lines.append(f"{passed}/{len(rows)} PASS")
    _emit(cfg, {"identities": rows, "passed": passed, "total": len(rows)}, lines)
    return EXIT_OK if passed == len(rows) else EXIT_FAIL


def cmd_oracle(cfg: RunConfig) -> int:
    ctx = cfg.field()
    oracle = census.oracle_chain_count(ctx, cfg.depth)
    engine = census.engine_chain_count(ctx, census.rational_run(ctx, cfg.depth, cfg.precision))
    ok = oracle == engine
    lines = ["i\toracle\tengine"] + [f"{i}\t{a}\t{b}" for i, (a, b) in enumerate(zip(oracle, engine))]
    lines.append(f"# oracle\t{'PASS' if ok else 'FAIL'}")
    _emit(cfg, {"s": cfg.s, "oracle": oracle, "engine": engine, "pass": ok}, lines)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int, default=None, help="extension degree of the constant field")
    common.add_argument("--depth", type=int, default=10, help="number of tower levels (default 10)")
    common.add_argument("--precision", type=int, default=None,
                        help=f"series window (default 64, or ${PRECISION_ENV})")
    common.add_argument("--modulus", type=_modulus, default=None,
                        help="irreducible modulus as an integer bitmask, e.g. 0x19")
    common.add_argument("--output", choices=["tsv", "json"], default="tsv")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(
        prog="astower",
        description="Places, point counts and genus in the tower y^2 + y = x/(x^2+x+1) over GF(2^s).")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("s-set", parents=[common], help="list beta with Tr(f(beta)) = 0")
    sub.add_parser("census", parents=[common], help="N_i, g_i and their ratios per level")
    sub.add_parser("genus", parents=[common], help="genus per level")
    v = sub.add_parser("verify", parents=[common], help="run one verifier")
    v.add_argument("--which", choices=["odd", "even", "locus", "weakram"], required=True)
    sub.add_parser("identities", parents=[common], help="check the symbolic identity catalog")
    sub.add_parser("oracle", parents=[common], help="brute-force chain count vs the engine")
    return parser


def _config(args) -> RunConfig:
    s = args.s
    if s is None:
        if args.command == "identities":
            s = 2
        else:
            raise ConfigError("--s is required")
    precision = args.precision if args.precision is not None else _default_precision()
    return RunConfig(s, args.depth, precision, args.modulus, args.output, args.seed).validate()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        if args.command == "s-set":
            return cmd_s_set(cfg)
        if args.command == "census":
            return cmd_census(cfg)
        if args.command == "genus":
            return cmd_genus(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.which)
        if args.command == "identities":
            return cmd_identities(cfg)
        if args.command == "oracle":
            return cmd_oracle(cfg)
    except ConfigError as exc:
        print(f"astower: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PrecisionExhausted, ConstantFieldOverflow) as exc:
        print(f"astower: aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_CONFIG  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())

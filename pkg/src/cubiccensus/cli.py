"""Command-line entry point.

    cubiccensus census   --q 2 [--mode exhaustive|sieve-then-count|crosscheck] ...
    cubiccensus sample   --q 7 --n 100000 --seed 42
    cubiccensus predict  --q 2,3,4,5
    cubiccensus spectral [--dump pages.json]
    cubiccensus smooth   --q 2 --form fermat [--oracle pointsearch|sieve|resultant]
    cubiccensus lines    --q 2 --form fermat

Exit codes: 0 success, 1 an identity or comparison failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import census as census_mod
from . import lefschetz, spectral
from .cubic import parse_form
from .gf import FieldError, field_of_order
from .smoothness import (
    MEMORY_ENV,
    ResourceBudgetError,
    is_smooth_pointsearch,
    macaulay_resultant_test,
    sieve_singular,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    q: tuple[int, ...] = ()
    mode: str = "exhaustive"
    oracle: str = "sieve"
    workers: int = 1
    memory_budget: int | None = None
    out: str | None = None
    checkpoint: str | None = None
    resume: bool = False
    seed: int = 0
    n: int = 0
    form: str | None = None
    allow_long: bool = False
    chunk_size: int | None = None
    dump: str | None = None

    @property
    def single_q(self) -> int:
        if len(self.q) != 1:
            raise UsageError(f"{self.subcommand} takes exactly one q")
        return self.q[0]


def _q_list(text: str) -> tuple[int, ...]:
    try:
        qs = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q list {text!r}") from None
    if not qs:
        raise argparse.ArgumentTypeError("empty q list")
    return qs


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubiccensus", description="Exact censuses of lines on cubic surfaces over finite fields.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("census", help="enumerate P^19(F_q) and count lines on smooth surfaces")
    c.add_argument("--q", type=_q_list, required=True)
    c.add_argument("--mode", choices=census_mod.MODES, default="exhaustive")
    c.add_argument("--oracle", choices=census_mod.ORACLES, default="sieve")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--chunk-size", type=int, default=None)
    c.add_argument("--checkpoint", help="write a checkpoint to this path (must not exist)")
    c.add_argument("--resume", metavar="PATH", help="continue from an existing checkpoint")
    c.add_argument("--allow-long", action="store_true", help="permit runs over 10^8 classes (q >= 3)")
    c.add_argument("--memory-budget", type=int, default=None, help=f"bytes; overrides ${MEMORY_ENV}")
    c.add_argument("--out", default=None, help="directory for the JSON report and CSV histogram")

    s = sub.add_parser("sample", help="estimate by uniform sampling of classes")
    s.add_argument("--q", type=_q_list, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--oracle", choices=census_mod.ORACLES, default="pointsearch")
    s.add_argument("--memory-budget", type=int, default=None)
    s.add_argument("--out", default=None)

    p = sub.add_parser("predict", help="exact predicted counts")
    p.add_argument("--q", type=_q_list, required=True)
    p.add_argument("--json", action="store_true")

    sp = sub.add_parser("spectral", help="spectral sequence pages and Betti numbers of X_l")
    sp.add_argument("--dump", default=None, help="write both pages as JSON")

    sm = sub.add_parser("smooth", help="decide smoothness of one form")
    sm.add_argument("--q", type=_q_list, required=True)
    sm.add_argument("--form", required=True)
    sm.add_argument("--oracle", choices=("pointsearch", "sieve", "resultant"), default="pointsearch")
    sm.add_argument("--memory-budget", type=int, default=None)

    ln = sub.add_parser("lines", help="list the F_q-lines on a smooth surface")
    ln.add_argument("--q", type=_q_list, required=True)
    ln.add_argument("--form", required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = {k: v for k, v in vars(ns).items() if v is not None}
    sc = d.pop("subcommand")
    checkpoint = d.pop("checkpoint", None)
    resume = d.pop("resume", None)
    if checkpoint and resume:
        raise UsageError("--checkpoint and --resume are mutually exclusive")
    if d.get("workers", 1) < 1:
        raise UsageError("--workers must be at least 1")
    if sc == "sample" and d.get("n", 0) < 1:
        raise UsageError("--n must be at least 1")
    if d.get("memory_budget") is not None and d["memory_budget"] < 1:
        raise UsageError("--memory-budget must be positive")
    d.pop("json", None)
    return RunConfig(
        subcommand=sc,
        checkpoint=resume or checkpoint,
        resume=bool(resume),
        **d,
    )


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as e:
        raise UsageError(str(e)) from None


def _diff(expected: dict, observed: dict) -> str:
    lines = ["expected vs observed:"]
    for k in expected:
        mark = "" if expected[k] == observed.get(k) else "   <-- differs"
        lines.append(f"  {k}: {expected[k]} vs {observed.get(k)}{mark}")
    return "\n".join(lines)


def cmd_census(cfg: RunConfig) -> int:
    field = _field(cfg.single_q)
    rep = census_mod.run_census(
        field,
        mode=cfg.mode,
        workers=cfg.workers,
        oracle=cfg.oracle,
        chunk_size=cfg.chunk_size,
        checkpoint=cfg.checkpoint,
        resume=cfg.resume,
        allow_long=cfg.allow_long,
        budget=cfg.memory_budget,
    )
    print(rep.summary())
    if cfg.out:
        path, csv_path = rep.write(cfg.out)
        print(f"report: {path}")
        if csv_path:
            print(f"histogram: {csv_path}")
    ids = rep.identities()
    cmp = rep.comparison()
    ok = all(ids.values()) and cmp["smooth_matches"] and cmp["incident_pairs_match"]
    if not ok:
        pred = lefschetz.predicted_counts(field.q)
        expected = {
            "smooth_surfaces": pred.smooth_surfaces,
            "incident_pairs": pred.incident_pairs,
            **{k: True for k in ids},
        }
        observed = {"smooth_surfaces": rep.smooth, "incident_pairs": rep.incident_pairs, **ids}
        print(_diff(expected, observed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    field = _field(cfg.single_q)
    bitmap = sieve_singular(field, budget=cfg.memory_budget) if cfg.oracle == "sieve" else None
    rep = census_mod.sample_census(field, cfg.n, cfg.seed, oracle=cfg.oracle, bitmap=bitmap)
    print(rep.summary())
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, f"sample_q{field.q}_n{cfg.n}_seed{cfg.seed}_{rep.checksum[:16]}.json")
        with open(path, "x") as fh:
            fh.write(rep.to_json())
        print(f"report: {path}")
    return EXIT_OK


def cmd_predict(cfg: RunConfig, as_json: bool) -> int:
    sets = []
    for q in cfg.q:
        try:
            sets.append(lefschetz.predicted_counts(q))
        except ValueError as e:
            raise UsageError(str(e)) from None
    if as_json:
        print(json.dumps([s.as_dict() for s in sets], indent=2))
    else:
        for s in sets:
            print(f"q = {s.q}")
            for k, v in s.as_dict().items():
                if k not in ("q", "identities"):
                    print(f"  {k}: {v}")
            avg = s.average_lines()
            print(f"  average_lines: {avg.numerator}/{avg.denominator}")
            for k, v in s.identities().items():
                print(f"  identity {k}: {'ok' if v else 'FAILED'}")
    return EXIT_OK if all(s.ok() for s in sets) else EXIT_FAIL


def cmd_spectral(cfg: RunConfig) -> int:
    strata = spectral.builtin_strata()
    E1 = spectral.assemble_E1(strata)
    e1 = spectral.assemble_e1(strata)
    print(E1.render())
    print()
    print(e1.render())
    print()
    stein = spectral.stein_vanishing_check(E1)
    poly = spectral.betti_of_Xl(E1)
    ids = lefschetz.poincare_identities(poly)
    print(f"Poincare polynomial of X_l: {poly}")
    print("Betti numbers: " + " ".join(str(c) for c in poly.coeffs))
    print(f"quotient by (1+t): {ids['m_line']}")
    checks = {
        "top_column_empty": spectral.top_column_empty(E1),
        "stein_vanishing": stein.ok,
        "equals_(1+t)^2(1+t^3)^2": ids["x_line_equals_gl2xgl2"],
        "divisible_by_(1+t)": ids["divisible_by_1_plus_t"],
    }
    for k, v in checks.items():
        print(f"check {k}: {'pass' if v else 'FAIL'}")
    if cfg.dump:
        with open(cfg.dump, "w") as fh:
            json.dump({"E1": E1.as_dict(), "e1": e1.as_dict(), "betti": list(poly.coeffs)}, fh, indent=2)
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_smooth(cfg: RunConfig) -> int:
    field = _field(cfg.single_q)
    F = _parse(field, cfg.form)
    print(f"form: {F}")
    if cfg.oracle == "pointsearch":
        rep = is_smooth_pointsearch(F)
    elif cfg.oracle == "resultant":
        if field.p == 3:
            raise UsageError("the resultant oracle is not defined in characteristic 3")
        rep = macaulay_resultant_test(F)
    else:
        if field.k != 1:
            raise UsageError("the sieve oracle needs a prime field")
        rep = sieve_singular(field, budget=cfg.memory_budget).report(F)
    print(rep.describe())
    return EXIT_OK


def cmd_lines(cfg: RunConfig) -> int:
    field = _field(cfg.single_q)
    F = _parse(field, cfg.form)
    try:
        n, lines = census_mod.count_lines_on(F)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    print(f"form: {F}")
    print(f"lines: {n}")
    for ln in lines:
        print(f"  {ln}  plucker {ln.plucker()}")
    return EXIT_OK


def _parse(field, text):
    try:
        return parse_form(field, text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        cfg = config_from_args(ns)
        if cfg.subcommand == "census":
            return cmd_census(cfg)
        if cfg.subcommand == "sample":
            return cmd_sample(cfg)
        if cfg.subcommand == "predict":
            return cmd_predict(cfg, getattr(ns, "json", False))
        if cfg.subcommand == "spectral":
            return cmd_spectral(cfg)
        if cfg.subcommand == "smooth":
            return cmd_smooth(cfg)
        return cmd_lines(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceBudgetError, census_mod.CheckpointError, census_mod.Interrupted) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

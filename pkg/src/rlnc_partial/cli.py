"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 simulation outside
tolerance, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import simulator
from .channel import erasure_curve, p_erasure_atleast, parse_eps
from .errors import RLNCError, TooLarge
from .gf import MAX_ORDER, field_new, prime_power
from .partial import NON_SYSTEMATIC, SYSTEMATIC, p_ns_atleast, p_sys_atleast
from .qcombin import exact_str, to_decimal_str
from .rankstats import rank_pmf
from .svg import line_chart
from .verification import check_ns, check_sys, default_sweep

EXIT_OK, EXIT_CONFIG, EXIT_TOLERANCE, EXIT_MISMATCH = 0, 2, 3, 4

FIG1 = dict(q=2, k=20, n_T=30, xs=(1, 5, 10, 20), ns=range(1, 31))
FIG2_PANELS = [
    # (k, q, x-list); n_T runs from min(x) to 3k
    (20, 2, (2, 4, 10, 16, 20)),
    (30, 2, (3, 6, 15, 24, 30)),
    (30, 8, (3, 6, 15, 24, 30)),
]
FIG2_EPS = Fraction(1, 5)


class ConfigError(Exception):
    pass


# -- argument parsing -----------------------------------------------------
def int_list(text: str) -> list[int]:
    """``"2,4,10"`` or ``"20:60"`` (inclusive) or a mix like ``"1,3:5"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part:
                a, b = part.split(":")
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def field_order(text: str) -> int:
    try:
        q = int(text)
        prime_power(q)
    except (ValueError, RLNCError):
        raise argparse.ArgumentTypeError(f"{text} is not a prime power")
    if q > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"q={q} exceeds {MAX_ORDER}")
    return q


def eps_value(text: str) -> Fraction:
    try:
        return parse_eps(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad erasure probability {text!r}")


def _common(p: argparse.ArgumentParser, *, formats=False) -> None:
    p.add_argument("--out", type=Path, help="output CSV path (default: stdout)")
    p.add_argument("--precision", type=int, default=12, help="significant digits of float columns")
    if formats:
        p.add_argument("--format", choices=("csv", "svg", "both"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rlnc-partial",
        description="Exact and simulated probabilities of partially decoding RLNC packets.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank-dist", help="rank distribution of a random n x k matrix")
    p.add_argument("--q", type=field_order, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("partial", help="P(|X| >= x) after n received packets")
    p.add_argument("--mode", choices=(NON_SYSTEMATIC, SYSTEMATIC), default=NON_SYSTEMATIC)
    p.add_argument("--q", type=field_order, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int_list, required=True)
    p.add_argument("--nt", type=int, help="transmitted packets (systematic)")
    p.add_argument("--x", type=int_list, help="thresholds (default 0..k)")
    _common(p)

    p = sub.add_parser("erasure-curve", help="P(|X| >= x) over an erasure channel, per n_T")
    p.add_argument("--mode", choices=(NON_SYSTEMATIC, SYSTEMATIC), default=NON_SYSTEMATIC)
    p.add_argument("--q", type=field_order, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=eps_value, required=True)
    p.add_argument("--x", type=int_list, required=True)
    p.add_argument("--nt", type=int_list, required=True)
    _common(p, formats=True)

    p = sub.add_parser("simulate", help="Monte Carlo estimate against the exact value")
    p.add_argument("--mode", choices=(NON_SYSTEMATIC, SYSTEMATIC), default=NON_SYSTEMATIC)
    p.add_argument("--q", type=field_order, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="received packets (omit with --eps)")
    p.add_argument("--nt", type=int)
    p.add_argument("--eps", type=eps_value, help="simulate the erasure channel instead of fixed n")
    p.add_argument("--x", type=int_list, help="thresholds (default 0..k)")
    p.add_argument("--trials", type=int, default=60000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--modulus", help="comma-separated modulus coefficients, low degree first")
    _common(p)

    p = sub.add_parser("verify", help="exhaustive oracle vs exact formulas")
    p.add_argument("--mode", choices=(NON_SYSTEMATIC, SYSTEMATIC), default=NON_SYSTEMATIC)
    p.add_argument("--q", type=field_order)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--nt", type=int)

    p = sub.add_parser("figure", help="reproduce a figure preset")
    p.add_argument("preset", choices=("fig1", "fig2"))
    p.add_argument("--trials", type=int, default=60000)
    p.add_argument("--seed", type=int, default=1)
    _common(p, formats=True)
    return ap


# -- output helpers -------------------------------------------------------
def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_bytes(text.encode("utf-8"))


def _svg_path(out: Path, suffix: str = "") -> Path:
    return out.with_name(out.stem + suffix + ".svg")


def _flt(v, precision: int) -> str:
    if isinstance(v, Fraction):
        return to_decimal_str(v, precision)
    return f"{v:.{precision}g}"


def _check_k(k: int) -> None:
    if k < 1:
        raise ConfigError("--k must be >= 1")


def _check_xs(xs, k: int) -> None:
    bad = [x for x in xs if not 0 <= x <= k]
    if bad:
        raise ConfigError(f"x values {bad} outside 0..{k}")


# -- subcommands ----------------------------------------------------------
def cmd_rank_dist(a) -> int:
    _check_k(a.k)
    if a.n < 0:
        raise ConfigError("--n must be >= 0")
    pmf = rank_pmf(a.q, a.k, a.n)
    rows = [[a.q, a.k, a.n, r, exact_str(p), _flt(p, a.precision)] for r, p in sorted(pmf.probs.items())]
    _emit(_csv_text(["q", "k", "n", "r", "prob_exact", "prob_float"], rows), a.out)
    return EXIT_OK


def cmd_partial(a) -> int:
    _check_k(a.k)
    xs = a.x if a.x is not None else list(range(a.k + 1))
    _check_xs(xs, a.k)
    if any(n < 0 for n in a.n):
        raise ConfigError("--n must be >= 0")
    if a.mode == SYSTEMATIC:
        if a.nt is None or a.nt < 1:
            raise ConfigError("systematic mode needs --nt >= 1")
        if max(a.n) > a.nt:
            raise ConfigError("--n cannot exceed --nt")
    rows = []
    for n in a.n:
        for x in xs:
            if a.mode == NON_SYSTEMATIC:
                p = p_ns_atleast(a.q, a.k, n, x)
            else:
                p = p_sys_atleast(a.q, a.k, a.nt, n, x)
            nt = "" if a.mode == NON_SYSTEMATIC else a.nt
            rows.append([a.mode, a.q, a.k, nt, n, x, exact_str(p), _flt(p, a.precision)])
    header = ["mode", "q", "k", "n_T", "n", "x", "prob_exact", "prob_float"]
    _emit(_csv_text(header, rows), a.out)
    return EXIT_OK


def _needs_out(a) -> None:
    if a.format in ("svg", "both") and a.out is None:
        raise ConfigError("--format svg/both needs --out")


def cmd_erasure_curve(a) -> int:
    _check_k(a.k)
    _check_xs(a.x, a.k)
    _needs_out(a)
    if min(a.nt) < 1:
        raise ConfigError("--nt values must be >= 1")
    grid = erasure_curve(a.q, a.k, a.eps, a.mode, a.x, a.nt)
    eps = exact_str(a.eps)
    rows = [[a.mode, a.q, a.k, eps, nt, x, exact_str(p), _flt(p, a.precision)] for nt, x, p in grid]
    header = ["mode", "q", "k", "eps", "n_T", "x", "prob_exact", "prob_float"]
    if a.format in ("csv", "both"):
        _emit(_csv_text(header, rows), a.out)
    if a.format in ("svg", "both"):
        series = {f"x={x}": [(nt, float(p)) for nt, xx, p in grid if xx == x] for x in a.x}
        title = f"{a.mode} q={a.q} k={a.k} eps={eps}"
        _svg_path(a.out).write_text(line_chart(series, xlabel="n_T", ylabel="P(|X| >= x)", title=title))
    return EXIT_OK


SIM_HEADER = ["mode", "q", "k", "n_T", "n", "eps", "x", "trials", "seed",
              "empirical", "analytic", "gap", "se", "status"]


def cmd_simulate(a) -> int:
    _check_k(a.k)
    xs = a.x if a.x is not None else list(range(a.k + 1))
    _check_xs(xs, a.k)
    if a.trials < 1:
        raise ConfigError("--trials must be >= 1")
    modulus = None
    if a.modulus:
        try:
            modulus = [int(c) for c in a.modulus.split(",")]
            field_new(*prime_power(a.q), modulus)
        except ValueError as exc:
            raise ConfigError(f"bad --modulus {a.modulus!r}: {exc}")
    if a.eps is not None:
        nt = a.nt
        if nt is None or nt < 0:
            raise ConfigError("erasure simulation needs --nt")
        rep = simulator.simulate_erasure(a.q, a.k, nt, a.eps, a.mode, a.trials, a.seed, modulus=modulus)
        exact = {x: p_erasure_atleast(a.q, a.k, nt, a.eps, x, a.mode) for x in xs}
    else:
        if a.n is None or a.n < 0:
            raise ConfigError("--n is required (or --eps for the erasure channel)")
        if a.mode == SYSTEMATIC:
            if a.nt is None or a.nt < 1:
                raise ConfigError("systematic mode needs --nt")
            if a.n > a.nt:
                raise ConfigError("--n cannot exceed --nt")
            rep = simulator.simulate_sys(a.q, a.k, a.nt, a.n, a.trials, a.seed, modulus=modulus)
            exact = {x: p_sys_atleast(a.q, a.k, a.nt, a.n, x) for x in xs}
        else:
            rep = simulator.simulate_ns(a.q, a.k, a.n, a.trials, a.seed, modulus=modulus)
            exact = {x: p_ns_atleast(a.q, a.k, a.n, x) for x in xs}
    rows, worst = [], EXIT_OK
    for x in xs:
        emp, p = rep.freq(x), float(exact[x])
        # binomial SE under the exact value; stays informative for tiny trial counts
        se = (p * (1 - p) / a.trials) ** 0.5
        gap = abs(emp - p)
        status = simulator.tolerance_status(gap, se)
        if status == "fail":
            worst = EXIT_TOLERANCE
        rows.append([
            rep.mode, a.q, a.k, "" if rep.n_T is None else rep.n_T, "" if rep.n is None else rep.n,
            "" if rep.eps is None else exact_str(rep.eps), x, a.trials, a.seed,
            _flt(emp, a.precision), _flt(exact[x], a.precision), _flt(gap, a.precision),
            _flt(se, a.precision), status,
        ])
    _emit(_csv_text(SIM_HEADER, rows), a.out)
    return worst


def cmd_verify(a) -> int:
    if a.q is not None or a.k is not None or a.n is not None:
        if a.q is None or a.k is None or a.n is None:
            raise ConfigError("give all of --q, --k, --n (and --nt for sys) or none")
        _check_k(a.k)
        if a.mode == SYSTEMATIC:
            if a.nt is None:
                raise ConfigError("systematic verification needs --nt")
            cases = [(f"sys q={a.q} k={a.k} n_T={a.nt} n={a.n}",
                      lambda: check_sys(a.q, a.k, a.nt, a.n))]
        else:
            cases = [(f"ns q={a.q} k={a.k} n={a.n}", lambda: check_ns(a.q, a.k, a.n))]
    else:
        cases = default_sweep()
    for label, run in cases:
        try:
            bad = run()
        except TooLarge as exc:
            print(f"{label}: TooLarge: {exc}")
            return EXIT_CONFIG
        if bad:
            print(f"{label}: MISMATCH {bad[0]}")
            return EXIT_MISMATCH
        print(f"{label}: exact-equal")
    print(f"all {len(cases)} cases exact-equal")
    return EXIT_OK


FIG1_HEADER = ["mode", "q", "k", "n_T", "n", "x", "source", "value", "prob_exact"]


def figure1_rows(trials: int, seed: int, precision: int = 12):
    q, k, n_T, xs = FIG1["q"], FIG1["k"], FIG1["n_T"], FIG1["xs"]
    analytic, simulated = [], []
    for mode in (NON_SYSTEMATIC, SYSTEMATIC):
        nt = "" if mode == NON_SYSTEMATIC else n_T
        for n in FIG1["ns"]:
            for x in xs:
                p = p_ns_atleast(q, k, n, x) if mode == NON_SYSTEMATIC else p_sys_atleast(q, k, n_T, n, x)
                analytic.append([mode, q, k, nt, n, x, "analytic", _flt(p, precision), exact_str(p)])
        for n in FIG1["ns"]:
            if mode == NON_SYSTEMATIC:
                rep = simulator.simulate_ns(q, k, n, trials, seed)
            else:
                rep = simulator.simulate_sys(q, k, n_T, n, trials, seed)
            for x in xs:
                simulated.append([mode, q, k, nt, n, x, "simulated", _flt(rep.freq(x), precision), ""])
    return analytic + simulated


def figure2_rows(precision: int = 12):
    rows = []
    for k, q, xs in FIG2_PANELS:
        for mode in (NON_SYSTEMATIC, SYSTEMATIC):
            for nt, x, p in erasure_curve(q, k, FIG2_EPS, mode, xs, range(min(xs), 3 * k + 1)):
                rows.append([f"k{k}_q{q}_{mode}", mode, q, k, exact_str(FIG2_EPS), nt, x,
                             exact_str(p), _flt(p, precision)])
    return rows


FIG2_HEADER = ["panel", "mode", "q", "k", "eps", "n_T", "x", "prob_exact", "prob_float"]


def cmd_figure(a) -> int:
    _needs_out(a)
    if a.preset == "fig1":
        if a.trials < 1:
            raise ConfigError("--trials must be >= 1")
        rows = figure1_rows(a.trials, a.seed, a.precision)
        header = FIG1_HEADER
        if a.format in ("svg", "both"):
            for mode in (NON_SYSTEMATIC, SYSTEMATIC):
                pick = [r for r in rows if r[0] == mode]
                lines = {f"x={x}": [(r[4], float(r[7])) for r in pick if r[5] == x and r[6] == "analytic"]
                         for x in FIG1["xs"]}
                dots = {f"x={x}": [(r[4], float(r[7])) for r in pick if r[5] == x and r[6] == "simulated"]
                        for x in FIG1["xs"]}
                _svg_path(a.out, f"_{mode}").write_text(line_chart(
                    lines, markers=dots, xlabel="n", ylabel="P(|X| >= x)",
                    title=f"{mode} q=2 k=20" + (" n_T=30" if mode == SYSTEMATIC else "")))
    else:
        rows = figure2_rows(a.precision)
        header = FIG2_HEADER
        if a.format in ("svg", "both"):
            for panel in dict.fromkeys(r[0] for r in rows):
                pick = [r for r in rows if r[0] == panel]
                xs = list(dict.fromkeys(r[6] for r in pick))
                series = {f"x={x}": [(r[5], float(r[8])) for r in pick if r[6] == x] for x in xs}
                _svg_path(a.out, f"_{panel}").write_text(
                    line_chart(series, xlabel="n_T", ylabel="P(|X| >= x)", title=f"{panel} eps=1/5"))
    if a.format in ("csv", "both"):
        _emit(_csv_text(header, rows), a.out)
    return EXIT_OK


COMMANDS = {
    "rank-dist": cmd_rank_dist,
    "partial": cmd_partial,
    "erasure-curve": cmd_erasure_curve,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, RLNCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

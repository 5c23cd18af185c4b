"""Command-line front end for the experiment pipelines.

Every subcommand writes its documented CSV or JSON to stdout (or to
``--out``); output is deterministic for a fixed configuration and seed.
Exit codes: 0 success, 1 usage error, 2 computation error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from mpmath import mp

import numpy as np

from . import approx, cache, contfrac, equidist, game, inhomog, rates, tables
from .angles import angle, power_sequence
from .forms import BUNDLED_FORMS, elliptic_curve_form
from .reportio import csv_line, fmt_float, to_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2


class UsageError(ValueError):
    pass


def _form_from_args(args):
    if getattr(args, "curve", None):
        parts = args.curve.split(",")
        if len(parts) != 6:
            raise UsageError("--curve wants a1,a2,a3,a4,a6,conductor")
        try:
            a1, a2, a3, a4, a6, conductor = (int(v) for v in parts)
        except ValueError as exc:
            raise UsageError(f"--curve: {exc}") from None
        return elliptic_curve_form(a1, a2, a3, a4, a6, conductor)
    name = getattr(args, "form", "delta")
    if name not in BUNDLED_FORMS:
        raise UsageError(f"--form: unknown form {name!r}")
    return BUNDLED_FORMS[name]


def _table_from_args(args, limit: int):
    spec = _form_from_args(args)
    cache_dir = cache.resolve_cache_dir(getattr(args, "cache_dir", None))
    return tables.build_table(spec, limit, cache_dir=cache_dir)


def _parse_value(text: str, bits: int):
    """A real value: 'p/q', a decimal literal, or golden/sqrt2/e/pi.

    Rationals come back exact; the named constants come back as certified
    dyadic intervals at the requested precision.
    """
    named = {"golden": lambda: (1 + mp.sqrt(5)) / 2,
             "sqrt2": lambda: mp.sqrt(2),
             "e": lambda: mp.e,
             "pi": lambda: mp.pi}
    if text in named:
        with mp.workprec(bits + 16):
            v = mp.mpf(named[text]())
            eps = mp.ldexp(1, int(mp.mag(v)) - bits - 8)
            from .angles import fraction_from_mpf
            return (fraction_from_mpf(v - eps), fraction_from_mpf(v + eps))
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"cannot parse value {text!r}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_coeffs(args) -> int:
    table = _table_from_args(args, args.limit)
    lines = ["n,a_f_n,a_n"]
    for n in range(1, args.limit + 1):
        lines.append(csv_line(n, table.raw[n], float(table.normalized[n])))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_angle(args) -> int:
    table = _table_from_args(args, max(args.p, 2))
    rec = angle(table, args.p, args.precision_bits)
    payload = {
        "p": args.p,
        "a_f_p": rec.a_f_p,
        "a_p": float(2 * rec.cos_theta),
        "theta": float(rec.theta),
        "radius": float(rec.radius),
        "fraction": float(rec.fraction),
        "classification": rec.classification,
        "precision_bits": rec.precision_bits,
    }
    _emit(args, to_json(payload))
    return EXIT_OK


def cmd_contfrac(args) -> int:
    if args.value is not None:
        value = _parse_value(args.value, args.precision_bits)
    else:
        table = _table_from_args(args, max(args.p, 2))
        rec = angle(table, args.p, args.precision_bits)
        value = (rec.fraction_lo, rec.fraction_hi)
    cf = contfrac.expand(value, max_depth=args.depth)
    lines = ["r,a_r,s_r,q_r"]
    lines.append(csv_line(0, cf.integer_part, cf.numerators[0], cf.denominators[0]))
    for r, a in enumerate(cf.quotients, start=1):
        lines.append(csv_line(r, a, cf.numerators[r], cf.denominators[r]))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_minkowski(args) -> int:
    if args.theta is not None:
        theta = _parse_value(args.theta, args.precision_bits)
        if isinstance(theta, tuple):
            theta = (theta[0] + theta[1]) / 2
    else:
        table = _table_from_args(args, max(args.p, 2))
        theta = angle(table, args.p, args.precision_bits).fraction
    witnesses = inhomog.minkowski_witnesses(theta, Fraction(args.x),
                                            args.m_max, args.precision_bits)
    lines = ["m,dist,scaled"]
    for w in witnesses:
        lines.append(csv_line(w.index, w.distance, w.scaled))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_fk_sum(args) -> int:
    if args.value is not None:
        value = _parse_value(args.value, args.precision_bits)
    else:
        table = _table_from_args(args, max(args.p, 2))
        rec = angle(table, args.p, args.precision_bits)
        value = (rec.fraction_lo, rec.fraction_hi)
    cf = contfrac.expand(value, max_depth=args.blocks + 2)
    phi = rates.parse_rate(args.rate)
    blocks = inhomog.fuchs_kim_partial_sums(cf, phi, args.blocks, cap=args.cap)
    lines = ["r,block_sum,cumulative"]
    for b in blocks:
        lines.append(csv_line(b.r, b.block_sum, b.cumulative))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_afz(args) -> int:
    table = _table_from_args(args, args.n_max)
    report = approx.afz_scan(table, args.x, args.n_max, constant=args.constant)
    payload = {
        "form": report.form_id,
        "x": report.x,
        "horizon": report.horizon,
        "rate": report.rate_label,
        "best_constant": report.best_constant,
        "below_constant_count": report.meta["below_constant_count"],
        "constant": report.meta["constant"],
        "witnesses": [{"n": w.index, "dist": w.distance, "scaled": w.scaled}
                      for w in report.witnesses],
    }
    _emit(args, to_json(payload))
    return EXIT_OK


def cmd_thm2(args) -> int:
    table = _table_from_args(args, max(args.p, 2))
    report = approx.prime_power_search(table, args.p, args.x, args.m_max,
                                       args.precision_bits)
    payload = {
        "form": report.form_id,
        "p": report.meta["p"],
        "x": report.x,
        "horizon": report.horizon,
        "bound": report.meta["bound"],
        "sin_theta": report.meta["sin_theta"],
        "hypothesis_ok": report.meta["hypothesis_ok"],
        "delta": report.meta["delta"],
        "count": report.count,
        "witnesses": [{"m": w.index, "dist": w.distance, "scaled": w.scaled}
                      for w in report.witnesses],
    }
    _emit(args, to_json(payload))
    return EXIT_OK


def cmd_bad(args) -> int:
    if args.x is None and args.delta is None:
        raise UsageError("bad needs either --x or --delta")
    table = _table_from_args(args, max(args.p, 2))
    rate = rates.parse_rate(args.rate)
    payload = {"form": table.spec.form_id, "p": args.p, "rate": rate.label,
               "horizon": args.m_max}
    if args.delta is not None:
        report = approx.construct_bad_point(table, args.p, args.delta,
                                            horizon=args.m_max,
                                            precision_bits=args.precision_bits,
                                            screen_threshold=args.threshold)
        result = approx.bad_infimum(table, args.p, report.x, rate, args.m_max,
                                    args.precision_bits)
        payload.update({
            "delta": report.delta,
            "x": report.x_float,
            "gamma": report.gamma,
            "screened": report.screened,
            "minima": [{"value": m.value, "argmin": m.argmin}
                       for m in report.minima],
            "proof_lower_bound": approx.proof_lower_bound(report.gamma,
                                                          report.sin_theta),
            "inf": result.value,
            "argmin": result.argmin,
        })
    else:
        result = approx.bad_infimum(table, args.p, args.x, rate, args.m_max,
                                    args.precision_bits)
        payload.update({"x": args.x, "inf": result.value,
                        "argmin": result.argmin})
    _emit(args, to_json(payload))
    return EXIT_OK


def cmd_equidist(args) -> int:
    table = _table_from_args(args, args.x_limit)
    sample = equidist.empirical_distribution(table, args.x_limit)
    if args.measure == "plancherel":
        # the vertical measure has no horizontal empirical counterpart;
        # mapping samples to angles keeps the comparison mechanically
        # well-defined for exploration
        measure = equidist.plancherel(args.plancherel_p)
        values = np.sort(np.arccos(np.clip(sample.values, -1.0, 1.0)))
        lo, hi = 0.0, float(np.pi)
    else:
        measure = equidist.MeasureSpec(args.measure)
        values = sample.values
        lo, hi = -1.0, 1.0
    ks = equidist.ks_statistic(values, measure)
    payload = {
        "form": table.spec.form_id,
        "x_limit": args.x_limit,
        "measure": args.measure,
        "samples": len(values),
        "ks": ks,
    }
    if args.alpha is not None and args.beta is not None:
        observed, predicted = equidist.interval_count_ratio(
            table, args.x_limit, args.alpha, args.beta)
        payload.update({"alpha": args.alpha, "beta": args.beta,
                        "observed": observed, "predicted": predicted})
    if args.hist_out:
        width = (hi - lo) / args.bins
        lines = ["bin_left,bin_right,count,predicted"]
        n = len(values)
        for i in range(args.bins):
            left, right = lo + i * width, lo + (i + 1) * width
            count = int(((values >= left) & (values < right)).sum())
            if i == args.bins - 1:
                count += int((values == right).sum())
            pred = (equidist.cdf(measure, right) - equidist.cdf(measure, left)) * n
            lines.append(csv_line(fmt_float(left), fmt_float(right), count, pred))
        with open(args.hist_out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    _emit(args, to_json(payload))
    return EXIT_OK


def cmd_game(args) -> int:
    table = _table_from_args(args, max(args.p, 2))
    if int(table.spf[args.p]) != args.p or table.is_flagged(args.p):
        raise UsageError(f"--p must be a good prime for the form, got {args.p}")
    with mp.workprec(96):
        seq = list(power_sequence(mp.mpf(table.a(args.p)),
                                  args.target_horizon))
    targets = [(float(seq[m]), 1.0 / (m * m))
               for m in range(1, args.target_horizon + 1)]
    strat_a = game.avoidance_strategy(targets)
    if args.adversary == "chase":
        strat_b = game.chase_strategy(targets)
    else:
        strat_b = game.random_strategy(args.seed)
    result = game.play((0.0, 1.0), Fraction(args.alpha), Fraction(args.beta),
                       strat_a, strat_b, args.rounds)
    trace = [{"label": label, "lo": float(lo), "hi": float(hi),
              "lo_exact": lo, "hi_exact": hi}
             for label, lo, hi in result.state.history]
    payload = {
        "alpha": args.alpha, "beta": args.beta, "rounds": args.rounds,
        "outcome": result.outcome,
        "point": float(result.point) if result.point is not None else None,
        "radius": float(result.radius) if result.radius is not None else None,
        "trace": trace,
    }
    _emit(args, to_json(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newformlab",
        description="Newform coefficients, Sato-Tate angles, and "
                    "Diophantine approximation experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, table=True):
        p.add_argument("--form", default="delta", choices=sorted(BUNDLED_FORMS),
                       help="bundled form (default delta)")
        p.add_argument("--curve", default=None,
                       help="elliptic curve a1,a2,a3,a4,a6,conductor "
                            "(overrides --form)")
        p.add_argument("--precision-bits", type=int, default=256)
        p.add_argument("--cache-dir", default=None,
                       help=f"coefficient cache directory "
                            f"(or ${cache.ENV_VAR})")
        p.add_argument("--out", default=None, help="write output here "
                                                   "instead of stdout")

    p = sub.add_parser("coeffs", help="coefficient table CSV")
    add_common(p)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("angle", help="certified Sato-Tate angle at p")
    add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("contfrac", help="certified continued fraction")
    add_common(p)
    p.add_argument("--p", type=int, default=2,
                   help="use theta_p/(2 pi) of the form (default)")
    p.add_argument("--value", default=None,
                   help="expand this value instead: p/q, decimal, "
                        "golden, sqrt2, e, pi")
    p.add_argument("--depth", type=int, default=40)
    p.set_defaults(func=cmd_contfrac)

    p = sub.add_parser("minkowski", help="||m theta + x|| < 3/m witnesses")
    add_common(p)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--theta", default=None,
                   help="rotation number (default: theta_p/(2 pi))")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=cmd_minkowski)

    p = sub.add_parser("fk-sum", help="Fuchs-Kim block partial sums")
    add_common(p)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--value", default=None,
                   help="rotation number (default: theta_p/(2 pi))")
    p.add_argument("--rate", default="1/n")
    p.add_argument("--blocks", type=int, default=20)
    p.add_argument("--cap", type=int, default=inhomog.DEFAULT_SUM_CAP)
    p.set_defaults(func=cmd_fk_sum)

    p = sub.add_parser("afz", help="running-minima scan of |a(n) - x|")
    add_common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--constant", type=float, default=1.0)
    p.set_defaults(func=cmd_afz)

    p = sub.add_parser("thm2", help="prime-power witnesses of "
                                    "m |a(p^m) - x| <= 6 pi/sin theta_p")
    add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=cmd_thm2)

    p = sub.add_parser("bad", help="finite-horizon Bad(p, rate) infimum")
    add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--delta", type=float, default=None,
                   help="construct x = sin(2 pi delta)/sin theta_p")
    p.add_argument("--rate", default="n^2")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--threshold", type=float, default=1e-3)
    p.set_defaults(func=cmd_bad)

    p = sub.add_parser("equidist", help="empirical distribution vs a measure")
    add_common(p)
    p.add_argument("--x-limit", type=int, required=True)
    p.add_argument("--measure", default="sato-tate",
                   choices=["sato-tate", "cm", "cm-continuous", "plancherel"])
    p.add_argument("--plancherel-p", type=int, default=11)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--hist-out", default=None,
                   help="write histogram CSV here")
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("game", help="Schmidt game with an avoiding player A")
    add_common(p)
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--rounds", type=int, default=40)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--target-horizon", type=int, default=100)
    p.add_argument("--adversary", default="chase", choices=["chase", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_game)

    return parser


def _validate_config(args) -> None:
    if getattr(args, "precision_bits", 256) < 64:
        raise UsageError("--precision-bits must be at least 64")
    for flag in ("limit", "m_max", "n_max", "x_limit", "rounds", "blocks",
                 "depth", "bins", "target_horizon"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be >= 1")


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        _validate_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))

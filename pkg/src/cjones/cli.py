"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain/numerical error, 4 parse error.
Data rows go to stdout; diagnostics go to stderr.
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from cjones.alexander import alexander_poly
from cjones.asym import fit_expansion, sweep, volume_conjecture_check
from cjones.config import LOG_FORMAT, Settings, load_settings
from cjones.deltacalc import RepClass, RepKind, delta_rep
from cjones.errors import CJonesError, ConfigError, ParseError
from cjones.geometry import evaluate_action, torsion_fig8, torsion_fig8_zero
from cjones.jones import EvalPoint, jones_eval, kashaev_fig8
from cjones.knotlang import parse_braid, parse_knot, presentation_from_braid
from cjones.numkit import PrecisionCfg
from cjones.output import emit_rows

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PARSE = 4

# first match wins
EXIT_CODES = (
    (ParseError, EXIT_PARSE),
    (ConfigError, EXIT_USAGE),
    (CJonesError, EXIT_DOMAIN),
    (ValueError, EXIT_USAGE),
)

SATELLITE_LABELS = ("i", "ii", "iii", "iv")

Rows = Tuple[List[str], List[Dict]]


def exit_code_for(error: Exception) -> int:
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    raise error


# =============================================================================
# SUBCOMMAND HANDLERS
# =============================================================================

def cmd_jones(args, cfg: PrecisionCfg) -> Rows:
    expr = parse_knot(args.knot)
    r = cfg.mp.mpf(args.r)
    value = jones_eval(expr, EvalPoint(args.N, r), cfg, reduced=args.reduced)
    return ["N", "r", "log_mag", "phase"], [
        {"N": args.N, "r": r, "log_mag": value.log_mag, "phase": value.phase}
    ]


def cmd_kashaev(args, cfg: PrecisionCfg) -> Rows:
    ctx = cfg.mp
    value = kashaev_fig8(args.N, cfg)
    rate = 2 * ctx.pi / args.N * ctx.log(value)
    return ["N", "value", "rate"], [{"N": args.N, "value": value, "rate": rate}]


def cmd_action(args, cfg: PrecisionCfg) -> Rows:
    ctx = cfg.mp
    action = evaluate_action(ctx.mpc(ctx.mpf(args.u_re), ctx.mpf(args.u_im)), cfg)
    columns = ["u_re", "u_im", "sprime_re", "sprime_im", "s_re", "s_im", "vol", "cs", "v_re", "v_im"]
    row = {
        "u_re": ctx.re(action.u),
        "u_im": ctx.im(action.u),
        "sprime_re": ctx.re(action.s_prime),
        "sprime_im": ctx.im(action.s_prime),
        "s_re": ctx.re(action.s),
        "s_im": ctx.im(action.s),
        "vol": action.vol,
        "cs": action.cs,
        "v_re": ctx.re(action.v),
        "v_im": ctx.im(action.v),
    }
    return columns, [row]


def cmd_torsion(args, cfg: PrecisionCfg) -> Rows:
    if args.zero:
        return ["kind", "alpha", "torsion"], [{"kind": "trivial", "alpha": 0, "torsion": torsion_fig8_zero(cfg)}]
    alpha = cfg.mp.mpf(args.alpha)
    return ["kind", "alpha", "torsion"], [
        {"kind": "cone", "alpha": alpha, "torsion": torsion_fig8(alpha, cfg)}
    ]


def _satellite_flags(text: Optional[str]) -> Tuple[bool, bool, bool, bool]:
    if not text:
        return (False, False, False, False)
    given = {label.strip() for label in text.split(",") if label.strip()}
    unknown = given - set(SATELLITE_LABELS)
    if unknown:
        raise ValueError(f"unknown satellite hypotheses: {', '.join(sorted(unknown))}")
    return tuple(label in given for label in SATELLITE_LABELS)


def cmd_delta(args, cfg: PrecisionCfg) -> Rows:
    expr = parse_knot(args.knot)
    rep = RepClass(
        kind=RepKind(args.rep),
        annulus_central=args.annulus_central,
        satellite_hypotheses=_satellite_flags(args.satellite_hyp),
    )
    result = delta_rep(expr, rep)
    return ["delta", "h0", "h1_ker", "trace"], [
        {"delta": result.delta, "h0": result.h0, "h1_ker": result.h1_ker, "trace": ";".join(result.trace)}
    ]


def cmd_alexander(args, cfg: PrecisionCfg) -> Rows:
    pres = presentation_from_braid(parse_braid(args.braid))
    poly = alexander_poly(pres)
    return ["polynomial", "delta_at_1", "delta_at_minus_1"], [
        {"polynomial": poly.to_pairs(), "delta_at_1": poly.evaluate(1), "delta_at_minus_1": poly.evaluate(-1)}
    ]


def cmd_residual(args, cfg: PrecisionCfg) -> Rows:
    rows = sweep(args.N, args.r_min, args.r_max, args.steps, cfg, jobs=args.jobs)
    columns = ["N", "r", "log_jones", "prediction", "residual", "error"]
    return columns, [
        {
            "N": row.N,
            "r": row.r,
            "log_jones": row.log_jones,
            "prediction": row.prediction,
            "residual": row.residual,
            "error": row.error or "",
        }
        for row in rows
    ]


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_fit(args, cfg: PrecisionCfg) -> Rows:
    report = fit_expansion(
        args.N_list, args.r, cfg, knot=args.knot, inverse_term=args.inverse_term, jobs=args.jobs
    )
    columns = ["knot", "r", "a", "b", "c", "rms", "vol_est", "delta_est", "torsion_const_est"]
    if args.inverse_term:
        columns.append("d")
    row = {column: getattr(report, column) for column in columns}
    return columns, [row]


def cmd_volcheck(args, cfg: PrecisionCfg) -> Rows:
    return ["N_max", "volume"], [{"N_max": args.N_max, "volume": volume_conjecture_check(args.N_max, cfg)}]


# =============================================================================
# PARSER
# =============================================================================

def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=settings.digits, help="working precision (decimal digits)")
    common.add_argument("--json", action="store_true", help="emit one JSON object per row instead of CSV")
    common.add_argument("--jobs", type=int, default=settings.jobs, help="worker processes for sweeps and fits")
    common.add_argument("--log-level", default=settings.log_level, help="logging level for stderr diagnostics")

    parser = argparse.ArgumentParser(prog="cjones", description="Colored Jones asymptotics for the figure-eight knot")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("jones", cmd_jones, "evaluate J_N (or V_N) of a knot expression")
    p.add_argument("--knot", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--reduced", action="store_true")

    p = add("kashaev", cmd_kashaev, "Kashaev invariant of the figure-eight knot")
    p.add_argument("--N", type=int, required=True)

    p = add("action", cmd_action, "Chern-Simons actions, volume and CS invariant at u")
    p.add_argument("--u-re", dest="u_re", default="0")
    p.add_argument("--u-im", dest="u_im", default="0")

    p = add("torsion", cmd_torsion, "figure-eight torsion on the cone-angle axis")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha")
    group.add_argument("--zero", action="store_true")

    p = add("delta", cmd_delta, "delta^rep from the rule engine")
    p.add_argument("--knot", required=True)
    p.add_argument("--rep", required=True, choices=[kind.value for kind in RepKind])
    p.add_argument("--annulus-central", dest="annulus_central", action="store_true")
    p.add_argument("--satellite-hyp", dest="satellite_hyp", default=None)

    p = add("alexander", cmd_alexander, "Alexander polynomial of a braid closure")
    p.add_argument("--braid", required=True)

    p = add("residual", cmd_residual, "residual sweep over an r grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r-min", dest="r_min", default="0.9")
    p.add_argument("--r-max", dest="r_max", default="1.1")
    p.add_argument("--steps", type=int, default=41)

    p = add("fit", cmd_fit, "fit a*N + b*log N + c to log J_N")
    p.add_argument("--r", required=True)
    p.add_argument("--N-list", dest="N_list", type=_int_list, required=True)
    p.add_argument("--knot", default="4_1", choices=["U", "4_1", "hopf"])
    p.add_argument("--inverse-term", dest="inverse_term", action="store_true")

    p = add("volcheck", cmd_volcheck, "volume conjecture check from Kashaev invariants")
    p.add_argument("--N-max", dest="N_max", type=int, required=True)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        settings = load_settings()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        logging.basicConfig(level=args.log_level.upper(), format=LOG_FORMAT)
        if args.jobs < 1:
            raise ConfigError(f"--jobs must be positive, got {args.jobs}")
        cfg = PrecisionCfg(digits=args.digits)
        columns, rows = args.handler(args, cfg)
    except Exception as e:
        code = exit_code_for(e)
        print(f"error: {e}", file=sys.stderr)
        log.debug("command failed", exc_info=True)
        return code

    emit_rows(columns, rows, sys.stdout, as_json=args.json)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO

import pandas as pd
from pydantic import ValidationError

from src.config import get_settings
from src.errors import EmptyWindow, GraphicRegionsError
from src.models.region import SimpleRegion
from src.services import adversarial_service, counting_service, region_service, switch_service
from src.services.certify_service import certify
from src.services.graphicality import is_graphic, load_graph, parse_sequence

logger = logging.getLogger(__name__)

VERSION = "1.0.0"


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _fraction_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from e


def _r_value(text: str) -> Any:
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--r takes an even integer or 'auto', got {text!r}") from e


def _add_region_flags(parser: argparse.ArgumentParser, sigma: bool = True) -> None:
    parser.add_argument("--n", type=int, required=True)
    if sigma:
        parser.add_argument("--sigma", type=int, required=True)
    parser.add_argument("--c1", type=int, required=True)
    parser.add_argument("--c2", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphic-regions", description="Fully graphic degree-sequence regions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphic", help="Erdos-Gallai test")
    p.add_argument("--seq", required=True)

    p = sub.add_parser("leg", help="extremal member of a region")
    _add_region_flags(p)

    p = sub.add_parser("classify", help="full graphicality and stability predicates")
    _add_region_flags(p)
    p.add_argument("--epsilon", type=_fraction)

    p = sub.add_parser("count", help="exact number of labeled realizations")
    p.add_argument("--seq", required=True)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("boundary", help="exact boundary quotient")
    p.add_argument("--seq", required=True)
    p.add_argument("--convention", choices=["le", "lt"], default="le")

    p = sub.add_parser("certify", help="witness trail or hostile configuration")
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--region", required=True)
    p.add_argument("--max-len", type=int, default=11)

    p = sub.add_parser("adversarial", help="split composition inside a region")
    _add_region_flags(p)
    p.add_argument("--r", type=_r_value, required=True)

    p = sub.add_parser("window", help="sigma window of the split construction")
    _add_region_flags(p, sigma=False)
    p.add_argument("--r", type=_r_value, required=True)
    p.add_argument("--beta", type=_fraction)

    p = sub.add_parser("mcmc", help="switch chain with uniformity diagnostics")
    p.add_argument("--seq", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--burnin", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--csv", type=Path)

    p = sub.add_parser("scan", help="per-sigma table of a very simple region")
    _add_region_flags(p, sigma=False)
    p.add_argument("--r", type=_r_value)
    p.add_argument("--beta", type=_fraction)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("sweep", help="window checks over a parameter grid")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--c2", type=_int_list, required=True)
    p.add_argument("--r", type=_int_list, required=True)
    p.add_argument("--beta", type=_fraction_list)
    p.add_argument("--out", type=Path, required=True)

    return parser


def _resolve_r(args: argparse.Namespace) -> Optional[int]:
    if args.r == "auto":
        return adversarial_service.remark_r(args.n)
    return args.r


def _region(args: argparse.Namespace) -> SimpleRegion:
    return SimpleRegion(n=args.n, sigma=args.sigma, c1=args.c1, c2=args.c2)


def _graphic(args: argparse.Namespace) -> Dict[str, Any]:
    return is_graphic(parse_sequence(args.seq)).to_json_dict()


def _leg(args: argparse.Namespace) -> Dict[str, Any]:
    region = _region(args)
    alpha_floor, a_value, leg = region_service.leg_parts(region)
    return {
        "region": str(region),
        "leg": leg.to_list(),
        "alpha_floor": alpha_floor,
        "a": a_value,
        "fully_graphic": region_service.is_fully_graphic(region),
    }


def _classify(args: argparse.Namespace) -> Dict[str, Any]:
    return region_service.classify(_region(args), args.epsilon).to_json_dict()


def _count(args: argparse.Namespace) -> Dict[str, Any]:
    d = parse_sequence(args.seq)
    return {"sequence": d.to_list(), "count": str(counting_service.count_realizations(d, limit=args.limit))}


def _boundary(args: argparse.Namespace) -> Dict[str, Any]:
    convention = "i_le_j" if args.convention == "le" else "i_lt_j"
    report = counting_service.boundary_quotient(parse_sequence(args.seq), convention)
    return report.to_json_dict()


def _certify(args: argparse.Namespace) -> Dict[str, Any]:
    g = load_graph(args.graph.read_text())
    region = SimpleRegion.parse(args.region)
    return certify(g, args.p, args.q, region, max_len=args.max_len).to_json_dict()


def _adversarial(args: argparse.Namespace) -> Dict[str, Any]:
    region = _region(args)
    r = _resolve_r(args)
    degrees, composition = adversarial_service.construct_unstable(region, r)
    return {
        "region": str(region),
        "r": r,
        "x": composition.x,
        "y": composition.y,
        "e": composition.e,
        "sequence": degrees.to_list(),
        "graph": composition.graph.to_json_dict(),
    }


def _window(args: argparse.Namespace) -> Dict[str, Any]:
    window = adversarial_service.unstable_window(args.n, args.c1, args.c2, _resolve_r(args), args.beta)
    if window.empty:
        raise EmptyWindow(f"no x admits an unstable sigma for n={args.n}, c1={args.c1}, c2={args.c2}, r={window.r}")
    return window.to_json_dict()


def _mcmc(args: argparse.Namespace) -> Dict[str, Any]:
    report = switch_service.run_chain(
        parse_sequence(args.seq),
        args.seed,
        args.steps,
        thin=args.thin,
        burn_in=args.burnin,
        keep_trace=args.csv is not None,
    )
    if args.csv is not None:
        trace = pd.DataFrame({"sample_index": range(len(report.trace)), "state_key": report.trace})
        trace.to_csv(args.csv, index=False)
    return report.to_json_dict()


def _scan(args: argparse.Namespace) -> Dict[str, Any]:
    table = region_service.scan(args.n, args.c1, args.c2, _resolve_r(args), args.beta)
    table.to_csv(args.out, index=False)
    return {"out": str(args.out), "rows": len(table)}


def _sweep(args: argparse.Namespace) -> Dict[str, Any]:
    table = adversarial_service.sweep_windows(args.n, args.c2, args.r, args.beta or [None])
    table.to_csv(args.out, index=False)
    return {"out": str(args.out), "rows": len(table)}


COMMANDS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "graphic": _graphic,
    "leg": _leg,
    "classify": _classify,
    "count": _count,
    "boundary": _boundary,
    "certify": _certify,
    "adversarial": _adversarial,
    "window": _window,
    "mcmc": _mcmc,
    "scan": _scan,
    "sweep": _sweep,
}


def _emit(payload: Dict[str, Any], out: TextIO) -> None:
    out.write(json.dumps({"version": VERSION, **payload}) + "\n")


def run_command(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Parses `argv`, runs one subcommand and writes its JSON result to `out`.

    :return: 0 on success, 1 on a domain error, 2 on a usage error.
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0

    try:
        payload = COMMANDS[args.command](args)
    except GraphicRegionsError as e:
        logger.info(f"{args.command} failed with {e.tag}: {e}")
        _emit(e.to_dict(), out)
        return 1
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        sys.stderr.write(f"{parser.prog} {args.command}: error: {e}\n")
        return 2

    _emit(payload, out)
    return 0


def main() -> None:
    logging.basicConfig(level=get_settings().log_level.upper(), stream=sys.stderr)
    sys.exit(run_command())


if __name__ == "__main__":
    main()

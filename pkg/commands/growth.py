# growth: Nevanlinna characteristic on a radius grid with Hayman-type fits
import config
from growth import hayman_check, radius_grid
from schemas import curve_table, dump_curve

from . import add_source_argument, instantiated_family

NAME = "growth"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="estimate T(r, f) of an instantiated solution family")
    add_source_argument(parser)
    parser.add_argument("--rmin", type=float, default=config.RMIN)
    parser.add_argument("--rmax", type=float, default=config.RMAX)
    parser.add_argument("--steps", type=int, default=config.STEPS)
    parser.add_argument("--quad-points", type=int, default=config.QUAD_POINTS)
    parser.add_argument("--level", type=int, default=2, help="n in a exp_{n-1}(b r^c)")
    parser.add_argument("--table", action="store_true", help="also print an r m N T table")
    parser.set_defaults(handler=run)


def run(args, payload) -> dict:
    _, family, expr = instantiated_family(payload)
    curve = hayman_check(expr, args.level, radius_grid(args.rmin, args.rmax, args.steps), args.quad_points)
    result = {"family": family.case_tag, "curve": dump_curve(curve)}
    if args.table:
        result["table"] = curve_table(curve)
    return result

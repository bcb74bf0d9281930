# verify: residual of an instantiated solution family on random sample points
import config
from classify.expr import render
from operators import FactorChain
from schemas import dump_residual, parse_approx
from verify import residual

from . import add_source_argument, instantiated_family

NAME = "verify"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="check a solution family against its chain numerically")
    add_source_argument(parser)
    parser.add_argument("--samples", type=int, default=config.SAMPLES, help="number of sample points")
    parser.add_argument("--seed", type=int, default=config.SEED, help="seed of the sample generator")
    parser.add_argument("--tol", type=float, default=config.TOL, help="relative residual tolerance")
    parser.add_argument("--center", default="0", help="center of the sampling annulus")
    parser.add_argument(
        "--inner",
        action="store_true",
        help="check against the first-order factor only (particular Riccati family)",
    )
    parser.set_defaults(handler=run)


def run(args, payload) -> dict:
    report, family, expr = instantiated_family(payload)
    chain = report.chain
    if args.inner:
        chain = FactorChain.of(report.alpha, (report.a1, report.b1))
    result = residual(chain, expr, args.samples, args.seed, args.tol, parse_approx(args.center, "center"))
    return {"family": family.case_tag, "expr": render(expr), "report": dump_residual(result)}

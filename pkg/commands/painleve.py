# painleve: leading balances, Fuchs indices, Laurent expansions and the genericity verdict
import config
from operators import expand_chain
from painleve import genericity_test, indicial_data, laurent_expand, leading_balances
from schemas import (
    dump_chain,
    dump_diffpoly,
    dump_genericity,
    dump_indicial,
    dump_laurent,
    loads,
    parse_chain,
    parse_exact,
)
from utils.errors import InputError
from verify import residual_series

from . import add_source_argument

NAME = "painleve"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="run the Painleve test on a factor chain")
    add_source_argument(parser)
    parser.add_argument("--depth", type=int, default=config.LAURENT_DEPTH, help="Laurent recursion depth")
    parser.add_argument("--jmax", type=int, default=config.JMAX, help="largest Fuchs index searched")
    parser.add_argument("--p-bound", type=int, default=config.P_SEARCH_BOUND, help="largest pole order tried")
    parser.add_argument(
        "--inject",
        default=None,
        help='JSON object of values for free resonances, e.g. {"2": "1/3"}',
    )
    parser.set_defaults(handler=run)


def _injected(text):
    if not text:
        return {}
    values = loads(text)
    if not isinstance(values, dict):
        raise InputError("--inject must be a JSON object")
    injected = {}
    for j, v in values.items():
        if not str(j).lstrip("-").isdigit():
            raise InputError(f"--inject keys must be integer resonance indices, got {j!r}")
        injected[int(j)] = parse_exact(v, f"inject[{j}]")
    return injected


def run(args, payload) -> dict:
    chain = parse_chain(payload)
    poly = expand_chain(chain)
    injected = _injected(args.inject)
    balances = []
    for balance in leading_balances(poly, args.p_bound):
        solution = laurent_expand(poly, balance, args.depth, injected)
        entry = {
            "indicial": dump_indicial(indicial_data(poly, balance)),
            "laurent": dump_laurent(solution),
            "obstructed": solution.obstructed,
        }
        if not solution.obstructed:
            entry["residual_valuation"] = residual_series(poly, solution)
        balances.append(entry)
    return {
        "chain": dump_chain(chain),
        "polynomial": dump_diffpoly(poly),
        "balances": balances,
        "genericity": dump_genericity(genericity_test(chain.a, args.jmax)),
    }

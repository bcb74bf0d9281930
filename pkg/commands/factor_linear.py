# factor-linear: constant-coefficient linear ODE to a chain with a_k = 0
from operators import factor_linear, linear_from_chain
from schemas import dump_chain, dump_linear_ode, dump_scalar, parse_linear_ode

from . import add_source_argument

NAME = "factor-linear"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="factor u^(n) + ... + k0 u + c0 = 0 into first-order factors")
    add_source_argument(parser)
    parser.set_defaults(handler=run)


def run(args, payload) -> dict:
    ode = parse_linear_ode(payload)
    chain = factor_linear(ode)
    return {
        "ode": dump_linear_ode(ode),
        "chain": dump_chain(chain),
        "reexpanded": [dump_scalar(c) for c in linear_from_chain(chain)],
    }

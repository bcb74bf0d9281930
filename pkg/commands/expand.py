# expand: a factor chain (or a bare a-vector) as a differential polynomial
from operators import expand_chain, expand_Dn
from schemas import dump_chain, dump_diffpoly, parse_chain, parse_exact
from utils.errors import InputError

from . import add_source_argument

NAME = "expand"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="expand a factor chain into its differential polynomial")
    add_source_argument(parser)
    parser.set_defaults(handler=run)


def run(args, payload) -> dict:
    if isinstance(payload, dict) and "a" in payload and "factors" not in payload:
        if not isinstance(payload["a"], list) or not payload["a"]:
            raise InputError("a must be a nonempty list")
        a = [parse_exact(x, f"a[{k}]") for k, x in enumerate(payload["a"])]
        return {"a": [str(x) for x in a], "polynomial": dump_diffpoly(expand_Dn(a))}
    chain = parse_chain(payload)
    return {"chain": dump_chain(chain), "polynomial": dump_diffpoly(expand_chain(chain))}

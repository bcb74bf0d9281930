# classify: case path and closed-form solution families of an order-two chain
from schemas import dump_classification

from . import add_source_argument, order_two_report

NAME = "classify"


def register(subparsers) -> None:
    parser = subparsers.add_parser(NAME, help="list every meromorphic solution family of an order-two chain")
    add_source_argument(parser)
    parser.set_defaults(handler=run, render=render)


def run(args, payload) -> dict:
    return dump_classification(order_two_report(payload))


def render(result: dict) -> str:
    lines = [f"case {result['case_path']} ({result['completeness']})"]
    for family in result["families"]:
        slots = ", ".join(family["free_params"]) or "none"
        lines.append(f"  {family['case_tag']}: u = {family['expr']}    [free: {slots}]")
        for constraint in family["constraints"]:
            lines.append(f"      where {constraint['description']}")
    lines.extend(f"  note: {note}" for note in result["notes"])
    return "\n".join(lines)

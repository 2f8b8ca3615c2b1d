from pathlib import Path
import argparse
import logging
import sys

sys.path.append(str(Path(__file__).resolve().parents[2]))

from pydantic import error_wrappers

from ckah.algebra.closure import PACK_NAMES
from ckah.cli import EXIT_INVALID
from ckah.cli import commands
from ckah.cli.models import CheckRequest, ClosureRequest
from ckah.core.config import LOG_LEVELS, config
from ckah.core.exceptions import CkahError, TermSyntaxError
from ckah.models import modelExceptionFuncs


logger = logging.getLogger("ckah")


def _omega(text: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in text.split(",") if name.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckah",
        description="Concurrent Kleene algebra with hypotheses: equivalence and closures.",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=config.log_level,
        help="logging level (default: %(default)s)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--hyp", choices=PACK_NAMES, help="built-in hypothesis pack")
    source.add_argument("--hyp-file", type=Path, help="file with one `lhs <= rhs` per line")
    common.add_argument(
        "--omega", type=_omega, help="comma separated observations (default: those in the terms)"
    )
    common.add_argument(
        "--bound",
        type=int,
        default=config.default_bound,
        help="largest number of leaves compared (default: %(default)s)",
    )
    common.add_argument("--dot", type=Path, help="directory for DOT files")

    check = subparsers.add_parser(
        "check", parents=[common], help="decide whether two terms are equivalent"
    )
    check.add_argument("left")
    check.add_argument("right")
    check.add_argument("--witness", action="store_true", help="print the witness as DOT")
    check.add_argument(
        "--cross-check", action="store_true", help="compare against brute-force oracles"
    )

    closure = subparsers.add_parser(
        "closure", parents=[common], help="print the closure of a term up to the bound"
    )
    closure.add_argument("term")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    arguments = build_parser().parse_args(argv)
    logging.basicConfig(
        level=arguments.log_level,
        format="%(levelname)s %(name)s: %(message)s",
    )

    common = {
        "hyp": arguments.hyp,
        "hyp_file": arguments.hyp_file,
        "omega": arguments.omega,
        "bound": arguments.bound,
        "dot": arguments.dot,
    }
    try:
        try:
            if arguments.command == "check":
                request = CheckRequest(
                    left=arguments.left,
                    right=arguments.right,
                    witness=arguments.witness,
                    cross_check=arguments.cross_check,
                    **common,
                )
            else:
                request = ClosureRequest(term=arguments.term, **common)
        except error_wrappers.ValidationError as e:
            modelExceptionFuncs.raise_model_exception(e)

        logger.info("bound %d", request.bound)
        if arguments.command == "check":
            return commands.cmd_check(request, out)
        return commands.cmd_closure(request, out)
    except TermSyntaxError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        print(e.pointer(), file=sys.stderr)
        return EXIT_INVALID
    except CkahError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

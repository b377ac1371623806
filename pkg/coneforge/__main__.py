# This file is part of "coneforge" which is released under GPL.
#
# See file LICENCE or go to http://www.gnu.org/licenses/ for full license
# details.
#
# coneforge is a numerical toolkit for Euclidean Jordan algebras and their
# symmetric cones.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

import logging
import os
import sys
from argparse import ArgumentParser
from argparse import Namespace
from typing import List
from typing import NoReturn
from typing import Optional
from typing import Sequence

from coneforge import AlgebraKind
from coneforge import __version__
from coneforge.algebra.core import ConeForgeError
from coneforge.codec import dumps
from coneforge.config import DEFAULT_SAMPLES
from coneforge.config import CliConfig
from coneforge.config import Subcommand
from coneforge.controller import ConeForgeController
from coneforge.lab import Law
from coneforge.lab.report import ToleranceExceeded


EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_logger = logging.getLogger("coneforge")


class ConeForgeCommandLineError(Exception):
    """Invalid command line."""

    pass


class ConeForgeArgumentParser(ArgumentParser):
    """coneforge argument parser.

    Parse errors are raised as :class:`ConeForgeCommandLineError` carrying the
    message and the exit code, instead of terminating the interpreter.
    """

    def error(self, message: str) -> NoReturn:
        """Raise the parse error."""
        raise ConeForgeCommandLineError(f"{self.prog}: error: {message}", EXIT_USAGE)

    def exit(self, status: int = 0, message: Optional[str] = None) -> NoReturn:
        """Raise on exit requests, like those of ``--help``."""
        if message:
            sys.stderr.write(message)
        raise ConeForgeCommandLineError(None, status)


def _common_options() -> ArgumentParser:
    parser = ArgumentParser(add_help=False)

    parser.add_argument(
        "--algebra",
        choices=[_.value for _ in AlgebraKind],
        help="The algebra of generated elements.",
    )
    parser.add_argument("--r", type=int, help="The rank of a symmetric matrix algebra.")
    parser.add_argument("--n", type=int, help="The dimension n of the Lorentz algebra.")
    parser.add_argument("--frame", help="JSON file with the Jordan frame to use.")
    parser.add_argument("--s", help="Comma-separated exponents of the power function.")
    parser.add_argument("--tol-abs", type=float, help="Absolute residual tolerance.")
    parser.add_argument("--tol-rel", type=float, help="Relative residual tolerance.")
    parser.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help="Number of random samples.",
    )
    parser.add_argument(
        "--seed", type=int, help="Sampling seed. Defaults to $CONEFORGE_SEED or 42."
    )
    parser.add_argument(
        "--workers", type=int, default=1, help="Number of sampling workers."
    )
    parser.add_argument("-o", "--output", help="Write the JSON result to a file.")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Log debug information."
    )

    return parser


def build_parser() -> ConeForgeArgumentParser:
    """The command line parser."""
    common = _common_options()
    parser = ConeForgeArgumentParser(
        prog="coneforge",
        description="Decompositions and functional equations on symmetric cones.",
    )
    parser.add_argument("-V", "--version", action="version", version=__version__)

    subparsers = parser.add_subparsers(
        dest="subcommand", required=True, parser_class=ConeForgeArgumentParser
    )

    def subcommand(command: Subcommand, help: str) -> ArgumentParser:
        return subparsers.add_parser(command.value, parents=[common], help=help)

    spectral = subcommand(Subcommand.SPECTRAL, "Spectral decomposition.")
    spectral.add_argument("input", help="Element JSON file, or unit:i,j.")

    peirce = subcommand(Subcommand.PEIRCE, "Joint Peirce decomposition.")
    peirce.add_argument("input", help="Element JSON file, or unit:i,j.")
    peirce.add_argument(
        "--split",
        metavar="B",
        help="Split the input idempotent against the idempotent B.",
    )

    triangular = subcommand(Subcommand.TRIANGULAR, "Triangular decomposition.")
    triangular.add_argument("input", help="Element or decomposition JSON file.")

    minors = subcommand(Subcommand.MINORS, "Principal minors and power function.")
    minors.add_argument("input", help="Element JSON file, or unit:i,j.")

    verify = subcommand(Subcommand.VERIFY, "Verify a law on random samples.")
    verify.add_argument(
        "--law",
        choices=[_.value for _ in Law],
        help="The law to verify. Defaults to w1.",
    )
    verify.add_argument(
        "--property", choices=["det"], help="Verify a property of the algorithm."
    )
    verify.add_argument(
        "--control", action="store_true", help="Run the negative control."
    )
    verify.add_argument(
        "--suite", action="store_true", help="Run the acceptance suite."
    )
    verify.add_argument("--suite-file", help="Run the suite of an XML file.")
    verify.add_argument(
        "--baseline", help="Check that the run reproduces a saved report."
    )

    witness = subcommand(Subcommand.WITNESS, "Witness pair for H_a = H_b.")
    witness.add_argument("--lambda2", type=float, help="The value of <a, b>.")
    witness.add_argument("--alpha", type=float, help="The witness parameter.")

    character = subcommand(Subcommand.CHARACTER, "Triangular characters.")
    character.add_argument(
        "input", nargs="?", help="Element or decomposition JSON file."
    )

    pexider = subcommand(Subcommand.PEXIDER, "Pexider reduction.")
    pexider.add_argument(
        "--law", choices=[Law.W1.value, Law.W2.value], help="The algorithm."
    )

    return parser


def parse_args(argv: Sequence[str]) -> Namespace:
    """Parse the command line arguments."""
    return build_parser().parse_args(list(argv))


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        print(text)
        return
    with open(output, "w", encoding="utf8") as fout:
        fout.write(text + "\n")


def run(argv: List[str]) -> int:
    """Run coneforge with the given arguments and return the exit code."""
    try:
        args = parse_args(argv)
    except ConeForgeCommandLineError as e:
        message, code = e.args
        if message:
            print(message, file=sys.stderr)
        return code

    try:
        config = CliConfig.from_args(args, os.environ)
    except ConeForgeError as e:
        print(f"coneforge: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(levelname)s:%(name)s: %(message)s",
    )

    try:
        outcome = ConeForgeController(config).run()
        _emit(dumps(outcome.document), config.output)
    except ToleranceExceeded as e:
        _logger.debug("Residual failure: %s", e)
        print(f"coneforge: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ConeForgeError as e:
        print(f"coneforge: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"coneforge: error: cannot write {e.filename}", file=sys.stderr)
        return EXIT_USAGE

    return EXIT_PASS if outcome.passed else EXIT_FAIL


def main() -> None:
    """Main function."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

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

from argparse import Namespace
from dataclasses import dataclass
from enum import Enum
from typing import Any
from typing import Mapping
from typing import Optional
from typing import Tuple

from coneforge import AlgebraKind
from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.lab import Law


DEFAULT_SEED = 42
DEFAULT_SAMPLES = 1000
DEFAULT_SIZE = 3

SEED_VARIABLE = "CONEFORGE_SEED"
DEBUG_VARIABLE = "CONEFORGE_DEBUG"


class Subcommand(Enum):
    """The command line subcommands."""

    SPECTRAL = "spectral"
    PEIRCE = "peirce"
    TRIANGULAR = "triangular"
    MINORS = "minors"
    VERIFY = "verify"
    WITNESS = "witness"
    CHARACTER = "character"
    PEXIDER = "pexider"


def parse_exponents(text: str) -> Tuple[float, ...]:
    """Parse comma-separated exponents."""
    try:
        return tuple(float(_) for _ in text.split(","))
    except ValueError:
        raise InvalidInput(f"Invalid exponents '{text}'") from None


def _as_tuple(value: Any) -> Tuple[str, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        return (value,)
    return tuple(value)


@dataclass(frozen=True)
class CliConfig:
    """The resolved command line configuration."""

    subcommand: Subcommand
    inputs: Tuple[str, ...] = ()
    frame: Optional[str] = None
    tol: Tolerance = DEFAULT_TOLERANCE
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    workers: int = 1
    output: Optional[str] = None
    algebra: AlgebraKind = AlgebraKind.SYM_REAL
    size: Optional[int] = None
    law: Optional[Law] = None
    det_property: bool = False
    control: bool = False
    s: Optional[Tuple[float, ...]] = None
    lambda2: Optional[float] = None
    alpha: Optional[float] = None
    suite: bool = False
    suite_file: Optional[str] = None
    split: Optional[str] = None
    baseline: Optional[str] = None
    verbose: bool = False

    def __post_init__(self) -> None:
        """Validate the configuration."""
        if self.samples < 1:
            raise InvalidInput(f"Invalid number of samples {self.samples}")
        if self.workers < 1:
            raise InvalidInput(f"Invalid number of workers {self.workers}")
        if not (self.tol.abs > 0 and self.tol.rel > 0):
            raise InvalidInput("Tolerances must be positive")

    def descriptor(self, default_size: int = DEFAULT_SIZE) -> AlgebraDescriptor:
        """The algebra selected by ``--algebra`` and ``--r``/``--n``."""
        return AlgebraDescriptor.of(
            self.algebra, default_size if self.size is None else self.size
        )

    @classmethod
    def from_args(cls, args: Namespace, environ: Mapping[str, str]) -> "CliConfig":
        """Resolve the parsed arguments against the environment.

        An explicit ``--seed`` wins over the environment, which wins over the
        default seed.
        """
        seed = args.seed
        if seed is None:
            try:
                seed = int(environ.get(SEED_VARIABLE, DEFAULT_SEED))
            except ValueError:
                raise InvalidInput(
                    f"{SEED_VARIABLE} must be an integer, got "
                    f"'{environ[SEED_VARIABLE]}'"
                ) from None

        tol = DEFAULT_TOLERANCE
        if args.tol_abs is not None or args.tol_rel is not None:
            tol = Tolerance(
                DEFAULT_TOLERANCE.abs if args.tol_abs is None else args.tol_abs,
                DEFAULT_TOLERANCE.rel if args.tol_rel is None else args.tol_rel,
            )

        size = args.r if args.r is not None else args.n
        if args.algebra is not None:
            algebra = AlgebraKind(args.algebra)
        elif args.n is not None and args.r is None:
            algebra = AlgebraKind.LORENTZ
        else:
            algebra = AlgebraKind.SYM_REAL

        get = vars(args).get
        return cls(
            subcommand=Subcommand(args.subcommand),
            inputs=_as_tuple(get("input")),
            frame=args.frame,
            tol=tol,
            samples=args.samples,
            seed=seed,
            workers=args.workers,
            output=args.output,
            algebra=algebra,
            size=size,
            law=None if get("law") is None else Law(get("law")),
            det_property=get("property") == "det",
            control=bool(get("control")),
            s=None if args.s is None else parse_exponents(args.s),
            lambda2=get("lambda2"),
            alpha=get("alpha"),
            suite=bool(get("suite")),
            suite_file=get("suite_file"),
            split=get("split"),
            baseline=get("baseline"),
            verbose=args.verbose or bool(environ.get(DEBUG_VARIABLE)),
        )

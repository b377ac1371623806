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

from dataclasses import dataclass
from enum import Enum
from typing import Any
from typing import Optional
from typing import Tuple

import numpy as np

from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import det
from coneforge.peirce import JordanFrame
from coneforge.triangular import principal_minors


class Law(Enum):
    """The laws checked by the verification lab."""

    W1 = "w1"
    W2 = "w2"
    PEXIDER = "pexider"
    CHARACTER = "character"
    DET_MULT = "det_mult"
    K_INVARIANCE = "k_invariance"
    AXIOMS = "axioms"
    SPLIT = "split"
    FORMULAS = "formulas"
    WITNESS = "witness"
    TRIANGULAR = "triangular"
    CLOSED_FORMS = "closed_forms"


@dataclass(frozen=True)
class LogFamily:
    """Regular solutions of the logarithmic Cauchy equations.

    A single exponent without a frame evaluates ``s log det x``. Otherwise the
    family evaluates ``sum_k s_k log D_k(x)`` on the principal minors of the
    frame.
    """

    s: Tuple[float, ...]
    frame: Optional[JordanFrame] = None

    def __post_init__(self) -> None:
        """Validate the exponents against the frame."""
        s = tuple(float(_) for _ in self.s)
        if not s or not np.all(np.isfinite(s)):
            raise InvalidInput("A logarithmic family needs finite exponents")
        if self.frame is None and len(s) > 1:
            raise InvalidInput("Principal minor families need a frame")
        if self.frame is not None and len(s) != len(self.frame):
            raise InvalidInput(
                f"Expected {len(self.frame)} exponents for the frame, got {len(s)}"
            )
        object.__setattr__(self, "s", s)

    @classmethod
    def log_det(cls, s: float = 1.0) -> "LogFamily":
        """The family ``s log det``."""
        return cls((s,))

    @classmethod
    def log_minors(cls, s: Any, frame: JordanFrame) -> "LogFamily":
        """The family ``sum_k s_k log D_k``."""
        return cls(tuple(np.asarray(s, dtype=float).reshape(-1)), frame)

    def __call__(self, x: Element) -> float:
        """Evaluate the family member."""
        if self.frame is None:
            d = det(x)
            if d <= 0:
                raise NotInCone(f"log det undefined at determinant {d:g}")
            return self.s[0] * float(np.log(d))

        minors = principal_minors(x, self.frame)
        if np.any(minors <= 0):
            raise NotInCone(f"Principal minors {minors} are not all positive")
        return float(np.asarray(self.s) @ np.log(minors))

    def __str__(self) -> str:
        """Short description."""
        name = "log_det" if self.frame is None else "log_minors"
        return f"{name}({','.join(f'{_:g}' for _ in self.s)})"

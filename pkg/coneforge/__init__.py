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

import os
import sys
from enum import Enum
from traceback import format_exception


__version__ = "0.3.0"


class AlgebraKind(Enum):
    """The implemented simple Euclidean Jordan algebras."""

    SYM_REAL = "sym_real"
    LORENTZ = "lorentz"


if os.environ.get("CONEFORGE_DEBUG"):
    _original_excepthook = sys.excepthook

    def _excepthook(exc_type, exc, tb):
        try:
            os.remove("coneforge.exc")
        except Exception:
            pass
        with open("coneforge.exc", "w") as fout:
            fout.writelines(format_exception(exc_type, exc, tb))
        _original_excepthook(exc_type, exc, tb)

    sys.excepthook = _excepthook

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

from coneforge.algebra.core import DEFAULT_TOLERANCE  # noqa: F401
from coneforge.algebra.core import AlgebraDescriptor  # noqa: F401
from coneforge.algebra.core import ConeForgeError  # noqa: F401
from coneforge.algebra.core import DimensionMismatch  # noqa: F401
from coneforge.algebra.core import Element  # noqa: F401
from coneforge.algebra.core import InvalidInput  # noqa: F401
from coneforge.algebra.core import NotInCone  # noqa: F401
from coneforge.algebra.core import Operator  # noqa: F401
from coneforge.algebra.core import SingularElement  # noqa: F401
from coneforge.algebra.core import Tolerance  # noqa: F401
from coneforge.algebra.core import apply  # noqa: F401
from coneforge.algebra.core import box  # noqa: F401
from coneforge.algebra.core import compose  # noqa: F401
from coneforge.algebra.core import det  # noqa: F401
from coneforge.algebra.core import eigenvalues  # noqa: F401
from coneforge.algebra.core import identity  # noqa: F401
from coneforge.algebra.core import inner  # noqa: F401
from coneforge.algebra.core import inverse  # noqa: F401
from coneforge.algebra.core import is_in_cone  # noqa: F401
from coneforge.algebra.core import jordan_product  # noqa: F401
from coneforge.algebra.core import lmap  # noqa: F401
from coneforge.algebra.core import power  # noqa: F401
from coneforge.algebra.core import quad_rep  # noqa: F401
from coneforge.algebra.core import sqrt  # noqa: F401
from coneforge.algebra.core import square  # noqa: F401
from coneforge.algebra.core import trace  # noqa: F401
from coneforge.algebra.core import trace_inner  # noqa: F401

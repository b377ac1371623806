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

from coneforge.adapters import Adapter
from coneforge.adapters import CharacterAdapter
from coneforge.adapters import MinorsAdapter
from coneforge.adapters import Outcome
from coneforge.adapters import PeirceAdapter
from coneforge.adapters import PexiderAdapter
from coneforge.adapters import SpectralAdapter
from coneforge.adapters import TriangularAdapter
from coneforge.adapters import VerifyAdapter
from coneforge.adapters import WitnessAdapter
from coneforge.config import CliConfig
from coneforge.config import Subcommand


_logger = logging.getLogger(__name__)


class ConeForgeController:
    """coneforge controller.

    This controller is in charge of running the adapter of the configured
    subcommand.
    """

    spectral = SpectralAdapter
    peirce = PeirceAdapter
    triangular = TriangularAdapter
    minors = MinorsAdapter
    verify = VerifyAdapter
    witness = WitnessAdapter
    character = CharacterAdapter
    pexider = PexiderAdapter

    def __init__(self, config: CliConfig) -> None:
        self.config = config

        # Auto-create adapters
        for name, adapter_class in (
            (n, v)
            for n, v in type(self).__dict__.items()
            if isinstance(v, type) and v.__mro__[-2] == Adapter
        ):
            setattr(self, name, adapter_class(config))

    def run(self) -> Outcome:
        """Run the subcommand."""
        _logger.debug("Running '%s'", self.config.subcommand.value)
        return {
            Subcommand.SPECTRAL: self.spectral,
            Subcommand.PEIRCE: self.peirce,
            Subcommand.TRIANGULAR: self.triangular,
            Subcommand.MINORS: self.minors,
            Subcommand.VERIFY: self.verify,
            Subcommand.WITNESS: self.witness,
            Subcommand.CHARACTER: self.character,
            Subcommand.PEXIDER: self.pexider,
        }[
            self.config.subcommand
        ]()  # type: ignore[call-arg]

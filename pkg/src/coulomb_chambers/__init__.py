"""Chamber combinatorics, quivers, Frobenius identities and wall-crossing faces
for the Coulomb branch algebra of a gauge theory, in exact arithmetic."""

from .lattice import AffineWeylElement, GaugeTheoryData, InvalidTheory, MatterLine, Root
from .arrangement import BudgetExceeded, enumerate_lambda_bar
from .pthroot import PthRootContext
from .quiver import build_quiver, emit_relations

__version__ = "0.1.0"

__all__ = [
    "AffineWeylElement", "GaugeTheoryData", "InvalidTheory", "MatterLine", "Root",
    "BudgetExceeded", "enumerate_lambda_bar", "PthRootContext", "build_quiver",
    "emit_relations",
]

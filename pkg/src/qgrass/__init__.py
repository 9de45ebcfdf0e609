"""qgrass: exact symbolic engine for quantum matrix algebras, quantum
Grassmannians and their limit ladders.

The commonly used names are re-exported here; the modules stay importable
on their own for the specialised corners (parsing, figures, check plumbing).
"""

from qgrass.scalars import LaurentScalar, ZERO, ONE, Q, Q_INV
from qgrass.qmatrix import (
    LevelIndex,
    LevelMismatchError,
    NCPoly,
    RewriteFuelError,
    TensorPoly,
    comul,
    counit,
    level_project_E,
    nc_mul,
    normalize,
)
from qgrass.qsl import (
    antipode,
    hopf_check,
    phi_project,
    quantum_det,
    quantum_minor,
    sl_equal,
)
from qgrass.grassmann import (
    MinorExpr,
    MinorWord,
    RelationVector,
    e_project,
    eval_embed,
    graded_dimension,
    minor_generators,
    r_embed,
    relation_basis,
)
from qgrass.coact import (
    CoactionValue,
    coinvariant_basis,
    is_coinvariant,
    left_coaction,
    right_coaction,
)
from qgrass.limits import (
    LimitElement,
    MayaDiagram,
    Tower,
    density_approx,
    limit_equal,
    minimal_dominating_level,
    rho_project,
    tower_from_finite,
)
from qgrass.parser import ParseError, parse_expr

__version__ = "0.1.0"

__all__ = [
    "LaurentScalar",
    "ZERO",
    "ONE",
    "Q",
    "Q_INV",
    "LevelIndex",
    "LevelMismatchError",
    "NCPoly",
    "RewriteFuelError",
    "TensorPoly",
    "comul",
    "counit",
    "level_project_E",
    "nc_mul",
    "normalize",
    "antipode",
    "hopf_check",
    "phi_project",
    "quantum_det",
    "quantum_minor",
    "sl_equal",
    "MinorExpr",
    "MinorWord",
    "RelationVector",
    "e_project",
    "eval_embed",
    "graded_dimension",
    "minor_generators",
    "r_embed",
    "relation_basis",
    "CoactionValue",
    "coinvariant_basis",
    "is_coinvariant",
    "left_coaction",
    "right_coaction",
    "LimitElement",
    "MayaDiagram",
    "Tower",
    "density_approx",
    "limit_equal",
    "minimal_dominating_level",
    "rho_project",
    "tower_from_finite",
    "ParseError",
    "parse_expr",
    "__version__",
]

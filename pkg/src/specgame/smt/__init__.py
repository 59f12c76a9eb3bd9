from .encoder import SmtEncoding, encode  # noqa: F401
from .solver import (  # noqa: F401
    SmtStatus,
    SolverConfig,
    check_implication,
    check_many,
    check_quadrants,
    check_sat,
    find_solver,
)

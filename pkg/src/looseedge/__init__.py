"""Loose-edge factorization of power series from their Newton polyhedra."""

from .algebra import GF, QQ, Factorization, Field, UPoly, upoly_factor, upoly_gcd, upoly_squarefree
from .bezout import (
    BezoutProblem,
    BezoutSolution,
    Mode,
    NotCoprime,
    PreconditionError,
    Unsolvable,
    solve_chain,
    solve_graded_bezout,
)
from .grading import GradedPiece, decompose, fiber, in_monoid
from .lifting import (
    EdgePolynomial,
    FactorizationResult,
    Report,
    Split,
    default_split,
    edge_to_univariate,
    factor_weierstrass,
    irreducibility_report,
    lift_factorization,
    lift_monic,
    make_split,
    univariate_to_edge,
)
from .parser import ParseError, parse_expression, parse_upoly
from .polyhedron import (
    EdgeFrame,
    NewtonPolyhedron,
    compact_edges,
    is_delta_orthant,
    is_loose,
    newton_vertices,
    project,
    project_point,
)
from .series import INF, LinearForm, Series, initial_form, mul_truncated, valuation
from .weierstrass import weierstrass_prepare

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
__version__ = "0.1.0"

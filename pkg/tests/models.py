"""Small algebras and operators shared by several test modules."""

from fractions import Fraction

from dendriform.fdalg import FDAlgebra, LinearOperator, matrix_units, truncated_polynomials
from dendriform.terms import Context, Family, OpSymbol

MUL = OpSymbol(Family.BASE, 1)


def dual_numbers():
    """Q[eps]/(eps^2) with basis 1, eps."""
    return truncated_polynomials(2)


def d_by_d_epsilon():
    return LinearOperator.from_columns(2, {1: {0: 1}})


def exterior_plane():
    """Exterior algebra on e1, e2 with basis 1, e1, e2, e1e2."""
    rows = [(0, b, b, 1) for b in range(4)] + [(a, 0, a, 1) for a in range(1, 4)]
    rows += [(1, 2, 3, 1), (2, 1, 3, -1)]
    return FDAlgebra.from_entries(4, Context.OMEGA, 1, {MUL: rows})


def exterior_derivation():
    """D(e1) = e2, zero on the other basis vectors; D^2 = 0."""
    return LinearOperator.from_columns(4, {1: {2: 1}})


def upper_triangular():
    """2x2 upper-triangular matrices with basis E11, E12, E22."""
    return matrix_units(2, upper=True)


def inner_derivation_by_e12():
    """x -> E12 x - x E12 on upper-triangular matrices."""
    return LinearOperator.from_columns(3, {0: {1: -1}, 2: {1: 1}})


def diagonal_projection():
    """Projection of upper-triangular matrices onto the diagonal; weight -1."""
    return LinearOperator.from_columns(3, {0: {0: 1}, 2: {2: 1}})


def strictly_upper_nilpotent(alpha, beta):
    """R(a E11 + b E22 + c E12) = (alpha a + beta b) E12; weight 0."""
    return LinearOperator.from_columns(3, {0: {1: Fraction(alpha)}, 2: {1: Fraction(beta)}})

from hypothesis import strategies as st

from hybridmoments.algebra.polynomial import Polynomial
from hybridmoments.moments.types import CentroidSymbol, MomentKey, VariableKind

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def moment_keys(draw, n_dof=1, max_order=4, min_order=0):
    order = draw(st.integers(min_order, max_order))
    cuts = sorted(draw(st.lists(st.integers(0, order), min_size=2 * n_dof - 1, max_size=2 * n_dof - 1)))
    flat = [b - a for a, b in zip([0] + cuts, cuts + [order])]
    return MomentKey(tuple(zip(flat[0::2], flat[1::2])))


@st.composite
def centroids(draw, n_dof=1):
    index = draw(st.integers(1, n_dof))
    return CentroidSymbol(index, draw(st.sampled_from(list(VariableKind))))


@st.composite
def polynomials(draw, n_dof=1, max_terms=3):
    pieces = []
    for _ in range(draw(st.integers(0, max_terms))):
        term = Polynomial.constant(draw(rationals), draw(st.integers(0, 1)))
        for _ in range(draw(st.integers(0, 2))):
            if draw(st.booleans()):
                term = term * Polynomial.symbol(draw(centroids(n_dof)))
            else:
                term = term * Polynomial.moment(draw(moment_keys(n_dof, 3, 2)))
        pieces.append(term)
    return sum(pieces, Polynomial.zero())

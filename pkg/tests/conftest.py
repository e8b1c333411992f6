import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import strategies as st

from paracr.poly import Poly
from paracr.surface import ModelSurface, ParaVectorField


def binomial_gamma(k, delta=1, nu=1):
    delta, nu = Fraction(delta), Fraction(nu)
    return tuple(comb(k, i) * delta * nu**i for i in range(1, k))


def monomial_gamma(k, iota, value=1):
    return tuple(Fraction(value) if i == iota else Fraction(0) for i in range(1, k))


INTERIOR_MONOMIALS = [(4, 2), (5, 2), (5, 3), (6, 3)]
BINOMIALS = [(3, 1, 1), (4, 1, 1), (5, 1, 1), (3, 2, 3), (4, 2, 3), (5, 2, 3)]
GENERICS = [(4, (1, 0, 1)), (5, (1, 1, 0, 0)), (6, (0, 1, 0, 1, 0))]
BOUNDARY_MONOMIALS = [(3, 1), (4, 1), (3, 2), (4, 3)]


def suite_surfaces():
    """The surfaces exercised across the acceptance criteria."""
    surfaces = []
    for k, iota in INTERIOR_MONOMIALS:
        surfaces.append(ModelSurface(k, monomial_gamma(k, iota)))
    for k, delta, nu in BINOMIALS:
        surfaces.append(ModelSurface(k, binomial_gamma(k, delta, nu)))
    for k, gamma in GENERICS:
        surfaces.append(ModelSurface(k, tuple(Fraction(g) for g in gamma)))
    for k, iota in BOUNDARY_MONOMIALS:
        surfaces.append(ModelSurface(k, monomial_gamma(k, iota)))
    return surfaces


@pytest.fixture(scope="session")
def suite():
    return suite_surfaces()


# -- randomized object builders (plain RNG, used by the big property suites) --


def random_fraction(rng, span=6, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_poly(rng, variables=("x", "y", "a", "b"), max_terms=4, max_exp=3):
    from paracr.poly import _VAR_INDEX  # noqa: PLC2701  (test-only convenience)

    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = [0, 0, 0, 0]
        for v in variables:
            exp[_VAR_INDEX[v]] = rng.randint(0, max_exp)
        terms[tuple(exp)] = random_fraction(rng)
    return Poly(terms)


def random_para_field(rng, max_terms=3, max_exp=2):
    return ParaVectorField(
        random_poly(rng, ("a", "b"), max_terms, max_exp),
        random_poly(rng, ("a", "b"), max_terms, max_exp),
        random_poly(rng, ("x", "y"), max_terms, max_exp),
        random_poly(rng, ("x", "y"), max_terms, max_exp),
    )


# -- hypothesis strategies -----------------------------------------------------

fractions_st = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def exponents_st(variables):
    from paracr.poly import _VAR_INDEX

    idx = [_VAR_INDEX[v] for v in variables]

    def build(draws):
        exp = [0, 0, 0, 0]
        for i, d in zip(idx, draws):
            exp[i] = d
        return tuple(exp)

    return st.lists(
        st.integers(min_value=0, max_value=3),
        min_size=len(idx),
        max_size=len(idx),
    ).map(build)


def poly_st(variables=("x", "y", "a", "b"), max_terms=4):
    return st.dictionaries(
        exponents_st(variables), fractions_st, max_size=max_terms
    ).map(Poly)


def para_field_st():
    return st.builds(
        ParaVectorField,
        poly_st(("a", "b"), 3),
        poly_st(("a", "b"), 3),
        poly_st(("x", "y"), 3),
        poly_st(("x", "y"), 3),
    )

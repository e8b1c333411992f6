"""Finite-type detection, case detection, normalization, singular locus.

The defining function of a hypersurface y = a + phi(a, b, x) is brought to
the model shape by eliminating pure x and pure b terms; the lowest a-free
mixed part then determines the type k and the coefficient sequence.  Model
surfaces split into monomial, binomial and generic coefficient layouts, and
binomial ones normalize exactly onto the binomial-coefficient sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Optional, Tuple

from . import sturm
from .poly import A, B, Exponents, Poly, X, Y, as_fraction
from .surface import InvalidSurfaceError, ModelSurface

FINITE = "FINITE"
INFINITE = "INFINITE"

MONOMIAL = "MONOMIAL"
BINOMIAL = "BINOMIAL"
GENERIC = "GENERIC"

POINT = "POINT"
LINE = "LINE"
PENCIL = "PENCIL"


class NormalFormError(ValueError):
    """Raised for inputs outside an operation's stated domain."""


@dataclass(frozen=True)
class DefiningFunction:
    """phi with y = a + phi(a, b, x); phi(0) = 0 and d(phi)/da vanishes at 0."""

    phi: Poly

    def __post_init__(self):
        if not self.phi.uses_only(("x", "a", "b")):
            raise NormalFormError("phi must not involve y")
        if self.phi.coefficient((0, 0, 0, 0)) != 0:
            raise NormalFormError("phi must vanish at the origin")
        if self.phi.coefficient((0, 0, 1, 0)) != 0:
            raise NormalFormError("d(phi)/da must vanish at the origin")


@dataclass(frozen=True)
class TypeResult:
    kind: str
    k: Optional[int] = None
    gamma: Optional[Tuple[Fraction, ...]] = None
    normalized: Optional[Poly] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE


def _select(p: Poly, keep) -> Poly:
    return Poly({exp: c for exp, c in p.items() if keep(exp)})


def _pure_x_part(p: Poly) -> Poly:
    return _select(p, lambda e: e[0] > 0 and e[2] == 0 and e[3] == 0)


def _pure_b_part(p: Poly) -> Poly:
    return _select(p, lambda e: e[3] > 0 and e[0] == 0 and e[2] == 0)


def _mixed_a_free(p: Poly) -> Poly:
    # x-containing monomials without a (pure x never reappears, so b >= 1)
    return _select(p, lambda e: e[2] == 0 and e[0] > 0)


def _min_total_degree(p: Poly) -> int:
    return min(sum(exp) for exp, _ in p.items())


def _b_order(p: Poly) -> int:
    return min(exp[3] for exp, _ in p.items())


def finite_type(phi: DefiningFunction) -> TypeResult:
    """Type detection by iterated elimination of pure x and pure b terms.

    The pure x part is removed once by shifting y.  Each loop step removes
    the current pure b part g by shifting a, which only creates terms whose
    b-order exceeds that of g; the loop stops as soon as the surviving
    mixed a-free part of lowest degree can no longer be touched.  If no
    x-containing monomial exists, or everything left is divisible by a, the
    contact order is unbounded.
    """
    p = phi.phi - _pure_x_part(phi.phi)
    if p.max_exponent("x") == 0:
        return TypeResult(INFINITE)
    guard = 12 * (p.total_degree() + 2)
    for _ in range(guard):
        g = _pure_b_part(p)
        if g.is_zero:
            break
        mixed = _mixed_a_free(p)
        if not mixed.is_zero and _b_order(g) >= _min_total_degree(mixed):
            break
        p = p.substitute("a", A - g) - g
    else:
        raise RuntimeError("pure-term elimination did not stabilize")
    mixed = _mixed_a_free(p)
    if mixed.is_zero:
        return TypeResult(INFINITE)
    k = _min_total_degree(mixed)
    gamma = tuple(mixed.coefficient((k - i, 0, 0, i)) for i in range(1, k))
    normalized = p - _pure_b_part(p)
    return TypeResult(FINITE, k=k, gamma=gamma, normalized=normalized)


# -- case detection ----------------------------------------------------------


@dataclass(frozen=True)
class CaseDetection:
    kind: str
    iota: Optional[int] = None
    delta: Optional[Fraction] = None
    nu: Optional[Fraction] = None


def detect_case(s: ModelSurface) -> CaseDetection:
    """Monomial, binomial (gamma_i = C(k,i) delta nu^i) or generic layout."""
    nonzero = [i for i, g in enumerate(s.gamma, start=1) if g != 0]
    if len(nonzero) == 1:
        return CaseDetection(MONOMIAL, iota=nonzero[0])
    if len(nonzero) < s.k - 1:
        # a binomial layout has every gamma_i nonzero
        return CaseDetection(GENERIC)
    k = s.k
    g1 = s.gamma[0] / comb(k, 1)
    g2 = s.gamma[1] / comb(k, 2)
    nu = g2 / g1
    if nu == 0:
        return CaseDetection(GENERIC)
    delta = g1 / nu
    for i, g in enumerate(s.gamma, start=1):
        if g != comb(k, i) * delta * nu**i:
            return CaseDetection(GENERIC)
    return CaseDetection(BINOMIAL, delta=delta, nu=nu)


# -- binomial normalization --------------------------------------------------


@dataclass(frozen=True)
class CoordinateChange:
    """Target coordinates expressed as polynomials in the source ones."""

    x_map: Poly
    y_map: Poly
    a_map: Poly
    b_map: Poly

    def as_tuple(self) -> Tuple[Poly, Poly, Poly, Poly]:
        return (self.x_map, self.y_map, self.a_map, self.b_map)


@dataclass(frozen=True)
class BinomialNormalization:
    change: CoordinateChange        # shears a and y by the pure k-th powers
    model_change: CoordinateChange  # diagonal scaling onto the model shape
    normalized: ModelSurface        # gamma_i = C(k, i)


def binomial_surface_p(k: int, delta: Fraction, nu: Fraction) -> Poly:
    """delta [ (x + nu b)^k - x^k - (nu b)^k ] expanded."""
    terms: Dict[Exponents, Fraction] = {}
    for i in range(1, k):
        terms[(k - i, 0, 0, i)] = delta * comb(k, i) * nu**i
    return Poly(terms)


def normalize_binomial(s: ModelSurface, detection: CaseDetection) -> BinomialNormalization:
    """Exact normalization of a binomial surface onto gamma_i = C(k, i).

    Two maps are produced.  ``change`` sends the surface onto the graph of
    the full power (x* + b*)^k, pure terms included; composing it with the
    pure-term absorption collapses to the diagonal ``model_change``
    (x, y/delta, a/delta, nu b), which lands exactly on the model surface
    with gamma_i = C(k, i).  Both identities are verified symbolically.
    """
    if detection.kind != BINOMIAL:
        raise NormalFormError("normalization requires a binomial detection")
    k = s.k
    delta, nu = detection.delta, detection.nu
    inv_delta = Fraction(1) / delta
    change = CoordinateChange(
        x_map=X,
        y_map=inv_delta * Y + X**k,
        a_map=inv_delta * A - (nu**k) * B**k,
        b_map=nu * B,
    )
    model_change = CoordinateChange(
        x_map=X,
        y_map=inv_delta * Y,
        a_map=inv_delta * A,
        b_map=nu * B,
    )
    # image of the shear map satisfies y* = a* + (x* + b*)^k, pure terms included
    full_power = change.y_map - change.a_map - (change.x_map + change.b_map) ** k
    if full_power != inv_delta * s.defining_poly:
        raise NormalFormError("binomial detection is inconsistent with the surface")
    normalized = ModelSurface(k, tuple(Fraction(comb(k, i)) for i in range(1, k)))
    model_residual = (
        model_change.y_map
        - model_change.a_map
        - normalized.p.substitute("b", model_change.b_map)
    )
    if model_residual != inv_delta * s.defining_poly:
        raise NormalFormError("model-form identity failed")
    return BinomialNormalization(change=change, model_change=model_change, normalized=normalized)


# -- singular locus ----------------------------------------------------------


@dataclass(frozen=True)
class SingularLocus:
    """Real zero set of P_xb in the (x, b) plane."""

    kind: str
    line: Optional[Poly] = None
    line_count: Optional[int] = None


def singular_locus(s: ModelSurface) -> SingularLocus:
    """POINT, LINE or PENCIL classification of the zero set of P_xb.

    LINE means a single real line carrying the full multiplicity k - 2;
    PENCIL reports the number of distinct real lines otherwise.
    """
    pxb = s.p_xb
    if pxb.is_zero:
        raise InvalidSurfaceError("P_xb vanishes identically")
    ex = min(exp[0] for exp, _ in pxb.items())
    eb = min(exp[3] for exp, _ in pxb.items())
    total = s.k - 2
    # dehomogenize the cofactor R (divisible by neither x nor b) at b = 1
    coeffs: Dict[int, Fraction] = {}
    for exp, c in pxb.items():
        coeffs[exp[0] - ex] = c
    r = [coeffs.get(i, Fraction(0)) for i in range(max(coeffs) + 1)]
    interior_roots = sturm.count_real_roots(r) if sturm.degree(r) > 0 else 0
    lines = (1 if ex > 0 else 0) + (1 if eb > 0 else 0) + interior_roots
    if lines == 0:
        return SingularLocus(POINT)
    if lines == 1:
        if ex == total:
            return SingularLocus(LINE, line=X)
        if eb == total:
            return SingularLocus(LINE, line=B)
        if ex == 0 and eb == 0:
            sf = sturm.square_free_part(r)
            if sturm.degree(sf) == 1:
                root = -sf[0] / sf[1]
                line = X - root * B
                lead = pxb.coefficient((total, 0, 0, 0))
                if lead != 0 and pxb == lead * line**total:
                    return SingularLocus(LINE, line=normal_line(line))
        return SingularLocus(PENCIL, line_count=1)
    return SingularLocus(PENCIL, line_count=lines)


def normal_line(line: Poly) -> Poly:
    """Clear denominators and fix the sign of a linear form in x, b."""
    from .linalg import normalize_primitive

    cx = line.coefficient((1, 0, 0, 0))
    cb = line.coefficient((0, 0, 0, 1))
    nx, nb = normalize_primitive((cx, cb))
    return nx * X + nb * B


# -- ODE solution-manifold correspondence -------------------------------------


def ode_reconstruction(
    s: ModelSurface,
    initial_derivative: Optional[Callable[[int], Poly]] = None,
) -> Poly:
    """Rebuild the graph from the Cauchy data of y^(k)(x) = 0.

    The j-th derivative at 0 is j! gamma_{k-j} b^(k-j) for j = 1 .. k-1 and
    y(0) = a; the Taylor sum then reproduces a + P(x, b).  A different
    ``initial_derivative`` can be injected to demonstrate failure.
    """
    k = s.k
    if initial_derivative is None:
        def initial_derivative(j: int) -> Poly:
            return Poly.monomial((0, 0, 0, k - j), factorial(j) * s.gamma[k - j - 1])
    result = A
    for j in range(1, k):
        term = initial_derivative(j) * Fraction(1, factorial(j)) * X**j
        result = result + term
    return result


def _strip_pure(p: Poly) -> Poly:
    return p - _pure_x_part(p) - _pure_b_part(p)


def ode_manifold_check(
    s: ModelSurface,
    initial_derivative: Optional[Callable[[int], Poly]] = None,
) -> bool:
    """Exact identity test between the Taylor rebuild and y = a + P(x, b).

    Pure b and x terms are discarded on both sides before comparison.
    """
    rebuilt = ode_reconstruction(s, initial_derivative)
    return _strip_pure(rebuilt) == _strip_pure(A + s.p)

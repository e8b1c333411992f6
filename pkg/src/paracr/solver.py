"""Per-weight ansatz, exact kernel computation, and the graded algebra.

For a fixed weight m the unknown field has one coefficient per admissible
monomial: alpha and beta monomials a^i b^j satisfy ki + j = m + k and
ki + j = m + 1, xi and eta monomials x^i y^j satisfy i + kj = m + 1 and
i + kj = m + k.  The tangency residual is linear in these unknowns, so the
solution space per weight is the kernel of an exact rational matrix.

``brute_force_check`` rebuilds the same linear system by evaluating the
residual at random rational points (interpolation style) and runs an
unrelated elimination routine; disagreement with ``solve_weight`` is a hard
failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .poly import Exponents, Poly, order_key
from .surface import ModelSurface, ParaVectorField, tangency_residual

COMPONENTS = ("alpha", "beta", "xi", "eta")

_ORACLE_SEED = 0x5EED


class OracleMismatchError(AssertionError):
    """The interpolation oracle disagrees with the symbolic kernel."""


@dataclass(frozen=True)
class WeightAnsatz:
    """Unknown layout for one weight: ordered (component, monomial) slots."""

    surface: ModelSurface
    weight: int
    unknowns: Tuple[Tuple[str, Exponents], ...]

    def __len__(self) -> int:
        return len(self.unknowns)

    def unit_field(self, index: int) -> ParaVectorField:
        """The field with a single monomial of coefficient 1 in slot ``index``."""
        comp, exp = self.unknowns[index]
        polys = {name: Poly.zero() for name in COMPONENTS}
        polys[comp] = Poly.monomial(exp)
        return ParaVectorField(polys["alpha"], polys["beta"], polys["xi"], polys["eta"])

    def field_from_vector(self, vec: Sequence[Fraction]) -> ParaVectorField:
        parts: Dict[str, Dict[Exponents, Fraction]] = {name: {} for name in COMPONENTS}
        for (comp, exp), c in zip(self.unknowns, vec):
            if c != 0:
                parts[comp][exp] = Fraction(c)
        return ParaVectorField(
            Poly(parts["alpha"]), Poly(parts["beta"]), Poly(parts["xi"]), Poly(parts["eta"])
        )

    def vector_from_field(self, v: ParaVectorField) -> Tuple[Fraction, ...]:
        comps = {"alpha": v.alpha, "beta": v.beta, "xi": v.xi, "eta": v.eta}
        return tuple(comps[comp].coefficient(exp) for comp, exp in self.unknowns)


def _ab_monomials(k: int, wdeg: int) -> List[Exponents]:
    # a^i b^j with k i + j = wdeg
    if wdeg < 0:
        return []
    exps = [(0, 0, i, wdeg - k * i) for i in range(wdeg // k + 1)]
    return sorted(exps, key=order_key)


def _xy_monomials(k: int, wdeg: int) -> List[Exponents]:
    # x^i y^j with i + k j = wdeg
    if wdeg < 0:
        return []
    exps = [(wdeg - k * j, j, 0, 0) for j in range(wdeg // k + 1)]
    return sorted(exps, key=order_key)


def build_ansatz(s: ModelSurface, m: int) -> WeightAnsatz:
    """Enumerate the admissible monomials per component for weight m.

    Weights below -k admit no monomials and give the empty ansatz.
    """
    k = s.k
    unknowns: List[Tuple[str, Exponents]] = []
    unknowns += [("alpha", exp) for exp in _ab_monomials(k, m + k)]
    unknowns += [("beta", exp) for exp in _ab_monomials(k, m + 1)]
    unknowns += [("xi", exp) for exp in _xy_monomials(k, m + 1)]
    unknowns += [("eta", exp) for exp in _xy_monomials(k, m + k)]
    return WeightAnsatz(s, m, tuple(unknowns))


@dataclass(frozen=True)
class KernelBasis:
    """Solution space of the tangency condition at one weight."""

    weight: int
    basis: Tuple[ParaVectorField, ...]
    system_shape: Tuple[int, int]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def solve_weight(s: ModelSurface, m: int) -> KernelBasis:
    """Exact kernel of the per-weight tangency system.

    Basis fields are primitive-integer normalized with the first nonzero
    coefficient (in ansatz order) positive.  Results are cached; all
    returned values are immutable.
    """
    ansatz = build_ansatz(s, m)
    t = len(ansatz)
    if t == 0:
        return KernelBasis(m, (), (0, 0))
    residuals = [tangency_residual(ansatz.unit_field(i), s) for i in range(t)]
    monomials = sorted({exp for r in residuals for exp, _ in r.items()}, key=order_key)
    rows = [[r.coefficient(exp) for r in residuals] for exp in monomials]
    kernel = linalg.nullspace_bareiss(rows, t)
    basis = tuple(ansatz.field_from_vector(vec) for vec in kernel)
    return KernelBasis(m, basis, (len(monomials), t))


def _random_fraction(rng: random.Random) -> Fraction:
    num = rng.randint(-9, 9)
    den = rng.randint(1, 5)
    return Fraction(num, den)


def _surface_values(s: ModelSurface, x: Fraction, b: Fraction):
    # P, P_x, P_b straight from the coefficient sequence, no Poly machinery
    p = Fraction(0)
    p_x = Fraction(0)
    p_b = Fraction(0)
    k = s.k
    for i, g in enumerate(s.gamma, start=1):
        if g == 0:
            continue
        p += g * b**i * x ** (k - i)
        if k - i >= 1:
            p_x += g * (k - i) * b**i * x ** (k - i - 1)
        p_b += g * i * b ** (i - 1) * x ** (k - i)
    return p, p_x, p_b


def _residual_value(
    field: ParaVectorField, s: ModelSurface, x: Fraction, a: Fraction, b: Fraction
) -> Fraction:
    p, p_x, p_b = _surface_values(s, x, b)
    y = a + p
    eta = field.eta.eval_exact((x, y, 0, 0))
    xi = field.xi.eval_exact((x, y, 0, 0))
    alpha = field.alpha.eval_exact((0, 0, a, b))
    beta = field.beta.eval_exact((0, 0, a, b))
    return eta - alpha - beta * p_b - xi * p_x


def brute_force_check(s: ModelSurface, m: int) -> KernelBasis:
    """Interpolation-built kernel, compared against ``solve_weight``.

    The linear system is assembled from residual values at random rational
    points instead of symbolic coefficient extraction, and reduced with the
    Gauss-Jordan routine.  Dimension or span disagreement raises.
    """
    symbolic = solve_weight(s, m)
    ansatz = build_ansatz(s, m)
    t = len(ansatz)
    if t == 0:
        if symbolic.dimension != 0:
            raise OracleMismatchError(
                f"weight {m}: empty ansatz but symbolic dimension {symbolic.dimension}"
            )
        return KernelBasis(m, (), (0, 0))
    rng = random.Random((_ORACLE_SEED, s.k, tuple(s.gamma), m).__repr__())
    npoints = 2 * t + 16
    unit_fields = [ansatz.unit_field(i) for i in range(t)]
    rows = []
    for _ in range(npoints):
        x, a, b = (_random_fraction(rng) for _ in range(3))
        rows.append([_residual_value(f, s, x, a, b) for f in unit_fields])
    kernel = linalg.nullspace_gauss_jordan(rows, t)
    if len(kernel) != symbolic.dimension:
        raise OracleMismatchError(
            f"weight {m}: interpolation dimension {len(kernel)} "
            f"!= symbolic dimension {symbolic.dimension}"
        )
    symbolic_vectors = [ansatz.vector_from_field(f) for f in symbolic.basis]
    for vec in symbolic_vectors:
        for row in rows:
            if sum(rv * cv for rv, cv in zip(row, vec)) != 0:
                raise OracleMismatchError(
                    f"weight {m}: symbolic kernel vector fails a sampled equation"
                )
    if kernel and not linalg.same_span(kernel, symbolic_vectors, t):
        raise OracleMismatchError(f"weight {m}: kernel spans differ")
    basis = tuple(ansatz.field_from_vector(vec) for vec in kernel)
    return KernelBasis(m, basis, (npoints, t))


# -- full graded algebra -----------------------------------------------------


@dataclass(frozen=True)
class ClosureViolation:
    left: int
    right: int
    weight_sum: int

    def describe(self) -> str:
        return (
            f"bracket of generators {self.left} and {self.right} "
            f"(weight sum {self.weight_sum}) is outside the computed span"
        )


@dataclass(frozen=True)
class SymmetryAlgebra:
    """Concatenated kernel bases with exact structure constants."""

    surface: ModelSurface
    weight_cap: int
    generators: Tuple[Tuple[int, ParaVectorField], ...]
    structure_constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    closure_violations: Tuple[ClosureViolation, ...]

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(w for w, _ in self.generators)

    def fields(self) -> Tuple[ParaVectorField, ...]:
        return tuple(f for _, f in self.generators)


def _field_keys(fields: Sequence[ParaVectorField]) -> List[Tuple[int, Exponents]]:
    keys = set()
    for f in fields:
        for ci, comp in enumerate(f.components()):
            for exp, _ in comp.items():
                keys.add((ci, exp))
    return sorted(keys, key=lambda key: (key[0], order_key(key[1])))


def _vectorize(f: ParaVectorField, keys: Sequence[Tuple[int, Exponents]]) -> Tuple[Fraction, ...]:
    comps = f.components()
    return tuple(comps[ci].coefficient(exp) for ci, exp in keys)


def solve_algebra(s: ModelSurface, weight_cap: Optional[int] = None) -> SymmetryAlgebra:
    """Kernel bases for every weight in [-k, weight_cap] plus brackets.

    Structure constants are found by expressing each pairwise bracket in the
    generator basis with an exact linear solve.  A bracket outside the span
    is recorded as a closure violation, not dropped.
    """
    if weight_cap is None:
        weight_cap = 3 * s.k
    if weight_cap < s.k:
        raise ValueError(f"weight_cap must be at least k={s.k}, got {weight_cap}")
    generators: List[Tuple[int, ParaVectorField]] = []
    for m in range(-s.k, weight_cap + 1):
        for f in solve_weight(s, m).basis:
            generators.append((m, f))
    fields = [f for _, f in generators]
    n = len(fields)
    zero_row = tuple(Fraction(0) for _ in range(n))
    table: List[List[Tuple[Fraction, ...]]] = [[zero_row] * n for _ in range(n)]
    violations: List[ClosureViolation] = []
    for i in range(n):
        for j in range(i + 1, n):
            br = fields[i].bracket(fields[j])
            if br.is_zero:
                continue
            keys = _field_keys(fields + [br])
            basis_vectors = [_vectorize(f, keys) for f in fields]
            coeffs = linalg.solve_in_span(basis_vectors, _vectorize(br, keys))
            if coeffs is None:
                violations.append(
                    ClosureViolation(i, j, generators[i][0] + generators[j][0])
                )
                continue
            table[i][j] = tuple(coeffs)
            table[j][i] = tuple(-c for c in coeffs)
    return SymmetryAlgebra(
        surface=s,
        weight_cap=weight_cap,
        generators=tuple(generators),
        structure_constants=tuple(tuple(row) for row in table),
        closure_violations=tuple(violations),
    )


# -- named generator fields --------------------------------------------------


def vertical_translation() -> ParaVectorField:
    """d_a + d_y, the weight -k generator of every model surface."""
    one = Poly.constant(1)
    zero = Poly.zero()
    return ParaVectorField(one, zero, zero, one)


def grading_field(k: int) -> ParaVectorField:
    """k a d_a + b d_b + x d_x + k y d_y, the weighted dilation generator."""
    return ParaVectorField(
        Poly.monomial((0, 0, 1, 0), k),
        Poly.monomial((0, 0, 0, 1)),
        Poly.monomial((1, 0, 0, 0)),
        Poly.monomial((0, 1, 0, 0), k),
    )


def relative_dilation_field(k: int, iota: int) -> ParaVectorField:
    """(iota - k) b d_b + iota x d_x, extra weight-0 generator of monomials."""
    zero = Poly.zero()
    return ParaVectorField(
        zero,
        Poly.monomial((0, 0, 0, 1), iota - k),
        Poly.monomial((1, 0, 0, 0), iota),
        zero,
    )


def special_conformal_field(k: int, iota: int) -> ParaVectorField:
    """a^2 d_a + ab/iota d_b + xy/(k - iota) d_x + y^2 d_y, weight k."""
    return ParaVectorField(
        Poly.monomial((0, 0, 2, 0)),
        Poly.monomial((0, 0, 1, 1), Fraction(1, iota)),
        Poly.monomial((1, 1, 0, 0), Fraction(1, k - iota)),
        Poly.monomial((0, 2, 0, 0)),
    )


def oblique_translation_field(k: int, delta: Fraction, nu: Fraction) -> ParaVectorField:
    """Weight -1 generator of the binomial surfaces.

    Solving the tangency condition gives
    k delta nu^k b^(k-1) d_a + d_b - nu d_x + k delta nu x^(k-1) d_y.
    """
    delta = Fraction(delta)
    nu = Fraction(nu)
    return ParaVectorField(
        Poly.monomial((0, 0, 0, k - 1), k * delta * nu**k),
        Poly.constant(1),
        Poly.constant(-nu),
        Poly.monomial((k - 1, 0, 0, 0), k * delta * nu),
    )

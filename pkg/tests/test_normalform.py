import random
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from paracr import sturm
from paracr.normalform import (
    BINOMIAL,
    GENERIC,
    LINE,
    MONOMIAL,
    PENCIL,
    POINT,
    CaseDetection,
    DefiningFunction,
    NormalFormError,
    detect_case,
    finite_type,
    normalize_binomial,
    ode_manifold_check,
    ode_reconstruction,
    singular_locus,
)
from paracr.poly import Poly
from paracr.surface import ModelSurface
from conftest import binomial_gamma, monomial_gamma


def P(text):
    return Poly.parse(text)


class TestDefiningFunction:
    def test_rejects_y(self):
        with pytest.raises(NormalFormError):
            DefiningFunction(P("y"))

    def test_rejects_constant(self):
        with pytest.raises(NormalFormError):
            DefiningFunction(P("1 + b"))

    def test_rejects_linear_a(self):
        with pytest.raises(NormalFormError):
            DefiningFunction(P("a + b x"))


class TestFiniteType:
    def test_model_monomial(self):
        res = finite_type(DefiningFunction(P("b^2 x^2")))
        assert res.is_finite and res.k == 4
        assert res.gamma == (Fraction(0), Fraction(1), Fraction(0))

    def test_a_divisible_is_infinite(self):
        assert finite_type(DefiningFunction(P("a b"))).kind == "INFINITE"

    def test_pure_term_removal(self):
        res = finite_type(DefiningFunction(P("x^3 + b x^2")))
        assert res.is_finite and res.k == 3
        assert res.gamma == (Fraction(1), Fraction(0))
        assert res.normalized == P("b x^2")

    def test_no_x_dependence_is_infinite(self):
        assert finite_type(DefiningFunction(P("b^2 + a^2 b"))).kind == "INFINITE"

    def test_cancellation_to_infinite(self):
        # y = a(1 + x) + b^2 (1 + x) straightens to an a-divisible graph
        res = finite_type(DefiningFunction(P("a x + b^2 x + b^2")))
        assert res.kind == "INFINITE"

    def test_hidden_mixed_term(self):
        # substitution a -> a - b^2 creates the decisive mixed term
        res = finite_type(DefiningFunction(P("b^2 + a b x")))
        assert res.is_finite
        assert res.k == 4
        assert res.gamma == (Fraction(0), Fraction(0), Fraction(-1))

    def test_type_two(self):
        res = finite_type(DefiningFunction(P("b x")))
        assert res.is_finite and res.k == 2

    def test_idempotent_after_normalization(self):
        rng = random.Random(77)
        for _ in range(40):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                exp = (rng.randint(0, 2), 0, rng.randint(0, 2), rng.randint(0, 2))
                terms[exp] = Fraction(rng.randint(-3, 3))
            terms.pop((0, 0, 0, 0), None)
            terms.pop((0, 0, 1, 0), None)
            phi = Poly(terms)
            first = finite_type(DefiningFunction(phi))
            if not first.is_finite:
                continue
            again = finite_type(DefiningFunction(first.normalized))
            assert again.is_finite
            assert (again.k, again.gamma) == (first.k, first.gamma)
            assert again.normalized == first.normalized


class TestDetectCase:
    def test_binomial_unit(self):
        det = detect_case(ModelSurface(3, (3, 3)))
        assert det.kind == BINOMIAL
        assert (det.delta, det.nu) == (Fraction(1), Fraction(1))

    def test_monomial(self):
        det = detect_case(ModelSurface(4, (0, 1, 0)))
        assert det.kind == MONOMIAL and det.iota == 2

    def test_generic_zero_gap(self):
        assert detect_case(ModelSurface(4, (1, 0, 1))).kind == GENERIC

    def test_scaled_binomial(self):
        det = detect_case(ModelSurface(4, binomial_gamma(4, 2, 3)))
        assert det.kind == BINOMIAL
        assert (det.delta, det.nu) == (Fraction(2), Fraction(3))

    def test_negative_nu_binomial(self):
        det = detect_case(ModelSurface(4, binomial_gamma(4, 1, -2)))
        assert det.kind == BINOMIAL
        assert (det.delta, det.nu) == (Fraction(1), Fraction(-2))

    def test_all_nonzero_but_not_binomial(self):
        assert detect_case(ModelSurface(4, (1, 1, 1))).kind == GENERIC

    def test_scaling_equivariance(self):
        rng = random.Random(41)
        for _ in range(20):
            k = rng.randint(3, 6)
            kind = rng.choice(["m", "b", "g"])
            if kind == "m":
                gamma = monomial_gamma(k, rng.randint(1, k - 1), rng.randint(1, 4))
            elif kind == "b":
                gamma = binomial_gamma(k, rng.randint(1, 3), rng.randint(1, 3))
            else:
                gamma = tuple(Fraction(rng.randint(0, 2)) for _ in range(k - 1))
                if all(g == 0 for g in gamma):
                    continue
            c = Fraction(rng.choice([2, 3, Fraction(1, 2), -1]))
            before = detect_case(ModelSurface(k, gamma))
            after = detect_case(ModelSurface(k, tuple(c * g for g in gamma)))
            assert before.kind == after.kind
            if before.kind == BINOMIAL:
                assert after.delta == c * before.delta
                assert after.nu == before.nu


class TestNormalizeBinomial:
    def test_unit_case_maps(self):
        s = ModelSurface(3, (3, 3))
        res = normalize_binomial(s, detect_case(s))
        assert res.change.a_map == P("a - b^3")
        assert res.change.y_map == P("y + x^3")
        assert res.normalized.gamma == (Fraction(3), Fraction(3))

    def test_scaled_case_maps(self):
        s = ModelSurface(3, (6, 6))
        res = normalize_binomial(s, detect_case(s))
        assert res.change.a_map == P("1/2 a - b^3")
        assert res.change.y_map == P("1/2 y + x^3")
        assert res.normalized.gamma == (Fraction(3), Fraction(3))

    def test_redetects_as_unit_binomial(self):
        for k, delta, nu in [(3, 1, 1), (4, 2, 3), (5, 1, 1), (5, 2, 3)]:
            s = ModelSurface(k, binomial_gamma(k, delta, nu))
            res = normalize_binomial(s, detect_case(s))
            redet = detect_case(res.normalized)
            assert redet.kind == BINOMIAL
            assert (redet.delta, redet.nu) == (Fraction(1), Fraction(1))

    def test_model_identity(self):
        # the diagonal map carries the defining polynomial onto the model one
        for k, delta, nu in [(3, 2, 1), (4, 1, 2)]:
            s = ModelSurface(k, binomial_gamma(k, delta, nu))
            res = normalize_binomial(s, detect_case(s))
            mc = res.model_change
            image = mc.y_map - mc.a_map - res.normalized.p.substitute("b", mc.b_map)
            assert image == Fraction(1, delta) * s.defining_poly

    def test_rejects_non_binomial(self):
        s = ModelSurface(4, (1, 0, 1))
        with pytest.raises(NormalFormError):
            normalize_binomial(s, detect_case(s))


class TestSingularLocus:
    def test_pencil(self):
        locus = singular_locus(ModelSurface(4, (0, 1, 0)))
        assert locus.kind == PENCIL and locus.line_count == 2

    def test_line_x(self):
        locus = singular_locus(ModelSurface(4, (1, 0, 0)))
        assert locus.kind == LINE and locus.line == P("x")

    def test_point(self):
        assert singular_locus(ModelSurface(4, (1, 0, 1))).kind == POINT

    def test_diagonal_line(self):
        locus = singular_locus(ModelSurface(4, binomial_gamma(4)))
        assert locus.kind == LINE and locus.line == P("x + b")

    def test_single_line_partial_power_is_pencil(self):
        # P_xb = 6 b x^2 + 12 b^3: one real line but not a full power
        locus = singular_locus(ModelSurface(5, (0, 1, 0, Fraction(3, 5))))
        assert locus.kind == PENCIL and locus.line_count == 1

    def test_swap_invariance(self):
        rng = random.Random(52)
        for _ in range(25):
            k = rng.randint(3, 6)
            gamma = [Fraction(rng.randint(-2, 2)) for _ in range(k - 1)]
            if all(g == 0 for g in gamma):
                gamma[0] = Fraction(1)
            s1 = ModelSurface(k, tuple(gamma))
            s2 = ModelSurface(k, tuple(reversed(gamma)))
            assert singular_locus(s1).kind == singular_locus(s2).kind


class TestSturmOracle:
    def test_known_roots(self):
        # (t-1)(t+2)(t^2+1) = t^4 + t^3 - t^2 + t - 2: two distinct real roots
        coeffs = [Fraction(-2), Fraction(1), Fraction(-1), Fraction(1), Fraction(1)]
        assert sturm.count_real_roots(coeffs) == 2

    def test_repeated_roots_counted_once(self):
        # (t-1)^2
        assert sturm.count_real_roots([Fraction(1), Fraction(-2), Fraction(1)]) == 1

    def test_against_constructed_and_floating(self):
        # constructed forms carry a known distinct-real-root count; the
        # floating finder is consulted only on simple roots, where it is
        # reliable within its tolerance
        rng = random.Random(63)
        checked = 0
        while checked < 100:
            real_roots = sorted(rng.sample(range(-8, 9), rng.randint(0, 4)))
            n_quad = rng.randint(0, 2)
            repeat = rng.random() < 0.3
            coeffs = [Fraction(1)]

            def mul(c1, c2):
                out = [Fraction(0)] * (len(c1) + len(c2) - 1)
                for i, a in enumerate(c1):
                    for j, b in enumerate(c2):
                        out[i + j] += a * b
                return out

            for r in real_roots:
                power = rng.randint(1, 2) if repeat else 1
                for _ in range(power):
                    coeffs = mul(coeffs, [Fraction(-r), Fraction(1)])
            for _ in range(n_quad):
                # irreducible t^2 + p t + q with roots at least 1 off the axis
                p = rng.randint(-3, 3)
                q = rng.randint(p * p // 4 + 1, p * p // 4 + 5)
                coeffs = mul(coeffs, [Fraction(q), Fraction(p), Fraction(1)])
            if sturm.degree(coeffs) > 8 or sturm.degree(coeffs) < 1:
                continue
            checked += 1
            expected = len(set(real_roots))
            assert sturm.count_real_roots(coeffs) == expected
            if repeat:
                continue
            np_roots = np.roots([float(c) for c in reversed(coeffs)])
            reals = [z.real for z in np_roots if abs(z.imag) < 1e-6]
            distinct = []
            for r in sorted(reals):
                if not distinct or abs(r - distinct[-1]) > 1e-4:
                    distinct.append(r)
            assert len(distinct) == expected


class TestOdeManifold:
    def test_reproduces_p(self):
        s = ModelSurface(3, (1, 1))
        rebuilt = ode_reconstruction(s)
        assert rebuilt == P("a + b x^2 + b^2 x")
        assert ode_manifold_check(s)

    def test_last_coefficient_only(self):
        k = 5
        s = ModelSurface(k, monomial_gamma(k, k - 1))
        assert ode_manifold_check(s)
        rebuilt = ode_reconstruction(s)
        assert rebuilt == P("a + b^4 x")

    def test_wrong_factorial_fails(self):
        s = ModelSurface(3, (1, 1))

        def wrong(j):
            return Poly.monomial((0, 0, 0, 3 - j), factorial(j + 1) * s.gamma[3 - j - 1])

        assert not ode_manifold_check(s, wrong)

    def test_whole_suite(self, suite):
        for s in suite:
            assert ode_manifold_check(s)

import random
from fractions import Fraction

import pytest

from newtonpoly.closedform import closed_p, closed_q
from newtonpoly.errors import DomainError, StructuralError
from newtonpoly.newton import QuadraticCoeffs, iterate_value
from newtonpoly.quadfield import (
    MobiusMap,
    QuadExt,
    QuadExtPoly,
    conjugacy_check,
    phi_apply,
    phi_inverse,
    phi_map,
    root_form_pair,
    roots,
)

FIVE_TRIPLES = ((1, 0, -1), (1, -3, 2), (2, 1, -3), (1, 0, 1), (3, -2, -1))
# discriminants: 4, 1, 25, -4, 16 — add non-square ones so the radical
# arithmetic is actually exercised
IRRATIONAL_TRIPLES = ((1, 1, -1), (1, 0, 2), (2, -3, -4))


class TestQuadExt:
    def test_multiplication_rule(self):
        left = QuadExt(Fraction(1), Fraction(2), 5)
        right = QuadExt(Fraction(3), Fraction(-1), 5)
        product = left * right
        # (1 + 2 sqrt5)(3 - sqrt5) = 3 - sqrt5 + 6 sqrt5 - 2*5 = -7 + 5 sqrt5
        assert product == QuadExt(Fraction(-7), Fraction(5), 5)

    def test_perfect_square_radicand_folds(self):
        value = QuadExt(Fraction(1, 2), Fraction(1, 2), 9)
        assert value.is_rational
        assert value.as_fraction() == 2

    def test_negative_radicand_stays_symbolic(self):
        value = QuadExt(0, Fraction(1, 2), -4)
        assert not value.is_rational
        assert value * value == QuadExt(-1, 0, -4)

    def test_inverse_and_norm(self):
        value = QuadExt(1, 1, 2)
        assert value.norm() == -1
        assert value * value.inverse() == 1

    def test_zero_norm_not_invertible(self):
        with pytest.raises(DomainError):
            QuadExt(0, 0, 5).inverse()

    def test_mixed_radicands_rejected(self):
        with pytest.raises(StructuralError):
            QuadExt(1, 1, 2) + QuadExt(1, 1, 3)

    def test_rational_operand_adopts_radicand(self):
        assert QuadExt(1, 1, 2) + QuadExt(2, 0, 7) == QuadExt(3, 1, 2)
        assert QuadExt(1, 1, 2) + Fraction(1, 2) == QuadExt(Fraction(3, 2), 1, 2)

    def test_equality_ignores_radicand_for_rationals(self):
        assert QuadExt(Fraction(5, 4), 0, 4) == QuadExt(Fraction(5, 4), 0, 8)
        assert QuadExt(Fraction(5, 4), 0, 4) == Fraction(5, 4)

    def test_powers(self):
        golden = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
        # golden ratio: phi^2 = phi + 1
        assert golden ** 2 == golden + 1
        assert golden ** -1 == golden - 1

    def test_json_round_trip(self):
        value = QuadExt(Fraction(5, 4), Fraction(-2, 3), -7)
        assert QuadExt.from_dict(value.to_dict()) == value
        assert value.to_dict() == {"u": "5/4", "v": "-2/3", "d": -7}

    def test_immutability(self):
        value = QuadExt(1, 2, 3)
        with pytest.raises(AttributeError):
            value.u = Fraction(9)


class TestRoots:
    def test_rational_roots(self):
        r1, r2 = roots(QuadraticCoeffs(1, 0, -1))
        assert (r1, r2) == (1, -1)
        r1, r2 = roots(QuadraticCoeffs(1, -3, 2))
        assert (r1, r2) == (2, 1)

    def test_complex_roots(self):
        r1, r2 = roots(QuadraticCoeffs(1, 0, 1))
        assert r1 == QuadExt(0, Fraction(1, 2), -4)
        assert r2 == QuadExt(0, Fraction(-1, 2), -4)

    def test_vieta(self):
        rng = random.Random(23)
        for _ in range(50):
            a = rng.choice([i for i in range(-9, 10) if i])
            b, c = rng.randint(-9, 9), rng.randint(-9, 9)
            coeffs = QuadraticCoeffs(a, b, c)
            if coeffs.discriminant == 0:
                continue
            r1, r2 = roots(coeffs)
            assert r1 + r2 == Fraction(-b, a)
            assert r1 * r2 == Fraction(c, a)

    def test_double_root_rejected(self):
        with pytest.raises(DomainError):
            roots(QuadraticCoeffs(1, 2, 1))

    def test_non_integer_coefficients_rejected(self):
        with pytest.raises(StructuralError):
            roots(QuadraticCoeffs(Fraction(1, 2), 0, -1))


class TestPhi:
    def test_sends_r1_to_zero(self):
        pair = roots(QuadraticCoeffs(1, -3, 2))
        assert phi_apply(pair, pair[0]) == 0

    def test_worked_values(self):
        assert phi_apply(roots(QuadraticCoeffs(1, 0, -1)), 2) == Fraction(1, 3)
        assert phi_apply(roots(QuadraticCoeffs(1, -3, 2)), 3) == Fraction(1, 2)

    def test_pole_at_r2(self):
        pair = roots(QuadraticCoeffs(1, 0, -1))
        with pytest.raises(DomainError):
            phi_apply(pair, -1)

    def test_inverse_worked_values(self):
        pair = roots(QuadraticCoeffs(1, 0, -1))
        assert phi_inverse(pair, 0) == pair[0]
        assert phi_inverse(pair, Fraction(1, 9)) == Fraction(5, 4)
        pair = roots(QuadraticCoeffs(1, -3, 2))
        assert phi_inverse(pair, Fraction(1, 4)) == Fraction(7, 3)

    def test_inverse_pole_at_one(self):
        with pytest.raises(DomainError):
            phi_inverse(roots(QuadraticCoeffs(1, 0, -1)), 1)

    def test_round_trip_identity(self):
        rng = random.Random(31)
        for triple in FIVE_TRIPLES + IRRATIONAL_TRIPLES:
            pair = roots(QuadraticCoeffs(*triple))
            checked = 0
            while checked < 20:
                z = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                lifted = QuadExt.lift(z, pair[0].d)
                if lifted == pair[1]:
                    continue
                w = phi_apply(pair, lifted)
                if w == 1:
                    continue
                assert phi_inverse(pair, w) == lifted
                checked += 1

    def test_mobius_map_determinant_guard(self):
        one = QuadExt(1, 0, 0)
        with pytest.raises(DomainError):
            MobiusMap(one, one, one, one)

    def test_phi_map_inverse_composition(self):
        pair = roots(QuadraticCoeffs(1, 1, -1))   # d = 5
        mobius = phi_map(pair)
        z = QuadExt.lift(Fraction(3, 7), 5)
        assert mobius.inverse().apply(mobius.apply(z)) == z


class TestConjugacy:
    def test_single_step_samples(self):
        report = conjugacy_check(QuadraticCoeffs(1, 0, -1), 1, [2])
        assert report.passed
        trace = report.traces[0]
        assert trace.newton_value == Fraction(5, 4)
        assert trace.conjugacy_value == Fraction(5, 4)

    def test_worked_sample_135(self):
        report = conjugacy_check(QuadraticCoeffs(1, -3, 2), 1, [3])
        assert report.passed
        assert report.traces[0].newton_value == Fraction(7, 3)

    def test_fixed_point_sample(self):
        report = conjugacy_check(QuadraticCoeffs(1, -3, 2), 2, [2])
        assert report.passed
        assert report.traces[0].newton_value == 2

    def test_pole_samples_are_skipped_with_reason(self):
        # z = 0 is the critical point of x^2 - 1: the Newton route poles
        report = conjugacy_check(QuadraticCoeffs(1, 0, -1), 1, [0, 2])
        skipped = [t for t in report.traces if t.status == "skipped"]
        assert len(skipped) == 1
        assert "pole" in skipped[0].reason
        assert report.passed
        assert report.checked == 1

    def test_r2_sample_skipped(self):
        report = conjugacy_check(QuadraticCoeffs(1, 0, -1), 1, [-1])
        assert report.traces[0].status == "skipped"
        assert not report.passed      # nothing was actually checked

    @pytest.mark.parametrize("triple", FIVE_TRIPLES + IRRATIONAL_TRIPLES)
    def test_agreement_up_to_n4(self, triple):
        samples = [Fraction(s) for s in
                   ("2", "3", "4", "5", "7", "-2", "1/2", "1/3", "2/3", "5/4",
                    "-5/3", "7/5", "9/7", "11/3", "-7/2")]
        for n in range(1, 5):
            report = conjugacy_check(QuadraticCoeffs(*triple), n, samples)
            assert report.passed
            assert report.checked >= 10

    def test_report_dict(self):
        report = conjugacy_check(QuadraticCoeffs(1, 0, -1), 1, [2, 0])
        data = report.to_dict()
        assert data["verdict"] == "pass"
        assert data["checked"] == 1
        assert len(data["traces"]) == 2


class TestRootForm:
    def test_n0_collapses(self):
        p, q = root_form_pair(QuadraticCoeffs(1, 1, -1), 0)
        assert p.to_multipoly() == closed_p(0).substitute({"a": 1, "b": 1, "c": -1})
        assert q.to_multipoly() == closed_q(0).substitute({"a": 1, "b": 1, "c": -1})

    def test_n1_worked_examples(self):
        p, q = root_form_pair(QuadraticCoeffs(1, 0, -1), 1)
        assert p.to_multipoly() == closed_p(1).substitute({"a": 1, "b": 0, "c": -1})
        assert [c.as_fraction() for _, c in p.coefficients()] == [1, 1]
        p, q = root_form_pair(QuadraticCoeffs(1, -3, 2), 1)
        assert [c.as_fraction() for _, c in q.coefficients()] == [2, -3]

    @pytest.mark.parametrize("triple", FIVE_TRIPLES + IRRATIONAL_TRIPLES)
    def test_matches_substituted_closed_forms(self, triple):
        a, b, c = triple
        coeffs = QuadraticCoeffs(a, b, c)
        bindings = {"a": a, "b": b, "c": c}
        for n in range(5):
            p, q = root_form_pair(coeffs, n)
            assert p.radical_part_is_zero()
            assert q.radical_part_is_zero()
            assert p.to_multipoly() == closed_p(n).substitute(bindings)
            assert q.to_multipoly() == closed_q(n).substitute(bindings)

    def test_degenerate_discriminant_rejected(self):
        with pytest.raises(DomainError):
            root_form_pair(QuadraticCoeffs(1, 2, 1), 1)

    def test_quadextpoly_arithmetic(self):
        d = 5
        one = QuadExt(1, 0, d)
        root = QuadExt(0, 1, d)
        linear = QuadExtPoly({1: one, 0: -root})      # x - sqrt5
        square = linear * linear
        assert square.coefficient(2) == 1
        assert square.coefficient(1) == QuadExt(0, -2, d)
        assert square.coefficient(0) == 5
        assert (square - square).degree == 0


class TestCrossRouteValue:
    def test_rootform_evaluates_like_newton_composition(self):
        coeffs = QuadraticCoeffs(1, 1, -1)
        p, q = root_form_pair(coeffs, 3)
        z = Fraction(5, 7)
        numerator = sum(
            c.as_fraction() * z ** power for power, c in p.coefficients())
        denominator = sum(
            c.as_fraction() * z ** power for power, c in q.coefficients())
        assert numerator / denominator == iterate_value(coeffs, z, 3)

"""Euler classes and per-fixed-point localization terms."""

from fractions import Fraction

import pytest

from nekrasov.characters import char_merge, mono_t
from nekrasov.diagrams import (
    FixedPointX1,
    FrameData,
    HalfInt,
    diagram_tuples,
    enum_fixed_points_x0,
)
from nekrasov.exact import (
    EPS1,
    EPS2,
    UNIT_TERM,
    factored_term,
    linear_form,
    term_eval,
    term_mul,
    var_a,
    var_m,
)
from nekrasov.localization import (
    VanishingWeight,
    ell_factor,
    euler_class,
    matter_euler,
    term_p2,
    term_x0,
    term_x1,
    weight_form,
)


def H(text):
    return HalfInt.parse(str(text))


def fp_x1(kvec, y1, y2):
    return FixedPointX1(tuple(kvec), tuple(y1), tuple(y2))


def counted(*monos):
    out = {}
    for m in monos:
        out[m] = out.get(m, 0) + 1
    return out


def point(e1, e2, a, m1, m2):
    return {
        EPS1: Fraction(e1),
        EPS2: Fraction(e2),
        var_a(1): Fraction(a),
        var_m(1): Fraction(m1),
        var_m(2): Fraction(m2),
    }


GENERIC = point(1, 3, Fraction(7, 2), 5, -2)


def matter_values(p, *weights):
    """Independent closed form: prod over masses of (w + m_f - (e1+e2)/2)."""
    half = (p[EPS1] + p[EPS2]) / 2
    total = Fraction(1)
    for f in (1, 2):
        for w in weights:
            total *= w + p[var_m(f)] - half
    return total


class TestEulerClass:
    def test_single_monomial(self):
        got = euler_class(counted(mono_t(1, 1, {1: 1})))
        assert got == factored_term(1, [(linear_form({EPS1: 1, EPS2: 1, var_a(1): 1}), 1)])

    def test_empty_is_unit(self):
        assert euler_class({}) == UNIT_TERM

    def test_constant_monomial_vanishes(self):
        with pytest.raises(VanishingWeight):
            euler_class(counted(mono_t(0, 0)))

    def test_additive_over_direct_sum(self):
        a = counted(mono_t(1, 0), mono_t(0, 2, {1: 1}))
        b = counted(mono_t(1, 0), mono_t(-1, 1))
        lhs = euler_class(char_merge(a, b))
        rhs = term_mul(euler_class(a), euler_class(b))
        assert lhs == rhs

    def test_weight_form_reads_exponents(self):
        form = weight_form(mono_t(-2, 3, {1: -1}))
        assert form == linear_form({EPS1: -2, EPS2: 3, var_a(1): -1})


class TestMatterEuler:
    def test_empty_is_unit(self):
        assert matter_euler({}, 1) == UNIT_TERM

    def test_single_framing_weight(self):
        got = matter_euler(counted(mono_t(0, 0, {1: 1})), 1)
        assert term_eval(got, GENERIC) == matter_values(GENERIC, GENERIC[var_a(1)])

    def test_shift_combines_with_torus_weight(self):
        got = matter_euler(counted(mono_t(1, 1, {1: 1})), 1)
        # weight a1 + eps1 + eps2, shifted: a1 + m_f + (eps1+eps2)/2
        p = GENERIC
        expected = Fraction(1)
        for f in (1, 2):
            expected *= p[var_a(1)] + p[var_m(f)] + (p[EPS1] + p[EPS2]) / 2
        assert term_eval(got, p) == expected


class TestPlaneTerms:
    def test_empty_tuple_is_unit(self):
        assert term_p2(1, [()]) == UNIT_TERM

    def test_single_box(self):
        got = term_eval(term_p2(1, [(1,)]), GENERIC)
        p = GENERIC
        expected = matter_values(p, p[var_a(1)]) / (p[EPS1] * p[EPS2])
        assert got == expected

    def test_column_of_two(self):
        got = term_eval(term_p2(1, [(2,)]), GENERIC)
        p = GENERIC
        expected = matter_values(p, p[var_a(1)], p[var_a(1)] - p[EPS2]) / (
            2 * p[EPS2] * p[EPS2] * (p[EPS1] - p[EPS2]) * p[EPS1]
        )
        assert got == expected

    def test_generic_points_are_finite_up_to_size_3(self):
        for r, values in ((1, GENERIC), (2, None)):
            if r == 2:
                values = dict(GENERIC)
                values[var_a(2)] = Fraction(11, 3)
                values[var_m(3)] = Fraction(-9, 4)
                values[var_m(4)] = Fraction(13)
            for total in range(4):
                for tup in diagram_tuples(r, total):
                    term = term_p2(r, tup)  # no VanishingWeight
                    term_eval(term, values)  # no PoleError at a generic point


class TestOrbifoldTerms:
    def test_single_box_dim_zero(self):
        frame = FrameData(1, 0)
        (fp,) = enum_fixed_points_x0(frame, 1, 0)
        got = term_x0(frame, fp)
        assert got.factors == matter_euler(counted(mono_t(0, 0, {1: 1})), 1).factors

    def test_two_box_pair(self):
        frame = FrameData(1, 0)
        column, row = enum_fixed_points_x0(frame, 1, 1)
        p = GENERIC
        col_val = term_eval(term_x0(frame, column), p)
        row_val = term_eval(term_x0(frame, row), p)
        num = matter_values(p, p[var_a(1)])
        assert col_val == num / (2 * p[EPS2] * (p[EPS1] - p[EPS2]))
        assert row_val == num / (2 * p[EPS1] * (p[EPS2] - p[EPS1]))

    def test_pair_sums_to_partial_fraction(self):
        # 1/(2 e2 (e1-e2)) + 1/(2 e1 (e2-e1)) = 1/(2 e1 e2)
        frame = FrameData(1, 0)
        fps = enum_fixed_points_x0(frame, 1, 1)
        for p in (GENERIC, point(2, -5, 1, 0, 4), point(Fraction(1, 3), 9, -2, 1, 1)):
            total = sum(term_eval(term_x0(frame, fp), p) for fp in fps)
            expected = matter_values(p, p[var_a(1)]) / (2 * p[EPS1] * p[EPS2])
            assert total == expected


class TestResolvedTerms:
    def test_empty_is_unit(self):
        frame = FrameData(1, 0)
        assert term_x1(frame, fp_x1([H(0)], [()], [()])) == UNIT_TERM

    def test_pure_twist(self):
        frame = FrameData(1, 0)
        got = term_x1(frame, fp_x1([H(1)], [()], [()]))
        p = GENERIC
        expected = Fraction(1)
        for f in (1, 2):
            expected *= p[var_a(1)] + p[var_m(f)] + (p[EPS1] + p[EPS2]) / 2
        assert term_eval(got, p) == expected

    def test_single_box_first_chart(self):
        frame = FrameData(1, 0)
        got = term_x1(frame, fp_x1([H(0)], [(1,)], [()]))
        p = GENERIC
        expected = matter_values(p, p[var_a(1)]) / (
            (p[EPS2] - p[EPS1]) * 2 * p[EPS1]
        )
        assert term_eval(got, p) == expected


class TestEllFactor:
    def test_zero_vector_is_unit(self):
        assert ell_factor(FrameData(1, 0), (H(0),)) == UNIT_TERM
        assert ell_factor(FrameData(2, 0), (H(0), H(0))) == UNIT_TERM

    def test_rank_one_twist(self):
        got = ell_factor(FrameData(1, 0), (H(1),))
        p = GENERIC
        expected = Fraction(1)
        for f in (1, 2):
            expected *= p[var_a(1)] + p[var_m(f)] + (p[EPS1] + p[EPS2]) / 2
        assert term_eval(got, p) == expected

    def test_rank_two_opposite_twists(self):
        frame = FrameData(2, 0)
        got = ell_factor(frame, (H(1), H(-1)))
        p = dict(GENERIC)
        p[var_a(2)] = Fraction(-4, 5)
        p[var_m(3)] = Fraction(8)
        p[var_m(4)] = Fraction(-1, 7)
        half = (p[EPS1] + p[EPS2]) / 2
        num = Fraction(1)
        for f in (1, 2, 3, 4):
            # slot 1 twist by L_1 = {t1 t2}, slot 2 twist by L_-1 = {1}
            num *= p[var_a(1)] + p[EPS1] + p[EPS2] + p[var_m(f)] - half
            num *= p[var_a(2)] + p[var_m(f)] - half
        den = Fraction(1)
        d = p[var_a(2)] - p[var_a(1)]
        l_minus2 = [(0, 0), (-1, -1), (-2, 0), (0, -2)]
        l_plus2 = [(1, 1), (2, 2), (3, 1), (1, 3)]
        for i, j in l_minus2:
            den *= d + i * p[EPS1] + j * p[EPS2]
        for i, j in l_plus2:
            den *= -d + i * p[EPS1] + j * p[EPS2]
        assert term_eval(got, p) == num / den

"""Diagram combinatorics, colorings, fixed-point and wall enumeration."""

import pytest

from nekrasov.diagrams import (
    FrameData,
    GradeError,
    HalfInt,
    OutOfDiagram,
    ParityError,
    arm_leg,
    colored_sizes,
    diagram_tuples,
    enum_fixed_points_x0,
    enum_fixed_points_x1,
    enum_kvectors,
    enum_walls,
    partitions,
    transpose,
)


def H(text):
    return HalfInt.parse(str(text))


class TestArmLeg:
    def test_single_box(self):
        assert arm_leg((1,), 1, 1) == (0, 0)

    def test_hook_corner(self):
        assert arm_leg((2, 1), 1, 1) == (1, 1)

    def test_hook_top(self):
        assert arm_leg((2, 1), 1, 2) == (0, 0)

    def test_outside_raises(self):
        with pytest.raises(OutOfDiagram):
            arm_leg((2, 1), 2, 2)
        with pytest.raises(OutOfDiagram):
            arm_leg((1,), 2, 1)


class TestColoring:
    @pytest.mark.parametrize(
        "diagram, l, expected",
        [
            ((1,), 0, (1, 0)),
            ((1,), 1, (0, 1)),
            ((2,), 0, (1, 1)),
        ],
    )
    def test_examples(self, diagram, l, expected):
        assert colored_sizes(diagram, l) == expected

    def test_counts_total_and_flip(self):
        for n in range(7):
            for diagram in partitions(n):
                n0, n1 = colored_sizes(diagram, 0)
                assert n0 + n1 == n
                assert colored_sizes(diagram, 1) == (n1, n0)


def test_transpose_involution_exhaustive_to_size_8():
    for n in range(9):
        for diagram in partitions(n):
            assert transpose(transpose(diagram)) == diagram


def test_diagram_order_within_size():
    assert partitions(2) == ((2,), (1, 1))
    assert partitions(3) == ((3,), (2, 1), (1, 1, 1))


class TestFixedPointsX0:
    def test_single_box_color0(self):
        fps = enum_fixed_points_x0(FrameData(1, 0), 1, 0)
        assert [fp.diagrams for fp in fps] == [((1,),)]

    def test_single_box_wrong_color_empty(self):
        assert enum_fixed_points_x0(FrameData(1, 0), 0, 1) == []

    def test_two_boxes(self):
        fps = enum_fixed_points_x0(FrameData(1, 0), 1, 1)
        assert [fp.diagrams for fp in fps] == [((2,),), ((1, 1),)]

    @pytest.mark.parametrize("w", [(1, 0), (0, 1), (1, 1), (2, 0)])
    def test_recount_reproduces_colors(self, w):
        frame = FrameData(*w)
        for total in range(5):
            for v0 in range(total + 1):
                v1 = total - v0
                for fp in enum_fixed_points_x0(frame, v0, v1):
                    n0 = n1 = 0
                    for color, diagram in zip(frame.colors, fp.diagrams):
                        c0, c1 = colored_sizes(diagram, color)
                        n0 += c0
                        n1 += c1
                    assert (n0, n1) == (v0, v1)


class TestKVectors:
    def test_rank_one(self):
        assert enum_kvectors(FrameData(1, 0), H(0), 100) == [(H(0),)]

    def test_rank_two_integer(self):
        got = enum_kvectors(FrameData(2, 0), H(0), 8)
        assert got == [(H(0), H(0)), (H(1), H(-1)), (H(-1), H(1))]

    def test_rank_two_half_odd(self):
        got = enum_kvectors(FrameData(0, 2), H(0), 4)
        assert got == [(H("1/2"), H("-1/2")), (H("-1/2"), H("1/2"))]

    def test_parity_error(self):
        with pytest.raises(ParityError):
            enum_kvectors(FrameData(1, 1), H(0), 8)

    def test_closed_under_color_block_permutation(self):
        frame = FrameData(2, 2)
        vectors = set(enum_kvectors(frame, H(1), 20))
        for vec in vectors:
            assert (vec[1], vec[0], vec[2], vec[3]) in vectors
            assert (vec[0], vec[1], vec[3], vec[2]) in vectors


class TestFixedPointsX1:
    def test_grade_zero_single(self):
        fps = enum_fixed_points_x1(FrameData(1, 0), H(0), 0)
        assert len(fps) == 1
        assert fps[0].kvec == (H(0),)
        assert fps[0].y1 == ((),) and fps[0].y2 == ((),)

    def test_counts_1_2_5(self):
        frame = FrameData(1, 0)
        counts = [len(enum_fixed_points_x1(frame, H(0), g)) for g in (0, 4, 8)]
        assert counts == [1, 2, 5]

    def test_grade_matches_stored_data(self):
        frame = FrameData(1, 1)
        for g in (1, 5, 9):
            for fp in enum_fixed_points_x1(frame, H("1/2"), g):
                assert fp.grade4n == g

    def test_parity_and_grade_errors(self):
        with pytest.raises(ParityError):
            enum_fixed_points_x1(FrameData(1, 0), H("1/2"), 4)
        with pytest.raises(GradeError):
            enum_fixed_points_x1(FrameData(1, 0), H(0), 5)

    def test_swapping_diagram_roles_is_a_bijection(self):
        frame = FrameData(2, 0)
        for g in (0, 4, 8):
            fps = enum_fixed_points_x1(frame, H(0), g)
            swapped = {(fp.kvec, fp.y2, fp.y1) for fp in fps}
            assert swapped == {(fp.kvec, fp.y1, fp.y2) for fp in fps}


class TestWalls:
    def test_empty(self):
        assert enum_walls(0, 0) == []

    def test_v_1_1(self):
        assert [w.root for w in enum_walls(1, 1)] == [(0, 1), (1, 0), (1, 1)]

    def test_v_1_2(self):
        assert [w.root for w in enum_walls(1, 2)] == [(0, 1), (1, 0), (1, 2), (1, 1)]

    def test_kinds_and_indices(self):
        walls = enum_walls(2, 2)
        real = [(w.index, w.root) for w in walls if w.kind == "real"]
        imaginary = [(w.index, w.root) for w in walls if w.kind == "imaginary"]
        assert real == [(0, (0, 1)), (-1, (1, 0)), (1, (1, 2)), (-2, (2, 1))]
        assert imaginary == [(1, (1, 1)), (2, (2, 2))]


class TestHalfInt:
    @pytest.mark.parametrize(
        "text, doubled", [("0", 0), ("-1", -2), ("1/2", 1), ("-3/2", -3), ("4/2", 4)]
    )
    def test_parse(self, text, doubled):
        assert HalfInt.parse(text).doubled == doubled

    def test_parse_rejects_other_denominators(self):
        with pytest.raises(ValueError):
            HalfInt.parse("1/3")
        with pytest.raises(ValueError):
            HalfInt.parse("2/4")

    def test_str_lowest_terms(self):
        assert str(H("4/2")) == "2"
        assert str(H("-1/2")) == "-1/2"
        assert str(H(3)) == "3"


def test_diagram_tuples_cover_all_splits():
    tuples = list(diagram_tuples(2, 3))
    assert len(tuples) == 10  # sum over n of p(n) p(3-n): 3 + 2 + 2 + 3
    assert len(set(tuples)) == 10
    assert all(sum(map(sum, t)) == 3 for t in tuples)

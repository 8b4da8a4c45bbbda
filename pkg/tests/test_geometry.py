import numpy as np
import pytest

from dilcon import (
    HalfPoint,
    InternalConsistencyError,
    Orientation,
    build_endpoint_index,
    chain_self_intersects,
    chains_properly_intersect,
    chains_share_point,
    classify,
    dilate,
    edge_endpoints,
    extract_edges,
    parse_grid_text,
    signed_area2,
    trace_contours,
)

from conftest import random_image


def contours_of(text_or_img, dilated=False):
    img = parse_grid_text(text_or_img) if isinstance(text_or_img, str) else text_or_img
    es = extract_edges(img)
    cs = trace_contours(es, build_endpoint_index(es))
    if dilated:
        return img, es, [dilate(c, es) for c in cs]
    return img, es, cs


class TestSignedArea:
    def test_unit_square_ccw(self):
        assert signed_area2([(0, 0), (1, 0), (1, 1), (0, 1)]) == 2

    def test_unit_square_reversed(self):
        assert signed_area2([(0, 1), (1, 1), (1, 0), (0, 0)]) == -2

    def test_dilated_diamond_half_units(self):
        assert signed_area2([(1, 0), (2, 1), (1, 2), (0, 1)]) == 4

    def test_accepts_arrays_and_contours(self):
        _, _, cs = contours_of("1")
        assert signed_area2(cs[0]) == 2
        assert signed_area2(np.array([(0, 0), (3, 0), (3, 3), (0, 3)])) == 18

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            signed_area2([(0, 0), (1, 1)])

    def test_exact_for_huge_coordinates(self):
        big = 1 << 31
        square = [(0, 0), (big, 0), (big, big), (0, big)]
        assert signed_area2(square) == 2 * big * big


class TestClassify:
    def test_single_pixel_is_object(self):
        _, _, cs = contours_of("1")
        assert classify(cs[0]) is Orientation.OBJECT_CCW

    def test_ring_inner_loop_is_hole(self):
        _, _, cs = contours_of("111 101 111")
        inner = min(cs, key=len)
        assert classify(inner) is Orientation.HOLE_CW

    def test_two_by_two_block(self):
        _, _, cs = contours_of("11 11")
        assert len(cs) == 1
        assert classify(cs[0]) is Orientation.OBJECT_CCW
        assert signed_area2(cs[0]) == 8

    def test_degenerate_zero_area_fails_loudly(self):
        with pytest.raises(InternalConsistencyError) as err:
            classify([(0, 0), (1, 0), (2, 0), (1, 0)])
        assert err.value.stage == "geometry"


class TestDilate:
    def test_single_pixel_diamond(self):
        _, es, cs = contours_of("1")
        d = dilate(cs[0], es)
        assert d.point_list() == [(1, 0), (2, 1), (1, 2), (0, 1)]
        assert len(d) == len(cs[0])
        assert d.source is cs[0]
        assert d.point(0) == HalfPoint(1, 0)

    def test_length_preserved_and_exactly_integer(self):
        for seed in range(6):
            img = random_image(seed, 10, 8)
            _, es, cs = contours_of(img)
            for c in cs:
                d = dilate(c, es)
                assert len(d) == len(c)
                assert d.points.dtype.kind == "i"  # half units, never rounded

    def test_midpoint_parity_one_odd_component(self):
        _, es, cs = contours_of("110 011")
        for c in cs:
            for x2, y2 in dilate(c, es).point_list():
                assert (x2 % 2) + (y2 % 2) == 1

    def test_diagonal_pair_separates_completely(self):
        _, es, ds = contours_of("10 01", dilated=True)
        assert [d.point_list() for d in ds] == [
            [(1, 2), (2, 3), (1, 4), (0, 3)],
            [(3, 0), (4, 1), (3, 2), (2, 1)],
        ]
        a, b = ds
        assert set(a.point_list()) & set(b.point_list()) == set()
        # the corner the raw loops shared, (1,1) = (2,2) in half units,
        # belongs to neither diamond
        assert (2, 2) not in a.point_list() + b.point_list()
        assert not chains_share_point(a, b)


class TestCrossingPredicates:
    def test_raw_diagonal_contours_touch_but_do_not_cross(self):
        _, _, cs = contours_of("10 01")
        assert not chains_properly_intersect(cs[0], cs[1])
        assert chains_share_point(cs[0], cs[1])  # the corner touch

    def test_disjoint_translated_square(self):
        a = [(0, 0), (1, 0), (1, 1), (0, 1)]
        b = [(10, 10), (11, 10), (11, 11), (10, 11)]
        assert not chains_properly_intersect(a, b)
        assert not chains_share_point(a, b)

    def test_overlapping_squares_cross(self):
        a = [(0, 0), (2, 0), (2, 2), (0, 2)]
        b = [(1, 1), (3, 1), (3, 3), (1, 3)]
        assert chains_properly_intersect(a, b)
        assert chains_share_point(a, b)

    def test_identical_chains_overlap(self):
        a = [(0, 0), (2, 0), (2, 2), (0, 2)]
        assert chains_properly_intersect(a, list(a))

    def test_collinear_partial_overlap(self):
        a = [(0, 0), (4, 0), (4, 4), (0, 4)]
        b = [(2, 0), (6, 0), (6, -4), (2, -4)]
        assert chains_properly_intersect(a, b)

    def test_vertex_on_edge_interior_is_an_endpoint_touch(self):
        a = [(0, 0), (4, 0), (4, 4), (0, 4)]
        b = [(4, 2), (6, 0), (6, 4)]  # triangle tip on a's right edge
        assert not chains_properly_intersect(a, b)
        assert chains_share_point(a, b)

    def test_collinear_single_point_touch_allowed(self):
        a = [(0, 0), (2, 0), (2, 2), (0, 2)]
        b = [(2, 0), (4, 0), (4, -2), (2, -2)]  # shares corner (2,0) only
        assert not chains_properly_intersect(a, b)
        assert chains_share_point(a, b)


class TestSelfIntersection:
    def test_square_is_simple(self):
        assert not chain_self_intersects([(0, 0), (3, 0), (3, 3), (0, 3)])

    def test_figure_eight_crosses(self):
        assert chain_self_intersects([(0, 0), (2, 2), (2, 0), (0, 2)])

    def test_pinched_raw_contour_is_not_proper(self):
        _, _, cs = contours_of("111 101 110")
        assert len(cs) == 1
        assert not chain_self_intersects(cs[0])

    def test_dilated_contours_are_simple(self):
        for seed in range(10):
            img = random_image(300 + seed, 8, 8)
            _, es, ds = contours_of(img, dilated=True)
            for d in ds:
                assert not chain_self_intersects(d)


class TestOutputGuarantees:
    """The advertised output properties, verified with the exact predicates."""

    @pytest.mark.parametrize("seed", range(15))
    def test_raw_loops_never_cross_dilated_loops_never_touch(self, seed):
        img = random_image(400 + seed, 8, 8, density=0.2 + 0.04 * seed)
        _, es, cs = contours_of(img)
        ds = [dilate(c, es) for c in cs]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                assert not chains_properly_intersect(cs[i], cs[j])
                assert not chains_share_point(ds[i], ds[j])

    @pytest.mark.parametrize("seed", range(8))
    def test_nondegeneracy(self, seed):
        img = random_image(500 + seed, 9, 9)
        _, es, cs = contours_of(img)
        for c in cs:
            assert abs(signed_area2(c)) >= 2
            assert abs(signed_area2(dilate(c, es))) >= 4

    def test_isolated_pixel_dilated_area_is_half_pixel(self):
        _, es, ds = contours_of("1", dilated=True)
        # +4 in half units = 0.5 pixel area, the dilated minimum
        assert signed_area2(ds[0]) == 4

    @pytest.mark.parametrize("seed", range(8))
    def test_orientation_law_component_loops_are_objects(self, seed):
        img = random_image(600 + seed, 10, 10)
        _, es, cs = contours_of(img)
        # test-local component labeling (4-connectivity BFS)
        labels = {}
        for x in range(img.width):
            for y in range(img.height):
                if img.pixel_at((x, y)) and (x, y) not in labels:
                    stack = [(x, y)]
                    labels[(x, y)] = (x, y)
                    while stack:
                        cx, cy = stack.pop()
                        for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
                            if img.pixel_at_or_black((nx, ny)) and (nx, ny) not in labels:
                                labels[(nx, ny)] = (x, y)
                                stack.append((nx, ny))
        by_edge = {}
        for c in cs:
            for eid in c.edge_ids.tolist():
                by_edge[eid] = c

        def low_left_key(e):
            first, second = edge_endpoints(e)
            return (
                min(first.y, second.y),
                min(first.x, second.x),
                int(e.etype),
            )

        for root in set(labels.values()):
            member = {p for p, r in labels.items() if r == root}
            # lowest-then-leftmost boundary edge of this component
            edges = [e for e in es if tuple(e.parent) in member]
            low = min(edges, key=low_left_key)
            assert classify(by_edge[low.id]) is Orientation.OBJECT_CCW

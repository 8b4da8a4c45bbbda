import numpy as np
import pytest

from dilcon import (
    EdgeSet,
    InternalConsistencyError,
    Orientation,
    build_endpoint_index,
    edge_endpoints,
    extract_edges,
    parse_grid_text,
    signed_area2,
    trace_contours,
    used_edge_count,
)

from conftest import all_3x3_images, random_image


# --- independent reference tracer: dict-based, written from the walk rule
# --- alone, shares nothing with the array kernels under test
def oracle_trace(es):
    firsts = [tuple(edge_endpoints(e)[0]) for e in es]
    seconds = [tuple(edge_endpoints(e)[1]) for e in es]
    outgoing = {}
    for i, p in enumerate(firsts):
        outgoing.setdefault(p, []).append(i)
    used = [False] * len(es)
    loops = []
    for seed in range(len(es)):
        if used[seed]:
            continue
        chain = [seed]
        used[seed] = True
        cur = seed
        while True:
            cands = outgoing[seconds[cur]]
            if len(cands) == 1:
                nxt = cands[0]
            else:
                assert len(cands) == 2
                same = [c for c in cands if es[c].parent == es[cur].parent]
                assert len(same) == 1
                nxt = same[0]
            if used[nxt]:
                assert nxt == seed
                break
            chain.append(nxt)
            used[nxt] = True
            cur = nxt
        loops.append(chain)
    return loops


def traced(text_or_img):
    img = parse_grid_text(text_or_img) if isinstance(text_or_img, str) else text_or_img
    es = extract_edges(img)
    idx = build_endpoint_index(es)
    return img, es, idx, trace_contours(es, idx)


class TestEndpointIndex:
    def test_single_pixel_four_corners_valence_two(self):
        _, es, idx, _ = traced("1")
        assert len(idx) == 4
        for p in [(0, 0), (1, 0), (1, 1), (0, 1)]:
            assert idx.valence(p) == 2
            incoming, outgoing = idx.incident(p)
            assert len(incoming) == 1 and len(outgoing) == 1

    def test_diagonal_pair_has_one_four_valent_corner(self):
        _, es, idx, _ = traced("10 01")
        assert idx.valence((1, 1)) == 4
        incoming, outgoing = idx.incident((1, 1))
        assert len(incoming) == 2 and len(outgoing) == 2
        assert list(incoming) == sorted(incoming)  # ascending edge ids
        for p in idx.points():
            if tuple(p) != (1, 1):
                assert idx.valence(p) == 2

    def test_empty_edge_set(self):
        _, es, idx, contours = traced("000 000")
        assert len(idx) == 0
        assert idx.points() == []
        assert contours == []

    def test_points_listed_once_in_key_order(self):
        _, es, idx, _ = traced("10 01")
        pts = idx.points()
        assert len(pts) == len(set(pts)) == 7
        keys = [p.y * (es.width + 1) + p.x for p in pts]
        assert keys == sorted(keys)

    def test_corrupted_edge_set_odd_valence_rejected(self):
        es = extract_edges(parse_grid_text("1"))
        broken = EdgeSet(es.width, es.height, es.parent_x[:3], es.parent_y[:3], es.etypes[:3])
        with pytest.raises(InternalConsistencyError) as err:
            build_endpoint_index(broken)
        assert "corner point" in str(err.value)
        assert err.value.stage == "contour-tracing"

    def test_corrupted_edge_set_overloaded_corner_rejected(self):
        # three copies of the same edge put a third outgoing edge on one
        # corner, which no bilevel raster can produce
        es = extract_edges(parse_grid_text("1"))
        trip = EdgeSet(
            es.width,
            es.height,
            np.concatenate([es.parent_x] * 3),
            np.concatenate([es.parent_y] * 3),
            np.concatenate([es.etypes] * 3),
        )
        with pytest.raises(InternalConsistencyError) as err:
            build_endpoint_index(trip)
        assert "more than four" in str(err.value)


class TestTraceAbort:
    def test_no_legal_continuation_identifies_the_corner(self):
        # index built from the true edges, walk fed repainted parents:
        # at the 4-valent corner neither outgoing edge matches the
        # incoming edge's pixel, so the tracer must stop and say where
        es = extract_edges(parse_grid_text("10 01"))
        idx = build_endpoint_index(es)
        bad_px = es.parent_x.copy()
        bad_py = es.parent_y.copy()
        bad_px[1], bad_py[1] = 1, 0  # edge 1 now claims the other pixel
        bad = EdgeSet(es.width, es.height, bad_px, bad_py, es.etypes)
        with pytest.raises(InternalConsistencyError) as err:
            trace_contours(bad, idx)
        assert "(1, 1)" in str(err.value)
        assert err.value.stage == "contour-tracing"


class TestTraceExamples:
    def test_single_pixel_counterclockwise_from_lower_left(self):
        _, _, _, contours = traced("1")
        assert len(contours) == 1
        c = contours[0]
        assert c.point_list() == [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert c.edge_ids.tolist() == [0, 1, 2, 3]
        assert c.orientation is Orientation.OBJECT_CCW

    def test_diagonal_pair_two_loops_sharing_one_corner(self):
        _, es, _, contours = traced("10 01")
        assert [c.point_list() for c in contours] == [
            [(0, 1), (1, 1), (1, 2), (0, 2)],
            [(1, 0), (2, 0), (2, 1), (1, 1)],
        ]
        ids0 = set(contours[0].edge_ids.tolist())
        ids1 = set(contours[1].edge_ids.tolist())
        assert ids0 == {0, 1, 2, 3} and ids1 == {4, 5, 6, 7}
        # the shared corner appears in both chains, the loops stay edge-disjoint
        assert (1, 1) in contours[0].point_list()
        assert (1, 1) in contours[1].point_list()
        assert oracle_trace(es) == [c.edge_ids.tolist() for c in contours]

    def test_ring_with_hole(self):
        _, _, _, contours = traced("111 101 111")
        assert sorted(len(c) for c in contours) == [4, 12]
        outer = max(contours, key=len)
        inner = min(contours, key=len)
        assert signed_area2(outer) == 18
        assert signed_area2(inner) == -2
        assert outer.orientation is Orientation.OBJECT_CCW
        assert inner.orientation is Orientation.HOLE_CW
        assert inner.point_list() == [(1, 2), (2, 2), (2, 1), (1, 1)]

    def test_pinched_shape_single_loop_revisits_a_corner(self):
        # 7 whites, one diagonal pinch: the single-point contact is cut by
        # the tie-break, so one loop covers all 16 edges and meets the
        # pinch corner twice
        img, es, _, contours = traced("111 101 110")
        assert len(contours) == 1
        c = contours[0]
        assert len(c) == 16
        assert c.point_list().count((2, 1)) == 2
        assert signed_area2(c) == 14  # area 7 = white count
        assert oracle_trace(es) == [c.edge_ids.tolist()]

    def test_used_edge_count_examples(self):
        assert used_edge_count(traced("1")[3]) == 4
        assert used_edge_count(traced("000")[3]) == 0
        assert used_edge_count(traced("10 01")[3]) == 8
        partial = traced("10 01")[3][:1]
        assert used_edge_count(partial) == 4


class TestTraceProperties:
    @pytest.mark.parametrize("seed", range(12))
    def test_partition_closure_and_tie_break(self, seed):
        img = random_image(seed, 16, 16, density=0.35 + 0.05 * seed)
        es = extract_edges(img)
        idx = build_endpoint_index(es)
        contours = trace_contours(es, idx)
        seen = np.concatenate([c.edge_ids for c in contours]) if contours else np.empty(0, int)
        # partition: every edge id exactly once
        assert sorted(seen.tolist()) == list(range(len(es)))
        assert used_edge_count(contours) == len(es)
        seconds = es.second_points()
        for c in contours:
            n = len(c)
            assert n >= 4
            for k in range(n):
                # closure: edge k ends at point k+1
                nxt = c.points[(k + 1) % n]
                assert np.array_equal(seconds[c.edge_ids[k]], nxt)
                # tie-break: consecutive edges at a 4-valent corner share a parent
                if idx.valence(tuple(nxt)) == 4:
                    a = es[int(c.edge_ids[k])]
                    b = es[int(c.edge_ids[(k + 1) % n])]
                    assert a.parent == b.parent

    def test_area_sum_law_exhaustive_3x3(self):
        for img in all_3x3_images():
            es = extract_edges(img)
            contours = trace_contours(es, build_endpoint_index(es))
            total = sum(signed_area2(c) for c in contours)
            assert total == 2 * img.white_count

    @pytest.mark.parametrize("seed", range(20))
    def test_area_sum_law_random_16x16(self, seed):
        img = random_image(1000 + seed, 16, 16)
        es = extract_edges(img)
        contours = trace_contours(es, build_endpoint_index(es))
        assert sum(signed_area2(c) for c in contours) == 2 * img.white_count

    def test_matches_reference_tracer(self):
        for seed in range(8):
            img = random_image(77 + seed, 9, 9)
            es = extract_edges(img)
            contours = trace_contours(es, build_endpoint_index(es))
            assert oracle_trace(es) == [c.edge_ids.tolist() for c in contours]

    def test_contours_in_seed_order_and_deterministic(self):
        img = random_image(4, 14, 14)
        es = extract_edges(img)
        idx = build_endpoint_index(es)
        a = trace_contours(es, idx)
        b = trace_contours(es, idx)
        assert [c.edge_ids.tolist() for c in a] == [c.edge_ids.tolist() for c in b]
        seeds = [int(c.edge_ids[0]) for c in a]
        assert seeds == sorted(seeds)
        # across extraction worker counts too
        es2 = extract_edges(img, workers=4)
        c2 = trace_contours(es2, build_endpoint_index(es2))
        assert [c.point_list() for c in a] == [c.point_list() for c in c2]

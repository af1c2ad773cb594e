"""World generation checked against brute-force reference constructions."""

import math

import numpy as np
import pytest

from gricsim.geometry import Segment, Vec2, segments_properly_intersect
from gricsim.worldgen import (
    COMM_RADIUS,
    OBSTACLE_NAMES,
    Region,
    UnknownObstacle,
    World,
    _adjacency,
    _gabriel_filter,
    _links_blocked_by_wall,
    deploy,
    find_planarity_violation,
    interior_mean_degree,
    is_connected,
    make_obstacle,
    parse_world_text,
    world_to_text,
)

SMALL = Region(0.0, 10.0, 0.0, 10.0)


def brute_force_edges(positions, walls):
    """O(n^2) reference link set: distance <= 1 and no wall in the way."""
    n = len(positions)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            dx = positions[j, 0] - positions[i, 0]
            dy = positions[j, 1] - positions[i, 1]
            if dx * dx + dy * dy > COMM_RADIUS * COMM_RADIUS:
                continue
            link = Segment(
                Vec2(*positions[i].tolist()), Vec2(*positions[j].tolist())
            )
            if any(segments_properly_intersect(link, w) for w in walls):
                continue
            out.append((i, j))
    return out


def brute_force_gabriel(positions, edges):
    """Reference Gabriel filter: strict interior of the diameter disk."""
    kept = []
    for u, v in edges:
        mid = 0.5 * (positions[u] + positions[v])
        r2 = 0.25 * np.sum((positions[u] - positions[v]) ** 2)
        ok = True
        for w in range(len(positions)):
            if w == u or w == v:
                continue
            d2 = np.sum((positions[w] - mid) ** 2)
            if d2 < r2 - 1e-12:
                ok = False
                break
        if ok:
            kept.append((u, v))
    return kept


class TestRegion:
    def test_extent_validation(self):
        with pytest.raises(ValueError):
            Region(0, 0, 0, 1)
        with pytest.raises(ValueError):
            Region(0, 1, 3, 2)

    def test_measurements(self):
        r = Region(-5, 25, -5, 25)
        assert r.width == 30 and r.height == 30 and r.area == 900

    def test_contains_is_closed(self):
        r = Region(0, 10, 0, 10)
        assert r.contains(Vec2(0, 5))
        assert r.contains(Vec2(10, 10))
        assert not r.contains(Vec2(-0.001, 5))

    def test_border_distance(self):
        r = Region(-5, 25, -5, 25)
        assert r.border_distance(Vec2(0, 10)) == 5
        assert r.border_distance(Vec2(10, 10)) == 15
        assert r.border_distance(Vec2(-6, 10)) == -1


class TestObstacleCatalogue:
    def test_names(self):
        assert OBSTACLE_NAMES == (
            "none",
            "stripe",
            "ushape",
            "concave1",
            "concave2",
        )

    def test_unknown_name(self):
        with pytest.raises(UnknownObstacle):
            make_obstacle("wall-of-text")

    def test_wall_counts(self):
        assert len(make_obstacle("none").walls) == 0
        assert len(make_obstacle("stripe").walls) == 1
        assert len(make_obstacle("ushape").walls) == 3
        assert len(make_obstacle("concave1").walls) == 5
        assert len(make_obstacle("concave2").walls) == 5

    def test_concave_layouts_extend_the_ushape(self):
        u = set(
            (w.a.x, w.a.y, w.b.x, w.b.y) for w in make_obstacle("ushape").walls
        )
        for name in ("concave1", "concave2"):
            walls = set(
                (w.a.x, w.a.y, w.b.x, w.b.y)
                for w in make_obstacle(name).walls
            )
            assert u < walls


class TestDeploy:
    def test_node_count_rounds(self):
        assert deploy(2.0, SMALL, make_obstacle("none"), 0).n == 200
        assert deploy(0.0, SMALL, make_obstacle("none"), 0).n == 0
        assert deploy(0.004, SMALL, make_obstacle("none"), 0).n == 0

    def test_negative_density_rejected(self):
        with pytest.raises(ValueError):
            deploy(-1.0, SMALL, make_obstacle("none"), 0)

    def test_positions_inside_region(self):
        w = deploy(3.0, SMALL, make_obstacle("none"), 1)
        assert np.all(w.positions >= 0.0) and np.all(w.positions <= 10.0)

    def test_deterministic_from_seed(self):
        a = deploy(2.5, SMALL, make_obstacle("stripe"), 42)
        b = deploy(2.5, SMALL, make_obstacle("stripe"), 42)
        assert a.positions.tobytes() == b.positions.tobytes()
        assert a.edges.tobytes() == b.edges.tobytes()

    def test_different_seeds_differ(self):
        a = deploy(2.5, SMALL, make_obstacle("none"), 0)
        b = deploy(2.5, SMALL, make_obstacle("none"), 1)
        assert a.positions.tobytes() != b.positions.tobytes()

    def test_links_match_brute_force(self):
        # Unit-disk wiring, no obstacle.
        w = deploy(2.0, SMALL, make_obstacle("none"), 7)
        want = brute_force_edges(w.positions, [])
        got = [tuple(e) for e in w.edges]
        assert sorted(got) == sorted(want)

    def test_blocked_links_match_brute_force(self):
        # Same check with walls cutting the region.
        walls = [
            Segment(Vec2(5.0, 2.0), Vec2(5.0, 8.0)),
            Segment(Vec2(2.0, 5.0), Vec2(8.0, 5.0)),
        ]
        obstacle = make_obstacle("none")
        obstacle = type(obstacle)(name="cross", walls=tuple(walls))
        w = deploy(2.0, SMALL, obstacle, 8)
        want = brute_force_edges(w.positions, walls)
        got = [tuple(e) for e in w.edges]
        assert sorted(got) == sorted(want)

    def test_no_link_longer_than_radius(self):
        w = deploy(3.0, SMALL, make_obstacle("none"), 9)
        d = w.positions[w.edges[:, 0]] - w.positions[w.edges[:, 1]]
        assert np.all(np.einsum("ij,ij->i", d, d) <= COMM_RADIUS**2 + 1e-12)

    def test_no_link_crosses_stripe_wall(self):
        obstacle = make_obstacle("stripe")
        region = Region(-5.0, 25.0, -5.0, 25.0)
        w = deploy(1.0, region, obstacle, 3)
        wall = obstacle.walls[0]
        for u, v in w.edges:
            link = Segment(w.pos(int(u)), w.pos(int(v)))
            assert not segments_properly_intersect(link, wall)

    def test_out_links_mirror_edges(self):
        w = deploy(2.0, SMALL, make_obstacle("none"), 10)
        degree_sum = sum(len(nbrs) for nbrs in w.out_links)
        assert degree_sum == 2 * len(w.edges)
        for u, v in w.edges[:200]:
            assert int(v) in w.out_links[int(u)]
            assert int(u) in w.out_links[int(v)]


class TestVectorizedBlocking:
    def test_matches_scalar_predicate(self):
        rng = np.random.default_rng(31)
        wall = Segment(Vec2(4.0, 3.0), Vec2(6.0, 7.0))
        p = rng.uniform(0, 10, (4000, 2))
        q = p + rng.uniform(-1, 1, (4000, 2))
        got = _links_blocked_by_wall(p, q, wall.a, wall.b)
        for k in range(len(p)):
            a = Vec2(*p[k].tolist())
            b = Vec2(*q[k].tolist())
            if (a - b).is_zero():
                continue
            want = segments_properly_intersect(Segment(a, b), wall)
            assert bool(got[k]) == want, (p[k], q[k])

    def test_touch_cases(self):
        wall = Segment(Vec2(0.0, 0.0), Vec2(2.0, 0.0))
        p = np.array([[1.0, 0.0], [1.0, 1.0], [3.0, 0.0]])
        q = np.array([[1.0, 1.0], [1.0, 2.0], [4.0, 0.0]])
        got = _links_blocked_by_wall(p, q, wall.a, wall.b)
        assert got.tolist() == [True, False, False]


class TestGabriel:
    def test_matches_brute_force(self):
        w = deploy(2.0, SMALL, make_obstacle("none"), 11)
        want = brute_force_gabriel(w.positions, [tuple(e) for e in w.edges])
        got = [tuple(e) for e in w.gabriel_edges()]
        assert sorted(got) == sorted(want)

    def test_subset_of_links(self):
        w = deploy(2.5, SMALL, make_obstacle("stripe"), 12)
        links = set(map(tuple, w.edges))
        assert set(map(tuple, w.gabriel_edges())) <= links

    def test_midpoint_blocker_removes_edge(self):
        positions = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.01]])
        edges = np.array([[0, 1], [0, 2], [1, 2]], dtype=np.int64)
        kept = _gabriel_filter(positions, edges)
        assert (0, 1) not in set(map(tuple, kept))
        assert (0, 2) in set(map(tuple, kept))

    def test_node_on_circle_keeps_edge(self):
        # (0.5, 0.5) sits exactly on the diameter circle of (0,0)-(1,0).
        positions = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.5]])
        edges = np.array([[0, 1]], dtype=np.int64)
        kept = _gabriel_filter(positions, edges)
        assert (0, 1) in set(map(tuple, kept))

    def test_planar_on_random_worlds(self):
        for seed in range(5):
            w = deploy(3.0, SMALL, make_obstacle("none"), 100 + seed)
            g = w.gabriel_edges()
            assert find_planarity_violation(w.positions, g) is None

    def test_gabriel_preserves_connectivity(self):
        # The Gabriel filter never disconnects a connected unit-disk graph
        # when there are no walls: any removed edge has a two-hop detour.
        for seed in range(3):
            w = deploy(4.0, SMALL, make_obstacle("none"), 200 + seed)
            if is_connected(w.n, w.out_links):
                assert is_connected(w.n, w.gabriel_links)


class TestPlanarityCheck:
    def test_detects_crossing(self):
        positions = np.array(
            [[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]
        )
        edges = np.array([[0, 1], [2, 3]], dtype=np.int64)
        assert find_planarity_violation(positions, edges) == (0, 1)

    def test_shared_vertex_allowed(self):
        positions = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]])
        edges = np.array([[0, 1], [1, 2]], dtype=np.int64)
        assert find_planarity_violation(positions, edges) is None

    def test_disjoint_edges_allowed(self):
        positions = np.array(
            [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
        )
        edges = np.array([[0, 1], [2, 3]], dtype=np.int64)
        assert find_planarity_violation(positions, edges) is None


class TestConnectivity:
    def test_empty_graph(self):
        assert is_connected(0, [])

    def test_singleton(self):
        assert is_connected(1, _adjacency(1, np.empty((0, 2), dtype=np.int64)))

    def test_two_components(self):
        edges = np.array([[0, 1], [2, 3]], dtype=np.int64)
        assert not is_connected(4, _adjacency(4, edges))

    def test_path_graph(self):
        edges = np.array([[0, 1], [1, 2], [2, 3]], dtype=np.int64)
        assert is_connected(4, _adjacency(4, edges))


class TestInteriorDegree:
    def test_matches_pi_density(self):
        region = Region(-5.0, 25.0, -5.0, 25.0)
        for seed in range(3):
            w = deploy(4.5, region, make_obstacle("none"), 300 + seed)
            got = interior_mean_degree(w)
            want = math.pi * 4.5
            assert abs(got - want) / want < 0.05

    def test_nan_when_no_interior(self):
        w = deploy(2.0, Region(0, 1.5, 0, 1.5), make_obstacle("none"), 0)
        assert math.isnan(interior_mean_degree(w))


class TestWorldText:
    def test_round_trip_exact(self):
        w = deploy(2.0, SMALL, make_obstacle("stripe"), 13)
        positions, edges = parse_world_text(world_to_text(w))
        assert positions.tobytes() == w.positions.tobytes()
        assert edges.tobytes() == w.edges.tobytes()

    def test_header_line(self):
        w = deploy(0.1, SMALL, make_obstacle("none"), 0)
        assert world_to_text(w).splitlines()[0] == "worldv1"

    def test_rejects_missing_header(self):
        with pytest.raises(ValueError):
            parse_world_text("0 1.0 2.0\n")

    def test_rejects_garbage_line(self):
        with pytest.raises(ValueError):
            parse_world_text("worldv1\n0 1.0 2.0 extra junk\n")

    def test_rejects_gapped_ids(self):
        with pytest.raises(ValueError):
            parse_world_text("worldv1\n0 1.0 2.0\n2 3.0 4.0\n")

    def test_empty_world(self):
        positions, edges = parse_world_text("worldv1\n")
        assert positions.shape == (0, 2)
        assert edges.shape == (0, 2)

"""Shared helpers for the test suite."""

import numpy as np

from gricsim.worldgen import Region, World, _adjacency, make_obstacle


def make_world(points, edge_list, region=None, obstacle_name="none"):
    """Hand-built World for unit tests.

    points is a sequence of (x, y) pairs, edge_list a sequence of
    undirected (u, v) node id pairs. No geometry checks are applied, so
    tests can build configurations deploy() would never produce.
    """
    positions = np.asarray(points, dtype=float).reshape(-1, 2)
    edges = np.asarray(edge_list, dtype=np.int64).reshape(-1, 2)
    return World(
        region=region or Region(-100.0, 100.0, -100.0, 100.0),
        obstacle=make_obstacle(obstacle_name),
        positions=positions,
        edges=edges,
        out_links=_adjacency(len(positions), edges),
    )

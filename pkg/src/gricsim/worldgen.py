"""Random sensor-network worlds.

A world is a batch of nodes dropped uniformly at random into a rectangle,
wired with the unit-disk rule (nodes at distance at most 1 hear each
other), and then un-wired wherever a link would pass through a wall.
Walls are pure radio obstructions: nodes may sit anywhere, links may not
touch a wall segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .geometry import COLLINEAR_EPS, Segment, Vec2, segments_cross_interior

# Squared-distance slack for the "strictly inside the diameter disk" test
# of the Gabriel rule; keeps boundary nodes from flickering in and out.
GABRIEL_EPS = 1e-12

COMM_RADIUS = 1.0


class UnknownObstacle(ValueError):
    """Obstacle name not in the built-in catalogue."""


@dataclass(frozen=True)
class Region:
    """Axis-aligned deployment rectangle."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("region must have positive extent on both axes")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, p: Vec2) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max

    def border_distance(self, p: Vec2) -> float:
        """Distance from p to the nearest side; negative outside the box."""
        return min(
            p.x - self.x_min,
            self.x_max - p.x,
            p.y - self.y_min,
            self.y_max - p.y,
        )


@dataclass(frozen=True)
class Obstacle:
    """A named set of radio-blocking wall segments."""

    name: str
    walls: tuple[Segment, ...]


def _seg(ax: float, ay: float, bx: float, by: float) -> Segment:
    return Segment(Vec2(ax, ay), Vec2(bx, by))


# Wall layouts are expressed in the standard experiment frame where the
# source sits near (0, 10) and the destination near (20, 10).
#
#   stripe    a single vertical wall between the endpoints
#   ushape    three walls forming a box open toward the source
#   concave1  the ushape with short lips angled inward at the mouth
#   concave2  the ushape with long lips leaving only a narrow throat
_CATALOGUE: dict[str, tuple[Segment, ...]] = {
    "none": (),
    "stripe": (_seg(10, 6.5, 10, 13.5),),
    "ushape": (
        _seg(6, 5, 14, 5),
        _seg(14, 5, 14, 15),
        _seg(6, 15, 14, 15),
    ),
    "concave1": (
        _seg(6, 5, 14, 5),
        _seg(14, 5, 14, 15),
        _seg(6, 15, 14, 15),
        _seg(6, 5, 6.5, 5.5),
        _seg(6, 15, 6.5, 14.5),
    ),
    "concave2": (
        _seg(6, 5, 14, 5),
        _seg(14, 5, 14, 15),
        _seg(6, 15, 14, 15),
        _seg(6, 5, 7.6, 7.4),
        _seg(6, 15, 7.6, 12.6),
    ),
}

OBSTACLE_NAMES = tuple(_CATALOGUE)


def make_obstacle(name: str) -> Obstacle:
    """Look up one of the built-in obstacle layouts by name."""
    try:
        walls = _CATALOGUE[name]
    except KeyError:
        raise UnknownObstacle(
            f"unknown obstacle {name!r}; expected one of {', '.join(OBSTACLE_NAMES)}"
        ) from None
    return Obstacle(name=name, walls=walls)


def _sign_eps(x: np.ndarray) -> np.ndarray:
    """Orientation sign with the collinearity tolerance applied."""
    s = np.zeros(x.shape, dtype=np.int8)
    s[x > COLLINEAR_EPS] = 1
    s[x < -COLLINEAR_EPS] = -1
    return s


def _links_blocked_by_wall(
    p: np.ndarray, q: np.ndarray, c: Vec2, d: Vec2
) -> np.ndarray:
    """Vectorized closed-segment intersection of many links with one wall.

    p and q are (m, 2) arrays of link endpoints. Mirrors the scalar
    predicate in geometry.segments_properly_intersect, endpoint contact
    and collinear overlap included.
    """
    cd = np.array([d.x - c.x, d.y - c.y])
    cp = np.array([c.x, c.y])
    pq = q - p

    def cross(v: np.ndarray, w: np.ndarray) -> np.ndarray:
        return v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]

    s1 = _sign_eps(cross(pq, cp - p))                    # wall start vs link
    s2 = _sign_eps(cross(pq, (cp + cd) - p))             # wall end vs link
    s3 = _sign_eps(cd[0] * (p[:, 1] - c.y) - cd[1] * (p[:, 0] - c.x))
    s4 = _sign_eps(cd[0] * (q[:, 1] - c.y) - cd[1] * (q[:, 0] - c.x))

    proper = (s1 * s2 < 0) & (s3 * s4 < 0)

    def within(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
        lo = np.minimum(a, b) - COLLINEAR_EPS
        hi = np.maximum(a, b) + COLLINEAR_EPS
        return (lo[:, 0] <= x[:, 0]) & (x[:, 0] <= hi[:, 0]) & (
            lo[:, 1] <= x[:, 1]
        ) & (x[:, 1] <= hi[:, 1])

    cpt = np.broadcast_to(cp, p.shape)
    dpt = np.broadcast_to(cp + cd, p.shape)
    touch = (
        ((s1 == 0) & within(p, q, cpt))
        | ((s2 == 0) & within(p, q, dpt))
        | ((s3 == 0) & within(cpt, dpt, p))
        | ((s4 == 0) & within(cpt, dpt, q))
    )
    return proper | touch


def _adjacency(n: int, edges: np.ndarray) -> list[np.ndarray]:
    """Per-node sorted neighbor arrays from an undirected edge list."""
    if len(edges) == 0:
        empty = np.empty(0, dtype=np.int64)
        return [empty for _ in range(n)]
    both = np.concatenate([edges, edges[:, ::-1]])
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    counts = np.bincount(both[:, 0], minlength=n)
    offsets = np.concatenate([[0], np.cumsum(counts)])
    return [both[offsets[i]:offsets[i + 1], 1] for i in range(n)]


@dataclass
class World:
    """One deployed network: node positions plus usable links.

    out_links[i] is the sorted array of node ids that node i can forward
    to. The relation is symmetric by construction. gabriel_links is the
    same structure restricted to the Gabriel subgraph and is computed on
    first use, since only face routing ever needs it.
    """

    region: Region
    obstacle: Obstacle
    positions: np.ndarray
    edges: np.ndarray
    out_links: list[np.ndarray]
    _gabriel_edges: np.ndarray | None = field(default=None, repr=False)
    _gabriel_links: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.positions)

    def pos(self, node: int) -> Vec2:
        x, y = self.positions[node]
        return Vec2(float(x), float(y))

    def gabriel_edges(self) -> np.ndarray:
        if self._gabriel_edges is None:
            self._gabriel_edges = _gabriel_filter(self.positions, self.edges)
        return self._gabriel_edges

    @property
    def gabriel_links(self) -> list[np.ndarray]:
        if self._gabriel_links is None:
            self._gabriel_links = _adjacency(self.n, self.gabriel_edges())
        return self._gabriel_links


def _gabriel_filter(positions: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Keep the edges whose diameter disk contains no third node.

    "Contains" is strict interior with the GABRIEL_EPS slack on squared
    distance, so a node sitting exactly on the circle does not disqualify
    the edge. Candidate blockers come from a ball query around each edge
    midpoint; any node inside the disk counts, neighbor or not.
    """
    if len(edges) == 0:
        return edges.copy()
    tree = cKDTree(positions)
    mids = 0.5 * (positions[edges[:, 0]] + positions[edges[:, 1]])
    diffs = positions[edges[:, 0]] - positions[edges[:, 1]]
    radii = 0.5 * np.sqrt(np.einsum("ij,ij->i", diffs, diffs))
    near = tree.query_ball_point(mids, radii)
    keep = np.ones(len(edges), dtype=bool)
    for k, candidates in enumerate(near):
        u = edges[k, 0]
        v = edges[k, 1]
        r2 = radii[k] * radii[k]
        mid = mids[k]
        for w in candidates:
            if w == u or w == v:
                continue
            dx = positions[w, 0] - mid[0]
            dy = positions[w, 1] - mid[1]
            if dx * dx + dy * dy < r2 - GABRIEL_EPS:
                keep[k] = False
                break
    return edges[keep]


def deploy(
    density: float,
    region: Region,
    obstacle: Obstacle,
    rng_seed,
) -> World:
    """Drop round(density * area) nodes uniformly and wire them up.

    rng_seed may be an integer, a numpy SeedSequence, or a prepared
    Generator; identical seeds give byte-identical worlds. Links join
    every pair at distance <= 1 whose segment touches no wall.
    """
    if density < 0:
        raise ValueError(f"density must be nonnegative, got {density}")
    if isinstance(rng_seed, np.random.Generator):
        rng = rng_seed
    else:
        rng = np.random.Generator(np.random.Philox(rng_seed))
    n = int(round(density * region.area))
    positions = rng.uniform(
        low=(region.x_min, region.y_min),
        high=(region.x_max, region.y_max),
        size=(n, 2),
    )
    if n >= 2:
        tree = cKDTree(positions)
        pairs = tree.query_pairs(COMM_RADIUS, output_type="ndarray")
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    if len(pairs) > 0:
        # Canonical ordering keeps serialization reproducible.
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs = pairs[order]
        for wall in obstacle.walls:
            if len(pairs) == 0:
                break
            blocked = _links_blocked_by_wall(
                positions[pairs[:, 0]], positions[pairs[:, 1]], wall.a, wall.b
            )
            pairs = pairs[~blocked]
    edges = pairs.astype(np.int64, copy=False)
    return World(
        region=region,
        obstacle=obstacle,
        positions=positions,
        edges=edges,
        out_links=_adjacency(n, edges),
    )


def interior_mean_degree(world: World) -> float:
    """Mean out-degree over nodes at least one radio radius from the border.

    Interior nodes see the full communication disk, so with no obstacle
    their expected degree is pi * density. Returns nan when no node
    qualifies.
    """
    degrees = [
        len(world.out_links[i])
        for i in range(world.n)
        if world.region.border_distance(world.pos(i)) >= COMM_RADIUS
    ]
    if not degrees:
        return float("nan")
    return float(np.mean(degrees))


def is_connected(n: int, links: list[np.ndarray]) -> bool:
    """Whether the graph with the given adjacency has a single component."""
    if n == 0:
        return True
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in links[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    return bool(seen.all())


def find_planarity_violation(
    positions: np.ndarray, edges: np.ndarray
) -> tuple[int, int] | None:
    """Search an embedded edge set for two edges whose interiors cross.

    Returns the offending pair of edge indices, or None if the embedding
    is planar. Edges sharing a vertex are allowed to touch there. Uses a
    unit-cell bucket grid so only nearby edges are compared; correct for
    edges no longer than the communication radius.
    """
    m = len(edges)
    if m < 2:
        return None
    cells: dict[tuple[int, int], list[int]] = {}
    for k in range(m):
        pa = positions[edges[k, 0]]
        pb = positions[edges[k, 1]]
        cx0 = math.floor(min(pa[0], pb[0]))
        cx1 = math.floor(max(pa[0], pb[0]))
        cy0 = math.floor(min(pa[1], pb[1]))
        cy1 = math.floor(max(pa[1], pb[1]))
        for cx in range(cx0, cx1 + 1):
            for cy in range(cy0, cy1 + 1):
                cells.setdefault((cx, cy), []).append(k)
    checked: set[tuple[int, int]] = set()
    for bucket in cells.values():
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                e1, e2 = bucket[i], bucket[j]
                key = (e1, e2) if e1 < e2 else (e2, e1)
                if key in checked:
                    continue
                checked.add(key)
                a, b = edges[e1]
                c, d = edges[e2]
                if a == c or a == d or b == c or b == d:
                    continue
                if segments_cross_interior(
                    Vec2(*positions[a]),
                    Vec2(*positions[b]),
                    Vec2(*positions[c]),
                    Vec2(*positions[d]),
                ):
                    return key
    return None


def world_to_text(world: World) -> str:
    """Serialize nodes and links to the plain 'worldv1' text format.

    Line 1 is the literal header. Node lines are 'id x y' with full float
    repr; link lines are 'u v' with u < v. The format carries only the
    graph, not the region or obstacle.
    """
    lines = ["worldv1"]
    for i in range(world.n):
        x, y = world.positions[i]
        lines.append(f"{i} {float(x)!r} {float(y)!r}")
    for u, v in world.edges:
        lines.append(f"{int(u)} {int(v)}")
    return "\n".join(lines) + "\n"


def parse_world_text(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a 'worldv1' dump back into (positions, edges) arrays."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "worldv1":
        raise ValueError("not a worldv1 dump: missing header")
    node_rows: list[tuple[int, float, float]] = []
    edge_rows: list[tuple[int, int]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) == 3:
            node_rows.append((int(parts[0]), float(parts[1]), float(parts[2])))
        elif len(parts) == 2:
            edge_rows.append((int(parts[0]), int(parts[1])))
        else:
            raise ValueError(f"unparseable worldv1 line: {ln!r}")
    node_rows.sort()
    if [i for i, _, _ in node_rows] != list(range(len(node_rows))):
        raise ValueError("worldv1 node ids must be 0..n-1")
    positions = np.array([[x, y] for _, x, y in node_rows], dtype=float).reshape(
        len(node_rows), 2
    )
    edges = np.array(edge_rows, dtype=np.int64).reshape(len(edge_rows), 2)
    return positions, edges

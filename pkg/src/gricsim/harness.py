"""Monte-Carlo experiment machinery.

One trial = one fresh random world + one message routed under one
algorithm, with shared success and failure rules:

* success   -- the message occupies a node at distance < 1 from the
               destination point
* fail_oob  -- the occupied node is within distance 1 of the region
               border (inclusive), checked at the source and after
               every hop
* fail_ttl  -- the hop counter exceeds n, the world's node count
* fail_stuck -- the algorithm signals it has no move left
* fail_no_nodes -- the world came up empty

Reproducibility contract: every trial derives its randomness from
(master_seed, density, trial_index, stream), with separate streams for
world generation and routing decisions. Nothing depends on execution
order, so sweeps can fan out to worker processes and still produce
byte-identical reports.
"""

from __future__ import annotations

import multiprocessing
import statistics
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .baselines import (
    face_route,
    greedy_step,
    inertia_only_step,
    ltp_init,
    ltp_step,
)
from .geometry import Vec2
from .outcomes import Stuck, TrialOutcome, TrialStatus
from .routing import MessageState, RoutingParams, gric_step
from .worldgen import COMM_RADIUS, Region, World, deploy, make_obstacle

STANDARD_REGION = Region(-5.0, 25.0, -5.0, 25.0)
SOURCE_POINT = Vec2(0.0, 10.0)
DEST_POINT = Vec2(20.0, 10.0)

# Stream tags keeping world randomness and routing randomness disjoint.
WORLD_STREAM = 0
ROUTE_STREAM = 1


class EmptyInput(ValueError):
    """median() was handed an empty sequence."""


class Algorithm(Enum):
    GREEDY = "greedy"
    INERTIA = "inertia"
    GRIC_MINUS = "gric-"
    GRIC_PLUS = "gric+"
    LTP = "ltp"
    FACE = "face"


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: Algorithm
    obstacle: str = "none"
    densities: tuple[float, ...] = (5.0,)
    trials_per_point: int = 1000
    master_seed: int = 0
    params: RoutingParams = RoutingParams()
    disable_out_of_bounds: bool = False
    record_path: bool = False

    def __post_init__(self) -> None:
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be at least 1")
        if not self.densities:
            raise ValueError("at least one density is required")
        if any(d < 0 for d in self.densities):
            raise ValueError("densities must be nonnegative")
        if self.master_seed < 0:
            raise ValueError("master_seed must be nonnegative")


@dataclass
class SweepRow:
    algorithm: str
    obstacle: str
    density: float
    trials: int
    success_rate: float
    median_hops: float
    median_distance: float
    fail_ttl: int
    fail_oob: int
    fail_stuck: int
    fail_no_nodes: int


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)


def median(values) -> float:
    """Standard median; mean of the two central elements on even length."""
    vals = list(values)
    if not vals:
        raise EmptyInput("median of an empty sequence")
    return float(statistics.median(vals))


def _density_key(density: float) -> int:
    return int(round(density * 1e6))


def trial_rng(
    master_seed: int, density: float, trial_index: int, stream: int
) -> np.random.Generator:
    """Counter-based generator for one (trial, stream) pair.

    The spawn key fully determines the stream, so any subset of trials
    can be run in any order, on any worker, with identical results.
    """
    ss = np.random.SeedSequence(
        entropy=master_seed,
        spawn_key=(_density_key(density), trial_index, stream),
    )
    return np.random.Generator(np.random.Philox(ss))


def build_trial_world(
    master_seed: int, density: float, trial_index: int, obstacle_name: str
) -> World:
    rng = trial_rng(master_seed, density, trial_index, WORLD_STREAM)
    return deploy(density, STANDARD_REGION, make_obstacle(obstacle_name), rng)


def source_node(world: World, point: Vec2 = SOURCE_POINT) -> int:
    """Node closest to the injection point; ties go to the smallest id."""
    d = world.positions - np.array([point.x, point.y])
    return int(np.argmin(np.einsum("ij,ij->i", d, d)))


def run_trial(config: ExperimentConfig, density: float, trial_index: int) -> TrialOutcome:
    """One seeded world, one message, one verdict."""
    world = build_trial_world(
        config.master_seed, density, trial_index, config.obstacle
    )
    if world.n == 0:
        return TrialOutcome(TrialStatus.FAIL_NO_NODES, 0, 0.0)
    source = source_node(world)
    ttl = world.n
    if config.algorithm is Algorithm.FACE:
        return face_route(
            world,
            source,
            DEST_POINT,
            ttl,
            enforce_oob=not config.disable_out_of_bounds,
            record_path=config.record_path,
        )
    rng = trial_rng(config.master_seed, density, trial_index, ROUTE_STREAM)
    params = replace(
        config.params, randomized=(config.algorithm is Algorithm.GRIC_PLUS)
    )

    cur = source
    mstate = MessageState(dest_pos=DEST_POINT)
    lstate = ltp_init(source)
    hops = 0
    dist = 0.0
    path = [world.pos(source)] if config.record_path else None
    check_oob = not config.disable_out_of_bounds

    while True:
        p = world.pos(cur)
        if (p - DEST_POINT).norm() < COMM_RADIUS:
            return TrialOutcome(TrialStatus.SUCCESS, hops, dist, path)
        if check_oob and world.region.border_distance(p) <= COMM_RADIUS:
            return TrialOutcome(TrialStatus.FAIL_OOB, hops, dist, path)
        if hops > ttl:
            return TrialOutcome(TrialStatus.FAIL_TTL, hops, dist, path)
        try:
            if config.algorithm is Algorithm.GREEDY:
                nxt = greedy_step(world, cur, DEST_POINT)
            elif config.algorithm is Algorithm.INERTIA:
                nxt = inertia_only_step(world, cur, mstate, params.beta)
                mstate = replace(mstate, prev_pos=p)
            elif config.algorithm is Algorithm.LTP:
                nxt = ltp_step(world, cur, lstate, DEST_POINT, rng)
            elif config.algorithm in (Algorithm.GRIC_MINUS, Algorithm.GRIC_PLUS):
                nxt, mstate = gric_step(world, cur, mstate, params, rng)
            else:
                raise ValueError(f"unhandled algorithm {config.algorithm}")
        except Stuck:
            return TrialOutcome(TrialStatus.FAIL_STUCK, hops, dist, path)
        dist += (world.pos(nxt) - p).norm()
        hops += 1
        cur = nxt
        if path is not None:
            path.append(world.pos(nxt))


def _trial_task(args: tuple) -> tuple[int, int, str, int, float]:
    config, di, density, trial_index = args
    out = run_trial(config, density, trial_index)
    return di, trial_index, out.status.value, out.hops, out.distance


def run_sweep(config: ExperimentConfig, workers: int = 1) -> SweepReport:
    """All densities, trials_per_point trials each, aggregated per density.

    workers > 1 fans the trials out to a process pool; the report is
    byte-identical regardless, because every trial is self-seeded and
    results are folded in (density, trial_index) order.
    """
    tasks = [
        (config, di, d, t)
        for di, d in enumerate(config.densities)
        for t in range(config.trials_per_point)
    ]
    if workers > 1:
        chunk = max(1, len(tasks) // (workers * 8))
        with multiprocessing.Pool(processes=workers) as pool:
            raw = pool.map(_trial_task, tasks, chunksize=chunk)
    else:
        raw = [_trial_task(t) for t in tasks]
    raw.sort(key=lambda r: (r[0], r[1]))

    report = SweepReport()
    for di, d in enumerate(config.densities):
        chunk_rows = [r for r in raw if r[0] == di]
        statuses = [r[2] for r in chunk_rows]
        succ_hops = [r[3] for r in chunk_rows if r[2] == TrialStatus.SUCCESS.value]
        succ_dist = [r[4] for r in chunk_rows if r[2] == TrialStatus.SUCCESS.value]
        n_trials = len(chunk_rows)
        n_succ = len(succ_hops)
        report.rows.append(
            SweepRow(
                algorithm=config.algorithm.value,
                obstacle=config.obstacle,
                density=d,
                trials=n_trials,
                success_rate=n_succ / n_trials,
                median_hops=median(succ_hops) if n_succ else float("nan"),
                median_distance=median(succ_dist) if n_succ else float("nan"),
                fail_ttl=statuses.count(TrialStatus.FAIL_TTL.value),
                fail_oob=statuses.count(TrialStatus.FAIL_OOB.value),
                fail_stuck=statuses.count(TrialStatus.FAIL_STUCK.value),
                fail_no_nodes=statuses.count(TrialStatus.FAIL_NO_NODES.value),
            )
        )
    return report

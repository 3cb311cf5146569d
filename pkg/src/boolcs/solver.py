"""The BCS driver: a worklist of solving branches and the zero decomposition tree.

Each branch is one TriSet run.  Every split inside a branch adds a right
child (the spawned system, queued as a new branch) and a left child (the
branch itself continuing) one level below the current node.  A branch's
initial depth is the depth of the node it starts from and its depth is the
depth of the node it ends on.
"""

from __future__ import annotations

import enum
import heapq
import math
import time
from collections import Counter
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Iterable

from .backend import kernel_for
from .poly import BoolPoly, TriangularSet
from .triset import ChooseStrategy, PolySystem

__all__ = [
    "BranchOrder",
    "SolverConfig",
    "TreeNode",
    "BranchTask",
    "BranchRecord",
    "SolveReport",
    "TreeStats",
    "bcs",
    "tree_stats",
]


class BranchOrder(enum.Enum):
    LIFO = "lifo"
    LOW_FIRST = "low-first"
    HIGH_FIRST = "high-first"


@dataclass(frozen=True)
class SolverConfig:
    choose: ChooseStrategy = ChooseStrategy.INDEX_LEX
    threshold: float = 4
    branch_order: BranchOrder = BranchOrder.LIFO
    branch_limit: int | None = None
    time_limit: float | None = None
    seed: int | None = None
    backend: str | None = None
    threads: int = 1
    record_tree: bool = False
    debug: bool = False

    def __post_init__(self):
        if not (self.threshold == math.inf or (self.threshold >= 1 and self.threshold == int(self.threshold))):
            raise ValueError(f"threshold must be a positive integer or inf, got {self.threshold}")
        if self.branch_limit is not None and self.branch_limit < 1:
            raise ValueError("branch_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass(frozen=True)
class TreeNode:
    id: int
    parent: int | None
    side: str  # "root", "L" or "R"
    depth: int

    def line(self) -> str:
        parent = "-" if self.parent is None else str(self.parent)
        return f"node {self.id} parent {parent} side {self.side} depth {self.depth}"


@dataclass(order=True)
class BranchTask:
    sort_key: tuple
    system: object = field(compare=False)
    node: int = field(compare=False)
    initial_depth: int = field(compare=False)
    seq: int = field(compare=False)


@dataclass(frozen=True)
class BranchRecord:
    start_node: int
    initial_depth: int
    depth: int
    seconds: float
    found: bool


@dataclass
class SolveReport:
    n: int
    trisets: list[TriangularSet]
    branches: list[BranchRecord]
    partial: bool = False
    tree: list[TreeNode] | None = None
    wall_seconds: float = 0.0
    backend: str = ""

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    @property
    def depth_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(b.depth for b in self.branches).items()))

    @property
    def average_depth(self) -> float:
        if not self.branches:
            return 0.0
        return sum(b.depth for b in self.branches) / len(self.branches)

    @property
    def max_depth(self) -> int:
        return max((b.depth for b in self.branches), default=0)

    @property
    def solution_count(self) -> int:
        return sum(1 << (self.n - len(a)) for a in self.trisets)


@dataclass(frozen=True)
class TreeStats:
    branch_count: int
    average_depth: float
    depth_histogram: dict[int, int]
    initial_depth_counts: dict[int, int]


def tree_stats(report: SolveReport) -> TreeStats:
    init = dict(sorted(Counter(b.initial_depth for b in report.branches).items()))
    return TreeStats(report.branch_count, report.average_depth, report.depth_histogram, init)


class _Worklist:
    def __init__(self, order: BranchOrder):
        self.order = order
        self.items: list[BranchTask] = []

    def push(self, task: BranchTask) -> None:
        if self.order is BranchOrder.LIFO:
            self.items.append(task)
        else:
            heapq.heappush(self.items, task)

    def pop(self) -> BranchTask:
        if self.order is BranchOrder.LIFO:
            return self.items.pop()
        return heapq.heappop(self.items)

    def __len__(self) -> int:
        return len(self.items)


class _Run:
    """Mutable solve state shared by the sequential and threaded loops."""

    def __init__(self, n, cfg, kernel):
        self.n = n
        self.cfg = cfg
        self.kernel = kernel
        self.pending = _Worklist(cfg.branch_order)
        self.tree = [] if cfg.record_tree else None
        self.next_node = 0
        self.seq = 0
        self.trisets: list[TriangularSet] = []
        self.records: list[BranchRecord] = []
        self.deadline = None if cfg.time_limit is None else time.perf_counter() + cfg.time_limit

    def node(self, parent, side, depth) -> int:
        nid = self.next_node
        self.next_node += 1
        if self.tree is not None:
            self.tree.append(TreeNode(nid, parent, side, depth))
        return nid

    def push(self, system, node, depth) -> None:
        if self.cfg.branch_order is BranchOrder.LOW_FIRST:
            key = (depth, self.seq)
        elif self.cfg.branch_order is BranchOrder.HIGH_FIRST:
            key = (-depth, self.seq)
        else:
            key = (self.seq,)
        self.pending.push(BranchTask(key, system, node, depth, self.seq))
        self.seq += 1

    def execute(self, task):
        t0 = time.perf_counter()
        found, spawned = self.kernel.run(task.system, self.cfg.threshold, self.cfg.choose)
        return found, spawned, time.perf_counter() - t0

    def integrate(self, task, found, spawned, seconds) -> None:
        # bookkeeping counts toward the branch time so per-branch averages add up to wall time
        t0 = time.perf_counter()
        cur, depth = task.node, task.initial_depth
        for system in spawned:
            right = self.node(cur, "R", depth + 1)
            left = self.node(cur, "L", depth + 1)
            self.push(system, right, depth + 1)
            cur, depth = left, depth + 1
        if found is not None:
            self.trisets.append(TriangularSet(self.n, self.kernel.polys(found)))
        seconds += time.perf_counter() - t0
        self.records.append(BranchRecord(task.node, task.initial_depth, depth, seconds, found is not None))

    def exhausted(self) -> bool:
        limit = self.cfg.branch_limit
        if limit is not None and len(self.records) >= limit:
            return True
        return self.deadline is not None and time.perf_counter() >= self.deadline


def _as_system(system) -> tuple[int, list[BoolPoly]]:
    if isinstance(system, PolySystem):
        return system.n, list(system.polys)
    polys = list(system)
    if not polys:
        raise ValueError("an empty polynomial list has no ambient n; pass a PolySystem")
    return polys[0].n, polys


def bcs(system: PolySystem | Iterable[BoolPoly], cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Decompose the zero set of ``system`` into disjoint triangular sets.

    Runs solving branches from the worklist in ``cfg.branch_order`` until none
    are left, ``cfg.branch_limit`` branches have run or ``cfg.time_limit``
    seconds have passed (the report is then marked partial).
    """
    n, polys = _as_system(system)
    kernel = kernel_for(n, cfg.backend, check_index=cfg.debug)
    run = _Run(n, cfg, kernel)
    t0 = time.perf_counter()
    root = run.node(None, "root", 0)
    run.push(kernel.prepare(polys), root, 0)
    if cfg.threads == 1:
        while run.pending and not run.exhausted():
            task = run.pending.pop()
            run.integrate(task, *run.execute(task))
    else:
        _run_threaded(run)
        run.trisets.sort(key=_triset_key)
    return SolveReport(
        n=n,
        trisets=run.trisets,
        branches=run.records,
        partial=bool(run.pending),
        tree=run.tree,
        wall_seconds=time.perf_counter() - t0,
        backend=kernel.name,
    )


def _run_threaded(run: _Run) -> None:
    limit = run.cfg.branch_limit
    started = 0
    with ThreadPoolExecutor(run.cfg.threads) as pool:
        inflight = {}
        while run.pending or inflight:
            while (run.pending and len(inflight) < run.cfg.threads and (limit is None or started < limit)
                   and not (run.deadline is not None and time.perf_counter() >= run.deadline)):
                task = run.pending.pop()
                inflight[pool.submit(run.execute, task)] = task
                started += 1
            if not inflight:
                break
            done, _ = wait(inflight, return_when=FIRST_COMPLETED)
            for fut in sorted(done, key=lambda f: inflight[f].seq):
                task = inflight.pop(fut)
                run.integrate(task, *fut.result())


def _triset_key(a: TriangularSet):
    return tuple(tuple(sorted(p.termset)) for p in a.elems)

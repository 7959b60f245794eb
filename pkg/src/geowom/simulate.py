"""Average write counts of lifted WOM codes under random messages.

Message model: the first message is uniform over all messages (it always
consumes a write, even when the erased state already reads as that message);
every later message is uniform over the messages other than the stored one.
A trial ends at the first message that cannot be written and reports the
number of successful writes.

Both the Monte Carlo estimate and the exact expectation run over the same
transition graph, built once per (code, strategy, q): nodes are (state, stored
message[, write index]) and edges are labelled by the next message.

Random streams: trial ``i`` draws its uniforms from numpy's PCG64 seeded with
``SeedSequence(seed, spawn_key=(i,))``. Step ``k`` turns its uniform ``u`` into
``r = floor(u * K)`` with ``K = M`` on the first step and ``M - 1`` after, and
the message is ``r`` (first step) or ``r + (r >= stored)``. The stream of a
trial depends only on (seed, i), so any split of trials across workers gives
the same result.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence

import numpy as np

from .multilevel import LiftedCode, lifted
from .wom_core import UnwritableError

CODES = ("rs", "pg22")
SIM_STRATEGIES = ("complement", "a", "b")
MAX_GRAPH_NODES = 2_000_000


@dataclass(frozen=True)
class SimConfig:
    code: str
    strategy: str
    q: int
    trials: int = 100_000
    seed: int = 7
    workers: int = 1

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown code {self.code!r}; choose from {CODES}")
        if self.strategy not in SIM_STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {SIM_STRATEGIES}")
        if self.q < 2 or self.trials < 1:
            raise ValueError("need q >= 2 and trials >= 1")


@dataclass
class SimResult:
    config: SimConfig
    mean: float
    stderr: float
    histogram: Dict[int, int] = field(default_factory=dict)

    def as_row(self) -> List:
        c = self.config
        return [c.code, c.strategy, c.q, c.trials, f"{self.mean:.6f}", f"{self.stderr:.6f}"]


class TransitionGraph:
    """Node 0 is the erased start. ``row(v)[y]`` is the node reached by writing
    ``y`` from ``v`` (-1: erasure required, or y is the stored message).
    Rows are computed on first use."""

    def __init__(self, code: LiftedCode, max_nodes: int = MAX_GRAPH_NODES):
        self.code = code
        self.num_messages = code.num_messages
        self.max_nodes = max_nodes
        self._use_write = code.strategy == "complement"
        start = (code.zero_state(), -1, 0)
        self.keys: List[tuple] = [start]
        self._index = {start: 0}
        self._table = np.full((1024, self.num_messages), -1, dtype=np.int64)
        self._done = np.zeros(1024, dtype=bool)
        self._stored = np.full(1024, -1, dtype=np.int64)

    @property
    def size(self) -> int:
        return len(self.keys)

    def row(self, v: int) -> np.ndarray:
        if not self._done[v]:
            self._expand(v)
        return self._table[v]

    def ensure(self, nodes: np.ndarray) -> np.ndarray:
        """Expand the given nodes; returns the successor table."""
        for v in np.unique(nodes[~self._done[nodes]]):
            self._expand(int(v))
        return self._table

    def _grow(self) -> None:
        cap = 2 * len(self._done)
        table = np.full((cap, self.num_messages), -1, dtype=np.int64)
        table[: len(self._table)] = self._table
        self._table = table
        self._done = np.concatenate([self._done, np.zeros(cap - len(self._done), dtype=bool)])
        self._stored = np.concatenate([self._stored, np.full(cap - len(self._stored), -1, dtype=np.int64)])

    def _expand(self, v: int) -> None:
        s, last, j = self.keys[v]
        code = self.code
        for y in range(self.num_messages):
            if y == last:
                continue
            try:
                new = code.encode(j + 1, s, y)
            except UnwritableError:
                continue
            key = (new, y, j + 1 if self._use_write else 0)
            w = self._index.get(key)
            if w is None:
                if len(self.keys) >= self.max_nodes:
                    raise MemoryError(f"transition graph exceeds {self.max_nodes} nodes")
                w = self._index[key] = len(self.keys)
                self.keys.append(key)
                if w >= len(self._done):
                    self._grow()
                self._stored[w] = y
            self._table[v, y] = w
        self._done[v] = True

    def stored(self, nodes: np.ndarray) -> np.ndarray:
        return self._stored[nodes]

    def expand_all(self) -> "TransitionGraph":
        v = 0
        while v < len(self.keys):
            self.row(v)
            v += 1
        return self

    @property
    def nxt(self) -> np.ndarray:
        """Dense successor table (expands the whole graph)."""
        self.expand_all()
        return self._table[: self.size]

    def max_writes(self) -> int:
        """Bound on writes per trial: each write raises the level sum, except
        possibly the first."""
        return self.code.n * (self.code.q - 1) + 1


def build_graph(code: LiftedCode, max_nodes: int = MAX_GRAPH_NODES) -> TransitionGraph:
    return TransitionGraph(code, max_nodes).expand_all()


def _topological(graph: TransitionGraph) -> List[int]:
    """Post-order: every node comes after all nodes it can move to. Writes
    strictly raise the state (or, from the start node, only set the stored
    message), so the graph is acyclic."""
    nxt = graph.nxt
    order: List[int] = []
    seen = np.zeros(graph.size, dtype=bool)
    stack = [(0, 0)]
    seen[0] = True
    while stack:
        v, k = stack.pop()
        row = nxt[v]
        while k < len(row) and (row[k] < 0 or seen[row[k]]):
            k += 1
        if k < len(row):
            stack.append((v, k + 1))
            seen[row[k]] = True
            stack.append((int(row[k]), 0))
        else:
            order.append(v)
    return order


def exact_from_graph(graph: TransitionGraph) -> float:
    m = graph.num_messages
    nxt = graph.nxt
    stored = graph.stored(np.arange(graph.size))
    value = np.zeros(graph.size)
    for v in _topological(graph):
        kids = nxt[v][nxt[v] >= 0]
        value[v] = (len(kids) + value[kids].sum()) / (m if stored[v] < 0 else m - 1)
    return float(value[0])


def longest_trace(graph: TransitionGraph) -> int:
    nxt = graph.nxt
    best = np.zeros(graph.size, dtype=np.int64)
    for v in _topological(graph):
        kids = nxt[v][nxt[v] >= 0]
        best[v] = 1 + best[kids].max() if len(kids) else 0
    return int(best[0])


@lru_cache(maxsize=None)
def graph_for(code: str, strategy: str, q: int) -> TransitionGraph:
    """Shared lazily-expanded graph of a named configuration."""
    return TransitionGraph(lifted(code, q, strategy))


def exact_expected_writes(code: str, strategy: str, q: int) -> float:
    """Expected number of writes by backward induction over the absorbing chain."""
    return exact_from_graph(graph_for(code, strategy, q))


def trial_uniforms(seed: int, trials: Sequence[int], length: int) -> np.ndarray:
    out = np.empty((len(trials), length))
    for row, i in enumerate(trials):
        gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(int(i),))))
        out[row] = gen.random(length)
    return out


def run_trials(graph: TransitionGraph, seed: int, start: int, stop: int) -> np.ndarray:
    """Write counts of trials ``start .. stop - 1``."""
    m = graph.num_messages
    length = graph.max_writes() + 1
    u = trial_uniforms(seed, range(start, stop), length)
    node = np.zeros(stop - start, dtype=np.int64)
    writes = np.zeros(stop - start, dtype=np.int64)
    alive = np.ones(stop - start, dtype=bool)
    for k in range(length):
        last = graph.stored(node)
        if k == 0:
            y = np.minimum((u[:, 0] * m).astype(np.int64), m - 1)
        else:
            r = np.minimum((u[:, k] * (m - 1)).astype(np.int64), m - 2)
            y = r + (r >= last)
        table = graph.ensure(node[alive])
        nxt = np.where(alive, table[node, y], -1)
        ok = alive & (nxt >= 0)
        writes += ok
        alive = ok
        node = np.where(ok, nxt, node)
        if not alive.any():
            break
    return writes


def _chunk_job(args) -> np.ndarray:
    code, strategy, q, seed, start, stop = args
    return run_trials(graph_for(code, strategy, q), seed, start, stop)


def monte_carlo(config: SimConfig, chunk: int = 20_000) -> SimResult:
    spans = [(a, min(a + chunk, config.trials)) for a in range(0, config.trials, chunk)]
    jobs = [(config.code, config.strategy, config.q, config.seed, a, b) for a, b in spans]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_chunk_job, jobs))
    else:
        parts = [_chunk_job(job) for job in jobs]
    counts = np.concatenate(parts)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / np.sqrt(len(counts))) if len(counts) > 1 else 0.0
    values, freq = np.unique(counts, return_counts=True)
    return SimResult(config, mean, stderr, {int(v): int(f) for v, f in zip(values, freq)})


def sweep(
    code: str,
    qs: Sequence[int],
    strategies: Sequence[str] = SIM_STRATEGIES,
    trials: int = 100_000,
    seed: int = 7,
    workers: int = 1,
) -> List[SimResult]:
    return [
        monte_carlo(SimConfig(code, strategy, q, trials, seed, workers))
        for strategy in strategies
        for q in qs
    ]


CSV_HEADER = ["code", "strategy", "q", "trials", "mean_writes", "stderr"]


def sweep_csv(results: Sequence[SimResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in results:
        w.writerow(r.as_row())
    return buf.getvalue()


def result_dict(r: SimResult) -> dict:
    return {"config": asdict(r.config), "mean": r.mean, "stderr": r.stderr, "histogram": r.histogram}

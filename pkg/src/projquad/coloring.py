"""Exact chromatic number by saturation-guided branch and bound."""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Optional

from .errors import BadParameters, BudgetExceeded
from .graphs import Graph, Label


@dataclass(frozen=True)
class ChiResult:
    """Exact chromatic number with a validated colouring certificate.

    `exhausted` is True when optimality was proven by exhausting the search
    for one colour fewer (rather than by the clique bound matching).
    """

    chi: int
    colouring: Dict[Label, int]
    clique: tuple[Label, ...]
    nodes: int
    exhausted: bool


class _StopSearch(Exception):
    pass


class _Shared:
    """Incumbent and budget state, shared across worker threads."""

    def __init__(self, lb: int, deadline: Optional[float], max_nodes: Optional[int]) -> None:
        self.lock = threading.Lock()
        self.best_k: Optional[int] = None
        self.best_col: Optional[list[int]] = None
        self.best_branch = (1 << 60,)
        self.lb = lb
        self.deadline = deadline
        self.max_nodes = max_nodes
        self.nodes = 0
        self.out_of_budget = False

    def improve(self, k: int, col: list[int], branch: tuple) -> None:
        with self.lock:
            if self.best_k is None or k < self.best_k or (k == self.best_k and branch < self.best_branch):
                self.best_k = k
                self.best_col = list(col)
                self.best_branch = branch

    def ub(self) -> int:
        with self.lock:
            return self.best_k if self.best_k is not None else 1 << 60

    def charge(self, n: int) -> None:
        with self.lock:
            self.nodes += n
            if self.max_nodes is not None and self.nodes > self.max_nodes:
                self.out_of_budget = True
        if self.deadline is not None and time.monotonic() > self.deadline:
            with self.lock:
                self.out_of_budget = True
        if self.out_of_budget:
            raise _StopSearch()


class _Search:
    """One sequential searcher over the indexed graph."""

    def __init__(self, adj: list[set[int]], degrees: list[int], shared: _Shared, branch: tuple) -> None:
        self.adj = adj
        self.n = len(adj)
        self.degrees = degrees
        self.shared = shared
        self.branch = branch
        self.col = [-1] * self.n
        self.sat: list[dict[int, int]] = [dict() for _ in range(self.n)]
        self.uncoloured = set(range(self.n))
        self.max_used = -1
        self.pending = 0

    def assign(self, v: int, c: int) -> None:
        self.col[v] = c
        self.uncoloured.discard(v)
        for w in self.adj[v]:
            if self.col[w] == -1:
                self.sat[w][c] = self.sat[w].get(c, 0) + 1

    def unassign(self, v: int, c: int) -> None:
        self.col[v] = -1
        self.uncoloured.add(v)
        for w in self.adj[v]:
            if self.col[w] == -1:
                k = self.sat[w][c] - 1
                if k:
                    self.sat[w][c] = k
                else:
                    del self.sat[w][c]

    def pick(self) -> int:
        return max(self.uncoloured, key=lambda v: (len(self.sat[v]), self.degrees[v], -v))

    def run(self) -> None:
        self.pending += 1
        if self.pending >= 128:
            self.shared.charge(self.pending)
            self.pending = 0
        if not self.uncoloured:
            self.shared.improve(self.max_used + 1, self.col, self.branch)
            return
        ub = self.shared.ub()
        if self.max_used + 1 >= ub or self.shared.lb >= ub:
            return
        v = self.pick()
        limit = min(self.max_used + 1, ub - 2)
        neighbour_colours = self.sat[v]
        for c in range(limit + 1):
            if c in neighbour_colours:
                continue
            prev_max = self.max_used
            self.max_used = max(self.max_used, c)
            self.assign(v, c)
            self.run()
            self.unassign(v, c)
            self.max_used = prev_max
            if self.shared.lb >= self.shared.ub():
                return


def _greedy_clique(adj: list[set[int]], degrees: list[int]) -> list[int]:
    order = sorted(range(len(adj)), key=lambda v: (-degrees[v], v))
    clique: list[int] = []
    for v in order:
        if all(v in adj[u] for u in clique):
            clique.append(v)
    return clique


def _greedy_colouring(adj: list[set[int]], degrees: list[int]) -> list[int]:
    n = len(adj)
    col = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if col[u] == -1), key=lambda u: (len(sat[u]), degrees[u], -u))
        c = 0
        while c in sat[v]:
            c += 1
        col[v] = c
        for w in adj[v]:
            if col[w] == -1:
                sat[w].add(c)
    return col


def _validate(adj: list[set[int]], col: list[int], k: int) -> None:
    if any(c < 0 or c >= k for c in col):
        raise RuntimeError("certificate colours out of range")
    for v, nbrs in enumerate(adj):
        for w in nbrs:
            if col[v] == col[w]:
                raise RuntimeError(f"certificate colours an edge ({v}, {w}) monochromatically")


def chromatic_number(
    graph: Graph,
    budget_ms: Optional[int] = None,
    max_nodes: Optional[int] = None,
    threads: int = 1,
) -> ChiResult:
    """Exact chromatic number with certificate, clique bound, and budget.

    Deterministic for a given graph: vertices are indexed in label order,
    branching always picks the most saturated vertex (ties: higher degree,
    then lower index) and tries colours in increasing order, never more than
    one beyond those already used.  Raises BudgetExceeded with the bracket
    found so far when the node or time budget runs out.  `threads` splits the
    root branches across a thread pool; the result is the same.
    """
    if threads < 1:
        raise BadParameters("threads must be >= 1")
    verts = graph.sorted_vertices()
    n = len(verts)
    if n == 0:
        return ChiResult(0, {}, (), 0, False)
    index = {v: i for i, v in enumerate(verts)}
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in graph.edges():
        adj[index[u]].add(index[v])
        adj[index[v]].add(index[u])
    degrees = [len(a) for a in adj]

    clique = _greedy_clique(adj, degrees)
    lb = len(clique)
    greedy = _greedy_colouring(adj, degrees)
    ub0 = max(greedy) + 1

    deadline = time.monotonic() + budget_ms / 1000.0 if budget_ms is not None else None
    shared = _Shared(lb, deadline, max_nodes)
    shared.improve(ub0, greedy, (0,))

    exhausted = False
    if ub0 > lb:
        clique_set = set(clique)
        rest = [v for v in range(n) if v not in clique_set]

        def make_search(branch: tuple) -> _Search:
            s = _Search(adj, degrees, shared, branch)
            for c, v in enumerate(clique):
                s.max_used = max(s.max_used, c)
                s.assign(v, c)
            return s

        try:
            if threads == 1 or not rest:
                s = make_search((0,))
                s.run()
                shared.charge(s.pending)
            else:
                probe = make_search((0,))
                v0 = probe.pick()
                candidates = [
                    c
                    for c in range(min(probe.max_used + 1, shared.ub() - 2) + 1)
                    if c not in probe.sat[v0]
                ]

                def work(idx_c: tuple[int, int]) -> None:
                    idx, c = idx_c
                    s = make_search((idx,))
                    s.max_used = max(s.max_used, c)
                    s.assign(v0, c)
                    try:
                        s.run()
                        shared.charge(s.pending)
                    except _StopSearch:
                        pass

                with ThreadPoolExecutor(max_workers=threads) as pool:
                    list(pool.map(work, list(enumerate(candidates))))
                if shared.out_of_budget:
                    raise _StopSearch()
            exhausted = shared.ub() > lb
        except _StopSearch:
            k = shared.best_k
            col = shared.best_col
            witness = {verts[i]: col[i] for i in range(n)} if col is not None else None
            raise BudgetExceeded(lower=lb, upper=k, colouring=witness, nodes=shared.nodes)

    k = shared.best_k
    col = shared.best_col
    assert k is not None and col is not None
    _validate(adj, col, k)
    colouring = {verts[i]: col[i] for i in range(n)}
    return ChiResult(k, colouring, tuple(verts[i] for i in clique), shared.nodes, exhausted)

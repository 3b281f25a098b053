"""Exact brute-force and branch-and-bound solvers.

These are the ground-truth verifiers for every reduction in the package, so
they are deliberately simple and exhaustive. Each solver accepts a SolveBudget
and raises BudgetExceededError rather than returning a truncated answer.
Minimization problems return None when infeasible.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, ValidationError
from .instances import CnfFormula, Graph, LabelCover, SetSystem, bits_of

__all__ = [
    "SolveBudget",
    "DEFAULT_BUDGET",
    "sat_max",
    "max_cov",
    "max_cov_at_least",
    "min_lab",
    "clique",
    "independent_set",
    "biclique",
    "count_ktt",
    "set_cover",
    "dom_set",
    "induced_matching",
    "induced_path",
    "induced_path_at_least",
    "densest_k",
    "max_induced_with_property",
    "SUPPORTED_PROPERTIES",
]


@dataclass(frozen=True)
class SolveBudget:
    """Caps on search-tree nodes and wall-clock time for one solver call."""

    max_nodes: int = 50_000_000
    max_millis: int = 120_000

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_millis <= 0:
            raise ValidationError("budget limits must be positive")


DEFAULT_BUDGET = SolveBudget()


class _Meter:
    """Node counter with periodic wall-clock checks."""

    __slots__ = ("nodes", "max_nodes", "deadline", "next_check")

    def __init__(self, budget: SolveBudget | None):
        budget = budget or DEFAULT_BUDGET
        self.nodes = 0
        self.max_nodes = budget.max_nodes
        self.deadline = time.monotonic() + budget.max_millis / 1000.0
        self.next_check = 4096

    def tick(self, n: int = 1):
        self.nodes += n
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(f"node budget exceeded ({self.max_nodes})")
        if self.nodes >= self.next_check:
            self.next_check = self.nodes + 4096
            if time.monotonic() > self.deadline:
                raise BudgetExceededError("time budget exceeded")


# ---------------------------------------------------------------------------
# 3-SAT


def sat_max(formula: CnfFormula, budget: SolveBudget | None = None) -> int:
    """Maximum number of clauses satisfied by any assignment (full enumeration)."""
    meter = _Meter(budget)
    pos, neg = [], []
    for clause in formula.clauses:
        pm = nm = 0
        for lit in clause:
            bit = 1 << (abs(lit) - 1)
            if lit > 0:
                pm |= bit
            else:
                nm |= bit
        pos.append(pm)
        neg.append(nm)
    m = formula.num_clauses
    best = 0
    for assign in range(1 << formula.num_vars):
        meter.tick()
        count = 0
        for pm, nm in zip(pos, neg):
            if (assign & pm) or (nm & ~assign):
                count += 1
        if count > best:
            best = count
            if best == m:
                break
    return best


# ---------------------------------------------------------------------------
# Label cover problems


def _edge_beta_masks(lc: LabelCover):
    """Per left vertex, list of (v, {alpha: beta bitmask}) over its incident edges."""
    per_u = []
    for u in range(lc.left_size):
        per_u.append([(v, lc.beta_masks(u, v)) for v in lc.left_neighbors[u]])
    return per_u


def max_cov(lc: LabelCover, budget: SolveBudget | None = None) -> int:
    """Maximum number of covered left vertices, by enumerating right labelings.

    A left vertex with no incident edges counts as covered as long as it has
    an admissible label.
    """
    meter = _Meter(budget)
    masks_by_u = _edge_beta_masks(lc)
    # Pack each vertex's admissible labels into bit positions so a labeling
    # check is a chain of ANDs over its edges.
    pos = [{a: i for i, a in enumerate(lc.admissible_list(u))} for u in range(lc.left_size)]
    full = [(1 << len(p)) - 1 for p in pos]
    edge_tables = []
    for u in range(lc.left_size):
        tables = []
        for v, bmask in masks_by_u[u]:
            table = [0] * lc.right_alphabet
            for a, mask in bmask.items():
                bit = 1 << pos[u][a]
                for b in bits_of(mask):
                    table[b] |= bit
            tables.append((v, table))
        edge_tables.append(tables)

    best = 0
    for sigma in itertools.product(range(lc.right_alphabet), repeat=lc.right_size):
        meter.tick()
        covered = 0
        for u in range(lc.left_size):
            m = full[u]
            for v, table in edge_tables[u]:
                m &= table[sigma[v]]
                if not m:
                    break
            if m:
                covered += 1
        if covered > best:
            best = covered
            if best == lc.left_size:
                break
    return best


def max_cov_at_least(lc: LabelCover, r: int, budget: SolveBudget | None = None) -> bool:
    """Decision variant: enumerate r-subsets of U with their left labelings."""
    meter = _Meter(budget)
    if r <= 0:
        return True
    if r > lc.left_size:
        return False
    bmask = {
        (u, v): lc.beta_masks(u, v)
        for u in range(lc.left_size)
        for v in lc.left_neighbors[u]
    }
    full = (1 << lc.right_alphabet) - 1
    adm = [lc.admissible_list(u) for u in range(lc.left_size)]
    for subset in itertools.combinations(range(lc.left_size), r):
        for labels in itertools.product(*(adm[u] for u in subset)):
            meter.tick()
            ok = True
            per_v: dict[int, int] = {}
            for u, a in zip(subset, labels):
                for v in lc.left_neighbors[u]:
                    m = per_v.get(v, full) & bmask[(u, v)][a]
                    if not m:
                        ok = False
                        break
                    per_v[v] = m
                if not ok:
                    break
            if ok:
                return True
    return False


def min_lab(
    lc: LabelCover, budget: SolveBudget | None = None, strategy: str = "labelsets"
) -> int | None:
    """Minimum total right labels in a multi-labeling covering every left vertex.

    `labelsets` enumerates right label-set assignments by increasing total
    cost (each left vertex can then pick its label independently), which stays
    feasible when left vertices are many. `assignments` follows the dual
    decomposition: enumerate left labelings, then solve a minimum hitting set
    per right vertex. Both are exact; returns None when no multi-labeling
    covers every left vertex.
    """
    if strategy == "labelsets":
        return _min_lab_labelsets(lc, _Meter(budget))
    if strategy == "assignments":
        return _min_lab_assignments(lc, _Meter(budget))
    raise ValidationError(f"unknown min_lab strategy {strategy!r}")


def _min_lab_labelsets(lc: LabelCover, meter: _Meter) -> int | None:
    masks_by_u = _edge_beta_masks(lc)
    # Feasibility with every label allowed: each u needs an alpha whose beta
    # set is nonempty on all incident edges.
    for u in range(lc.left_size):
        if not any(
            all(bmask[a] for _, bmask in masks_by_u[u]) for a in lc.admissible[u]
        ):
            return None

    live = [v for v in range(lc.right_size) if lc.right_neighbors[v]]
    usable = {}
    for v in live:
        labels = set()
        for u in lc.right_neighbors[v]:
            for a, b in lc.relations[(u, v)]:
                if a in lc.admissible[u]:
                    labels.add(b)
        usable[v] = sorted(labels)

    def feasible(choice: dict[int, int]) -> bool:
        # choice: right vertex -> chosen beta bitmask
        for u in range(lc.left_size):
            found = False
            for a in lc.admissible[u]:
                if all(bmask[a] & choice[v] for v, bmask in masks_by_u[u]):
                    found = True
                    break
            if not found:
                return False
        return True

    caps = [len(usable[v]) for v in live]

    def size_vectors(total, idx):
        if idx == len(live):
            if total == 0:
                yield ()
            return
        remaining_min = len(live) - idx - 1
        remaining_max = sum(caps[idx + 1 :])
        for size in range(1, caps[idx] + 1):
            rest = total - size
            if remaining_min <= rest <= remaining_max:
                for tail in size_vectors(rest, idx + 1):
                    yield (size,) + tail

    t_min = len(live)
    t_max = sum(caps)
    if t_min == 0:
        return 0
    for total in range(t_min, t_max + 1):
        for sizes in size_vectors(total, 0):
            pools = [
                itertools.combinations(usable[v], size) for v, size in zip(live, sizes)
            ]
            for picks in itertools.product(*pools):
                meter.tick()
                choice = {v: 0 for v in range(lc.right_size)}
                for v, labels in zip(live, picks):
                    m = 0
                    for b in labels:
                        m |= 1 << b
                    choice[v] = m
                if feasible(choice):
                    return total
    raise AssertionError("full label sets were feasible but enumeration missed them")


def _min_lab_assignments(lc: LabelCover, meter: _Meter) -> int | None:
    adm = [lc.admissible_list(u) for u in range(lc.left_size)]
    if any(not labels for labels in adm):
        return None
    bmask = {
        (u, v): lc.beta_masks(u, v)
        for u in range(lc.left_size)
        for v in lc.left_neighbors[u]
    }
    best: int | None = None
    for labels in itertools.product(*adm):
        meter.tick()
        total = 0
        ok = True
        for v in range(lc.right_size):
            targets = [bmask[(u, v)][labels[u]] for u in lc.right_neighbors[v]]
            if not targets:
                continue
            if any(t == 0 for t in targets):
                ok = False
                break
            need = _min_hitting_set(targets, meter)
            if best is not None and total + need >= best:
                ok = False
                break
            total += need
        if ok and (best is None or total < best):
            best = total
    return best


def _min_hitting_set(target_masks: list[int], meter: _Meter) -> int:
    """Smallest set of bits touching every mask; masks are nonempty."""
    union = 0
    for m in target_masks:
        union |= m
    candidates = list(bits_of(union))
    for size in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            meter.tick()
            chosen = 0
            for b in combo:
                chosen |= 1 << b
            if all(chosen & m for m in target_masks):
                return size
    raise AssertionError("unreachable: union hits every mask")


# ---------------------------------------------------------------------------
# Graph problems


def clique(graph: Graph, budget: SolveBudget | None = None) -> int:
    """Exact clique number via branch and bound with greedy coloring bounds."""
    n = graph.num_vertices
    if n == 0:
        return 0
    meter = _Meter(budget)
    adj = graph.adjacency
    best = 0

    def expand(candidates: int, size: int):
        nonlocal best
        meter.tick()
        if candidates == 0:
            if size > best:
                best = size
            return
        # Greedy coloring: color classes bound the clique extension size.
        order: list[int] = []
        bounds: list[int] = []
        uncolored = candidates
        color = 0
        while uncolored:
            color += 1
            cls = uncolored
            while cls:
                v = (cls & -cls).bit_length() - 1
                vbit = 1 << v
                cls &= ~(vbit | adj[v])
                uncolored &= ~vbit
                order.append(v)
                bounds.append(color)
        rest = candidates
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            expand(rest & adj[v], size + 1)
            rest &= ~(1 << v)

    expand((1 << n) - 1, 0)
    return best


def independent_set(graph: Graph, budget: SolveBudget | None = None) -> int:
    return clique(graph.complement(), budget)


def biclique(graph: Graph, budget: SolveBudget | None = None) -> int:
    """Largest k with disjoint S, T, |S| = |T| = k, complete between them.

    K_{k,k} as a (not necessarily induced) subgraph; the graph need not be
    bipartite. Returns 0 for edgeless graphs.
    """
    meter = _Meter(budget)
    n = graph.num_vertices
    if n == 0 or not graph.edges:
        return 0
    adj = graph.adjacency
    if graph.bipartition is not None:
        # Any biclique with k >= 1 lives across the two sides, so one side of
        # the pair is a subset of the smaller part.
        side = min(graph.bipartition, key=len)
        members = sorted(side)
        best = 0
        for size in range(1, len(members) + 1):
            for combo in itertools.combinations(members, size):
                meter.tick()
                common = -1
                for v in combo:
                    common &= adj[v]
                k = min(size, common.bit_count())
                if k > best:
                    best = k
        return best
    # General graphs: common-neighborhood DP over all vertex subsets.
    if n > 24 or (1 << n) > meter.max_nodes:
        raise BudgetExceededError(f"2^{n} subsets exceed the biclique budget")
    total = 1 << n
    common = [0] * total
    common[0] = (1 << n) - 1
    best = 0
    for mask in range(1, total):
        meter.tick()
        low = mask & -mask
        common[mask] = common[mask ^ low] & adj[low.bit_length() - 1]
        k = min(mask.bit_count(), (common[mask] & ~mask).bit_count())
        if k > best:
            best = k
    return best


def count_ktt(graph: Graph, t: int, budget: SolveBudget | None = None) -> int:
    """Number of unordered disjoint pairs {S, T}, |S| = |T| = t, complete between them.

    An ordered-pair count is exactly twice this value.
    """
    if t < 1:
        raise ValidationError("t must be >= 1")
    meter = _Meter(budget)
    n = graph.num_vertices
    adj = graph.adjacency
    ordered = 0
    for combo in itertools.combinations(range(n), t):
        meter.tick()
        common = -1
        mask = 0
        for v in combo:
            common &= adj[v]
            mask |= 1 << v
        avail = (common & ~mask).bit_count()
        if avail >= t:
            ordered += math.comb(avail, t)
    # Each unordered pair was counted once per side.
    assert ordered % 2 == 0
    return ordered // 2


def set_cover(system: SetSystem, budget: SolveBudget | None = None) -> int | None:
    """Exact minimum set cover; None when some element is uncovered by all sets."""
    meter = _Meter(budget)
    n = system.universe_size
    if n == 0:
        return 0
    full = (1 << n) - 1
    masks = list(system.masks)
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return None
    # Greedy upper bound.
    uncovered = full
    greedy = 0
    while uncovered:
        bestmask = max(masks, key=lambda m: (m & uncovered).bit_count())
        uncovered &= ~bestmask
        greedy += 1
    best = greedy
    covers_elem = [[m for m in masks if m >> e & 1] for e in range(n)]
    max_size = max(m.bit_count() for m in masks)

    def search(uncov: int, used: int):
        nonlocal best
        meter.tick()
        if not uncov:
            if used < best:
                best = used
            return
        if used + -(-uncov.bit_count() // max_size) >= best:
            return
        # Branch on the uncovered element with the fewest candidate sets.
        elem = min(bits_of(uncov), key=lambda e: len(covers_elem[e]))
        for m in sorted(covers_elem[elem], key=lambda m: -(m & uncov).bit_count()):
            search(uncov & ~m, used + 1)

    search(full, 0)
    return best


def dom_set(graph: Graph, budget: SolveBudget | None = None) -> int:
    """Exact domination number (always feasible: every vertex dominates itself)."""
    n = graph.num_vertices
    if n == 0:
        return 0
    closed = [(graph.adjacency[v] | (1 << v)) for v in range(n)]
    system = SetSystem(n, tuple((v + 1, frozenset(bits_of(closed[v]))) for v in range(n)))
    result = set_cover(system, budget)
    assert result is not None
    return result


def induced_matching(graph: Graph, budget: SolveBudget | None = None) -> int:
    """Maximum induced matching: edges pairwise disjoint with no cross edges."""
    edges = sorted(graph.edges)
    if not edges:
        return 0
    adj = graph.adjacency
    # Two edges are compatible iff vertex-disjoint and with no edge between
    # their endpoints; an induced matching is a clique of the compatibility graph.
    k = len(edges)
    compat_edges = set()
    for i in range(k):
        a, b = edges[i]
        mask_i = (1 << a) | (1 << b)
        closed_i = mask_i | adj[a] | adj[b]
        for j in range(i + 1, k):
            c, d = edges[j]
            if closed_i & ((1 << c) | (1 << d)):
                continue
            compat_edges.add((i, j))
    compat = Graph(k, frozenset(compat_edges))
    return clique(compat, budget)


def _longest_induced_path(graph: Graph, meter: _Meter, stop_at: int | None) -> int:
    n = graph.num_vertices
    if n == 0:
        return 0
    adj = graph.adjacency
    best = 1

    def grow(last: int, path: int, blocked: int, length: int) -> bool:
        nonlocal best
        meter.tick()
        if length > best:
            best = length
        if stop_at is not None and best >= stop_at:
            return True
        cands = adj[last] & ~path & ~blocked
        new_blocked = blocked | adj[last]
        while cands:
            low = cands & -cands
            cands ^= low
            v = low.bit_length() - 1
            if grow(v, path | low, new_blocked, length + 1):
                return True
        return False

    for start in range(n):
        if grow(start, 1 << start, 0, 1):
            break
    return best


def induced_path(graph: Graph, budget: SolveBudget | None = None) -> int:
    """Maximum |S| with G[S] a simple path; a single vertex is a path of size 1."""
    return _longest_induced_path(graph, _Meter(budget), None)


def induced_path_at_least(graph: Graph, k: int, budget: SolveBudget | None = None) -> bool:
    """Decision variant with early exit once a path of size k is found."""
    if k <= 0:
        return True
    return _longest_induced_path(graph, _Meter(budget), k) >= k


def densest_k(graph: Graph, k: int, budget: SolveBudget | None = None) -> Fraction:
    """Maximum density E(G[S]) / C(k,2) over k-subsets, as an exact fraction."""
    n = graph.num_vertices
    if not 2 <= k <= n:
        raise ValidationError(f"k must satisfy 2 <= k <= {n}, got {k}")
    meter = _Meter(budget)
    adj = graph.adjacency
    denom = math.comb(k, 2)
    best = 0
    for combo in itertools.combinations(range(n), k):
        meter.tick()
        mask = 0
        for v in combo:
            mask |= 1 << v
        inside = sum((adj[v] & mask).bit_count() for v in combo) // 2
        if inside > best:
            best = inside
            if best == denom:
                break
    return Fraction(best, denom)


def _subset_edgeless(adj, mask) -> bool:
    m = mask
    while m:
        low = m & -m
        m ^= low
        if adj[low.bit_length() - 1] & mask:
            return False
    return True


def _subset_forest(adj, mask) -> bool:
    # Leaf pruning: repeatedly strip vertices with at most one neighbor in the
    # subset; a cycle never becomes prunable.
    cur = mask
    changed = True
    while cur and changed:
        changed = False
        m = cur
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            if (adj[v] & cur).bit_count() <= 1:
                cur ^= low
                changed = True
    return cur == 0


def _subset_triangle_free(adj, mask) -> bool:
    m = mask
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        others = adj[v] & mask
        w = others
        while w:
            lw = w & -w
            w ^= lw
            u = lw.bit_length() - 1
            if u > v and adj[u] & others:
                return False
    return True


SUPPORTED_PROPERTIES = {
    "edgeless": _subset_edgeless,
    "forest": _subset_forest,
    "triangle-free": _subset_triangle_free,
}


def max_induced_with_property(
    graph: Graph, prop: str, budget: SolveBudget | None = None
) -> int:
    """Largest |S| with G[S] in the property class, by subset enumeration."""
    if prop not in SUPPORTED_PROPERTIES:
        raise ValidationError(f"unsupported property {prop!r}")
    checker = SUPPORTED_PROPERTIES[prop]
    meter = _Meter(budget)
    n = graph.num_vertices
    adj = graph.adjacency
    best = 0
    for mask in range(1 << n):
        meter.tick()
        if mask.bit_count() > best and checker(adj, mask):
            best = mask.bit_count()
    return best

"""Reductions into the target graph and set-cover problems.

Each construction is paired (in tests) with the exact oracles that certify
its completeness/soundness identity at desk scale: FGLSS turns MaxCov into
Clique exactly; the hypercube set system turns MinLab into SetCov exactly;
the doubling gadgets sandwich Biclique and InducedMatching between Clique and
2*Biclique+1; the block-chained clique gadget separates InducedPath at 2qk vs
4(k-1); and the partial-assignment graph realizes the DkS subsampling route.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Mapping

from .errors import ReductionError, SizeCapError, ValidationError
from .instances import CnfFormula, Graph, LabelCover, SetSystem, bits_of
from .lc_transforms import projection_check

__all__ = [
    "fglss",
    "HypercubeSystem",
    "hypercube",
    "check_cover_iff_column",
    "minlab_to_setcov",
    "setcov_to_domset",
    "biclique_gadget",
    "im_gadget",
    "is_to_im_gadget",
    "clique_to_inducedpath",
    "DksParams",
    "dks_params",
    "dks_vertices",
    "dks_edge",
    "sat_to_dks",
    "ramsey_binomial_bound",
    "hereditary_bridge",
    "PROPERTY_CLIQUE_EXCLUSION",
]

DEFAULT_SIZE_CAP = 500_000


# ---------------------------------------------------------------------------
# FGLSS: label cover -> clique


def fglss(lc: LabelCover) -> Graph:
    """FGLSS graph of a projection instance: Clique(H) = MaxCov(lc).

    Vertices are (left vertex, admissible label) pairs; two vertices on
    distinct left vertices are adjacent when their unique projections agree on
    every common neighbor. Labels of the same left vertex are never adjacent,
    so a clique picks at most one label per vertex.
    """
    report = projection_check(lc)
    if not report.ok:
        raise ReductionError(f"input lacks the projection property: violation {report.violation}")
    vertices = [(u, a) for u in range(lc.left_size) for a in lc.admissible_list(u)]
    proj: list[dict[int, int]] = []
    for u, a in vertices:
        out = {}
        for v in lc.left_neighbors[u]:
            mask = lc.beta_masks(u, v)[a]
            out[v] = mask.bit_length() - 1
        proj.append(out)
    edges = set()
    for i in range(len(vertices)):
        ui, _ = vertices[i]
        pi = proj[i]
        for j in range(i + 1, len(vertices)):
            uj, _ = vertices[j]
            if ui == uj:
                continue
            pj = proj[j]
            if all(pj.get(v, beta) == beta for v, beta in pi.items()):
                edges.add((i, j))
    return Graph(len(vertices), frozenset(edges))


# ---------------------------------------------------------------------------
# Hypercube partition system and MinLab -> SetCov


@dataclass(frozen=True)
class HypercubeSystem:
    """Ground set [z]^k with canonical sets X(i, a) = {x : x_a = i}.

    The full ground set is coverable by canonical sets only by taking a whole
    column {X(0, a), ..., X(z-1, a)} for some coordinate a.
    """

    z: int
    k: int
    vectors: tuple[tuple[int, ...], ...]
    sets: Mapping[tuple[int, int], frozenset[int]]

    @property
    def ground_size(self) -> int:
        return len(self.vectors)


def hypercube(z: int, k: int, size_cap: int = DEFAULT_SIZE_CAP) -> HypercubeSystem:
    if z < 1 or k < 1:
        raise ValidationError("need z >= 1 and k >= 1")
    if z**k > size_cap:
        raise SizeCapError(f"{z}^{k} ground elements exceed cap {size_cap}")
    vectors = tuple(itertools.product(range(z), repeat=k))
    sets = {
        (i, a): frozenset(idx for idx, vec in enumerate(vectors) if vec[a] == i)
        for i in range(z)
        for a in range(k)
    }
    return HypercubeSystem(z, k, vectors, sets)


def check_cover_iff_column(hs: HypercubeSystem, size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """Exhaustively confirm: a subcollection covers the ground iff it holds a full column."""
    keys = sorted(hs.sets.keys())
    if 1 << len(keys) > size_cap:
        raise SizeCapError(f"2^{len(keys)} subcollections exceed cap {size_cap}")
    ground = frozenset(range(hs.ground_size))
    for selector in range(1 << len(keys)):
        chosen = [keys[t] for t in bits_of(selector)]
        union = frozenset().union(*(hs.sets[key] for key in chosen)) if chosen else frozenset()
        covers = union == ground
        has_column = any(
            all((i, a) in chosen for i in range(hs.z)) for a in range(hs.k)
        )
        if covers != has_column:
            return False
    return True


def minlab_to_setcov(lc: LabelCover, size_cap: int = DEFAULT_SIZE_CAP) -> SetSystem:
    """Compose one hypercube per left vertex: SetCov of the output = MinLab(lc).

    Left vertex u contributes the hypercube on values N(u) and coordinates
    A(u); the purchasable set for (right vertex v, label b) is the union of
    the virtual canonical sets X(v, a) over neighbors u and pairs (a, b) in
    the edge relation. The output always has exactly |V| * |Sigma_V| sets.
    """
    for u in range(lc.left_size):
        if not lc.left_neighbors[u]:
            raise ReductionError(f"left vertex {u} is isolated (degenerate hypercube)")
    total = 0
    offsets = []
    for u in range(lc.left_size):
        offsets.append(total)
        total += len(lc.left_neighbors[u]) ** len(lc.admissible[u])
        if total > size_cap:
            raise SizeCapError(f"universe of {total}+ elements exceeds cap {size_cap}")
    elements: dict[tuple[int, int], set[int]] = {
        (v, b): set() for v in range(lc.right_size) for b in range(lc.right_alphabet)
    }
    for u in range(lc.left_size):
        nbrs = list(lc.left_neighbors[u])
        coords = lc.admissible_list(u)
        # For coordinate a, the labels b that purchase X(v, a) on edge (u, v).
        buys = {
            v: {a: [b for aa, b in lc.relations[(u, v)] if aa == a] for a in coords}
            for v in nbrs
        }
        for rank, vec in enumerate(itertools.product(range(len(nbrs)), repeat=len(coords))):
            elem = offsets[u] + rank
            for pos, a in enumerate(coords):
                v = nbrs[vec[pos]]
                for b in buys[v][a]:
                    elements[(v, b)].add(elem)
    sets = tuple(
        (v * lc.right_alphabet + b + 1, frozenset(elements[(v, b)]))
        for v in range(lc.right_size)
        for b in range(lc.right_alphabet)
    )
    return SetSystem(total, sets)


def setcov_to_domset(system: SetSystem) -> Graph:
    """Sets become a clique, elements attach to their sets: DomSet = SetCov.

    Requires a nonempty universe with every element in at least one set (the
    equivalence needs a set vertex to stand in for any dominated element).
    """
    if system.universe_size < 1:
        raise ReductionError("empty universe: SetCov is 0 but any dominating set has size >= 1")
    if system.num_sets < 1:
        raise ReductionError("no sets to dominate with")
    covered = 0
    for mask in system.masks:
        covered |= mask
    if covered != (1 << system.universe_size) - 1:
        raise ReductionError("an element belongs to no set; transform undefined")
    k = system.num_sets
    edges = set()
    for i in range(k):
        for j in range(i + 1, k):
            edges.add((i, j))
    for i, (_, elems) in enumerate(system.sets):
        for e in elems:
            edges.add((i, k + e))
    return Graph(k + system.universe_size, frozenset(edges))


# ---------------------------------------------------------------------------
# Doubling gadgets


def _doubling(graph: Graph, cross_rule) -> Graph:
    n = graph.num_vertices
    edges = set()
    for u in range(n):
        for v in range(n):
            if u == v or cross_rule(u, v):
                edges.add((u, n + v))
    sides = (frozenset(range(n)), frozenset(range(n, 2 * n)))
    return Graph(2 * n, frozenset(edges), bipartition=sides)


def biclique_gadget(graph: Graph) -> Graph:
    """B_e[G]: (u, 1) ~ (v, 2) iff u = v or uv is an edge.

    Sandwich: Clique(G) <= Biclique(B_e[G]) <= 2*Biclique(G) + 1.
    """
    return _doubling(graph, graph.has_edge)


def im_gadget(graph: Graph) -> Graph:
    """B_e[complement(G)]: (u, 1) ~ (v, 2) iff u = v or uv is a non-edge.

    Sandwich: Clique(G) <= IM(B_e[comp G]) <= 2*Biclique(G) + 1.
    """
    return _doubling(graph, lambda u, v: not graph.has_edge(u, v))


def is_to_im_gadget(graph: Graph) -> Graph:
    """Pendant construction: a leaf per vertex, so IM(output) >= MIS(input)."""
    n = graph.num_vertices
    edges = set(graph.edges)
    for v in range(n):
        edges.add((v, n + v))
    return Graph(2 * n, frozenset(edges))


# ---------------------------------------------------------------------------
# Induced path gadget


def clique_to_inducedpath(h: Graph, k: int, q: int) -> Graph:
    """q chained blocks of k column-cliques over copies of V(H) plus dummies.

    If Clique(H) >= k, the output has an induced path on 2qk vertices
    (alternate dummies with clique-vertex copies down the columns and across
    blocks). Without a k-clique, no induced path exceeds 4(k-1) vertices in a
    single-block instance; chained blocks admit same-vertex row hops, so the
    certified bound for q >= 2 is q(2k-1).
    """
    if k < 2 or q < 1:
        raise ValidationError("need k >= 2 and q >= 1")
    nh = h.num_vertices
    stride = nh + 1

    def copy_of(i: int, j: int, v: int) -> int:
        return (i * k + j) * stride + v

    def dummy(i: int, j: int) -> int:
        return (i * k + j) * stride + nh

    edges = set()
    for i in range(q):
        for j in range(k):
            # Column clique on the copies of V(H).
            for u in range(nh):
                for v in range(u + 1, nh):
                    edges.add((copy_of(i, j, u), copy_of(i, j, v)))
            # Dummy attaches to its column and the previous one.
            for v in range(nh):
                edges.add((dummy(i, j), copy_of(i, j, v)))
                if j >= 1:
                    edges.add((dummy(i, j), copy_of(i, j - 1, v)))
        # Row cliques: the copies of one vertex across the block's columns.
        for v in range(nh):
            for j in range(k):
                for jj in range(j + 1, k):
                    edges.add((copy_of(i, j, v), copy_of(i, jj, v)))
        # Cross edges for non-edges of H, between distinct columns.
        for u in range(nh):
            for v in range(nh):
                if u != v and not h.has_edge(u, v):
                    for j in range(k):
                        for jj in range(k):
                            if j != jj:
                                edges.add((copy_of(i, j, u), copy_of(i, jj, v)))
        # Chain to the previous block: this block's first dummy sees every
        # vertex of the previous block's last column.
        if i >= 1:
            for v in range(nh):
                edges.add((dummy(i, 0), copy_of(i - 1, k - 1, v)))
    return Graph(q * k * stride, frozenset(edges))


# ---------------------------------------------------------------------------
# Densest k-subgraph: partial-assignment graph with subsampling


@dataclass(frozen=True)
class DksParams:
    """Partial-assignment graph parameters: window size ell, keep probability p.

    lam is the soundness constant of the occurrence bound; it only steers the
    (ell, p) helper and is never asserted at desk scale.
    """

    ell: int
    p: float = 1.0
    lam: float = 0.1
    r: int | None = None
    seed: int | None = None
    size_cap: int = 2_000_000

    def __post_init__(self):
        if self.ell < 1:
            raise ValidationError("ell must be >= 1")
        if not 0.0 < self.p <= 1.0:
            raise ValidationError("p must lie in (0,1]")
        if self.lam <= 0:
            raise ValidationError("lam must be positive")


def dks_params(num_vars: int, r: int, lam: float = 0.1, seed=None) -> DksParams:
    """The construction's own choice ell = 4n/sqrt(lam*r), p = 2^(lam*ell^2/2n)/C(n,ell)."""
    if num_vars < 1 or r < 1 or lam <= 0:
        raise ValidationError("need num_vars >= 1, r >= 1, lam > 0")
    ell = max(1, min(num_vars, math.ceil(4 * num_vars / math.sqrt(lam * r))))
    p = min(1.0, 2 ** (lam * ell * ell / (2 * num_vars)) / math.comb(num_vars, ell))
    return DksParams(ell=ell, p=p, lam=lam, r=r, seed=seed)


def dks_vertices(num_vars: int, ell: int) -> list[tuple[tuple[int, ...], int]]:
    """Canonical vertex order of the full graph: (variable window, assignment bits).

    Bit t of the assignment is the value of the window's t-th variable.
    Subsampling (p < 1) keeps a sub-list of this order.
    """
    out = []
    for window in itertools.combinations(range(num_vars), ell):
        for bits in range(1 << ell):
            out.append((window, bits))
    return out


def dks_edge(
    formula: CnfFormula,
    window1: tuple[int, ...],
    bits1: int,
    window2: tuple[int, ...],
    bits2: int,
) -> bool:
    """Edge rule: consistent on the overlap, and no clause inside the union violated."""
    value = {}
    for t, var in enumerate(window1):
        value[var] = (bits1 >> t) & 1
    for t, var in enumerate(window2):
        bit = (bits2 >> t) & 1
        if value.get(var, bit) != bit:
            return False
        value[var] = bit
    for clause in formula.clauses:
        if all(abs(lit) - 1 in value for lit in clause):
            if not any(value[abs(lit) - 1] == (1 if lit > 0 else 0) for lit in clause):
                return False
    return True


def sat_to_dks(formula: CnfFormula, params: DksParams) -> Graph:
    """Vertices are all ell-variable partial assignments (each kept with prob p).

    For a satisfiable formula the C(n, ell) restrictions of any satisfying
    assignment are pairwise adjacent, i.e. the full graph contains a
    C(n, ell)-clique.
    """
    n = formula.num_vars
    if params.ell > n:
        raise ValidationError(f"ell={params.ell} exceeds num_vars={n}")
    count = math.comb(n, params.ell) << params.ell
    if count > params.size_cap:
        raise SizeCapError(f"{count} vertices exceed cap {params.size_cap}")
    vertices = dks_vertices(n, params.ell)
    if params.p < 1.0:
        rng = random.Random(params.seed)
        vertices = [vx for vx in vertices if rng.random() < params.p]
    edges = set()
    for a in range(len(vertices)):
        w1, b1 = vertices[a]
        for b in range(a + 1, len(vertices)):
            w2, b2 = vertices[b]
            if dks_edge(formula, w1, b1, w2, b2):
                edges.add((a, b))
    return Graph(len(vertices), frozenset(edges))


# ---------------------------------------------------------------------------
# Hereditary bridge


PROPERTY_CLIQUE_EXCLUSION = {"edgeless": 2, "forest": 3, "triangle-free": 3}


def ramsey_binomial_bound(s: int, t: int) -> int:
    """Binomial upper bound C(s+t-2, s-1) on the Ramsey number R(s, t)."""
    if s < 1 or t < 1:
        raise ValidationError("need s >= 1 and t >= 1")
    return math.comb(s + t - 2, s - 1)


def hereditary_bridge(graph: Graph, prop: str, r: int) -> int:
    """Certified lower bound on MIS(graph) under the premise A_prop(graph) >= r.

    Generic bound: the largest t with C(s+t-2, s-1) <= r, where s is the
    smallest clique the property excludes. Forests are bipartite, so the
    stronger ceil(r/2) applies there.
    """
    if prop not in PROPERTY_CLIQUE_EXCLUSION:
        raise ValidationError(f"unsupported property {prop!r}")
    if r < 0:
        raise ValidationError("r must be >= 0")
    if r == 0:
        return 0
    s = PROPERTY_CLIQUE_EXCLUSION[prop]
    t = 0
    while ramsey_binomial_bound(s, t + 1) <= r:
        t += 1
    if prop == "forest":
        t = max(t, -(-r // 2))
    return t

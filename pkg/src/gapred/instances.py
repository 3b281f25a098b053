"""Core instance types, file formats, and seeded random generators.

Conventions: vertices and universe elements are 0-indexed in memory and
1-indexed in files; labels are opaque dense integers 0..|alphabet|-1 in both.
All types are immutable after construction and validate their invariants on
construction. Generators are pure functions of their seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .errors import ParseError, ValidationError

__all__ = [
    "CnfFormula",
    "Graph",
    "SetSystem",
    "LabelCover",
    "TupleDecoder",
    "Labeling",
    "MultiLabeling",
    "parse_cnf",
    "emit_cnf",
    "parse_graph",
    "emit_graph",
    "parse_setsystem",
    "emit_setsystem",
    "parse_labelcover",
    "emit_labelcover",
    "random_cnf",
    "random_graph",
    "random_labelcover",
]


def _as_text(data) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return data


def bits_of(mask: int):
    """Iterate the set bit indices of a nonnegative int, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# CNF formulas


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula with clauses of 1 to 3 signed DIMACS literals."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValidationError(f"num_vars must be >= 0, got {self.num_vars}")
        clauses = tuple(tuple(int(lit) for lit in clause) for clause in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for idx, clause in enumerate(clauses):
            if not 1 <= len(clause) <= 3:
                raise ValidationError(f"clause {idx + 1} has {len(clause)} literals, want 1..3")
            seen = set()
            for lit in clause:
                var = abs(lit)
                if lit == 0 or var > self.num_vars:
                    raise ValidationError(f"literal {lit} out of range in clause {idx + 1}")
                if var in seen:
                    raise ValidationError(f"variable {var} repeated in clause {idx + 1}")
                seen.add(var)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def clause_satisfied(self, idx: int, assignment: int) -> bool:
        """Whether clause `idx` is satisfied by `assignment` (bit v-1 = value of var v)."""
        for lit in self.clauses[idx]:
            value = (assignment >> (abs(lit) - 1)) & 1
            if value == (1 if lit > 0 else 0):
                return True
        return False


def parse_cnf(data) -> CnfFormula:
    """Parse DIMACS CNF text ('p cnf n m' header, 0-terminated clauses)."""
    text = _as_text(data)
    header = None
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts in header") from None
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause before 'p cnf' header")
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise ParseError("missing 'p cnf' header")
    num_vars, num_clauses = header
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            if not current:
                raise ParseError("empty clause (bare 0)")
            if len(current) > 3:
                raise ParseError(f"clause {len(clauses) + 1} wider than 3 literals")
            clauses.append(tuple(current))
            current = []
        else:
            if abs(tok) > num_vars:
                raise ParseError(f"literal {tok} out of range (header declares {num_vars} vars)")
            current.append(tok)
    if current:
        raise ParseError("unterminated final clause (missing 0)")
    if len(clauses) != num_clauses:
        raise ParseError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, tuple(clauses))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def emit_cnf(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Graphs


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices 0..num_vertices-1.

    `bipartition`, when present, records two sides with no intra-side edges.
    It is derived metadata: it does not survive file round trips and does not
    participate in equality.
    """

    num_vertices: int
    edges: frozenset[tuple[int, int]] = frozenset()
    bipartition: tuple[frozenset[int], frozenset[int]] | None = field(
        default=None, compare=False
    )

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValidationError("num_vertices must be >= 0")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValidationError(f"edge ({u},{v}) out of range")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.bipartition is not None:
            left, right = (frozenset(side) for side in self.bipartition)
            object.__setattr__(self, "bipartition", (left, right))
            if left & right or left | right != frozenset(range(self.num_vertices)):
                raise ValidationError("bipartition must partition the vertex set")
            for u, v in self.edges:
                if (u in left) == (v in left):
                    raise ValidationError(f"intra-side edge ({u},{v}) contradicts bipartition")

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbor bitmask per vertex."""
        masks = [0] * self.num_vertices
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return list(bits_of(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def complement(self) -> Graph:
        n = self.num_vertices
        comp = frozenset(
            (u, v) for u in range(n) for v in range(u + 1, n) if not self.has_edge(u, v)
        )
        return Graph(n, comp)


def parse_graph(data) -> Graph:
    """Parse a DIMACS edge-format graph ('p edge n m', 1-indexed 'e u v' lines)."""
    text = _as_text(data)
    header = None
    edges: set[tuple[int, int]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts in header") from None
        elif parts[0] == "e":
            if header is None:
                raise ParseError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer endpoint") from None
            n = header[0]
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"line {lineno}: vertex out of range")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop")
            key = (min(u, v), max(u, v))
            if key in edges:
                raise ParseError(f"line {lineno}: duplicate edge")
            edges.add(key)
        else:
            raise ParseError(f"line {lineno}: unknown line tag {parts[0]!r}")
    if header is None:
        raise ParseError("missing 'p edge' header")
    if len(edges) != header[1]:
        raise ParseError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], frozenset(edges))


def emit_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.num_vertices} {graph.num_edges}"]
    for u, v in sorted(graph.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Set systems


@dataclass(frozen=True)
class SetSystem:
    """A universe 0..universe_size-1 plus identified subsets.

    Sets are kept sorted by id, so equality is insensitive to construction
    order and matches the canonical file ordering.
    """

    universe_size: int
    sets: tuple[tuple[int, frozenset[int]], ...] = ()

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValidationError("universe_size must be >= 0")
        norm = []
        ids = set()
        for sid, elems in self.sets:
            sid = int(sid)
            if sid in ids:
                raise ValidationError(f"duplicate set id {sid}")
            ids.add(sid)
            elems = frozenset(int(e) for e in elems)
            for e in elems:
                if not 0 <= e < self.universe_size:
                    raise ValidationError(f"element {e} of set {sid} out of range")
            norm.append((sid, elems))
        norm.sort(key=lambda item: item[0])
        object.__setattr__(self, "sets", tuple(norm))

    @property
    def num_sets(self) -> int:
        return len(self.sets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Element bitmask per set, aligned with `sets`."""
        out = []
        for _, elems in self.sets:
            m = 0
            for e in elems:
                m |= 1 << e
            out.append(m)
        return tuple(out)


def parse_setsystem(data) -> SetSystem:
    """Parse the set-system format ('ss n k' header, 's id size e1 .. ek' lines)."""
    text = _as_text(data)
    header = None
    sets: list[tuple[int, frozenset[int]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "ss":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts") from None
        elif parts[0] == "s":
            if header is None:
                raise ParseError(f"line {lineno}: set line before header")
            try:
                nums = [int(x) for x in parts[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer field") from None
            if len(nums) < 2 or len(nums) != 2 + nums[1]:
                raise ParseError(f"line {lineno}: size field disagrees with element count")
            sid, _, *elems = nums
            if any(not 1 <= e <= header[0] for e in elems):
                raise ParseError(f"line {lineno}: element out of range")
            sets.append((sid, frozenset(e - 1 for e in elems)))
        else:
            raise ParseError(f"line {lineno}: unknown line tag {parts[0]!r}")
    if header is None:
        raise ParseError("missing 'ss' header")
    if len(sets) != header[1]:
        raise ParseError(f"header declares {header[1]} sets, found {len(sets)}")
    try:
        return SetSystem(header[0], tuple(sets))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def emit_setsystem(system: SetSystem) -> str:
    lines = [f"ss {system.universe_size} {system.num_sets}"]
    for sid, elems in system.sets:
        body = " ".join(str(e + 1) for e in sorted(elems))
        lines.append(f"s {sid} {len(elems)}" + (f" {body}" if body else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Label cover


@dataclass(frozen=True)
class TupleDecoder:
    """Decodes packed labels produced by compression back into per-member sub-labels.

    `labels[packed]` is the tuple of sub-labels assigned to `members`, in order.
    """

    members: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(m) for m in self.members))
        object.__setattr__(
            self, "labels", tuple(tuple(int(x) for x in tup) for tup in self.labels)
        )
        for tup in self.labels:
            if len(tup) != len(self.members):
                raise ValidationError("decoder tuple arity disagrees with member count")

    @property
    def arity(self) -> int:
        return len(self.members)

    def decode(self, label: int) -> tuple[int, ...]:
        return self.labels[label]

    def sub_label(self, label: int, member: int) -> int:
        return self.labels[label][self.members.index(member)]


@dataclass(frozen=True)
class LabelCover:
    """Bipartite label cover instance: relations per edge, admissible left labels.

    `relations` maps each edge (u, v) to its allowed (alpha, beta) pairs; its
    key set *is* the edge set. `admissible` maps each left vertex to the label
    subset it may be assigned; `None` means every vertex gets the full left
    alphabet. An empty admissible set marks a left vertex that no labeling can
    cover (compression produces these for unsatisfiable-style sources).

    Decoders are optional structured views of compressed labels; they are
    metadata and do not participate in equality or serialization.
    """

    left_size: int
    right_size: int
    left_alphabet: int
    right_alphabet: int
    relations: Mapping[tuple[int, int], frozenset[tuple[int, int]]] = field(
        default_factory=dict
    )
    admissible: Mapping[int, frozenset[int]] | None = None
    left_decoders: tuple | None = field(default=None, compare=False, repr=False)
    right_decoders: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.left_size < 0 or self.right_size < 0:
            raise ValidationError("vertex counts must be >= 0")
        if self.left_alphabet < 1 or self.right_alphabet < 1:
            raise ValidationError("alphabet sizes must be >= 1")
        rels = {}
        for (u, v), pairs in self.relations.items():
            u, v = int(u), int(v)
            if not (0 <= u < self.left_size and 0 <= v < self.right_size):
                raise ValidationError(f"edge ({u},{v}) out of range")
            pairs = frozenset((int(a), int(b)) for a, b in pairs)
            for a, b in pairs:
                if not (0 <= a < self.left_alphabet and 0 <= b < self.right_alphabet):
                    raise ValidationError(f"relation pair ({a},{b}) on edge ({u},{v}) out of range")
            rels[(u, v)] = pairs
        object.__setattr__(self, "relations", rels)
        if self.admissible is None:
            full = frozenset(range(self.left_alphabet))
            adm = {u: full for u in range(self.left_size)}
        else:
            adm = {}
            for u in range(self.left_size):
                if u not in self.admissible:
                    raise ValidationError(f"admissible set missing for left vertex {u}")
                labels = frozenset(int(a) for a in self.admissible[u])
                if any(not 0 <= a < self.left_alphabet for a in labels):
                    raise ValidationError(f"admissible label out of range at vertex {u}")
                adm[u] = labels
            if len(self.admissible) != self.left_size:
                raise ValidationError("admissible map has spurious keys")
        object.__setattr__(self, "admissible", adm)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.relations.keys()))

    @cached_property
    def left_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.left_size)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(vs) for vs in out)

    @cached_property
    def right_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.right_size)]
        for u, v in self.edges:
            out[v].append(u)
        return tuple(tuple(us) for us in out)

    def admissible_list(self, u: int) -> list[int]:
        return sorted(self.admissible[u])

    def beta_masks(self, u: int, v: int) -> dict[int, int]:
        """Per admissible alpha, the bitmask of right labels allowed on edge (u, v)."""
        allowed = self.admissible[u]
        masks: dict[int, int] = {a: 0 for a in allowed}
        for a, b in self.relations[(u, v)]:
            if a in allowed:
                masks[a] |= 1 << b
        return masks

    def is_full_admissible(self, u: int) -> bool:
        return len(self.admissible[u]) == self.left_alphabet


@dataclass(frozen=True)
class Labeling:
    """Total labeling (left and right); left labels must be admissible."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def validate(self, lc: LabelCover) -> None:
        if len(self.left) != lc.left_size or len(self.right) != lc.right_size:
            raise ValidationError("labeling length disagrees with instance")
        for u, a in enumerate(self.left):
            if a not in lc.admissible[u]:
                raise ValidationError(f"label {a} not admissible at left vertex {u}")
        for v, b in enumerate(self.right):
            if not 0 <= b < lc.right_alphabet:
                raise ValidationError(f"label {b} out of range at right vertex {v}")

    def covers_vertex(self, lc: LabelCover, u: int) -> bool:
        return all(
            (self.left[u], self.right[v]) in lc.relations[(u, v)]
            for v in lc.left_neighbors[u]
        )

    def covered_count(self, lc: LabelCover) -> int:
        return sum(1 for u in range(lc.left_size) if self.covers_vertex(lc, u))


@dataclass(frozen=True)
class MultiLabeling:
    """Left labeling plus a right label *set* per vertex.

    Right sets may be empty; only vertices incident to an edge ever need a
    label, so isolated right vertices contribute zero cost.
    """

    left: tuple[int, ...]
    right: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "right", tuple(frozenset(s) for s in self.right))

    def cost(self) -> int:
        return sum(len(s) for s in self.right)

    def validate(self, lc: LabelCover) -> None:
        if len(self.left) != lc.left_size or len(self.right) != lc.right_size:
            raise ValidationError("multi-labeling length disagrees with instance")
        for u, a in enumerate(self.left):
            if a not in lc.admissible[u]:
                raise ValidationError(f"label {a} not admissible at left vertex {u}")
        for v, labels in enumerate(self.right):
            if any(not 0 <= b < lc.right_alphabet for b in labels):
                raise ValidationError(f"label set out of range at right vertex {v}")

    def covers_all(self, lc: LabelCover) -> bool:
        for (u, v), pairs in lc.relations.items():
            a = self.left[u]
            if not any((a, b) in pairs for b in self.right[v]):
                return False
        return True


def parse_labelcover(data) -> LabelCover:
    """Parse the label cover format ('lc' header, 'a' admissible lines, 'e' edges)."""
    text = _as_text(data)
    header = None
    admissible: dict[int, frozenset[int]] = {}
    relations: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "lc":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(parts) != 5:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                header = tuple(int(x) for x in parts[1:])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer counts") from None
        elif parts[0] == "a":
            if header is None:
                raise ParseError(f"line {lineno}: admissible line before header")
            try:
                nums = [int(x) for x in parts[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer field") from None
            if len(nums) < 2 or len(nums) != 2 + nums[1]:
                raise ParseError(f"line {lineno}: size field disagrees with label count")
            u = nums[0] - 1
            if u in admissible:
                raise ParseError(f"line {lineno}: duplicate admissible line for vertex {u + 1}")
            admissible[u] = frozenset(nums[2:])
        elif parts[0] == "e":
            if header is None:
                raise ParseError(f"line {lineno}: edge before header")
            try:
                nums = [int(x) for x in parts[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer field") from None
            if len(nums) < 3 or len(nums) != 3 + 2 * nums[2]:
                raise ParseError(f"line {lineno}: pair count disagrees with pair list")
            u, v, npairs = nums[0] - 1, nums[1] - 1, nums[2]
            if (u, v) in relations:
                raise ParseError(f"line {lineno}: duplicate edge ({u + 1},{v + 1})")
            flat = nums[3:]
            relations[(u, v)] = frozenset(
                (flat[2 * i], flat[2 * i + 1]) for i in range(npairs)
            )
        else:
            raise ParseError(f"line {lineno}: unknown line tag {parts[0]!r}")
    if header is None:
        raise ParseError("missing 'lc' header")
    left, right, la, ra = header
    for u in range(left):
        admissible.setdefault(u, frozenset(range(la)))
    try:
        return LabelCover(left, right, la, ra, relations, admissible)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def emit_labelcover(lc: LabelCover) -> str:
    lines = [f"lc {lc.left_size} {lc.right_size} {lc.left_alphabet} {lc.right_alphabet}"]
    for u in range(lc.left_size):
        if not lc.is_full_admissible(u):
            labels = lc.admissible_list(u)
            body = " ".join(str(a) for a in labels)
            lines.append(f"a {u + 1} {len(labels)}" + (f" {body}" if body else ""))
    for u, v in lc.edges:
        pairs = sorted(lc.relations[(u, v)])
        flat = " ".join(f"{a} {b}" for a, b in pairs)
        lines.append(f"e {u + 1} {v + 1} {len(pairs)}" + (f" {flat}" if flat else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Seeded generators


def random_cnf(num_vars: int, num_clauses: int, seed) -> CnfFormula:
    """Uniform random 3-clauses over distinct variables; pure function of the seed."""
    if num_vars < 1 or num_clauses < 0:
        raise ValidationError("need num_vars >= 1 and num_clauses >= 0")
    if num_clauses > 0 and num_vars < 3:
        raise ValidationError("3-literal clauses need at least 3 variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(num_vars, tuple(clauses))


def random_graph(num_vertices: int, edge_prob: float, seed) -> Graph:
    """Erdos-Renyi style graph; pure function of the seed."""
    if num_vertices < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValidationError("need num_vertices >= 0 and edge_prob in [0,1]")
    rng = random.Random(seed)
    edges = set()
    for u in range(num_vertices):
        for v in range(u + 1, num_vertices):
            if rng.random() < edge_prob:
                edges.add((u, v))
    return Graph(num_vertices, frozenset(edges))


def random_labelcover(
    left_size: int,
    right_size: int,
    left_alphabet: int,
    right_alphabet: int,
    density: float = 1.0,
    seed=None,
    *,
    pair_density: float = 0.5,
    projection: bool = False,
    admissible_density: float | None = None,
    left_degrees: tuple[int, int] | None = None,
) -> LabelCover:
    """Random label cover: edges with probability `density`, uniform random relations.

    With `projection=True` each (edge, admissible alpha) gets exactly one beta,
    so the output always passes the projection check. `left_degrees=(lo, hi)`
    overrides `density` and gives each left vertex a uniform degree in that
    range. `admissible_density` draws random nonempty admissible sets.
    """
    if min(left_size, right_size) < 0 or min(left_alphabet, right_alphabet) < 1:
        raise ValidationError("all bounds must be >= 1 (sizes >= 0)")
    if not 0.0 <= density <= 1.0 or not 0.0 <= pair_density <= 1.0:
        raise ValidationError("densities must lie in [0,1]")
    rng = random.Random(seed)

    admissible = {}
    for u in range(left_size):
        if admissible_density is None:
            admissible[u] = frozenset(range(left_alphabet))
        else:
            chosen = [a for a in range(left_alphabet) if rng.random() < admissible_density]
            if not chosen:
                chosen = [rng.randrange(left_alphabet)]
            admissible[u] = frozenset(chosen)

    edge_list: list[tuple[int, int]] = []
    if left_degrees is not None:
        lo, hi = left_degrees
        hi = min(hi, right_size)
        lo = max(0, min(lo, hi))
        for u in range(left_size):
            deg = rng.randint(lo, hi)
            for v in sorted(rng.sample(range(right_size), deg)):
                edge_list.append((u, v))
    else:
        for u in range(left_size):
            for v in range(right_size):
                if rng.random() < density:
                    edge_list.append((u, v))

    relations = {}
    for u, v in edge_list:
        if projection:
            pairs = frozenset((a, rng.randrange(right_alphabet)) for a in sorted(admissible[u]))
        else:
            pairs = frozenset(
                (a, b)
                for a in range(left_alphabet)
                for b in range(right_alphabet)
                if rng.random() < pair_density
            )
        relations[(u, v)] = pairs
    return LabelCover(left_size, right_size, left_alphabet, right_alphabet, relations, admissible)

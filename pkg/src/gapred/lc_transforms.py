"""Label-cover-level transformations.

The pipeline's intermediate representation is the LabelCover; this module
lowers CNF into it and compresses either side:

- cnf_to_labelcover: clauses become left vertices, variables right vertices,
  relations demand consistency plus clause truth.
- compress_left: left vertices become disperser subsets of old left vertices;
  labels become joint partial labelings.
- compress_right: right vertices are merged into q blocks and the left side
  becomes all ell-subsets, amplifying the covered-fraction gap to gamma.
- minlab_instance: compress_right at gamma = (r/q)^-q, the configuration whose
  random-labeling argument turns a MaxCov gap into a MinLab gap.

Compressed labels enumerate only tuples that are admissible per member and
have at least one compatible right label on every incident edge; dropping the
other tuples changes no coverage count and keeps the projection property
intact when the source has it. Super-vertices may end up with an empty
admissible set (they can never be covered), which is how unsatisfiable
sources surface after compression.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

from .dispersers import Disperser, deterministic_disperser, random_disperser
from .errors import SizeCapError, ValidationError
from .instances import CnfFormula, LabelCover, TupleDecoder, bits_of

__all__ = [
    "DEFAULT_SIZE_CAP",
    "CompressLeftParams",
    "CompressRightParams",
    "cnf_to_labelcover",
    "compress_left",
    "compress_left_with",
    "compress_right",
    "minlab_instance",
    "drop_isolated_right",
    "ProjectionReport",
    "projection_check",
]

DEFAULT_SIZE_CAP = 500_000


@dataclass(frozen=True)
class CompressLeftParams:
    """Left-compression parameters: k new super-vertices, soundness target r."""

    k: int
    r: int
    eps: float
    disperser_mode: str = "random"
    seed: int | None = None
    size_cap: int = DEFAULT_SIZE_CAP

    def __post_init__(self):
        if not self.k >= self.r >= 1:
            raise ValidationError(f"need k >= r >= 1, got k={self.k}, r={self.r}")
        if not 0.0 < self.eps < 1.0:
            raise ValidationError("eps must lie in (0,1)")
        if self.disperser_mode not in ("random", "deterministic"):
            raise ValidationError(f"unknown disperser mode {self.disperser_mode!r}")


@dataclass(frozen=True)
class CompressRightParams:
    """Right-compression parameters: q merged blocks, soundness fraction gamma."""

    q: int
    gamma: float
    eps: float
    size_cap: int = DEFAULT_SIZE_CAP

    def __post_init__(self):
        if self.q < 1:
            raise ValidationError("q must be >= 1")
        if not 0.0 < self.gamma <= 1.0:
            raise ValidationError("gamma must lie in (0,1]")
        if not 0.0 < self.eps < 1.0:
            raise ValidationError("eps must lie in (0,1)")


# ---------------------------------------------------------------------------
# CNF lowering


def cnf_to_labelcover(formula: CnfFormula) -> LabelCover:
    """Clause-variable game: MaxCov of the output equals sat_max of the input.

    Left labels are width-3 bit vectors (clauses narrower than 3 are padded
    with free bits); the admissible set of a clause holds exactly its
    satisfying partial assignments, which restores the exactly-one-beta
    projection property on every edge.
    """
    relations = {}
    admissible = {}
    for i, clause in enumerate(formula.clauses):
        width = len(clause)
        satisfying = []
        for alpha in range(8):
            if any(((alpha >> p) & 1) == (1 if clause[p] > 0 else 0) for p in range(width)):
                satisfying.append(alpha)
        admissible[i] = frozenset(satisfying)
        for p, lit in enumerate(clause):
            v = abs(lit) - 1
            relations[(i, v)] = frozenset((alpha, (alpha >> p) & 1) for alpha in satisfying)
    return LabelCover(
        left_size=formula.num_clauses,
        right_size=formula.num_vars,
        left_alphabet=8,
        right_alphabet=2,
        relations=relations,
        admissible=admissible,
    )


# ---------------------------------------------------------------------------
# Left compression


def compress_left(lc: LabelCover, params: CompressLeftParams) -> tuple[LabelCover, Disperser]:
    """Compress the left side down to k disperser subsets."""
    if lc.left_size < 1:
        raise ValidationError("cannot left-compress an empty left side")
    if params.disperser_mode == "deterministic":
        disperser = deterministic_disperser(lc.left_size, params.k, params.r, params.eps)
    else:
        disperser = random_disperser(lc.left_size, params.k, params.r, params.eps, params.seed)
    return compress_left_with(lc, disperser, size_cap=params.size_cap), disperser


def compress_left_with(
    lc: LabelCover, disperser: Disperser, size_cap: int = DEFAULT_SIZE_CAP
) -> LabelCover:
    """Left compression against an explicit disperser over range(left_size).

    New left vertex i is the subset I_i; its labels are joint labelings
    (alpha_u) of the members, and (I, v) is an edge whenever some member of I
    is adjacent to v, with the joint relation demanding every member's
    constraint on v simultaneously.
    """
    if disperser.m != lc.left_size:
        raise ValidationError(
            f"disperser universe {disperser.m} disagrees with left size {lc.left_size}"
        )
    src_masks = {
        (u, v): lc.beta_masks(u, v)
        for u in range(lc.left_size)
        for v in lc.left_neighbors[u]
    }
    relations = {}
    admissible = {}
    decoders = []
    total_pairs = 0
    max_labels = 1
    for i, subset in enumerate(disperser.subsets):
        members = sorted(subset)
        choice_lists = [lc.admissible_list(u) for u in members]
        product_size = math.prod(len(c) for c in choice_lists)
        if product_size > size_cap:
            raise SizeCapError(
                f"super-vertex {i} would enumerate {product_size} tuples (cap {size_cap})"
            )
        touched = sorted({v for u in members for v in lc.left_neighbors[u]})
        members_at = {
            v: [j for j, u in enumerate(members) if v in lc.left_neighbors[u]]
            for v in touched
        }
        kept: list[tuple[int, ...]] = []
        kept_masks: list[dict[int, int]] = []
        for tup in itertools.product(*choice_lists):
            vmask = {}
            ok = True
            for v in touched:
                m = -1
                for j in members_at[v]:
                    m &= src_masks[(members[j], v)][tup[j]]
                    if not m:
                        ok = False
                        break
                if not ok:
                    break
                vmask[v] = m
            if ok:
                kept.append(tup)
                kept_masks.append(vmask)
        admissible[i] = frozenset(range(len(kept)))
        max_labels = max(max_labels, len(kept))
        decoders.append(TupleDecoder(tuple(members), tuple(kept)))
        for v in touched:
            pairs = frozenset(
                (ai, b) for ai, vm in enumerate(kept_masks) for b in bits_of(vm[v])
            )
            total_pairs += len(pairs)
            if total_pairs > size_cap:
                raise SizeCapError(f"relation pairs exceed cap {size_cap}")
            relations[(i, v)] = pairs
    return LabelCover(
        left_size=disperser.k,
        right_size=lc.right_size,
        left_alphabet=max_labels,
        right_alphabet=lc.right_alphabet,
        relations=relations,
        admissible=admissible,
        left_decoders=tuple(decoders),
        right_decoders=lc.right_decoders,
    )


# ---------------------------------------------------------------------------
# Right compression


def _block_partition(n: int, q: int) -> list[tuple[int, ...]]:
    """Contiguous blocks with sizes differing by at most one."""
    base, extra = divmod(n, q)
    blocks = []
    start = 0
    for j in range(q):
        size = base + (1 if j < extra else 0)
        blocks.append(tuple(range(start, start + size)))
        start += size
    return blocks


def compress_right(lc: LabelCover, params: CompressRightParams) -> LabelCover:
    """Merge the right side into q blocks; the left side becomes all ell-subsets.

    ell = ceil(ln(1/gamma)/eps), clamped to at least 1. The output graph is
    complete bipartite and generally loses the projection property.
    """
    m, n = lc.left_size, lc.right_size
    if m < 1 or n < 1:
        raise ValidationError("right compression needs nonempty sides")
    if params.q > n:
        raise ValidationError(f"q={params.q} exceeds right size {n}")
    ell = max(1, math.ceil(math.log(1.0 / params.gamma) / params.eps))
    if ell > m:
        raise ValidationError(f"derived ell={ell} exceeds left size {m}")
    num_left = math.comb(m, ell)
    if num_left > params.size_cap:
        raise SizeCapError(f"{num_left} left subsets exceed cap {params.size_cap}")
    blocks = _block_partition(n, params.q)
    ra = lc.right_alphabet
    max_block = max(len(b) for b in blocks)
    if ra**max_block > params.size_cap:
        raise SizeCapError(f"right alphabet {ra}^{max_block} exceeds cap {params.size_cap}")

    right_decoders = []
    block_tuples = []
    for members in blocks:
        tuples = tuple(itertools.product(range(ra), repeat=len(members)))
        right_decoders.append(TupleDecoder(members, tuples))
        block_tuples.append(tuples)

    src_masks = {
        (u, v): lc.beta_masks(u, v)
        for u in range(m)
        for v in lc.left_neighbors[u]
    }
    full_mask = (1 << ra) - 1
    relations = {}
    admissible = {}
    left_decoders = []
    total_pairs = 0
    max_labels = 1
    for i, members in enumerate(itertools.combinations(range(m), ell)):
        choice_lists = [lc.admissible_list(u) for u in members]
        product_size = math.prod(len(c) for c in choice_lists)
        if product_size > params.size_cap:
            raise SizeCapError(
                f"super-vertex {i} would enumerate {product_size} tuples (cap {params.size_cap})"
            )
        touched = sorted({v for u in members for v in lc.left_neighbors[u]})
        members_at = {
            v: [j for j, u in enumerate(members) if v in lc.left_neighbors[u]]
            for v in touched
        }
        kept: list[tuple[int, ...]] = []
        kept_masks: list[dict[int, int]] = []
        for tup in itertools.product(*choice_lists):
            vmask = {}
            ok = True
            for v in touched:
                mask = -1
                for j in members_at[v]:
                    mask &= src_masks[(members[j], v)][tup[j]]
                    if not mask:
                        ok = False
                        break
                if not ok:
                    break
                vmask[v] = mask & full_mask
            if ok:
                kept.append(tup)
                kept_masks.append(vmask)
        admissible[i] = frozenset(range(len(kept)))
        max_labels = max(max_labels, len(kept))
        left_decoders.append(TupleDecoder(tuple(members), tuple(kept)))
        for j, block in enumerate(blocks):
            pairs = set()
            for ai, vmask in enumerate(kept_masks):
                allowed = [list(bits_of(vmask.get(v, full_mask))) for v in block]
                for combo in itertools.product(*allowed):
                    beta = 0
                    for digit in combo:
                        beta = beta * ra + digit
                    pairs.add((ai, beta))
            total_pairs += len(pairs)
            if total_pairs > params.size_cap:
                raise SizeCapError(f"relation pairs exceed cap {params.size_cap}")
            relations[(i, j)] = frozenset(pairs)
    return LabelCover(
        left_size=num_left,
        right_size=params.q,
        left_alphabet=max_labels,
        right_alphabet=ra**max_block,
        relations=relations,
        admissible=admissible,
        left_decoders=tuple(left_decoders),
        right_decoders=tuple(right_decoders),
    )


def minlab_instance(
    lc: LabelCover, q: int, r: int, eps: float, size_cap: int = DEFAULT_SIZE_CAP
) -> LabelCover:
    """Right compression at gamma = (r/q)^-q, with isolated right vertices removed.

    For a fully coverable source the output has MinLab exactly q; when the
    source covers less than a (1-eps) fraction, random selection from any
    multi-labeling of total weight r would cover at least gamma*|U| left
    vertices, so MinLab exceeds r.
    """
    if not r >= q >= 1:
        raise ValidationError(f"need r >= q >= 1, got q={q}, r={r}")
    gamma = (q / r) ** q
    out = compress_right(lc, CompressRightParams(q=q, gamma=gamma, eps=eps, size_cap=size_cap))
    return drop_isolated_right(out)


def drop_isolated_right(lc: LabelCover) -> LabelCover:
    """Remove right vertices with no incident edges, reindexing the rest."""
    keep = [v for v in range(lc.right_size) if lc.right_neighbors[v]]
    if len(keep) == lc.right_size:
        return lc
    remap = {v: j for j, v in enumerate(keep)}
    relations = {(u, remap[v]): pairs for (u, v), pairs in lc.relations.items()}
    right_decoders = None
    if lc.right_decoders is not None:
        right_decoders = tuple(lc.right_decoders[v] for v in keep)
    return LabelCover(
        left_size=lc.left_size,
        right_size=len(keep),
        left_alphabet=lc.left_alphabet,
        right_alphabet=lc.right_alphabet,
        relations=relations,
        admissible=dict(lc.admissible),
        left_decoders=lc.left_decoders,
        right_decoders=right_decoders,
    )


# ---------------------------------------------------------------------------
# Projection property


class ProjectionReport(NamedTuple):
    ok: bool
    violation: tuple[int, int, int, int] | None  # (u, v, alpha, beta_count)


def projection_check(lc: LabelCover) -> ProjectionReport:
    """True iff every (edge, admissible alpha) admits exactly one beta."""
    for (u, v), _ in sorted(lc.relations.items()):
        masks = lc.beta_masks(u, v)
        for alpha in lc.admissible_list(u):
            count = masks[alpha].bit_count()
            if count != 1:
                return ProjectionReport(False, (u, v, alpha, count))
    return ProjectionReport(True, None)

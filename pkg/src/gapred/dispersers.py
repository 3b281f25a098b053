"""Construction and exhaustive verification of (m, k, l, r, eps)-dispersers.

A disperser here is k subsets of [m], each of size l, such that any r of them
union to at least (1-eps)*m elements. Random draws achieve this with failure
probability at most e^-m in the regime ln(k) <= m/r; the deterministic route
searches a small universe exhaustively and tensor-lifts the result.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import BudgetExceededError, GenerationError, ParseError, ValidationError
from .oracles import SolveBudget, _Meter

__all__ = [
    "Disperser",
    "disperser_subset_size",
    "random_disperser",
    "verify_disperser",
    "lift_disperser",
    "deterministic_disperser",
    "emit_disperser",
    "parse_disperser",
]


@dataclass(frozen=True)
class Disperser:
    """k size-l subsets of range(m) with the r-union coverage target eps."""

    m: int
    k: int
    ell: int
    r: int
    eps: float
    subsets: tuple[frozenset[int], ...]
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if min(self.m, self.k, self.ell, self.r) < 1:
            raise ValidationError("m, k, ell, r must all be >= 1")
        if not 0.0 < self.eps < 1.0:
            raise ValidationError("eps must lie in (0,1)")
        subsets = tuple(frozenset(int(x) for x in s) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if len(subsets) != self.k:
            raise ValidationError(f"expected {self.k} subsets, got {len(subsets)}")
        for i, s in enumerate(subsets):
            if len(s) != self.ell:
                raise ValidationError(f"subset {i} has size {len(s)}, want {self.ell}")
            if any(not 0 <= x < self.m for x in s):
                raise ValidationError(f"subset {i} has elements outside range({self.m})")

    @property
    def regime_ok(self) -> bool:
        """Whether ln(k) <= m/r, the regime where the random construction is guaranteed."""
        return math.log(self.k) <= self.m / self.r


def disperser_subset_size(m: int, r: int, eps: float) -> int:
    """Subset size ceil(3m/(eps*r)), capped at m since subsets live inside [m]."""
    raw = Fraction(3 * m) / (Fraction(eps) * r)
    return min(m, math.ceil(raw))


def random_disperser(m: int, k: int, r: int, eps: float, seed) -> Disperser:
    """k independent uniform subsets of the derived size; unverified."""
    if min(m, k, r) < 1 or not 0.0 < eps < 1.0:
        raise ValidationError("need m, k, r >= 1 and eps in (0,1)")
    ell = disperser_subset_size(m, r, eps)
    rng = random.Random(seed)
    subsets = tuple(frozenset(rng.sample(range(m), ell)) for _ in range(k))
    return Disperser(m, k, ell, r, eps, subsets)


def verify_disperser(d: Disperser, budget: SolveBudget | None = None):
    """Exhaustively check all C(k, r) unions; None on pass, else a violating index tuple."""
    meter = _Meter(budget)
    threshold = (1 - Fraction(d.eps)) * d.m
    for indices in itertools.combinations(range(d.k), d.r):
        meter.tick()
        union: set[int] = set()
        for i in indices:
            union |= d.subsets[i]
        if Fraction(len(union)) < threshold:
            return indices
    return None


def lift_disperser(d: Disperser, blocks: int) -> Disperser:
    """Tensor lift: view [blocks*m] as [blocks] x [m] and take blocks copies of each subset.

    Every r-union scales exactly by `blocks`, so coverage fractions are preserved.
    """
    if blocks < 1:
        raise ValidationError("blocks must be >= 1")
    subsets = tuple(
        frozenset(b * d.m + x for b in range(blocks) for x in s) for s in d.subsets
    )
    return Disperser(blocks * d.m, d.k, blocks * d.ell, d.r, d.eps, subsets, verified=d.verified)


def deterministic_disperser(
    m: int, k: int, r: int, eps: float, budget: SolveBudget | None = None
) -> Disperser:
    """Exhaustive search on a small universe m' ~ r*ln(k), then tensor lift to [m].

    When m' does not divide m the search runs over the padded universe and the
    padding elements are dropped after lifting; subsets are then topped up with
    unused elements to a uniform size (which can only grow unions). The result
    is re-verified before it is returned.
    """
    if min(m, k, r) < 1 or not 0.0 < eps < 1.0:
        raise ValidationError("need m, k, r >= 1 and eps in (0,1)")
    meter = _Meter(budget)
    m_small = min(m, max(1, math.ceil(r * math.log(k))))
    ell_small = disperser_subset_size(m_small, r, eps)
    if math.comb(m_small, ell_small) > meter.max_nodes:
        raise BudgetExceededError(
            f"C({m_small},{ell_small}) candidate subsets exceed the search budget"
        )
    pool = list(itertools.combinations(range(m_small), ell_small))
    found = None
    for collection in itertools.product(pool, repeat=k):
        meter.tick()
        candidate = Disperser(
            m_small, k, ell_small, r, eps, tuple(frozenset(s) for s in collection)
        )
        if verify_disperser(candidate, budget) is None:
            found = candidate
            break
    if found is None:
        raise GenerationError(
            f"exhausted all collections of {k} subsets of [{m_small}] without finding a disperser"
        )
    blocks = -(-m // m_small)
    lifted = lift_disperser(found, blocks)
    if lifted.m == m:
        result = replace(lifted, verified=False)
    else:
        trimmed = [frozenset(x for x in s if x < m) for s in lifted.subsets]
        ell_final = min(m, lifted.ell)
        final = []
        for s in trimmed:
            missing = ell_final - len(s)
            if missing > 0:
                spare = [x for x in range(m) if x not in s][:missing]
                s = s | frozenset(spare)
            final.append(s)
        result = Disperser(m, k, ell_final, r, eps, tuple(final))
    witness = verify_disperser(result, budget)
    if witness is not None:
        raise GenerationError(
            f"lifted disperser fails verification at indices {witness} "
            f"(universe padding weakened the union fraction)"
        )
    return replace(result, verified=True)


def emit_disperser(d: Disperser) -> str:
    lines = [f"disp {d.m} {d.k} {d.ell} {d.r} {d.eps!r}"]
    for s in d.subsets:
        lines.append(" ".join(str(x + 1) for x in sorted(s)))
    return "\n".join(lines) + "\n"


def parse_disperser(data) -> Disperser:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c")]
    if not lines or not lines[0].startswith("disp"):
        raise ParseError("missing 'disp' header")
    parts = lines[0].split()
    if len(parts) != 6:
        raise ParseError(f"malformed header {lines[0]!r}")
    try:
        m, k, ell, r = (int(x) for x in parts[1:5])
        eps = float(parts[5])
    except ValueError:
        raise ParseError("non-numeric header field") from None
    subsets = []
    for ln in lines[1:]:
        try:
            subsets.append(frozenset(int(x) - 1 for x in ln.split()))
        except ValueError:
            raise ParseError(f"non-integer element in {ln!r}") from None
    if len(subsets) != k:
        raise ParseError(f"header declares {k} subsets, found {len(subsets)}")
    try:
        return Disperser(m, k, ell, r, eps, tuple(subsets))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None

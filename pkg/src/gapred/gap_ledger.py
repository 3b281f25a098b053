"""Bookkeeping for claimed gap transformations across pipeline stages.

Each stage records how a claimed completeness optimum and a claimed soundness
bound move through it, as named parameterized maps (serializable and
auditable, never arbitrary code), plus an oracle-checkable predicate that the
verification harness evaluates. Running-time content (the hardness-side
constants) is representable only as documentation notes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import LedgerError

__all__ = [
    "KNOWN_ORACLES",
    "GapMap",
    "StagePredicate",
    "StageEntry",
    "GapLedger",
    "push_stage",
    "evaluate",
    "report",
    "ledger_to_json",
    "ledger_from_json",
]

KNOWN_ORACLES = frozenset(
    {
        "sat_max",
        "max_cov",
        "min_lab",
        "clique",
        "independent_set",
        "biclique",
        "count_ktt",
        "set_cover",
        "dom_set",
        "induced_matching",
        "induced_path",
        "densest_k",
        "max_induced_with_property",
    }
)

_MAP_KINDS = ("identity", "constant", "scale", "power_fraction")


@dataclass(frozen=True)
class GapMap:
    """A named numeric map: identity, constant-c, scale-by-gamma, or (r/q)^-q scale.

    `requires` pins the only input value the map is defined at (used by
    completeness maps that assume a fully coverable source).
    """

    kind: str
    value: float | None = None
    numer: int | None = None
    denom: int | None = None
    requires: float | None = None

    def __post_init__(self):
        if self.kind not in _MAP_KINDS:
            raise LedgerError(f"unknown map kind {self.kind!r}")
        if self.kind in ("constant", "scale") and self.value is None:
            raise LedgerError(f"map kind {self.kind!r} needs a value")
        if self.kind == "power_fraction" and (self.numer is None or self.denom is None):
            raise LedgerError("power_fraction needs numer (r) and denom (q)")

    def factor(self) -> float:
        if self.kind == "scale":
            return self.value
        if self.kind == "power_fraction":
            return (self.denom / self.numer) ** self.denom
        raise LedgerError(f"map kind {self.kind!r} has no scale factor")

    def apply(self, x: float) -> float:
        if self.requires is not None and x != self.requires:
            raise LedgerError(f"map defined only at {self.requires}, evaluated at {x}")
        if self.kind == "identity":
            return x
        if self.kind == "constant":
            return self.value
        return self.factor() * x

    def describe(self) -> str:
        if self.kind == "identity":
            return "x -> x"
        if self.kind == "constant":
            return f"x -> {self.value}"
        if self.kind == "scale":
            return f"x -> {self.value} * x"
        return f"x -> (({self.denom}/{self.numer})^{self.denom}) * x"


@dataclass(frozen=True)
class StagePredicate:
    """An oracle-checkable claim: oracle(output) <comparison> target-expression."""

    oracle: str
    comparison: str
    target: str

    def __post_init__(self):
        if self.comparison not in ("==", "<", "<=", ">", ">="):
            raise LedgerError(f"unknown comparison {self.comparison!r}")


@dataclass(frozen=True)
class StageEntry:
    name: str
    params: tuple[tuple[str, float | int | str], ...]
    completeness: GapMap
    soundness: GapMap
    predicate: StagePredicate | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sorted(self.params)))
        object.__setattr__(self, "notes", tuple(self.notes))

    def param_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class GapLedger:
    stages: tuple[StageEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.stages)


def push_stage(ledger: GapLedger, entry: StageEntry) -> GapLedger:
    """Append a stage, validating that its predicate references a known oracle."""
    if entry.predicate is not None and entry.predicate.oracle not in KNOWN_ORACLES:
        raise LedgerError(f"predicate names unknown oracle {entry.predicate.oracle!r}")
    return GapLedger(ledger.stages + (entry,))


def evaluate(ledger: GapLedger, q_in: float, r_in: float) -> tuple[float, float]:
    """Fold the completeness and soundness maps forward through every stage."""
    if q_in < r_in:
        raise LedgerError(f"expected q_in >= r_in, got {q_in} < {r_in}")
    q, r = q_in, r_in
    for entry in ledger.stages:
        q = entry.completeness.apply(q)
        r = entry.soundness.apply(r)
    return q, r


def report(ledger: GapLedger, results: dict[int, tuple[str, str]] | None = None) -> str:
    """Human-readable per-stage table plus the end-to-end claim.

    `results` maps stage index to (status, detail) from the last verify run.
    """
    if not ledger.stages:
        return "no stages\n"
    results = results or {}
    lines = []
    for idx, entry in enumerate(ledger.stages):
        status, detail = results.get(idx, ("UNVERIFIED", ""))
        params = ", ".join(f"{k}={v}" for k, v in entry.params) or "-"
        lines.append(f"stage {idx + 1}: {entry.name} [{params}]")
        lines.append(f"  completeness: {entry.completeness.describe()}")
        lines.append(f"  soundness:    {entry.soundness.describe()}")
        if entry.predicate is not None:
            pred = entry.predicate
            lines.append(f"  predicate:    {pred.oracle}(out) {pred.comparison} {pred.target}")
        for note in entry.notes:
            lines.append(f"  note: {note}")
        lines.append(f"  status:       {status}" + (f" ({detail})" if detail else ""))
    statuses = [results.get(i, ("UNVERIFIED", ""))[0] for i in range(len(ledger.stages))]
    lines.append("end-to-end: " + ("all PASS" if statuses and all(
        s in ("PASS", "NOT-APPLICABLE") for s in statuses
    ) else "; ".join(statuses)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON round trip for manifests


def _map_to_json(m: GapMap) -> dict:
    out = {"kind": m.kind}
    for key in ("value", "numer", "denom", "requires"):
        val = getattr(m, key)
        if val is not None:
            out[key] = val
    return out


def ledger_to_json(ledger: GapLedger) -> str:
    stages = []
    for entry in ledger.stages:
        item = {
            "name": entry.name,
            "params": dict(entry.params),
            "completeness": _map_to_json(entry.completeness),
            "soundness": _map_to_json(entry.soundness),
            "notes": list(entry.notes),
        }
        if entry.predicate is not None:
            item["predicate"] = {
                "oracle": entry.predicate.oracle,
                "comparison": entry.predicate.comparison,
                "target": entry.predicate.target,
            }
        stages.append(item)
    return json.dumps({"stages": stages}, indent=2, sort_keys=True)


def ledger_from_json(text: str) -> GapLedger:
    data = json.loads(text)
    ledger = GapLedger()
    for item in data["stages"]:
        predicate = None
        if "predicate" in item:
            predicate = StagePredicate(**item["predicate"])
        entry = StageEntry(
            name=item["name"],
            params=tuple(sorted(item["params"].items())),
            completeness=GapMap(**item["completeness"]),
            soundness=GapMap(**item["soundness"]),
            predicate=predicate,
            notes=tuple(item.get("notes", ())),
        )
        ledger = push_stage(ledger, entry)
    return ledger

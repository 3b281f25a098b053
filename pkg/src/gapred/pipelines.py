"""Pipeline assembly, gap-instance generation, and the verification harness.

A pipeline is an input instance plus an ordered stage list whose input/output
kinds chain (cnf -> lc -> ... -> graph). Running one produces every
intermediate instance and a gap ledger; verifying one additionally computes
source and target optima with the exact oracles and grades each stage's
completeness/soundness predicate PASS, FAIL, NOT-APPLICABLE (premise unmet),
or INCONCLUSIVE (budget exhausted or uncertified disperser).
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import gap_ledger as gl
from .dispersers import Disperser, emit_disperser, verify_disperser
from .errors import (
    BudgetExceededError,
    GenerationError,
    ParseError,
    ValidationError,
)
from .graph_reductions import (
    DksParams,
    biclique_gadget,
    clique_to_inducedpath,
    dks_edge,
    fglss,
    im_gadget,
    is_to_im_gadget,
    minlab_to_setcov,
    sat_to_dks,
    setcov_to_domset,
)
from .instances import (
    CnfFormula,
    emit_cnf,
    emit_graph,
    emit_labelcover,
    emit_setsystem,
    parse_cnf,
    parse_graph,
    parse_labelcover,
    parse_setsystem,
)
from .lc_transforms import (
    DEFAULT_SIZE_CAP,
    CompressLeftParams,
    CompressRightParams,
    cnf_to_labelcover,
    compress_left,
    compress_right,
    minlab_instance,
)
from .oracles import (
    SolveBudget,
    clique,
    dom_set,
    independent_set,
    induced_matching,
    induced_path_at_least,
    biclique,
    max_cov,
    min_lab,
    sat_max,
    set_cover,
)

__all__ = [
    "gen_planted_cnf",
    "gen_gap_cnf",
    "gen_cnf_gap",
    "PipelineSpec",
    "PipelineRun",
    "run_pipeline",
    "StageVerification",
    "VerifyReport",
    "verify_pipeline",
    "write_artifacts",
    "STAGE_IO",
]


# ---------------------------------------------------------------------------
# CNF generators for pipeline inputs


def gen_planted_cnf(num_vars: int, num_clauses: int, seed) -> CnfFormula:
    """Satisfiable by construction: sample 3-clauses, flipping one literal when
    the planted assignment misses, so every clause is satisfied by it."""
    if num_vars < 3 and num_clauses > 0:
        raise ValidationError("planting 3-clauses needs at least 3 variables")
    rng = random.Random(seed)
    planted = rng.getrandbits(num_vars) if num_vars else 0
    clauses = []
    for _ in range(num_clauses):
        variables = rng.sample(range(1, num_vars + 1), 3)
        lits = [v if rng.random() < 0.5 else -v for v in variables]
        if not any(((planted >> (abs(l) - 1)) & 1) == (1 if l > 0 else 0) for l in lits):
            fix = rng.randrange(3)
            lits[fix] = -lits[fix]
        clauses.append(tuple(lits))
    return CnfFormula(num_vars, tuple(clauses))


def gen_gap_cnf(
    num_vars: int,
    num_clauses: int,
    eps: float,
    seed,
    max_attempts: int = 5000,
    budget: SolveBudget | None = None,
) -> CnfFormula:
    """Oracle-certified gap formula: sat_max < (1-eps)*m, by rejection sampling.

    Clause widths are mixed (units dominate): any width-3 clause is satisfied
    by a uniform random assignment with probability 7/8, so formulas built
    from 3-clauses alone always satisfy sat_max >= 7m/8 and can never certify
    eps > 1/8. Short clauses have no such floor.
    """
    if num_vars < 1 or num_clauses < 1 or not 0.0 < eps < 1.0:
        raise ValidationError("need num_vars >= 1, num_clauses >= 1, eps in (0,1)")
    rng = random.Random(seed)
    threshold = (1 - Fraction(eps)) * num_clauses
    for _ in range(max_attempts):
        clauses = []
        for _ in range(num_clauses):
            width = rng.choices((1, 2, 3), weights=(50, 25, 25))[0]
            width = min(width, num_vars)
            variables = rng.sample(range(1, num_vars + 1), width)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
        formula = CnfFormula(num_vars, tuple(clauses))
        if Fraction(sat_max(formula, budget)) < threshold:
            return formula
    raise GenerationError(
        f"no gap formula with sat_max < (1-{eps})*{num_clauses} in {max_attempts} attempts"
    )


def gen_cnf_gap(
    num_vars: int, eps: float, seed, num_clauses: int | None = None
) -> tuple[CnfFormula, CnfFormula]:
    """One planted satisfiable formula and one oracle-certified gap formula."""
    m = num_clauses if num_clauses is not None else 2 * num_vars
    rng = random.Random(seed)
    planted = gen_planted_cnf(num_vars, m, rng.randrange(2**63))
    gap = gen_gap_cnf(num_vars, m, eps, rng.randrange(2**63))
    return planted, gap


# ---------------------------------------------------------------------------
# Pipeline specification


STAGE_IO = {
    "cnf2lc": ("cnf", "lc"),
    "compress-left": ("lc", "lc"),
    "compress-right": ("lc", "lc"),
    "minlab": ("lc", "lc"),
    "fglss": ("lc", "graph"),
    "minlab2setcov": ("lc", "setsystem"),
    "setcov2domset": ("setsystem", "graph"),
    "biclique-gadget": ("graph", "graph"),
    "im-gadget": ("graph", "graph"),
    "is2im": ("graph", "graph"),
    "clique2ipath": ("graph", "graph"),
    "sat2dks": ("cnf", "graph"),
}

_INPUT_KINDS = {
    "cnf-file": "cnf",
    "lc-file": "lc",
    "graph-file": "graph",
    "ss-file": "setsystem",
    "gen-planted": "cnf",
    "gen-gap": "cnf",
}

_PARSERS = {
    "cnf": parse_cnf,
    "lc": parse_labelcover,
    "graph": parse_graph,
    "setsystem": parse_setsystem,
}

_EMITTERS = {
    "cnf": emit_cnf,
    "lc": emit_labelcover,
    "graph": emit_graph,
    "setsystem": emit_setsystem,
}

_EXTENSIONS = {"cnf": "cnf", "lc": "lc", "graph": "graph", "setsystem": "ss"}


@dataclass(frozen=True)
class PipelineSpec:
    input: dict
    stages: tuple[dict, ...]
    seed: int | None = None
    size_cap: int = DEFAULT_SIZE_CAP
    budget: SolveBudget = SolveBudget()

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(dict(s) for s in self.stages))
        kind = self.input.get("kind")
        if kind not in _INPUT_KINDS:
            raise ValidationError(f"unknown input kind {kind!r}")
        current = _INPUT_KINDS[kind]
        for stage in self.stages:
            op = stage.get("op")
            if op not in STAGE_IO:
                raise ValidationError(f"unknown stage op {op!r}")
            expected, produced = STAGE_IO[op]
            if expected != current:
                raise ValidationError(
                    f"stage {op!r} expects a {expected} input but gets {current}"
                )
            current = produced

    @property
    def output_kind(self) -> str:
        kind = _INPUT_KINDS[self.input["kind"]]
        for stage in self.stages:
            kind = STAGE_IO[stage["op"]][1]
        return kind

    @classmethod
    def from_json(cls, text: str) -> "PipelineSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid pipeline spec JSON: {exc}") from None
        budget_data = data.get("budget", {})
        budget = SolveBudget(
            max_nodes=budget_data.get("max_nodes", SolveBudget().max_nodes),
            max_millis=budget_data.get("max_millis", SolveBudget().max_millis),
        )
        return cls(
            input=data["input"],
            stages=tuple(data.get("stages", ())),
            seed=data.get("seed"),
            size_cap=data.get("size_cap", DEFAULT_SIZE_CAP),
            budget=budget,
        )

    @classmethod
    def from_file(cls, path) -> "PipelineSpec":
        return cls.from_json(Path(path).read_text())


def _load_input(spec: PipelineSpec):
    info = spec.input
    kind = info["kind"]
    if kind.endswith("-file"):
        text = Path(info["path"]).read_text()
        return _PARSERS[_INPUT_KINDS[kind]](text)
    seed = info.get("seed", spec.seed)
    if kind == "gen-planted":
        return gen_planted_cnf(info["n"], info["m"], seed)
    if kind == "gen-gap":
        return gen_gap_cnf(info["n"], info["m"], info["epsilon"], seed)
    raise ValidationError(f"unknown input kind {kind!r}")


# ---------------------------------------------------------------------------
# Stage execution and ledger entries


def _identity_map() -> gl.GapMap:
    return gl.GapMap(kind="identity")


def _run_stage(op: str, params: dict, instance, spec: PipelineSpec):
    """Returns (output instance, ledger entry, extras dict)."""
    size_cap = params.get("size_cap", spec.size_cap)
    if op == "cnf2lc":
        out = cnf_to_labelcover(instance)
        entry = gl.StageEntry(
            name="cnf2lc",
            params=(),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate("max_cov", "==", "sat_max(source)"),
        )
        return out, entry, {}
    if op == "compress-left":
        cl = CompressLeftParams(
            k=params["k"],
            r=params["r"],
            eps=params["epsilon"],
            disperser_mode=params.get("disperser", "random"),
            seed=params.get("seed", spec.seed),
            size_cap=size_cap,
        )
        out, disperser = compress_left(instance, cl)
        entry = gl.StageEntry(
            name="compress-left",
            params=(("k", cl.k), ("r", cl.r), ("epsilon", cl.eps)),
            completeness=gl.GapMap(
                kind="constant", value=cl.k, requires=float(instance.left_size)
            ),
            soundness=gl.GapMap(
                kind="constant",
                value=cl.r,
                requires=float((1 - Fraction(cl.eps)) * instance.left_size),
            ),
            predicate=gl.StagePredicate("max_cov", "==", "k (full source) / < r (gap source)"),
            notes=(
                "running-time constants of the underlying hardness statement are out of scope",
            ),
        )
        return out, entry, {"disperser": disperser}
    if op == "compress-right":
        cr = CompressRightParams(
            q=params["q"], gamma=params["gamma"], eps=params["epsilon"], size_cap=size_cap
        )
        out = compress_right(instance, cr)
        entry = gl.StageEntry(
            name="compress-right",
            params=(("q", cr.q), ("gamma", cr.gamma), ("epsilon", cr.eps)),
            completeness=gl.GapMap(
                kind="constant", value=float(out.left_size), requires=float(instance.left_size)
            ),
            soundness=gl.GapMap(
                kind="constant",
                value=cr.gamma * out.left_size,
                requires=float((1 - Fraction(cr.eps)) * instance.left_size),
            ),
            predicate=gl.StagePredicate("max_cov", "==", "|U'| (full) / < gamma*|U'| (gap)"),
        )
        return out, entry, {}
    if op == "minlab":
        q, r, eps = params["q"], params["r"], params["epsilon"]
        out = minlab_instance(instance, q, r, eps, size_cap=size_cap)
        entry = gl.StageEntry(
            name="minlab",
            params=(("q", q), ("r", r), ("epsilon", eps)),
            completeness=gl.GapMap(
                kind="constant", value=float(q), requires=float(instance.left_size)
            ),
            soundness=gl.GapMap(
                kind="constant",
                value=float(r),
                requires=float((1 - Fraction(eps)) * instance.left_size),
            ),
            predicate=gl.StagePredicate("min_lab", "==", "q (full) / > r (gap)"),
            notes=("gamma follows the power form (r/q)^-q",),
        )
        return out, entry, {}
    if op == "fglss":
        out = fglss(instance)
        entry = gl.StageEntry(
            name="fglss",
            params=(),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate("clique", "==", "max_cov(source)"),
        )
        return out, entry, {}
    if op == "minlab2setcov":
        out = minlab_to_setcov(instance, size_cap=size_cap)
        entry = gl.StageEntry(
            name="minlab2setcov",
            params=(),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate("set_cover", "==", "min_lab(source)"),
        )
        return out, entry, {}
    if op == "setcov2domset":
        out = setcov_to_domset(instance)
        entry = gl.StageEntry(
            name="setcov2domset",
            params=(),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate("dom_set", "==", "set_cover(source)"),
        )
        return out, entry, {}
    if op == "biclique-gadget":
        out = biclique_gadget(instance)
        entry = gl.StageEntry(
            name="biclique-gadget",
            params=(),
            completeness=_identity_map(),
            soundness=gl.GapMap(kind="scale", value=0.5),
            predicate=gl.StagePredicate(
                "biclique", ">=", "clique(source), and <= 2*biclique(source)+1"
            ),
        )
        return out, entry, {}
    if op == "im-gadget":
        out = im_gadget(instance)
        entry = gl.StageEntry(
            name="im-gadget",
            params=(),
            completeness=_identity_map(),
            soundness=gl.GapMap(kind="scale", value=0.5),
            predicate=gl.StagePredicate(
                "induced_matching", ">=", "clique(source), and <= 2*biclique(source)+1"
            ),
        )
        return out, entry, {}
    if op == "is2im":
        out = is_to_im_gadget(instance)
        entry = gl.StageEntry(
            name="is2im",
            params=(),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate("induced_matching", ">=", "independent_set(source)"),
        )
        return out, entry, {}
    if op == "clique2ipath":
        k, q = params["k"], params["q"]
        out = clique_to_inducedpath(instance, k, q)
        entry = gl.StageEntry(
            name="clique2ipath",
            params=(("k", k), ("q", q)),
            completeness=gl.GapMap(kind="constant", value=float(2 * q * k), requires=float(k)),
            soundness=gl.GapMap(kind="constant", value=float(4 * (k - 1)), requires=float(k)),
            predicate=gl.StagePredicate(
                "induced_path", ">=", "2qk if clique >= k, else <= 4(k-1)"
            ),
        )
        return out, entry, {}
    if op == "sat2dks":
        dp = DksParams(
            ell=params["ell"],
            p=params.get("p", 1.0),
            lam=params.get("lambda", 0.1),
            r=params.get("r"),
            seed=params.get("seed", spec.seed),
            size_cap=size_cap,
        )
        out = sat_to_dks(instance, dp)
        entry = gl.StageEntry(
            name="sat2dks",
            params=(("ell", dp.ell), ("p", dp.p), ("lambda", dp.lam)),
            completeness=_identity_map(),
            soundness=_identity_map(),
            predicate=gl.StagePredicate(
                "densest_k", "==", "1 on the planted clique (witness check)"
            ),
            notes=(
                "occurrence bound 2^(4n) * (2^(-lam*ell^2/n) * C(n,ell))^(2t) is documentation only",
            ),
        )
        return out, entry, {"dks_params": dp}
    raise ValidationError(f"unknown stage op {op!r}")


@dataclass
class PipelineRun:
    kinds: list[str]
    instances: list
    ledger: gl.GapLedger
    extras: list[dict]


def run_pipeline(spec: PipelineSpec) -> PipelineRun:
    instance = _load_input(spec)
    kinds = [_INPUT_KINDS[spec.input["kind"]]]
    instances = [instance]
    ledger = gl.GapLedger()
    extras = []
    for stage in spec.stages:
        op = stage["op"]
        out, entry, extra = _run_stage(op, stage, instances[-1], spec)
        instances.append(out)
        kinds.append(STAGE_IO[op][1])
        ledger = gl.push_stage(ledger, entry)
        extras.append(extra)
    return PipelineRun(kinds, instances, ledger, extras)


# ---------------------------------------------------------------------------
# Verification harness


@dataclass
class StageVerification:
    index: int
    name: str
    status: str  # PASS | FAIL | NOT-APPLICABLE | INCONCLUSIVE
    detail: str
    values: dict = field(default_factory=dict)


@dataclass
class VerifyReport:
    stages: list[StageVerification]
    ledger: gl.GapLedger
    input_values: dict

    @property
    def overall(self) -> str:
        statuses = {s.status for s in self.stages}
        if "FAIL" in statuses:
            return "fail"
        if "INCONCLUSIVE" in statuses:
            return "inconclusive"
        return "pass"

    def render(self) -> str:
        results = {s.index: (s.status, s.detail) for s in self.stages}
        header = "".join(f"{k} = {v}\n" for k, v in sorted(self.input_values.items()))
        return header + gl.report(self.ledger, results)


def _find_satisfying(formula: CnfFormula) -> int | None:
    for assign in range(1 << formula.num_vars):
        if all(formula.clause_satisfied(i, assign) for i in range(formula.num_clauses)):
            return assign
    return None


def _verify_stage(op, params, source, output, extra, budget) -> tuple[str, str, dict]:
    if op == "cnf2lc":
        a = sat_max(source, budget)
        b = max_cov(output, budget)
        values = {"sat_max": a, "max_cov": b}
        return ("PASS" if a == b else "FAIL", f"sat_max={a}, max_cov={b}", values)
    if op in ("compress-left", "compress-right", "minlab"):
        eps = params["epsilon"]
        m = source.left_size
        mc_in = max_cov(source, budget)
        gap_bound = (1 - Fraction(eps)) * m
        values = {"max_cov_in": mc_in, "left_size_in": m}
        if mc_in == m:
            if op == "compress-left":
                target, got = params["k"], max_cov(output, budget)
                ok = got == target
                detail = f"completeness: max_cov={got}, want {target}"
            elif op == "compress-right":
                target, got = output.left_size, max_cov(output, budget)
                ok = got == target
                detail = f"completeness: max_cov={got}, want {target}"
            else:
                target, got = params["q"], min_lab(output, budget)
                ok = got == target
                detail = f"completeness: min_lab={got}, want {target}"
            values["value_out"] = got
            return ("PASS" if ok else "FAIL", detail, values)
        if Fraction(mc_in) < gap_bound:
            if op == "compress-left":
                disperser = extra["disperser"]
                witness = verify_disperser(disperser, budget)
                if witness is not None:
                    return (
                        "INCONCLUSIVE",
                        f"disperser unverified (witness {witness}); soundness claim not certified",
                        values,
                    )
                got = max_cov(output, budget)
                ok = got < params["r"]
                detail = f"soundness: max_cov={got}, want < {params['r']}"
            elif op == "compress-right":
                got = max_cov(output, budget)
                bound = Fraction(params["gamma"]) * output.left_size
                ok = Fraction(got) < bound
                detail = f"soundness: max_cov={got}, want < gamma*|U'|={float(bound):.3f}"
            else:
                got = min_lab(output, budget)
                ok = got is None or got > params["r"]
                detail = f"soundness: min_lab={got}, want > {params['r']}"
            values["value_out"] = got
            return ("PASS" if ok else "FAIL", detail, values)
        return (
            "NOT-APPLICABLE",
            f"source max_cov={mc_in} is neither full ({m}) nor below {float(gap_bound):.3f}",
            values,
        )
    if op == "fglss":
        a = max_cov(source, budget)
        b = clique(output, budget)
        return ("PASS" if a == b else "FAIL", f"max_cov={a}, clique={b}", {"max_cov": a, "clique": b})
    if op == "minlab2setcov":
        a = min_lab(source, budget)
        b = set_cover(output, budget)
        return (
            "PASS" if a == b else "FAIL",
            f"min_lab={a}, set_cover={b}",
            {"min_lab": a, "set_cover": b},
        )
    if op == "setcov2domset":
        a = set_cover(source, budget)
        b = dom_set(output, budget)
        return ("PASS" if a == b else "FAIL", f"set_cover={a}, dom_set={b}", {"set_cover": a, "dom_set": b})
    if op == "biclique-gadget":
        c = clique(source, budget)
        bi = biclique(source, budget)
        bo = biclique(output, budget)
        ok = c <= bo <= 2 * bi + 1
        return (
            "PASS" if ok else "FAIL",
            f"clique={c} <= biclique(B_e)={bo} <= 2*{bi}+1",
            {"clique": c, "biclique_in": bi, "biclique_out": bo},
        )
    if op == "im-gadget":
        c = clique(source, budget)
        bi = biclique(source, budget)
        im = induced_matching(output, budget)
        ok = c <= im <= 2 * bi + 1
        return (
            "PASS" if ok else "FAIL",
            f"clique={c} <= IM={im} <= 2*{bi}+1",
            {"clique": c, "biclique_in": bi, "im_out": im},
        )
    if op == "is2im":
        a = independent_set(source, budget)
        b = induced_matching(output, budget)
        return ("PASS" if b >= a else "FAIL", f"IM={b} >= MIS={a}", {"mis": a, "im": b})
    if op == "clique2ipath":
        k, q = params["k"], params["q"]
        c = clique(source, budget)
        if c >= k:
            ok = induced_path_at_least(output, 2 * q * k, budget)
            detail = f"clique={c} >= {k}: induced path of size {2 * q * k} {'found' if ok else 'missing'}"
        else:
            ok = not induced_path_at_least(output, 4 * (k - 1) + 1, budget)
            detail = f"clique={c} < {k}: no induced path above {4 * (k - 1)}"
        return ("PASS" if ok else "FAIL", detail, {"clique": c})
    if op == "sat2dks":
        dp = extra["dks_params"]
        n = source.num_vars
        values = {"num_vertices": output.num_vertices}
        if dp.p < 1.0:
            full = math.comb(n, dp.ell) << dp.ell
            ok = output.num_vertices <= full
            return (
                "PASS" if ok else "FAIL",
                f"subsampled: {output.num_vertices} of {full} vertices kept",
                values,
            )
        expected = math.comb(n, dp.ell) << dp.ell
        if output.num_vertices != expected:
            return ("FAIL", f"|V|={output.num_vertices}, want {expected}", values)
        witness = _find_satisfying(source)
        if witness is None:
            return ("PASS", f"|V|={expected}; source unsatisfiable, no witness clique checked", values)
        pairs_ok = True
        windows = list(itertools.combinations(range(n), dp.ell))
        restrictions = []
        for window in windows:
            bits = 0
            for t, var in enumerate(window):
                bits |= ((witness >> var) & 1) << t
            restrictions.append((window, bits))
        for i in range(len(restrictions)):
            for j in range(i + 1, len(restrictions)):
                w1, b1 = restrictions[i]
                w2, b2 = restrictions[j]
                if not dks_edge(source, w1, b1, w2, b2):
                    pairs_ok = False
                    break
            if not pairs_ok:
                break
        return (
            "PASS" if pairs_ok else "FAIL",
            f"|V|={expected}; witness restrictions pairwise adjacent: {pairs_ok}",
            values,
        )
    raise ValidationError(f"no verifier for stage {op!r}")


def verify_pipeline(spec: PipelineSpec) -> VerifyReport:
    run = run_pipeline(spec)
    input_values = {}
    if run.kinds[0] == "cnf":
        try:
            input_values["sat_max"] = sat_max(run.instances[0], spec.budget)
            input_values["num_clauses"] = run.instances[0].num_clauses
        except BudgetExceededError:
            pass
    stages = []
    for idx, stage in enumerate(spec.stages):
        op = stage["op"]
        try:
            status, detail, values = _verify_stage(
                op, stage, run.instances[idx], run.instances[idx + 1], run.extras[idx], spec.budget
            )
        except BudgetExceededError as exc:
            status, detail, values = "INCONCLUSIVE", f"budget exceeded: {exc}", {}
        if status == "FAIL":
            detail += f" [witness instance: stage{idx + 1:02d}]"
        stages.append(StageVerification(idx, op, status, detail, values))
    return VerifyReport(stages, run.ledger, input_values)


# ---------------------------------------------------------------------------
# Artifact output


def write_artifacts(
    run: PipelineRun,
    out_dir,
    command: str,
    spec: PipelineSpec,
    report: VerifyReport | None = None,
    version: str = "0",
) -> Path:
    """Write every stage instance, dispersers, the ledger, and a manifest.

    The manifest carries seeds, parameters, and oracle values; it contains no
    timestamps so repeated seeded runs are byte-identical.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    artifacts = []
    for idx, (kind, instance) in enumerate(zip(run.kinds, run.instances)):
        name = f"stage{idx:02d}.{_EXTENSIONS[kind]}"
        (out / name).write_text(_EMITTERS[kind](instance))
        artifacts.append(name)
    for idx, extra in enumerate(run.extras):
        disperser = extra.get("disperser")
        if isinstance(disperser, Disperser):
            name = f"stage{idx + 1:02d}.disp"
            (out / name).write_text(emit_disperser(disperser))
            artifacts.append(name)
    (out / "ledger.json").write_text(gl.ledger_to_json(run.ledger) + "\n")
    artifacts.append("ledger.json")
    manifest = {
        "tool": "gapred",
        "version": version,
        "command": command,
        "seed": spec.seed,
        "size_cap": spec.size_cap,
        "input": spec.input,
        "stages": list(spec.stages),
        "artifacts": sorted(artifacts),
    }
    if report is not None:
        manifest["verification"] = {
            "overall": report.overall,
            "input_values": {k: repr(v) for k, v in report.input_values.items()},
            "stages": [
                {"name": s.name, "status": s.status, "detail": s.detail}
                for s in report.stages
            ],
        }
        (out / "report.txt").write_text(report.render())
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return out / "manifest.json"

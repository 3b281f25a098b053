"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 parse/validation error,
3 budget exceeded or inconclusive verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .dispersers import (
    deterministic_disperser,
    emit_disperser,
    parse_disperser,
    random_disperser,
    verify_disperser,
)
from .errors import BudgetExceededError, GapredError, ParseError
from .graph_reductions import (
    DksParams,
    biclique_gadget,
    clique_to_inducedpath,
    fglss,
    im_gadget,
    is_to_im_gadget,
    minlab_to_setcov,
    sat_to_dks,
    setcov_to_domset,
)
from .instances import (
    emit_cnf,
    emit_graph,
    emit_labelcover,
    emit_setsystem,
    parse_cnf,
    parse_graph,
    parse_labelcover,
    parse_setsystem,
    random_cnf,
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
    biclique,
    clique,
    count_ktt,
    densest_k,
    dom_set,
    independent_set,
    induced_matching,
    induced_path,
    max_cov,
    max_induced_with_property,
    min_lab,
    sat_max,
    set_cover,
)
from .pipelines import (
    PipelineSpec,
    gen_cnf_gap,
    gen_gap_cnf,
    gen_planted_cnf,
    run_pipeline,
    verify_pipeline,
    write_artifacts,
)

_SOLVERS = {
    "sat-max": ("cnf", sat_max),
    "max-cov": ("lc", max_cov),
    "min-lab": ("lc", min_lab),
    "clique": ("graph", clique),
    "independent-set": ("graph", independent_set),
    "biclique": ("graph", biclique),
    "set-cover": ("setsystem", set_cover),
    "dom-set": ("graph", dom_set),
    "induced-matching": ("graph", induced_matching),
    "induced-path": ("graph", induced_path),
}

_PARSE = {
    "cnf": parse_cnf,
    "lc": parse_labelcover,
    "graph": parse_graph,
    "setsystem": parse_setsystem,
}


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _manifest(out: str | None, data: dict):
    if out is None or out == "-":
        return
    path = Path(out)
    target = path.with_name(path.name + ".manifest.json")
    data = {"tool": "gapred", "version": __version__, **data}
    target.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _budget(args) -> SolveBudget:
    default = SolveBudget()
    return SolveBudget(
        max_nodes=args.budget_nodes or default.max_nodes,
        max_millis=args.budget_millis or default.max_millis,
    )


def _spec_with_cli_overrides(args) -> "PipelineSpec":
    """Load a pipeline spec; explicit CLI budget flags override the file's."""
    import dataclasses

    spec = PipelineSpec.from_file(args.spec)
    if args.budget_nodes or args.budget_millis:
        spec = dataclasses.replace(
            spec,
            budget=SolveBudget(
                max_nodes=args.budget_nodes or spec.budget.max_nodes,
                max_millis=args.budget_millis or spec.budget.max_millis,
            ),
        )
    return spec


def _add_common(parser):
    parser.add_argument("--out", default=None, help="output path ('-' for stdout)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    parser.add_argument("--budget-nodes", type=int, default=None)
    parser.add_argument("--budget-millis", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gapred", description=__doc__)
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-cnf", help="generate CNF instances (random, planted, or gap)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("random", "planted", "gap", "pair"), default="random")
    p.add_argument("--epsilon", type=float, default=0.2)
    _add_common(p)

    p = sub.add_parser("cnf2lc", help="clause-variable game: CNF to label cover")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("lc-compress-left", help="disperser-based left compression")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--deterministic-disperser", action="store_true")
    _add_common(p)

    p = sub.add_parser("lc-compress-right", help="block-merge right compression")
    p.add_argument("input")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("lc-minlab", help="right compression at gamma = (r/q)^-q")
    p.add_argument("input")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    _add_common(p)

    p = sub.add_parser("lc2clique", help="FGLSS graph of a projection label cover")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("minlab2setcov", help="hypercube set system of a MinLab instance")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("setcov2domset", help="set cover to dominating set")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("g2biclique-gadget", help="doubling gadget B_e[G]")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("g2im-gadget", help="doubling gadget B_e[complement(G)]")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("g2is2im", help="pendant gadget: independent set to induced matching")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("clique2ipath", help="block-chained clique to induced path gadget")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("sat2dks", help="partial-assignment graph with optional subsampling")
    p.add_argument("input")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=0.1)
    p.add_argument("--r", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("disperser", help="generate, check, or search dispersers")
    p.add_argument("action", choices=("gen", "check", "det"))
    p.add_argument("input", nargs="?", help="disperser file (for 'check')")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--epsilon", type=float)
    _add_common(p)

    p = sub.add_parser("solve", help="run an exact oracle on an instance file")
    p.add_argument("problem", choices=sorted(_SOLVERS) + ["count-ktt", "densest-k", "max-induced"])
    p.add_argument("input")
    p.add_argument("--t", type=int, default=1, help="t for count-ktt")
    p.add_argument("--k", type=int, default=2, help="k for densest-k")
    p.add_argument("--property", default="forest", help="property for max-induced")
    _add_common(p)

    p = sub.add_parser("pipeline", help="run a pipeline spec and write artifacts")
    p.add_argument("spec")
    _add_common(p)

    p = sub.add_parser("verify", help="run a pipeline spec and oracle-verify each stage")
    p.add_argument("spec")
    _add_common(p)

    return top


def _cmd_gen_cnf(args) -> int:
    if args.mode == "random":
        formula = random_cnf(args.n, args.m, args.seed)
        _write(args.out, emit_cnf(formula))
    elif args.mode == "planted":
        formula = gen_planted_cnf(args.n, args.m, args.seed)
        _write(args.out, emit_cnf(formula))
    elif args.mode == "gap":
        formula = gen_gap_cnf(args.n, args.m, args.epsilon, args.seed, budget=_budget(args))
        _write(args.out, emit_cnf(formula))
    else:
        planted, gap = gen_cnf_gap(args.n, args.epsilon, args.seed, num_clauses=args.m)
        base = Path(args.out or "cnf")
        sat_path = base.parent / (base.stem + ".sat.cnf")
        gap_path = base.parent / (base.stem + ".gap.cnf")
        sat_path.write_text(emit_cnf(planted))
        gap_path.write_text(emit_cnf(gap))
        print(f"{sat_path}\n{gap_path}")
    _manifest(args.out, {"command": "gen-cnf", "mode": args.mode, "seed": args.seed,
                         "params": {"n": args.n, "m": args.m, "epsilon": args.epsilon}})
    return 0


def _cmd_transform(args) -> int:
    text = Path(args.input).read_text()
    params: dict = {"seed": args.seed, "size_cap": args.size_cap}
    if args.command == "cnf2lc":
        out = emit_labelcover(cnf_to_labelcover(parse_cnf(text)))
    elif args.command == "lc-compress-left":
        mode = "deterministic" if args.deterministic_disperser else "random"
        cl = CompressLeftParams(
            k=args.k, r=args.r, eps=args.epsilon, disperser_mode=mode,
            seed=args.seed, size_cap=args.size_cap,
        )
        lc_out, disperser = compress_left(parse_labelcover(text), cl)
        out = emit_labelcover(lc_out)
        if args.out not in (None, "-"):
            Path(args.out).with_suffix(".disp").write_text(emit_disperser(disperser))
        params.update({"k": args.k, "r": args.r, "epsilon": args.epsilon, "disperser": mode})
    elif args.command == "lc-compress-right":
        cr = CompressRightParams(q=args.q, gamma=args.gamma, eps=args.epsilon, size_cap=args.size_cap)
        out = emit_labelcover(compress_right(parse_labelcover(text), cr))
        params.update({"q": args.q, "gamma": args.gamma, "epsilon": args.epsilon})
    elif args.command == "lc-minlab":
        out = emit_labelcover(
            minlab_instance(parse_labelcover(text), args.q, args.r, args.epsilon, args.size_cap)
        )
        params.update({"q": args.q, "r": args.r, "epsilon": args.epsilon})
    elif args.command == "lc2clique":
        out = emit_graph(fglss(parse_labelcover(text)))
    elif args.command == "minlab2setcov":
        out = emit_setsystem(minlab_to_setcov(parse_labelcover(text), args.size_cap))
    elif args.command == "setcov2domset":
        out = emit_graph(setcov_to_domset(parse_setsystem(text)))
    elif args.command == "g2biclique-gadget":
        out = emit_graph(biclique_gadget(parse_graph(text)))
    elif args.command == "g2im-gadget":
        out = emit_graph(im_gadget(parse_graph(text)))
    elif args.command == "g2is2im":
        out = emit_graph(is_to_im_gadget(parse_graph(text)))
    elif args.command == "clique2ipath":
        out = emit_graph(clique_to_inducedpath(parse_graph(text), args.k, args.q))
        params.update({"k": args.k, "q": args.q})
    elif args.command == "sat2dks":
        dp = DksParams(ell=args.ell, p=args.p, lam=args.lam, r=args.r,
                       seed=args.seed, size_cap=args.size_cap)
        out = emit_graph(sat_to_dks(parse_cnf(text), dp))
        params.update({"ell": args.ell, "p": args.p, "lambda": args.lam})
    else:
        raise ParseError(f"unknown transform {args.command!r}")
    _write(args.out, out)
    _manifest(args.out, {"command": args.command, "input": args.input, "params": params})
    return 0


def _cmd_disperser(args) -> int:
    if args.action == "check":
        if args.input is None:
            raise ParseError("disperser check needs an input file")
        d = parse_disperser(Path(args.input).read_text())
        witness = verify_disperser(d, _budget(args))
        if witness is None:
            print("pass")
            return 0
        print(f"fail: indices {tuple(i + 1 for i in witness)} have a small union")
        return 1
    if None in (args.m, args.k, args.r, args.epsilon):
        raise ParseError("disperser gen/det needs --m --k --r --epsilon")
    if args.action == "gen":
        d = random_disperser(args.m, args.k, args.r, args.epsilon, args.seed)
    else:
        d = deterministic_disperser(args.m, args.k, args.r, args.epsilon, _budget(args))
    _write(args.out, emit_disperser(d))
    return 0


def _cmd_solve(args) -> int:
    budget = _budget(args)
    text = Path(args.input).read_text()
    if args.problem == "count-ktt":
        print(count_ktt(parse_graph(text), args.t, budget))
        return 0
    if args.problem == "densest-k":
        print(densest_k(parse_graph(text), args.k, budget))
        return 0
    if args.problem == "max-induced":
        print(max_induced_with_property(parse_graph(text), args.property, budget))
        return 0
    kind, solver = _SOLVERS[args.problem]
    value = solver(_PARSE[kind](text), budget)
    print("infeasible" if value is None else value)
    return 0


def _cmd_pipeline(args) -> int:
    spec = _spec_with_cli_overrides(args)
    run = run_pipeline(spec)
    if args.out not in (None, "-"):
        write_artifacts(run, args.out, "pipeline", spec, version=__version__)
    print(f"ran {len(spec.stages)} stages; final kind: {spec.output_kind}")
    return 0


def _cmd_verify(args) -> int:
    spec = _spec_with_cli_overrides(args)
    report = verify_pipeline(spec)
    if args.out not in (None, "-"):
        run = run_pipeline(spec)
        write_artifacts(run, args.out, "verify", spec, report=report, version=__version__)
    sys.stdout.write(report.render())
    if report.overall == "fail":
        return 1
    if report.overall == "inconclusive":
        return 3
    return 0


def run_command(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen-cnf":
            return _cmd_gen_cnf(args)
        if args.command == "disperser":
            return _cmd_disperser(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "pipeline":
            return _cmd_pipeline(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_transform(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (GapredError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()

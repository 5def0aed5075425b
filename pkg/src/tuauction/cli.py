"""Command-line interface.

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible or unbounded
model, 3 an identity check failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tuauction import benchmark_max as bmax
from tuauction import benchmark_min as bmin
from tuauction.corpus import preset_graph, random_layered_graph
from tuauction.decompose import decompose, verify_decomposition
from tuauction.errors import (
    AuctionError,
    CapExceeded,
    FormatError,
    Infeasible,
    MonopolyViolation,
    PremiseFailed,
    Unbounded,
    ValidationError,
)
from tuauction.instance import (
    check_monopoly_free,
    check_totally_unimodular,
    kflow_instance,
    load_any,
    save_instance,
    save_kflow,
)
from tuauction.parametric import compute_phi
from tuauction.report import fmt, names, render, verify_instance
from tuauction.solver import DualCertificate, lexmin_optimal, solve_primal, verify_optimality

EXIT_OK, EXIT_USAGE, EXIT_MODEL, EXIT_CHECK = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return load_any(text)


def _emit(tree):
    print(render(tree))


def cmd_solve(args):
    inst = _load(args.instance)
    res = solve_primal(inst, args.k)
    if not res.optimal:
        _emit({"command": "solve", "k": args.k, "status": res.status})
        return EXIT_MODEL
    x_star = lexmin_optimal(inst, args.k)
    cert = DualCertificate.for_solution(x_star.x, res.certificate.y)
    ok = verify_optimality(inst, args.k, x_star.x, cert)
    _emit({
        "command": "solve",
        "k": args.k,
        "status": "optimal",
        "phi": res.objective,
        "x_star": names(inst, x_star),
        "x": x_star,
        "certificate": {
            "y": cert.y,
            "J0": " ".join(inst.labels[j] for j in cert.J0),
            "Jf": " ".join(inst.labels[j] for j in cert.Jf),
            "J1": " ".join(inst.labels[j] for j in cert.J1),
            "verified": ok,
        },
    })
    return EXIT_OK if ok else EXIT_CHECK


def cmd_phi(args):
    f = compute_phi(_load(args.instance))
    _emit({
        "command": "phi",
        "feasible_range": f"{f.breakpoints[0]} {f.breakpoints[-1]}",
        "breakpoints": f.breakpoints,
        "values": f.values,
        "slopes": f.slopes,
        "intercepts": f.intercepts,
    })
    return EXIT_OK


def cmd_decompose(args):
    inst = _load(args.instance)
    x_star = lexmin_optimal(inst, args.k)
    d = decompose(inst, x_star, args.k)
    ok = verify_decomposition(inst, x_star, d)
    tree = {"command": "decompose", "k": args.k, "x_star": names(inst, x_star)}
    tree["pieces"] = {f"piece{i + 1}": f"{names(inst, p)} (cost {inst.cost(p)})" for i, p in enumerate(d.pieces)}
    tree["delta"] = d.delta
    tree["verified"] = ok
    _emit(tree)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_bench_max(args):
    inst = _load(args.instance)
    tree = {"command": "bench max", "k": args.k}
    target = inst
    if args.pruned:
        pruned = bmax.prune(inst, args.k)
        tree["pruned_columns"] = " ".join(inst.labels[j] for j in pruned.columns)
        target = pruned.instance
    res = bmax.solve_bmax(target, args.k)
    mu_phi = bmax.mu_via_phi(compute_phi(target), args.k)
    tree["mu"] = res.mu
    tree["mu_phi"] = mu_phi
    tree["z"] = " ".join(f"{target.labels[j]}={v}" for j, v in zip(res.J1, res.z))
    tree["y"] = res.y
    tree["mu_equals_phi_gap"] = res.mu == mu_phi
    if args.pruned:
        mu_full = bmax.solve_bmax(inst, args.k).mu
        tree["mu_full"] = mu_full
        tree["sandwich"] = bool(bmax.check_sandwich(mu_full, res.mu, args.k))
    _emit(tree)
    ok = tree["mu_equals_phi_gap"] and tree.get("sandwich", True)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_bench_min(args):
    inst = _load(args.instance)
    res = bmin.nu_bruteforce(inst, args.k, exhaustive=args.exhaustive)
    tree = {"command": "bench min", "k": args.k, "nu": res.nu, "z": res.z.z}
    tree["witnesses"] = {inst.labels[j]: names(inst, x) for j, x in res.witnesses.items()}
    ok = True
    try:
        gamma = bmin.gamma_star(inst, args.k)
    except Infeasible as exc:
        tree["gamma"] = f"undefined ({exc})"
    else:
        tree["gamma"] = gamma
        ok = bool(bmin.check_minbench_bound(res.nu, gamma, args.k))
        tree["nu_ge_k_gamma"] = ok
    _emit(tree)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_verify(args):
    inst = _load(args.instance)
    tree, failed = verify_instance(inst, args.kmax, tu_limit=args.tu_limit)
    _emit({"command": "verify", "instance": args.instance, "kmax": args.kmax, **tree})
    return EXIT_CHECK if failed else EXIT_OK


def cmd_gen(args):
    if args.preset:
        g = preset_graph(args.preset)
    else:
        g = random_layered_graph(args.nodes, args.edges, args.cost_bound, args.seed, args.paths)
    text = save_kflow(g) if args.format == "kflow" else save_instance(kflow_instance(g))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check_tu(args):
    verdict = check_totally_unimodular(_load(args.instance), args.size_limit)
    tree = {"command": "check tu", "size_limit": args.size_limit, "verdict": verdict.status}
    if verdict.witness is not None:
        tree["witness"] = " / ".join(fmt(r) for r in verdict.witness)
    if verdict.note:
        tree["note"] = verdict.note
    _emit(tree)
    return EXIT_CHECK if verdict.status == "refuted" else EXIT_OK


def cmd_check_monopoly(args):
    inst = _load(args.instance)
    verdict = check_monopoly_free(inst, args.k)
    tree = {"command": "check monopoly", "k": args.k, "monopoly_free": "yes" if verdict else "no"}
    if verdict:
        tree["witnesses"] = {inst.labels[j]: names(inst, x) for j, x in verdict.witnesses.items()}
        tree["next_level_feasible"] = solve_primal(inst, args.k + 1).optimal
    else:
        tree["failing_column"] = inst.labels[verdict.failing]
    _emit(tree)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="tuauction", description="Set-system auctions over TU systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_instance(q, k=True):
        q.add_argument("--instance", required=True, help="TU-AUCTION v1 or KFLOW v1 file")
        if k:
            q.add_argument("--k", type=int, required=True)
        return q

    with_instance(sub.add_parser("solve")).set_defaults(func=cmd_solve)
    with_instance(sub.add_parser("phi"), k=False).set_defaults(func=cmd_phi)
    with_instance(sub.add_parser("decompose")).set_defaults(func=cmd_decompose)

    bench = sub.add_parser("bench").add_subparsers(dest="bench", required=True, parser_class=_Parser)
    q = with_instance(bench.add_parser("max"))
    q.add_argument("--pruned", action="store_true", help="benchmark the pruned problem")
    q.set_defaults(func=cmd_bench_max)
    q = with_instance(bench.add_parser("min"))
    q.add_argument("--exhaustive", action="store_true", help="skip the search shortcuts")
    q.set_defaults(func=cmd_bench_min)

    q = with_instance(sub.add_parser("verify"), k=False)
    q.add_argument("--kmax", type=int, default=2)
    q.add_argument("--tu-limit", type=int, default=4)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("gen")
    q.add_argument("--preset", choices=["d1", "d2", "d3", "d4"])
    q.add_argument("--random", action="store_true")
    q.add_argument("--nodes", type=int, default=6)
    q.add_argument("--edges", type=int, default=10)
    q.add_argument("--cost-bound", type=int, default=10)
    q.add_argument("--paths", type=int, default=2)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--format", choices=["kflow", "tua"], default="kflow")
    q.add_argument("--out")
    q.set_defaults(func=cmd_gen)

    check = sub.add_parser("check").add_subparsers(dest="check", required=True, parser_class=_Parser)
    q = with_instance(check.add_parser("tu"), k=False)
    q.add_argument("--size-limit", type=int, default=6)
    q.set_defaults(func=cmd_check_tu)
    with_instance(check.add_parser("monopoly")).set_defaults(func=cmd_check_monopoly)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and bool(args.preset) == bool(args.random):
        parser.error("gen needs exactly one of --preset or --random")
    if getattr(args, "k", 1) < 0 or getattr(args, "kmax", 1) < 1:
        parser.error("k must be nonnegative and kmax positive")
    try:
        return args.func(args)
    except (FormatError, ValidationError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Infeasible, Unbounded, MonopolyViolation, PremiseFailed) as exc:
        print(f"status: {type(exc).__name__.lower()}\nerror: {exc}")
        return EXIT_MODEL
    except AuctionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())

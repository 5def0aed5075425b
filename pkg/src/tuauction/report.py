"""Nested key-value reports and the all-checks verification run."""

from __future__ import annotations

from fractions import Fraction

from tuauction import benchmark_max as bmax
from tuauction import benchmark_min as bmin
from tuauction.decompose import decompose, verify_decomposition
from tuauction.errors import CapExceeded, Infeasible, MonopolyViolation, PremiseFailed, Unbounded
from tuauction.instance import check_monopoly_free, check_totally_unimodular
from tuauction.parametric import compute_phi, eval_phi
from tuauction.solver import DualCertificate, SolutionVector, lexmin_optimal, solve_primal, verify_optimality


def fmt(value):
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    if isinstance(value, (Fraction, int)):
        return str(value)
    if isinstance(value, SolutionVector):
        return " ".join(str(v) for v in value.x)
    if isinstance(value, (tuple, list)):
        return " ".join(fmt(v) for v in value)
    return str(value)


def render(tree, indent=0):
    """Render nested dicts as indented ``key: value`` lines."""
    lines = []
    pad = "  " * indent
    for key, value in tree.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render(value, indent + 1))
        else:
            text = fmt(value)
            lines.append(f"{pad}{key}: {text}" if text else f"{pad}{key}:")
    return "\n".join(line for line in lines if line)


def names(inst, x):
    return " ".join(inst.labels[j] for j in range(inst.n) if x[j] == 1) or "-"


class Checks:
    """Collects pass/fail outcomes while a report tree is filled in."""

    def __init__(self):
        self.failed = []

    def record(self, node, key, ok, where):
        node[key] = bool(ok)
        if not ok:
            self.failed.append(f"{where}: {key}")
        return ok


def verify_instance(inst, kmax, tu_limit=4):
    """Run every check for k = 1..kmax.  Returns (report tree, failed checks)."""
    checks = Checks()
    tree = {"m": inst.m, "n": inst.n}

    tu = check_totally_unimodular(inst, tu_limit)
    tree["tu_check"] = tu.status + (f" ({tu.note})" if tu.note else "")
    if tu.status == "refuted":
        checks.failed.append("tu_check: refuted")

    f = compute_phi(inst)
    phi_node = {
        "breakpoints": f.breakpoints,
        "values": f.values,
        "slopes": f.slopes,
        "intercepts": f.intercepts,
    }
    slopes = f.slopes
    checks.record(phi_node, "integer_breakpoints", all(isinstance(b, int) for b in f.breakpoints), "phi")
    checks.record(phi_node, "convex", all(a <= b for a, b in zip(slopes, slopes[1:])), "phi")
    certified = True
    for lam in range(f.breakpoints[-1] + 1):
        res = solve_primal(inst, lam)
        certified &= res.optimal and res.objective == eval_phi(f, lam)
        certified &= verify_optimality(inst, lam, res.x, res.certificate)
    checks.record(phi_node, "certificates", certified, "phi")
    tree["phi"] = phi_node
    top = f.breakpoints[-1]

    for k in range(1, kmax + 1):
        tree[f"k={k}"] = _verify_level(inst, k, f, top, checks)
    tree["failed"] = len(checks.failed)
    tree["result"] = "all checks pass" if not checks.failed else "; ".join(checks.failed)
    return tree, checks.failed


def _verify_level(inst, k, f, top, checks):
    where = f"k={k}"
    node = {}
    if k > top:
        node["status"] = f"skipped: P({k}) infeasible"
        return node
    node["status"] = "optimal"
    x_star = lexmin_optimal(inst, k)
    phi_k = eval_phi(f, k)
    node["phi"] = phi_k
    node["x_star"] = names(inst, x_star)
    base = solve_primal(inst, k)
    checks.record(
        node,
        "x_star_certificate",
        verify_optimality(inst, k, x_star.x, DualCertificate.for_solution(x_star.x, base.certificate.y)),
        where,
    )

    mono = check_monopoly_free(inst, k)
    if mono:
        node["monopoly_free"] = "yes"
        checks.record(node, "next_level_feasible", solve_primal(inst, k + 1).optimal, where)
    else:
        node["monopoly_free"] = f"no ({inst.labels[mono.failing]})"

    d = decompose(inst, x_star, k)
    node["decomposition"] = " | ".join(names(inst, p) for p in d.pieces)
    checks.record(node, "decomposition_valid", verify_decomposition(inst, x_star, d), where)

    node["max_benchmark"] = _verify_max(inst, k, f, top, checks, where)
    node["min_benchmark"] = _verify_min(inst, k, checks, where)
    node["shared_optima"] = _verify_shared(inst, k, f, top, checks, where)
    return node


def _verify_max(inst, k, f, top, checks, where):
    node = {}
    if k + 1 > top:
        try:
            bmax.solve_bmax(inst, k)
        except Unbounded:
            node["status"] = f"skipped: unbounded, P({k + 1}) infeasible (monopoly)"
            return node
        checks.failed.append(f"{where}: max benchmark bounded although P(k+1) is infeasible")
        node["status"] = "FAIL: bounded although P(k+1) is infeasible"
        return node
    res = bmax.solve_bmax(inst, k)
    mu_phi = bmax.mu_via_phi(f, k)
    node["mu_lp"] = res.mu
    node["mu_phi"] = mu_phi
    node["z"] = " ".join(f"{inst.labels[j]}={v}" for j, v in zip(res.J1, res.z))
    node["y"] = res.y
    checks.record(node, "mu_equals_phi_gap", res.mu == mu_phi, where)
    checks.record(
        node,
        "tight_at_optimum",
        all(sum(yi * row[j] for yi, row in zip(res.y, inst.A)) == zj for j, zj in zip(res.J1, res.z)),
        where,
    )
    pruned = bmax.prune(inst, k)
    node["pruned_columns"] = " ".join(inst.labels[j] for j in pruned.columns)
    mu_t = bmax.mu_tilde(inst, k, pruned)
    node["mu_tilde"] = mu_t
    sub = pruned.instance
    phi_t_next = solve_primal(sub, k + 1).objective
    phi_t = solve_primal(sub, k).objective
    phi_next = eval_phi(f, k + 1)
    checks.record(node, "pruned_phi_next_equal", phi_t_next == phi_next, where)
    checks.record(node, "pruned_phi_dominates", eval_phi(f, k) <= phi_t, where)
    delta = bmax.pruning_delta(inst, k)
    node["delta"] = delta
    sandwich = bmax.check_sandwich(res.mu, mu_t, k)
    checks.record(node, "sandwich", sandwich, where)
    chain = bmax.check_chain(res.mu, mu_t, delta, phi_next, k)
    checks.record(node, "delta_chain", chain, where)
    return node


def _verify_min(inst, k, checks, where):
    node = {}
    try:
        res = bmin.nu_bruteforce(inst, k)
    except (MonopolyViolation, CapExceeded, Infeasible) as exc:
        node["status"] = f"skipped: {exc}"
        return node
    node["nu"] = res.nu
    node["z"] = res.z.z
    x_star = lexmin_optimal(inst, k)
    checks.record(node, "requirements", bmin.check_requirements(inst, k, res.z.z, x_star), where)
    try:
        gamma = bmin.gamma_star(inst, k)
    except Infeasible as exc:
        node["nu_ge_k_gamma"] = f"skipped: {exc}"
        return node
    node["gamma"] = gamma
    checks.record(node, "nu_ge_k_gamma", bmin.check_minbench_bound(res.nu, gamma, k), where)
    return node


def _verify_shared(inst, k, f, top, checks, where):
    node = {}
    try:
        pieces = bmin.construct_shared_optima(inst, k)
    except PremiseFailed as exc:
        node["premise"] = f"fails: {exc}"
        return node
    node["premise"] = "holds"
    node["pieces"] = " | ".join(names(inst, p) for p in pieces)
    phi1 = eval_phi(f, 1)
    checks.record(node, "piece_costs_equal_phi1", all(inst.cost(p) == phi1 for p in pieces), where)
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    checks.record(node, "sum_optimal", inst.cost(total) == eval_phi(f, k + 1), where)
    linear = all(eval_phi(f, lam) == lam * phi1 for lam in range(0, k + 2))
    checks.record(node, "phi_linear", linear and eval_phi(f, k + 1) == (k + 1) * phi1, where)
    return node

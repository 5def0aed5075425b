"""The max benchmark mu(k), its closed form through phi, and the pruned problem.

The max benchmark is the LP

    max  sum_{j in J1} z_j
    s.t. y A_j <= c_j   (j in J0)
         y A_j >= z_j   (j in J1)
         z_j   >= c_j   (j in J1)

with y free, where (J0, J1) are the zero/one columns of the winning
solution x*.  Its value equals k * (phi(k+1) - phi(k)); both routes are
computed so they can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tuauction.decompose import decompose
from tuauction.errors import Infeasible, SolverError, Unbounded
from tuauction.instance import Instance
from tuauction.parametric import eval_phi, feasible_range
from tuauction.solver import lexmin_optimal, simplex, solve_primal


@dataclass(frozen=True)
class Verdict:
    holds: bool
    detail: str = ""

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class MaxBenchResult:
    mu: Fraction
    z: tuple[Fraction, ...]  # aligned with J1
    y: tuple[Fraction, ...]
    J0: tuple[int, ...]
    J1: tuple[int, ...]

    def feasible_for(self, inst):
        """Exact check of the three constraint families."""
        def yA(j):
            return sum((yi * row[j] for yi, row in zip(self.y, inst.A)), Fraction(0))

        return (
            all(yA(j) <= inst.c[j] for j in self.J0)
            and all(yA(j) >= zj for j, zj in zip(self.J1, self.z))
            and all(zj >= inst.c[j] for j, zj in zip(self.J1, self.z))
        )


def solve_bmax(inst, k, x_star=None):
    if x_star is None:
        x_star = lexmin_optimal(inst, k)
    if not x_star.binary:
        raise ValueError("the winning solution must be binary")
    J0 = tuple(j for j in range(inst.n) if x_star[j] == 0)
    J1 = tuple(j for j in range(inst.n) if x_star[j] == 1)
    m, p, q = inst.m, len(J1), len(J0)

    # columns: y+ (m) | y- (m) | w = z - c_J1 (p) | slack J0 (q) | surplus J1 (p)
    rows, rhs = [], []
    for r, j in enumerate(J0):
        col = inst.column(j)
        row = list(col) + [-a for a in col] + [0] * p + [0] * q + [0] * p
        row[2 * m + p + r] = 1
        rows.append(row)
        rhs.append(inst.c[j])
    for r, j in enumerate(J1):
        col = inst.column(j)
        row = list(col) + [-a for a in col] + [0] * p + [0] * q + [0] * p
        row[2 * m + r] = -1
        row[2 * m + p + q + r] = -1
        rows.append(row)
        rhs.append(inst.c[j])
    width = 2 * m + 2 * p + q
    cost = [0] * (2 * m) + [-1] * p + [0] * (q + p)
    res = simplex(rows, rhs, cost, [0] * width, [None] * width)
    if res.status == "unbounded":
        raise Unbounded(f"max benchmark unbounded at k={k}: P({k + 1}) is infeasible (monopoly)")
    if res.status != "optimal":
        raise SolverError(f"max benchmark LP {res.status}; z = c should always be feasible")
    y = tuple(res.x[i] - res.x[m + i] for i in range(m))
    z = tuple(inst.c[j] + res.x[2 * m + r] for r, j in enumerate(J1))
    out = MaxBenchResult(sum(z, Fraction(0)), z, y, J0, J1)
    if not out.feasible_for(inst):
        raise SolverError("max benchmark solution violates its own constraints")
    return out


def mu_via_phi(f, k):
    lo, hi = feasible_range(f)
    if k + 1 > hi:
        raise ValueError(f"k+1={k + 1} outside the feasible range [{lo}, {hi}]")
    return k * (eval_phi(f, k + 1) - eval_phi(f, k))


@dataclass(frozen=True)
class PrunedInstance:
    instance: Instance
    columns: tuple[int, ...]  # parent column of each retained column
    k: int


def prune(inst, k):
    """Keep only the columns used by the lexmin optimum of P(k+1)."""
    try:
        xbar = lexmin_optimal(inst, k + 1)
    except Infeasible:
        raise Infeasible(f"cannot prune: P({k + 1}) is infeasible") from None
    cols = xbar.support
    return PrunedInstance(inst.restrict(cols), cols, k)


def mu_tilde(inst, k, pruned=None):
    """Max benchmark of the pruned problem, cross-checked against
    k * (phi~(k+1) - phi~(k))."""
    pruned = pruned or prune(inst, k)
    sub = pruned.instance
    res = solve_bmax(sub, k)
    lo, hi = solve_primal(sub, k), solve_primal(sub, k + 1)
    if not (lo.optimal and hi.optimal):
        raise SolverError("pruned problem infeasible at k or k+1")
    if res.mu != k * (hi.objective - lo.objective):
        raise SolverError("pruned max benchmark disagrees with its phi formula")
    return res.mu


def check_sandwich(mu, mu_t, k):
    """mu~ <= mu <= (k+1) mu~."""
    if mu_t > mu:
        return Verdict(False, "lower")
    if mu > (k + 1) * mu_t:
        return Verdict(False, "upper")
    return Verdict(True)


def pruning_delta(inst, k):
    """Costliest piece when the P(k+1) lexmin optimum is split into k+1 unit solutions."""
    xbar = lexmin_optimal(inst, k + 1)
    return decompose(inst, xbar, k + 1).delta


def check_chain(mu, mu_t, delta, phi_next, k):
    """mu~ >= k delta >= k phi(k+1)/(k+1) >= mu/(k+1), link by link."""
    links = [
        ("mu_tilde >= k*delta", mu_t >= k * delta),
        ("k*delta >= k*phi(k+1)/(k+1)", k * delta >= Fraction(k * phi_next, k + 1)),
        ("k*phi(k+1)/(k+1) >= mu/(k+1)", Fraction(k * phi_next, k + 1) >= Fraction(mu, k + 1)),
    ]
    failed = [name for name, ok in links if not ok]
    return Verdict(not failed, "; ".join(failed))


"""The optimal-value function phi(lam) of P(lam) as an explicit
piecewise-linear convex function.

Breakpoints of phi are integers for a TU system, so phi is pinned down by
its values on the integer grid of the feasible range; collinear grid
pieces are merged with exact slope comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tuauction.errors import SolverError, ValidationError
from tuauction.solver import simplex, solve_primal


@dataclass(frozen=True)
class PhiFunction:
    breakpoints: tuple[int, ...]
    values: tuple[Fraction, ...]  # phi at each breakpoint

    @property
    def segments(self):
        return len(self.breakpoints) - 1

    @property
    def slopes(self):
        bp, v = self.breakpoints, self.values
        return tuple((v[i] - v[i - 1]) / (bp[i] - bp[i - 1]) for i in range(1, len(bp)))

    @property
    def intercepts(self):
        bp, v = self.breakpoints, self.values
        return tuple(v[i] - g * bp[i] for i, g in enumerate(self.slopes, start=1))

    def __call__(self, lam):
        return eval_phi(self, lam)


def max_feasible_lambda(inst):
    """Optimal value of max lam s.t. A x = lam b, 0 <= x <= 1."""
    n = inst.n
    # any row with b_i != 0 caps lam at sum_j |A_ij| / |b_i|
    cap = min(Fraction(sum(abs(a) for a in row), abs(bi)) for row, bi in zip(inst.A, inst.b) if bi)
    A = [list(row) + [-bi] for row, bi in zip(inst.A, inst.b)]
    cost = [0] * n + [-1]
    res = simplex(A, [0] * inst.m, cost, [0] * (n + 1), [1] * n + [cap])
    if res.status != "optimal":
        raise SolverError(f"feasibility-range LP returned {res.status}")
    top = res.x[-1]
    if top.denominator != 1:
        raise ValidationError(f"largest feasible lambda {top} is not an integer; (A, b) is not TU")
    return int(top)


def compute_phi(inst):
    top = max_feasible_lambda(inst)
    grid = []
    for lam in range(top + 1):
        res = solve_primal(inst, lam)
        if not res.optimal:
            raise SolverError(f"P({lam}) infeasible inside the feasible range [0, {top}]")
        grid.append(res.objective)
    bps, vals = [0], [grid[0]]
    for lam in range(1, top):
        if grid[lam] - grid[lam - 1] != grid[lam + 1] - grid[lam]:
            bps.append(lam)
            vals.append(grid[lam])
    if top > 0:
        bps.append(top)
        vals.append(grid[top])
    return PhiFunction(tuple(bps), tuple(vals))


def feasible_range(f):
    return f.breakpoints[0], f.breakpoints[-1]


def eval_phi(f, lam):
    lam = Fraction(lam)
    lo, hi = feasible_range(f)
    if not lo <= lam <= hi:
        raise ValueError(f"lambda={lam} outside the feasible range [{lo}, {hi}]")
    bp, v = f.breakpoints, f.values
    for i in range(1, len(bp)):
        if lam <= bp[i]:
            g = (v[i] - v[i - 1]) / (bp[i] - bp[i - 1])
            return v[i] + g * (lam - bp[i])
    return v[0]

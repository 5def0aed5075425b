"""Split a binary solution of P(k) into k binary solutions of P(1)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tuauction.errors import SolverError
from tuauction.solver import SolutionVector, solve_box


@dataclass(frozen=True)
class Decomposition:
    pieces: tuple[SolutionVector, ...]
    delta: Fraction  # costliest piece


def decompose(inst, xbar, k):
    """Peel off one unit solution at a time.

    Each piece is a vertex optimum (under c) of P(1) with upper bounds given
    by what is left of ``xbar``; that LP is feasible because remainder/k is,
    and its vertices are binary by total unimodularity.  After k-1 pieces the
    remainder itself is the last one.
    """
    xbar = xbar if isinstance(xbar, SolutionVector) else SolutionVector(tuple(xbar))
    if k < 1:
        raise ValueError("k must be a positive integer")
    if len(xbar) != inst.n or not xbar.binary:
        raise ValueError("xbar must be a binary n-vector")
    if not inst.is_feasible(xbar.x, k):
        raise ValueError(f"xbar does not satisfy A x = {k} b")
    rest = xbar
    pieces = []
    for level in range(k, 1, -1):
        res = solve_box(inst, 1, upper=rest.x)
        if not res.optimal:
            raise SolverError(f"no unit piece inside a level-{level} remainder")
        if not res.x.binary:
            raise SolverError("fractional vertex while decomposing; (A, b) is not TU")
        pieces.append(res.x)
        rest = rest - res.x
    pieces.append(rest)
    return Decomposition(tuple(pieces), max(inst.cost(p) for p in pieces))


def verify_decomposition(inst, xbar, d):
    xbar = tuple(xbar)
    if not d.pieces:
        return False
    for p in d.pieces:
        if len(p) != inst.n or not p.binary or not inst.is_feasible(p.x, 1):
            return False
    total = [sum(col) for col in zip(*(p.x for p in d.pieces))]
    return total == list(xbar)

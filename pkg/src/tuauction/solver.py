"""Exact bounded-variable primal simplex and the P(lam) solver built on it.

All arithmetic uses :class:`fractions.Fraction`.  Pivoting follows Bland's
smallest-index rule for both the entering and the leaving variable, so the
method terminates; an iteration guard turns any breach into SolverError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from tuauction.errors import CapExceeded, Infeasible, SolverError

ZERO = Fraction(0)
ONE = Fraction(1)
MAX_PIVOTS = 100_000


class LPResult(NamedTuple):
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None
    y: tuple[Fraction, ...] | None
    objective: Fraction | None


class _Tableau:
    """Dense tableau B^-1 [A | I] for a row-sign-normalised system.

    The artificial block keeps B^-1 available, which is all that is needed
    to read off duals at the end.
    """

    def __init__(self, A, rhs, lower, upper):
        m, n = len(A), len(lower)
        self.m, self.n = m, n
        self.lower = list(lower) + [ZERO] * m
        self.upper = list(upper) + [None] * m
        self.x = list(lower) + [ZERO] * m
        self.sign = []
        self.rows = []
        for i in range(m):
            resid = rhs[i] - sum((a * v for a, v in zip(A[i], lower) if a and v), ZERO)
            s = 1 if resid >= 0 else -1
            self.sign.append(s)
            row = [Fraction(s * a) for a in A[i]] + [ZERO] * m
            row[n + i] = ONE
            self.rows.append(row)
            self.x[n + i] = s * resid
        self.basis = [n + i for i in range(m)]
        self.is_basic = [False] * n + [True] * m
        self.at_upper = [False] * (n + m)

    def reduced_costs(self, cost):
        d = list(cost)
        for i, var in enumerate(self.basis):
            cb = cost[var]
            if cb:
                row = self.rows[i]
                for j, a in enumerate(row):
                    if a:
                        d[j] -= cb * a
        return d

    def run(self, cost):
        """Minimise ``cost`` from the current basic feasible point."""
        d = self.reduced_costs(cost)
        N = self.n + self.m
        for _ in range(MAX_PIVOTS):
            enter = direction = None
            for j in range(N):
                if self.is_basic[j] or self.upper[j] == self.lower[j]:
                    continue
                if not self.at_upper[j] and d[j] < 0:
                    enter, direction = j, 1
                    break
                if self.at_upper[j] and d[j] > 0:
                    enter, direction = j, -1
                    break
            if enter is None:
                return "optimal"

            # ratio test; ties broken by smallest variable index
            best = None  # (step, var, row or None, hits_upper)
            if self.upper[enter] is not None:
                best = (self.upper[enter] - self.lower[enter], enter, None, None)
            for i, row in enumerate(self.rows):
                a = direction * row[enter]
                if not a:
                    continue
                var = self.basis[i]
                if a > 0:
                    step, hits_upper = (self.x[var] - self.lower[var]) / a, False
                elif self.upper[var] is not None:
                    step, hits_upper = (self.upper[var] - self.x[var]) / -a, True
                else:
                    continue
                if best is None or (step, var) < best[:2]:
                    best = (step, var, i, hits_upper)
            if best is None:
                return "unbounded"

            step, leave, r, hits_upper = best
            if step:
                self.x[enter] += direction * step
                for i, row in enumerate(self.rows):
                    if row[enter]:
                        self.x[self.basis[i]] -= direction * step * row[enter]
            if r is None:
                self.at_upper[enter] = not self.at_upper[enter]
                continue
            self.x[leave] = self.upper[leave] if hits_upper else self.lower[leave]
            self.at_upper[leave] = hits_upper
            self._pivot(r, enter, d)
        raise SolverError(f"simplex exceeded {MAX_PIVOTS} pivots")

    def _pivot(self, r, j, d):
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            prow[:] = [a / piv for a in prow]
        nz = [(q, a) for q, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            f = row[j]
            if i != r and f:
                for q, a in nz:
                    row[q] -= f * a
        f = d[j]
        if f:
            for q, a in nz:
                d[q] -= f * a
        old = self.basis[r]
        self.is_basic[old] = False
        self.is_basic[j] = True
        self.basis[r] = j

    def duals(self, cost):
        m, n = self.m, self.n
        y = []
        for i in range(m):
            yi = sum((cost[var] * self.rows[r][n + i] for r, var in enumerate(self.basis) if cost[var]), ZERO)
            y.append(self.sign[i] * yi)
        return tuple(y)


def simplex(A, rhs, cost, lower=None, upper=None):
    """Minimise ``cost . x`` subject to ``A x = rhs`` and ``lower <= x <= upper``.

    ``upper`` entries may be None (no upper bound); lower bounds must be
    finite.  Returns an LPResult with a basic optimal x and the row duals y
    (reduced costs c - yA are >= 0 at lower, <= 0 at upper, 0 if basic).
    """
    n = len(cost)
    lower = [Fraction(v) for v in (lower if lower is not None else [0] * n)]
    upper = [None if v is None else Fraction(v) for v in (upper if upper is not None else [None] * n)]
    rhs = [Fraction(v) for v in rhs]
    cost = [Fraction(v) for v in cost]
    if any(u is not None and u < lo for lo, u in zip(lower, upper)):
        return LPResult("infeasible", None, None, None)
    m = len(rhs)
    tab = _Tableau(A, rhs, lower, upper)

    phase1 = [ZERO] * n + [ONE] * m
    if tab.run(phase1) != "optimal":
        raise SolverError("phase 1 reported unbounded")
    if any(tab.x[n + i] for i in range(m)):
        return LPResult("infeasible", None, None, None)
    for i in range(m):
        tab.upper[n + i] = ZERO

    full = cost + [ZERO] * m
    if tab.run(full) == "unbounded":
        return LPResult("unbounded", None, None, None)
    x = tuple(tab.x[:n])
    obj = sum((cj * xj for cj, xj in zip(cost, x) if cj and xj), ZERO)
    return LPResult("optimal", x, tab.duals(full), obj)


# -- P(lam) ------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionVector:
    x: tuple[Fraction, ...]

    def __post_init__(self):
        x = tuple(Fraction(v) for v in self.x)
        if any(v < 0 or v > 1 for v in x):
            raise ValueError("solution entries must lie in [0, 1]")
        object.__setattr__(self, "x", x)

    @property
    def binary(self):
        return all(v == 0 or v == 1 for v in self.x)

    @property
    def support(self):
        return tuple(j for j, v in enumerate(self.x) if v)

    def __len__(self):
        return len(self.x)

    def __iter__(self):
        return iter(self.x)

    def __getitem__(self, j):
        return self.x[j]

    def __add__(self, other):
        return SolutionVector(tuple(a + b for a, b in zip(self.x, other.x)))

    def __sub__(self, other):
        return SolutionVector(tuple(a - b for a, b in zip(self.x, other.x)))

    @classmethod
    def from_support(cls, n, support):
        chosen = set(support)
        return cls(tuple(ONE if j in chosen else ZERO for j in range(n)))


@dataclass(frozen=True)
class DualCertificate:
    y: tuple[Fraction, ...]
    J0: tuple[int, ...]
    Jf: tuple[int, ...]
    J1: tuple[int, ...]

    @classmethod
    def for_solution(cls, x, y):
        """Attach multipliers ``y`` to the zero/fractional/one partition of ``x``."""
        J0 = tuple(j for j, v in enumerate(x) if v == 0)
        J1 = tuple(j for j, v in enumerate(x) if v == 1)
        Jf = tuple(j for j, v in enumerate(x) if 0 < v < 1)
        return cls(tuple(Fraction(v) for v in y), J0, Jf, J1)


@dataclass(frozen=True)
class SolveResult:
    status: str
    x: SolutionVector | None = None
    objective: Fraction | None = None
    certificate: DualCertificate | None = None
    duals: tuple[Fraction, ...] | None = None

    @property
    def optimal(self):
        return self.status == "optimal"


def solve_box(inst, lam, lower=None, upper=None, cost=None, extra_rows=()):
    """Solve P(lam) with optional per-column bound overrides.

    ``extra_rows`` are ``(coefficients, rhs)`` equalities appended to
    ``A x = lam b``.  Raw row duals are returned but no certificate is
    attached, since overridden bounds change the sign conditions; see
    :func:`solve_primal`.
    """
    lam = Fraction(lam)
    n = inst.n
    A = [list(row) for row in inst.A] + [list(coef) for coef, _ in extra_rows]
    rhs = [lam * bi for bi in inst.b] + [Fraction(r) for _, r in extra_rows]
    cost = inst.c if cost is None else cost
    res = simplex(A, rhs, cost, lower if lower is not None else [0] * n, upper if upper is not None else [1] * n)
    if res.status == "unbounded":
        raise SolverError("box-constrained program reported unbounded")
    if res.status != "optimal":
        return SolveResult(res.status)
    return SolveResult("optimal", SolutionVector(res.x), inst.cost(res.x), duals=res.y)


def solve_primal(inst, lam):
    """phi(lam) together with a basic optimal x and a verified dual certificate."""
    if Fraction(lam) < 0:
        raise ValueError("lambda must be nonnegative")
    res = solve_box(inst, lam)
    if not res.optimal:
        return res
    cert = DualCertificate.for_solution(res.x, res.duals)
    if not verify_optimality(inst, lam, res.x, cert):
        raise SolverError(f"dual certificate failed at lambda={lam}")
    return SolveResult("optimal", res.x, res.objective, cert, res.duals)


def verify_optimality(inst, lam, x, cert):
    """Check the complementary-slackness sign conditions and the value identity

        c x = lam * (y b) + sum_{j in J1} (c_j - y A_j)

    exactly, using the partition induced by ``x``.
    """
    lam = Fraction(lam)
    x = tuple(x)
    if not inst.is_feasible(x, lam):
        return False
    y = cert.y
    if len(y) != inst.m:
        return False
    part = DualCertificate.for_solution(x, y)
    if (part.J0, part.Jf, part.J1) != (cert.J0, cert.Jf, cert.J1):
        return False

    def yA(j):
        return sum((yi * row[j] for yi, row in zip(y, inst.A) if row[j]), ZERO)

    red = {j: inst.c[j] - yA(j) for j in range(inst.n)}
    if any(red[j] < 0 for j in cert.J0):
        return False
    if any(red[j] != 0 for j in cert.Jf):
        return False
    if any(red[j] > 0 for j in cert.J1):
        return False
    yb = sum((yi * bi for yi, bi in zip(y, inst.b)), ZERO)
    return inst.cost(x) == lam * yb + sum((red[j] for j in cert.J1), ZERO)


def lexmin_optimal(inst, k):
    """The optimal solution of P(k) whose support is lexicographically smallest.

    Earlier columns win ties: coordinates are maximised one at a time in
    column order over the optimal face (c x = phi(k), earlier coordinates
    fixed).  The optimal face of an integral polytope is integral, so each
    maximum is 0 or 1.
    """
    base = solve_primal(inst, k)
    if not base.optimal:
        raise Infeasible(f"P({k}) is infeasible")
    n = inst.n
    face = [(inst.c, base.objective)]
    lower, upper = [0] * n, [1] * n
    current = base.x.x
    for j in range(n):
        if current[j] != 1:
            unit = [0] * n
            unit[j] = -1
            res = solve_box(inst, k, lower=lower, upper=upper, cost=unit, extra_rows=face)
            if not res.optimal:
                raise SolverError("optimal face became empty during lexicographic refinement")
            current = res.x.x
        v = current[j]
        if v not in (0, 1):
            raise SolverError(f"fractional lexicographic optimum {v} in column {j}; (A, b) is not TU")
        lower[j] = upper[j] = int(v)
    return SolutionVector(tuple(lower))


# -- brute force -------------------------------------------------------------

ENUMERATION_CAP = 20


def enumerate_binary_feasible(inst, k, cap=ENUMERATION_CAP):
    """All x in {0,1}^n with A x = k b.

    Depth-first with 1 tried before 0 at each column, so the list runs in
    decreasing lexicographic order of the 0/1 tuples.  Row-wise reachable
    intervals of the remaining columns prune dead branches.
    """
    n, m = inst.n, inst.m
    if n > cap:
        raise CapExceeded(f"{n} columns exceed the enumeration cap of {cap}")
    cols = [inst.column(j) for j in range(n)]
    lo = [[0] * m for _ in range(n + 1)]
    hi = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        for i in range(m):
            a = cols[j][i]
            lo[j][i] = lo[j + 1][i] + min(a, 0)
            hi[j][i] = hi[j + 1][i] + max(a, 0)
    target = [k * bi for bi in inst.b]
    out = []
    chosen = []
    partial = [0] * m

    def rec(j):
        need = [t - p for t, p in zip(target, partial)]
        if any(not (lo[j][i] <= need[i] <= hi[j][i]) for i in range(m)):
            return
        if j == n:
            out.append(SolutionVector.from_support(n, chosen))
            return
        for i in range(m):
            partial[i] += cols[j][i]
        chosen.append(j)
        rec(j + 1)
        chosen.pop()
        for i in range(m):
            partial[i] -= cols[j][i]
        rec(j + 1)

    rec(0)
    return out


def brute_force_phi(inst, k, cap=ENUMERATION_CAP):
    """Minimum of c x over binary feasible x of P(k), or None if there are none."""
    sols = enumerate_binary_feasible(inst, k, cap)
    return min((inst.cost(s) for s in sols), default=None)


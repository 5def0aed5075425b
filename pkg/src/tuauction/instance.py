"""Auction instances: the data (A, b, c) of the box-constrained program

    min c x   s.t.   A x = lam * b,   0 <= x <= 1

plus the k-flow special case, text formats, and two audits (total
unimodularity by brute force and monopoly-freeness by re-solving).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from tuauction.errors import FormatError, Infeasible, ValidationError

_INT = re.compile(r"[+-]?\d+\Z")
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_scalar(token, lineno=None):
    """Parse ``<int>`` or ``<int>/<int>`` into an exact Fraction."""
    if not _RATIONAL.match(token):
        raise FormatError(f"expected <int> or <int>/<int>, got {token!r}", lineno)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {token!r}", lineno) from None


def format_scalar(value):
    return str(Fraction(value))


@dataclass(frozen=True)
class Instance:
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    c: tuple[Fraction, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        A = tuple(tuple(row) for row in self.A)
        b = tuple(self.b)
        c = tuple(Fraction(v) for v in self.c)
        m = len(b)
        if len(A) != m:
            raise ValidationError(f"A has {len(A)} rows but b has {m} entries")
        n = len(c)
        for i, row in enumerate(A):
            if len(row) != n:
                raise ValidationError(f"row {i} of A has {len(row)} entries, expected {n}")
            if not all(isinstance(v, int) for v in row):
                raise ValidationError("entries of A must be integers")
        if not all(isinstance(v, int) for v in b):
            raise ValidationError("entries of b must be integers")
        if not any(b):
            raise ValidationError("b must be nonzero")
        if any(v < 0 for v in c):
            raise ValidationError("c must be nonnegative")
        labels = tuple(self.labels) or tuple(f"x{j + 1}" for j in range(n))
        if len(labels) != n:
            raise ValidationError(f"{len(labels)} labels for {n} columns")
        if len(set(labels)) != n:
            raise ValidationError("column labels must be distinct")
        if any(not lab or any(ch.isspace() for ch in lab) for lab in labels):
            raise ValidationError("column labels must be nonempty and whitespace-free")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "labels", labels)

    @property
    def m(self):
        return len(self.b)

    @property
    def n(self):
        return len(self.c)

    def column(self, j):
        return tuple(row[j] for row in self.A)

    def restrict(self, columns):
        """Sub-instance keeping only ``columns`` (in the given order)."""
        columns = list(columns)
        return Instance(
            A=tuple(tuple(row[j] for j in columns) for row in self.A),
            b=self.b,
            c=tuple(self.c[j] for j in columns),
            labels=tuple(self.labels[j] for j in columns),
        )

    def with_costs(self, costs):
        return Instance(A=self.A, b=self.b, c=tuple(costs), labels=self.labels)

    def cost(self, x):
        return sum((cj * xj for cj, xj in zip(self.c, x)), Fraction(0))

    def is_feasible(self, x, lam):
        """Exact test of A x = lam*b and 0 <= x <= 1."""
        if len(x) != self.n or any(v < 0 or v > 1 for v in x):
            return False
        lam = Fraction(lam)
        return all(
            sum((a * v for a, v in zip(row, x) if a), Fraction(0)) == lam * bi
            for row, bi in zip(self.A, self.b)
        )


# -- TU-AUCTION v1 -----------------------------------------------------------

TU_HEADER = "TU-AUCTION v1"


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens, lineno):
    out = []
    for tok in tokens:
        if not _INT.match(tok):
            raise FormatError(f"expected integer, got {tok!r}", lineno)
        out.append(int(tok))
    return out


def load_instance(text):
    """Parse a TU-AUCTION v1 document into a validated Instance."""
    lines = list(_content_lines(text))
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise FormatError(f"unexpected end of input, expected {what}", last)
        item = lines[pos]
        pos += 1
        return item

    lineno, line = take("header")
    if line != TU_HEADER:
        raise FormatError(f"expected {TU_HEADER!r} header", lineno)
    lineno, line = take("dimensions")
    parts = line.split()
    if len(parts) != 4 or parts[0] != "m" or parts[2] != "n":
        raise FormatError("expected 'm <int> n <int>'", lineno)
    m, n = _ints([parts[1], parts[3]], lineno)
    if m < 1 or n < 1:
        raise FormatError("m and n must be positive", lineno)

    def section(name):
        lineno, line = take(f"section {name!r}")
        if line != name:
            raise FormatError(f"expected section {name!r}, got {line!r}", lineno)

    def row(width, what):
        lineno, line = take(what)
        tokens = line.split()
        if len(tokens) != width:
            raise FormatError(f"{what}: expected {width} entries, got {len(tokens)}", lineno)
        return lineno, tokens

    section("A")
    A = []
    for i in range(m):
        lineno, tokens = row(n, f"row {i + 1} of A")
        A.append(tuple(_ints(tokens, lineno)))
    section("b")
    lineno, tokens = row(m, "b")
    b = tuple(_ints(tokens, lineno))
    section("c")
    lineno, tokens = row(n, "c")
    c = tuple(parse_scalar(tok, lineno) for tok in tokens)
    labels = ()
    if pos < len(lines):
        section("names")
        _, labels = row(n, "names")
    if pos < len(lines):
        raise FormatError("trailing content", lines[pos][0])
    return Instance(A=tuple(A), b=b, c=c, labels=tuple(labels))


def save_instance(inst):
    out = [TU_HEADER, f"m {inst.m} n {inst.n}", "A"]
    out += [" ".join(str(v) for v in row) for row in inst.A]
    out += ["b", " ".join(str(v) for v in inst.b)]
    out += ["c", " ".join(format_scalar(v) for v in inst.c)]
    out += ["names", " ".join(inst.labels)]
    return "\n".join(out) + "\n"


# -- k-flow graphs -----------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    tail: str
    head: str
    cost: Fraction
    name: str


@dataclass(frozen=True)
class KFlowGraph:
    """Unit-capacity digraph with a designated source and sink."""

    nodes: tuple[str, ...]
    source: str
    sink: str
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(nodes)) != len(nodes):
            raise ValidationError("node names must be distinct")
        known = set(nodes)
        if self.source not in known or self.sink not in known:
            raise ValidationError("source and sink must be graph nodes")
        if self.source == self.sink:
            raise ValidationError("source and sink must differ")
        names = set()
        for e in self.edges:
            if e.tail not in known or e.head not in known:
                raise ValidationError(f"edge {e.name} has an unknown endpoint")
            if e.tail == e.head:
                raise ValidationError(f"edge {e.name} is a self-loop")
            if e.cost < 0:
                raise ValidationError(f"edge {e.name} has negative cost")
            if e.name in names:
                raise ValidationError(f"duplicate edge name {e.name}")
            names.add(e.name)

    @classmethod
    def build(cls, nodes, source, sink, arcs):
        """Convenience constructor from ``(tail, head, cost)`` triples; edges are named e1, e2, ..."""
        edges = tuple(
            Edge(str(t), str(h), Fraction(w), f"e{i + 1}") for i, (t, h, w) in enumerate(arcs)
        )
        return cls(tuple(str(v) for v in nodes), str(source), str(sink), edges)


def kflow_instance(g):
    """Node-edge incidence system of ``g``: +1 at the tail, -1 at the head,
    b = e_source - e_sink, costs and labels taken from the edges."""
    if not g.edges:
        raise ValidationError("graph has no edges")
    row_of = {v: i for i, v in enumerate(g.nodes)}
    A = [[0] * len(g.edges) for _ in g.nodes]
    for j, e in enumerate(g.edges):
        A[row_of[e.tail]][j] = 1
        A[row_of[e.head]][j] = -1
    b = [0] * len(g.nodes)
    b[row_of[g.source]] = 1
    b[row_of[g.sink]] = -1
    return Instance(
        A=tuple(map(tuple, A)),
        b=tuple(b),
        c=tuple(e.cost for e in g.edges),
        labels=tuple(e.name for e in g.edges),
    )


KFLOW_HEADER = "KFLOW v1"


def load_kflow(text):
    """Parse a KFLOW v1 document.

    Node tokens that are all integers in ``[0, nodes)`` name rows 0..nodes-1
    in numeric order; otherwise rows follow first appearance (source, sink,
    then edge endpoints) and are padded with isolated ``_i`` nodes.
    """
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != KFLOW_HEADER:
        raise FormatError(f"expected {KFLOW_HEADER!r} header", lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise FormatError("missing 'nodes' line", lines[0][0])
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 6 or parts[0] != "nodes" or parts[2] != "source" or parts[4] != "sink":
        raise FormatError("expected 'nodes <int> source <token> sink <token>'", lineno)
    (count,) = _ints([parts[1]], lineno)
    source, sink = parts[3], parts[5]
    arcs = []
    for lineno, line in lines[2:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "edge":
            raise FormatError("expected 'edge <tail> <head> <cost>'", lineno)
        arcs.append((parts[1], parts[2], parse_scalar(parts[3], lineno)))

    tokens = [source, sink] + [v for t, h, _ in arcs for v in (t, h)]
    if all(_INT.match(t) and 0 <= int(t) < count for t in tokens):
        nodes = [str(i) for i in range(count)]
        arcs = [(str(int(t)), str(int(h)), w) for t, h, w in arcs]
        source, sink = str(int(source)), str(int(sink))
    else:
        nodes = list(dict.fromkeys(tokens))
        if len(nodes) > count:
            raise FormatError(f"{len(nodes)} distinct nodes but header declares {count}", 2)
        nodes += [f"_{i}" for i in range(len(nodes), count)]
    return KFlowGraph.build(nodes, source, sink, arcs)


def save_kflow(g):
    numeric = list(g.nodes) == [str(i) for i in range(len(g.nodes))]
    if not numeric:
        order = list(dict.fromkeys([g.source, g.sink] + [v for e in g.edges for v in (e.tail, e.head)]))
        if order != list(g.nodes)[: len(order)]:
            raise ValidationError("node order is not reproducible by KFLOW v1; relabel nodes")
    out = [KFLOW_HEADER, f"nodes {len(g.nodes)} source {g.source} sink {g.sink}"]
    out += [f"edge {e.tail} {e.head} {format_scalar(e.cost)}" for e in g.edges]
    return "\n".join(out) + "\n"


def load_any(text):
    """Dispatch on the header line: TU-AUCTION v1 or KFLOW v1."""
    for _, line in _content_lines(text):
        if line == KFLOW_HEADER:
            return kflow_instance(load_kflow(text))
        return load_instance(text)
    raise FormatError("empty input", 1)


# -- audits ------------------------------------------------------------------


def determinant(M):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


@dataclass(frozen=True)
class TUVerdict:
    status: str  # "confirmed" | "refuted" | "skipped"
    witness: tuple[tuple[int, ...], ...] | None = None
    note: str = ""

    def __bool__(self):
        return self.status == "confirmed"


def check_totally_unimodular(inst, size_limit=6, max_submatrices=2_000_000):
    """Brute-force audit of the augmented matrix (A, b).

    Every square submatrix of order <= ``size_limit`` must have determinant
    in {-1, 0, 1}.  When the number of submatrices exceeds
    ``max_submatrices`` nothing is enumerated and the verdict is "skipped".
    """
    M = [list(row) + [bi] for row, bi in zip(inst.A, inst.b)]
    m, w = len(M), len(M[0])
    top = min(size_limit, m, w)
    total = sum(comb(m, r) * comb(w, r) for r in range(1, top + 1))
    if total > max_submatrices:
        return TUVerdict(
            "skipped",
            note=(
                f"{total} submatrices up to order {top} exceed the budget of {max_submatrices}; "
                "incidence-constructed instances are TU by construction"
            ),
        )
    for r in range(1, top + 1):
        for rows in combinations(range(m), r):
            for cols in combinations(range(w), r):
                sub = [[M[i][j] for j in cols] for i in rows]
                if determinant(sub) not in (-1, 0, 1):
                    return TUVerdict("refuted", witness=tuple(map(tuple, sub)))
    note = "" if top == min(m, w) else f"checked orders up to {top}"
    return TUVerdict("confirmed", note=note)


@dataclass(frozen=True)
class MonopolyVerdict:
    free: bool
    witnesses: dict | None = None  # column -> SolutionVector avoiding it
    failing: int | None = None

    def __bool__(self):
        return self.free


def check_monopoly_free(inst, k):
    """Whether every column can be avoided by a feasible solution of P(k).

    Raises Infeasible when P(k) itself has no feasible point.
    """
    from tuauction.solver import solve_box

    if solve_box(inst, k).status != "optimal":
        raise Infeasible(f"P({k}) is infeasible")
    witnesses = {}
    for j in range(inst.n):
        upper = [1] * inst.n
        upper[j] = 0
        res = solve_box(inst, k, upper=upper)
        if res.status != "optimal":
            return MonopolyVerdict(False, failing=j)
        witnesses[j] = res.x
    return MonopolyVerdict(True, witnesses=witnesses)

from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA, kflow_graphs, kflow_instances, vec
from tuauction.errors import FormatError, Infeasible, ValidationError
from tuauction.instance import (
    Instance,
    KFlowGraph,
    check_monopoly_free,
    check_totally_unimodular,
    determinant,
    kflow_instance,
    load_any,
    load_instance,
    load_kflow,
    save_instance,
    save_kflow,
)
from tuauction.solver import enumerate_binary_feasible, solve_primal


def laplace_det(M):
    """Cofactor-expansion oracle, independent of the Bareiss routine."""
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * laplace_det([row[:j] + row[j + 1:] for row in M[1:]])
        for j in range(n)
        if M[0][j]
    )


def test_load_d1_fixture(d1):
    inst = load_instance((DATA / "d1.tua").read_text())
    assert (inst.m, inst.n) == (2, 2)
    assert inst == d1
    assert load_instance(save_instance(inst)) == inst


@pytest.mark.parametrize("name", ["d1", "d2", "d3", "d4"])
def test_round_trip_fixture_files(name):
    inst = load_any((DATA / f"{name}.tua").read_text())
    assert load_instance(save_instance(inst)) == inst


def test_kflow_file_matches_tua_file():
    assert load_any((DATA / "d2.kflow").read_text()) == load_any((DATA / "d2.tua").read_text())


def test_zero_b_rejected():
    text = "TU-AUCTION v1\nm 1 n 1\nA\n1\nb\n0\nc\n1\n"
    with pytest.raises(ValidationError, match="b must be nonzero"):
        load_instance(text)


def test_negative_cost_rejected():
    text = "TU-AUCTION v1\nm 2 n 2\nA\n1 1\n-1 -1\nb\n1 -1\nc\n-1 2\n"
    with pytest.raises(ValidationError, match="c must be nonnegative"):
        load_instance(text)


def test_rational_cost_token():
    inst = Instance(A=((1,),), b=(1,), c=(Fraction(7, 3),), labels=("a",))
    text = save_instance(inst)
    assert "7/3" in text.split()
    assert load_instance(text).c == (Fraction(7, 3),)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("TU-AUCTION v2\n", 1),
        ("TU-AUCTION v1\nm 1 n x\n", 2),
        ("TU-AUCTION v1\nm 1 n 2\nA\n1\n", 4),
        ("TU-AUCTION v1\nm 1 n 1\nA\n1\nb\n1\nc\n1.5\n", 8),
        ("# header comment\n\nTU-AUCTION v1\nm 1 n 1\nA\n1\nb\n1\nc\n1\nnames\na\nextra\n", 13),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(FormatError) as exc:
        load_instance(text)
    assert exc.value.lineno == lineno


def test_kflow_d1_incidence(d1):
    assert d1.A == ((1, 1), (-1, -1))
    assert d1.b == (1, -1)
    assert d1.c == vec(1, 2)
    assert d1.labels == ("e1", "e2")


def test_kflow_d4_incidence(d4):
    assert (d4.m, d4.n) == (2, 3)
    assert d4.b == (1, -1)


def test_kflow_rejects_source_equal_sink():
    with pytest.raises(ValidationError):
        KFlowGraph.build(["s", "t"], "s", "s", [("s", "t", 1)])


def test_kflow_rejects_self_loop():
    with pytest.raises(ValidationError):
        KFlowGraph.build(["s", "t"], "s", "t", [("s", "s", 1)])


def test_kflow_text_round_trip():
    g = load_kflow((DATA / "d2.kflow").read_text())
    assert load_kflow(save_kflow(g)) == g


def test_kflow_numeric_nodes_keep_isolated_rows():
    g = load_kflow("KFLOW v1\nnodes 4 source 0 sink 3\nedge 0 3 5\n")
    assert g.nodes == ("0", "1", "2", "3")
    inst = kflow_instance(g)
    assert inst.A == ((1,), (0,), (0,), (-1,))


@given(kflow_graphs())
def test_kflow_columns_are_incidence(g):
    inst = kflow_instance(g)
    for j in range(inst.n):
        col = inst.column(j)
        assert sorted(v for v in col if v) == [-1, 1]
        assert sum(col) == 0
    assert sum(inst.b) == 0


@given(kflow_instances())
def test_save_load_round_trip(inst):
    assert load_instance(save_instance(inst)) == inst


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_cofactor_oracle(M):
    for r in range(1, 5):
        sub = [row[:r] for row in M[:r]]
        assert determinant(sub) == laplace_det(sub)


def test_tu_confirmed_on_d1(d1):
    assert check_totally_unimodular(d1, 2).status == "confirmed"


def test_tu_refuted_with_witness():
    inst = Instance(A=((2,),), b=(1,), c=(1,))
    verdict = check_totally_unimodular(inst, 2)
    assert verdict.status == "refuted"
    assert verdict.witness == ((2,),)


def test_tu_refuted_odd_cycle():
    # rows of an odd-cycle edge-vertex matrix: det of the 3x3 block is 2
    inst = Instance(A=((1, 1, 0), (0, 1, 1), (1, 0, 1)), b=(1, 0, 0), c=(0, 0, 0))
    verdict = check_totally_unimodular(inst, 3)
    assert verdict.status == "refuted"
    assert abs(laplace_det([list(r) for r in verdict.witness])) > 1


def test_tu_skipped_when_too_large():
    A = tuple(tuple((i + j) % 3 - 1 for j in range(60)) for i in range(30))
    inst = Instance(A=A, b=(1,) + (0,) * 29, c=(0,) * 60)
    verdict = check_totally_unimodular(inst, 4)
    assert verdict.status == "skipped"
    assert "by construction" in verdict.note


def _tu_oracle(inst, limit):
    M = [list(row) + [bi] for row, bi in zip(inst.A, inst.b)]
    for r in range(1, min(limit, len(M), len(M[0])) + 1):
        for rows in combinations(range(len(M)), r):
            for cols in combinations(range(len(M[0])), r):
                if laplace_det([[M[i][j] for j in cols] for i in rows]) not in (-1, 0, 1):
                    return False
    return True


@settings(max_examples=40)
@given(kflow_instances(max_nodes=4, max_edges=5), st.integers(1, 4))
def test_incidence_systems_are_tu(inst, limit):
    assert check_totally_unimodular(inst, limit).status == "confirmed"
    assert _tu_oracle(inst, limit)


def _avoidable(inst, k):
    sols = enumerate_binary_feasible(inst, k)
    return [any(x[j] == 0 for x in sols) for j in range(inst.n)]


def test_monopoly_free_d1(d1):
    verdict = check_monopoly_free(d1, 1)
    assert verdict.free
    assert verdict.witnesses[0].x == vec(0, 1)
    assert verdict.witnesses[1].x == vec(1, 0)
    assert all(_avoidable(d1, 1))


def test_monopoly_d3(d3):
    verdict = check_monopoly_free(d3, 1)
    assert not verdict.free
    assert verdict.failing == 0


def test_monopoly_free_d2(d2):
    assert check_monopoly_free(d2, 1).free
    assert all(_avoidable(d2, 1))


def test_monopoly_infeasible_level_is_distinct_error(d1):
    with pytest.raises(Infeasible):
        check_monopoly_free(d1, 3)


@settings(max_examples=60, deadline=None)
@given(kflow_instances(), st.integers(1, 3))
def test_monopoly_free_implies_next_level_feasible(inst, k):
    try:
        verdict = check_monopoly_free(inst, k)
    except Infeasible:
        return
    assert verdict.free == all(_avoidable(inst, k))
    if verdict.free:
        assert solve_primal(inst, k + 1).optimal


def test_permuted_labels_are_distinct():
    with pytest.raises(ValidationError):
        Instance(A=((1, 1),), b=(1,), c=(1, 1), labels=("a", "a"))
    for labels in permutations(("a", "b")):
        assert Instance(A=((1, 1),), b=(1,), c=(1, 1), labels=labels).labels == labels

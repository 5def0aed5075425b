"""Fixture graphs D1-D4 and a seeded generator of layered s-t DAGs."""

from __future__ import annotations

import random

from tuauction.errors import ValidationError
from tuauction.instance import KFlowGraph, kflow_instance

PRESETS = {
    # two parallel s->t edges, costs 1 and 2
    "d1": (["s", "t"], [("s", "t", 1), ("s", "t", 2)]),
    # s-a-t (1+1), s-b-t (3+3), direct s-t (10)
    "d2": (
        ["s", "t", "a", "b"],
        [("s", "a", 1), ("a", "t", 1), ("s", "b", 3), ("b", "t", 3), ("s", "t", 10)],
    ),
    # a single edge: a monopoly
    "d3": (["s", "t"], [("s", "t", 1)]),
    # three parallel unit-cost edges
    "d4": (["s", "t"], [("s", "t", 1), ("s", "t", 1), ("s", "t", 1)]),
}


def preset_graph(name):
    try:
        nodes, arcs = PRESETS[name.lower()]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return KFlowGraph.build(nodes, "s", "t", arcs)


def preset(name):
    return kflow_instance(preset_graph(name))


def random_layered_graph(nodes, edges, cost_bound=10, seed=0, paths=2):
    """Random layered DAG from node 0 (source) to node ``nodes - 1`` (sink).

    Intermediate nodes get random layers; arcs only go from a lower layer to
    a strictly higher one, so the graph is acyclic.  Up to ``paths`` s-t
    paths are laid down first (budget permitting) so the sink is reachable
    and several disjoint routes are likely; the remaining arcs are uniform
    over layer-increasing pairs, parallel arcs allowed.  Costs are integers
    in ``[0, cost_bound]``.
    """
    if nodes < 2:
        raise ValidationError("need at least two nodes")
    if edges < 1:
        raise ValidationError("need at least one edge")
    if cost_bound < 0:
        raise ValidationError("cost bound must be nonnegative")
    if paths < 1:
        raise ValidationError("need at least one backbone path")
    rng = random.Random(seed)
    s, t = 0, nodes - 1
    inner = list(range(1, t))
    depth = rng.randint(1, max(1, len(inner)))
    layer = {s: 0, t: depth + 1}
    for v in inner:
        layer[v] = rng.randint(1, depth)
    by_layer = {}
    for v in inner:
        by_layer.setdefault(layer[v], []).append(v)

    arcs = []
    for _ in range(paths):
        budget = edges - len(arcs)
        if budget <= 0:
            break
        hops = [rng.choice(by_layer[d]) for d in sorted(by_layer) if rng.random() < 0.6]
        hops = hops[: budget - 1]
        route = [s] + hops + [t]
        arcs += list(zip(route, route[1:]))

    pairs = [(u, v) for u in range(nodes) for v in range(nodes) if layer[u] < layer[v]]
    while len(arcs) < edges:
        arcs.append(rng.choice(pairs))
    weighted = [(u, v, rng.randint(0, cost_bound)) for u, v in arcs]
    return KFlowGraph.build([str(i) for i in range(nodes)], str(s), str(t), weighted)


def random_corpus(count, seed=0, max_nodes=8, max_edges=14, cost_bound=10):
    """``count`` seeded random k-flow instances within the given size limits."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n_nodes = rng.randint(2, max_nodes)
        n_edges = rng.randint(2, max_edges)
        g = random_layered_graph(
            n_nodes, n_edges, cost_bound=cost_bound, seed=rng.randrange(2**32), paths=rng.randint(1, 4)
        )
        out.append(kflow_instance(g))
    return out

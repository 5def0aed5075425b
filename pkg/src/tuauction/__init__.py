"""First-price set-system auctions over totally unimodular systems, with
exact computation of the max and min frugality benchmarks."""

from tuauction.instance import Instance, KFlowGraph, kflow_instance, load_any, load_instance, save_instance
from tuauction.parametric import PhiFunction, compute_phi, eval_phi
from tuauction.solver import SolutionVector, lexmin_optimal, solve_primal

__version__ = "0.1.0"

"""Synthesis of NOT/CNOT/C2NOT circuits for Boolean transformations.

Two constructions are provided: a gate-count oriented one (``a1``) and a
depth oriented one with two ancilla modes (``a2-3n`` and ``a2-2n``), together
with a bit-sliced simulator, exact resource accounting, garbage cleanup,
bound calculators and text formats.
"""
from .bounds import bound_report, lower_bounds, predicted_resources, tower_toffolis, upper_bounds_no_mem
from .cleanup import CleanupCost, bennett_cleanup, bijective_cleanup
from .core import Circuit, Gate, Metrics, WeightConfig, compose, inverse, make_gate, metrics, schedule_asap
from .estimator import ReversibleSynthesizer
from .io import export_real, parse_circuit, parse_truth_table, serialize_circuit, serialize_truth_table
from .sim import Permutation, SynthesisResult, TruthTable, evaluate, permutation_of, run, verify
from .synth import InfeasibleParams, Params, choose_params, synthesize

__version__ = "0.1.0"

__all__ = [
    "Circuit", "Gate", "Metrics", "WeightConfig", "compose", "inverse", "make_gate", "metrics",
    "schedule_asap", "TruthTable", "SynthesisResult", "Permutation", "run", "evaluate", "verify",
    "permutation_of", "Params", "InfeasibleParams", "choose_params", "synthesize",
    "bennett_cleanup", "bijective_cleanup", "CleanupCost", "lower_bounds", "upper_bounds_no_mem",
    "bound_report", "predicted_resources", "tower_toffolis", "parse_truth_table",
    "serialize_truth_table", "parse_circuit", "serialize_circuit", "export_real",
    "ReversibleSynthesizer",
]

"""Garbage removal by compute / copy / uncompute.

``bennett_cleanup`` leaves the inputs in place, the outputs on fresh lines
and zero everywhere else.  ``bijective_cleanup`` goes further for
permutations: it also clears the input lines by running a circuit for the
inverse permutation, so only the outputs remain.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Circuit, Gate, inverse
from .sim import PhaseCount, SynthesisResult, TruthTable
from .synth import synthesize

__all__ = ["bennett_cleanup", "bijective_cleanup", "CleanupCost"]


def _copies(srcs, dsts) -> list[Gate]:
    return [Gate((s,), d) for s, d in zip(srcs, dsts)]


def bennett_cleanup(r: SynthesisResult) -> SynthesisResult:
    """``r``, then copy its outputs to fresh lines, then ``r`` undone.

    Gate count is exactly ``2 L(r) + m``.
    """
    w = r.circuit.width
    m = r.m
    width = w + m
    fresh = list(range(w, width))
    base = r.circuit.widen(width)
    gates = base.gates + tuple(_copies(r.output_lines, fresh)) + inverse(base).gates
    size = len(r.circuit)
    phases = {
        "compute": PhaseCount(size - r.metrics.lt, r.metrics.lt, r.q),
        "copy": PhaseCount(m, 0, m),
        "uncompute": PhaseCount(size - r.metrics.lt, r.metrics.lt, 0),
    }
    return SynthesisResult(
        Circuit(width, gates), r.input_lines, tuple(fresh), f"bennett({r.mode})", r.params, phases
    )


@dataclass(frozen=True)
class CleanupCost:
    """Gate counts of the two syntheses and of the cleaned circuit."""

    forward: int
    backward: int
    total: int
    n: int

    @property
    def raw_ratio(self) -> float:
        """``total / (4 max(forward, backward))``; may exceed 1 by the copy stages."""
        return self.total / (4 * max(self.forward, self.backward, 1))

    @property
    def slack_ratio(self) -> float:
        return self.total / (4 * max(self.forward, self.backward) + 2 * self.n)


def bijective_cleanup(t: TruthTable, algo: str = "a1", **synth_kwargs) -> SynthesisResult:
    """Circuit leaving ``f(x)`` on its output lines and zero on every other line.

    Layout: ``x`` lines, the forward circuit's ancillas, the output lines
    ``Y``, then the inverse circuit's ancillas.  Stages: forward, copy to
    ``Y``, forward undone, inverse run on ``Y`` with its result XORed into the
    ``x`` lines (clearing them), inverse undone.
    """
    if not t.is_bijective:
        raise ValueError("bijective_cleanup needs a permutation table")
    n = t.n
    fwd = synthesize(t, algo, **synth_kwargs)
    bwd = synthesize(t.inverse(), algo, **synth_kwargs)
    wf = fwd.circuit.width
    ys = list(range(wf, wf + n))
    width = wf + n + bwd.q

    f_circ = fwd.circuit.widen(width)
    # inverse circuit: its inputs read Y, its ancillas follow Y
    bwd_map = [0] * bwd.circuit.width
    for pos, line in enumerate(bwd.input_lines):
        bwd_map[line] = ys[pos]
    extra = iter(range(wf + n, width))
    for line in range(bwd.circuit.width):
        if line not in bwd.input_lines:
            bwd_map[line] = next(extra)
    b_circ = bwd.circuit.relabel(bwd_map, width)
    b_out = [bwd_map[o] for o in bwd.output_lines]

    gates = (
        f_circ.gates
        + tuple(_copies(fwd.output_lines, ys))
        + inverse(f_circ).gates
        + b_circ.gates
        + tuple(_copies(b_out, fwd.input_lines))
        + inverse(b_circ).gates
    )
    cost = CleanupCost(len(fwd.circuit), len(bwd.circuit), len(gates), n)
    phases = {
        "forward": PhaseCount(len(fwd.circuit) - fwd.metrics.lt, fwd.metrics.lt, fwd.q),
        "copy_out": PhaseCount(n, 0, n),
        "forward_undo": PhaseCount(len(fwd.circuit) - fwd.metrics.lt, fwd.metrics.lt, 0),
        "inverse": PhaseCount(len(bwd.circuit) - bwd.metrics.lt, bwd.metrics.lt, bwd.q),
        "clear_inputs": PhaseCount(n, 0, 0),
        "inverse_undo": PhaseCount(len(bwd.circuit) - bwd.metrics.lt, bwd.metrics.lt, 0),
    }
    return SynthesisResult(
        Circuit(width, gates),
        fwd.input_lines,
        tuple(ys),
        f"bijective({fwd.mode})",
        fwd.params,
        phases,
        {"cost": cost, "inverse_params": bwd.params},
    )

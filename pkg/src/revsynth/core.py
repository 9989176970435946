"""Gates, circuits and the three cost measures (gate count, weight, depth).

Gates are NOT / CNOT / C2NOT (Toffoli) gates over numbered lines.  A gate's
kind is implied by how many controls it has.  Lines are 0-based everywhere.

    >>> g = make_gate({0, 3}, 1)
    >>> g.kind
    'T'
    >>> c = Circuit(4, [make_gate({0}, 1), g])
    >>> metrics(c).l
    2
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Optional, Sequence

__all__ = [
    "Gate",
    "Circuit",
    "WeightConfig",
    "Metrics",
    "make_gate",
    "compose",
    "inverse",
    "metrics",
    "depth_blocks",
    "depth_dag",
    "asap_layers",
    "schedule_asap",
    "fig1_circuit",
]

_KINDS = {0: "N", 1: "C", 2: "T"}


@dataclass(frozen=True)
class Gate:
    """A single Toffoli-family gate: ``target ^= AND(controls)``.

    ``controls`` is kept as a sorted tuple so that equal gates compare equal.
    """

    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(self.controls) > 2:
            raise ValueError(
                f"gate has {len(self.controls)} controls; only NOT, CNOT and C2NOT are supported"
            )
        if len(set(self.controls)) != len(self.controls):
            raise ValueError(f"duplicate control in {self.controls}")
        if self.target in self.controls:
            raise ValueError(f"target {self.target} is also a control")
        if self.target < 0 or any(c < 0 for c in self.controls):
            raise ValueError("line indices must be non-negative")

    @property
    def kind(self) -> str:
        """``'N'``, ``'C'`` or ``'T'`` for NOT, CNOT, C2NOT."""
        return _KINDS[len(self.controls)]

    @property
    def support(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def __repr__(self):
        if not self.controls:
            return f"NOT({self.target})"
        name = "CNOT" if len(self.controls) == 1 else "CCNOT"
        return f"{name}({', '.join(map(str, self.controls))} -> {self.target})"


def make_gate(controls: Iterable[int], target: int) -> Gate:
    """Build a validated gate from any iterable of control lines."""
    ctrl = list(controls)
    if len(ctrl) != len(set(ctrl)):
        raise ValueError(f"duplicate control in {ctrl}")
    return Gate(tuple(sorted(int(c) for c in ctrl)), int(target))


@dataclass(frozen=True)
class Circuit:
    """Fixed number of lines plus an ordered gate sequence."""

    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("circuit width must be at least 1")
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for pos, g in enumerate(gates):
            if not isinstance(g, Gate):
                raise TypeError(f"gate {pos} is not a Gate: {g!r}")
            if max(g.support) >= self.width:
                raise ValueError(
                    f"gate {pos} ({g!r}) references a line outside width {self.width}"
                )

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        return compose(self, other)

    def widen(self, width: int) -> "Circuit":
        """Same gates on a circuit with more lines."""
        if width < self.width:
            raise ValueError("cannot shrink a circuit")
        return Circuit(width, self.gates)

    def relabel(self, mapping: Sequence[int], width: int) -> "Circuit":
        """Move line ``i`` to ``mapping[i]`` inside a circuit of ``width`` lines."""
        if len(mapping) != self.width:
            raise ValueError("mapping must cover every line")
        if len(set(mapping)) != len(mapping):
            raise ValueError("mapping must be injective")
        gates = [
            Gate(tuple(sorted(mapping[c] for c in g.controls)), mapping[g.target])
            for g in self.gates
        ]
        return Circuit(width, gates)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Gates of ``a`` followed by gates of ``b``."""
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} != {b.width}")
    return Circuit(a.width, a.gates + b.gates)


def inverse(c: Circuit) -> Circuit:
    # every gate in the set is an involution
    return Circuit(c.width, c.gates[::-1])


@dataclass(frozen=True)
class WeightConfig:
    """Per-gate weights: ``wc`` for NOT/CNOT, ``wt`` for C2NOT."""

    wc: Real = 1
    wt: Real = 1

    def __post_init__(self):
        if not self.wc > 0 or not self.wt > 0:
            raise ValueError("gate weights must be positive")

    @classmethod
    def parse(cls, wc, wt) -> "WeightConfig":
        """Accept strings like ``"5"`` or ``"3/2"`` and keep them exact."""
        return cls(Fraction(str(wc)), Fraction(str(wt)))


@dataclass(frozen=True)
class Metrics:
    l: int
    lc: int
    lt: int
    w: Real
    d_blocks: int
    d_dag: int
    width: int
    q: Optional[int] = None

    def as_dict(self) -> dict:
        w = self.w
        if isinstance(w, Fraction):
            w = int(w) if w.denominator == 1 else float(w)
        return {
            "L": self.l,
            "L_C": self.lc,
            "L_T": self.lt,
            "W": w,
            "D_dag": self.d_dag,
            "D_blocks": self.d_blocks,
            "width": self.width,
            "q": self.q,
        }


def depth_blocks(c: Circuit) -> int:
    """Fewest contiguous runs of the gate list with pairwise disjoint supports.

    Greedy closing of a run on the first clash is optimal for contiguous
    partitions.
    """
    blocks = 0
    used: set[int] = set()
    for g in c.gates:
        sup = g.support
        if blocks == 0 or used.intersection(sup):
            blocks += 1
            used = set(sup)
        else:
            used.update(sup)
    return blocks


def asap_layers(c: Circuit) -> list[int]:
    """1-based as-soon-as-possible layer of every gate.

    Two gates conflict when their supports intersect; a gate lands one layer
    after the latest earlier gate it conflicts with.
    """
    ready = [0] * c.width
    layers = []
    for g in c.gates:
        sup = g.support
        layer = 1 + max(ready[x] for x in sup)
        for x in sup:
            ready[x] = layer
        layers.append(layer)
    return layers


def depth_dag(c: Circuit) -> int:
    layers = asap_layers(c)
    return max(layers) if layers else 0


def schedule_asap(c: Circuit) -> Circuit:
    """Reorder gates by ASAP layer (stable); the permutation is unchanged.

    Gates sharing a layer have disjoint supports and therefore commute, so
    afterwards ``depth_blocks == depth_dag``.
    """
    layers = asap_layers(c)
    order = sorted(range(len(layers)), key=layers.__getitem__)
    return Circuit(c.width, [c.gates[i] for i in order])


def metrics(
    c: Circuit,
    weights: Optional[WeightConfig] = None,
    declared_inputs: Optional[int] = None,
) -> Metrics:
    weights = weights or WeightConfig()
    lt = sum(1 for g in c.gates if len(g.controls) == 2)
    lc = len(c.gates) - lt
    q = None if declared_inputs is None else c.width - declared_inputs
    return Metrics(
        l=len(c.gates),
        lc=lc,
        lt=lt,
        w=weights.wc * lc + weights.wt * lt,
        d_blocks=depth_blocks(c),
        d_dag=depth_dag(c),
        width=c.width,
        q=q,
    )


def fig1_circuit() -> Circuit:
    """The six-gate, four-line worked example circuit.

    In 1-based Toffoli notation it reads
    TOF(1;2) * TOF(3,1) * TOF(2) * TOF(4) * TOF(1,4,2) * TOF(3).
    """
    return Circuit(
        4,
        [
            make_gate({0}, 1),
            make_gate({2}, 0),
            make_gate((), 1),
            make_gate((), 3),
            make_gate({0, 3}, 1),
            make_gate((), 2),
        ],
    )

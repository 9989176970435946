"""Bit-exact circuit execution and functional verification.

Conventions: a *state* is one bit per line, indexed by line.  When a state or
a truth-table row is packed into an integer word, the first line / first
variable is the most significant bit.

Whole batches of inputs are simulated at once by bit-slicing: every line holds
a Python int whose bit ``r`` is that line's value in lane ``r``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional, Sequence

import numpy as np

from .core import Circuit, Metrics, WeightConfig, metrics

__all__ = [
    "TruthTable",
    "SynthesisResult",
    "PhaseCount",
    "VerifyReport",
    "Permutation",
    "run",
    "run_lanes",
    "evaluate",
    "evaluate_many",
    "verify",
    "permutation_of",
    "PERMUTATION_WIDTH_LIMIT",
]

PERMUTATION_WIDTH_LIMIT = 20


@dataclass(frozen=True)
class TruthTable:
    """Explicit map from n-bit inputs to m-bit outputs.

    ``rows[r]`` is the output word for input word ``r``; x1 and y1 are the
    most significant bits.
    """

    n: int
    m: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 inputs and m >= 1 outputs")
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} rows, got {len(rows)}")
        top = 1 << self.m
        for r, y in enumerate(rows):
            if not 0 <= y < top:
                raise ValueError(f"row {r} value {y} does not fit in {self.m} bits")

    def __call__(self, x: int) -> int:
        return self.rows[x]

    def bit(self, x: int, j: int) -> int:
        """Output bit ``j`` (0-based, 0 = y1) for input word ``x``."""
        return (self.rows[x] >> (self.m - 1 - j)) & 1

    @classmethod
    def identity(cls, n: int) -> "TruthTable":
        return cls(n, n, tuple(range(1 << n)))

    @classmethod
    def random(cls, n: int, m: Optional[int] = None, seed=None) -> "TruthTable":
        m = n if m is None else m
        rng = np.random.default_rng(seed)
        return cls(n, m, tuple(int(v) for v in rng.integers(0, 1 << m, size=1 << n)))

    @classmethod
    def random_permutation(cls, n: int, seed=None) -> "TruthTable":
        rng = np.random.default_rng(seed)
        return cls(n, n, tuple(int(v) for v in rng.permutation(1 << n)))

    @property
    def is_bijective(self) -> bool:
        return self.n == self.m and len(set(self.rows)) == len(self.rows)

    def inverse(self) -> "TruthTable":
        if not self.is_bijective:
            raise ValueError("only a bijective table has an inverse")
        inv = [0] * len(self.rows)
        for x, y in enumerate(self.rows):
            inv[y] = x
        return TruthTable(self.n, self.n, tuple(inv))


@dataclass(frozen=True)
class PhaseCount:
    lc: int = 0
    lt: int = 0
    q: int = 0

    def __add__(self, other: "PhaseCount") -> "PhaseCount":
        return PhaseCount(self.lc + other.lc, self.lt + other.lt, self.q + other.q)


@dataclass(frozen=True)
class SynthesisResult:
    """A circuit together with where its inputs go in and its outputs come out.

    Only ``circuit``, ``input_lines`` and ``output_lines`` take part in
    equality; the rest is provenance.
    """

    circuit: Circuit
    input_lines: tuple[int, ...]
    output_lines: tuple[int, ...]
    mode: str = field(default="", compare=False)
    params: Any = field(default=None, compare=False)
    phases: dict = field(default_factory=dict, compare=False, repr=False)
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "input_lines", tuple(self.input_lines))
        object.__setattr__(self, "output_lines", tuple(self.output_lines))
        w = self.circuit.width
        for name, lines in (("input", self.input_lines), ("output", self.output_lines)):
            if len(set(lines)) != len(lines):
                raise ValueError(f"duplicate {name} line")
            if any(not 0 <= x < w for x in lines):
                raise ValueError(f"{name} line out of range for width {w}")
        if len(self.input_lines) > w:
            raise ValueError("more inputs than lines")

    @property
    def n(self) -> int:
        return len(self.input_lines)

    @property
    def m(self) -> int:
        return len(self.output_lines)

    @property
    def q(self) -> int:
        return self.circuit.width - self.n

    @cached_property
    def metrics(self) -> Metrics:
        return metrics(self.circuit, declared_inputs=self.n)

    def measure(self, weights: WeightConfig) -> Metrics:
        return metrics(self.circuit, weights, declared_inputs=self.n)


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    inputs_tested: int
    first_failure: Optional[tuple[tuple[int, ...], int, int]] = None

    def as_dict(self) -> dict:
        d = {"passed": self.passed, "inputs_tested": self.inputs_tested, "first_failure": None}
        if self.first_failure is not None:
            x, want, got = self.first_failure
            d["first_failure"] = {"input": list(x), "expected": want, "actual": got}
        return d


@dataclass(frozen=True)
class Permutation:
    images: np.ndarray

    def __post_init__(self):
        imgs = np.asarray(self.images, dtype=np.int64)
        object.__setattr__(self, "images", imgs)
        seen = np.zeros(len(imgs), dtype=bool)
        if len(imgs) and (imgs.min() < 0 or imgs.max() >= len(imgs)):
            raise ValueError("images out of range")
        seen[imgs] = True
        if not seen.all():
            raise ValueError("images do not form a bijection")

    def __len__(self):
        return len(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash(self.images.tobytes())

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(other.images[self.images])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(len(self.images))))

    def parity(self) -> int:
        """0 for even, 1 for odd (``size - cycles`` mod 2)."""
        imgs = self.images
        seen = np.zeros(len(imgs), dtype=bool)
        cycles = 0
        for start in range(len(imgs)):
            if seen[start]:
                continue
            cycles += 1
            v = start
            while not seen[v]:
                seen[v] = True
                v = imgs[v]
        return (len(imgs) - cycles) % 2


def run_lanes(c: Circuit, lanes: list[int], all_ones: int) -> list[int]:
    """Bit-sliced execution; ``lanes[line]`` packs that line over every lane."""
    v = list(lanes)
    for g in c.gates:
        ctl = g.controls
        if not ctl:
            v[g.target] ^= all_ones
        elif len(ctl) == 1:
            v[g.target] ^= v[ctl[0]]
        else:
            v[g.target] ^= v[ctl[0]] & v[ctl[1]]
    return v


def run(c: Circuit, state: Sequence[int]) -> list[int]:
    """Apply every gate in order to one state (a sequence of 0/1 per line)."""
    if len(state) != c.width:
        raise ValueError(f"state has {len(state)} bits, circuit has {c.width} lines")
    return [int(b) for b in run_lanes(c, [1 if b else 0 for b in state], 1)]


def _input_lanes(r: SynthesisResult, xs: Sequence[int]) -> list[int]:
    lanes = [0] * r.circuit.width
    n = r.n
    for lane, x in enumerate(xs):
        for pos, line in enumerate(r.input_lines):
            if (x >> (n - 1 - pos)) & 1:
                lanes[line] |= 1 << lane
    return lanes


def _exhaustive_lanes(r: SynthesisResult) -> list[int]:
    # lane x carries input word x; build each input line's pattern directly
    n = r.n
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    lanes = [0] * r.circuit.width
    for pos, line in enumerate(r.input_lines):
        bits = ((idx >> (n - 1 - pos)) & 1).astype(np.uint8)
        lanes[line] = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return lanes


def _read_outputs(r: SynthesisResult, lanes: list[int], count: int) -> list[int]:
    m = r.m
    words = np.zeros(count, dtype=np.int64)
    nbytes = (count + 7) // 8
    for pos, line in enumerate(r.output_lines):
        raw = np.frombuffer(lanes[line].to_bytes(nbytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[:count].astype(np.int64)
        words |= bits << (m - 1 - pos)
    return [int(w) for w in words]


def evaluate_many(r: SynthesisResult, xs: Sequence[int]) -> list[int]:
    """Output words for a batch of input words (all ancillas start at 0)."""
    top = 1 << r.n
    for x in xs:
        if not 0 <= x < top:
            raise ValueError(f"input {x} does not fit in {r.n} bits")
    if not xs:
        return []
    full = (1 << len(xs)) - 1
    lanes = run_lanes(r.circuit, _input_lanes(r, xs), full)
    return _read_outputs(r, lanes, len(xs))


def evaluate(r: SynthesisResult, x: int) -> int:
    return evaluate_many(r, [x])[0]


def _bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - i)) & 1 for i in range(n))


def verify(r: SynthesisResult, t: TruthTable, mode="exhaustive") -> VerifyReport:
    """Check ``r`` against ``t`` on every input, or on a seeded sample.

    ``mode`` is ``"exhaustive"`` or ``("sampled", count, seed)``.
    """
    if r.n != t.n or r.m != t.m:
        raise ValueError(
            f"result is {r.n}->{r.m} bits but table is {t.n}->{t.m} bits"
        )
    if mode == "exhaustive":
        xs = range(1 << t.n)
        size = 1 << t.n
        lanes = run_lanes(r.circuit, _exhaustive_lanes(r), (1 << size) - 1)
        got = _read_outputs(r, lanes, size)
    else:
        kind, count, seed = mode
        if kind != "sampled":
            raise ValueError(f"unknown verification mode {mode!r}")
        rng = random.Random(seed)
        xs = [rng.randrange(1 << t.n) for _ in range(count)]
        got = evaluate_many(r, xs)
    for x, y in zip(xs, got):
        if t.rows[x] != y:
            return VerifyReport(False, len(got), (_bits(x, t.n), t.rows[x], y))
    return VerifyReport(True, len(got))


def permutation_of(c: Circuit) -> Permutation:
    """The bijection on packed states (line 0 = MSB) that ``c`` defines."""
    w = c.width
    if w > PERMUTATION_WIDTH_LIMIT:
        raise ValueError(
            f"width {w} exceeds the permutation guard of {PERMUTATION_WIDTH_LIMIT} lines"
        )
    ident = SynthesisResult(Circuit(w), tuple(range(w)), tuple(range(w)))
    size = 1 << w
    lanes = run_lanes(c, _exhaustive_lanes(ident), (1 << size) - 1)
    return Permutation(np.asarray(_read_outputs(ident, lanes, size), dtype=np.int64))


"""Reusable circuit pieces built on an ancilla-allocating :class:`Builder`.

Every block allocates fresh zero-initialised lines for its results and never
writes to a primary-input line.  Blocks return line indices; minterm lines
are indexed by the assignment word (first variable = MSB), subset lines by a
bitmask over the sources (first source = bit 0).
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import Circuit, Gate
from .sim import PhaseCount

__all__ = [
    "Builder",
    "LineHandle",
    "MIN_GATES",
    "MIN_DEPTH",
    "literals",
    "conj_tower",
    "copy_tree",
    "fan_out",
    "xor_tree",
    "subset_xor_tower",
    "and_xor_pair_reduce",
]

MIN_GATES = "min_gates"
MIN_DEPTH = "min_depth"
_MODES = (MIN_GATES, MIN_DEPTH)


@dataclass(frozen=True)
class LineHandle:
    """A line index tagged with what it carries (used for debugging dumps)."""

    index: int
    tag: str = ""


class Builder:
    """Single-writer accumulator of gates and ancilla lines.

    Lines ``0 .. n_inputs-1`` are the primary inputs.  Gate and ancilla counts
    are attributed to the phase that is active when they are emitted.
    """

    def __init__(self, n_inputs: int):
        if n_inputs < 0:
            raise ValueError("n_inputs must be non-negative")
        self.n_inputs = n_inputs
        self.width = n_inputs
        self.gates: list[Gate] = []
        self.tags: dict[int, str] = {}
        self.phases: dict[str, PhaseCount] = {}
        self._phase = ""

    @property
    def inputs(self) -> list[int]:
        return list(range(self.n_inputs))

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        prev, self._phase = self._phase, name
        self.phases.setdefault(name, PhaseCount())
        try:
            yield
        finally:
            self._phase = prev

    def _count(self, lc=0, lt=0, q=0):
        cur = self.phases.get(self._phase, PhaseCount())
        self.phases[self._phase] = cur + PhaseCount(lc, lt, q)

    def alloc(self, tag: str = "") -> int:
        line = self.width
        self.width += 1
        if tag:
            self.tags[line] = tag
        self._count(q=1)
        return line

    def handle(self, line: int) -> LineHandle:
        return LineHandle(line, self.tags.get(line, "input" if line < self.n_inputs else ""))

    def _emit(self, controls: tuple[int, ...], target: int):
        if target < self.n_inputs:
            raise ValueError(f"blocks may not target primary input line {target}")
        if max(controls + (target,)) >= self.width:
            raise ValueError("gate references an unallocated line")
        g = Gate(tuple(sorted(controls)), target)
        self.gates.append(g)
        if len(controls) == 2:
            self._count(lt=1)
        else:
            self._count(lc=1)

    def x(self, t: int):
        self._emit((), t)

    def cx(self, c: int, t: int):
        self._emit((c,), t)

    def ccx(self, a: int, b: int, t: int):
        self._emit((a, b), t)

    def circuit(self) -> Circuit:
        return Circuit(max(self.width, 1), self.gates)


def _check_mode(mode: str):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def _split(k: int) -> tuple[int, int]:
    hi = (k + 1) // 2
    return hi, k - hi


def literals(b: Builder, inputs: Sequence[int]) -> list[tuple[int, int]]:
    """``(positive, negated)`` line per variable; 2 gates and 1 ancilla each."""
    pairs = []
    for x in inputs:
        neg = b.alloc("literal")
        b.cx(x, neg)
        b.x(neg)
        pairs.append((x, neg))
    return pairs


def copy_tree(b: Builder, src: int, m: int) -> list[int]:
    """``m`` fresh copies of ``src`` using ``m`` CNOTs by repeated doubling.

    Each round every line already holding the value feeds one new line, so the
    depth is ``ceil(log2(m + 1))``.
    """
    if m < 1:
        raise ValueError("copy_tree needs m >= 1")
    carriers = [src]
    fresh: list[int] = []
    while len(fresh) < m:
        for line in list(carriers):
            if len(fresh) == m:
                break
            new = b.alloc("copy")
            b.cx(line, new)
            fresh.append(new)
            carriers.append(new)
    return fresh


def fan_out(b: Builder, src: int, uses: int) -> list[int]:
    """``uses`` lines carrying ``src``: the source itself plus ``uses - 1`` copies."""
    if uses < 1:
        raise ValueError("fan_out needs uses >= 1")
    return [src] + (copy_tree(b, src, uses - 1) if uses > 1 else [])


def xor_tree(b: Builder, srcs: Sequence[int], in_place: bool = True) -> int:
    """Line holding the XOR of ``srcs``.

    In place, a balanced pairwise tree folds the sources into one of them
    (``len - 1`` CNOTs, depth ``ceil(log2 len)``); the other sources keep
    their values but the survivor is overwritten.  Otherwise a fresh
    accumulator receives one CNOT per source and the sources are untouched.
    A single source is returned as is, without gates.
    """
    if not srcs:
        raise ValueError("xor_tree needs at least one source")
    if len(srcs) > 1 and not in_place:
        acc = b.alloc("accumulator")
        for s in srcs:
            b.cx(s, acc)
        return acc
    level = list(srcs)
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            b.cx(level[i + 1], level[i])
            nxt.append(level[i])
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def conj_tower(b: Builder, pairs: Sequence[tuple[int, int]], mode: str = MIN_GATES) -> list[int]:
    """All ``2**k`` minterms of the variables given as literal pairs.

    Halves of ``ceil(k/2)`` and ``floor(k/2)`` variables are built
    recursively and every pair of sub-minterms is joined by one C2NOT into a
    fresh line.  ``min_depth`` first fans each sub-minterm out so that all the
    joining C2NOTs act on distinct lines and fit in one layer.
    """
    _check_mode(mode)
    k = len(pairs)
    if k == 0:
        raise ValueError("conj_tower needs at least one variable")
    if k == 1:
        pos, neg = pairs[0]
        return [neg, pos]
    hi, lo = _split(k)
    left = conj_tower(b, pairs[:hi], mode)
    right = conj_tower(b, pairs[hi:], mode)
    nl, nr = len(left), len(right)
    if mode == MIN_DEPTH:
        lcopies = [fan_out(b, line, nr) for line in left]
        rcopies = [fan_out(b, line, nl) for line in right]
    else:
        lcopies = [[line] * nr for line in left]
        rcopies = [[line] * nl for line in right]
    out = []
    for a in range(nl):
        for c in range(nr):
            t = b.alloc("minterm")
            b.ccx(lcopies[a][c], rcopies[c][a], t)
            out.append(t)
    return out


def subset_xor_tower(b: Builder, srcs: Sequence[int], mode: str = MIN_GATES) -> list[int]:
    """XOR of every subset of ``srcs``; entry ``mask`` uses the sources whose bit is set.

    The empty subset is a dedicated constant-zero line.  ``min_gates`` joins
    each pair of half-subsets with two CNOTs into a fresh line.  ``min_depth``
    makes a fresh copy of one half-subset for every partner and XORs a
    fanned-out copy of the other half-subset into it, one layer deep.
    """
    _check_mode(mode)
    s = len(srcs)
    if s == 0:
        raise ValueError("subset_xor_tower needs at least one source")
    if s == 1:
        return [b.alloc("zero"), srcs[0]]
    hi, lo = _split(s)
    left = subset_xor_tower(b, srcs[:hi], mode)
    right = subset_xor_tower(b, srcs[hi:], mode)
    nl, nr = len(left), len(right)
    out = [0] * (nl * nr)
    if mode == MIN_DEPTH:
        if hi == lo:
            accs = [copy_tree(b, line, nr) for line in left]
            rcopies = [fan_out(b, line, nl) for line in right]
            for a in range(nl):
                for c in range(nr):
                    b.cx(rcopies[c][a], accs[a][c])
                    out[a | (c << hi)] = accs[a][c]
        else:
            # the smaller half finishes earlier, so it absorbs the extra copy round
            accs = [copy_tree(b, line, nl) for line in right]
            lcopies = [fan_out(b, line, nr) for line in left]
            for c in range(nr):
                for a in range(nl):
                    b.cx(lcopies[a][c], accs[c][a])
                    out[a | (c << hi)] = accs[c][a]
        return out
    for a in range(nl):
        for c in range(nr):
            t = b.alloc("group-function")
            b.cx(left[a], t)
            b.cx(right[c], t)
            out[a | (c << hi)] = t
    return out


def and_xor_pair_reduce(b: Builder, xs: Sequence[int], ys: Sequence[int]) -> int:
    """Line holding ``XOR_i xs[i] AND ys[i]``.

    Terms are paired onto fresh accumulators (two C2NOTs each, the odd tail
    gets one), then the accumulators are folded by an in-place XOR tree.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if not xs:
        raise ValueError("need at least one term")
    accs = []
    for i in range(0, len(xs), 2):
        acc = b.alloc("accumulator")
        b.ccx(xs[i], ys[i], acc)
        if i + 1 < len(xs):
            b.ccx(xs[i + 1], ys[i + 1], acc)
        accs.append(acc)
    return xor_tree(b, accs, in_place=True)

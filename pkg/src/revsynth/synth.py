"""Lupanov-style synthesis of n-bit transformations with ancilla lines.

Both algorithms split the inputs into the first ``k`` variables and the
remaining ``n - k``.  For every assignment ``a`` of the remaining variables
and every output bit ``j`` the *coordinate function* ``f_ij`` over the first
``k`` variables is written as an XOR of minterms.  Minterms are grouped by
``s``; every XOR-of-a-subset inside a group is precomputed, so each
coordinate function costs one pick per group.  Finally the outputs are

    y_j = XOR_a  minterm_a(x_{k+1..n}) AND f_{a,j}(x_1..x_k).

``a1`` minimises the gate count; ``a2_3n`` / ``a2_2n`` minimise depth by
fanning values out before they are consumed and differ only in how ``k`` and
``s`` are chosen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import blocks
from .blocks import MIN_DEPTH, MIN_GATES, Builder
from .core import schedule_asap
from .sim import SynthesisResult, TruthTable

__all__ = [
    "A1",
    "A2_3N",
    "A2_2N",
    "ALGORITHMS",
    "InfeasibleParams",
    "Params",
    "CoordinateFamily",
    "GroupTable",
    "default_phi",
    "normalize_algo",
    "choose_params",
    "decompose",
    "group_minterms",
    "synth_a1",
    "synth_a2",
    "synth_direct",
    "synthesize",
    "suffix_index_to_word",
]

A1 = "a1"
A2_3N = "a2_3n"
A2_2N = "a2_2n"
ALGORITHMS = (A1, A2_3N, A2_2N)


class InfeasibleParams(ValueError):
    """No (k, s) satisfies the constraint system of the requested algorithm."""


def normalize_algo(algo: str) -> str:
    tag = algo.strip().lower().replace("-", "_")
    if tag not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of a1, a2-3n, a2-2n")
    return tag


def default_phi(n: int) -> float:
    """``n / (log2 n + log2 log2 max(n, 4))``."""
    return n / (math.log2(max(n, 1)) + math.log2(math.log2(max(n, 4))))


@dataclass(frozen=True)
class Params:
    n: int
    k: int
    s: int
    p: int
    phi_value: float
    algorithm: str

    def __post_init__(self):
        n, k, s = self.n, self.k, self.s
        if self.algorithm == A1:
            if s != n - 2 * k:
                raise InfeasibleParams(f"a1 requires s = n - 2k; got n={n}, k={k}, s={s}")
            if s < 1:
                raise InfeasibleParams(f"a1 requires s = n - 2k >= 1; got s={s} for n={n}, k={k}")
            if not (1 <= k and 2 * k < n):
                raise InfeasibleParams(f"a1 requires 1 <= k < n/2; got k={k} for n={n}")
        elif self.algorithm in (A2_3N, A2_2N):
            if k + s != n:
                raise InfeasibleParams(f"a2 requires k + s = n; got n={n}, k={k}, s={s}")
            if not 1 <= k < n:
                raise InfeasibleParams(f"a2 requires 1 <= k < n; got k={k} for n={n}")
            if not 1 <= s < n:
                raise InfeasibleParams(f"a2 requires 1 <= s < n; got s={s} for n={n}")
        else:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.p != -(-(1 << k) // s):
            raise InfeasibleParams(f"p must equal ceil(2^k / s) = {-(-(1 << k) // s)}")

    @property
    def group_sizes(self) -> list[int]:
        total = 1 << self.k
        return [min(self.s, total - t * self.s) for t in range(self.p)]

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "p": self.p,
            "phi": self.phi_value,
        }


def _make(n, k, s, phi, algo) -> Params:
    return Params(n, k, s, -(-(1 << k) // s) if s >= 1 and k >= 0 else 0, phi, algo)


def choose_params(
    n: int,
    algo: str = A1,
    phi_override: Optional[float] = None,
    *,
    k: Optional[int] = None,
    s: Optional[int] = None,
) -> Params:
    """Pick ``(k, s, p)`` for ``n`` inputs.

    ``k`` and ``s`` override the defaults; the free one is derived from the
    algorithm's constraint.  Defaults that fall outside the feasible range at
    small ``n`` are clamped to the nearest feasible value.
    """
    algo = normalize_algo(algo)
    phi = float(phi_override) if phi_override is not None else default_phi(n)
    if phi <= 0:
        raise ValueError("phi must be positive")
    guess = math.ceil(n / phi)
    if algo == A1:
        kmax = (n - 1) // 2
        if k is None and s is None:
            if kmax < 1:
                raise InfeasibleParams(
                    f"a1 needs 1 <= k and s = n - 2k >= 1, impossible for n={n} (need n >= 3)"
                )
            k = min(max(guess, 1), kmax)
        elif k is None:
            if (n - s) % 2:
                raise InfeasibleParams(f"a1 requires s = n - 2k; n - s = {n - s} is odd")
            k = (n - s) // 2
        s = n - 2 * k if s is None else s
        return _make(n, k, s, phi, algo)
    if n < 2 and k is None and s is None:
        raise InfeasibleParams(f"a2 needs 1 <= k < n and 1 <= s < n, impossible for n={n}")
    if k is None and s is None:
        pick = min(max(guess, 1), n - 1)
        k, s = (pick, n - pick) if algo == A2_3N else (n - pick, pick)
    elif k is None:
        k = n - s
    elif s is None:
        s = n - k
    return _make(n, k, s, phi, algo)


def suffix_index_to_word(i: int, width: int) -> int:
    """Map the index ``i = sum a_{k+j} 2^(j-1)`` to the assignment word (a_{k+1} = MSB)."""
    word = 0
    for _ in range(width):
        word = (word << 1) | (i & 1)
        i >>= 1
    return word


@dataclass(frozen=True)
class CoordinateFamily:
    """``values[i, j, sigma] = f_{i,j}(sigma)`` for every suffix index and output bit."""

    n: int
    k: int
    values: np.ndarray

    @property
    def n_suffix(self) -> int:
        return 1 << (self.n - self.k)


def decompose(t: TruthTable, k: int) -> CoordinateFamily:
    if t.m != t.n:
        raise ValueError("synthesis expects an n -> n transformation")
    n = t.n
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n; got k={k}, n={n}")
    rest = n - k
    rows = np.asarray(t.rows, dtype=np.int64)
    words = np.array([suffix_index_to_word(i, rest) for i in range(1 << rest)], dtype=np.int64)
    sigma = np.arange(1 << k, dtype=np.int64)
    # rows addressed as (suffix index, sigma)
    grid = rows[(sigma[None, :] << rest) | words[:, None]]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    values = ((grid[:, None, :] >> shifts[None, :, None]) & 1).astype(np.uint8)
    return CoordinateFamily(n, k, values)


@dataclass(frozen=True)
class GroupTable:
    """Minterm groups and, per coordinate function, the chosen member of each.

    ``masks[i, j, t]`` has bit ``u`` set when minterm ``groups[t][0] + u``
    belongs to ``f_{i,j}``; mask 0 selects the constant-zero member.
    """

    groups: tuple[tuple[int, int], ...]
    masks: np.ndarray

    @property
    def p(self) -> int:
        return len(self.groups)


def group_minterms(family: CoordinateFamily, params: Params) -> GroupTable:
    if params.k != family.k or params.n != family.n:
        raise ValueError("params do not match the coordinate family")
    total = 1 << params.k
    groups = tuple((t * params.s, min((t + 1) * params.s, total)) for t in range(params.p))
    masks = np.zeros(family.values.shape[:2] + (params.p,), dtype=np.int64)
    for t, (lo, hi) in enumerate(groups):
        weights = 1 << np.arange(hi - lo, dtype=np.int64)
        masks[:, :, t] = (family.values[:, :, lo:hi].astype(np.int64) * weights).sum(axis=2)
    return GroupTable(groups, masks)


def _check(t: TruthTable, params: Params, allowed):
    if params.algorithm not in allowed:
        raise ValueError(f"params are for {params.algorithm}, expected one of {allowed}")
    if t.n != params.n or t.m != t.n:
        raise ValueError(f"table is {t.n}->{t.m} bits but params are for n={params.n}")


def synth_a1(t: TruthTable, params: Params) -> SynthesisResult:
    """Gate-count oriented synthesis (five sub-circuits S1..S5)."""
    _check(t, params, (A1,))
    n, k = params.n, params.k
    table = group_minterms(decompose(t, k), params)
    b = Builder(n)
    x = b.inputs
    with b.phase("S1"):
        minterms = blocks.conj_tower(b, blocks.literals(b, x[:k]), MIN_GATES)
    with b.phase("S2"):
        subsets = [blocks.subset_xor_tower(b, minterms[lo:hi], MIN_GATES) for lo, hi in table.groups]
    n_suffix = 1 << (n - k)
    with b.phase("S3"):
        coord = [
            [
                blocks.xor_tree(
                    b, [subsets[g][table.masks[i, j, g]] for g in range(table.p)], in_place=False
                )
                for j in range(n)
            ]
            for i in range(n_suffix)
        ]
    with b.phase("S4"):
        conj = blocks.conj_tower(b, blocks.literals(b, x[k:]), MIN_GATES)
    with b.phase("S5"):
        outs = [b.alloc("output") for _ in range(n)]
        for j in range(n):
            for i in range(n_suffix):
                b.ccx(conj[suffix_index_to_word(i, n - k)], coord[i][j], outs[j])
    return SynthesisResult(b.circuit(), tuple(x), tuple(outs), "a1", params, dict(b.phases))


def synth_a2(t: TruthTable, params: Params) -> SynthesisResult:
    """Depth oriented synthesis (six sub-circuits S1..S6), emitted in ASAP order."""
    _check(t, params, (A2_3N, A2_2N))
    n, k = params.n, params.k
    table = group_minterms(decompose(t, k), params)
    n_suffix = 1 << (n - k)
    b = Builder(n)
    x = b.inputs
    with b.phase("S1"):
        minterms = blocks.conj_tower(b, blocks.literals(b, x[:k]), MIN_DEPTH)
    with b.phase("S2"):
        subsets = [blocks.subset_xor_tower(b, minterms[lo:hi], MIN_DEPTH) for lo, hi in table.groups]
    with b.phase("S3"):
        # one fresh copy per consumer keeps the counts independent of the table
        consumers: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for i in range(n_suffix):
            for j in range(n):
                for g in range(table.p):
                    consumers.setdefault((g, int(table.masks[i, j, g])), []).append((i, j))
        leaves: dict[tuple[int, int], list[int]] = {}
        for (g, mask), users in consumers.items():
            for user, line in zip(users, blocks.copy_tree(b, subsets[g][mask], len(users))):
                leaves.setdefault(user, []).append(line)
        coord = [[blocks.xor_tree(b, leaves[(i, j)]) for j in range(n)] for i in range(n_suffix)]
    with b.phase("S4"):
        conj = blocks.conj_tower(b, blocks.literals(b, x[k:]), MIN_DEPTH)
    with b.phase("S5"):
        conj_copies = [
            blocks.fan_out(b, conj[suffix_index_to_word(i, n - k)], n) for i in range(n_suffix)
        ]
    with b.phase("S6"):
        outs = [
            blocks.and_xor_pair_reduce(
                b,
                [conj_copies[i][j] for i in range(n_suffix)],
                [coord[i][j] for i in range(n_suffix)],
            )
            for j in range(n)
        ]
    circuit = schedule_asap(b.circuit())
    return SynthesisResult(circuit, tuple(x), tuple(outs), params.algorithm, params, dict(b.phases))


def synth_direct(t: TruthTable) -> SynthesisResult:
    """Fallback for tiny ``n``: all minterms, then one CNOT chain per output."""
    if t.m != t.n:
        raise ValueError("synthesis expects an n -> n transformation")
    n = t.n
    if n < 1:
        raise ValueError("direct mode needs n >= 1")
    b = Builder(n)
    with b.phase("minterms"):
        minterms = blocks.conj_tower(b, blocks.literals(b, b.inputs), MIN_GATES)
    with b.phase("outputs"):
        outs = []
        for j in range(n):
            out = b.alloc("output")
            for r in range(1 << n):
                if t.bit(r, j):
                    b.cx(minterms[r], out)
            outs.append(out)
    return SynthesisResult(b.circuit(), tuple(b.inputs), tuple(outs), "direct", None, dict(b.phases))


def synthesize(
    t: TruthTable,
    algo: str = A1,
    *,
    k: Optional[int] = None,
    s: Optional[int] = None,
    phi: Optional[float] = None,
    fallback: bool = False,
) -> SynthesisResult:
    """Choose parameters and run the requested algorithm.

    With ``fallback=True`` an infeasible parameter system degrades to
    :func:`synth_direct` instead of raising.
    """
    algo = normalize_algo(algo)
    try:
        params = choose_params(t.n, algo, phi, k=k, s=s)
    except InfeasibleParams:
        if fallback:
            return synth_direct(t)
        raise
    if algo == A1:
        return synth_a1(t, params)
    return synth_a2(t, params)

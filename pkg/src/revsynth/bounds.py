"""Closed-form resource bounds and exact resource predictions.

``lower_bounds`` evaluates the known lower bounds on gate count, depth and
weight for n-bit transformations with q ancillas; they hold for
``n > n0`` where ``n0`` is not known explicitly.

``upper_bounds_no_mem`` evaluates the ancilla-free upper bounds with every
``o(1)`` term dropped, so the numbers are indicative only.

``predicted_resources`` recomputes the exact gate and ancilla counts of the
synthesis algorithms from their parameters alone (by recurrences, without
building anything) and gives an upper bound on their dependency depth.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Optional

from .core import WeightConfig
from .sim import PhaseCount
from .synth import A1, A2_2N, A2_3N, Params, default_phi

__all__ = [
    "BoundReport",
    "Predicted",
    "lower_bounds",
    "upper_bounds_no_mem",
    "ancilla_budgets",
    "bound_report",
    "predicted_resources",
    "tower_toffolis",
    "N0_NOTE",
]

N0_NOTE = "valid for n > n0 (n0 unspecified)"


def _clog2(x: int) -> int:
    return (x - 1).bit_length() if x > 0 else 0


def lower_bounds(n: int, q: int = 0, weights: Optional[WeightConfig] = None) -> tuple[float, float, float]:
    """``(L, D, W)`` lower bounds; see :data:`N0_NOTE`."""
    if n < 2 or q < 0:
        raise ValueError("need n >= 2 and q >= 0")
    weights = weights or WeightConfig()
    lines = n + q
    lg = math.log2(lines)
    core = 2.0**n * (n - 2)
    low_l = core / (3 * lg) - n / 3
    low_d = core / (3 * lines * lg) - n / (3 * lines)
    low_w = float(min(weights.wc, weights.wt)) * low_l
    return low_l, low_d, low_w


@dataclass(frozen=True)
class NoMemUpper:
    l: float
    d: float
    w: float
    indicative: bool = True


def upper_bounds_no_mem(n: int, phi_value: float, weights: Optional[WeightConfig] = None) -> NoMemUpper:
    """Ancilla-free upper bounds with the ``o(1)`` corrections set to zero."""
    if n < 4:
        raise ValueError("need n >= 4")
    lg = math.log2(n)
    llg = math.log2(lg)
    if not 1 < phi_value < n / lg:
        raise ValueError(f"phi must satisfy 1 < phi < n/log2(n) = {n / lg:.6g}")
    weights = weights or WeightConfig()
    den = lg - llg - math.log2(phi_value)
    tail = lg * llg / n
    eps_l = 1 / (6 * phi_value) + (8 / 3) * tail
    eps_d = 1 / (4 * phi_value) + 4 * tail
    eps_c = 1 / (2 * phi_value) - 0.5 * llg / n
    eps_t = 4 * tail
    up_l = 3 * n * 2.0 ** (n + 4) / den * (1 + eps_l)
    up_d = n * 2.0 ** (n + 5) / den * (1 + eps_d)
    up_w = n * 2.0 ** (n + 4) * (float(weights.wc) * (1 + eps_c) + 2 * float(weights.wt) * (1 + eps_t)) / den
    return NoMemUpper(up_l, up_d, up_w)


def ancilla_budgets(n: int, phi_value: float) -> tuple[float, float, float]:
    """Ancilla budgets for the three memory regimes of the upper bounds: q0, q1, q2."""
    q0 = n * 2.0 ** (n - math.ceil(n / phi_value))
    return q0, 2.0**n, phi_value * 2.0**n


@dataclass(frozen=True)
class BoundReport:
    n: int
    q: int
    wc: float
    wt: float
    phi: float
    lower_L: float
    lower_D: float
    lower_W: float
    q0: float
    q1: float
    q2: float
    upper_no_mem_L: Optional[float] = None
    upper_no_mem_D: Optional[float] = None
    upper_no_mem_W: Optional[float] = None
    indicative: bool = True
    notes: list = field(default_factory=lambda: [N0_NOTE])

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(n: int, q: int = 0, phi: Optional[float] = None, weights: Optional[WeightConfig] = None) -> BoundReport:
    weights = weights or WeightConfig()
    phi = default_phi(n) if phi is None else float(phi)
    lo = lower_bounds(n, q, weights)
    notes = [N0_NOTE]
    up = None
    if n >= 4:
        try:
            up = upper_bounds_no_mem(n, phi, weights)
            notes.append("no-memory upper bounds drop all o(1) terms: indicative only")
        except ValueError as exc:
            notes.append(f"no-memory upper bounds skipped: {exc}")
    return BoundReport(
        n=n,
        q=q,
        wc=float(weights.wc),
        wt=float(weights.wt),
        phi=phi,
        lower_L=lo[0],
        lower_D=lo[1],
        lower_W=lo[2],
        q0=ancilla_budgets(n, phi)[0],
        q1=2.0**n,
        q2=phi * 2.0**n,
        upper_no_mem_L=up.l if up else None,
        upper_no_mem_D=up.d if up else None,
        upper_no_mem_W=up.w if up else None,
        notes=notes,
    )


# --- exact accounting -------------------------------------------------------


def _halves(k: int) -> tuple[int, int]:
    return (k + 1) // 2, k // 2


@lru_cache(maxsize=None)
def tower_toffolis(k: int) -> int:
    """C2NOTs in a conjunction tower: T(k) = 2^k + T(ceil k/2) + T(floor k/2), T(1) = 0."""
    if k <= 1:
        return 0
    hi, lo = _halves(k)
    return (1 << k) + tower_toffolis(hi) + tower_toffolis(lo)


@lru_cache(maxsize=None)
def _tower_depth_copies(k: int) -> int:
    if k <= 1:
        return 0
    hi, lo = _halves(k)
    level = (1 << hi) * ((1 << lo) - 1) + (1 << lo) * ((1 << hi) - 1)
    return level + _tower_depth_copies(hi) + _tower_depth_copies(lo)


def _fanned(hi: int, lo: int) -> int:
    # variable count of the half whose lines are fanned out in place (not copied fresh)
    return lo if hi == lo else hi


@lru_cache(maxsize=None)
def _subset_gates(s: int, depth_mode: bool) -> int:
    if s <= 1:
        return 0
    hi, lo = _halves(s)
    level = 3 * (1 << s) - (1 << _fanned(hi, lo)) if depth_mode else 2 * (1 << s)
    return level + _subset_gates(hi, depth_mode) + _subset_gates(lo, depth_mode)


@lru_cache(maxsize=None)
def _subset_lines(s: int, depth_mode: bool) -> int:
    if s <= 1:
        return 1
    hi, lo = _halves(s)
    level = (1 << (s + 1)) - (1 << _fanned(hi, lo)) if depth_mode else 1 << s
    return level + _subset_lines(hi, depth_mode) + _subset_lines(lo, depth_mode)


# depth upper bounds, measured from the moment the block's sources are ready


@lru_cache(maxsize=None)
def _tower_depth_fast(k: int) -> int:
    # literals included: the base case's negated literal takes two layers
    if k <= 1:
        return 2
    hi, lo = _halves(k)
    return max(_tower_depth_fast(hi) + lo, _tower_depth_fast(lo) + hi) + 1


@lru_cache(maxsize=None)
def _tower_depth_slow(k: int) -> int:
    # row-major joining: gate (a, b) of a level sits in layer a + b + 1
    if k <= 1:
        return 2
    hi, lo = _halves(k)
    return max(_tower_depth_slow(hi), _tower_depth_slow(lo)) + (1 << hi) + (1 << lo) - 1


@lru_cache(maxsize=None)
def _subset_depth(s: int, depth_mode: bool) -> int:
    if s <= 1:
        return 0
    hi, lo = _halves(s)
    if depth_mode:
        a, b = _subset_depth(hi, True), _subset_depth(lo, True)
        if hi == lo:
            return max(a + lo + 1, b + hi) + 1
        return max(a + lo, b + hi + 1) + 1
    return max(_subset_depth(hi, False), _subset_depth(lo, False)) + (1 << hi) + (1 << lo)


@dataclass(frozen=True)
class Predicted:
    l: int
    lc: int
    lt: int
    q: int
    d: int
    w: float
    phases: dict

    def as_dict(self) -> dict:
        return {
            "L": self.l,
            "L_C": self.lc,
            "L_T": self.lt,
            "q": self.q,
            "D": self.d,
            "W": self.w,
        }


def predicted_resources(params: Params, weights: Optional[WeightConfig] = None) -> Predicted:
    """Exact (L, L_C, L_T, q) and a depth upper bound for the given parameters."""
    weights = weights or WeightConfig()
    n, k, p = params.n, params.k, params.p
    rest = n - k
    coords = n << rest
    sizes = params.group_sizes
    if params.algorithm == A1:
        phases = {
            "S1": PhaseCount(2 * k, tower_toffolis(k), k + tower_toffolis(k)),
            "S2": PhaseCount(
                sum(_subset_gates(g, False) for g in sizes), 0, sum(_subset_lines(g, False) for g in sizes)
            ),
            "S3": PhaseCount(p * coords, 0, coords) if p > 1 else PhaseCount(),
            "S4": PhaseCount(2 * rest, tower_toffolis(rest), rest + tower_toffolis(rest)),
            "S5": PhaseCount(0, coords, n),
        }
        depth = (
            _tower_depth_slow(k)
            + max(_subset_depth(g, False) for g in sizes)
            + coords + p - 1
            + _tower_depth_slow(rest)
            + n + (1 << rest) - 1
        )
    elif params.algorithm in (A2_3N, A2_2N):
        half = 1 << (rest - 1)

        def tower(v):
            copies = _tower_depth_copies(v)
            return PhaseCount(2 * v + copies, tower_toffolis(v), v + tower_toffolis(v) + copies)

        phases = {
            "S1": tower(k),
            "S2": PhaseCount(
                sum(_subset_gates(g, True) for g in sizes), 0, sum(_subset_lines(g, True) for g in sizes)
            ),
            "S3": PhaseCount(p * coords + (p - 1) * coords, 0, p * coords),
            "S4": tower(rest),
            "S5": PhaseCount((n - 1) << rest, 0, (n - 1) << rest),
            "S6": PhaseCount(n * (half - 1), coords, n * half),
        }
        left = (
            _tower_depth_fast(k)
            + max(_subset_depth(g, True) for g in sizes)
            + _clog2(coords + 1)  # worst case: one member feeds every coordinate
            + _clog2(p)
        )
        right = _tower_depth_fast(rest) + _clog2(n)
        depth = max(left, right) + 2 + _clog2(half)
    else:
        raise ValueError(f"no prediction for algorithm {params.algorithm!r}")
    total = PhaseCount()
    for c in phases.values():
        total = total + c
    return Predicted(
        l=total.lc + total.lt,
        lc=total.lc,
        lt=total.lt,
        q=total.q,
        d=depth,
        w=weights.wc * total.lc + weights.wt * total.lt,
        phases=phases,
    )

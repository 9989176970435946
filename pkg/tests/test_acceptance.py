"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed straight to the terminal even when output is captured.
"""
import math
import random
import time

import mpmath
import pytest

from revsynth.blocks import MIN_DEPTH, MIN_GATES, Builder, conj_tower, copy_tree, literals, xor_tree
from revsynth.bounds import lower_bounds, predicted_resources, tower_toffolis
from revsynth.cleanup import bijective_cleanup
from revsynth.core import Circuit, compose, depth_blocks, depth_dag, fig1_circuit, inverse, metrics
from revsynth.sim import TruthTable, permutation_of, run, run_lanes, verify
from revsynth.synth import A1, A2_2N, A2_3N, choose_params, synthesize
from strategies import random_circuit

ALGOS = (A1, A2_3N, A2_2N)


@pytest.fixture
def report(capsys):
    def emit(cid, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {cid}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def corpus():
    """Criterion 2 circuits: 20 seeded tables per n and algorithm, n = 3..8."""
    out = []
    for n in range(3, 9):
        for seed in range(20):
            t = TruthTable.random(n, seed=10_000 * n + seed)
            for algo in ALGOS:
                out.append((t, algo, synthesize(t, algo)))
    return out


def lanes_for(width: int, n: int, words):
    lanes = [0] * width
    for lane, x in enumerate(words):
        for pos in range(n):
            if (x >> (n - 1 - pos)) & 1:
                lanes[pos] |= 1 << lane
    return lanes


def test_c1_fig1(report):
    t0 = time.perf_counter()
    c = fig1_circuit()
    m = metrics(c)
    state = run(c, [0, 0, 0, 0])
    elapsed = time.perf_counter() - t0
    ok = (m.l, m.d_blocks, m.d_dag) == (6, 3, 3) and state == [0, 1, 1, 1] and elapsed < 1
    report(1, ok, f"L={m.l} d_blocks={m.d_blocks} d_dag={m.d_dag} run={state} in {elapsed:.3f}s")
    assert ok


def test_c2_correctness(report, corpus):
    failures = [(t.n, algo) for t, algo, r in corpus if not verify(r, t).passed]
    ok = not failures
    report(2, ok, f"{len(corpus)} circuits verified exhaustively, failures={failures[:5]}")
    assert ok


def test_c3_conj_towers(report):
    bad = []
    rng = random.Random(3)
    for k in range(1, 11):
        for mode in (MIN_GATES, MIN_DEPTH):
            b = Builder(k)
            lines = conj_tower(b, literals(b, b.inputs), mode)
            c = b.circuit()
            words = list(range(1 << k)) if k <= 8 else [rng.randrange(1 << k) for _ in range(256)]
            full = (1 << len(words)) - 1
            final = run_lanes(c, lanes_for(c.width, k, words), full)
            for idx, line in enumerate(lines):
                want = sum(1 << lane for lane, x in enumerate(words) if x == idx)
                if final[line] != want:
                    bad.append((k, mode, idx))
                    break
            if mode == MIN_GATES and metrics(c).lt != tower_toffolis(k):
                bad.append((k, mode, "T(k)"))
    ok = not bad
    report(3, ok, f"towers k=1..10 in both modes, T(4)={tower_toffolis(4)}, mismatches={bad}")
    assert ok


def test_c4_copy_xor_trees(report):
    bad = []
    for m in range(1, 65):
        b = Builder(1)
        copy_tree(b, 0, m)
        if len(b.gates) != m or depth_dag(b.circuit()) != math.ceil(math.log2(m + 1)):
            bad.append(("copy", m))
    for r in range(1, 65):
        b = Builder(0)
        xor_tree(b, [b.alloc() for _ in range(r)])
        if depth_dag(b.circuit()) != math.ceil(math.log2(r)):
            bad.append(("xor", r))
    ok = not bad
    report(4, ok, f"copy_tree m=1..64 and xor_tree r=1..64, mismatches={bad}")
    assert ok


def test_c5_accounting(report, corpus):
    bad = []
    for t, algo, r in corpus:
        pred = predicted_resources(r.params)
        if (pred.lc, pred.lt, pred.q) != (r.metrics.lc, r.metrics.lt, r.q) or pred.phases != r.phases:
            bad.append((t.n, algo, "counts"))
        free = ("S2", "S3") if algo == A1 else ("S2", "S3", "S5")
        if any(r.phases[p].lt for p in free):
            bad.append((t.n, algo, "toffoli-free phase"))
    ok = not bad
    report(5, ok, f"{len(corpus)} circuits match predicted (L_C, L_T, q) per phase, mismatches={bad[:5]}")
    assert ok


def test_c6a_depth_bound(report):
    rows = []
    ok = True
    for n in range(6, 11):
        p = choose_params(n, A2_3N)
        bound = (p.k + p.s) + (n - p.k) + math.ceil(math.log2(p.p)) + math.ceil(math.log2(n)) + (n - p.k) + 8
        for seed in range(3):
            d = synthesize(TruthTable.random(n, seed=seed), A2_3N).metrics.d_dag
            ok &= d <= bound
        rows.append(f"n={n}:{d}<={bound}")
    report("6a", ok, "A2-3n d_dag within the finite depth bound " + " ".join(rows))
    assert ok


def test_c6b_mode_tradeoff(report):
    t = TruthTable.random(10, seed=0)
    a = synthesize(t, A2_3N).metrics
    b = synthesize(t, A2_2N).metrics
    ok = b.d_dag < a.d_dag and b.l > a.l
    report(
        "6b",
        ok,
        f"n=10 A2-2n d_dag={b.d_dag} L={b.l} vs A2-3n d_dag={a.d_dag} L={a.l} "
        "(needs strictly shallower and more gates)",
    )
    assert ok


def test_c7_cleanup(report):
    bad = []
    worst = 0.0
    for n in range(3, 7):
        for seed in range(10):
            t = TruthTable.random_permutation(n, seed=100 * n + seed)
            r = bijective_cleanup(t)
            size = 1 << n
            final = run_lanes(r.circuit, lanes_for(r.circuit.width, n, range(size)), (1 << size) - 1)
            garbage = any(final[i] for i in range(r.circuit.width) if i not in r.output_lines)
            cost = r.extra["cost"]
            limit = 4 * max(cost.forward, cost.backward) + 2 * n
            worst = max(worst, len(r.circuit) / limit)
            if garbage or not verify(r, t).passed or len(r.circuit) > limit:
                bad.append((n, seed))
    ok = not bad
    report(7, ok, f"40 permutations cleaned, worst L/limit={worst:.3f}, failures={bad}")
    assert ok


def test_c8_bounds(report):
    mpmath.mp.dps = 40
    errs = []
    for n, q in [(10, 0), (10, 2**10), (16, 16)]:
        lg = mpmath.log(n + q, 2)
        core = mpmath.mpf(2) ** n * (n - 2)
        want_l = core / (3 * lg) - mpmath.mpf(n) / 3
        want_d = want_l / (n + q)
        got_l, got_d, _ = lower_bounds(n, q)
        errs.append(max(abs(got_l - want_l) / abs(want_l), abs(got_d - want_d) / abs(want_d)))
    monotone = all(
        lower_bounds(n, q + 1)[0] < lower_bounds(n, q)[0] for n in (4, 10, 16) for q in range(0, 300)
    )
    ok = max(errs) < 1e-9 and monotone
    report(8, ok, f"max relative error {float(max(errs)):.2e}, lower_L decreasing in q: {monotone}")
    assert ok


def test_c9_simulator(report):
    rng = random.Random(9)
    comp = all(
        permutation_of(compose(a, b)) == permutation_of(a).then(permutation_of(b))
        for a, b in ((random_circuit(rng, 8, 30), random_circuit(rng, 8, 30)) for _ in range(100))
    )
    inv = all(
        permutation_of(compose(c, inverse(c))).is_identity()
        for c in (random_circuit(rng, 10, 40) for _ in range(100))
    )
    ok = comp and inv
    report(9, ok, f"composition law on 100 width-8 pairs: {comp}; c*inverse(c)=id on 100 width-10: {inv}")
    assert ok


def test_c10_parity(report):
    rng = random.Random(10)
    odd = [
        w
        for w in range(4, 11)
        for _ in range(100)
        if permutation_of(random_circuit(rng, w, rng.randint(1, 40))).parity()
    ]
    ok = not odd
    report(10, ok, f"700 random circuits on 4..10 lines, odd permutations found: {len(odd)}")
    assert ok

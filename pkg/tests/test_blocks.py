import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revsynth.blocks import (
    MIN_DEPTH,
    MIN_GATES,
    Builder,
    and_xor_pair_reduce,
    conj_tower,
    copy_tree,
    fan_out,
    literals,
    subset_xor_tower,
    xor_tree,
)
from revsynth.bounds import tower_toffolis
from revsynth.core import Circuit, depth_dag
from strategies import reference_run, word_to_bits


def states(b: Builder, words):
    c = b.circuit()
    for x in words:
        yield x, reference_run(c, word_to_bits(x, b.n_inputs) + [0] * (c.width - b.n_inputs))


def all_states(b: Builder):
    return states(b, range(1 << b.n_inputs))


def sub_depth(b: Builder, start: int) -> int:
    return depth_dag(Circuit(b.circuit().width, b.gates[start:]))


def minterm(x: int, k: int, idx: int) -> int:
    return int(x == idx)


U = {1: 0}


def subset_gates_min(s: int) -> int:
    if s not in U:
        U[s] = 2 * (1 << s) + subset_gates_min((s + 1) // 2) + subset_gates_min(s // 2)
    return U[s]


class TestBuilder:
    def test_inputs_are_read_only(self):
        b = Builder(2)
        with pytest.raises(ValueError):
            b.x(0)

    def test_unallocated(self):
        b = Builder(1)
        with pytest.raises(ValueError):
            b.cx(0, 1)

    def test_phase_counters(self):
        b = Builder(2)
        with b.phase("a"):
            t = b.alloc()
            b.ccx(0, 1, t)
            b.cx(0, t)
        with b.phase("b"):
            b.x(t)
        assert (b.phases["a"].lc, b.phases["a"].lt, b.phases["a"].q) == (1, 1, 1)
        assert (b.phases["b"].lc, b.phases["b"].lt, b.phases["b"].q) == (1, 0, 0)


class TestLiterals:
    def test_one_var(self):
        b = Builder(1)
        [(pos, neg)] = literals(b, [0])
        for x, s in all_states(b):
            assert (s[pos], s[neg]) == (x, 1 - x)

    def test_counts_n3(self):
        b = Builder(3)
        literals(b, b.inputs)
        assert len(b.gates) == 6 and b.width - 3 == 3

    def test_zero_input(self):
        b = Builder(3)
        pairs = literals(b, b.inputs)
        _, s = next(all_states(b))
        assert all(s[neg] == 1 for _, neg in pairs)


class TestConjTower:
    def test_k2_example(self):
        b = Builder(2)
        lines = conj_tower(b, literals(b, b.inputs))
        s = dict(states(b, [0b10]))[0b10]
        assert [s[l] for l in lines] == [0, 0, 1, 0]

    def test_k1_base(self):
        b = Builder(1)
        pairs = literals(b, [0])
        n_gates = len(b.gates)
        assert conj_tower(b, pairs) == [pairs[0][1], pairs[0][0]]
        assert len(b.gates) == n_gates

    def test_k4_toffolis(self):
        b = Builder(4)
        conj_tower(b, literals(b, b.inputs), MIN_GATES)
        assert sum(1 for g in b.gates if g.kind == "T") == 24 == tower_toffolis(4)

    @pytest.mark.parametrize("mode", [MIN_GATES, MIN_DEPTH])
    @pytest.mark.parametrize("k", range(1, 7))
    def test_semantics(self, k, mode):
        b = Builder(k)
        lines = conj_tower(b, literals(b, b.inputs), mode)
        assert len(lines) == 1 << k
        for x, s in all_states(b):
            assert [s[l] for l in lines] == [minterm(x, k, i) for i in range(1 << k)]

    def test_min_depth_is_shallower(self):
        depths = {}
        for mode in (MIN_GATES, MIN_DEPTH):
            b = Builder(6)
            conj_tower(b, literals(b, b.inputs), mode)
            depths[mode] = depth_dag(b.circuit())
        assert depths[MIN_DEPTH] < depths[MIN_GATES]

    def test_bad_mode(self):
        b = Builder(1)
        with pytest.raises(ValueError):
            conj_tower(b, literals(b, [0]), "fast")


class TestCopyTree:
    @pytest.mark.parametrize("m", [1, 2, 3, 7, 8, 20, 64])
    def test_counts(self, m):
        b = Builder(1)
        copies = copy_tree(b, 0, m)
        assert len(copies) == len(b.gates) == m
        assert depth_dag(b.circuit()) == math.ceil(math.log2(m + 1))
        for x, s in all_states(b):
            assert all(s[c] == x for c in copies)

    def test_fan_out_includes_source(self):
        b = Builder(1)
        lines = fan_out(b, 0, 4)
        assert lines[0] == 0 and len(lines) == 4 and len(b.gates) == 3


class TestXorTree:
    def test_eight_sources(self):
        b = Builder(8)
        srcs = []
        for i in range(8):
            t = b.alloc()
            b.cx(i, t)
            srcs.append(t)
        start = len(b.gates)
        out = xor_tree(b, srcs)
        assert len(b.gates) - start == 7 and sub_depth(b, start) == 3
        for x, s in all_states(b):
            assert s[out] == bin(x).count("1") % 2

    def test_single_source(self):
        b = Builder(1)
        assert xor_tree(b, [0]) == 0 and not b.gates

    @pytest.mark.parametrize("r", [2, 3, 5, 13, 64])
    def test_depth(self, r):
        b = Builder(0)
        srcs = [b.alloc() for _ in range(r)]
        xor_tree(b, srcs)
        assert depth_dag(b.circuit()) == math.ceil(math.log2(r))

    def test_fresh_accumulator(self):
        b = Builder(3)
        out = xor_tree(b, b.inputs, in_place=False)
        for x, s in all_states(b):
            assert s[out] == bin(x).count("1") % 2
            assert s[:3] == word_to_bits(x, 3)


class TestSubsetXorTower:
    def test_s2_example(self):
        b = Builder(2)
        lines = subset_xor_tower(b, b.inputs)
        s = dict(all_states(b))[0b11]
        assert [s[l] for l in lines] == [0, 1, 1, 0]

    def test_s1_base(self):
        b = Builder(1)
        lines = subset_xor_tower(b, [0])
        assert lines[1] == 0 and len(lines) == 2 and not b.gates

    @pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
    def test_min_gates_count(self, s):
        b = Builder(s)
        subset_xor_tower(b, b.inputs, MIN_GATES)
        assert len(b.gates) == subset_gates_min(s)

    @pytest.mark.parametrize("mode", [MIN_GATES, MIN_DEPTH])
    @pytest.mark.parametrize("s", range(1, 7))
    def test_semantics(self, s, mode):
        b = Builder(s)
        lines = subset_xor_tower(b, b.inputs, mode)
        for x, st_ in all_states(b):
            bits = word_to_bits(x, s)
            for mask, line in enumerate(lines):
                want = sum(bits[u] for u in range(s) if mask >> u & 1) % 2
                assert st_[line] == want

    def test_min_depth_is_shallower(self):
        d = {}
        for mode in (MIN_GATES, MIN_DEPTH):
            b = Builder(6)
            subset_xor_tower(b, b.inputs, mode)
            d[mode] = depth_dag(b.circuit())
        assert d[MIN_DEPTH] < d[MIN_GATES]


class TestAndXor:
    def test_length_one(self):
        b = Builder(2)
        z = and_xor_pair_reduce(b, [0], [1])
        assert [g.kind for g in b.gates] == ["T"]
        for x, s in all_states(b):
            assert s[z] == (x == 3)

    def test_length_eight(self):
        b = Builder(16)
        z = and_xor_pair_reduce(b, list(range(8)), list(range(8, 16)))
        kinds = [g.kind for g in b.gates]
        assert kinds.count("T") == 8 and kinds.count("C") == 3
        assert depth_dag(b.circuit()) == 4
        rng = random.Random(0)
        words = [rng.randrange(1 << 16) for _ in range(300)] + [0]
        for x, s in states(b, words):
            bits = word_to_bits(x, 16)
            assert s[z] == sum(bits[i] & bits[8 + i] for i in range(8)) % 2

    def test_all_zero(self):
        b = Builder(4)
        z = and_xor_pair_reduce(b, [0, 1], [2, 3])
        s = dict(all_states(b))[0b0011]
        assert s[z] == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 6), st.data())
    def test_property(self, length, data):
        b = Builder(2 * length)
        z = and_xor_pair_reduce(b, list(range(length)), list(range(length, 2 * length)))
        x = data.draw(st.integers(0, (1 << (2 * length)) - 1))
        bits = word_to_bits(x, 2 * length)
        s = dict(states(b, [x]))[x]
        assert s[z] == sum(bits[i] & bits[length + i] for i in range(length)) % 2

import random

import pytest
from hypothesis import given, settings

from revsynth.core import Circuit, Gate, fig1_circuit
from revsynth.io import (
    FormatError,
    export_real,
    parse_circuit,
    parse_truth_table,
    serialize_circuit,
    serialize_truth_table,
)
from revsynth.sim import SynthesisResult, TruthTable
from revsynth.synth import synthesize
from strategies import circuits, random_circuit


def fig1_result():
    return SynthesisResult(fig1_circuit(), (0, 1, 2, 3), (0, 1, 2, 3))


class TestTruthTable:
    def test_one_bit(self):
        assert parse_truth_table("1 1\n0\n1") == TruthTable.identity(1)

    def test_two_bit(self):
        assert parse_truth_table("2 2\n00\n01\n10\n11") == TruthTable.identity(2)

    def test_comments_blank_and_crlf(self):
        text = "# header\r\n2 1\r\n\r\n0 # first\r\n1\r\n1\r\n0\r\n"
        assert parse_truth_table(text).rows == (0, 1, 1, 0)

    def test_missing_row(self):
        with pytest.raises(FormatError, match="expected 4 rows"):
            parse_truth_table("2 2\n00\n01\n10")

    def test_bad_character(self):
        with pytest.raises(FormatError) as err:
            parse_truth_table("1 1\n0\n2")
        assert err.value.lineno == 3

    def test_width_mismatch(self):
        with pytest.raises(FormatError, match="m = 2") as err:
            parse_truth_table("1 2\n00\n1")
        assert err.value.lineno == 3

    def test_too_many_rows(self):
        with pytest.raises(FormatError, match="too many"):
            parse_truth_table("1 1\n0\n1\n1")

    def test_bad_header(self):
        with pytest.raises(FormatError):
            parse_truth_table("2\n0\n1")
        with pytest.raises(FormatError):
            parse_truth_table("")

    def test_round_trip(self):
        for seed in range(20):
            t = TruthTable.random(4, m=3, seed=seed)
            assert parse_truth_table(serialize_truth_table(t)) == t


class TestCircuitFormat:
    def test_fig1(self):
        text = serialize_circuit(fig1_result())
        body = text.splitlines()[3:]
        assert len(body) == 6 and body[0] == "C 0 1" and body[4] == "T 0 3 1"
        assert text.startswith("lines 4\ninputs 0 1 2 3\noutputs 0 1 2 3\n")

    def test_round_trip_random(self):
        rng = random.Random(0)
        for _ in range(100):
            w = rng.randint(1, 12)
            c = random_circuit(rng, w, rng.randint(0, 30))
            n = rng.randint(0, w)
            r = SynthesisResult(c, tuple(rng.sample(range(w), n)), tuple(rng.sample(range(w), rng.randint(1, w))))
            assert parse_circuit(serialize_circuit(r)) == r

    @settings(max_examples=60, deadline=None)
    @given(circuits(max_width=8))
    def test_round_trip_property(self, c):
        r = SynthesisResult(c, tuple(range(c.width)), (0,))
        back = parse_circuit(serialize_circuit(r))
        assert back == r and back.circuit.gates == c.gates

    def test_round_trip_synthesized(self):
        r = synthesize(TruthTable.random(5, seed=0), "a2-3n")
        assert parse_circuit(serialize_circuit(r)) == r

    @pytest.mark.parametrize(
        "body,msg",
        [
            ("T 1 1 2", "duplicate control"),
            ("C 2 2", "also a control"),
            ("N 9", "out of range"),
            ("X 0", "unknown gate"),
            ("C 0", "takes 2"),
            ("N -1", "non-negative"),
        ],
    )
    def test_gate_errors(self, body, msg):
        with pytest.raises(FormatError, match=msg) as err:
            parse_circuit("lines 3\ninputs 0\noutputs 2\n" + body + "\n")
        assert err.value.lineno == 4

    @pytest.mark.parametrize(
        "text",
        [
            "inputs 0\nlines 2\noutputs 1\n",
            "lines 2 3\ninputs 0\noutputs 1\n",
            "lines 2\ninputs 0 0\noutputs 1\n",
            "lines 2\ninputs 0\noutputs 5\n",
            "lines 2\ninputs 0\n",
        ],
    )
    def test_header_errors(self, text):
        with pytest.raises(FormatError):
            parse_circuit(text)


class TestReal:
    def test_empty(self):
        text = export_real(SynthesisResult(Circuit(2), (0, 1), (0, 1)))
        lines = text.splitlines()
        assert lines[0] == ".version 1.0" and ".numvars 2" in lines
        assert lines[lines.index(".begin") + 1] == ".end"

    def test_not(self):
        text = export_real(SynthesisResult(Circuit(1, [Gate((), 0)]), (0,), (0,)))
        assert "t1 x0" in text.splitlines()

    def test_fig1(self):
        lines = export_real(fig1_result()).splitlines()
        body = lines[lines.index(".begin") + 1 : lines.index(".end")]
        assert body == ["t2 x0 x1", "t2 x2 x0", "t1 x1", "t1 x3", "t3 x0 x3 x1", "t1 x2"]

    def test_constants_and_garbage(self):
        r = SynthesisResult(Circuit(3), (0,), (2,))
        text = export_real(r)
        assert ".constants -00" in text and ".garbage 11-" in text

"""Text formats for truth tables and circuits, plus RevLib ``.real`` export.

Truth table::

    # comment
    n m
    <2**n lines of m binary digits, row r = input word r, x1 first>

Circuit (0-based line indices)::

    lines W
    inputs i0 i1 ...
    outputs o0 o1 ...
    N t
    C c t
    T c1 c2 t
"""
from __future__ import annotations

from .core import Circuit, Gate
from .sim import SynthesisResult, TruthTable

__all__ = [
    "FormatError",
    "parse_truth_table",
    "serialize_truth_table",
    "parse_circuit",
    "serialize_circuit",
    "export_real",
    "read_truth_table",
    "read_circuit",
]


class FormatError(ValueError):
    """Malformed input; ``lineno`` is 1-based or ``None`` for end of input."""

    def __init__(self, msg: str, lineno=None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + msg)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", lineno) from None
    if v < 0:
        raise FormatError(f"{what} must be non-negative, got {v}", lineno)
    return v


def parse_truth_table(text: str) -> TruthTable:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty truth table: expected header 'n m'") from None
    toks = header.split()
    if len(toks) != 2:
        raise FormatError(f"header must be 'n m', got {header!r}", lineno)
    n = _int(toks[0], lineno, "n")
    m = _int(toks[1], lineno, "m")
    if m < 1:
        raise FormatError("m must be at least 1", lineno)
    expected = 1 << n
    rows = []
    for lineno, row in lines:
        if len(rows) == expected:
            raise FormatError(f"too many rows: expected exactly {expected}", lineno)
        if set(row) - {"0", "1"}:
            raise FormatError(f"row {row!r} contains characters other than 0 and 1", lineno)
        if len(row) != m:
            raise FormatError(f"row {row!r} has {len(row)} digits, header says m = {m}", lineno)
        rows.append(int(row, 2))
    if len(rows) != expected:
        raise FormatError(f"expected {expected} rows (2^{n}), found {len(rows)}")
    return TruthTable(n, m, tuple(rows))


def serialize_truth_table(t: TruthTable) -> str:
    out = [f"{t.n} {t.m}"]
    out += [format(y, f"0{t.m}b") for y in t.rows]
    return "\n".join(out) + "\n"


def serialize_circuit(r: SynthesisResult) -> str:
    out = [
        f"lines {r.circuit.width}",
        " ".join(["inputs"] + [str(i) for i in r.input_lines]),
        " ".join(["outputs"] + [str(o) for o in r.output_lines]),
    ]
    for g in r.circuit.gates:
        out.append(" ".join([g.kind] + [str(c) for c in g.controls] + [str(g.target)]))
    return "\n".join(out) + "\n"


_ARITY = {"N": 1, "C": 2, "T": 3}


def parse_circuit(text: str) -> SynthesisResult:
    lines = _content_lines(text)
    header = {}
    for key in ("lines", "inputs", "outputs"):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise FormatError(f"missing '{key}' header") from None
        toks = line.split()
        if toks[0] != key:
            raise FormatError(f"expected '{key}' header, got {toks[0]!r}", lineno)
        vals = [_int(tok, lineno, key) for tok in toks[1:]]
        if key == "lines":
            if len(vals) != 1 or vals[0] < 1:
                raise FormatError("'lines' takes one positive integer", lineno)
        elif len(set(vals)) != len(vals):
            raise FormatError(f"duplicate line index in '{key}'", lineno)
        header[key] = (lineno, vals)
    width = header["lines"][1][0]
    for key in ("inputs", "outputs"):
        lineno, vals = header[key]
        bad = [v for v in vals if v >= width]
        if bad:
            raise FormatError(f"{key} index {bad[0]} out of range for {width} lines", lineno)
    gates = []
    for lineno, line in lines:
        toks = line.split()
        kind = toks[0]
        if kind not in _ARITY:
            raise FormatError(f"unknown gate kind {kind!r} (expected N, C or T)", lineno)
        if len(toks) - 1 != _ARITY[kind]:
            raise FormatError(f"gate {kind} takes {_ARITY[kind]} indices, got {len(toks) - 1}", lineno)
        idx = [_int(tok, lineno, "line index") for tok in toks[1:]]
        if any(v >= width for v in idx):
            raise FormatError(f"gate index out of range for {width} lines", lineno)
        *ctl, tgt = idx
        if len(set(ctl)) != len(ctl):
            raise FormatError("duplicate control", lineno)
        if tgt in ctl:
            raise FormatError("target is also a control", lineno)
        gates.append(Gate(tuple(sorted(ctl)), tgt))
    return SynthesisResult(
        Circuit(width, gates), tuple(header["inputs"][1]), tuple(header["outputs"][1]), "parsed"
    )


def export_real(r: SynthesisResult) -> str:
    """RevLib ``.real`` text; line ``i`` is named ``x{i}``."""
    w = r.circuit.width
    names = [f"x{i}" for i in range(w)]
    inputs = set(r.input_lines)
    outputs = set(r.output_lines)
    out = [
        ".version 1.0",
        f".numvars {w}",
        ".variables " + " ".join(names),
        ".constants " + "".join("-" if i in inputs else "0" for i in range(w)),
        ".garbage " + "".join("-" if i in outputs else "1" for i in range(w)),
        ".begin",
    ]
    for g in r.circuit.gates:
        out.append(f"t{len(g.controls) + 1} " + " ".join(names[i] for i in g.support))
    out.append(".end")
    return "\n".join(out) + "\n"


def read_truth_table(path) -> TruthTable:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_truth_table(fh.read())


def read_circuit(path) -> SynthesisResult:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_circuit(fh.read())

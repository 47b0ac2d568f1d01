"""Plain-text gate files.

Format: line 1 is ``dims: d_1 d_2 ... d_n``; the next total_dim lines each
hold total_dim whitespace-separated complex tokens in Python's ``re+imj``
notation (row-major matrix entries).  Parsed matrices must pass the usual
unitarity validation.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .tensorops import GateMatrix, SubsystemDims


class GateFileError(ValueError):
    """Malformed gate file text (distinct from failing unitarity validation)."""


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def write_gate_file(path: str | Path, gate: GateMatrix) -> None:
    lines = ["dims: " + " ".join(str(d) for d in gate.dims)]
    for row in gate.matrix:
        lines.append(" ".join(format_complex(z) for z in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_gate_file(path: str | Path) -> GateMatrix:
    """Parse a gate file; raises GateFileError on malformed text and lets
    GateMatrix unitarity validation propagate."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("dims:"):
        raise GateFileError(f"{path}: first line must start with 'dims:'")
    try:
        dims = SubsystemDims(tuple(int(tok) for tok in lines[0][5:].split()))
    except ValueError as exc:
        raise GateFileError(f"{path}: bad dims line: {exc}") from exc
    d = dims.total_dim
    if len(lines) - 1 != d:
        raise GateFileError(f"{path}: expected {d} matrix rows, found {len(lines) - 1}")
    mat = np.empty((d, d), dtype=complex)
    for i, line in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != d:
            raise GateFileError(f"{path}: row {i + 1} has {len(tokens)} entries, expected {d}")
        try:
            mat[i] = [complex(tok) for tok in tokens]
        except ValueError as exc:
            raise GateFileError(f"{path}: row {i + 1}: {exc}") from exc
    return GateMatrix(mat, dims)

"""Channel-spec JSON files and CSV serialization.

A channel spec is ``{"d": 2, "kraus": [E_0, E_1, ...]}`` where each Kraus
operator is a d x d nested list whose entries are ``[re, im]`` pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .quantum import KrausChannel, StateError

SPEC_TOL = 1e-8


class SpecError(ValueError):
    """Malformed or invalid channel spec; the message names the offending field."""


def _number(x, path: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SpecError(f"{path}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise SpecError(f"{path}: non-finite value")
    return float(x)


def parse_channel_spec(doc) -> KrausChannel:
    if not isinstance(doc, dict):
        raise SpecError("<root>: expected an object")
    if "d" not in doc:
        raise SpecError("d: missing")
    d = doc["d"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise SpecError(f"d: expected a positive integer, got {d!r}")
    kraus = doc.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise SpecError("kraus: expected a non-empty list of matrices")

    ops = []
    for n, op in enumerate(kraus):
        path = f"kraus[{n}]"
        if not isinstance(op, list) or len(op) != d:
            raise SpecError(f"{path}: expected {d} rows")
        m = np.empty((d, d), dtype=complex)
        for i, row in enumerate(op):
            if not isinstance(row, list) or len(row) != d:
                raise SpecError(f"{path}[{i}]: expected {d} entries")
            for j, z in enumerate(row):
                zp = f"{path}[{i}][{j}]"
                if not isinstance(z, list) or len(z) != 2:
                    raise SpecError(f"{zp}: expected [re, im]")
                m[i, j] = complex(_number(z[0], zp + "[0]"), _number(z[1], zp + "[1]"))
        ops.append(m)
    try:
        return KrausChannel(ops, tol=SPEC_TOL)
    except StateError as exc:
        raise SpecError(f"kraus: {exc}") from exc


def load_channel_spec(path) -> KrausChannel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from exc
    return parse_channel_spec(doc)


def channel_to_spec(channel: KrausChannel) -> dict:
    return {
        "d": channel.dim,
        "kraus": [[[[float(z.real), float(z.imag)] for z in row] for row in op]
                  for op in channel.operators],
    }


def save_channel_spec(channel: KrausChannel, path) -> None:
    Path(path).write_text(json.dumps(channel_to_spec(channel), indent=1) + "\n")


def fmt(x: float) -> str:
    """17 significant digits: float(fmt(x)) == x for every finite double."""
    return f"{x:.17g}"


def write_csv(header: Sequence[str], rows: Iterable[Sequence[float]], out=None) -> str:
    """Render rows as CSV (floats at 17 significant digits); write to ``out`` if given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def _cell(v: str):
    try:
        return float(v)
    except ValueError:
        return v


def read_csv(text: str) -> tuple[list[str], list[list]]:
    """Inverse of :func:`write_csv`; numeric cells come back as floats."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[_cell(v) for v in row] for row in reader]

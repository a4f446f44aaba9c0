"""Reading and writing boundary samples, rational test cases and plot tables."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import InputError, ParseError
from .oracle import RationalFunction
from .polynomial import ComplexPolynomial
from .spectrum import BoundarySamples

PathLike = Union[str, Path]


def parse_samples_csv(text: str) -> BoundarySamples:
    """Rows ``j,re,im`` for ``j = 0..M-1`` in order, after a ``j,re,im`` header."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ParseError("empty CSV input", line=1)
    header = [h.strip().lower() for h in rows[0]]
    if header != ["j", "re", "im"]:
        raise ParseError(f"expected header 'j,re,im', got {','.join(rows[0])!r}", line=1)
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        try:
            j = int(row[0])
            re, im = float(row[1]), float(row[2])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
        if j != len(values):
            raise ParseError(f"expected j={len(values)}, got j={j}", line=lineno)
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ParseError("non-finite sample", line=lineno)
        values.append(complex(re, im))
    return BoundarySamples(np.array(values, dtype=complex))


def samples_from_json(data: dict) -> BoundarySamples:
    try:
        M = int(data["grid_size"])
        values = np.array([complex(re, im) for re, im in data["values"]], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed sample JSON: {exc}") from exc
    if values.size != M:
        raise ParseError(f"grid_size {M} does not match {values.size} values")
    return BoundarySamples(values)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc


def read_input(path: PathLike):
    """Load a CSV/JSON sample file or a rational test case.

    Returns either :class:`BoundarySamples` (no generator attached) or a
    :class:`RationalFunction`.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv" or text.lstrip().lower().startswith("j,"):
        return parse_samples_csv(text)
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    if "values" in data:
        return samples_from_json(data)
    if "poles" in data or "zeros" in data:
        return RationalFunction.from_json(data)
    raise ParseError("JSON input has neither 'values' nor 'zeros'/'poles'")


def samples_to_csv(samples: BoundarySamples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "re", "im"])
    for j, v in enumerate(samples.values):
        w.writerow([j, repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def samples_to_json(samples: BoundarySamples) -> dict:
    return {
        "grid_size": samples.grid_size,
        "values": [[float(v.real), float(v.imag)] for v in samples.values],
    }


def plot_table(f: BoundarySamples, P: ComplexPolynomial, Q: ComplexPolynomial) -> np.ndarray:
    """Columns ``theta, Re f, Im f, arg(P f + Q)`` with the argument unwrapped.

    The first grid point is repeated at ``theta = 2 pi`` so the last row of
    the argument column shows the total change around the circle.
    """
    M = f.grid_size
    z = f.points
    comp = P(z) * f.values + Q(z)
    theta = 2 * np.pi * np.arange(M + 1) / M
    vals = np.append(f.values, f.values[0])
    phase = np.unwrap(np.angle(np.append(comp, comp[0])))
    return np.column_stack([theta, vals.real, vals.imag, phase])


def plot_table_csv(table: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "re_f", "im_f", "arg_composite"])
    for row in table:
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()

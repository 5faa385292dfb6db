"""Columnar sweep results and their byte-deterministic serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

FORMATS = ("csv", "json")


@dataclass
class Dataset:
    """Named numeric series plus a per-row flag and a provenance snapshot.

    Flags are short tokens ("" for clean rows); rows that could not be
    evaluated carry zeros in the numeric columns and a nonempty flag, never
    NaN.  Provenance holds the full effective parameter set of the run.
    """

    columns: dict[str, np.ndarray]
    flags: list[str] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.columns = {k: np.asarray(v, dtype=float) for k, v in self.columns.items()}
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have unequal lengths: {lengths}")
        n = lengths.pop() if lengths else 0
        if not self.flags:
            self.flags = [""] * n
        if len(self.flags) != n:
            raise ValueError(f"{len(self.flags)} flags for {n} rows")
        for name, col in self.columns.items():
            if np.isnan(col).any():
                raise ValueError(f"column {name} contains NaN; flag the row instead")

    @property
    def n_rows(self) -> int:
        return len(self.flags)

    def column(self, name: str) -> np.ndarray:
        return self.columns[name]


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".9g")


def emit_dataset(ds: Dataset, fmt: str = "csv") -> bytes:
    """Serialize a Dataset; identical inputs give identical bytes.

    CSV: '#'-prefixed provenance comment lines (sorted by key), a header of
    name_unit columns plus a trailing ``flag`` column, 9-significant-digit
    values, LF line endings.  JSON: ``{"provenance", "columns", "flag"}``.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "csv":
        lines = [f"# {k} = {v}" for k, v in sorted(ds.provenance.items())]
        names = list(ds.columns)
        lines.append(",".join(names + ["flag"]))
        cols = [ds.columns[n] for n in names]
        for i in range(ds.n_rows):
            cells = [_fmt(float(c[i])) for c in cols]
            cells.append(ds.flags[i])
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    obj = {
        "provenance": dict(sorted(ds.provenance.items())),
        "columns": {k: [float(x) for x in v] for k, v in ds.columns.items()},
        "flag": list(ds.flags),
    }
    return (json.dumps(obj, separators=(",", ":")) + "\n").encode("utf-8")

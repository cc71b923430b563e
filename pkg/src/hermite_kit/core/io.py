"""CSV import and export for grids, coefficient vectors and tables.

All files are UTF-8 text. Lines starting with ``#`` are headers; the
first header line of grid and coefficient files carries ``key=value``
metadata.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .basis import BasisSpec, CoefVec
from .grid import GridFn


class CSVFormatError(ValueError):
    """Malformed CSV input; the message names the offending line."""


def fmt(v):
    """Shortest round-trip text for a real or complex number."""
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        if v.imag == 0:
            return repr(v.real)
        return repr(v)
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _parse_number(tok, lineno):
    tok = tok.strip()
    try:
        return float(tok)
    except ValueError:
        try:
            return complex(tok)
        except ValueError:
            raise CSVFormatError(f"line {lineno}: cannot parse number {tok!r}") from None


def _parse_meta(line):
    meta = {}
    for part in line.lstrip("#").split():
        if "=" in part:
            k, v = part.split("=", 1)
            meta[k.strip()] = v.strip()
    return meta


def _read_rows(text):
    """Split text into (metadata, [(lineno, fields)])."""
    meta, rows = {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta.update(_parse_meta(line))
            continue
        rows.append((lineno, next(csv.reader([line]))))
    return meta, rows


def write_table(path, columns, rows, header=()):
    """Write a CSV with ``#`` header lines and a column-name line."""
    buf = io.StringIO()
    for h in header:
        buf.write(f"# {h}\n")
    buf.write("# " + ",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def gridfn_to_csv(f, path):
    """Export a GridFn; rows are ``x_1,...,x_n,w,value``."""
    weighted = f.weights is not None
    w = f.weights if weighted else np.zeros(f.size)
    head = [f"dim={f.dimension} weighted={'true' if weighted else 'false'}"]
    if f.precision is not None:
        head[0] += f" precision={f.precision}"
    cols = [f"x_{i + 1}" for i in range(f.dimension)] + ["w", "value"]
    rows = (list(p) + [wi, v] for p, wi, v in zip(f.points, w, f.values))
    write_table(path, cols, rows, head)


def gridfn_from_csv(path):
    """Import a GridFn.

    With ``weighted=false`` the weight column may be omitted; any weight
    values present are ignored.
    """
    text = Path(path).read_text(encoding="utf-8")
    meta, rows = _read_rows(text)
    if "dim" not in meta:
        raise CSVFormatError("line 1: missing 'dim=<n>' header")
    try:
        n = int(meta["dim"])
    except ValueError:
        raise CSVFormatError(f"line 1: bad dimension {meta['dim']!r}") from None
    weighted = meta.get("weighted", "true").lower() == "true"
    if not rows:
        raise CSVFormatError("no data rows")
    pts, ws, vals = [], [], []
    for lineno, fields in rows:
        if weighted and len(fields) != n + 2:
            raise CSVFormatError(f"line {lineno}: expected {n + 2} fields, got {len(fields)}")
        if not weighted and len(fields) not in (n + 1, n + 2):
            raise CSVFormatError(f"line {lineno}: expected {n + 1} or {n + 2} fields, got {len(fields)}")
        nums = [_parse_number(t, lineno) for t in fields]
        pts.append([float(np.real(v)) for v in nums[:n]])
        ws.append(float(np.real(nums[n])) if len(nums) == n + 2 else 0.0)
        vals.append(nums[-1])
    weights = np.array(ws) if weighted else None
    prec = int(meta["precision"]) if "precision" in meta else None
    return GridFn(np.array(pts), weights, np.array(vals), prec)


def coefvec_to_csv(c, path):
    """Export a CoefVec; rows are ``xi_1,...,xi_n,value``."""
    n = c.basis.dimension
    head = [f"dim={n} degree={c.basis.degree}"]
    cols = [f"xi_{i + 1}" for i in range(n)] + ["value"]
    rows = (list(ix) + [v] for ix, v in zip(c.basis.indices, c.values))
    write_table(path, cols, rows, head)


def coefvec_from_csv(path):
    """Import a CoefVec; missing indices are zero."""
    text = Path(path).read_text(encoding="utf-8")
    meta, rows = _read_rows(text)
    if not rows:
        raise CSVFormatError("no data rows")
    n = int(meta["dim"]) if "dim" in meta else len(rows[0][1]) - 1
    idx, vals = [], []
    for lineno, fields in rows:
        if len(fields) != n + 1:
            raise CSVFormatError(f"line {lineno}: expected {n + 1} fields, got {len(fields)}")
        try:
            idx.append([int(t) for t in fields[:n]])
        except ValueError:
            raise CSVFormatError(f"line {lineno}: multi-index entries must be integers") from None
        vals.append(_parse_number(fields[n], lineno))
    idx = np.array(idx, dtype=np.int64)
    if np.any(idx < 0):
        raise CSVFormatError("negative multi-index entry")
    K = int(meta["degree"]) if "degree" in meta else int(idx.sum(axis=1).max())
    basis = BasisSpec(n, K)
    arr = np.array(vals)
    out = np.zeros(basis.count, dtype=arr.dtype if arr.dtype.kind == "c" else float)
    pos = basis.positions(idx)
    if np.any(pos < 0):
        raise CSVFormatError("multi-index exceeds declared degree")
    out[pos] = arr
    return CoefVec(basis, out)

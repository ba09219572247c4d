"""Self-describing CSV, binary PGM and key=value config files.

Every CSV starts with one header line

    # kind=<what> grid=<t_min,dt,n> [scales=<a1,a2,...>] [key=value ...]

followed by data rows.  Series files hold one row per sample
(``t,value`` or ``t,re,im``); scalogram files hold one row per scale, one
column per translation.  Numbers are printed with 17 significant digits so
reading a file back reproduces the written floats exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cwt import Scalogram, ScaleRange
from .sampling import ComplexSeries, RealSeries, Series, TimeGrid

FLOAT_FMT = "%.17g"

# scalogram parts a CSV file can carry
PARTS = ("real", "imag", "modulus", "phase")


class FormatError(ValueError):
    pass


def grid_text(grid: TimeGrid) -> str:
    return f"{grid.t_min!r},{grid.dt!r},{grid.n}"


def parse_grid_text(text: str) -> TimeGrid:
    try:
        t_min, dt, n = text.split(",")
        return TimeGrid(float(t_min), float(dt), int(n))
    except ValueError as exc:
        raise FormatError(f"bad grid field {text!r}: {exc}") from None


def format_header(meta: dict) -> str:
    for key, val in meta.items():
        if any(c.isspace() for c in f"{key}{val}"):
            raise FormatError(f"header field {key}={val!r} contains whitespace")
    return "# " + " ".join(f"{k}={v}" for k, v in meta.items())


def parse_header(line: str) -> dict:
    if not line.startswith("#"):
        raise FormatError("missing '# key=value' header line")
    meta = {}
    for token in line[1:].split():
        key, sep, val = token.partition("=")
        if not sep:
            raise FormatError(f"header token {token!r} is not key=value")
        meta[key] = val
    return meta


def _write(target, header: str, rows: np.ndarray) -> None:
    """Write to a path, or to an already open text stream."""
    if hasattr(target, "write"):
        target.write(header + "\n")
        np.savetxt(target, rows, fmt=FLOAT_FMT, delimiter=",")
        return
    with Path(target).open("w", newline="\n") as fh:
        _write(fh, header, rows)


def _read(path) -> tuple[dict, np.ndarray]:
    path = Path(path)
    with path.open() as fh:
        meta = parse_header(fh.readline())
        rows = np.loadtxt(fh, delimiter=",", ndmin=2)
    return meta, rows


# -- series -------------------------------------------------------------------


def write_series_csv(path, series: Series, kind: str, **meta) -> None:
    """Write one series as ``t,value`` or ``t,re,im`` rows."""
    is_complex = isinstance(series, ComplexSeries)
    head = {"kind": kind, "grid": grid_text(series.grid), "parts": "re,im" if is_complex else "re"}
    head.update(meta)
    cols = [series.grid.times]
    if is_complex:
        cols += [series.values.real, series.values.imag]
    else:
        cols.append(series.values)
    _write(path, format_header(head), np.column_stack(cols))


def write_columns_csv(path, grid: TimeGrid, columns: dict, kind: str, **meta) -> None:
    """Several real columns sharing a grid: ``t,<name1>,<name2>,...``."""
    head = {"kind": kind, "grid": grid_text(grid), "columns": ",".join(columns)}
    head.update(meta)
    rows = np.column_stack([grid.times] + [np.asarray(c, dtype=float) for c in columns.values()])
    _write(path, format_header(head), rows)


def read_series_csv(path) -> tuple[Series, dict]:
    meta, rows = _read(path)
    grid = parse_grid_text(meta.get("grid", ""))
    if rows.shape[0] != grid.n:
        raise FormatError(f"{path}: expected {grid.n} rows, found {rows.shape[0]}")
    parts = meta.get("parts", "re")
    if parts == "re,im":
        if rows.shape[1] != 3:
            raise FormatError(f"{path}: complex series needs 3 columns")
        return ComplexSeries(grid, rows[:, 1] + 1j * rows[:, 2]), meta
    if rows.shape[1] != 2:
        raise FormatError(f"{path}: real series needs 2 columns")
    return RealSeries(grid, rows[:, 1]), meta


# -- scalograms ---------------------------------------------------------------


def scalogram_part(s: Scalogram, part: str) -> np.ndarray:
    if part == "real":
        return s.coeffs.real
    if part == "imag":
        return s.coeffs.imag
    if part == "modulus":
        return s.modulus()
    if part == "phase":
        return s.phase()
    raise ValueError(f"unknown scalogram part {part!r}; choose from {', '.join(PARTS)}")


def write_scalogram_csv(path, s: Scalogram, part: str = "real") -> None:
    head = {
        "kind": "scalogram",
        "part": part,
        "wavelet": s.wavelet,
        "analyzer": s.analyzer,
        "fc": repr(s.center_frequency),
        "grid": grid_text(s.grid),
        "scales": s.scales.to_text(),
    }
    _write(path, format_header(head), scalogram_part(s, part))


@dataclass(frozen=True, eq=False)
class ScalogramTable:
    """One part of a scalogram as read back from CSV."""

    part: str
    scales: ScaleRange
    grid: TimeGrid
    values: np.ndarray
    meta: dict = field(default_factory=dict)


def read_scalogram_csv(path) -> ScalogramTable:
    meta, rows = _read(path)
    if meta.get("kind") != "scalogram":
        raise FormatError(f"{path}: not a scalogram file")
    grid = parse_grid_text(meta.get("grid", ""))
    scales = ScaleRange(tuple(float(a) for a in meta["scales"].split(",")))
    if rows.shape != (len(scales), grid.n):
        raise FormatError(f"{path}: table {rows.shape} does not match {len(scales)} scales x {grid.n}")
    return ScalogramTable(meta.get("part", "real"), scales, grid, rows, meta)


def read_scalogram(real_path, imag_path=None) -> Scalogram:
    """Rebuild a :class:`Scalogram` from its real (and imaginary) CSV files."""
    re = read_scalogram_csv(real_path)
    if re.part != "real":
        raise FormatError(f"{real_path}: expected the real part, found {re.part}")
    coeffs = re.values.astype(complex)
    if imag_path is not None:
        im = read_scalogram_csv(imag_path)
        if im.part != "imag" or not im.grid.same_as(re.grid) or im.scales != re.scales:
            raise FormatError(f"{imag_path}: does not pair with {real_path}")
        coeffs = re.values + 1j * im.values
    return Scalogram(
        scales=re.scales,
        grid=re.grid,
        coeffs=coeffs,
        center_frequency=float(re.meta.get("fc", "nan")),
        is_complex=imag_path is not None,
        wavelet=re.meta.get("wavelet", ""),
        analyzer=re.meta.get("analyzer", ""),
    )


# -- PGM ----------------------------------------------------------------------


def pgm_pixels(modulus: np.ndarray) -> np.ndarray:
    """``floor(255 * |C| / max|C|)`` as uint8; an all-zero input stays black."""
    mag = np.abs(np.asarray(modulus, dtype=float))
    peak = mag.max() if mag.size else 0.0
    if peak == 0:
        return np.zeros(mag.shape, dtype=np.uint8)
    return np.floor(255 * mag / peak).astype(np.uint8)


def write_pgm(path, modulus: np.ndarray) -> None:
    """Binary (P5) 8-bit PGM; row 0 (top) is the first (smallest) scale."""
    pix = pgm_pixels(modulus)
    if pix.ndim != 2:
        raise ValueError("PGM needs a 2-D array")
    h, w = pix.shape
    with Path(path).open("wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(pix.tobytes())


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    fields_, pos = [], 0
    while len(fields_) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if pos == start or pos == len(data):
            raise FormatError(f"{path}: truncated PGM header")
        fields_.append(data[start:pos].decode("ascii", errors="replace"))
    if fields_[0] != "P5":
        raise FormatError(f"{path}: not a binary PGM")
    try:
        w, h, maxval = (int(v) for v in fields_[1:])
    except ValueError:
        raise FormatError(f"{path}: bad PGM header {fields_[1:]}") from None
    if maxval != 255:
        raise FormatError(f"{path}: only 8-bit PGM is supported")
    body = data[pos + 1 : pos + 1 + w * h]
    if len(body) != w * h:
        raise FormatError(f"{path}: expected {w * h} pixels, found {len(body)}")
    return np.frombuffer(body, dtype=np.uint8).reshape(h, w)


# -- config -------------------------------------------------------------------


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment, dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep or not key.strip():
            raise FormatError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        out[key.strip().lstrip("-").replace("-", "_")] = val.strip()
    return out

"""Point files: ``LABEL: c1 c2 ... cd`` per line, exact rationals, ``#`` comments."""

from __future__ import annotations

import re
from fractions import Fraction

from .chirotope import AFFINE, PointConfig
from .errors import DimensionMismatch, PointFileError

_LINE = re.compile(r"(\d+):((?: -?\d+(?:/\d+)?)+)")
_COORD = re.compile(r"-?\d+(/\d+)?")


def parse_points(text: str, mode: str = AFFINE) -> PointConfig:
    coords = []
    dim = None
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE.fullmatch(line)
        if not m:
            raise PointFileError(lineno, "expected 'LABEL: c1 c2 ... cd' with rational coordinates")
        label = int(m.group(1))
        if label != len(coords):
            raise PointFileError(lineno, f"expected label {len(coords)}, got {label}")
        toks = m.group(2).split()
        try:
            c = tuple(Fraction(t) for t in toks)
        except ZeroDivisionError:
            raise PointFileError(lineno, "zero denominator") from None
        c = tuple(int(x) if x.denominator == 1 else x for x in c)
        if dim is None:
            dim = len(c)
        elif len(c) != dim:
            raise DimensionMismatch(f"line {lineno}: expected {dim} coordinates, got {len(c)}")
        coords.append(c)
    if not coords:
        raise PointFileError(1, "no points")
    return PointConfig(tuple(coords), mode, dim)


def format_points(X: PointConfig) -> str:
    return "\n".join(f"{i}: " + " ".join(str(c) for c in p) for i, p in enumerate(X.coords)) + "\n"


def read_points(path: str, mode: str = AFFINE) -> PointConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read(), mode)

"""CSV serialisation of curves."""

from __future__ import annotations

import csv
from typing import Callable, Dict, Iterable, TextIO

from ..models import Curve

CSV_HEADER = ("maturity", "value", "label")


def write_curves_csv(curves: Iterable[Curve], stream: TextIO) -> int:
    """Write ``maturity,value,label`` rows, label-major then maturity-minor.

    Floats use ``repr`` (shortest round-trip form) so identical inputs give
    byte-identical files. Returns the number of data rows written.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    rows = 0
    for curve in curves:
        for maturity, value in curve.points:
            writer.writerow((repr(maturity), repr(value), curve.label))
            rows += 1
    return rows


CurveWriter = Callable[[Iterable[Curve], TextIO], int]

# output.format name -> writer
CURVE_WRITERS: Dict[str, CurveWriter] = {
    "csv": write_curves_csv,
}


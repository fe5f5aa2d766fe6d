"""Experiment reports and their deterministic serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

from .. import __version__

FORMATS = ("text", "csv", "json", "plotdata")

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {CONSISTENT: 0, INCONSISTENT: 2, INCONCLUSIVE: 3}


class UsageError(ValueError):
    """Bad request from the caller, such as an unknown output format."""


_ROUNDING = {"floor": ROUND_FLOOR, "ceil": ROUND_CEILING, "nearest": ROUND_HALF_EVEN}


def sci(x: Fraction | int | None, digits: int = 15, rounding: str = "nearest") -> str | None:
    """Scientific-notation string of an exact rational with directed rounding.

    ``floor`` and ``ceil`` make a printed pair still enclose the exact interval.
    """
    if x is None:
        return None
    x = Fraction(x)
    ctx = Context(prec=digits, rounding=_ROUNDING[rounding])
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return f"{d:.{digits - 1}e}"


def rat(x: Fraction | int | None) -> str | None:
    return None if x is None else str(Fraction(x))


@dataclass(frozen=True)
class ExperimentReport:
    """A table of per-n rows plus a verdict.

    Cells are JSON primitives: exact rationals are "p/q" strings, certified
    reals are pairs of directed-rounded decimal strings.  ``series`` names
    the numeric columns that ``plotdata`` emits against ``x_column``.
    """

    experiment: str
    parameters: dict
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    status: str
    verdict: str
    notes: tuple[str, ...] = ()
    series: tuple[str, ...] = ()
    x_column: str = "n"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError("row length does not match the columns")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, r)) for r in self.rows]

    def to_dict(self) -> dict:
        meta = {"version": __version__}
        meta.update(self.metadata)
        return {
            "experiment": self.experiment,
            "parameters": self.parameters,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "status": self.status,
            "verdict": self.verdict,
            "notes": list(self.notes),
            "series": list(self.series),
            "x_column": self.x_column,
            "metadata": meta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentReport:
        meta = dict(d["metadata"])
        meta.pop("version", None)
        return cls(d["experiment"], dict(d["parameters"]), tuple(d["columns"]),
                   tuple(tuple(r) for r in d["rows"]), d["status"], d["verdict"],
                   tuple(d["notes"]), tuple(d["series"]), d["x_column"], meta)

    @classmethod
    def from_json(cls, text: str) -> ExperimentReport:
        return cls.from_dict(json.loads(text))


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(r: ExperimentReport, fmt: str) -> str:
    """Serialize a report; identical reports give identical text."""
    if fmt == "json":
        return json.dumps(r.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(r.columns)
        for row in r.rows:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "plotdata":
        return _plotdata(r)
    if fmt == "text":
        return _text(r)
    raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def _plotdata(r: ExperimentReport) -> str:
    # one block per series, blocks separated by two blank lines
    xi = r.columns.index(r.x_column)
    blocks = []
    for name in r.series:
        i = r.columns.index(name)
        lines = [f"# {r.experiment}: {name} vs {r.x_column}"]
        for row in r.rows:
            if row[i] is None or isinstance(row[i], bool):
                continue
            lines.append(f"{row[xi]} {row[i]}")
        blocks.append("\n".join(lines))
    return "\n\n\n".join(blocks) + "\n"


def _text(r: ExperimentReport) -> str:
    out = [f"experiment: {r.experiment}"]
    for k in sorted(r.parameters):
        out.append(f"  {k} = {r.parameters[k]}")
    cells = [list(r.columns)] + [[_csv_cell(v) for v in row] for row in r.rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(r.columns))]
    for c in cells:
        out.append("  ".join(v.rjust(w) for v, w in zip(c, widths)).rstrip())
    for note in r.notes:
        out.append(f"note: {note}")
    out.append(f"status: {r.status}")
    out.append(f"verdict: {r.verdict}")
    return "\n".join(out) + "\n"


def report_emit(r: ExperimentReport, fmt: str) -> bytes:
    return emit(r, fmt).encode("utf-8")

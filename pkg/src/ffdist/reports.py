"""BoundReport: one checked inequality ``lhs <= rhs``, and its CSV form."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

CSV_COLUMNS = ("label", "q", "a", "b", "|E|", "lhs", "rhs", "slack", "pass")
REL_TOL = 1e-9


def fmt_num(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class BoundReport:
    label: str
    lhs: int | float | Fraction
    rhs: float
    q: int | None = None
    a: int | None = None
    b: int | None = None
    size: int | None = None
    extension: bool = False

    @property
    def slack(self) -> float:
        return float(self.rhs) - float(self.lhs)

    @property
    def passed(self) -> bool:
        # rhs may be irrational (lambda = 2 sqrt q); lhs is exact
        return float(self.lhs) <= float(self.rhs) + REL_TOL * max(1.0, abs(float(self.rhs)))

    def row(self) -> list[str]:
        label = self.label + (" [extension]" if self.extension else "")
        opt = lambda v: "" if v is None else str(v)
        return [label, opt(self.q), opt(self.a), opt(self.b), opt(self.size),
                fmt_num(self.lhs), fmt_num(self.rhs), fmt_num(self.slack),
                "true" if self.passed else "false"]

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.label}: lhs={fmt_num(self.lhs)} rhs={fmt_num(self.rhs)}"


def write_reports_csv(reports, handle) -> None:
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.row())

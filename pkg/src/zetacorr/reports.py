"""Measured-versus-predicted comparison records."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class AsymptoticReport:
    """A measured statistic next to an asymptotic main term.

    ``passed`` is ``rel_err <= tolerance``.  ``error_scale`` is the size of
    the error term in the corresponding asymptotic estimate, evaluated at
    the run's parameters with unit implied constant.

    ``mode`` picks how rel_err is formed:
      relative  |measured - predicted| / |predicted|
      factor    max(measured/predicted, predicted/measured) - 1, so a factor-f
                check has tolerance f - 1
      upper     measured / predicted, with ``predicted`` an upper threshold and
                tolerance 1
    """

    name: str
    measured: float
    predicted: float
    tolerance: float = math.inf
    error_scale: float = math.nan
    provenance: dict = field(default_factory=dict)
    flags: tuple = ()
    mode: str = "relative"

    @property
    def rel_err(self):
        m, p = self.measured, self.predicted
        if self.mode == "factor":
            if m <= 0 or p <= 0:
                return math.inf
            return max(m / p, p / m) - 1
        if self.mode == "upper":
            return m / p if p > 0 else math.inf
        if self.predicted == 0:
            return 0.0 if self.measured == 0 else math.inf
        return abs(self.measured - self.predicted) / abs(self.predicted)

    @property
    def passed(self):
        return self.rel_err <= self.tolerance

    def as_dict(self):
        d = asdict(self)
        d["flags"] = list(self.flags)
        d["rel_err"] = self.rel_err
        d["pass"] = self.passed
        return d


def make_report(name, measured, predicted, tolerance=math.inf, error_scale=math.nan, flags=(), mode="relative", **provenance):
    if mode not in ("relative", "factor", "upper"):
        raise ValueError(f"unknown report mode {mode!r}")
    return AsymptoticReport(
        name=name,
        measured=float(measured),
        predicted=float(predicted),
        tolerance=float(tolerance),
        error_scale=float(error_scale),
        provenance=provenance,
        flags=tuple(flags),
        mode=mode,
    )


def check_report(name, ok, **provenance):
    """A yes/no check as a report: measured 1 or 0 against 1 at zero tolerance."""
    return make_report(name, 1.0 if ok else 0.0, 1.0, tolerance=0.0, **provenance)

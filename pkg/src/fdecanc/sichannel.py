"""Self-interference channel responses: CSV load/save and synthesis.

A measured antenna-interface response is a CSV with header ``freq_hz,re,im``.
When no measurement is available, a multipath synthesizer provides a
frequency-selective stand-in with a prescribed mean isolation and bulk delay.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .core import ComplexResponse, FrequencyGrid, db_to_linear
from .errors import ChannelFormatError, InvalidArgumentError

DEFAULT_REFLECTIONS = ((-10.0, 20e-9), (-16.0, 45e-9))


@dataclass(frozen=True)
class SynthChannelSpec:
    """Parameters of the synthetic multipath SI channel."""

    isolation_db: float = -20.0
    base_delay_s: float = 10e-9
    reflections: tuple = DEFAULT_REFLECTIONS
    seed: int = 0

    def __post_init__(self):
        if not (self.isolation_db < 0):
            raise InvalidArgumentError("isolation_db must be negative")
        if not (self.base_delay_s >= 0):
            raise InvalidArgumentError("base_delay_s must be nonnegative")
        refl = tuple((float(a), float(d)) for a, d in self.reflections)
        for a, _ in refl:
            if not (a < 0):
                raise InvalidArgumentError("reflection amplitudes must be < 0 dB")
        object.__setattr__(self, "reflections", refl)


def synth_si_channel(spec: SynthChannelSpec, grid: FrequencyGrid) -> ComplexResponse:
    """Direct path plus discrete echoes:

    H(f) = lin(iso) e^{-j2pi f tau0} (1 + sum_p lin(a_p) e^{-j2pi f d_p})
    """
    f = grid.points
    h = np.ones(grid.count, dtype=complex)
    for a_db, d_s in spec.reflections:
        h = h + db_to_linear(a_db) * np.exp(-2j * np.pi * f * d_s)
    h = db_to_linear(spec.isolation_db) * np.exp(-2j * np.pi * f * spec.base_delay_s) * h
    return ComplexResponse(grid, h)


def save_si_channel(path, r: ComplexResponse) -> None:
    """Write the canonical CSV; values at 17 significant digits round-trip."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("freq_hz,re,im\n")
        for f, v in zip(r.grid.points, r.values):
            fh.write("%.17g,%.17g,%.17g\n" % (f, v.real, v.imag))


def load_si_channel(path) -> ComplexResponse:
    """Load a channel CSV; rows must be strictly increasing in frequency."""
    freqs = []
    vals = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ChannelFormatError("empty file") from None
        if [c.strip().lower() for c in header] != ["freq_hz", "re", "im"]:
            raise ChannelFormatError("expected header 'freq_hz,re,im'", line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ChannelFormatError("expected 3 columns", line=lineno)
            try:
                f = float(row[0])
                re = float(row[1])
                im = float(row[2])
            except ValueError:
                raise ChannelFormatError("non-numeric field", line=lineno) from None
            if not (np.isfinite(f) and np.isfinite(re) and np.isfinite(im)):
                raise ChannelFormatError("non-finite field", line=lineno)
            if freqs and f <= freqs[-1]:
                raise ChannelFormatError(
                    "frequencies must be strictly increasing", line=lineno
                )
            freqs.append(f)
            vals.append(complex(re, im))
    if len(freqs) < 2:
        raise ChannelFormatError("need at least 2 data rows")
    try:
        grid = FrequencyGrid(np.array(freqs))
    except InvalidArgumentError as exc:
        raise ChannelFormatError(str(exc)) from None
    return ComplexResponse(grid, np.array(vals))

"""Incident-wave parameters and far-field patterns, with file round-trips."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WaveParams:
    """One incident plane wave: wavenumber k > 0 and unit direction omega."""

    k: float
    omega: np.ndarray

    def __post_init__(self):
        if not (self.k > 0.0):
            raise ValueError("wavenumber k must be positive")
        w = np.asarray(self.omega, dtype=float)
        norm = np.linalg.norm(w)
        if abs(norm - 1.0) > 1e-12:
            w = w / norm
        object.__setattr__(self, "omega", w)
        if abs(np.linalg.norm(self.omega) - 1.0) > 1e-14:
            raise ValueError("omega must be a unit vector")

    @property
    def wavelength(self) -> float:
        return 2.0 * np.pi / self.k


@dataclass(frozen=True)
class FarFieldPattern:
    """Far-field samples u_inf at M uniformly spaced directions.

    angles[m] = 2*pi*m/M; directions are (cos, sin) of those angles.
    """

    angles: np.ndarray
    values: np.ndarray
    wave: WaveParams

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if len(a) < 64:
            raise ValueError("need at least 64 far-field directions")
        if len(a) != len(v):
            raise ValueError("angles and values must have equal length")
        spacing = np.diff(a)
        if not np.allclose(spacing, spacing[0], atol=1e-12):
            raise ValueError("far-field directions must be uniformly spaced")
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "values", v)

    @property
    def directions(self) -> np.ndarray:
        return np.column_stack([np.cos(self.angles), np.sin(self.angles)])

    @property
    def n_directions(self) -> int:
        return len(self.angles)


def uniform_angles(m: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(m) / m


def relative_l2_distance(a: FarFieldPattern, b: FarFieldPattern) -> float:
    """Relative L2 distance over uniform directions (trapezoid weights).

    On a uniform periodic grid the trapezoid weights are constant, so the
    weighting cancels in the ratio.
    """
    if a.n_directions != b.n_directions:
        raise ValueError("patterns must share the direction grid")
    na = np.linalg.norm(a.values)
    nb = np.linalg.norm(b.values)
    denom = max(na, nb)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(a.values - b.values) / denom)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------
def far_field_to_csv(p: FarFieldPattern) -> str:
    """CSV with 17-significant-digit floats; header records k and omega."""
    buf = io.StringIO()
    buf.write(f"# k={p.wave.k:.17g} omega={p.wave.omega[0]:.17g},{p.wave.omega[1]:.17g}\n")
    buf.write("angle_radians,re_uinf,im_uinf\n")
    for ang, val in zip(p.angles, p.values):
        buf.write(f"{ang:.17g},{val.real:.17g},{val.imag:.17g}\n")
    return buf.getvalue()


def far_field_from_csv(text: str) -> FarFieldPattern:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    header = lines[0]
    if not header.startswith("#"):
        raise ValueError("missing far-field CSV header")
    fields = dict(tok.split("=", 1) for tok in header[1:].split())
    k = float(fields["k"])
    omega = np.array([float(c) for c in fields["omega"].split(",")])
    rows = [ln.split(",") for ln in lines[2:]]
    angles = np.array([float(r[0]) for r in rows])
    values = np.array([complex(float(r[1]), float(r[2])) for r in rows])
    return FarFieldPattern(angles=angles, values=values, wave=WaveParams(k=k, omega=omega))


def far_field_to_json(p: FarFieldPattern) -> str:
    doc = {
        "k": p.wave.k,
        "omega": p.wave.omega.tolist(),
        "angles": p.angles.tolist(),
        "re": p.values.real.tolist(),
        "im": p.values.imag.tolist(),
    }
    return json.dumps(doc, sort_keys=True)


def far_field_from_json(text: str) -> FarFieldPattern:
    doc = json.loads(text)
    return FarFieldPattern(
        angles=np.asarray(doc["angles"]),
        values=np.asarray(doc["re"]) + 1j * np.asarray(doc["im"]),
        wave=WaveParams(k=doc["k"], omega=np.asarray(doc["omega"])),
    )

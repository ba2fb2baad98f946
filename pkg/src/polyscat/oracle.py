"""Reference solutions: sound-soft disk modal series and synthetic fields.

The disk series validates the boundary-integral solver; the synthetic
fields (exact real solutions of Delta v + k^2 v = 0) drive the nodal and
path machinery tests.  The disk is used strictly as an accuracy oracle,
never as an experiment scatterer.

Disk conventions, incident wave e^{ik omega.x}, polar angle phi measured
from omega:

    u_inc = sum_n i^n J_n(kr) e^{in phi}
    u_sc  = -sum_n i^n (J_n(ka)/H_n(ka)) H_n(kr) e^{in phi}
    u_inf(xhat) = -e^{-i pi/4} sqrt(2/(pi k)) sum_n (J_n(ka)/H_n(ka)) e^{in phi}
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KaTooLarge, PointInsideDisk
from .fields import FarFieldPattern, WaveParams, uniform_angles
from .specfun import bessel_j, hankel1

KA_MAX = 30.0


def _truncation_order(ka: float) -> int:
    if ka > KA_MAX:
        raise KaTooLarge(f"disk series validated only for ka <= {KA_MAX}, got {ka}")
    return int(np.ceil(ka)) + 20


def _mode_ratios(k: float, a: float, n_max: int) -> np.ndarray:
    """b_n = J_n(ka) / H_n^(1)(ka) for n = 0..n_max."""
    ka = k * a
    return np.array([bessel_j(n, ka) / hankel1(n, ka) for n in range(n_max + 1)])


def disk_far_field(k: float, a: float, omega, M: int, n_max: int | None = None) -> FarFieldPattern:
    """Far-field pattern of the sound-soft disk of radius a at the origin."""
    wave = WaveParams(k=k, omega=omega)
    if n_max is None:
        n_max = _truncation_order(k * a)
    b = _mode_ratios(k, a, n_max)
    angles = uniform_angles(M)
    theta0 = np.arctan2(wave.omega[1], wave.omega[0])
    phi = angles - theta0
    series = np.full(M, b[0], dtype=complex)
    for n in range(1, n_max + 1):
        series += 2.0 * b[n] * np.cos(n * phi)
    prefactor = -np.exp(-1j * np.pi / 4.0) * np.sqrt(2.0 / (np.pi * k))
    return FarFieldPattern(angles=angles, values=prefactor * series, wave=wave)


def disk_far_field_at(k: float, a: float, omega, directions) -> np.ndarray:
    """Far field at arbitrary unit directions (same series, no grid)."""
    wave = WaveParams(k=k, omega=omega)
    n_max = _truncation_order(k * a)
    b = _mode_ratios(k, a, n_max)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    theta0 = np.arctan2(wave.omega[1], wave.omega[0])
    phi = np.arctan2(dirs[:, 1], dirs[:, 0]) - theta0
    series = np.full(len(dirs), b[0], dtype=complex)
    for n in range(1, n_max + 1):
        series += 2.0 * b[n] * np.cos(n * phi)
    return -np.exp(-1j * np.pi / 4.0) * np.sqrt(2.0 / (np.pi * k)) * series


def disk_scattered_field(k: float, a: float, omega, x, n_max: int | None = None):
    """Scattered field u_sc of the sound-soft disk, outside or on the circle.

    The scattered modal series converges once n exceeds ka; the incident
    wave is never series-expanded (its Jacobi-Anger tail would need n ~ kr
    terms at radius r).
    """
    wave = WaveParams(k=k, omega=omega)
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    single = np.asarray(x).ndim == 1
    r = np.linalg.norm(pts, axis=1)
    if np.any(r < a * (1.0 - 1e-12)):
        raise PointInsideDisk("evaluation point inside the disk")
    if n_max is None:
        n_max = _truncation_order(k * a)
    b = _mode_ratios(k, a, n_max)
    theta0 = np.arctan2(wave.omega[1], wave.omega[0])
    phi = np.arctan2(pts[:, 1], pts[:, 0]) - theta0
    kr = k * r
    out = np.zeros(len(pts), dtype=complex)
    for n in range(n_max + 1):
        radial = -(1j**n) * b[n] * np.atleast_1d(hankel1(n, kr))
        out += radial if n == 0 else 2.0 * radial * np.cos(n * phi)
    return complex(out[0]) if single else out


def disk_total_field(k: float, a: float, omega, x, n_max: int | None = None):
    """Total field u = e^{ik omega.x} + u_sc outside (or on) the circle."""
    wave = WaveParams(k=k, omega=omega)
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    single = np.asarray(x).ndim == 1
    inc = np.exp(1j * k * pts @ wave.omega)
    out = inc + np.atleast_1d(disk_scattered_field(k, a, omega, pts, n_max=n_max))
    return complex(out[0]) if single else out


# ---------------------------------------------------------------------------
# synthetic real Helmholtz fields
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SyntheticField:
    """Exact real solution of the Helmholtz equation.

    kind: "plane_standing" (sin(k n.x)), "radial_bessel" (J_0(k|x|)),
    or "sum_of_plane_waves" (sum_j Re(c_j e^{ik d_j.x})).
    """

    kind: str
    k: float
    direction: np.ndarray | None = None
    wave_directions: np.ndarray | None = None
    coefficients: np.ndarray | None = None


def plane_standing(k: float, direction) -> SyntheticField:
    d = np.asarray(direction, dtype=float)
    return SyntheticField(kind="plane_standing", k=k, direction=d / np.linalg.norm(d))


def radial_bessel(k: float) -> SyntheticField:
    return SyntheticField(kind="radial_bessel", k=k)


def sum_of_plane_waves(k: float, directions, coefficients) -> SyntheticField:
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    dirs = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
    coefs = np.asarray(coefficients, dtype=complex)
    if len(dirs) != len(coefs):
        raise ValueError("one coefficient per direction")
    return SyntheticField(
        kind="sum_of_plane_waves", k=k, wave_directions=dirs, coefficients=coefs
    )


def synthetic_eval(f: SyntheticField, x):
    """Exact value and gradient of a synthetic field.

    Returns (values, gradients) with shapes (m,) and (m, 2); scalars for a
    single point.
    """
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    single = np.asarray(x).ndim == 1
    k = f.k
    if f.kind == "plane_standing":
        phase = k * (pts @ f.direction)
        vals = np.sin(phase)
        grads = k * np.cos(phase)[:, None] * f.direction[None, :]
    elif f.kind == "radial_bessel":
        r = np.linalg.norm(pts, axis=1)
        vals = bessel_j(0, k * r)
        with np.errstate(invalid="ignore", divide="ignore"):
            unit = np.where(r[:, None] > 0.0, pts / np.maximum(r, 1e-300)[:, None], 0.0)
        grads = -k * np.atleast_1d(bessel_j(1, k * r))[:, None] * unit
    elif f.kind == "sum_of_plane_waves":
        vals = np.zeros(len(pts))
        grads = np.zeros((len(pts), 2))
        for d, c in zip(f.wave_directions, f.coefficients):
            phase = np.exp(1j * k * (pts @ d))
            vals += np.real(c * phase)
            grads += np.real(1j * k * c * phase)[:, None] * d[None, :]
    else:
        raise ValueError(f"unknown synthetic field kind {f.kind!r}")
    if single:
        return float(vals[0]), grads[0]
    return vals, grads


def synthetic_field_eval(f: SyntheticField):
    """Adapter to the complex field-evaluation interface used by sampling."""

    def evaluate(pts):
        vals, grads = synthetic_eval(f, np.atleast_2d(pts))
        return vals.astype(complex), grads.astype(complex)

    return evaluate

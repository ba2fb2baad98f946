"""Panel quadrature for the boundary integral solver.

Polygon boundaries are split into composite Gauss-Legendre panels with
geometric grading toward every corner (corner singularities of the
density are algebraic, so panel sizes shrink geometrically down to a
resolution-dependent sliver).  Three integration regimes:

  * far targets: plain Nystrom product quadrature,
  * targets on the same edge line: exact treatment of the ln|s-t|
    singularity via Legendre moments of the log kernel,
  * close targets off the line (corner regions, field points near the
    boundary): adaptive panel subdivision with barycentric interpolation
    of the density back to the parent panel nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import Scatterer, boundary_cells

PANEL_ORDER = 16
GRADING_RATIO = 3.0
NEAR_FACTOR = 0.8  # subdivision when dist(target, panel) < NEAR_FACTOR * panel length
COLINEAR_MOMENT_SPAN = 1.2  # scaled |tau| range served by the log-moment rule
MAX_SUBDIVISION_DEPTH = 60


@lru_cache(maxsize=8)
def gauss_legendre(p: int):
    x, w = np.polynomial.legendre.leggauss(p)
    return x, w


@lru_cache(maxsize=8)
def legendre_eval_matrix(p: int) -> np.ndarray:
    """P[n, q] = P_n(tau_q) at the p Gauss-Legendre nodes, n = 0..p-1."""
    tau, _ = gauss_legendre(p)
    P = np.empty((p, p))
    P[0] = 1.0
    P[1] = tau
    for n in range(1, p - 1):
        P[n + 1] = ((2 * n + 1) * tau * P[n] - n * P[n - 1]) / (n + 1)
    return P


@lru_cache(maxsize=8)
def barycentric_weights(p: int) -> np.ndarray:
    tau, _ = gauss_legendre(p)
    lam = np.ones(p)
    for q in range(p):
        lam[q] = 1.0 / np.prod(tau[q] - np.delete(tau, q))
    return lam


def lagrange_interp_matrix(fine: np.ndarray, p: int) -> np.ndarray:
    """Barycentric interpolation matrix from p GL nodes to `fine` points."""
    tau, _ = gauss_legendre(p)
    lam = barycentric_weights(p)
    diff = fine[:, None] - tau[None, :]
    exact = np.isclose(diff, 0.0, atol=1e-15)
    diff = np.where(exact, 1.0, diff)
    terms = lam[None, :] / diff
    M = terms / np.sum(terms, axis=1, keepdims=True)
    rows_exact = np.any(exact, axis=1)
    if np.any(rows_exact):
        M[rows_exact] = 0.0
        M[np.where(rows_exact)[0], np.argmax(exact[rows_exact], axis=1)] = 1.0
    return M


def log_moments(x: float, p: int) -> np.ndarray:
    """R_n(x) = int_{-1}^{1} P_n(t) ln|t - x| dt for n = 0..p-1.

    Uses R_n = 2 (Q_{n+1} - Q_{n-1}) / (2n+1) with Q_n the Legendre
    functions of the second kind; stable for |x| <~ 1.5, which covers the
    colinear targets routed here.
    """
    R = np.empty(p)

    def xlogx(z):
        return z * np.log(abs(z)) if z != 0.0 else 0.0

    R[0] = xlogx(1.0 + x) + xlogx(1.0 - x) - 2.0
    if p == 1:
        return R
    Q = np.empty(p + 1)
    if abs(x) == 1.0:
        raise ValueError("log moments undefined exactly at panel endpoints")
    Q[0] = 0.5 * np.log(abs((1.0 + x) / (1.0 - x)))
    Q[1] = x * Q[0] - 1.0
    for n in range(1, p):
        Q[n + 1] = ((2 * n + 1) * x * Q[n] - n * Q[n - 1]) / (n + 1)
    for n in range(1, p):
        R[n] = 2.0 * (Q[n + 1] - Q[n - 1]) / (2 * n + 1)
    return R


def log_kernel_weights(t0: float, t1: float, t: float, p: int) -> np.ndarray:
    """Weights w_q with sum_q w_q g(s_q) ~= int_{t0}^{t1} ln|s-t| g(s) ds.

    Exact when g is a polynomial of degree < p on the panel; t may lie on
    or near the panel.
    """
    tau, glw = gauss_legendre(p)
    half = 0.5 * (t1 - t0)
    tau_t = (2.0 * t - t0 - t1) / (t1 - t0)
    R = log_moments(tau_t, p)
    P = legendre_eval_matrix(p)
    coeff = (2.0 * np.arange(p) + 1.0) / 2.0
    inner = (coeff * R) @ P  # shape (p,): sum_n (2n+1)/2 R_n P_n(tau_q)
    return half * glw * (np.log(half) + inner)


# ---------------------------------------------------------------------------
# panel mesh over a polygonal boundary
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class EdgeGeom:
    origin: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    length: float


@dataclass(frozen=True)
class Panel:
    edge: int
    t0: float
    t1: float
    lo: int  # node index range [lo, hi) in the flat arrays
    hi: int

    @property
    def length(self) -> float:
        return self.t1 - self.t0


@dataclass
class PanelMesh:
    """Flat node arrays plus per-panel metadata for a polygonal boundary."""

    nodes: np.ndarray  # (N, 2)
    normals: np.ndarray  # (N, 2)
    weights: np.ndarray  # (N,)
    params: np.ndarray  # (N,) arclength along the owning edge
    panels: list[Panel]
    edges: list[EdgeGeom]
    order: int

    @property
    def n_nodes(self) -> int:
        return len(self.weights)

    def panel_segment(self, panel: Panel) -> tuple[np.ndarray, np.ndarray]:
        e = self.edges[panel.edge]
        return e.origin + panel.t0 * e.tangent, e.origin + panel.t1 * e.tangent


def graded_breakpoints(length: float, h_mid: float, sliver: float,
                       ratio: float = GRADING_RATIO) -> np.ndarray:
    """Panel breakpoints on [0, length]: geometric ladders into both corners,
    near-uniform panels of size <= h_mid in between."""
    h_mid = min(h_mid, length / 2.0)
    sliver = min(sliver, h_mid / ratio**2)
    ladder = [0.0, sliver]
    while True:
        nxt = ladder[-1] * ratio
        if nxt - ladder[-1] > h_mid or nxt > 0.5 * length:
            break
        ladder.append(nxt)
    left = np.array(ladder)
    right = length - left[::-1]
    lo, hi = left[-1], right[0]
    n_mid = max(1, int(np.ceil((hi - lo) / h_mid)))
    mids = np.linspace(lo, hi, n_mid + 1)
    bps = np.concatenate([left[:-1], mids, right[1:]])
    return bps


def sliver_length(wavelength: float, nodes_per_wavelength: float) -> float:
    """Corner ladder termination scale; shrinks quickly with resolution so
    the corner contribution stays below the target far-field accuracy."""
    return wavelength * float(nodes_per_wavelength) ** -7.0


def build_panel_mesh(s: Scatterer, k: float, nodes_per_wavelength: float,
                     order: int = PANEL_ORDER) -> PanelMesh:
    cells = boundary_cells(s)
    wavelength = 2.0 * np.pi / k
    h_mid = order * wavelength / nodes_per_wavelength
    sliver = sliver_length(wavelength, nodes_per_wavelength)
    tau, glw = gauss_legendre(order)

    edges: list[EdgeGeom] = []
    panels: list[Panel] = []
    node_chunks, normal_chunks, weight_chunks, param_chunks = [], [], [], []
    index = 0
    for ci, cell in enumerate(cells):
        e = EdgeGeom(origin=cell.segment[0], tangent=cell.tangent,
                     normal=cell.normal, length=cell.length)
        edges.append(e)
        bps = graded_breakpoints(e.length, h_mid, sliver)
        for t0, t1 in zip(bps[:-1], bps[1:]):
            half = 0.5 * (t1 - t0)
            t_nodes = 0.5 * (t0 + t1) + half * tau
            node_chunks.append(e.origin + t_nodes[:, None] * e.tangent[None, :])
            normal_chunks.append(np.tile(e.normal, (order, 1)))
            weight_chunks.append(glw * half)
            param_chunks.append(t_nodes)
            panels.append(Panel(edge=ci, t0=t0, t1=t1, lo=index, hi=index + order))
            index += order
    if not panels:
        zero2 = np.zeros((0, 2))
        return PanelMesh(nodes=zero2, normals=zero2, weights=np.zeros(0),
                         params=np.zeros(0), panels=[], edges=[], order=order)
    return PanelMesh(
        nodes=np.vstack(node_chunks),
        normals=np.vstack(normal_chunks),
        weights=np.concatenate(weight_chunks),
        params=np.concatenate(param_chunks),
        panels=panels,
        edges=edges,
        order=order,
    )


# ---------------------------------------------------------------------------
# near-singular quadrature by adaptive subdivision
# ---------------------------------------------------------------------------
def _point_segment_distance(pt, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else float(np.clip((pt - a) @ ab / denom, 0.0, 1.0))
    return float(np.linalg.norm(pt - (a + t * ab)))


def adaptive_leaves(mesh: PanelMesh, panel: Panel, target: np.ndarray) -> list[tuple[float, float]]:
    """Parameter sub-intervals whose length stays below their distance to the
    target (up to NEAR_FACTOR), so plain GL converges fast on each."""
    e = mesh.edges[panel.edge]
    leaves = []
    stack = [(panel.t0, panel.t1, 0)]
    while stack:
        a, b, depth = stack.pop()
        pa = e.origin + a * e.tangent
        pb = e.origin + b * e.tangent
        dist = _point_segment_distance(target, pa, pb)
        if (b - a) <= max(NEAR_FACTOR * dist, 0.0) or depth >= MAX_SUBDIVISION_DEPTH:
            leaves.append((a, b))
        else:
            mid = 0.5 * (a + b)
            stack.append((a, mid, depth + 1))
            stack.append((mid, b, depth + 1))
    return leaves


def near_panel_quadrature(mesh: PanelMesh, panel: Panel, target: np.ndarray):
    """Refined quadrature for one (target, panel) pair.

    Returns (points (F,2), weights (F,), normals (F,2), interp (F,p)) such
    that sum_f w_f K(target, y_f) interp[f, q] approximates the panel
    integral of K against the q-th Lagrange density basis function.
    """
    e = mesh.edges[panel.edge]
    tau, glw = gauss_legendre(mesh.order)
    leaves = adaptive_leaves(mesh, panel, target)
    params, weights = [], []
    for a, b in leaves:
        half = 0.5 * (b - a)
        params.append(0.5 * (a + b) + half * tau)
        weights.append(glw * half)
    params = np.concatenate(params)
    weights = np.concatenate(weights)
    pts = e.origin + params[:, None] * e.tangent[None, :]
    normals = np.tile(e.normal, (len(params), 1))
    fine_tau = (2.0 * params - panel.t0 - panel.t1) / (panel.t1 - panel.t0)
    interp = lagrange_interp_matrix(fine_tau, mesh.order)
    return pts, weights, normals, interp

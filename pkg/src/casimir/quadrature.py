"""Adaptive quadrature and Matsubara summation with explicit convergence control.

Integration uses (G7, K15) Gauss-Kronrod panels with batched, vectorized
integrand evaluation: the integrand is always called with a y array (all
nodes of all panels refined in one step), which is what lets the compiled
kernels in :mod:`casimir._kernels` pay off.  The semi-infinite upper limit is
cut at lower + y_cutoff_margin; every integrand here carries e^{-y}, so the
truncated tail is below e^{-margin} times a small polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ConvergenceSpec",
    "ConvergenceReport",
    "ConvergenceError",
    "QuadResult",
    "integrate_y",
    "integrate_2d",
    "matsubara_sum",
]


@dataclass(frozen=True)
class ConvergenceSpec:
    """Tolerances and budgets shared by the integration and summation loops.

    rel_tol is the target relative accuracy; abs_floor is the absolute error
    floor below which convergence is declared regardless (and which keeps
    identically-zero integrands from spinning); max_matsubara caps the
    reflection-sum index l; y_cutoff_margin sets the finite upper limit
    lower + margin of the y integrals; max_panels bounds the adaptive
    refinement of a single integral.
    """

    rel_tol: float = 1e-10
    abs_floor: float = 1e-30
    max_matsubara: int = 100_000
    y_cutoff_margin: float = 45.0
    max_panels: int = 512

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_tol <= 1e-4:
            raise ValueError("rel_tol must lie in (0, 1e-4]")
        if self.abs_floor < 0:
            raise ValueError("abs_floor must be nonnegative")
        if self.max_matsubara < 1:
            raise ValueError("max_matsubara must be at least 1")
        if self.y_cutoff_margin < 30.0:
            raise ValueError("y_cutoff_margin below 30 would truncate visible tail mass")
        if self.max_panels < 8:
            raise ValueError("max_panels must be at least 8")


DEFAULT_SPEC = ConvergenceSpec()


@dataclass(frozen=True)
class ConvergenceReport:
    """What a converged evaluation cost and what was left on the table."""

    terms_used: int
    estimated_tail: float
    integrand_evals: int


class ConvergenceError(RuntimeError):
    """Raised when a tolerance cannot be met within the configured budget."""

    def __init__(self, message: str, partial: float | None = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evals: int


# 15-point Kronrod extension of 7-point Gauss, nodes ascending on [-1, 1].
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_NPTS = _XK.size


def _panel_nodes(edges_lo: np.ndarray, edges_hi: np.ndarray) -> np.ndarray:
    """(npanels, 15) node matrix for panels [lo_i, hi_i]."""
    mid = 0.5 * (edges_lo + edges_hi)
    half = 0.5 * (edges_hi - edges_lo)
    return mid[:, None] + half[:, None] * _XK[None, :]


def _panel_rules(fx: np.ndarray, edges_lo: np.ndarray, edges_hi: np.ndarray):
    """Kronrod values and |K15 - G7| error estimates per panel."""
    half = 0.5 * (edges_hi - edges_lo)
    k15 = half * (fx @ _WK)
    g7 = half * (fx[:, _GAUSS_IDX] @ _WG)
    return k15, np.abs(k15 - g7)


def _initial_edges(lower: float, upper: float) -> np.ndarray:
    """Geometric-ish initial subdivision, finer near the lower limit where
    the e^{-y} weighted mass sits."""
    span = upper - lower
    offsets = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 30.0]
    edges = [lower + off for off in offsets if off < span]
    edges.append(upper)
    return np.asarray(edges)


def _adaptive(
    fvec: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    lower: float,
    upper: float,
    rel_tol: float,
    abs_floor: float,
    max_panels: int,
) -> QuadResult:
    """Shared adaptive loop.  fvec maps an x array to (values, extra_errors);
    extra_errors carry uncertainty of the integrand values themselves (used
    by the iterated 2D integral) and enter the panel error budget."""
    edges = _initial_edges(lower, upper)
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    nodes = _panel_nodes(lo, hi)
    fx, fe = fvec(nodes.ravel())
    fx = fx.reshape(nodes.shape)
    fe = fe.reshape(nodes.shape)
    vals, errs = _panel_rules(fx, lo, hi)
    half = 0.5 * (hi - lo)
    errs = errs + half * (fe @ _WK)
    evals = nodes.size

    panels: list[tuple[float, float, float, float]] = list(zip(lo, hi, vals, errs))
    while True:
        total = math.fsum(p[2] for p in panels)
        err = math.fsum(p[3] for p in panels)
        if err <= max(rel_tol * abs(total), abs_floor):
            return QuadResult(value=total, error=err, evals=evals)
        if len(panels) >= max_panels:
            worst = max(panels, key=lambda p: p[3])
            raise ConvergenceError(
                f"quadrature did not reach rel_tol={rel_tol:g} within {max_panels} panels; "
                f"worst panel [{worst[0]:.6g}, {worst[1]:.6g}] error {worst[3]:.3g}",
                partial=total,
            )
        panels.sort(key=lambda p: (-p[3], p[0]))
        nsplit = min(4, len(panels), max_panels - len(panels))
        if nsplit < 1:
            nsplit = 1
        split, keep = panels[:nsplit], panels[nsplit:]
        new_lo = np.empty(2 * nsplit)
        new_hi = np.empty(2 * nsplit)
        for i, (a, b, _, _) in enumerate(split):
            m = 0.5 * (a + b)
            new_lo[2 * i], new_hi[2 * i] = a, m
            new_lo[2 * i + 1], new_hi[2 * i + 1] = m, b
        nodes = _panel_nodes(new_lo, new_hi)
        fx, fe = fvec(nodes.ravel())
        fx = fx.reshape(nodes.shape)
        fe = fe.reshape(nodes.shape)
        vals, errs = _panel_rules(fx, new_lo, new_hi)
        half = 0.5 * (new_hi - new_lo)
        errs = errs + half * (fe @ _WK)
        evals += nodes.size
        panels = keep + list(zip(new_lo, new_hi, vals, errs))


def integrate_y(
    f: Callable[[np.ndarray], np.ndarray],
    lower: float,
    spec: ConvergenceSpec = DEFAULT_SPEC,
) -> QuadResult:
    """Integrate a vectorized integrand over [lower, lower + y_cutoff_margin].

    Parameters
    ----------
    f : callable
        Maps a y array to the integrand values (must broadcast elementwise).
    lower : float
        Lower limit, >= 0 (the Matsubara frequency xi_tilde_l in practice).
    spec : ConvergenceSpec

    Returns
    -------
    QuadResult with the value, an error estimate, and the evaluation count.
    """
    if lower < 0:
        raise ValueError("lower limit must be nonnegative")

    def fvec(x: np.ndarray):
        v = np.asarray(f(x), dtype=float)
        return v, np.zeros_like(v)

    return _adaptive(fvec, lower, lower + spec.y_cutoff_margin,
                     spec.rel_tol, spec.abs_floor, spec.max_panels)


def integrate_2d(
    g: Callable[[float, np.ndarray], np.ndarray],
    spec: ConvergenceSpec = DEFAULT_SPEC,
) -> QuadResult:
    """Iterated integral of g(xi, y) over the wedge 0 <= xi < inf, xi <= y < inf.

    The inner y integral runs at a tighter tolerance and its error estimates
    propagate into the outer panel errors, so the reported error covers both
    levels.  g must be vectorized in its y argument.
    """
    inner_spec = ConvergenceSpec(
        rel_tol=max(spec.rel_tol / 10.0, 1e-15),
        abs_floor=spec.abs_floor,
        max_matsubara=spec.max_matsubara,
        y_cutoff_margin=spec.y_cutoff_margin,
        max_panels=spec.max_panels,
    )
    evals = 0

    def fvec(xi_arr: np.ndarray):
        nonlocal evals
        vals = np.empty_like(xi_arr)
        errs = np.empty_like(xi_arr)
        for i, xi in enumerate(xi_arr):
            res = integrate_y(lambda y: g(float(xi), y), float(xi), inner_spec)
            vals[i] = res.value
            errs[i] = res.error
            evals += res.evals
        return vals, errs

    outer = _adaptive(fvec, 0.0, spec.y_cutoff_margin,
                      spec.rel_tol, spec.abs_floor, spec.max_panels)
    return QuadResult(value=outer.value, error=outer.error, evals=evals)


def matsubara_sum(
    term: Callable[[int], float],
    spec: ConvergenceSpec = DEFAULT_SPEC,
) -> tuple[float, int, float]:
    """Sum term(l) for l = 1, 2, ... until three consecutive terms are negligible.

    Negligible means |term| < max(rel_tol * |partial sum|, abs_floor).  The
    returned tail estimate extrapolates the last terms geometrically.

    Returns
    -------
    (value, terms_used, estimated_tail)

    Raises
    ------
    ConvergenceError (carrying the partial sum) if max_matsubara is reached
    before the stop rule fires.
    """
    partial = 0.0
    below = 0
    prev = 0.0
    last = 0.0
    l = 0
    while l < spec.max_matsubara:
        l += 1
        prev, last = last, float(term(l))
        partial += last
        if abs(last) < max(spec.rel_tol * abs(partial), spec.abs_floor):
            below += 1
            if below >= 3:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(
            f"Matsubara sum did not satisfy the stop rule within {spec.max_matsubara} terms "
            f"(last term {last:.3g}, partial sum {partial:.6g})",
            partial=partial,
        )
    if abs(prev) > 0 and abs(last) < abs(prev):
        ratio = abs(last) / abs(prev)
        tail = abs(last) * ratio / (1.0 - ratio)
    else:
        tail = abs(last)
    return partial, l, tail

"""Hankel-transform evaluation: digital filter and adaptive quadrature.

The fast path evaluates integrals of the form

    F(r) = int_0^inf f(lambda) J_nu(lambda r) dlambda,   nu in {0, 1}

with a fixed-coefficient digital filter on a log-spaced abscissa grid:
F(r) ~= (1/r) * sum_i f(b_i / r) w_i.  The coefficients ship as a versioned
plain-text data file (see ``data/``); ``tools/design_hankel_filter.py`` in
the repository root regenerates them.

The slow path integrates oscillatory kernels directly: fixed-order
Gauss-Legendre panels between consecutive Bessel half-periods, plain
summation while the terms decay, and Wynn-epsilon extrapolation of the
alternating tail otherwise.  It exists as a validation oracle only.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ConvergenceError, DataError

FILTER_RESOURCE = "hankel_641_v1.txt"


@dataclass(frozen=True)
class HankelFilter:
    """Digital filter: log-spaced base points and J0/J1 weight sets."""

    base: np.ndarray
    j0: np.ndarray
    j1: np.ndarray
    spacing: float

    @property
    def size(self) -> int:
        return self.base.size


def load_filter_text(text: str) -> HankelFilter:
    """Parse the plain-text filter format (one coefficient per line)."""
    sections = {"base": [], "j0": [], "j1": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tag = line.lstrip("#").strip().lower()
            if tag in sections:
                current = tag
            continue
        if current is None:
            raise DataError(f"filter file: coefficient before section header at line {lineno}")
        try:
            sections[current].append(float(line))
        except ValueError as exc:
            raise DataError(f"filter file: bad coefficient at line {lineno}: {line!r}") from exc
    base = np.array(sections["base"])
    j0 = np.array(sections["j0"])
    j1 = np.array(sections["j1"])
    if not (base.size == j0.size == j1.size) or base.size < 120:
        raise DataError("filter file: sections must have equal length >= 120")
    logb = np.log(base)
    steps = np.diff(logb)
    spacing = float(steps.mean())
    if not np.allclose(steps, spacing, rtol=1e-8):
        raise DataError("filter file: base points must be uniformly log-spaced")
    return HankelFilter(base=base, j0=j0, j1=j1, spacing=spacing)


@lru_cache(maxsize=4)
def default_filter() -> HankelFilter:
    text = (
        importlib.resources.files("edemlog.emkernel")
        .joinpath("data", FILTER_RESOURCE)
        .read_text()
    )
    return load_filter_text(text)


def _wynn_epsilon(partial: np.ndarray):
    """Wynn epsilon extrapolation of a sequence of (vector-valued) partial sums.

    Returns the highest-order even-column estimate and a crude error estimate
    from the difference of the last two even columns.
    """
    n = partial.shape[0]
    eps_prev = np.zeros((n + 1,) + partial.shape[1:], dtype=complex)  # epsilon_{-1}
    eps_curr = partial.astype(complex)  # epsilon_0
    best = eps_curr[-1]
    prev_best = None
    for k in range(1, n):
        diff = eps_curr[1:] - eps_curr[:-1]
        diff = np.where(np.abs(diff) < 1e-300, 1e-300 + 0j, diff)
        eps_next = eps_prev[1 : 1 + diff.shape[0]] + 1.0 / diff
        eps_prev, eps_curr = eps_curr, eps_next
        if k % 2 == 0:
            prev_best, best = best, eps_curr[-1]
        if eps_curr.shape[0] < 2:
            break
    if prev_best is None:
        prev_best = partial[-1]
    err = np.abs(best - prev_best)
    return best, err


def oscillatory_hankel(
    integrand,
    rho: float,
    tol: float,
    max_intervals: int = 400,
    gauss_order: int = 32,
):
    """Integrate a vector-valued oscillatory kernel over lambda in [0, inf).

    ``integrand(lam)`` must return an (nlam, m) complex array that already
    includes the Bessel factors.  Panels are half-periods pi/rho of the
    asymptotic oscillation; the panel series is summed directly while it
    decays and epsilon-extrapolated otherwise.
    """
    x_hi, w_hi = np.polynomial.legendre.leggauss(gauss_order)
    x_lo, w_lo = np.polynomial.legendre.leggauss(gauss_order // 2)
    width = np.pi / max(rho, 1e-12)
    width = min(width, 1e6)  # keep the first panels finite for tiny rho
    panel_rtol = max(0.02 * tol, 1e-14)  # per-panel accuracy target

    terms = []
    partial = []
    total = None
    panel_tol_fail = 0.0

    def panel(a, b, depth=0):
        nonlocal panel_tol_fail
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        fh = integrand(mid + half * x_hi)
        fl = integrand(mid + half * x_lo)
        ih = half * np.tensordot(w_hi, fh, axes=(0, 0))
        il = half * np.tensordot(w_lo, fl, axes=(0, 0))
        err = np.max(np.abs(ih - il))
        scale = max(np.max(np.abs(ih)), 1e-300)
        if err > panel_rtol * scale and depth < 14:
            return panel(a, mid, depth + 1) + panel(mid, b, depth + 1)
        panel_tol_fail = max(panel_tol_fail, err)
        return ih

    for k in range(max_intervals):
        a = k * width
        b = (k + 1) * width
        t = panel(a, b)
        terms.append(t)
        total = t if total is None else total + t
        partial.append(total.copy())
        scale = max(np.max(np.abs(total)), 1e-300)
        if len(terms) >= 4:
            recent = max(np.max(np.abs(term)) for term in terms[-3:])
            if recent <= 0.25 * tol * scale:
                return total, float(recent / scale)
        # try extrapolating the alternating tail once enough panels exist
        if len(partial) >= 24 and (k + 1) % 8 == 0:
            tail = np.array(partial[-24:])
            est, err = _wynn_epsilon(tail)
            if np.max(err) <= tol * scale:
                return est, float(np.max(err) / scale)
    tail = np.array(partial[-min(len(partial), 40) :])
    est, err = _wynn_epsilon(tail)
    scale = max(np.max(np.abs(est)), 1e-300)
    achieved = float(np.max(err) / scale)
    if achieved <= tol:
        return est, achieved
    raise ConvergenceError(
        f"oscillatory Hankel integral did not converge to {tol:g} "
        f"within {max_intervals} panels (achieved {achieved:g})",
        achieved_tol=achieved,
    )

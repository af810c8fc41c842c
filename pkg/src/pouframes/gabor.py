"""
Gabor-frame checks for windows with translation step 1.

Two Bessel systems generated by ``g`` and ``h`` with modulation step ``b``
are dual iff for every integer n

    sum_k conj(g(x + n/b + k)) h(x + k) = b * delta_{n,0}   for a.e. x.

Everything here is sampled on uniform grids over one period ``[0, 1)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import trapezoid

from .constructions import DualPair
from .pou import Window, periodize
from .trigpoly import TrigPoly

__all__ = [
    "DualityReport",
    "FrameBounds",
    "CoefficientTable",
    "duality_residual",
    "painless_frame_bounds",
    "analysis",
    "synthesis",
    "necessity_probe",
    "overlap_n_max",
    "reconstruction_error",
]

#: Quadrature points per unit length used by the reconstruction helpers.
POINTS_PER_UNIT = 2048


@dataclass(frozen=True)
class DualityReport:
    b: float
    shift_residuals: dict
    n_range: tuple[int, int]
    grid_points: int

    @property
    def max_residual(self) -> float:
        return max(self.shift_residuals.values())

    def is_dual(self, tol: float = 1e-9) -> bool:
        return self.max_residual <= tol

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "n_range": list(self.n_range),
            "grid_points": self.grid_points,
            "shift_residuals": {str(n): r for n, r in sorted(self.shift_residuals.items())},
            "max_residual": self.max_residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class FrameBounds:
    A: float
    B: float
    grid_points: int

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "grid_points": self.grid_points}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _offset_grid(M: int) -> np.ndarray:
    # half-step offset keeps samples off the integers
    return (np.arange(M) + 0.5) / M


def overlap_n_max(g: Window, h: Window, b: float) -> int:
    """Smallest n_max covering every shift n/b at which the supports can overlap."""
    glo, ghi = g.support
    hlo, hhi = h.support
    span = max(ghi - hlo, hhi - glo)
    return math.ceil(b * span)


def duality_residual(pair: DualPair, grid_points: int = 1000, n_max: int | None = None) -> DualityReport:
    """
    Per-shift residuals of the duality conditions on an offset grid of [0, 1).

    For each ``|n| <= n_max`` returns
    ``max_x |sum_k conj(g(x + n/b + k)) h(x + k) - b delta_{n,0}|``.
    """
    b = pair.b
    if not b > 0:
        raise ValueError("b must be positive")
    if grid_points < 16:
        raise ValueError("grid_points must be at least 16")
    need = overlap_n_max(pair.g, pair.h, b)
    if n_max is None:
        n_max = need
    elif n_max < need:
        raise ValueError(f"n_max = {n_max} misses overlapping shifts; need at least {need}")
    x = _offset_grid(grid_points)
    hlo, hhi = pair.h.support
    ks = range(math.floor(hlo) - 1, math.ceil(hhi) + 1)
    hvals = {k: pair.h.evaluate(x + k, closed=False) for k in ks}
    res = {}
    for n in range(-n_max, n_max + 1):
        acc = np.zeros(grid_points, dtype=complex)
        for k in ks:
            acc += np.conj(pair.g.evaluate(x + n / b + k, closed=False)) * hvals[k]
        target = b if n == 0 else 0.0
        res[n] = float(np.max(np.abs(acc - target)))
    return DualityReport(b, res, (-n_max, n_max), grid_points)


def painless_frame_bounds(g: Window, b: float, grid_points: int = 1000) -> FrameBounds:
    """
    Grid estimate of ``A = inf (1/b) sum_n |g(x+n)|^2`` and the matching sup.

    Valid only in the painless case ``b <= 1/len(supp g)``.
    """
    lo, hi = g.support
    if not b > 0:
        raise ValueError("b must be positive")
    if b > 1 / (hi - lo) + 1e-15:
        raise ValueError(
            f"painless bounds need b <= 1/{hi - lo}; got b = {b} (formula inapplicable)"
        )
    x = np.arange(grid_points) / grid_points
    s = periodize(g, x, squared_modulus=True).real / b
    return FrameBounds(float(np.min(s)), float(np.max(s)), grid_points)


@dataclass(frozen=True)
class CoefficientTable:
    """Gabor coefficients ``c[m, n] = <f, E_{mb} T_n g>`` for ``|m| <= m_max``."""

    coeffs: np.ndarray
    m_max: int
    n_values: tuple[int, ...]
    b: float

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(-self.m_max, self.m_max + 1)

    def __getitem__(self, mn):
        m, n = mn
        return self.coeffs[m + self.m_max, self.n_values.index(n)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "re", "im"])
        for i, m in enumerate(self.m_values):
            for j, n in enumerate(self.n_values):
                c = self.coeffs[i, j]
                w.writerow([int(m), n, repr(float(c.real)), repr(float(c.imag))])
        return buf.getvalue()


def analysis(
    f: np.ndarray,
    x: np.ndarray,
    g: Window,
    b: float,
    m_max: int,
    n_range: Sequence[int],
) -> CoefficientTable:
    """
    Composite-trapezoid Gabor analysis of samples `f` on the uniform grid `x`.

    ``c[m, n] = int f(x) conj(g(x - n)) exp(-2 pi i m b x) dx``. The grid must
    cover supp f and be fine enough for the integrand; 2048 points per unit
    length keeps the quadrature error far below 1e-6 for smooth windows.
    """
    f = np.asarray(f, dtype=complex)
    x = np.asarray(x, dtype=float)
    if f.shape != x.shape:
        raise ValueError("signal samples and grid must have the same shape")
    n_values = tuple(int(n) for n in n_range)
    ms = np.arange(-m_max, m_max + 1)
    out = np.zeros((ms.size, len(n_values)), dtype=complex)
    if x.size < 2:
        return CoefficientTable(out, m_max, n_values, b)
    E = np.exp(-2j * np.pi * b * np.multiply.outer(ms, x))
    for j, n in enumerate(n_values):
        v = f * np.conj(g.evaluate(x - n))
        if np.any(v):
            out[:, j] = trapezoid(E * v, x, axis=1)
    return CoefficientTable(out, m_max, n_values, b)


def synthesis(c: CoefficientTable, h: Window, b: float, eval_grid: np.ndarray) -> np.ndarray:
    """``sum_{m,n} c[m, n] exp(2 pi i m b x) h(x - n)`` on `eval_grid`."""
    x = np.asarray(eval_grid, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    E = np.exp(2j * np.pi * b * np.multiply.outer(x, c.m_values))
    for j, n in enumerate(c.n_values):
        col = c.coeffs[:, j]
        if not np.any(col):
            continue
        out += (E @ col) * h.evaluate(x - n)
    return out


def necessity_probe(
    G: TrigPoly, H: TrigPoly, N: int, b: float, grid_points: int = 1000
) -> float:
    """
    Witness that ``G chi_[0,N]`` and ``H chi_[0,N]`` are not dual for
    ``1/N < b < 1``.

    With n the integer satisfying ``n <= 1/b < n + 1``, the first-off-diagonal
    duality condition reduces on ``0 < x < n + 1 - 1/b`` to
    ``sum_{j=0}^{N-n-1} G(x+j) H(x+j+1/b) = 0``. Returns the max of the
    left side over that interval; it is nonzero unless G or H vanishes.
    """
    if not 1 / N < b < 1:
        raise ValueError(f"probe needs 1/N < b < 1 = ({1 / N:.6g}, 1), got {b}")
    for name, P in (("G", G), ("H", H)):
        if not P.has_period(N):
            raise ValueError(f"{name} must be {N}-periodic")
        if not P.is_real_on_reals(1e-10):
            raise ValueError(f"{name} must be real-valued on the real line")
    if G.is_zero() or H.is_zero():
        warnings.warn("zero window: the duality obstruction assumes nonzero G and H", stacklevel=2)
        return 0.0
    inv = 1 / b
    n = math.floor(inv)
    width = n + 1 - inv
    x = width * _offset_grid(grid_points)
    acc = np.zeros(grid_points, dtype=complex)
    for j in range(N - n):
        acc += G.evaluate(x + j) * H.evaluate(x + j + inv)
    return float(np.max(np.abs(acc)))


def reconstruction_error(
    pair: DualPair,
    m_max: int,
    lo: float = -3.0,
    hi: float = 5.0,
    center: float = 1.0,
    points_per_unit: int = POINTS_PER_UNIT,
    coeffs_out: list | None = None,
) -> float:
    """
    Relative L2 error after analysing ``exp(-(x - center)^2)`` on ``[lo, hi]``
    with g and synthesising with h, keeping ``|m| <= m_max``.
    """
    x = np.linspace(lo, hi, int(round((hi - lo) * points_per_unit)) + 1)
    f = np.exp(-((x - center) ** 2))
    glo, ghi = pair.g.support
    ns = range(math.floor(lo - ghi), math.ceil(hi - glo) + 1)
    c = analysis(f, x, pair.g, pair.b, m_max, ns)
    if coeffs_out is not None:
        coeffs_out.append(c)
    fr = synthesis(c, pair.h, pair.b, x)
    return float(np.sqrt(trapezoid(np.abs(fr - f) ** 2, x) / trapezoid(f**2, x)))

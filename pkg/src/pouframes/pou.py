"""
Cut-off windows, the partition-of-unity test and smoothness detection.

A window is a trigonometric polynomial times the indicator of ``[0, N]``.
Its integer translates sum to one exactly when the polynomial is N-periodic
with ``c_0 = 1/N`` and ``c_k = 0`` for every other multiple ``k`` of ``N``
(coefficients taken in the period-N basis). Its smoothness order is governed
by how many derivatives vanish at the two support endpoints; any such
polynomial of band ``K`` has order at most ``2K``, so ``C^inf`` windows of this
shape do not exist.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .trigpoly import TrigPoly

__all__ = [
    "Window",
    "SmoothnessReport",
    "coefficient_pou_check",
    "sampled_pou_check",
    "periodize",
    "smoothness_order",
    "derivative_tolerance",
    "factorize",
    "endpoint_factor",
]

#: Relative threshold under which a derivative counts as vanishing.
DERIV_RTOL = 1e-8


class Window:
    """
    A finite sum of cut-off translates ``sum_n P_n(x + n) chi_[0,N](x + n)``.

    The common case is a single piece with shift 0, i.e. ``P chi_[0,N]``;
    build it with ``Window(P, N)``. Dual windows of the form
    ``sum_n a_n g(x + n)`` are built with :meth:`Window.combination` and have
    support ``[min(-n), N + max(-n)]``.

    Every piece must be pointwise 2N-periodic (in practice N- or 2N-periodic).
    :meth:`evaluate` uses the closed indicator; periodization sums use the
    half-open one so integer points are not counted twice.
    """

    __slots__ = ("_pieces", "_support_len")

    def __init__(self, poly: TrigPoly, support_len: int):
        self._init([(0, poly)], support_len)

    def _init(self, pieces, support_len):
        if int(support_len) != support_len or support_len < 1:
            raise ValueError(f"support length must be a positive integer, got {support_len!r}")
        N = int(support_len)
        if not pieces:
            raise ValueError("a window needs at least one piece")
        T = math.lcm(*(p.period for _, p in pieces))
        checked = []
        for n, p in pieces:
            if not isinstance(p, TrigPoly):
                raise TypeError("window pieces must be TrigPoly instances")
            if not p.has_period(2 * N):
                raise ValueError(
                    f"polynomial with minimal period {p.minimal_period().period} is neither "
                    f"{N}- nor {2 * N}-periodic"
                )
            checked.append((int(n), p.rescale_period(T)))
        self._pieces = tuple(checked)
        self._support_len = N

    @classmethod
    def combination(cls, pieces: Sequence[tuple[int, TrigPoly]], support_len: int) -> Window:
        """Window ``sum_n P_n(x + n) chi_[0,N](x + n)`` from ``(n, P_n)`` pairs."""
        w = cls.__new__(cls)
        w._init([(n, p) for n, p in pieces if not p.is_zero()] or list(pieces)[:1], support_len)
        return w

    @property
    def pieces(self) -> tuple[tuple[int, TrigPoly], ...]:
        return self._pieces

    @property
    def support_len(self) -> int:
        return self._support_len

    @property
    def is_simple(self) -> bool:
        return len(self._pieces) == 1 and self._pieces[0][0] == 0

    @property
    def poly(self) -> TrigPoly:
        if not self.is_simple:
            raise ValueError("window is a combination of shifted pieces; it has no single polynomial")
        return self._pieces[0][1]

    @property
    def support(self) -> tuple[int, int]:
        shifts = [n for n, _ in self._pieces]
        return (-max(shifts), self._support_len - min(shifts))

    def evaluate(self, x, closed: bool = True) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        N = self._support_len
        out = np.zeros(x.shape, dtype=complex)
        for n, p in self._pieces:
            y = x + n
            inside = (y >= 0) & ((y <= N) if closed else (y < N))
            if np.any(inside):
                out[inside] += p.evaluate(y[inside])
        return out

    def __call__(self, x):
        return self.evaluate(x)

    def scale(self, s: float) -> Window:
        return Window.combination([(n, p.scale(s)) for n, p in self._pieces], self._support_len)

    def is_real_on_reals(self, tol: float = 1e-12) -> bool:
        return all(p.is_real_on_reals(tol) for _, p in self._pieces)

    def __repr__(self):
        if self.is_simple:
            return f"Window({self.poly!r}, support_len={self._support_len})"
        return f"Window.combination({list(self._pieces)!r}, support_len={self._support_len})"

    def __eq__(self, other):
        if not isinstance(other, Window):
            return NotImplemented
        return self._support_len == other._support_len and self._pieces == other._pieces

    def __hash__(self):
        return hash((self._support_len, self._pieces))

    def to_dict(self) -> dict:
        lo, hi = self.support
        if self.is_simple:
            d = self.poly.to_dict()
            d["support"] = [lo, hi]
            return d
        return {
            "support": [lo, hi],
            "support_len": self._support_len,
            "pieces": [dict(shift=n, **p.to_dict()) for n, p in self._pieces],
        }

    @classmethod
    def from_dict(cls, data) -> Window:
        try:
            if "pieces" in data:
                pieces = [(int(d["shift"]), TrigPoly.from_dict(d)) for d in data["pieces"]]
                return cls.combination(pieces, int(data["support_len"]))
            lo, hi = data["support"]
            if lo != 0:
                raise ValueError("single-polynomial windows must start at 0")
            return cls(TrigPoly.from_dict(data), int(hi))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed window record: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Window:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SmoothnessReport:
    """
    Outcome of :func:`smoothness_order`.

    ``order_L`` is the largest L with the window in ``C^(L-1)``; 0 means a jump
    at an endpoint. ``endpoint_derivatives`` lists ``(j, |D^j P(0)|, |D^j P(N)|)``
    for ``j = 0..order_L``.
    """

    order_L: int
    endpoint_derivatives: tuple[tuple[int, float, float], ...]
    band_K: int
    cap: int
    tolerances: tuple[float, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "order_L": self.order_L,
            "cap": self.cap,
            "band_K": self.band_K,
            "endpoint_derivatives": [list(r) for r in self.endpoint_derivatives],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _period_n(P: TrigPoly, N: int) -> TrigPoly:
    if not P.has_period(N):
        raise ValueError(
            f"polynomial is not {N}-periodic (minimal period {P.minimal_period().period})"
        )
    return P.as_period(N)


def coefficient_pou_check(P: TrigPoly, N: int, tol: float = 1e-10) -> bool:
    """
    True iff, in the period-N basis, ``c_0 = 1/N`` and ``c_k = 0`` for the
    other ``k`` in ``N Z``.

    Raises
    ------
    ValueError
        If `P` is not N-periodic.
    """
    Q = _period_n(P, N)
    if abs(Q.coeff(0) - 1 / N) > tol:
        return False
    return all(abs(c) <= tol for k, c in Q.coeffs.items() if k and k % N == 0)


def periodize(w: Window, x, squared_modulus: bool = False) -> np.ndarray:
    """``sum_k w(x + k)`` (or ``sum_k |w(x + k)|^2``) with the half-open indicator."""
    x = np.asarray(x, dtype=float)
    lo, hi = w.support
    kmin = math.floor(lo - np.max(x, initial=0.0)) - 1
    kmax = math.ceil(hi - np.min(x, initial=0.0)) + 1
    out = np.zeros(x.shape, dtype=complex)
    for k in range(kmin, kmax + 1):
        v = w.evaluate(x + k, closed=False)
        out += np.abs(v) ** 2 if squared_modulus else v
    return out


def sampled_pou_check(w: Window, grid_points: int = 1000) -> float:
    """
    Max over the grid ``i / grid_points`` of ``|sum_k w(x + k) - 1|``.

    The caller compares the returned residual against its tolerance.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    x = np.arange(grid_points) / grid_points
    return float(np.max(np.abs(periodize(w, x) - 1)))


def derivative_tolerance(P: TrigPoly, j: int) -> float:
    """Scale-aware threshold below which ``|D^j P|`` counts as zero."""
    freq = 2 * math.pi * P.band / P.period
    return DERIV_RTOL * (1 + P.max_abs_coeff() * freq**j)


def smoothness_order(w: Window) -> SmoothnessReport:
    """
    Largest L such that ``D^j P`` vanishes at both 0 and N for ``j < L``.

    Raises
    ------
    ValueError
        For composite windows, polynomials that are not real on the reals,
        or the zero polynomial.
    """
    P = w.poly
    N = w.support_len
    if not P.is_real_on_reals(1e-10):
        raise ValueError("smoothness order is defined for polynomials real on the real line")
    if P.is_zero():
        raise ValueError("the zero polynomial vanishes to infinite order")
    base = P.as_period(N) if P.has_period(N) else P.as_period(2 * N)
    cap = 2 * base.band
    rows = []
    tols = []
    L = 0
    for j in range(cap + 2):
        tol = derivative_tolerance(base, j)
        d0 = abs(base.derivative_at(j, 0.0))
        dN = abs(base.derivative_at(j, float(N)))
        rows.append((j, d0, dN))
        tols.append(tol)
        if d0 > tol or dN > tol:
            break
        L = j + 1
    if L > cap:
        raise RuntimeError(
            f"derivatives vanish beyond the band limit (order {L} > cap {cap}); "
            "coefficients are too inaccurate for this test"
        )
    return SmoothnessReport(L, tuple(rows), base.band, cap, tuple(tols))


def endpoint_factor(N: int) -> TrigPoly:
    """``exp(pi i x / N) sin(pi x / N) = (z - 1) / (2i)`` with ``z = exp(2 pi i x / N)``."""
    return TrigPoly(N, {0: -1 / 2j, 1: 1 / 2j})


def factorize(P: TrigPoly, N: int, L: int, rtol: float = 1e-9) -> TrigPoly:
    """
    Cofactor ``A_L`` with ``P(x) = (exp(pi i x/N) sin(pi x/N))**L * A_L(x)``.

    Performed as L exact divisions by ``z - 1`` in the variable
    ``z = exp(2 pi i x / N)``. If P has indices in ``[-K, K]`` the result has
    indices in ``[-K, K - L]``.

    Raises
    ------
    ValueError
        If P is not N-periodic, or a division leaves a remainder larger than
        ``rtol`` times the coefficient mass (the window is not ``C^(L-1)``).
    """
    if L < 1:
        raise ValueError("L must be a positive integer")
    Q = _period_n(P, N)
    if Q.is_zero():
        return TrigPoly(N)
    low, c = Q.low, Q.to_array()
    scale = float(np.sum(np.abs(c)))
    for step in range(1, L + 1):
        if c.size < 2:
            raise ValueError(f"division {step} of {L} leaves nothing to divide")
        # (z - 1) * sum_k a_k z^k has coefficient a_{k-1} - a_k at z^k
        a = np.empty(c.size - 1, dtype=complex)
        acc = 0j
        for i in range(c.size - 1, 0, -1):
            acc += c[i]
            a[i - 1] = acc
        remainder = abs(c[0] + a[0])
        if remainder > rtol * scale:
            raise ValueError(
                f"division {step} of {L} by (z - 1) leaves remainder {remainder:.3e}; "
                f"the window is not C^{L - 1}"
            )
        c = a
    return TrigPoly.from_array(N, low, c * (2j) ** L)

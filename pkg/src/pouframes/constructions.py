"""
Window families: smooth partitions of unity and dual/tight Gabor windows.

All constructions return trigonometric polynomials (or windows built on
them) with translation step 1. Binomial coefficients are exact integers; the
order parameters are capped at :data:`MAX_ORDER`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .pou import Window, coefficient_pou_check, sampled_pou_check, smoothness_order
from .trigpoly import TrigPoly

__all__ = [
    "DualPair",
    "MAX_ORDER",
    "sine_squared_base",
    "build_n2",
    "build_p1",
    "build_inductive",
    "inductive_family",
    "sine_power",
    "sine_power_poly",
    "dual_coeffs_window",
    "same_support_dual_pair",
    "sine_power_dual_pair",
    "tight_window",
    "example_dual_pair",
]

MAX_ORDER = 15

_POU_TOL = 1e-9


@dataclass(frozen=True)
class DualPair:
    """Candidate dual windows ``g``, ``h`` for modulation step ``b`` (translation step 1)."""

    g: Window
    h: Window
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"modulation step b must be positive, got {self.b}")
        if not (self.g.is_real_on_reals(1e-10) and self.h.is_real_on_reals(1e-10)):
            raise ValueError("dual pair windows must be real-valued")

    def to_dict(self) -> dict:
        return {"b": self.b, "g": self.g.to_dict(), "h": self.h.to_dict()}

    @classmethod
    def from_dict(cls, data) -> DualPair:
        try:
            return cls(Window.from_dict(data["g"]), Window.from_dict(data["h"]), float(data["b"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed dual pair record: {exc}") from exc


def _check_order(name, L):
    if int(L) != L or not 1 <= L <= MAX_ORDER:
        raise ValueError(f"{name} must be an integer in [1, {MAX_ORDER}], got {L!r}")
    return int(L)


def sine_squared_base(N: int) -> TrigPoly:
    """``sin^2(pi x / N) = 1/2 - (z + 1/z)/4`` with ``z = exp(2 pi i x / N)``."""
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    return TrigPoly(int(N), {-1: -0.25, 0: 0.5, 1: -0.25})


def _n2_sum(P: TrigPoly, M: int) -> TrigPoly:
    # sum_{k<M} C(2M-1, k) P^(M-1-k)(x) P^k(x+1)
    P1 = P.shift_integer(1)
    out = TrigPoly.zero(P.period)
    for k in range(M):
        out = out + (P ** (M - 1 - k) * P1**k).scale(math.comb(2 * M - 1, k))
    return out


def build_n2(Q: TrigPoly, L: int) -> TrigPoly:
    """
    Support-2 partition of unity of smoothness ``C^(2L-1)``:
    ``Q^L(x) sum_{k<L} C(2L-1, k) Q^(L-1-k)(x) Q^k(x+1)``.

    `Q` must be real, 2-periodic and itself a partition of unity on ``[0, 2]``.
    The ``C^(2L-1)`` guarantee additionally needs ``Q chi_[0,2]`` in ``C^1``;
    a rougher `Q` only triggers a warning.
    """
    L = _check_order("L", L)
    if not Q.has_period(2):
        raise ValueError("Q must be 2-periodic")
    if not Q.is_real_on_reals(1e-10):
        raise ValueError("Q must be real-valued on the real line")
    if not coefficient_pou_check(Q, 2, _POU_TOL):
        raise ValueError("Q must satisfy c_0 = 1/2 and c_k = 0 for other even k")
    Q = Q.as_period(2)
    if smoothness_order(Window(Q, 2)).order_L < 2:
        warnings.warn("Q chi_[0,2] is not C^1; the smoothness guarantee does not apply", stacklevel=2)
    return Q**L * _n2_sum(Q, L)


def _half_support(N: int) -> int:
    return N // 2


def build_p1(N: int) -> TrigPoly:
    """
    Seed for ``N >= 3``: the normalized product
    ``prod_{k=0}^{K} sin^2(pi (x - k) / N)`` with ``K = floor(N / 2)``.

    The normalizing constant makes the integer translates sum to one; the
    result has band ``K + 1`` and vanishes at ``x = 0..K``.
    """
    if int(N) != N or N < 3:
        raise ValueError(f"build_p1 needs N >= 3, got {N!r}")
    N = int(N)
    K = _half_support(N)
    base = sine_squared_base(N)
    prod = TrigPoly.constant(1, N)
    for k in range(K + 1):
        prod = prod * base.shift_integer(-k)
    norm = sum(
        math.prod(math.sin(math.pi * (n - k) / N) ** 2 for k in range(K + 1))
        for n in range(K + 1, N)
    )
    return prod.scale(1 / norm)


def build_inductive(P_prev: TrigPoly, N: int) -> TrigPoly:
    """
    One refinement step for support N >= 3.

    With ``K = floor(N / 2)`` and P the previous polynomial, returns
    ``P (P + 2 sum_{n=1}^{K-1} P(x+n) + P(x+K))`` for even N and
    ``P (P + 2 sum_{n=1}^{K} P(x+n))`` for odd N. Partition of unity is
    preserved; for seeds vanishing like ``sin^(2L)`` at 0 the order rises by 2.
    """
    if int(N) != N or N < 3:
        raise ValueError(f"build_inductive needs N >= 3, got {N!r}")
    N = int(N)
    if not P_prev.has_period(N):
        raise ValueError(f"previous polynomial must be {N}-periodic")
    if not P_prev.is_real_on_reals(1e-10):
        raise ValueError("previous polynomial must be real-valued on the real line")
    P = P_prev.as_period(N)
    resid = sampled_pou_check(Window(P, N))
    if resid > _POU_TOL:
        raise ValueError(f"previous polynomial is not a partition of unity (residual {resid:.3e})")
    K = _half_support(N)
    bracket = P
    if N % 2 == 0:
        for n in range(1, K):
            bracket = bracket + P.shift_integer(n).scale(2)
        bracket = bracket + P.shift_integer(K)
    else:
        for n in range(1, K + 1):
            bracket = bracket + P.shift_integer(n).scale(2)
    return P * bracket


def inductive_family(N: int, levels: int, seed: TrigPoly | None = None) -> list[TrigPoly]:
    """``[P_1, ..., P_levels]`` starting from `seed` (default :func:`build_p1`)."""
    P = build_p1(N) if seed is None else seed
    out = [P]
    for _ in range(levels - 1):
        P = build_inductive(P, N)
        out.append(P)
    return out


def sine_power_poly(N: int, L: int) -> TrigPoly:
    """
    ``sin^L(pi x / N)`` with period 2N:
    ``((w - 1/w) / 2i)^L = (2i)^(-L) sum_j C(L, j) (-1)^j w^(L - 2j)``,
    ``w = exp(pi i x / N)``.
    """
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    L = int(L)
    if L < 0:
        raise ValueError("L must be nonnegative")
    scale = (2j) ** (-L)
    return TrigPoly(2 * int(N), {L - 2 * j: scale * (-1) ** j * math.comb(L, j) for j in range(L + 1)})


def sine_power(N: int, L: int, amplitude: float = 1.0) -> Window:
    """Window ``amplitude * sin^L(pi x / N) chi_[0,N]``."""
    if not amplitude > 0:
        raise ValueError("amplitude must be positive")
    L = _check_order("L", L)
    return Window(sine_power_poly(N, L).scale(amplitude), int(N))


def dual_coeffs_window(g: Window, b: float, a: Sequence[float]) -> Window:
    """
    Dual window ``h(x) = sum_{n=-N+1}^{N-1} a_n g(x + n)`` for a partition of
    unity `g` supported on ``[0, N]``.

    `a` lists ``a_{-N+1}, ..., a_{N-1}``; it must satisfy ``a_0 = b`` and
    ``a_n + a_{-n} = 2b``, and ``0 < b <= 1/(2N - 1)``. The result is
    supported on ``[-N + 1, 2N - 1]``.
    """
    N = g.support_len
    if not g.is_simple:
        raise ValueError("g must be a single cut-off polynomial supported on [0, N]")
    if not 0 < b <= 1 / (2 * N - 1) + 1e-15:
        raise ValueError(f"b must lie in (0, 1/(2N-1)] = (0, {1 / (2 * N - 1):.6g}], got {b}")
    a = [float(v) for v in a]
    if len(a) != 2 * N - 1:
        raise ValueError(f"expected {2 * N - 1} coefficients a_(-N+1)..a_(N-1), got {len(a)}")
    coef = {n: a[n + N - 1] for n in range(-N + 1, N)}
    if abs(coef[0] - b) > 1e-12:
        raise ValueError(f"constraint a_0 = b violated: a_0 = {coef[0]}, b = {b}")
    for n in range(1, N):
        if abs(coef[n] + coef[-n] - 2 * b) > 1e-12:
            raise ValueError(
                f"constraint a_{n} + a_-{n} = 2b violated: {coef[n]} + {coef[-n]} != {2 * b}"
            )
    if not g.is_real_on_reals(1e-10):
        raise ValueError("g must be real-valued")
    resid = sampled_pou_check(g)
    if resid > _POU_TOL:
        raise ValueError(f"g is not a partition of unity (residual {resid:.3e})")
    P = g.poly
    return Window.combination([(n, P.scale(coef[n])) for n in range(-N + 1, N)], N)


def same_support_dual_pair(L1: int, L2: int, b: float) -> DualPair:
    """
    Dual pair on ``[0, 2]`` for ``0 < b <= 1/2``:
    ``g = sin^(2 L1)(pi x/2)`` and
    ``h = b sin^(2 L2)(pi x/2) sum_{k<M} C(2M-1, k) P^(M-1-k)(x) P^k(x+1)``
    with ``P = sin^2(pi x/2)`` and ``M = L1 + L2``.
    """
    L1 = _check_order("L1", L1)
    L2 = _check_order("L2", L2)
    if L1 + L2 > MAX_ORDER:
        raise ValueError(f"L1 + L2 must not exceed {MAX_ORDER}")
    if not 0 < b <= 0.5:
        raise ValueError(f"b must lie in (0, 1/2], got {b}")
    P = sine_squared_base(2)
    g = Window(P**L1, 2)
    h = Window((P**L2 * _n2_sum(P, L1 + L2)).scale(b), 2)
    return DualPair(g, h, b)


def _check_b(b, N):
    if not 0 < b <= 1 / N + 1e-15:
        raise ValueError(f"b must lie in (0, 1/N] = (0, {1 / N:.6g}], got {b}")


def sine_power_dual_pair(N: int, L1: int, L2: int, b: float) -> DualPair:
    """
    ``g = sin^(2 L1)(pi x/N)``, ``h = b 4^M / (N C(2M, M)) sin^(2 L2)(pi x/N)``
    on ``[0, N]`` with ``M = L1 + L2 <= N - 1`` and ``0 < b <= 1/N``.
    """
    L1 = _check_order("L1", L1)
    L2 = _check_order("L2", L2)
    M = L1 + L2
    if M > N - 1:
        raise ValueError(f"need L1 + L2 <= N - 1 = {N - 1}, got {M}")
    _check_b(b, N)
    amp = b * 4**M / (N * math.comb(2 * M, M))
    g = Window(sine_power_poly(N, 2 * L1), N)
    h = Window(sine_power_poly(N, 2 * L2).scale(amp), N)
    return DualPair(g, h, b)


def tight_window(N: int, L: int, b: float) -> Window:
    """
    ``sqrt(b 4^L / (N C(2L, L))) sin^L(pi x/N) chi_[0,N]``, which generates a
    tight Gabor frame for ``1 <= L <= N - 1`` and ``0 < b <= 1/N``.
    """
    L = _check_order("L", L)
    if L > N - 1:
        raise ValueError(f"tight window needs L <= N - 1 = {N - 1}, got L = {L}")
    _check_b(b, N)
    amp = float(np.sqrt(b * 4**L / (N * math.comb(2 * L, L))))
    return sine_power(N, L, amp)


def example_dual_pair(L: int = 2, b: float = 1 / 3) -> DualPair:
    """Support-2 window from :func:`build_n2` with the three-term dual ``a_n = b``."""
    g = Window(build_n2(sine_squared_base(2), L), 2)
    return DualPair(g, dual_coeffs_window(g, b, [b, b, b]), b)

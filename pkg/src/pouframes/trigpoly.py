"""
Trigonometric polynomials with an explicit integer period.

A :class:`TrigPoly` stores the finitely many nonzero coefficients of

    P(x) = sum_k c_k exp(2 pi i k x / T)

as an immutable mapping ``k -> c_k``. Binary operations rescale both operands
to the least common multiple of their periods; nothing is ever reduced to a
smaller period implicitly (see :meth:`TrigPoly.minimal_period`).
"""

from __future__ import annotations

import json
import math
from types import MappingProxyType
from typing import Mapping

import numpy as np

__all__ = ["TrigPoly", "DUST"]

#: Relative magnitude below which coefficients are dropped after arithmetic.
DUST = 1e-13


def _prune(coeffs):
    if not coeffs:
        return {}
    scale = max(1.0, max(abs(c) for c in coeffs.values()))
    cut = DUST * scale
    return {k: c for k, c in coeffs.items() if abs(c) >= cut}


class TrigPoly:
    """
    Finite Laurent-coefficient representation of a T-periodic trigonometric
    polynomial.

    Parameters
    ----------
    period : int
        Positive integer period T.
    coeffs : mapping of int to complex, optional
        Fourier coefficients; absent indices are zero.

    Examples
    --------
    >>> q = TrigPoly(2, {-1: -0.25, 0: 0.5, 1: -0.25})   # sin^2(pi x / 2)
    >>> round(q(1.0).real, 12)
    1.0
    """

    __slots__ = ("_period", "_coeffs")

    def __init__(self, period: int, coeffs: Mapping[int, complex] | None = None):
        if isinstance(period, bool) or int(period) != period or period < 1:
            raise ValueError(f"period must be a positive integer, got {period!r}")
        items = {}
        for k, c in (coeffs or {}).items():
            if int(k) != k:
                raise ValueError(f"coefficient index must be an integer, got {k!r}")
            items[int(k)] = items.get(int(k), 0j) + complex(c)
        self._period = int(period)
        self._coeffs = MappingProxyType(dict(sorted(_prune(items).items())))

    # -- construction helpers ------------------------------------------------

    @classmethod
    def constant(cls, value: complex, period: int = 1) -> TrigPoly:
        return cls(period, {0: value})

    @classmethod
    def zero(cls, period: int = 1) -> TrigPoly:
        return cls(period)

    @classmethod
    def from_array(cls, period: int, low: int, values) -> TrigPoly:
        """Build from a dense coefficient array whose first entry has index `low`."""
        return cls(period, {low + i: c for i, c in enumerate(values) if c != 0})

    # -- basic properties ----------------------------------------------------

    @property
    def period(self) -> int:
        return self._period

    @property
    def coeffs(self) -> Mapping[int, complex]:
        return self._coeffs

    @property
    def indices(self) -> list[int]:
        return list(self._coeffs)

    @property
    def low(self) -> int:
        return min(self._coeffs) if self._coeffs else 0

    @property
    def high(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    @property
    def band(self) -> int:
        """Largest |k| with a nonzero coefficient (0 for the zero polynomial)."""
        return max((abs(k) for k in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> complex:
        return self._coeffs.get(k, 0j)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def to_array(self, low: int | None = None, high: int | None = None) -> np.ndarray:
        """Dense coefficient vector for indices ``low..high`` inclusive."""
        low = self.low if low is None else low
        high = self.high if high is None else high
        out = np.zeros(max(high - low + 1, 0), dtype=complex)
        for k, c in self._coeffs.items():
            if low <= k <= high:
                out[k - low] = c
        return out

    # -- period handling -----------------------------------------------------

    def rescale_period(self, period: int) -> TrigPoly:
        """
        Express the same function with period `period`, a multiple of the
        current period. Index k becomes k * (period / self.period).
        """
        if int(period) != period or period < 1 or period % self._period:
            raise ValueError(
                f"cannot rescale period {self._period} to {period}: "
                f"target must be a positive integer multiple of {self._period}"
            )
        m = int(period) // self._period
        if m == 1:
            return self
        return TrigPoly(period, {k * m: c for k, c in self._coeffs.items()})

    def minimal_period(self) -> TrigPoly:
        """Reduce to the smallest integer period of the same function."""
        g = self._period
        for k in self._coeffs:
            g = math.gcd(g, k)
        if g == 1:
            return self
        return TrigPoly(self._period // g, {k // g: c for k, c in self._coeffs.items()})

    def has_period(self, period: int) -> bool:
        """True if the function is pointwise `period`-periodic."""
        return period % self.minimal_period().period == 0

    def as_period(self, period: int) -> TrigPoly:
        """Re-express with period `period`, reducing first if needed."""
        if period == self._period:
            return self
        return self.minimal_period().rescale_period(period)

    # -- evaluation ----------------------------------------------------------

    def _kw(self):
        ks = np.fromiter(self._coeffs.keys(), dtype=float, count=len(self._coeffs))
        cs = np.fromiter(self._coeffs.values(), dtype=complex, count=len(self._coeffs))
        return ks * (2j * np.pi / self._period), cs

    def evaluate(self, x):
        """Evaluate at real point(s) `x`; returns complex scalar or array."""
        w, cs = self._kw()
        xa = np.asarray(x, dtype=float)
        out = np.exp(np.multiply.outer(xa, w)) @ cs if cs.size else np.zeros(xa.shape, complex)
        return complex(out) if np.ndim(out) == 0 else out

    __call__ = evaluate

    def derivative_at(self, j: int, x0):
        """
        Exact j-th derivative at `x0`:
        sum_k c_k (2 pi i k / T)^j exp(2 pi i k x0 / T).
        """
        if j < 0:
            raise ValueError("derivative order must be nonnegative")
        w, cs = self._kw()
        xa = np.asarray(x0, dtype=float)
        if not cs.size:
            out = np.zeros(xa.shape, complex)
        else:
            out = np.exp(np.multiply.outer(xa, w)) @ (cs * w**j)
        return complex(out) if np.ndim(out) == 0 else out

    def derivative(self, j: int = 1) -> TrigPoly:
        return TrigPoly(
            self._period,
            {k: c * (2j * math.pi * k / self._period) ** j for k, c in self._coeffs.items()},
        )

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other: TrigPoly):
        T = math.lcm(self._period, other._period)
        return T, self.rescale_period(T), other.rescale_period(T)

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.constant(other, self._period)
        T, a, b = self._common(other)
        out = dict(a._coeffs)
        for k, c in b._coeffs.items():
            out[k] = out.get(k, 0j) + c
        return TrigPoly(T, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: complex) -> TrigPoly:
        return TrigPoly(self._period, {k: s * c for k, c in self._coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        T, a, b = self._common(other)
        if a.is_zero() or b.is_zero():
            return TrigPoly(T)
        prod = np.convolve(a.to_array(), b.to_array())
        return TrigPoly.from_array(T, a.low + b.low, prod)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, s):
        return self.scale(1 / s)

    def __pow__(self, n: int) -> TrigPoly:
        if int(n) != n or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = TrigPoly.constant(1, self._period)
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift_integer(self, n: int) -> TrigPoly:
        """Return x -> P(x + n); coefficient k picks up exp(2 pi i k n / T)."""
        if int(n) != n:
            raise ValueError(f"shift must be an integer, got {n!r}")
        n = int(n) % self._period
        if n == 0:
            return self
        T = self._period
        # reduce k*n mod T before the exponential so full-period shifts are exact
        return TrigPoly(
            T, {k: c * _unit_root((k * n) % T, T) for k, c in self._coeffs.items()}
        )

    def conj(self) -> TrigPoly:
        """Pointwise complex conjugate on the real line."""
        return TrigPoly(self._period, {-k: c.conjugate() for k, c in self._coeffs.items()})

    def is_real_on_reals(self, tol: float = 1e-12) -> bool:
        if tol < 0:
            raise ValueError("tol must be nonnegative")
        return all(
            abs(self.coeff(-k) - c.conjugate()) <= tol for k, c in self._coeffs.items()
        )

    def real_part(self) -> TrigPoly:
        """Project onto the real-on-reals subspace, (P + conj P) / 2."""
        return (self + self.conj()).scale(0.5)

    def allclose(self, other: TrigPoly, atol: float = 1e-12) -> bool:
        T, a, b = self._common(other)
        keys = set(a._coeffs) | set(b._coeffs)
        return all(abs(a.coeff(k) - b.coeff(k)) <= atol for k in keys)

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self._period == other._period and dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self):
        return hash((self._period, tuple(self._coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {_fmt(c)}" for k, c in self._coeffs.items())
        return f"TrigPoly(period={self._period}, {{{body}}})"

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "period": self._period,
            "coeffs": [[k, c.real, c.imag] for k, c in self._coeffs.items()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> TrigPoly:
        try:
            period = data["period"]
            rows = data["coeffs"]
            coeffs = {}
            for k, re, im in rows:
                coeffs[int(k)] = complex(float(re), float(im))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed trigonometric polynomial record: {exc}") from exc
        return cls(period, coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> TrigPoly:
        return cls.from_dict(json.loads(text))


def _unit_root(r: int, T: int) -> complex:
    """exp(2 pi i r / T), exact on the real and imaginary axes."""
    if r == 0:
        return 1 + 0j
    if 2 * r == T:
        return -1 + 0j
    if 4 * r == T:
        return 1j
    if 4 * r == 3 * T:
        return -1j
    t = 2 * math.pi * r / T
    return complex(math.cos(t), math.sin(t))


def _fmt(c: complex) -> str:
    return f"{c.real:.6g}" if c.imag == 0 else f"{c:.6g}"

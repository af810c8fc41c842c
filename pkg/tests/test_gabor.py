import csv
import io
import json
import math

import numpy as np
import pytest

from pouframes.constructions import (
    DualPair,
    build_n2,
    build_p1,
    example_dual_pair,
    inductive_family,
    same_support_dual_pair,
    sine_power_dual_pair,
    sine_squared_base,
    tight_window,
)
from pouframes.gabor import (
    analysis,
    duality_residual,
    necessity_probe,
    overlap_n_max,
    painless_frame_bounds,
    reconstruction_error,
    synthesis,
)
from pouframes.pou import Window
from pouframes.trigpoly import TrigPoly


def indicator(N=1):
    return Window(TrigPoly.constant(1.0), N)


def brute_duality(g, h, b, n, x):
    """Direct sum over a wide k range with plain numpy indicators."""
    acc = np.zeros_like(x, dtype=complex)
    for k in range(-20, 21):
        acc += np.conj(g.evaluate(x + n / b + k, closed=False)) * h.evaluate(x + k, closed=False)
    return np.max(np.abs(acc - (b if n == 0 else 0)))


class TestDualityResidual:
    def test_example_pair(self):
        rep = duality_residual(example_dual_pair(), 2000)
        assert rep.n_range == (-1, 1)
        assert rep.max_residual <= 1e-10
        assert rep.is_dual(1e-10)

    def test_tight_self_pair(self):
        g = tight_window(2, 1, 0.5)
        rep = duality_residual(DualPair(g, g, 0.5))
        assert rep.shift_residuals[0] <= 1e-12
        assert max(rep.shift_residuals.values()) <= 1e-12

    def test_sin2_not_dual(self, sin2):
        g = Window(sin2, 2)
        rep = duality_residual(DualPair(g, g, 0.5))
        # sin^4 + cos^4 - 1/2 peaks at x = 0; the offset grid comes within half a step
        assert abs(rep.shift_residuals[0] - 0.5) < 1e-5
        assert not rep.is_dual()

    def test_matches_brute_force(self):
        pair = example_dual_pair(b=0.3)
        x = (np.arange(64) + 0.5) / 64
        rep = duality_residual(pair, 64)
        for n in range(-3, 4):
            brute = brute_duality(pair.g, pair.h, pair.b, n, x)
            assert abs(rep.shift_residuals.get(n, 0.0) - brute) < 1e-14

    def test_nonpainless_offdiagonal_detected(self, sin2):
        # b = 2/3 > 1/N: the n = 1 condition is no longer automatic
        g = Window(sin2, 2)
        rep = duality_residual(DualPair(g, g, 2 / 3))
        assert rep.shift_residuals[1] > 1e-3

    def test_n_max_validation(self):
        pair = example_dual_pair()
        with pytest.raises(ValueError, match="n_max"):
            duality_residual(pair, 100, n_max=0)
        with pytest.raises(ValueError, match="grid_points"):
            duality_residual(pair, 8)
        assert duality_residual(pair, 100, n_max=4).n_range == (-4, 4)

    def test_overlap_range(self):
        pair = example_dual_pair()
        # g on [0, 2], h on [-1, 3]: shift 3 still touches, shift 6 is disjoint
        assert overlap_n_max(pair.g, pair.h, 1 / 3) == 1
        assert overlap_n_max(pair.g, pair.h, 0.5) == 2

    def test_json(self):
        d = json.loads(duality_residual(example_dual_pair(), 100).to_json())
        assert d["n_range"] == [-1, 1] and set(d["shift_residuals"]) == {"-1", "0", "1"}


class TestPainlessBridge:
    @pytest.mark.parametrize("seed", range(50))
    def test_duality_equals_periodized_product(self, seed):
        rng = np.random.default_rng(seed)
        N = int(rng.integers(2, 5))
        if N == 2:
            L1, L2 = (int(v) for v in rng.integers(1, 4, 2))
            pair = same_support_dual_pair(L1, L2, 0.5)
            b = float(rng.uniform(0.05, 0.5))
            pair = DualPair(pair.g, pair.h, b)
        else:
            b = float(rng.uniform(0.05, 1 / N))
            pair = DualPair(Window(build_p1(N), N), Window(inductive_family(N, 2)[-1], N), b)
        rep = duality_residual(pair, 256)
        x = (np.arange(256) + 0.5) / 256
        prod = sum(pair.g(x + k) * pair.h(x + k) for k in range(-1, N + 1))
        assert abs(rep.shift_residuals[0] - np.max(np.abs(prod - b))) < 1e-14
        assert all(r <= 1e-14 for n, r in rep.shift_residuals.items() if n)


class TestFrameBounds:
    def test_tight(self):
        fb = painless_frame_bounds(tight_window(2, 1, 0.5), 0.5)
        assert abs(fb.A - 1) < 1e-12 and abs(fb.B - 1) < 1e-12

    def test_sin2(self, sin2):
        fb = painless_frame_bounds(Window(sin2, 2), 0.5)
        assert abs(fb.A - 1) < 1e-9 and abs(fb.B - 2) < 1e-9

    def test_indicator(self):
        fb = painless_frame_bounds(indicator(), 1.0)
        assert fb.A == fb.B == 1.0

    def test_rejects_non_painless(self, sin2):
        with pytest.raises(ValueError, match="painless"):
            painless_frame_bounds(Window(sin2, 2), 0.6)

    @pytest.mark.parametrize("L1,L2,b", [(1, 1, 0.5), (2, 2, 0.5), (1, 2, 0.25)])
    def test_sandwich_for_duals(self, L1, L2, b):
        pair = same_support_dual_pair(L1, L2, b)
        assert duality_residual(pair).is_dual(1e-9)
        for w in (pair.g, pair.h):
            fb = painless_frame_bounds(w, b)
            assert 0 < fb.A <= fb.B < np.inf


class TestAnalysisSynthesis:
    def setup_method(self):
        self.x = np.linspace(0, 1, 2049)

    def test_unit_inner_product(self):
        f = np.ones_like(self.x)
        c = analysis(f, self.x, indicator(), 1.0, 1, [0])
        assert abs(c[0, 0] - 1) < 1e-12
        assert abs(c[1, 0]) < 1e-12

    def test_sin4_integral(self, sin2):
        x = np.linspace(0, 2, 4097)
        g = Window(sin2, 2)
        c = analysis(g(x).real, x, g, 0.5, 0, [0])
        assert abs(c[0, 0] - 0.75) < 1e-12

    def test_empty_overlap(self):
        c = analysis(np.ones_like(self.x), self.x, indicator(), 1.0, 2, [5])
        assert not np.any(c.coeffs)

    def test_csv(self):
        c = analysis(np.ones_like(self.x), self.x, indicator(), 1.0, 1, [0, 1])
        rows = list(csv.reader(io.StringIO(c.to_csv())))
        assert rows[0] == ["m", "n", "re", "im"] and len(rows) == 1 + 3 * 2

    def test_synthesis_trivial(self, sin2):
        h = Window(sin2, 2)
        x = np.linspace(-1, 3, 50)
        c = analysis(np.zeros(3), np.arange(3.0), h, 0.5, 2, [0, 1])
        assert not np.any(synthesis(c, h, 0.5, x))
        c.coeffs[c.m_max, 0] = 1
        np.testing.assert_allclose(synthesis(c, h, 0.5, x), h(x), atol=1e-15)

    def test_reconstruction(self):
        pair = example_dual_pair()
        errs = {m: reconstruction_error(pair, m) for m in (8, 16, 32, 50, 64)}
        assert errs[50] <= 1e-3
        ms = sorted(errs)
        for a, b in zip(ms, ms[1:]):
            assert errs[b] <= errs[a] * 1.05

    def test_reconstruction_same_support_pairs(self):
        for L1, L2 in [(1, 1), (2, 2)]:
            pair = same_support_dual_pair(L1, L2, 0.5)
            e = [reconstruction_error(pair, m) for m in (8, 16, 32, 64)]
            assert all(b <= a * 1.05 for a, b in zip(e, e[1:]))
            assert e[-1] < 1e-3


class TestNecessityProbe:
    def test_sin2_n2(self, sin2):
        r = necessity_probe(sin2, sin2, 2, 0.6)
        # max of sin^2(u) sin^2(pi/6 - u) on (0, pi/6) sits at u = pi/12
        assert abs(r - math.sin(math.pi / 12) ** 4) < 1e-6
        assert r > 1e-3

    def test_zero_window(self, sin2):
        with pytest.warns(UserWarning, match="zero"):
            assert necessity_probe(TrigPoly.zero(2), sin2, 2, 0.6) == 0.0

    def test_p1_n3(self):
        P = build_p1(3)
        assert necessity_probe(P, P, 3, 0.5) > 0

    def test_range(self, sin2):
        for b in (0.5, 1.0, 0.2):
            with pytest.raises(ValueError):
                necessity_probe(sin2, sin2, 2, b)

    def test_requires_periodic(self, sin2):
        with pytest.raises(ValueError, match="periodic"):
            necessity_probe(sin2, TrigPoly(3, {0: 1}).rescale_period(3) + TrigPoly(3, {1: 1, -1: 1}), 2, 0.6)

    def test_agrees_with_duality_residual(self, sin2):
        # the probe is a lower bound for the n = 1 residual of the full condition
        for b in (0.55, 0.75):
            g = Window(sin2, 2)
            full = duality_residual(DualPair(g, g, b), 4000).shift_residuals[1]
            assert necessity_probe(sin2, sin2, 2, b) <= full + 1e-9

    @pytest.mark.parametrize("N", [2, 3])
    def test_positive_for_constructions(self, N):
        pairs = _shipped_pairs(N)
        for b in (1 / N + 0.05, 0.5 * (1 / N + 1)):
            for G, H in pairs:
                assert necessity_probe(G, H, N, b) > 1e-6


def _shipped_pairs(N):
    if N == 2:
        out = []
        for L1, L2 in [(1, 1), (2, 2), (1, 2)]:
            p = same_support_dual_pair(L1, L2, 0.5)
            out.append((p.g.poly, p.h.poly))
        P = build_n2(sine_squared_base(2), 2)
        out.append((P, P))
        return out
    p = sine_power_dual_pair(3, 1, 1, 1 / 3)
    t = tight_window(3, 2, 1 / 3).poly
    return [(p.g.poly, p.h.poly), (t, t)] + [(P, P) for P in inductive_family(3, 3)]

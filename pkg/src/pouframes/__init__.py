"""Smooth partition-of-unity windows from trigonometric polynomials, and dual Gabor frames built on them."""

from .constructions import (
    example_dual_pair,
    DualPair,
    build_inductive,
    build_n2,
    build_p1,
    dual_coeffs_window,
    inductive_family,
    same_support_dual_pair,
    sine_power,
    sine_power_dual_pair,
    sine_squared_base,
    tight_window,
)
from .gabor import (
    CoefficientTable,
    DualityReport,
    FrameBounds,
    analysis,
    duality_residual,
    necessity_probe,
    reconstruction_error,
    painless_frame_bounds,
    synthesis,
)
from .pou import (
    SmoothnessReport,
    Window,
    coefficient_pou_check,
    factorize,
    sampled_pou_check,
    smoothness_order,
)
from .trigpoly import TrigPoly

__version__ = "0.1.0"

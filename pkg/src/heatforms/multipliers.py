"""Radial spectral multipliers of the Laplacian of Laplace-transform type.

A bounded profile A(t) on t > 0 induces the multiplier
a(lambda) = integral_0^inf lambda A(t) exp(-lambda t) dt, i.e. an average
of A against a probability density; hence |a| <= sup |A| and the operator
a(-Laplacian) is bounded on L^p by (p* - 1) sup |A|. Imaginary powers of
the Laplacian arise from A(t) = t^{-is} / Gamma(1 - is).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gamma as complex_gamma

from .errors import AccuracyError
from .fields import FormField
from .fourier import _lattice

# Substituting t = e^v / lambda turns the defining integral into
#   a(lambda) = integral_R A(e^v / lambda) exp(v - e^v) dv
# with a lambda-independent weight, so one trapezoid grid in v serves every
# lambda at once. The truncation tails are sup|A| * e^{V_LO} on the left
# and sup|A| * exp(-e^{V_HI}) on the right.
_V_LO = -23.0
_V_HI = 3.4
_H_START = 0.25
_MAX_HALVINGS = 8


@dataclass(frozen=True)
class SpectralSymbol:
    """Laplace-transform-type multiplier described by its time profile."""

    profile: Callable[[np.ndarray], np.ndarray]
    sup_profile: float | None = None
    zero_limit: complex | None = None  # value used at the zero frequency
    real_valued: bool = False
    name: str = ""

    def multiplier(self, lam: float, target: float = 1e-8) -> complex:
        return laplace_symbol_eval(self, lam, target)


def identity_symbol() -> SpectralSymbol:
    """Profile 1; the multiplier is identically 1."""
    return SpectralSymbol(
        profile=lambda t: np.ones_like(t),
        sup_profile=1.0,
        zero_limit=1.0,
        real_valued=True,
        name="identity",
    )


def imaginary_power_symbol(s: float) -> SpectralSymbol:
    """Profile t^{-is} / Gamma(1 - is), giving the multiplier lambda^{is}."""
    g = complex(complex_gamma(1.0 - 1j * s))
    return SpectralSymbol(
        profile=lambda t: t ** (-1j * s) / g,
        sup_profile=float(1.0 / abs(g)),
        zero_limit=None if s != 0.0 else 1.0,
        real_valued=(s == 0.0),
        name=f"imaginary-power s={s}",
    )


def _trapezoid_values(profile, lams, h):
    v = np.arange(_V_LO, _V_HI + 0.5 * h, h)
    weight = np.exp(v - np.exp(v)) * h
    weight[0] *= 0.5
    weight[-1] *= 0.5
    t_nodes = np.exp(v)[None, :] / lams[:, None]
    return profile(t_nodes) @ weight.astype(complex)


def laplace_symbol_eval_many(sym: SpectralSymbol, lams, target: float = 1e-8, chunk: int = 2048):
    """Vectorized quadrature of the multiplier at many positive lambdas.

    Trapezoid in v = log(lambda t), halving the step until the change is
    below target (relative); the last change is the error estimate.
    Raises AccuracyError with the achieved estimate if the cap is hit.
    """
    lams = np.asarray(lams, dtype=float)
    if np.any(lams <= 0):
        raise ValueError("lambda must be positive")
    flat = lams.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    errs = np.empty(flat.shape)
    for start in range(0, flat.size, chunk):
        block = flat[start : start + chunk]
        h = _H_START
        prev = _trapezoid_values(sym.profile, block, h)
        for _ in range(_MAX_HALVINGS):
            h *= 0.5
            cur = _trapezoid_values(sym.profile, block, h)
            scale = np.maximum(np.abs(cur), 1e-30)
            err = np.abs(cur - prev) / scale
            prev = cur
            if np.max(err) <= target:
                break
        else:
            raise AccuracyError(
                f"quadrature stalled at relative error {np.max(err):.3e}",
                achieved=float(np.max(err)),
            )
        out[start : start + chunk] = cur
        errs[start : start + chunk] = err
    return out.reshape(lams.shape), errs.reshape(lams.shape)


def laplace_symbol_eval(sym: SpectralSymbol, lam: float, target: float = 1e-8) -> complex:
    """Quadrature value of the multiplier at a single lambda > 0."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    values, _ = laplace_symbol_eval_many(sym, np.array([lam]), target)
    return complex(values[0])


def apply_spectral_multiplier(sym: SpectralSymbol, field: FormField, target: float = 1e-8) -> FormField:
    """Multiply every Fourier mode by a(4 pi^2 |xi|^2).

    The zero frequency is scaled by the symbol's declared zero limit, or
    annihilated when none is declared. Output components are real when
    the symbol declares itself real-valued, complex otherwise.
    """
    if not field.is_finite():
        raise ValueError("field has non-finite samples")
    _, xi_sq, _ = _lattice(field.dims, field.L)
    lam_grid = 4.0 * np.pi**2 * xi_sq
    flat = lam_grid.reshape(-1)
    positive = flat > 0.0
    unique, inverse = np.unique(flat[positive], return_inverse=True)
    values, _ = laplace_symbol_eval_many(sym, unique, target)
    mult = np.empty(flat.shape, dtype=complex)
    mult[positive] = values[inverse]
    mult[~positive] = 0.0 if sym.zero_limit is None else sym.zero_limit
    mult = mult.reshape(field.dims)
    comps = {}
    for m, c in field.components.items():
        out = np.fft.ifftn(np.fft.fftn(c) * mult)
        comps[m] = out.real if sym.real_valued else out
    return FormField(field.n, field.dims, field.L, comps)


def imaginary_power_constant(s: float, p: float) -> float:
    """Operator-norm bound (p* - 1) / |Gamma(1 - is)| for the power is."""
    p = float(p)
    if not p > 1.0 or not np.isfinite(p):
        raise ValueError("exponent must lie in (1, inf)")
    p_star = max(p, p / (p - 1.0))
    return float((p_star - 1.0) / abs(complex_gamma(1.0 - 1j * s)))

"""Form-valued fields on periodic grids, their norms, and FFLD files.

Conventions used package-wide:

* The domain is the torus [0, L)^n sampled on a regular grid with dims[a]
  points along axis a (powers of two). Grid point j has coordinate
  j * L / dims[a].
* A field carries one real scalar grid per subset of {1, ..., n}; the set
  of subsets present is determined by the grades of the field (all grades,
  one grade, or any subset of grades).
* Fourier coefficients follow f(x) = sum_k c_k exp(i 2 pi k.x / L) with
  c_k = fftn(samples) / prod(dims), so the frequency of lattice index k is
  xi = k / L.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import FFLDError

FFLD_MAGIC = "FFLD1 "
FFLD_ORDER = "ascending-mask"
FFLD_LAYOUT = "component-major,row-major"
FFLD_DTYPE = "f64le"


def _is_pow2(v: int) -> bool:
    return v >= 2 and (v & (v - 1)) == 0


def masks_for_grades(n: int, grades) -> list[int]:
    """Ascending masks whose popcount lies in the given grade set."""
    gset = set(grades)
    return [m for m in range(1 << n) if m.bit_count() in gset]


@dataclass
class FormField:
    """Periodic grid field with one scalar component per subset."""

    n: int
    dims: tuple[int, ...]
    L: float
    components: dict[int, np.ndarray]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != self.n:
            raise ValueError("need one grid size per axis")
        if not all(_is_pow2(d) for d in self.dims):
            raise ValueError("grid sizes must be powers of two (>= 2)")
        if not self.L > 0:
            raise ValueError("period length must be positive")
        for mask, comp in self.components.items():
            if mask < 0 or mask >> self.n:
                raise ValueError(f"component mask {mask} invalid for n={self.n}")
            if comp.shape != self.dims:
                raise ValueError("component grid shape does not match dims")

    @classmethod
    def zeros(cls, n, dims, L=1.0, grades=None) -> "FormField":
        if grades is None:
            grades = range(n + 1)
        comps = {m: np.zeros(tuple(dims)) for m in masks_for_grades(n, grades)}
        return cls(n, tuple(dims), L, comps)

    @property
    def masks(self) -> list[int]:
        return sorted(self.components)

    @property
    def grades(self) -> frozenset:
        return frozenset(m.bit_count() for m in self.components)

    @property
    def cell_volume(self) -> float:
        return prod(self.L / d for d in self.dims)

    def copy(self) -> "FormField":
        return FormField(
            self.n, self.dims, self.L, {m: c.copy() for m, c in self.components.items()}
        )

    def _like(self, comps) -> "FormField":
        return FormField(self.n, self.dims, self.L, comps)

    def _check_compatible(self, other):
        if (self.n, self.dims, self.masks) != (other.n, other.dims, other.masks) or (
            self.L != other.L
        ):
            raise ValueError("fields have different grids or components")

    def __add__(self, other):
        self._check_compatible(other)
        return self._like(
            {m: self.components[m] + other.components[m] for m in self.components}
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return self._like(
            {m: self.components[m] - other.components[m] for m in self.components}
        )

    def __mul__(self, scalar):
        return self._like({m: c * scalar for m, c in self.components.items()})

    __rmul__ = __mul__

    def pointwise_square(self) -> np.ndarray:
        """Grid of sum_I f_I(x)^2 (|.|^2 for complex components)."""
        out = np.zeros(self.dims)
        for comp in self.components.values():
            out += np.abs(comp) ** 2 if np.iscomplexobj(comp) else comp**2
        return out

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(c)) for c in self.components.values())


def lp_norm(field: FormField, p: float) -> float:
    """Riemann-sum L^p norm of the pointwise Euclidean length."""
    if p < 1:
        raise ValueError("exponent must be >= 1")
    density = field.pointwise_square()
    return float((field.cell_volume * np.sum(density ** (p / 2.0))) ** (1.0 / p))


def cosine_field(n, dims, L, kvec, mask, amplitude=1.0, phase=0.0) -> FormField:
    """amplitude * cos(2 pi k.x / L + phase) placed in one component."""
    grids = np.meshgrid(
        *[np.arange(d) * (L / d) for d in dims], indexing="ij", sparse=True
    )
    arg = sum(2.0 * np.pi * kvec[a] / L * grids[a] for a in range(n))
    comp = amplitude * np.cos(arg + phase)
    return FormField(n, tuple(dims), L, {mask: np.broadcast_to(comp, tuple(dims)).copy()})


def random_band_limited(
    n, dims, L, rng, kmax=3, grades=None, mean_zero=True
) -> FormField:
    """Gaussian field filtered to lattice frequencies |k_a| <= kmax."""
    if grades is None:
        grades = range(n + 1)
    dims = tuple(dims)
    keep = np.ones(dims, dtype=bool)
    for a, d in enumerate(dims):
        k = np.fft.fftfreq(d) * d
        shape = [1] * n
        shape[a] = d
        keep &= np.abs(k.reshape(shape)) <= kmax
    comps = {}
    for m in masks_for_grades(n, grades):
        spectrum = np.fft.fftn(rng.standard_normal(dims))
        spectrum[~keep] = 0.0
        if mean_zero:
            spectrum[(0,) * n] = 0.0
        comps[m] = np.fft.ifftn(spectrum).real
    return FormField(n, dims, L, comps)


def write_ffld(field: FormField, path) -> None:
    """Write the FFLD v1 container (header line + little-endian doubles)."""
    grades = sorted(field.grades)
    expected = masks_for_grades(field.n, grades)
    if expected != field.masks:
        raise FFLDError("component set is not a full union of grades")
    for comp in field.components.values():
        if np.iscomplexobj(comp):
            raise FFLDError("FFLD stores real fields only")
    header = {
        "n": field.n,
        "dims": list(field.dims),
        "L": field.L,
        "grades": grades,
        "order": FFLD_ORDER,
        "layout": FFLD_LAYOUT,
        "dtype": FFLD_DTYPE,
    }
    with open(path, "wb") as fh:
        fh.write(FFLD_MAGIC.encode("ascii"))
        fh.write(json.dumps(header).encode("ascii"))
        fh.write(b"\n")
        for mask in field.masks:
            fh.write(np.ascontiguousarray(field.components[mask], dtype="<f8").tobytes())


def read_ffld(path) -> FormField:
    """Read an FFLD v1 file, rejecting any inconsistent header or payload."""
    with open(path, "rb") as fh:
        line = fh.readline()
        payload = fh.read()
    if not line.startswith(FFLD_MAGIC.encode("ascii")):
        raise FFLDError("missing FFLD1 magic")
    try:
        header = json.loads(line[len(FFLD_MAGIC):].decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FFLDError(f"unparseable header: {exc}") from exc
    try:
        n = int(header["n"])
        dims = tuple(int(d) for d in header["dims"])
        length = float(header["L"])
        grades = [int(g) for g in header["grades"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FFLDError(f"bad header field: {exc}") from exc
    if header.get("order") != FFLD_ORDER:
        raise FFLDError(f"unsupported order {header.get('order')!r}")
    if header.get("layout") != FFLD_LAYOUT:
        raise FFLDError(f"unsupported layout {header.get('layout')!r}")
    if header.get("dtype") != FFLD_DTYPE:
        raise FFLDError(f"unsupported dtype {header.get('dtype')!r}")
    if n < 1 or len(dims) != n or not length > 0:
        raise FFLDError("inconsistent n/dims/L")
    if n > 16:  # 2^n components; refuse absurd headers before allocating
        raise FFLDError(f"dimension n={n} exceeds the supported cap 16")
    if any(not 0 <= g <= n for g in grades) or len(set(grades)) != len(grades):
        raise FFLDError("invalid grade list")
    masks = masks_for_grades(n, grades)
    points = prod(dims)
    expected_bytes = len(masks) * points * 8
    if len(payload) != expected_bytes:
        raise FFLDError(
            f"payload length {len(payload)} != expected {expected_bytes}"
        )
    raw = np.frombuffer(payload, dtype="<f8")
    comps = {
        mask: raw[idx * points : (idx + 1) * points].reshape(dims).astype(float)
        for idx, mask in enumerate(masks)
    }
    try:
        return FormField(n, dims, length, comps)
    except ValueError as exc:
        raise FFLDError(str(exc)) from exc


class TrigSeries:
    """Sparse trigonometric form of one periodic scalar grid.

    Supports exact evaluation of the function, its heat extension, and its
    gradient at arbitrary (off-grid) points; used by the path-simulation
    checks where positions do not sit on the grid.
    """

    def __init__(self, n, L, modes):
        self.n = n
        self.L = float(L)
        items = sorted(modes.items())
        self.kvecs = np.array([k for k, _ in items], dtype=float).reshape(-1, n)
        self.coeffs = np.array([c for _, c in items], dtype=complex)
        self.ksq = np.sum(self.kvecs**2, axis=1) / self.L**2

    @classmethod
    def from_grid(cls, grid, L, tol=1e-12) -> "TrigSeries":
        grid = np.asarray(grid, dtype=float)
        n = grid.ndim
        coeff = np.fft.fftn(grid) / grid.size
        cutoff = tol * max(np.max(np.abs(coeff)), 1.0)
        modes = {}
        axes_k = [np.fft.fftfreq(d) * d for d in grid.shape]
        for idx in zip(*np.nonzero(np.abs(coeff) > cutoff)):
            k = tuple(axes_k[a][idx[a]] for a in range(n))
            modes[k] = complex(coeff[idx])
        return cls(n, L, modes)

    def mean(self) -> float:
        zero = np.all(self.kvecs == 0.0, axis=1)
        return float(np.sum(self.coeffs[zero]).real)

    def _phases(self, points, t):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        phase = pts @ self.kvecs.T * (2.0 * np.pi / self.L)
        weight = self.coeffs * np.exp(-2.0 * np.pi**2 * self.ksq * t)
        return np.exp(1j * phase) * weight  # (npoints, nmodes)

    def value(self, points, t=0.0) -> np.ndarray:
        """Heat extension at time t evaluated at points of shape (m, n)."""
        return self._phases(points, t).sum(axis=1).real

    def gradient(self, points, t=0.0) -> np.ndarray:
        """Spatial gradient of the heat extension; shape (m, n)."""
        terms = self._phases(points, t)
        factors = 1j * 2.0 * np.pi / self.L * self.kvecs  # (nmodes, n)
        return (terms[:, :, None] * factors[None, :, :]).sum(axis=1).real

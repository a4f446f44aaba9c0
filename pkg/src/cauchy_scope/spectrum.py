"""Boundary samples on uniform circle grids and their Fourier spectra.

A boundary function is represented by its values at the ``M``-th roots of
unity ``exp(2*pi*i*j/M)``.  Coefficients are the discrete approximation of

    f^(n) = (1/2pi) * integral of exp(-i n t) f(exp(i t)) dt,

computed with a single FFT, so the result is deterministic run to run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, InputError, PreconditionError
from .tolerances import DEFAULT_TOLERANCES

Generator = Callable[[np.ndarray], np.ndarray]


def grid(grid_size: int) -> np.ndarray:
    """Equispaced points ``exp(2*pi*i*j/M)``, ``j = 0..M-1``."""
    j = np.arange(grid_size)
    return np.exp(2j * np.pi * j / grid_size)


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    """Values ``f(exp(2*pi*i*j/M))`` of a boundary function.

    ``source`` is the generator the values came from, if known. It is only
    used to resample on a finer grid when a computation needs more
    resolution; sample-only inputs leave it ``None``.
    """

    values: np.ndarray
    source: Optional[Generator] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1:
            raise InputError("samples must be a one-dimensional array")
        if values.size < 4:
            raise InputError(f"grid_size must be at least 4, got {values.size}")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise InputError(f"non-finite sample at grid index {bad}")
        object.__setattr__(self, "values", _frozen(values))

    @property
    def grid_size(self) -> int:
        return int(self.values.size)

    @property
    def points(self) -> np.ndarray:
        return grid(self.grid_size)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def resample(self, grid_size: int) -> BoundarySamples:
        if self.source is None:
            raise PreconditionError("samples carry no generator; cannot resample")
        return sample(self.source, grid_size)

    def map(self, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> BoundarySamples:
        """Pointwise transform ``fn(z, values)``; keeps a generator when one exists."""
        z = self.points
        new_values = fn(z, self.values)
        source = None
        if self.source is not None:
            gen = self.source

            def source(zz, _gen=gen, _fn=fn):
                return _fn(zz, _gen(zz))

        return BoundarySamples(new_values, source)


def sample(generator: Generator, grid_size: int) -> BoundarySamples:
    """Evaluate ``generator`` on the ``grid_size``-point circle grid."""
    if grid_size < 4:
        raise PreconditionError(f"grid_size must be at least 4, got {grid_size}")
    z = grid(grid_size)
    with np.errstate(all="ignore"):
        values = np.asarray(generator(z), dtype=complex)
    if values.shape == ():
        values = np.full(grid_size, complex(values))
    if values.shape != (grid_size,):
        raise InputError(f"generator returned shape {values.shape}, expected ({grid_size},)")
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise InputError(f"generator produced a non-finite value at grid index {bad}")
    return BoundarySamples(values, generator)


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Coefficients ``f^(n)`` for ``-K <= n <= K``.

    ``coeffs[n + K]`` holds ``f^(n)``; index with ``spec[n]`` instead.
    """

    half_window: int
    coeffs: np.ndarray
    source_grid_size: int
    source: Optional[BoundarySamples] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        K = int(self.half_window)
        if K < 0:
            raise PreconditionError("half_window must be nonnegative")
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (2 * K + 1,):
            raise PreconditionError(f"expected {2 * K + 1} coefficients, got {coeffs.shape}")
        if K > (self.source_grid_size - 1) // 2:
            raise PreconditionError(
                f"half_window {K} exceeds alias-free limit {(self.source_grid_size - 1) // 2}"
            )
        object.__setattr__(self, "half_window", K)
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    @classmethod
    def from_dict(cls, mapping: dict, half_window: int, grid_size: int) -> FourierSpectrum:
        """Build a spectrum from explicit ``{n: f^(n)}`` values (others zero)."""
        c = np.zeros(2 * half_window + 1, dtype=complex)
        for n, v in mapping.items():
            if abs(n) > half_window:
                raise PreconditionError(f"index {n} outside window {half_window}")
            c[n + half_window] = v
        return cls(half_window, c, grid_size)

    def __getitem__(self, n: int) -> complex:
        K = self.half_window
        if abs(n) > K:
            raise PreconditionError(f"index {n} outside window [-{K}, {K}]")
        return complex(self.coeffs[n + K])

    def indices(self) -> np.ndarray:
        K = self.half_window
        return np.arange(-K, K + 1)

    def negative(self, depth: int) -> np.ndarray:
        """``[f^(-1), f^(-2), ..., f^(-depth)]``."""
        K = self.half_window
        if depth > K:
            raise PreconditionError(f"requested depth {depth} exceeds window {K}")
        return np.array(self.coeffs[K - depth : K][::-1])

    def nonnegative(self) -> np.ndarray:
        """``[f^(0), ..., f^(K)]``."""
        return np.array(self.coeffs[self.half_window :])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def shifted(self, s: int) -> FourierSpectrum:
        """Spectrum of ``z**s * f``, restricted to the same window.

        Coefficients that would come from outside the original window are
        set to zero.
        """
        K = self.half_window
        out = np.zeros_like(self.coeffs)
        for idx, n in enumerate(self.indices()):
            if -K <= n - s <= K:
                out[idx] = self.coeffs[n - s + K]
        return FourierSpectrum(K, out, self.source_grid_size)


def fourier_coefficients(samples: BoundarySamples, half_window: int) -> FourierSpectrum:
    """Discrete Fourier coefficients ``(1/M) sum_j f_j exp(-2*pi*i*j*n/M)``, ``|n| <= K``."""
    M = samples.grid_size
    K = int(half_window)
    if K < 0 or K > (M - 1) // 2:
        raise PreconditionError(
            f"half_window {K} too large for grid_size {M} (limit {(M - 1) // 2})"
        )
    full = np.fft.fft(samples.values) / M
    n = np.arange(-K, K + 1)
    return FourierSpectrum(K, full[n % M], M, source=samples)


def synthesize(spec: FourierSpectrum, grid_size: Optional[int] = None) -> BoundarySamples:
    """Evaluate the trigonometric polynomial ``sum_{|n|<=K} c_n z^n`` on a grid."""
    M = spec.source_grid_size if grid_size is None else grid_size
    K = spec.half_window
    if 2 * K + 1 > M:
        raise PreconditionError(f"grid of size {M} cannot carry window {K} without aliasing")
    buf = np.zeros(M, dtype=complex)
    buf[spec.indices() % M] = spec.coeffs
    return BoundarySamples(np.fft.ifft(buf) * M)


@dataclass(frozen=True, eq=False)
class AnalyticSplit:
    """The decomposition ``f = F + conj(G)`` on the circle.

    ``analytic[n]`` is the coefficient of ``z**n`` in ``F`` (``n >= 0``) and
    ``coanalytic[k]`` the coefficient of ``z**k`` in ``G`` (``k >= 0``, with
    ``coanalytic[0] == 0``), i.e. ``conj(f^(-k))``.
    """

    analytic: np.ndarray
    coanalytic: np.ndarray
    source_grid_size: int

    def __post_init__(self):
        object.__setattr__(self, "analytic", _frozen(self.analytic))
        object.__setattr__(self, "coanalytic", _frozen(self.coanalytic))

    @property
    def half_window(self) -> int:
        return self.analytic.size - 1

    def coefficient(self, n: int) -> complex:
        """Reassembled ``f^(n)`` from the two halves."""
        if n >= 0:
            return complex(self.analytic[n])
        return complex(np.conj(self.coanalytic[-n]))


def analytic_split(spec: FourierSpectrum) -> AnalyticSplit:
    K = spec.half_window
    G = np.zeros(K + 1, dtype=complex)
    G[1:] = np.conj(spec.negative(K))
    return AnalyticSplit(spec.nonnegative(), G, spec.source_grid_size)


def evaluate_series(split: AnalyticSplit, z, part: str = "analytic", eps_interior=None):
    """Horner evaluation of the truncated ``F`` (``part="analytic"``) or ``G``
    (``part="coanalytic"``) inside the disc.

    Near the circle the truncated series is unreliable, so points with
    ``|z| > 1 - eps_interior`` are rejected.
    """
    eps = DEFAULT_TOLERANCES.eps_interior if eps_interior is None else eps_interior
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) > 1 - eps):
        raise DomainError(f"series evaluation requires |z| <= {1 - eps}; use the Cauchy evaluator")
    if part == "analytic":
        coeffs = split.analytic
    elif part == "coanalytic":
        coeffs = split.coanalytic
    else:
        raise ValueError(f"unknown part {part!r}")
    out = np.polynomial.polynomial.polyval(zz, coeffs)
    return complex(out) if np.ndim(out) == 0 else out


def series_tail_bound(split: AnalyticSplit, part: str = "analytic") -> float:
    """Estimate ``sum_{n>K} |c_n|`` assuming geometric decay of the last half of the window.

    When the whole second half sits at roundoff level relative to the larger
    of the two parts, the tail cannot be resolved and that level is returned.
    """
    c = np.abs(split.analytic if part == "analytic" else split.coanalytic)
    K = c.size - 1
    if K < 4:
        return float("inf")
    half = K // 2
    scale = max(np.max(np.abs(split.analytic)), np.max(np.abs(split.coanalytic)))
    noise = float(np.max(c[half:]))
    if noise <= 1e3 * np.finfo(float).eps * scale:
        return noise
    a, b = c[half], c[K]
    if b == 0:
        return 0.0
    if a == 0:
        return float("inf")
    rho = (b / a) ** (1.0 / (K - half))
    if rho >= 1:
        return float("inf")
    return float(b * rho / (1 - rho))


def fejer_weights(m: int, half_window: int) -> np.ndarray:
    n = np.arange(-half_window, half_window + 1)
    return np.clip(1.0 - np.abs(n) / (m + 1.0), 0.0, None)


def cesaro_coefficients(spec: FourierSpectrum, m: int) -> FourierSpectrum:
    """Coefficients of ``C_m = (S_0 + ... + S_m)/(m+1)``, i.e. ``f^(n) (1 - |n|/(m+1))``.

    A coefficient that is exactly zero in ``spec`` stays exactly zero.
    """
    if m < 0 or m > spec.half_window:
        raise PreconditionError(f"Cesaro order {m} outside [0, {spec.half_window}]")
    return FourierSpectrum(
        spec.half_window,
        spec.coeffs * fejer_weights(m, spec.half_window),
        spec.source_grid_size,
    )


def cesaro_mean(spec: FourierSpectrum, m: int) -> BoundarySamples:
    """Values of the ``m``-th Fejer mean on the source grid."""
    return synthesize(cesaro_coefficients(spec, m))

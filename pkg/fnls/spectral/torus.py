from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from fnls.utils.errors import LatticeError

LATTICE_TOL = 1e-9


@dataclass(frozen=True)
class TorusSpec:
    """
    The circle of circumference 2*pi*lam sampled at num_points collocation points.

    Lattice frequencies are k = m / lam for integer m in [-P/2, P/2 - 1]; the
    Nyquist index -P/2 is stored but never populated, so the resolvable band is
    |m| <= P/2 - 1.
    """

    lam: float
    num_points: int

    def __post_init__(self):
        if not (self.lam >= 1.0) or not math.isfinite(self.lam):
            raise LatticeError(f"lambda must be a finite real >= 1, got {self.lam}")
        if self.num_points < 4 or self.num_points % 2:
            raise LatticeError(f"num_points must be even and >= 4, got {self.num_points}")

    @property
    def volume(self) -> float:
        return 2.0 * np.pi * self.lam

    @property
    def dx(self) -> float:
        return self.volume / self.num_points

    @property
    def max_index(self) -> int:
        return self.num_points // 2 - 1

    @property
    def k_max(self) -> float:
        return self.max_index / self.lam

    @property
    def modes(self) -> np.ndarray:
        """Integer lattice indices m in FFT storage order."""
        return np.fft.fftfreq(self.num_points, d=1.0 / self.num_points).round().astype(np.int64)

    @property
    def frequencies(self) -> np.ndarray:
        return self.modes / self.lam

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.num_points) * self.dx

    def slot(self, m: int) -> int:
        """Storage position of lattice index m."""
        return int(m) % self.num_points

    def index_of(self, k: float) -> int:
        """Lattice index m = lam * k, rejecting off-lattice or unresolved k."""
        scaled = float(k) * self.lam
        m = int(round(scaled))
        if abs(scaled - m) > LATTICE_TOL * max(1.0, abs(scaled)):
            raise LatticeError(f"frequency {k} is not on the lattice Z/{self.lam}")
        if abs(m) > self.max_index:
            raise LatticeError(f"frequency {k} lies beyond K_max={self.k_max:g}")
        return m

    def resolves(self, m: int) -> bool:
        return abs(int(m)) <= self.max_index


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients u_hat(m / lam) in FFT storage order, read-only."""

    spec: TorusSpec
    coeffs: np.ndarray
    alpha: Optional[float] = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.shape != (self.spec.num_points,):
            raise LatticeError(
                f"expected {self.spec.num_points} coefficients, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # ---------- constructors ----------
    @classmethod
    def zeros(cls, spec: TorusSpec) -> "SpectralField":
        return cls(spec, np.zeros(spec.num_points, dtype=np.complex128))

    @classmethod
    def from_samples(cls, spec: TorusSpec, samples) -> "SpectralField":
        samples = np.asarray(samples, dtype=np.complex128)
        return cls(spec, spec.dx * np.fft.fft(samples))

    # ---------- views ----------
    def samples(self) -> np.ndarray:
        """Physical values at the collocation points."""
        return (self.spec.num_points / self.spec.volume) * np.fft.ifft(self.coeffs)

    def coefficient(self, k: float) -> complex:
        return complex(self.coeffs[self.spec.slot(self.spec.index_of(k))])

    def support(self) -> np.ndarray:
        """Lattice indices with non-zero coefficient, ascending."""
        return np.sort(self.spec.modes[self.coeffs != 0])

    def with_coeffs(self, coeffs) -> "SpectralField":
        return SpectralField(self.spec, coeffs, self.alpha)

    def scaled(self, factor: complex) -> "SpectralField":
        return self.with_coeffs(self.coeffs * factor)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        if other.spec != self.spec:
            raise LatticeError("fields live on different tori")
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        if other.spec != self.spec:
            raise LatticeError("fields live on different tori")
        return self.with_coeffs(self.coeffs - other.coeffs)


def synthesize(
    spec: TorusSpec,
    coeffs: Mapping[float, complex],
    by_index: bool = False,
    alpha: Optional[float] = None,
) -> SpectralField:
    """
    Field with exactly the given coefficients and zeros elsewhere.

    Keys are lattice frequencies k (or integer indices m when by_index=True).
    """
    out = np.zeros(spec.num_points, dtype=np.complex128)
    for key, value in coeffs.items():
        if by_index:
            m = int(key)
            if not spec.resolves(m):
                raise LatticeError(f"index {m} lies beyond K_max={spec.k_max:g}")
        else:
            m = spec.index_of(key)
        out[spec.slot(m)] = value
    return SpectralField(spec, out, alpha)

"""Periodic computational domain, Fourier transforms, and quadrature.

The domain is the rectangle [-Lx*pi, Lx*pi] x [-Ly*pi, Ly*pi] with periodic
boundary conditions, sampled on Nx x Ny equispaced nodes.  Arrays are stored
C-contiguous with shape (Ny, Nx), i.e. row-major with x varying fastest;
this layout is also the on-disk order of snapshot files.

Transform convention: unnormalized forward FFT, 1/(Nx*Ny) on the inverse
(the numpy/scipy default).  All spectral coefficients in this package use
this convention; Parseval then reads

    sum |u|^2 * dx*dy == sum |uhat|^2 * dx*dy / (Nx*Ny).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as _fft

from .errors import InvalidConfigError


def _fft_workers() -> int:
    return int(os.environ.get("CQNLS_THREADS", os.cpu_count() or 1))


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid2D:
    """Periodic rectangle [-Lx*pi, Lx*pi] x [-Ly*pi, Ly*pi] with FFT wavenumbers.

    Wavenumbers are integer multiples of 1/Lx (resp. 1/Ly) in standard FFT
    ordering, so that exp(i*kx*x) is exactly periodic on the domain.
    """

    Lx: float
    Ly: float
    Nx: int
    Ny: int
    x: np.ndarray = field(repr=False, compare=False, default=None)
    y: np.ndarray = field(repr=False, compare=False, default=None)
    kx: np.ndarray = field(repr=False, compare=False, default=None)
    ky: np.ndarray = field(repr=False, compare=False, default=None)
    k2: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def dx(self) -> float:
        return 2.0 * np.pi * self.Lx / self.Nx

    @property
    def dy(self) -> float:
        return 2.0 * np.pi * self.Ly / self.Ny

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (Ny, Nx): y along axis 0, x along axis 1."""
        return (self.Ny, self.Nx)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (X, Y) node coordinate arrays of shape (Ny, Nx)."""
        return np.meshgrid(self.x, self.y, indexing="xy")

    def dealias_mask(self) -> np.ndarray:
        """Boolean 2/3-rule mask (True = keep mode), shape (Ny, Nx)."""
        kx_max = np.abs(self.kx).max()
        ky_max = np.abs(self.ky).max()
        keep_x = np.abs(self.kx) <= (2.0 / 3.0) * kx_max
        keep_y = np.abs(self.ky) <= (2.0 / 3.0) * ky_max
        return keep_y[:, None] & keep_x[None, :]


def make_grid(Lx: float, Ly: float, Nx: int, Ny: int) -> Grid2D:
    """Build a Grid2D; Nx, Ny must be even powers of two >= 8.

    Raises InvalidConfigError for non-positive extents or unsupported
    mode counts.
    """
    if not (Lx > 0 and Ly > 0):
        raise InvalidConfigError(f"domain scales must be positive, got Lx={Lx}, Ly={Ly}")
    for name, n in (("Nx", Nx), ("Ny", Ny)):
        if not isinstance(n, (int, np.integer)) or n < 8 or not _is_power_of_two(int(n)):
            raise InvalidConfigError(f"{name} must be a power of two >= 8, got {n}")
    Nx, Ny = int(Nx), int(Ny)
    dx = 2.0 * np.pi * Lx / Nx
    dy = 2.0 * np.pi * Ly / Ny
    x = -np.pi * Lx + dx * np.arange(Nx)
    y = -np.pi * Ly + dy * np.arange(Ny)
    # fftfreq(N, d=L/N)[j] = j/L for j < N/2, then the negative branch;
    # so L*k runs over the integers -N/2 .. N/2-1 in FFT order.
    kx = np.fft.fftfreq(Nx, d=Lx / Nx)
    ky = np.fft.fftfreq(Ny, d=Ly / Ny)
    k2 = ky[:, None] ** 2 + kx[None, :] ** 2
    return Grid2D(Lx=float(Lx), Ly=float(Ly), Nx=Nx, Ny=Ny, x=x, y=y, kx=kx, ky=ky, k2=k2)


@dataclass
class Field:
    """Complex state u(x_j, y_m) sampled on a Grid2D, shape (Ny, Nx)."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.complex128)
        if vals.shape != self.grid.shape:
            raise InvalidConfigError(
                f"field shape {vals.shape} does not match grid shape {self.grid.shape}"
            )
        self.values = vals

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values.view(np.float64)).all())

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())


def transform(f: Field) -> np.ndarray:
    """Forward FFT of the field values (unnormalized)."""
    return _fft.fft2(f.values, workers=_fft_workers())


def inverse_transform(grid: Grid2D, fhat: np.ndarray) -> Field:
    """Inverse FFT (normalized by 1/(Nx*Ny)) back to a physical Field."""
    return Field(grid, _fft.ifft2(fhat, workers=_fft_workers()))


def fft2(values: np.ndarray) -> np.ndarray:
    return _fft.fft2(values, workers=_fft_workers())


def ifft2(vhat: np.ndarray) -> np.ndarray:
    return _fft.ifft2(vhat, workers=_fft_workers())


@dataclass(frozen=True)
class FieldIntegrals:
    """The four quadrature integrals used by the conserved quantities."""

    l2: float      # integral of |u|^2 (the mass)
    grad2: float   # integral of |grad u|^2
    l4: float      # integral of |u|^4
    l6: float      # integral of |u|^6


def quadrature_mass(f: Field) -> float:
    """Mass integral |u|^2 dx dy (trapezoidal on the periodic grid)."""
    a = f.values
    return float((a.real**2 + a.imag**2).sum() * f.grid.cell_area)


def quadrature_integrals(f: Field, fhat: np.ndarray | None = None) -> FieldIntegrals:
    """Compute {|u|^2, |grad u|^2, |u|^4, |u|^6} integrals over the domain.

    |grad u|^2 is evaluated spectrally as sum |k|^2 |uhat|^2; the optional
    fhat avoids one forward transform when the spectrum is already at hand.
    """
    g = f.grid
    a = f.values
    absq = a.real**2 + a.imag**2
    if fhat is None:
        fhat = transform(f)
    ahat_sq = fhat.real**2 + fhat.imag**2
    area = g.cell_area
    l2 = float(absq.sum() * area)
    grad2 = float((g.k2 * ahat_sq).sum() * area / (g.Nx * g.Ny))
    l4 = float((absq**2).sum() * area)
    l6 = float((absq**3).sum() * area)
    return FieldIntegrals(l2=l2, grad2=grad2, l4=l4, l6=l6)

"""Grid, transform, and quadrature tests."""

import numpy as np
import pytest

from cqnls.errors import InvalidConfigError, SnapshotFormatError
from cqnls.grid import (
    Field,
    inverse_transform,
    make_grid,
    quadrature_integrals,
    quadrature_mass,
    transform,
)
from cqnls.profiles import SolitonProfile1D, mass_1d
from cqnls.snapshots import MAGIC, read_snapshot, write_snapshot


def test_reference_grid_spacings():
    g = make_grid(40, 3, 1024, 32)
    assert g.dx == pytest.approx(80 * np.pi / 1024, rel=1e-15)
    assert np.abs(g.kx).max() == pytest.approx(512 / 40, rel=1e-15)
    g2 = make_grid(150, 3, 4096, 128)
    assert g2.dy == pytest.approx(6 * np.pi / 128, rel=1e-15)


def test_unit_torus_wavenumbers_fft_order():
    g = make_grid(1, 1, 8, 8)
    np.testing.assert_array_equal(g.kx, [0, 1, 2, 3, -4, -3, -2, -1])
    np.testing.assert_array_equal(g.ky, [0, 1, 2, 3, -4, -3, -2, -1])


def test_wavenumbers_are_integer_multiples():
    g = make_grid(40, 3, 64, 16)
    np.testing.assert_allclose(g.Lx * g.kx, np.rint(g.Lx * g.kx), atol=1e-12)
    np.testing.assert_allclose(g.Ly * g.ky, np.rint(g.Ly * g.ky), atol=1e-12)
    assert g.dx * g.Nx == pytest.approx(2 * np.pi * g.Lx, rel=1e-15)


@pytest.mark.parametrize("bad", [
    dict(Lx=0, Ly=1, Nx=16, Ny=16),
    dict(Lx=1, Ly=-2, Nx=16, Ny=16),
    dict(Lx=1, Ly=1, Nx=12, Ny=16),   # not a power of two
    dict(Lx=1, Ly=1, Nx=16, Ny=4),    # too small
    dict(Lx=1, Ly=1, Nx=17, Ny=16),   # odd
])
def test_make_grid_rejects_bad_configs(bad):
    with pytest.raises(InvalidConfigError):
        make_grid(**bad)


def test_constant_field_spectrum_is_dc_only():
    g = make_grid(2, 1, 16, 8)
    f = Field(g, np.full(g.shape, 1.5 - 0.5j))
    fhat = transform(f)
    assert fhat[0, 0] == pytest.approx((1.5 - 0.5j) * g.Nx * g.Ny)
    fhat[0, 0] = 0
    assert np.abs(fhat).max() < 1e-12


def test_pure_mode_lands_on_single_wavenumber():
    g = make_grid(3, 2, 32, 16)
    X, _ = g.meshgrid()
    f = Field(g, np.exp(1j * X / g.Lx))
    fhat = transform(f)
    ix = np.argmin(np.abs(g.kx - 1 / g.Lx))
    assert abs(fhat[0, ix]) == pytest.approx(g.Nx * g.Ny, rel=1e-12)
    fhat[0, ix] = 0
    assert np.abs(fhat).max() < 1e-9 * g.Nx * g.Ny


def test_roundtrip_and_linearity_random_fields():
    g = make_grid(5, 2, 64, 32)
    rng = np.random.default_rng(7)
    a = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    b = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    fa, fb = Field(g, a), Field(g, b)
    back = inverse_transform(g, transform(fa)).values
    assert np.abs(back - a).max() <= 1e-13 * np.abs(a).max()
    lhs = transform(Field(g, 2.5 * a + (0.3 - 1j) * b))
    rhs = 2.5 * transform(fa) + (0.3 - 1j) * transform(fb)
    assert np.abs(lhs - rhs).max() <= 1e-12 * np.abs(rhs).max()


def test_parseval_identity():
    g = make_grid(4, 3, 64, 32)
    rng = np.random.default_rng(11)
    f = Field(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    fhat = transform(f)
    phys = quadrature_mass(f)
    spec = float((np.abs(fhat) ** 2).sum()) * g.cell_area / (g.Nx * g.Ny)
    assert spec == pytest.approx(phys, rel=1e-12)


def test_zero_field_integrals():
    g = make_grid(1, 1, 16, 16)
    ints = quadrature_integrals(Field(g, np.zeros(g.shape, complex)))
    assert ints.l2 == ints.grad2 == ints.l4 == ints.l6 == 0.0


def test_y_independent_mass_matches_1d_quadrature():
    g = make_grid(40, 2, 1024, 32)
    p = SolitonProfile1D("cubic-quintic", 0.1)
    vals = np.broadcast_to(p.evaluate(g.x)[None, :], g.shape).astype(complex)
    m2d = quadrature_mass(Field(g, vals))
    assert m2d == pytest.approx(2 * np.pi * g.Ly * mass_1d(p), rel=1e-12)


def test_gradient_integral_of_plane_wave():
    # u = exp(i k x) has |grad u|^2 = k^2 |u|^2 exactly
    g = make_grid(2, 2, 32, 32)
    X, Y = g.meshgrid()
    k = 3 / g.Lx
    f = Field(g, np.exp(1j * k * X))
    ints = quadrature_integrals(f)
    assert ints.grad2 == pytest.approx(k**2 * ints.l2, rel=1e-12)


def test_integrals_nonnegative_random():
    g = make_grid(1, 1, 32, 32)
    rng = np.random.default_rng(3)
    ints = quadrature_integrals(
        Field(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)))
    assert ints.l2 > 0 and ints.grad2 > 0 and ints.l4 > 0 and ints.l6 > 0


def test_dealias_mask_shape_and_dc():
    g = make_grid(1, 1, 32, 16)
    m = g.dealias_mask()
    assert m.shape == g.shape
    assert m[0, 0]
    assert not m[0, g.Nx // 2]   # Nyquist column dropped
    assert not m[g.Ny // 2, 0]


def test_field_shape_validation():
    g = make_grid(1, 1, 16, 8)
    with pytest.raises(InvalidConfigError):
        Field(g, np.zeros((16, 8), complex))  # transposed


def test_snapshot_roundtrip(tmp_path):
    g = make_grid(2, 1, 16, 8)
    rng = np.random.default_rng(5)
    f = Field(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    path = tmp_path / "snap.cqnls"
    write_snapshot(path, f, t=1.25)
    f2, t = read_snapshot(path)
    assert t == 1.25
    assert (f2.grid.Lx, f2.grid.Ly, f2.grid.Nx, f2.grid.Ny) == (2.0, 1.0, 16, 8)
    np.testing.assert_array_equal(f2.values, f.values)


def test_snapshot_layout_is_row_major_x_fastest(tmp_path):
    g = make_grid(1, 1, 8, 8)
    vals = (np.arange(64, dtype=float) + 1j).reshape(8, 8)
    path = tmp_path / "snap.cqnls"
    write_snapshot(path, Field(g, vals), t=0.0)
    raw = path.read_bytes()
    assert raw[:6] == MAGIC
    payload = np.frombuffer(raw, dtype="<f8", offset=46)
    # first complex sample is u[iy=0, ix=0], second is u[iy=0, ix=1]
    assert payload[0] == 0.0 and payload[1] == 1.0
    assert payload[2] == 1.0 and payload[3] == 1.0


def test_snapshot_malformed_errors(tmp_path):
    p = tmp_path / "bad.cqnls"
    p.write_bytes(b"NOTMAG" + b"\0" * 100)
    with pytest.raises(SnapshotFormatError):
        read_snapshot(p)
    p2 = tmp_path / "short.cqnls"
    p2.write_bytes(b"CQ")
    with pytest.raises(SnapshotFormatError) as exc:
        read_snapshot(p2)
    assert exc.value.offset == 2

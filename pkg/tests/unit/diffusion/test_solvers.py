import numpy as np
import pytest

from binary_slab.diffusion import (
    DiffusionProblem,
    ode_residual,
    solve_diffusion_analytic,
    solve_diffusion_fd,
    write_coefficients,
)
from binary_slab.mixing import AveragedSpec
from binary_slab.utils.exceptions import InvalidInputError, ZeroAbsorptionError


@pytest.fixture
def set_b_average():
    return AveragedSpec(sigma_t=0.5, sigma_s=0.5 - 1.25e-4, sigma_a=1.25e-4, q=2.5e-4)


@pytest.fixture
def atomic_mix(set_b_average):
    return DiffusionProblem.from_average(set_b_average, 20.0)


@pytest.fixture
def standard_lp(set_b_average):
    return DiffusionProblem.from_average(
        set_b_average, 20.0, beta=1.375, model_tag="diffusion-LP"
    )


class TestDiffusionProblem:
    def test_from_average(self, atomic_mix):
        assert atomic_mix.D == pytest.approx(2 / 3)
        assert atomic_mix.d == pytest.approx(4 / 3)
        assert atomic_mix.sigma_a == 1.25e-4
        assert atomic_mix.q == 2.5e-4

    def test_beta_scales_coefficient_and_extrapolation(self, standard_lp):
        assert standard_lp.D == pytest.approx(1.375 / 1.5)
        assert standard_lp.d == pytest.approx(2.75 / 1.5)

    def test_coefficients(self, atomic_mix):
        coefficients = atomic_mix.coefficients()
        assert coefficients["kappa"] == pytest.approx(np.sqrt(1.25e-4 * 1.5))
        assert coefficients["L"] == pytest.approx(20.0 + 4 / 3)
        assert coefficients["beta"] == 1.0

    def test_beta_below_one_rejected(self, set_b_average):
        with pytest.raises(InvalidInputError):
            DiffusionProblem.from_average(set_b_average, 20.0, beta=0.5)

    def test_transport_tag_rejected(self, set_b_average):
        with pytest.raises(InvalidInputError):
            DiffusionProblem.from_average(set_b_average, 20.0, model_tag="LP")


class TestAnalytic:
    def test_atomic_mix_set_b(self, atomic_mix):
        field = solve_diffusion_analytic(atomic_mix)
        assert field.value_at_origin() == pytest.approx(0.0824, abs=1e-4)
        assert field.model_tag == "diffusion-AM"

    def test_standard_lp_set_b(self, standard_lp):
        field = solve_diffusion_analytic(standard_lp)
        assert field.value_at_origin() == pytest.approx(0.0632, abs=2e-4)

    def test_zero_source(self):
        p = DiffusionProblem(D=1.0, sigma_a=0.1, q=0.0, X=5.0, d=0.5)
        assert np.all(solve_diffusion_analytic(p).scalar_flux == 0.0)

    def test_vanishes_at_extrapolated_ends(self, atomic_mix):
        L = atomic_mix.extrapolated_half_width
        field = solve_diffusion_analytic(atomic_mix, np.array([-L, L]))
        np.testing.assert_allclose(field.scalar_flux, 0.0, atol=1e-15)

    def test_no_overflow_for_thick_slabs(self):
        p = DiffusionProblem(D=0.01, sigma_a=10.0, q=1.0, X=500.0, d=0.02)
        field = solve_diffusion_analytic(p)
        assert np.all(np.isfinite(field.scalar_flux))
        assert field.value_at_origin() == pytest.approx(0.1)

    def test_ode_residual(self, standard_lp):
        x = np.linspace(-standard_lp.X, standard_lp.X, 100)
        assert np.max(np.abs(ode_residual(standard_lp, x))) < 1e-12

    def test_zero_absorption_refused(self):
        p = DiffusionProblem(D=1.0, sigma_a=0.0, q=1.0, X=5.0, d=0.5)
        with pytest.raises(ZeroAbsorptionError):
            solve_diffusion_analytic(p)


class TestFiniteDifference:
    @pytest.mark.parametrize("problem_name", ["atomic_mix", "standard_lp"])
    def test_agrees_with_analytic(self, request, problem_name):
        p = request.getfixturevalue(problem_name)
        fd = solve_diffusion_fd(p, 10_000)
        inside = np.abs(fd.x) <= p.X
        exact = solve_diffusion_analytic(p, fd.x[inside]).scalar_flux
        error = np.abs(fd.scalar_flux[inside] - exact) / exact
        assert np.max(error) < 1e-6

    def test_symmetric(self, atomic_mix):
        fd = solve_diffusion_fd(atomic_mix, 200)
        np.testing.assert_allclose(
            fd.scalar_flux, fd.scalar_flux[::-1], rtol=1e-10, atol=1e-15
        )
        assert fd.scalar_flux[0] == 0.0
        assert fd.scalar_flux[-1] == 0.0

    def test_second_order(self):
        p = DiffusionProblem(D=1.0, sigma_a=1.0, q=1.0, X=5.0, d=0.5)
        errors = []
        for n_cells in (40, 80):
            fd = solve_diffusion_fd(p, n_cells)
            exact = solve_diffusion_analytic(p, fd.x).scalar_flux
            errors.append(np.max(np.abs(fd.scalar_flux - exact)))
        assert 3.5 < errors[0] / errors[1] < 4.5

    @pytest.mark.parametrize("n_cells", [8, 101])
    def test_invalid_cell_counts(self, atomic_mix, n_cells):
        with pytest.raises(InvalidInputError):
            solve_diffusion_fd(atomic_mix, n_cells)


def test_write_coefficients(tmp_path, standard_lp):
    path = write_coefficients(tmp_path / "coefficients.txt", standard_lp)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "model_tag = diffusion-LP"
    assert lines[1] == "beta = 1.375"
    names = [line.split(" = ")[0] for line in lines[1:]]
    assert names == ["beta", "D", "kappa", "d", "L"]

""" Tests for generating vectors, lattice points, shifts and cubature """
# pylint: disable=redefined-outer-name, missing-docstring
import numpy as np
import pytest

from latticeflow.lattice import GeneratingVector, lattice_points, shift_points, random_shift, qmc_integrate, \
                                shifted_estimate, save_generating_vector, load_generating_vector, \
                                monte_carlo_points
from latticeflow.exceptions import ValidationError, ParseError


@pytest.fixture
def gv64():
    return GeneratingVector(64, [1, 19])


class TestGeneratingVector:
    @pytest.mark.parametrize('n, z', [(8, [2]), (12, [1, 4]), (16, [0]), (16, [17])])
    def test_invalid_components(self, n, z):
        with pytest.raises(ValidationError):
            GeneratingVector(n, z)

    def test_invalid_modulus(self):
        with pytest.raises(ValidationError):
            GeneratingVector(0, [1])

    def test_single_point_accepts_any_component(self):
        gv = GeneratingVector(1, [5, 7, 12])
        assert np.array_equal(lattice_points(gv), np.zeros((1, 3)))

    def test_components_are_read_only(self, gv64):
        with pytest.raises(ValueError):
            gv64.z[0] = 3

    def test_restrict(self, gv64):
        assert gv64.restrict(16) == GeneratingVector(16, [1, 3])
        with pytest.raises(ValidationError):
            gv64.restrict(3)

    def test_prefix(self, gv64):
        assert gv64.prefix(1) == GeneratingVector(64, [1])


class TestLatticePoints:
    def test_small_lattice(self):
        points = lattice_points(GeneratingVector(4, [1, 3]))
        expected = [[0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [0.0, 0.0]]
        assert np.array_equal(points, expected)

    def test_first_coordinate(self, gv64):
        points = lattice_points(gv64)
        assert points.shape == (64, 2)
        assert np.array_equal(points[:-1, 0], np.arange(1, 64) / 64)
        assert np.array_equal(points[-1], [0, 0])

    @pytest.mark.parametrize('n, z', [(64, [1, 19]), (30, [1, 7, 11, 29]), (17, [3, 5, 16])])
    def test_columns_are_permutations(self, n, z):
        points = lattice_points(GeneratingVector(n, z))
        for column in points.T:
            assert np.array_equal(np.sort(column), np.arange(n) / n)

    def test_group_property(self):
        gv = GeneratingVector(32, [1, 7, 13])
        residues = {tuple(row) for row in gv.residues().tolist()}
        for a in gv.residues():
            for b in gv.residues():
                assert tuple(((a + b) % gv.n).tolist()) in residues

    def test_entries_in_unit_interval(self, gv64):
        points = lattice_points(gv64)
        assert np.all((points >= 0) & (points < 1))


class TestShift:
    def test_origin(self):
        assert np.allclose(shift_points([[0, 0]], [0.1, 0.3]), [[0.1, 0.3]])

    def test_wrap(self):
        assert np.allclose(shift_points([[0.75, 0.25]], [0.5, 0.9]), [[0.25, 0.15]])

    def test_zero_shift(self, gv64):
        points = lattice_points(gv64)
        assert np.array_equal(shift_points(points, np.zeros(2)), points)

    def test_dimension_mismatch(self, gv64):
        with pytest.raises(ValidationError):
            shift_points(lattice_points(gv64), [0.1, 0.2, 0.3])

    def test_reproducible(self):
        assert np.array_equal(random_shift(42, 5), random_shift(42, 5))

    def test_empty(self):
        assert random_shift(0, 0).shape == (0,)

    def test_uniform_mean(self):
        rng = np.random.default_rng(np.random.SFC64(3))
        draws = np.array([random_shift(rng, 3) for _ in range(10 ** 4)])
        assert np.all(np.abs(draws.mean(axis=0) - 0.5) < 0.02)
        assert np.all((draws >= 0) & (draws < 1))

    def test_monte_carlo_points(self):
        points = monte_carlo_points(1, 100, 4)
        assert points.shape == (100, 4)
        assert np.array_equal(points, monte_carlo_points(1, 100, 4))


class TestCubature:
    def test_constant(self, gv64):
        assert qmc_integrate(lambda y: np.ones(len(y)), lattice_points(gv64)) == 1

    @pytest.mark.parametrize('n, z', [(64, [19, 1]), (30, [7]), (17, [5, 3])])
    def test_linear(self, n, z):
        result = qmc_integrate(lambda y: y[:, 0], lattice_points(GeneratingVector(n, z)))
        assert result == pytest.approx((n - 1) / (2 * n), abs=1e-15)

    def test_not_vectorized(self, gv64):
        points = lattice_points(gv64)
        assert qmc_integrate(lambda y: y[0] * y[1], points, vectorized=False) == \
               pytest.approx(qmc_integrate(lambda y: y[:, 0] * y[:, 1], points), abs=1e-15)

    @pytest.mark.parametrize('n, z', [(16, [1, 5]), (32, [1, 13]), (8, [1, 3])])
    def test_trigonometric_monomials(self, n, z):
        gv = GeneratingVector(n, z)
        points = lattice_points(gv)
        for h1 in range(-8, 9):
            for h2 in range(-8, 9):
                h = np.array([h1, h2])
                value = qmc_integrate(lambda y, h=h: np.exp(2j * np.pi * (y @ h)), points)
                expected = 1.0 if (h @ gv.z) % n == 0 else 0.0
                assert abs(value - expected) < 1e-12

    def test_shifted_estimate_unbiased(self, gv64):
        mean, error = shifted_estimate(lambda y: y[:, 0] * y[:, 1], gv64, 200, rng=11)
        assert error > 0
        assert abs(mean - 0.25) <= 3 * error

    def test_single_shift(self, gv64):
        _, error = shifted_estimate(lambda y: y[:, 0], gv64, 1, rng=0)
        assert np.isnan(error)


class TestGeneratingVectorFile:
    def test_round_trip(self, gv64, tmp_path):
        path = tmp_path / 'gv.txt'
        save_generating_vector(gv64, path)
        assert load_generating_vector(path) == gv64

    def test_comments(self, tmp_path):
        path = tmp_path / 'gv.txt'
        path.write_text('# embedded vector\n16\n1  # first\n\n# more\n5\n')
        assert load_generating_vector(path) == GeneratingVector(16, [1, 5])

    def test_prefix(self, tmp_path):
        path = tmp_path / 'gv.txt'
        path.write_text('16\n1\n5\n7\n')
        assert load_generating_vector(path, dim=2) == GeneratingVector(16, [1, 5])
        with pytest.raises(ValidationError):
            load_generating_vector(path, dim=4)

    def test_not_coprime(self, tmp_path):
        path = tmp_path / 'gv.txt'
        path.write_text('16\n1\n8\n')
        with pytest.raises(ValidationError):
            load_generating_vector(path)

    def test_parse_error_line(self, tmp_path):
        path = tmp_path / 'gv.txt'
        path.write_text('16\n1\nfive\n')
        with pytest.raises(ParseError) as error:
            load_generating_vector(path)
        assert error.value.line == 3

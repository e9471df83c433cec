""" Tests for the periodic target and dataset files """
# pylint: disable=redefined-outer-name, missing-docstring
import numpy as np
import pytest

from latticeflow.research import PeriodicAlgebraicTarget, target_eval, dataset_columns, export_dataset, \
                                 ingest_dataset
from latticeflow.lattice import GeneratingVector, lattice_points, shift_points
from latticeflow.exceptions import ValidationError, ParseError


ZETA_2_5 = 1.341487257250917


@pytest.fixture
def target():
    return PeriodicAlgebraicTarget(0.5, 2.5, 4)


class TestTarget:
    def test_quarter_point(self):
        target = PeriodicAlgebraicTarget(0.5, 2.5, 1)
        assert target_eval(target, [0.25]) == pytest.approx(2 / 3, rel=1e-15)
        assert target([0.0]) == pytest.approx(1.0)

    def test_derived_quantities(self, target):
        assert target.a_min == pytest.approx(1 - 0.5 * ZETA_2_5, rel=1e-12)
        assert target.C == pytest.approx(1 / target.a_min)
        assert np.allclose(target.psi, 0.5 * np.arange(1, 5) ** -2.5)
        assert np.allclose(target.b.values, target.psi / target.a_min)
        assert target.b.p_star == pytest.approx(0.4)

    def test_batch(self, target):
        y = np.random.default_rng(0).uniform(size=(6, 4))
        values = target(y)
        assert values.shape == (6,)
        assert values[2] == pytest.approx(target(y[2]))

    def test_range(self):
        target = PeriodicAlgebraicTarget(0.5, 2.5, 10)
        gv = GeneratingVector(2 ** 10, [1, 433, 229, 311, 105, 407, 63, 455, 191, 343])
        values = target(shift_points(lattice_points(gv), np.full(10, 0.1)))
        assert values.min() >= 1 / (1 + 0.5 * ZETA_2_5)
        assert values.max() <= target.C

    @pytest.mark.parametrize('eta, q', [(0.0, 2.5), (0.5, 1.0), (0.8, 2.0)])
    def test_invalid(self, eta, q):
        with pytest.raises(ValidationError):
            PeriodicAlgebraicTarget(eta, q, 3)

    def test_wrong_dimension(self, target):
        with pytest.raises(ValueError):
            target(np.zeros((2, 3)))


class TestDataset:
    def test_columns(self):
        assert dataset_columns(2, 2) == ['y_1', 'y_2', 'G_1', 'G_2']

    def test_round_trip(self, target, tmp_path):
        points = shift_points(lattice_points(GeneratingVector(16, [1, 5, 7, 3])), [0.3, 0.1, 0.7, 0.9])
        targets = target(points)
        path = tmp_path / 'data.csv'
        export_dataset(points, targets, path)
        loaded_points, loaded_targets = ingest_dataset(path)
        assert np.array_equal(loaded_points, points)
        assert np.array_equal(loaded_targets[:, 0], targets)

    def test_two_points(self, tmp_path):
        path = tmp_path / 'data.csv'
        export_dataset([[0.1, 0.2], [0.3, 0.4]], [[1.0, 2.0], [3.0, 4.0]], path)
        points, targets = ingest_dataset(path, dim=2)
        assert points.tolist() == [[0.1, 0.2], [0.3, 0.4]]
        assert targets.tolist() == [[1.0, 2.0], [3.0, 4.0]]

    @pytest.mark.parametrize('content', ['', 'y_1,G_1\n'])
    def test_empty(self, content, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text(content)
        with pytest.raises(ValidationError):
            ingest_dataset(path)

    def test_malformed_row(self, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text('y_1,G_1\n0.1,1.0\n0.2,abc\n')
        with pytest.raises(ParseError) as error:
            ingest_dataset(path)
        assert error.value.line == 3

    def test_line_numbers_count_blank_lines(self, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text('y_1,G_1\n0.1,1.0\n\n\n0.2,abc\n')
        with pytest.raises(ParseError) as error:
            ingest_dataset(path)
        assert error.value.line == 5

        path.write_text('y_1,G_1\n\n0.1,1.0\n\n1.5,2.0\n\n')
        with pytest.raises(ValidationError, match=':5: point outside'):
            ingest_dataset(path)

    def test_blank_lines_are_skipped(self, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text('y_1,G_1\n0.1,1.0\n\n0.2,2.0\n\n')
        points, targets = ingest_dataset(path)
        assert points.tolist() == [[0.1], [0.2]]
        assert targets.tolist() == [[1.0], [2.0]]

    def test_outside_cube(self, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text('y_1,G_1\n0.1,1.0\n1.5,2.0\n')
        with pytest.raises(ValidationError):
            ingest_dataset(path)

    def test_no_target_column(self, tmp_path):
        path = tmp_path / 'data.csv'
        path.write_text('y_1,y_2\n0.1,0.2\n')
        with pytest.raises(ValidationError):
            ingest_dataset(path)

import numpy as np
import pytest

from cvnet import (
    CovMatrix,
    Network,
    NumericalError,
    ParameterError,
    ZGraph,
    cov_from_z,
    gen_er,
    gen_regular,
    graph_state_cov,
    symplectic_form,
    symplectic_spectrum,
    squeezing_spectrum_numeric,
    z_from_network,
)
from conftest import random_network


def empty_net(n, s=0.0):
    return Network(adj=np.zeros((n, n)), node_squeeze_db=np.full(n, float(s)))


class TestSymplecticForm:
    def test_squares_to_minus_identity(self):
        om = symplectic_form(3)
        assert np.array_equal(om @ om, -np.eye(6))
        assert np.array_equal(om, -om.T)


class TestGraphStateCov:
    def test_vacuum(self):
        cov = graph_state_cov(empty_net(3))
        assert np.array_equal(cov.m, np.eye(6) / 2)

    def test_single_edge_matrix(self):
        net = gen_regular("complete", 2)
        expected = 0.5 * np.array(
            [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 2, 0], [1, 0, 0, 2]], dtype=float
        )
        assert np.array_equal(graph_state_cov(net).m, expected)

    def test_single_node_10db(self):
        cov = graph_state_cov(empty_net(1, s=10.0))
        assert np.allclose(cov.m, np.diag([5.0, 0.05]))

    def test_zero_squeezing_block_form_exact(self):
        net = gen_er(7, 0.5, seed=1)
        a = net.adj
        expected = 0.5 * np.block([[np.eye(7), a], [a, np.eye(7) + a @ a]])
        assert np.array_equal(graph_state_cov(net).m, expected)


class TestZGraph:
    def test_vacuum_node(self):
        z = z_from_network(empty_net(1))
        assert z.z[0, 0] == 1j

    def test_10db_node(self):
        z = z_from_network(empty_net(1, s=10.0))
        assert np.isclose(z.z[0, 0], 0.1j)

    def test_single_edge(self):
        z = z_from_network(gen_regular("complete", 2))
        assert np.array_equal(z.z, np.array([[1j, 1.0], [1.0, 1j]]))

    def test_rejects_non_pd_imaginary_part(self):
        with pytest.raises(ParameterError):
            ZGraph.from_parts(np.zeros((2, 2)), np.diag([1.0, -1.0]))

    def test_rejects_asymmetric(self):
        with pytest.raises(ParameterError):
            ZGraph(np.array([[1j, 1.0], [0.5, 1j]]))


class TestCovFromZ:
    def test_vacuum(self):
        assert np.allclose(cov_from_z(ZGraph(1j * np.eye(3))).m, np.eye(6) / 2)

    def test_u_2i(self):
        cov = cov_from_z(ZGraph(2j * np.eye(2)))
        assert np.allclose(cov.m, np.diag([0.25, 0.25, 1.0, 1.0]))

    def test_single_edge_roundtrip(self):
        net = gen_regular("complete", 2)
        assert np.allclose(
            cov_from_z(z_from_network(net)).m, graph_state_cov(net).m, atol=1e-14
        )

    @pytest.mark.parametrize("seed", range(8))
    def test_roundtrip_random_networks(self, seed):
        rng = np.random.default_rng(seed)
        net = random_network(rng, n_max=50)
        direct = graph_state_cov(net)
        via_z = cov_from_z(z_from_network(net))
        assert np.abs(direct.m - via_z.m).max() < 1e-10

    def test_ill_conditioned_u(self):
        z = ZGraph.from_parts(np.zeros((2, 2)), np.diag([1.0, 1e-13]))
        with pytest.raises(NumericalError):
            cov_from_z(z)


class TestSymplecticSpectrum:
    def test_vacuum_all_half(self):
        assert np.allclose(symplectic_spectrum(CovMatrix(np.eye(6) / 2)), 0.5)

    def test_thermal_scaling(self):
        assert np.allclose(symplectic_spectrum(CovMatrix(np.eye(4))), 1.0)

    def test_graph_states_pure(self):
        for seed in range(6):
            rng = np.random.default_rng(100 + seed)
            net = random_network(rng, n_max=12)
            nu = symplectic_spectrum(graph_state_cov(net))
            assert np.abs(nu - 0.5).max() < 1e-9
            assert nu.min() >= 0.5 - 1e-12

    def test_rejects_non_pd(self):
        with pytest.raises(NumericalError):
            symplectic_spectrum(CovMatrix(np.diag([1.0, -1.0, 1.0, 1.0])))


class TestSqueezingSpectrumNumeric:
    def test_vacuum_pairs(self):
        spec = squeezing_spectrum_numeric(CovMatrix(np.eye(4) / 2))
        assert np.allclose(spec.pairs, 0.5)
        assert spec.n_squeezers == 0

    def test_single_mode_10db(self):
        cov = graph_state_cov(empty_net(1, s=10.0))
        spec = squeezing_spectrum_numeric(cov)
        assert np.allclose(spec.pairs[0], [5.0, 0.05])
        assert np.isclose(spec.db[0], 10.0)

    def test_pair_products(self):
        rng = np.random.default_rng(42)
        net = random_network(rng, n_max=10)
        spec = squeezing_spectrum_numeric(graph_state_cov(net))
        assert np.abs(spec.pairs[:, 0] * spec.pairs[:, 1] - 0.25).max() < 1e-9

    def test_pairing_failure_on_mixed_state(self):
        with pytest.raises(NumericalError):
            squeezing_spectrum_numeric(CovMatrix(np.eye(4)))


class TestCsvExport:
    def test_cov_export(self, tmp_path):
        cov = graph_state_cov(gen_regular("ring", 3))
        path = tmp_path / "cov.csv"
        cov.to_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "n_modes,3"
        assert len(lines) == 1 + 6

    def test_z_export(self, tmp_path):
        z = z_from_network(gen_regular("ring", 3))
        path = tmp_path / "z.csv"
        z.to_csv(path)
        text = path.read_text()
        assert "V" in text and "U" in text

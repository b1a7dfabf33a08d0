import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvnet import (
    ParameterError,
    all_shortest_paths,
    gen_as,
    gen_ba,
    gen_diamond_chain,
    gen_diamond_interconnected,
    gen_er,
    gen_lattice,
    gen_pp,
    gen_regular,
    gen_ws,
)


def rank(net):
    d = np.linalg.eigvalsh(net.adj)
    return int(np.count_nonzero(np.abs(d) > net.n * np.finfo(float).eps * np.abs(d).max()))


class TestRegular:
    @pytest.mark.parametrize(
        "topology,n,expected_edges",
        [
            ("linear", 5, 4),
            ("linear", 2, 1),
            ("ring", 5, 5),
            ("star", 5, 4),
            ("star", 100, 99),
            ("diamond", 5, 6),
            ("diamond", 3, 2),
            ("complete", 2, 1),
            ("complete", 6, 15),
        ],
    )
    def test_edge_counts(self, topology, n, expected_edges):
        assert gen_regular(topology, n).num_edges == expected_edges

    def test_linear_is_path(self):
        net = gen_regular("linear", 5)
        assert all_shortest_paths(net, 0, 4).distance == 4

    def test_diamond_is_k23(self):
        net = gen_regular("diamond", 5)
        deg = net.degrees()
        assert sorted(deg) == [2, 2, 2, 3, 3]
        assert net.adj[0, 4] == 0  # hubs not linked

    def test_weights_applied(self):
        net = gen_regular("ring", 4, g=2.5)
        weights = net.adj[net.adj != 0]
        assert np.all(weights == 2.5)

    @pytest.mark.parametrize("topology,n", [("linear", 1), ("diamond", 2), ("star", 1)])
    def test_below_minimum(self, topology, n):
        with pytest.raises(ParameterError):
            gen_regular(topology, n)

    def test_unknown_topology(self):
        with pytest.raises(ParameterError):
            gen_regular("moebius", 5)


class TestLattice:
    def test_grid_counts(self):
        net = gen_lattice(2, 3)
        assert net.n == 9 and net.num_edges == 12

    def test_1d_equals_linear(self):
        assert np.array_equal(gen_lattice(1, 5).adj, gen_regular("linear", 5).adj)

    def test_3d_counts(self):
        net = gen_lattice(3, 3)
        assert net.n == 27 and net.num_edges == 3 * 9 * 2

    def test_tri_t_one_face(self):
        net = gen_lattice(2, 2, variant="tri_T")
        assert net.n == 4 and net.num_edges == 5

    def test_tri_variants_distance(self):
        # anti-diagonals leave the corner-to-corner distance at 2(side-1),
        # main diagonals halve it
        side = 4
        plain = gen_lattice(2, side)
        tri = gen_lattice(2, side, variant="tri_T")
        tilde = gen_lattice(2, side, variant="tri_Ttilde")
        a, b = 0, side * side - 1
        assert all_shortest_paths(plain, a, b).distance == 2 * (side - 1)
        assert all_shortest_paths(tri, a, b).distance == 2 * (side - 1)
        assert all_shortest_paths(tilde, a, b).distance == side - 1

    def test_tri_requires_2d(self):
        with pytest.raises(ParameterError):
            gen_lattice(3, 3, variant="tri_T")

    def test_bad_dim(self):
        with pytest.raises(ParameterError):
            gen_lattice(4, 3)


class TestDiamondChain:
    def test_k1_is_linear(self):
        assert np.array_equal(gen_diamond_chain(1, 3).adj, gen_regular("linear", 5).adj)

    def test_unit_branches_are_diamond(self):
        net = gen_diamond_chain(3, 1)
        assert net.n == 5
        assert sorted(net.degrees()) == sorted(gen_regular("diamond", 5).degrees())

    def test_counts(self):
        net = gen_diamond_chain(2, 2)
        assert net.n == 6 and net.num_edges == 6  # k*(n_inner+1)

    def test_branches_vertex_disjoint(self):
        net = gen_diamond_chain(3, 2)
        ps = all_shortest_paths(net, 0, net.n - 1)
        assert ps.n_paths == 3
        interiors = [set(p[1:-1]) for p in ps.paths]
        for i in range(3):
            for j in range(i + 1, 3):
                assert not interiors[i] & interiors[j]

    def test_bad_params(self):
        with pytest.raises(ParameterError):
            gen_diamond_chain(0, 1)
        with pytest.raises(ParameterError):
            gen_diamond_chain(1, 0)


class TestDiamondInterconnected:
    def test_counts(self):
        net = gen_diamond_interconnected(5)
        assert net.num_edges == 6 + 2  # diamond plus chain among 3 centers


class TestErdosRenyi:
    def test_p_zero_empty(self):
        assert gen_er(10, 0.0, seed=1).num_edges == 0

    def test_p_one_complete(self):
        assert gen_er(10, 1.0, seed=1).num_edges == 45

    def test_p_out_of_range(self):
        with pytest.raises(ParameterError):
            gen_er(10, 1.5, seed=1)

    def test_edge_counts_binomial(self):
        # 4-sigma band around C(1000,2)*p, fixed seeds so the check is exact
        n, p = 1000, 0.4
        mean = n * (n - 1) / 2 * p
        sigma = np.sqrt(n * (n - 1) / 2 * p * (1 - p))
        for seed in range(100):
            edges = gen_er(n, p, seed=seed).num_edges
            assert abs(edges - mean) < 4 * sigma

    def test_deterministic(self):
        assert np.array_equal(gen_er(50, 0.3, seed=9).adj, gen_er(50, 0.3, seed=9).adj)
        assert not np.array_equal(gen_er(50, 0.3, seed=9).adj, gen_er(50, 0.3, seed=10).adj)


def _is_forest(net):
    # union-find cycle check on the edge list
    parent = list(range(net.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in net.edges():
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


class TestBarabasiAlbert:
    def test_tree_case(self):
        net = gen_ba(100, 1, seed=4)
        assert net.num_edges == 99
        assert _is_forest(net)

    def test_edge_count_formula(self):
        assert gen_ba(100, 4, seed=4).num_edges == (100 - 4) * 4

    def test_small_star_like(self):
        net = gen_ba(5, 4, seed=0)
        assert net.num_edges == 4
        assert max(net.degrees()) == 4  # the single attaching node links to all

    def test_preferential_attachment_skews_degrees(self):
        net = gen_ba(300, 2, seed=11)
        deg = net.degrees()
        assert deg.max() > 5 * np.median(deg)

    def test_bad_params(self):
        with pytest.raises(ParameterError):
            gen_ba(5, 0, seed=1)
        with pytest.raises(ParameterError):
            gen_ba(5, 5, seed=1)


class TestWattsStrogatz:
    def test_beta_zero_is_ring(self):
        assert np.array_equal(gen_ws(10, 2, 0.0, seed=1).adj, gen_regular("ring", 10).adj)

    def test_beta_zero_circulant(self):
        net = gen_ws(100, 4, 0.0, seed=1)
        assert net.num_edges == 200
        assert np.all(net.degrees() == 4)
        # exact circulant: neighbors at offsets +-1, +-2
        expected = np.zeros((100, 100))
        for i in range(100):
            for off in (1, 2):
                expected[i, (i + off) % 100] = 1.0
                expected[(i + off) % 100, i] = 1.0
        assert np.array_equal(net.adj, expected)

    def test_full_rewiring_keeps_edge_count(self):
        net = gen_ws(100, 4, 1.0, seed=3)
        assert net.num_edges == 200
        assert net.degrees().std() > 0  # no longer regular

    def test_no_self_loops_or_duplicates(self):
        net = gen_ws(60, 4, 0.7, seed=5)
        assert np.all(np.diag(net.adj) == 0)
        assert net.num_edges == 120

    def test_odd_q_rejected(self):
        with pytest.raises(ParameterError):
            gen_ws(10, 3, 0.5, seed=1)


class TestProteinDuplication:
    def test_seed_edge_only(self):
        net = gen_pp(2, 1.0, seed=0)
        assert net.num_edges == 1

    def test_full_retention_keeps_all_links(self):
        net = gen_pp(3, 1.0, seed=0)
        # the third node duplicates one endpoint of the seed edge completely
        assert net.num_edges == 2
        assert sorted(net.degrees()) == [1, 1, 2]

    def test_zero_retention_isolates_duplicates(self):
        net = gen_pp(10, 0.0, seed=0)
        assert net.num_edges == 1
        assert np.count_nonzero(net.degrees() == 0) == 8

    def test_rank_deficient(self):
        net = gen_pp(1000, 0.4, seed=1)
        assert rank(net) < 0.7 * 1000

    def test_deterministic(self):
        assert np.array_equal(gen_pp(100, 0.4, seed=7).adj, gen_pp(100, 0.4, seed=7).adj)


class TestAutonomousSystem:
    def test_core_only(self):
        net = gen_as(4, seed=0)
        assert net.num_edges == 6  # fully meshed tier-1 core

    def test_rank_deficient_at_scale(self):
        net = gen_as(1000, seed=1)
        assert rank(net) < 0.5 * 1000

    def test_leaf_heavy(self):
        net = gen_as(100, seed=2)
        assert np.count_nonzero(net.degrees() == 1) >= 30

    def test_too_small(self):
        with pytest.raises(ParameterError):
            gen_as(3, seed=0)


@settings(max_examples=40, deadline=None)
@given(
    kind=st.sampled_from(["er", "ba", "ws", "pp", "as"]),
    seed=st.integers(0, 2**63 - 1),
    n=st.integers(6, 24),
)
def test_generator_invariants(kind, seed, n):
    if kind == "er":
        net = gen_er(n, 0.3, seed=seed)
    elif kind == "ba":
        net = gen_ba(n, 2, seed=seed)
    elif kind == "ws":
        net = gen_ws(n, 4, 0.5, seed=seed)
    elif kind == "pp":
        net = gen_pp(n, 0.5, seed=seed)
    else:
        net = gen_as(n, seed=seed)
    assert np.array_equal(net.adj, net.adj.T)
    assert np.all(np.diag(net.adj) == 0)
    assert np.all(net.adj >= 0)
    assert net.node_squeeze_db.shape == (n,)
    if kind == "ba":
        assert net.num_edges == (n - 2) * 2
    if kind == "ws":
        assert net.num_edges == n * 2

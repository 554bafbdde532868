import pytest

from expmod import (
    SbmParams,
    assign_probabilities,
    entropy_ratio,
    entropy_target_probability,
    gen_ba,
    gen_er,
    gen_ffn,
    gen_sbm,
    gen_ws,
    random_assignment,
)


class TestSbm:
    def test_planted_labels(self):
        (n, edges), comm = gen_sbm(SbmParams(3, 4, 0.8, 0.05, seed=1))
        assert n == 12
        assert comm.k == 3
        assert all(len(comm.members(c)) == 4 for c in range(3))

    def test_disjoint_cliques(self):
        (n, edges), comm = gen_sbm(SbmParams(2, 4, 1.0, 0.0, seed=1))
        assert len(edges) == 2 * 6  # two K4s
        assert all(comm.labels[u] == comm.labels[v] for u, v in edges)

    def test_determinism(self):
        a = gen_sbm(SbmParams(3, 5, 0.5, 0.1, seed=9))
        b = gen_sbm(SbmParams(3, 5, 0.5, 0.1, seed=9))
        c = gen_sbm(SbmParams(3, 5, 0.5, 0.1, seed=10))
        assert a[0] == b[0]
        assert a[0] != c[0]

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            SbmParams(0, 3, 0.5, 0.1)
        with pytest.raises(ValueError):
            SbmParams(3, 3, 1.5, 0.1)


class TestEr:
    def test_p_zero_empty(self):
        assert gen_er(10, p=0.0)[1] == ()

    def test_exact_edge_count(self):
        n, edges = gen_er(30, m=100, seed=4)
        assert len(edges) == 100
        assert len(set(edges)) == 100
        assert all(0 <= u < v < 30 for u, v in edges)

    def test_requires_exactly_one_of_p_m(self):
        with pytest.raises(ValueError):
            gen_er(10)
        with pytest.raises(ValueError):
            gen_er(10, p=0.5, m=3)

    def test_infeasible_m(self):
        with pytest.raises(ValueError):
            gen_er(4, m=7)

    def test_determinism(self):
        assert gen_er(20, m=50, seed=3) == gen_er(20, m=50, seed=3)


class TestBa:
    def test_exact_edge_count(self):
        attach, n = 3, 50
        _, edges = gen_ba(n, attach, seed=2)
        assert len(edges) == attach * (n - attach - 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_ba(3, 3)
        with pytest.raises(ValueError):
            gen_ba(10, 0)

    def test_determinism(self):
        assert gen_ba(40, 2, seed=5) == gen_ba(40, 2, seed=5)


class TestWs:
    def test_edge_count_preserved_by_rewiring(self):
        n, degree = 30, 4
        _, edges = gen_ws(n, degree, 0.3, seed=6)
        assert len(edges) == n * degree // 2

    def test_degree_must_be_feasible(self):
        with pytest.raises(ValueError):
            gen_ws(5, 6, 0.1)
        with pytest.raises(ValueError):
            gen_ws(10, 3, 0.1)  # odd degree

    def test_determinism(self):
        assert gen_ws(25, 4, 0.2, seed=8) == gen_ws(25, 4, 0.2, seed=8)


class TestFfn:
    def test_connected_growth(self):
        n, edges = gen_ffn(40, 0.4, seed=3)
        assert len(edges) >= n - 1  # every node links to an ambassador

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_ffn(10, 1.0)
        with pytest.raises(ValueError):
            gen_ffn(1, 0.5)

    def test_determinism(self):
        assert gen_ffn(30, 0.5, seed=12) == gen_ffn(30, 0.5, seed=12)


class TestModelScale:
    """Every model can hit roughly 200 nodes / 600 edges."""

    @pytest.mark.parametrize(
        "name,topology",
        [
            ("er", gen_er(200, m=600, seed=7)),
            ("ba", gen_ba(200, 3, seed=7)),
            ("ws", gen_ws(200, 6, 0.1, seed=7)),
            ("ffn", gen_ffn(200, 0.46, seed=7)),
            ("sbm", gen_sbm(SbmParams(4, 50, 0.115, 0.0055, seed=7))[0]),
        ],
    )
    def test_edge_count_near_600(self, name, topology):
        n, edges = topology
        assert n == 200
        assert 540 <= len(edges) <= 660


class TestEntropyTarget:
    def test_pins(self):
        assert entropy_target_probability(1.0) == 0.5
        assert entropy_target_probability(0.0) == 1.0
        assert entropy_target_probability(0.47) == pytest.approx(0.9, abs=5e-4)

    def test_inverse_property(self):
        topo = gen_er(12, m=20, seed=3)
        for tenths in range(11):
            r = tenths / 10
            net = assign_probabilities(topo, "entropy_target", value=r)
            assert entropy_ratio(net) == pytest.approx(r, abs=1e-9)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            entropy_target_probability(1.2)


class TestAssignProbabilities:
    def test_constant(self):
        net = assign_probabilities(gen_er(8, m=10, seed=1), "constant", value=0.7)
        assert all(p == 0.7 for _, _, p in net.edges)

    def test_uniform_random_in_half_open_interval(self):
        net = assign_probabilities(gen_er(20, m=80, seed=2), "uniform_random", seed=5)
        assert all(0.0 < p <= 1.0 for _, _, p in net.edges)

    def test_uniform_random_deterministic(self):
        topo = gen_er(10, m=15, seed=1)
        a = assign_probabilities(topo, "uniform_random", seed=4)
        b = assign_probabilities(topo, "uniform_random", seed=4)
        assert a.edges == b.edges

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError, match="unknown"):
            assign_probabilities(gen_er(5, m=3, seed=0), "exotic")

    def test_constant_requires_valid_value(self):
        with pytest.raises(ValueError):
            assign_probabilities(gen_er(5, m=3, seed=0), "constant", value=0.0)


class TestRandomAssignment:
    def test_all_labels_used(self):
        comm = random_assignment(30, 6, seed=2)
        assert comm.k == 6
        assert len(comm.labels) == 30

    def test_determinism(self):
        assert random_assignment(20, 4, seed=3) == random_assignment(20, 4, seed=3)

    def test_infeasible(self):
        with pytest.raises(ValueError):
            random_assignment(3, 5)

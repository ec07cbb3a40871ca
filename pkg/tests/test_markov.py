import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netid import (
    PreconditionError,
    conductance_profile,
    generate_random_graph,
    kstep,
    simulate_kstep_frequencies,
    trace_sequence,
    transition_matrix,
)


def kernel_of(g):
    return transition_matrix(conductance_profile(g))


class TestTransitionMatrix:
    def test_unit_triangle(self, unit_triangle):
        np.testing.assert_array_equal(kernel_of(unit_triangle).matrix, (np.ones((3, 3)) - np.eye(3)) / 2)

    def test_unit_path(self, unit_path):
        np.testing.assert_array_equal(kernel_of(unit_path).matrix, [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]])

    def test_single_edge(self, single_edge):
        np.testing.assert_array_equal(kernel_of(single_edge).matrix, [[0, 1], [1, 0]])

    def test_single_vertex_rejected(self):
        from netid import MetrizedGraph

        with pytest.raises(PreconditionError):
            kernel_of(MetrizedGraph(("a",), ()))


class TestKStep:
    def test_unit_path_square(self, unit_path):
        expected = [[0.5, 0, 0.5], [0, 1, 0], [0.5, 0, 0.5]]
        np.testing.assert_allclose(kstep(kernel_of(unit_path), 2), expected, atol=1e-15)

    def test_first_power_is_kernel(self, unit_triangle):
        kern = kernel_of(unit_triangle)
        assert kstep(kern, 1) is kern.matrix

    @pytest.mark.parametrize("k", [0, -1, 1.5])
    def test_bad_k(self, unit_path, k):
        with pytest.raises(PreconditionError):
            kstep(kernel_of(unit_path), k)

    def test_memoized(self, unit_triangle):
        kern = kernel_of(unit_triangle)
        assert kstep(kern, 5) is kstep(kern, 5)

    @settings(max_examples=20, deadline=None)
    @given(n=st.integers(2, 100), p=st.floats(0, 0.3), seed=st.integers(0, 2**32 - 1))
    def test_stochastic_balanced_reversible(self, n, p, seed):
        kern = kernel_of(generate_random_graph(n, p, seed=seed))
        C = kern.conductances
        for k in range(1, 11):
            Pk = kstep(kern, k)
            np.testing.assert_allclose(Pk.sum(axis=1), 1, atol=1e-10)
            np.testing.assert_allclose(C @ Pk, C, rtol=1e-9)
            flow = C[:, None] * Pk
            scale = np.maximum(C[:, None], C[None, :])
            assert (np.abs(flow - flow.T) <= 1e-10 * scale).all()


class TestTraces:
    def test_unit_triangle(self, unit_triangle):
        np.testing.assert_allclose(trace_sequence(kernel_of(unit_triangle), 3), [0, 1.5, 0.75], atol=1e-15)

    def test_unit_path(self, unit_path):
        np.testing.assert_allclose(trace_sequence(kernel_of(unit_path), 2), [0, 2], atol=1e-15)

    def test_zero_first_trace(self):
        kern = kernel_of(generate_random_graph(40, 0.2, seed=1))
        assert trace_sequence(kern, 1) == [0.0]


class TestSimulation:
    N = 1_000_000

    def test_one_step_from_middle(self, unit_path):
        freq = simulate_kstep_frequencies(unit_path, "b", 1, self.N, seed=0)
        bound = 3 * np.sqrt(0.25 / self.N)
        assert abs(freq[0] - 0.5) <= bound and abs(freq[2] - 0.5) <= bound
        assert freq[1] == 0

    def test_two_steps_from_middle(self, unit_path):
        freq = simulate_kstep_frequencies(unit_path, "b", 2, self.N, seed=1)
        np.testing.assert_array_equal(freq, [0, 1, 0])

    def test_seed_determinism(self, unit_triangle):
        a = simulate_kstep_frequencies(unit_triangle, "a", 3, 10_000, seed=42)
        b = simulate_kstep_frequencies(unit_triangle, "a", 3, 10_000, seed=42)
        c = simulate_kstep_frequencies(unit_triangle, "a", 3, 10_000, seed=43)
        assert a.tobytes() == b.tobytes()
        assert a.tobytes() != c.tobytes()

    def test_zero_steps(self, unit_triangle):
        np.testing.assert_array_equal(simulate_kstep_frequencies(unit_triangle, "c", 0, 10, seed=0), [0, 0, 1])

    def test_within_four_standard_errors_on_random_graph(self):
        g = generate_random_graph(8, 0.4, seed=3)
        kern = kernel_of(g)
        walks = 200_000
        freq = simulate_kstep_frequencies(kern, 2, 3, walks, seed=9)
        exact = kstep(kern, 3)[2]
        se = np.sqrt(exact * (1 - exact) / walks)
        assert (np.abs(freq - exact) <= 4 * se).all()

import cmath
import math

import numpy as np
import pytest

from qpurify import (
    BranchParameters,
    CircuitParameters,
    PhaseGate,
    RotationGate,
    apply_schedule,
    cholesky_purify,
    coefficients_to_state,
    extract_parameters,
    invert_qubit,
    partial_trace_ancilla,
    random_density,
    schedule_from_parameters,
    simulate_circuit,
)
from qpurify.circuit import _extract_branch
from qpurify.errors import BadRange, DegenerateBranch, ShapeMismatch
from qpurify.rng import CounterRng

HALF_PI = math.pi / 2


def make_params(n, weight_angles, branch_data):
    branches = tuple(
        BranchParameters(n - k, np.asarray(a, dtype=float), np.asarray(p, dtype=float))
        for k, (a, p) in enumerate(branch_data)
    )
    return CircuitParameters(n, np.asarray(weight_angles, dtype=float), branches)


def random_params(n, seed, low=0.15, high=0.8):
    rng = CounterRng(seed)
    span = high - low
    weights = [low + span * rng.uniform() for _ in range(n - 1)]
    branch_data = []
    for k in range(n):
        m = n - k
        angles = [HALF_PI * rng.uniform() for _ in range(m - 1)]
        phases = [2 * math.pi * rng.uniform() * 0.999 for _ in range(m - 1)]
        branch_data.append((angles, phases))
    return make_params(n, weights, branch_data)


class TestCircuitParameters:
    def test_parameter_count(self):
        for n in (2, 3, 4, 8, 16):
            params = random_params(n, seed=n)
            assert params.parameter_count == n * n - 1

    def test_angle_range_enforced(self):
        with pytest.raises(BadRange):
            make_params(2, [2.0], [([0.1], [0.0]), ([], [])])
        with pytest.raises(BadRange):
            make_params(2, [0.3], [([0.1], [7.0]), ([], [])])

    def test_branch_dimensions_enforced(self):
        with pytest.raises(ShapeMismatch):
            make_params(2, [0.3], [([0.1], [0.0]), ([0.1], [0.0])])


class TestExtractParameters:
    def test_maximally_mixed_qubit(self):
        from qpurify import QuditShape, validate_density

        rho = validate_density(np.eye(2) / 2, QuditShape(2, 1))
        params = extract_parameters(cholesky_purify(rho))
        assert abs(params.weight_angles[0] - math.pi / 4) < 1e-12
        assert abs(params.branches[0].angles[0] - HALF_PI) < 1e-12
        assert params.branches[0].phases[0] == 0.0
        assert params.branches[1].angles.size == 0

    def test_ground_state_zero_weight_rule(self):
        from qpurify import QuditShape, validate_density

        rho = validate_density(np.diag([1.0, 0.0]), QuditShape(2, 1))
        params = extract_parameters(cholesky_purify(rho))
        assert abs(params.weight_angles[0] - HALF_PI) < 1e-12
        assert params.branches[0].angles[0] == 0.0
        assert params.branches[0].phases[0] == 0.0

    def test_plus_state(self):
        from qpurify import QuditShape, validate_density

        rho = validate_density(np.full((2, 2), 0.5), QuditShape(2, 1))
        params = extract_parameters(cholesky_purify(rho))
        assert abs(params.weight_angles[0]) < 1e-7  # row-1 weight is determinant noise
        assert abs(params.branches[0].angles[0] - math.pi / 4) < 1e-12
        assert params.branches[0].phases[0] == 0.0

    def test_angles_in_range(self):
        for seed in range(20):
            rho = random_density(2, 2, seed=seed)
            params = extract_parameters(cholesky_purify(rho))
            assert np.all(params.weight_angles >= 0) and np.all(params.weight_angles <= HALF_PI)
            for branch in params.branches:
                assert np.all(branch.angles >= 0) and np.all(branch.angles <= HALF_PI)
                assert np.all(branch.phases >= 0) and np.all(branch.phases < 2 * math.pi)

    def test_degenerate_branch_guard(self):
        # malformed (non-normalized) row: unit last amplitude with leftovers
        with pytest.raises(DegenerateBranch):
            _extract_branch(np.array([1.0, 0.0, 1.0], dtype=complex), 3, 1e-12)


class TestSimulateCircuit:
    def test_all_zero_parameters(self):
        params = make_params(3, [0.0, 0.0], [([0.0] * 2, [0.0] * 2), ([0.0], [0.0]), ([], [])])
        for mode in ("product", "gates"):
            state = simulate_circuit(params, mode=mode)
            assert state.amplitudes[0] == 1.0
            assert np.count_nonzero(state.amplitudes) == 1

    def test_qubit_product_formula(self):
        alpha, theta, phi = 0.33, 0.71, 2.2
        params = make_params(2, [alpha], [([theta], [phi]), ([], [])])
        state = simulate_circuit(params)
        expected = np.array(
            [
                math.cos(alpha) * math.cos(theta) * cmath.exp(1j * phi),
                math.cos(alpha) * math.sin(theta),
                math.sin(alpha),
                0.0,
            ]
        )
        assert np.max(np.abs(state.amplitudes - expected)) < 1e-15

    def test_qutrit_coefficient_map(self):
        a1, a2 = 0.41, 0.93
        t1, t2, t3 = 0.55, 1.2, 0.77
        p1, p2, p3 = 0.3, 4.0, 5.5
        params = make_params(3, [a1, a2], [([t1, t2], [p1, p2]), ([t3], [p3]), ([], [])])
        state = simulate_circuit(params)
        ca1, sa1 = math.cos(a1), math.sin(a1)
        ca2, sa2 = math.cos(a2), math.sin(a2)
        expected = {
            (0, 0): ca1 * ca2 * math.cos(t1) * math.cos(t2) * cmath.exp(1j * p1),
            (0, 1): ca1 * ca2 * math.cos(t1) * math.sin(t2) * cmath.exp(1j * p2),
            (0, 2): ca1 * ca2 * math.sin(t1),
            (1, 0): ca1 * sa2 * math.cos(t3) * cmath.exp(1j * p3),
            (1, 1): ca1 * sa2 * math.sin(t3),
            (1, 2): 0.0,
            (2, 0): sa1,
            (2, 1): 0.0,
            (2, 2): 0.0,
        }
        for (k, i), value in expected.items():
            assert abs(state.amplitude(k, i) - value) < 1e-14, (k, i)

    def test_modes_agree(self):
        for n, seed in [(2, 1), (3, 2), (4, 3), (8, 4)]:
            params = random_params(n, seed)
            product = simulate_circuit(params, mode="product")
            gates = simulate_circuit(params, mode="gates")
            assert np.max(np.abs(product.amplitudes - gates.amplitudes)) <= 1e-12

    def test_unknown_mode(self):
        with pytest.raises(BadRange):
            simulate_circuit(random_params(2, 9), mode="exact")


class TestGateSchedule:
    def test_qubit_gate_sequence(self):
        alpha, theta, phi = 0.4, 0.9, 1.1
        params = make_params(2, [alpha], [([theta], [phi]), ([], [])])
        schedule = schedule_from_parameters(params)
        assert schedule.gates == (
            RotationGate(None, (0, 1), alpha),
            RotationGate(0, (0, 1), theta),
            PhaseGate(0, 0, -phi),
        )

    def test_one_gate_per_parameter(self):
        for n in (2, 3, 4, 6):
            params = random_params(n, seed=40 + n)
            assert len(schedule_from_parameters(params).gates) == n * n - 1

    def test_all_zero_schedule(self):
        params = make_params(2, [0.0], [([0.0], [0.0]), ([], [])])
        state = apply_schedule(schedule_from_parameters(params))
        assert state.amplitudes[0] == 1.0
        assert np.count_nonzero(state.amplitudes) == 1

    def test_two_qubit_zero_pattern_and_agreement(self):
        params = random_params(4, seed=77)
        state = apply_schedule(schedule_from_parameters(params))
        product = simulate_circuit(params)
        assert np.max(np.abs(state.amplitudes - product.amplitudes)) <= 1e-10
        # gauge zeros: row 1 col 3, row 2 cols 2-3, row 3 cols 1-3
        for alpha in range(4):
            for i in range(4 - alpha, 4):
                assert state.amplitude(alpha, i) == 0.0


class TestInvertQubit:
    def test_maximally_mixed(self):
        params = make_params(2, [math.pi / 4], [([HALF_PI], [0.0]), ([], [])])
        c = invert_qubit(params).C
        sq = math.sqrt(0.5)
        assert abs(c[0, 1] - sq) < 1e-12 and abs(c[1, 0] - sq) < 1e-12
        assert abs(c[0, 0]) < 1e-15

    def test_origin(self):
        params = make_params(2, [0.0], [([0.0], [0.0]), ([], [])])
        c = invert_qubit(params).C
        assert c[0, 0] == 1.0 and c[0, 1] == 0.0 and c[1, 0] == 0.0

    def test_ancilla_excited(self):
        params = make_params(2, [HALF_PI], [([0.0], [0.0]), ([], [])])
        c = invert_qubit(params).C
        assert abs(c[1, 0] - 1.0) < 1e-15
        assert abs(c[0, 0]) < 1e-15

    def test_matches_simulation(self):
        params = make_params(2, [0.37], [([1.02], [3.3]), ([], [])])
        state = simulate_circuit(params)
        assert np.max(np.abs(invert_qubit(params).C.reshape(-1) - state.amplitudes)) < 1e-15

    def test_rejects_other_sizes(self):
        with pytest.raises(ShapeMismatch):
            invert_qubit(random_params(3, seed=2))


class TestRoundTrips:
    @pytest.mark.parametrize("d,n", [(2, 1), (3, 1), (2, 2), (4, 1), (2, 3), (4, 2)])
    def test_round_trip_a_partial_trace(self, d, n):
        for seed in range(10):
            rho = random_density(d, n, seed=seed)
            state = simulate_circuit(extract_parameters(cholesky_purify(rho)))
            err = np.max(np.abs(partial_trace_ancilla(state) - rho.entries))
            assert err <= 1e-10, (d, n, seed, err)

    def test_round_trip_b_amplitudes(self):
        for d, n, seed in [(2, 1, 0), (3, 1, 1), (2, 2, 2), (4, 1, 3), (2, 3, 4)]:
            rho = random_density(d, n, seed=seed)
            dim = rho.shape.N
            mixed = 0.9 * rho.entries + 0.1 * np.eye(dim) / dim
            from qpurify import validate_density

            coeffs = cholesky_purify(validate_density(mixed, rho.shape))
            assert np.min(coeffs.row_weights()) > 1e-8
            state = simulate_circuit(extract_parameters(coeffs))
            target = coefficients_to_state(coeffs)
            assert np.max(np.abs(state.amplitudes - target.amplitudes)) <= 1e-10

    def test_params_to_coeffs_to_params(self):
        # a circuit state reinterpreted as coefficients extracts back to
        # the same parameters when every weight is substantial
        from qpurify import CoefficientMatrix

        params = random_params(4, seed=11)
        state = simulate_circuit(params)
        coeffs = CoefficientMatrix(4, state.amplitudes.reshape(4, 4))
        again = extract_parameters(coeffs)
        assert np.max(np.abs(again.weight_angles - params.weight_angles)) < 1e-10
        for mine, theirs in zip(again.branches, params.branches):
            assert np.max(np.abs(mine.angles - theirs.angles), initial=0.0) < 1e-10
            assert np.max(np.abs(mine.phases - theirs.phases), initial=0.0) < 1e-8

"""Tests for the polarization-state math."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from bb84sim.errors import DegenerateAncillaError, NoMatchError
from bb84sim.quantum import (
    BASES,
    BQS,
    DEFAULT_ANCILLA_ANGLE,
    DIAGONAL,
    MATCH_TOL,
    RECTILINEAR,
    Basis,
    QuantumState,
    ancilla_basis,
    born_probability,
    build_reference_list,
    decode,
    encode,
    measure,
    overlap,
    ray_distance,
    reduce_angle,
    squared_overlap,
)

ANCILLA = QuantumState(DEFAULT_ANCILLA_ANGLE)

angles = st.floats(
    min_value=-50.0, max_value=50.0, allow_nan=False, allow_infinity=False
)


class TestAngles:
    @given(angles)
    def test_reduce_lands_in_half_open_interval(self, theta):
        reduced = reduce_angle(theta)
        assert 0.0 <= reduced < math.pi

    @given(angles)
    def test_reduce_is_idempotent(self, theta):
        reduced = reduce_angle(theta)
        assert reduce_angle(reduced) == reduced

    def test_state_and_its_negation_are_the_same_ray(self):
        assert QuantumState(-math.pi / 4) == QuantumState(3 * math.pi / 4)
        assert QuantumState(math.pi) == QuantumState(0.0)

    @given(angles, angles)
    def test_ray_distance_symmetric_and_bounded(self, a, b):
        assert ray_distance(a, b) == pytest.approx(ray_distance(b, a), abs=1e-12)
        assert 0.0 <= ray_distance(a, b) <= math.pi / 2 + 1e-12


class TestOverlap:
    def test_ancilla_with_horizontal_state(self):
        # sqrt(3)/2, the aligned-component amplitude of a pi/6 state
        assert overlap(ANCILLA, BQS[0]) == pytest.approx(
            math.sqrt(3) / 2, abs=1e-12
        )

    def test_ancilla_with_first_diagonal(self):
        assert overlap(ANCILLA, QuantumState(math.pi / 4)) == pytest.approx(
            (math.sqrt(6) + math.sqrt(2)) / 4, abs=1e-12
        )

    def test_ancilla_with_second_diagonal_ray_sign(self):
        # The canonical ray representative flips the smaller component, so
        # the signed overlap is negative; its square is what the table uses.
        assert overlap(ANCILLA, QuantumState(3 * math.pi / 4)) == pytest.approx(
            -(math.sqrt(6) - math.sqrt(2)) / 4, abs=1e-12
        )

    def test_identical_states(self):
        assert overlap(BQS[0], BQS[0]) == 1.0

    def test_same_basis_states_are_orthogonal(self):
        for basis in BASES:
            assert overlap(basis.state(0), basis.state(1)) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_cross_basis_squared_overlap_is_half(self):
        for a in (RECTILINEAR.state(0), RECTILINEAR.state(1)):
            for b in (DIAGONAL.state(0), DIAGONAL.state(1)):
                assert squared_overlap(a, b) == pytest.approx(0.5, abs=1e-12)

    @given(angles, angles)
    def test_overlap_within_unit_interval(self, a, b):
        assert -1.0 <= overlap(QuantumState(a), QuantumState(b)) <= 1.0


class TestBornProbability:
    def test_equal_superposition(self):
        assert born_probability(QuantumState(math.pi / 4), 0.0) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_horizontal_against_ancilla_angle(self):
        assert born_probability(BQS[0], DEFAULT_ANCILLA_ANGLE) == pytest.approx(
            0.75, abs=1e-12
        )

    def test_eigenstate(self):
        assert born_probability(QuantumState(math.pi / 2), math.pi / 2) == 1.0

    @given(angles)
    def test_outcomes_sum_to_one_in_any_basis(self, theta):
        state = QuantumState(theta)
        for basis in BASES + (ancilla_basis(1.234),):
            total = born_probability(state, basis.angle(0)) + born_probability(
                state, basis.angle(1)
            )
            assert total == pytest.approx(1.0, abs=1e-12)


class TestBasis:
    def test_member_angles_differ_by_quarter_turn(self):
        for basis in BASES:
            assert ray_distance(basis.angle(0), basis.angle(1)) == pytest.approx(
                math.pi / 2, abs=1e-9
            )

    def test_non_orthogonal_pair_rejected(self):
        with pytest.raises(ValueError):
            Basis("bad", (0.0, math.pi / 3))

    @given(angles)
    def test_ancilla_basis_is_orthogonal(self, theta):
        basis = ancilla_basis(theta)
        assert ray_distance(basis.angle(0), basis.angle(1)) == pytest.approx(
            math.pi / 2, abs=1e-9
        )

    def test_encode_decode_roundtrip(self):
        for basis in BASES:
            for bit in (0, 1):
                assert decode(encode(bit, basis)) == (bit, basis)

    def test_decode_rejects_off_alphabet_state(self):
        with pytest.raises(NoMatchError):
            decode(QuantumState(math.pi / 8))


class TestMeasure:
    def test_eigenstates_measure_deterministically(self):
        rng = random.Random(0)
        for basis in BASES:
            for bit in (0, 1):
                for _ in range(100):
                    out_bit, out_state = measure(basis.state(bit), basis, rng)
                    assert out_bit == bit
                    assert out_state == basis.state(bit)

    def test_identical_seeds_reproduce_outcomes(self):
        state = QuantumState(math.pi / 4)
        rng_a, rng_b = random.Random(7), random.Random(7)
        out_a = [measure(state, RECTILINEAR, rng_a)[0] for _ in range(1000)]
        out_b = [measure(state, RECTILINEAR, rng_b)[0] for _ in range(1000)]
        assert out_a == out_b

    def test_collapse_returns_basis_eigenstate(self):
        rng = random.Random(3)
        for _ in range(200):
            _, post = measure(QuantumState(1.1), DIAGONAL, rng)
            assert post in DIAGONAL.states

    def test_superposition_frequency_matches_born_rule(self):
        # oracle: cos(pi/4)**2 = 1/2, binomial 3 sigma over 1e5 draws
        trials = 100_000
        p = math.cos(math.pi / 4) ** 2
        sigma = math.sqrt(p * (1 - p) / trials)
        rng = random.Random(2024)
        zeros = sum(
            measure(QuantumState(math.pi / 4), RECTILINEAR, rng)[0] == 0
            for _ in range(trials)
        )
        assert abs(zeros / trials - p) < 3 * sigma

    def test_tilted_state_frequency_matches_born_rule(self):
        # oracle: cos(pi/6)**2 = 3/4 against the horizontal outcome
        trials = 100_000
        p = math.cos(math.pi / 6) ** 2
        sigma = math.sqrt(p * (1 - p) / trials)
        rng = random.Random(11)
        zeros = sum(
            measure(ANCILLA, RECTILINEAR, rng)[0] == 0 for _ in range(trials)
        )
        assert abs(zeros / trials - p) < 4 * sigma


class TestReferenceList:
    def test_default_ancilla_reproduces_known_table(self):
        table = build_reference_list(ANCILLA)
        expected = (
            3 / 4,
            1 / 4,
            (math.sqrt(3) + 1) ** 2 / 8,
            (math.sqrt(3) - 1) ** 2 / 8,
        )
        for value, want in zip(table.match_values(), expected):
            assert value == pytest.approx(want, abs=1e-12)

    def test_horizontal_ancilla_is_degenerate(self):
        # both diagonal states sit at squared overlap 1/2
        with pytest.raises(DegenerateAncillaError):
            build_reference_list(QuantumState(0.0))

    def test_pi_over_8_ancilla_is_degenerate(self):
        # oracle: direct evaluation shows cos(pi/8)^2 == cos(pi/8 - pi/4)^2
        a = math.pi / 8
        direct = [math.cos(a - t) ** 2 for t in (0.0, math.pi / 4)]
        assert abs(direct[0] - direct[1]) < 1e-12
        with pytest.raises(DegenerateAncillaError):
            build_reference_list(QuantumState(a))

    def test_generic_ancilla_gives_four_distinct_values(self):
        # oracle: evaluate the four squared cosines directly and check
        # pairwise separation before asking the implementation
        a = 0.41
        direct = sorted(
            math.cos(a - t) ** 2
            for t in (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
        )
        gaps = [y - x for x, y in zip(direct, direct[1:])]
        assert min(gaps) > 1e-3
        table = build_reference_list(QuantumState(a))
        assert sorted(table.match_values()) == pytest.approx(direct, abs=1e-12)

    def test_lookup_known_values(self):
        table = build_reference_list(ANCILLA)
        assert table.lookup(0.25) == QuantumState(math.pi / 2)
        assert table.lookup(0.75) == QuantumState(0.0)

    def test_lookup_rejects_foreign_value(self):
        table = build_reference_list(ANCILLA)
        with pytest.raises(NoMatchError):
            table.lookup(0.5)

    def test_lookup_build_identity_on_alphabet(self):
        table = build_reference_list(ANCILLA)
        for state in BQS:
            assert table.lookup(squared_overlap(ANCILLA, state)) == state

    @given(st.floats(min_value=0.0, max_value=math.pi, exclude_max=True))
    def test_lookup_build_identity_for_any_valid_ancilla(self, theta):
        ancilla = QuantumState(theta)
        try:
            table = build_reference_list(ancilla)
        except DegenerateAncillaError:
            return
        for state in BQS:
            assert table.lookup(squared_overlap(ancilla, state)) == state

    def test_empty_signal_set_rejected(self):
        with pytest.raises(ValueError):
            build_reference_list(ANCILLA, signal_states=())

    def test_tolerance_far_below_table_gaps(self):
        values = sorted(build_reference_list(ANCILLA).match_values())
        smallest_gap = min(b - a for a, b in zip(values, values[1:]))
        assert smallest_gap > 1e5 * MATCH_TOL

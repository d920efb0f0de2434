"""Unit tests for capacity, positive part, and table information measures."""

import math

import numpy as np
import pytest

from keyrate import DomainError, JointPmf, capacity, entropy, marginalize, mutual_information, pos_part

from _oracles import cmi_oracle, table_entropy_bits


def uniform(shape, names):
    table = np.full(shape, 1.0 / np.prod(shape))
    return JointPmf(names, table)


class TestCapacity:
    def test_known_points(self):
        assert capacity(0.0) == 0.0
        assert capacity(1.0) == pytest.approx(0.5, abs=1e-15)
        assert capacity(3.0) == pytest.approx(1.0, abs=1e-15)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            capacity(-1e-12)
        with pytest.raises(DomainError):
            capacity(float("nan"))
        with pytest.raises(DomainError):
            capacity(float("inf"))

    def test_small_argument_accuracy(self):
        # log1p keeps relative accuracy: C(x) ~ x/(2 ln 2) as x -> 0
        x = 1e-14
        assert capacity(x) == pytest.approx(x / (2 * math.log(2)), rel=1e-10)

    def test_strictly_increasing_and_concave_on_grid(self):
        grid = np.linspace(0.0, 50.0, 501)
        values = np.array([capacity(float(x)) for x in grid])
        diffs = np.diff(values)
        assert np.all(diffs > 0.0)
        assert np.all(np.diff(diffs) < 1e-12)  # concave: slopes nonincreasing


class TestPosPart:
    @pytest.mark.parametrize("x,expected", [(-0.3, 0.0), (0.0, 0.0), (0.7, 0.7)])
    def test_examples(self, x, expected):
        assert pos_part(x) == expected

    def test_absolute_value_identity(self):
        rng = np.random.default_rng(0)
        for x in rng.normal(scale=5.0, size=200):
            assert pos_part(x) + pos_part(-x) == pytest.approx(abs(x), abs=0.0)


class TestJointPmf:
    def test_rejects_bad_tables(self):
        with pytest.raises(DomainError):
            JointPmf(("x",), np.array([0.5, 0.6]))
        with pytest.raises(DomainError):
            JointPmf(("x",), np.array([-0.1, 1.1]))
        with pytest.raises(DomainError):
            JointPmf(("x", "y"), np.array([0.5, 0.5]))
        with pytest.raises(DomainError):
            JointPmf(("x", "x"), np.full((2, 2), 0.25))

    def test_alphabet_sizes(self):
        p = uniform((2, 3), ("x", "y"))
        assert p.alphabet_sizes == (2, 3)


class TestMarginalize:
    def test_uniform_square_keeps_uniform(self):
        p = uniform((2, 2), ("x", "y"))
        m = marginalize(p, "x")
        assert m.variable_names == ("x",)
        np.testing.assert_allclose(m.probabilities, [0.5, 0.5])

    def test_diagonal_keeps_uniform(self):
        table = np.array([[0.5, 0.0], [0.0, 0.5]])
        m = marginalize(JointPmf(("x", "y"), table), "y")
        np.testing.assert_allclose(m.probabilities, [0.5, 0.5])

    def test_keep_all_is_identity(self):
        rng = np.random.default_rng(1)
        table = rng.random((2, 3))
        table /= table.sum()
        p = JointPmf(("x", "y"), table)
        m = marginalize(p, ("x", "y"))
        np.testing.assert_array_equal(m.probabilities, p.probabilities)

    def test_unknown_label(self):
        with pytest.raises(DomainError):
            marginalize(uniform((2, 2), ("x", "y")), "z")

    def test_empty_keep(self):
        with pytest.raises(DomainError):
            marginalize(uniform((2, 2), ("x", "y")), ())


def xor_joint():
    """x, z iid uniform bits, y = x xor z: 8-cell table over (x, y, z)."""
    table = np.zeros((2, 2, 2))
    for x in (0, 1):
        for z in (0, 1):
            table[x, x ^ z, z] = 0.25
    return JointPmf(("x", "y", "z"), table)


class TestMutualInformation:
    def test_independent_bits(self):
        p = uniform((2, 2), ("x", "y"))
        assert mutual_information(p, "x", "y") == 0.0

    def test_copied_bit(self):
        table = np.array([[0.5, 0.0], [0.0, 0.5]])
        p = JointPmf(("x", "y"), table)
        assert mutual_information(p, "x", "y") == pytest.approx(1.0, abs=1e-12)

    def test_xor_example_against_hand_oracle(self):
        p = xor_joint()
        # expected values via the independent dict-based oracle
        expected_plain = cmi_oracle(p.probabilities, p.variable_names, ("x",), ("y",))
        expected_cond = cmi_oracle(p.probabilities, p.variable_names, ("x",), ("y",), ("z",))
        assert expected_plain == pytest.approx(0.0, abs=1e-12)
        assert expected_cond == pytest.approx(1.0, abs=1e-12)
        assert mutual_information(p, "x", "y") == pytest.approx(expected_plain, abs=1e-12)
        assert mutual_information(p, "x", "y", "z") == pytest.approx(expected_cond, abs=1e-12)

    def test_overlapping_subsets_error(self):
        p = uniform((2, 2), ("x", "y"))
        with pytest.raises(DomainError):
            mutual_information(p, "x", "x")
        with pytest.raises(DomainError):
            mutual_information(p, "x", "y", "x")

    def test_empty_side_error(self):
        p = uniform((2, 2), ("x", "y"))
        with pytest.raises(DomainError):
            mutual_information(p, (), "y")

    def test_entropy_matches_plain_summation(self):
        rng = np.random.default_rng(2)
        table = rng.random((3, 2, 2))
        table /= table.sum()
        p = JointPmf(("x", "y", "z"), table)
        assert entropy(p) == pytest.approx(table_entropy_bits(table), abs=1e-12)
        assert entropy(p, "x") == pytest.approx(
            table_entropy_bits(table.sum(axis=(1, 2))), abs=1e-12
        )


def random_joint(rng, shape, names):
    table = rng.random(shape) + 1e-3
    table /= table.sum()
    return JointPmf(names, table)


class TestInformationProperties:
    """Randomized property suites with a fixed seed."""

    def test_nonnegativity_and_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            p = random_joint(rng, (2, 3, 2), ("x", "y", "z"))
            forward = mutual_information(p, "x", "y", "z")
            backward = mutual_information(p, "y", "x", "z")
            assert forward >= 0.0
            assert forward == pytest.approx(backward, abs=1e-12)

    def test_chain_rule(self):
        # I(A; B,B' | C) = I(A;B|C) + I(A;B'|B,C)
        rng = np.random.default_rng(4)
        for _ in range(200):
            p = random_joint(rng, (2, 2, 2, 2), ("a", "b", "bp", "c"))
            lhs = mutual_information(p, "a", ("b", "bp"), "c")
            rhs = mutual_information(p, "a", "b", "c") + mutual_information(
                p, "a", "bp", ("b", "c")
            )
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_sparse_tables_zero_cells(self):
        # zero-probability cells are skipped, never evaluated as 0*log 0
        table = np.array([[0.5, 0.0], [0.0, 0.5]])
        p = JointPmf(("x", "y"), table)
        assert entropy(p) == pytest.approx(1.0, abs=1e-12)

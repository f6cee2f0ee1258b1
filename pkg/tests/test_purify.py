import numpy as np
import pytest

from hyperpurify.errors import InvalidColoringError, NotNormalizedError
from hyperpurify.hypergraph import Coloring, EdgeSet, linear_coloring, linear_hypergraph
from hyperpurify.oracle import BranchSelector, subprotocol_dense, tensor
from hyperpurify.purify import (
    branch_totals,
    corrections_for,
    layout,
    minus_one_probability,
    reduction_pattern_probabilities,
    subprotocol_keep,
    subprotocol_keep_or_none,
    subprotocol_recycle,
)
from hyperpurify.states import (
    HBState,
    NoiseSpec,
    basis_projector,
    fidelity,
    from_hbasis,
    mixture,
    noisy_target,
    pure_target,
    random_state,
    to_hbasis,
)

TRIANGLE = EdgeSet.of(3, [(1, 2, 3)])
ABC = Coloring.parse("ABC")
SAMPLES = [20, pytest.param(200, marks=pytest.mark.acceptance)]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(2024)


def half_mixture() -> HBState:
    return mixture([basis_projector(TRIANGLE, 0b000), basis_projector(TRIANGLE, 0b001)], [0.5, 0.5])


# ---------------------------
# Layout
# ---------------------------


def test_layout_round_trip(rng):
    lay = layout(4, (1, 4), (2, 3))
    c = rng.normal(size=(16, 16))
    assert np.allclose(lay.from_blocks(lay.to_blocks(c)), c)
    # index (m, r) = ((v1, v4), (v2, v3)); vertex 4 set alone is 0b0001
    assert lay.perm[0b0100] == 0b0001


# ---------------------------
# Keep branch
# ---------------------------


@pytest.mark.parametrize("color", ["A", "B", "C"])
def test_pure_target_is_fixed_point(color):
    result = subprotocol_keep(pure_target(TRIANGLE), color, ABC)
    assert result.p_keep == pytest.approx(1.0)
    assert result.p_minus == pytest.approx(0.0)
    assert fidelity(result.kept) == pytest.approx(1.0)
    assert result.keep_probability == pytest.approx(0.25)
    assert all(p == pytest.approx(0.5) for p in result.p_reduce_vertex.values())


@pytest.mark.parametrize("n", [4, 5, 6])
def test_pure_linear_targets_are_fixed_points(n):
    target = linear_hypergraph(n)
    coloring = linear_coloring(n)
    for color in "ABC":
        result = subprotocol_keep(pure_target(target), color, coloring)
        assert result.p_keep == pytest.approx(1.0)
        assert fidelity(result.kept) == pytest.approx(1.0)


def test_half_mixture_probabilities():
    state = half_mixture()
    assert minus_one_probability(state, "C", ABC) == pytest.approx(0.5)
    result = subprotocol_keep(state, "C", ABC)
    assert result.p_keep == pytest.approx(0.5)
    for color in "AB":
        result = subprotocol_keep(state, color, ABC)
        assert result.p_keep == pytest.approx(1.0)
        assert np.allclose(result.kept.c, state.c, atol=1e-12)


def test_minus_one_probability_of_target():
    assert minus_one_probability(pure_target(TRIANGLE), "B", ABC) == pytest.approx(0.0)


def test_keep_improves_fidelity_above_threshold():
    state = noisy_target(TRIANGLE, NoiseSpec(kind="white", p=0.7))
    start = fidelity(state)
    for color in "ABC":
        state = subprotocol_keep(state, color, ABC).kept
    assert fidelity(state) >= start


def test_keep_needs_normalized_input():
    scaled = HBState.of(TRIANGLE, pure_target(TRIANGLE).c * 0.5)
    with pytest.raises(NotNormalizedError):
        subprotocol_keep(scaled, "A", ABC)


def test_keep_rejects_invalid_coloring():
    with pytest.raises(InvalidColoringError):
        subprotocol_keep(pure_target(TRIANGLE), "A", Coloring.parse("AAB"))


def test_pattern_probabilities_sum_to_one(rng):
    probs = reduction_pattern_probabilities(random_state(TRIANGLE, rng), "B", ABC)
    assert set(probs) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert sum(probs.values()) == pytest.approx(1.0)


def _dense_keep(state: HBState, color: str, coloring: Coloring):
    rho = from_hbasis(state)
    result = subprotocol_keep_or_none(state, color, coloring)
    selector = BranchSelector.keep(len(result.reduced), len(result.measured))
    return result, subprotocol_dense(tensor(rho, rho), color, coloring, state.target, selector)


@pytest.mark.parametrize("samples", SAMPLES)
@pytest.mark.parametrize("color", ["A", "B", "C"])
def test_keep_matches_dense_simulation(color, samples, rng):
    for _ in range(samples):
        state = random_state(TRIANGLE, rng)
        fast, dense = _dense_keep(state, color, ABC)
        assert fast.keep_probability == pytest.approx(dense.probability, abs=1e-9)
        assert np.allclose(fast.kept.c, to_hbasis(dense.state, TRIANGLE).c, atol=1e-9)


def test_keep_matches_dense_simulation_on_linear_four(rng):
    target = linear_hypergraph(4)
    coloring = linear_coloring(4)
    for color in "ABC":
        state = random_state(target, rng)
        fast, dense = _dense_keep(state, color, coloring)
        assert fast.keep_probability == pytest.approx(dense.probability, abs=1e-9)
        assert np.allclose(fast.kept.c, to_hbasis(dense.state, target).c, atol=1e-9)


# ---------------------------
# Recycle branches
# ---------------------------


def test_corrections_follow_flip_and_pattern():
    assert corrections_for(TRIANGLE, (1,), (2, 3), (0, 1), (1,)) == (2,)
    assert corrections_for(TRIANGLE, (1,), (2, 3), (1, 0), (1,)) == (3,)
    assert corrections_for(TRIANGLE, (1,), (2, 3), (1, 1), (1,)) == (2, 3)
    assert corrections_for(TRIANGLE, (1,), (2, 3), (1, 1), (0,)) == ()


def test_recycle_keep_branch_is_identical(rng):
    state = random_state(TRIANGLE, rng)
    result, branches = subprotocol_recycle(state, "A", ABC)
    keep = subprotocol_keep(state, "A", ABC)
    assert np.allclose(result.kept.c, keep.kept.c)
    assert len(branches) == 3 * 2
    assert {b.pattern for b in branches} == {(0, 1), (1, 0), (1, 1)}


def test_recycle_of_pure_target_returns_target():
    _, branches = subprotocol_recycle(pure_target(TRIANGLE), "A", ABC)
    live = [b for b in branches if not b.impossible]
    assert live
    for branch in live:
        assert fidelity(branch.state) == pytest.approx(1.0)


@pytest.mark.parametrize("p", [0.7, 0.8, 0.9])
def test_recycle_branches_are_worse_than_keep(p):
    state = noisy_target(TRIANGLE, NoiseSpec(kind="white", p=p))
    result, branches = subprotocol_recycle(state, "A", ABC)
    for branch in branches:
        if branch.state is not None:
            assert fidelity(branch.state) <= fidelity(result.kept) + 1e-12


@pytest.mark.parametrize("color", ["A", "B", "C"])
def test_branch_probabilities_are_complete(color, rng):
    for _ in range(200):
        state = random_state(TRIANGLE, rng)
        result, branches = subprotocol_recycle(state, color, ABC)
        total = result.keep_probability + result.discard_probability + sum(b.probability for b in branches)
        assert total == pytest.approx(1.0, abs=1e-10)
        totals = branch_totals(state, color, ABC)
        assert totals.total == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("samples", SAMPLES)
@pytest.mark.parametrize("color", ["A", "B", "C"])
def test_recycle_matches_dense_simulation(color, samples, rng):
    for _ in range(samples):
        state = random_state(TRIANGLE, rng)
        rho = from_hbasis(state)
        pair = tensor(rho, rho)
        result, branches = subprotocol_recycle(state, color, ABC)
        for branch in branches:
            selector = BranchSelector.recycle(TRIANGLE, result.measured, result.reduced, branch.pattern, branch.z_bits)
            dense = subprotocol_dense(pair, color, ABC, TRIANGLE, selector)
            assert branch.probability == pytest.approx(dense.probability, abs=1e-9)
            assert branch.corrections == selector.corrections
            if branch.state is not None:
                assert np.allclose(branch.state.c, to_hbasis(dense.state, TRIANGLE).c, atol=1e-9)


def test_recycle_matches_dense_simulation_on_linear_four(rng):
    target = linear_hypergraph(4)
    coloring = linear_coloring(4)
    state = random_state(target, rng)
    rho = from_hbasis(state)
    pair = tensor(rho, rho)
    result, branches = subprotocol_recycle(state, "B", coloring)
    for branch in branches:
        selector = BranchSelector.recycle(target, result.measured, result.reduced, branch.pattern, branch.z_bits)
        dense = subprotocol_dense(pair, "B", coloring, target, selector)
        assert branch.probability == pytest.approx(dense.probability, abs=1e-9)
        if branch.state is not None:
            assert np.allclose(branch.state.c, to_hbasis(dense.state, target).c, atol=1e-9)

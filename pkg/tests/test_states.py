import numpy as np
import pytest

from hyperpurify.errors import NoiseParameterError, ZeroTraceError
from hyperpurify.hypergraph import EdgeSet, linear_hypergraph
from hyperpurify.oracle import PAULIS, DenseState, apply_operator, build_state
from hyperpurify.states import (
    HBState,
    NoiseSpec,
    apply_noise,
    basis_projector,
    fidelity,
    from_hbasis,
    from_snapshot,
    maximally_mixed,
    mixture,
    noisy_target,
    normalized,
    pure_target,
    random_state,
    to_hbasis,
    to_snapshot,
    trace_distance,
    white_noise_for_fidelity,
)

TRIANGLE = EdgeSet.of(3, [(1, 2, 3)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


# ---------------------------
# Basis change
# ---------------------------


def test_target_has_single_coefficient():
    state = to_hbasis(build_state(TRIANGLE), TRIANGLE)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    assert np.allclose(state.c, expected, atol=1e-12)


def test_maximally_mixed_is_basis_independent():
    rho = DenseState.from_matrix(np.eye(8) / 8)
    assert np.allclose(to_hbasis(rho, TRIANGLE).c, maximally_mixed(TRIANGLE).c)


@pytest.mark.parametrize("target", [TRIANGLE, linear_hypergraph(4), EdgeSet.of(3, [(1, 2, 3), (2,)], sign=-1)])
def test_basis_change_round_trip(target, rng):
    for _ in range(5):
        state = random_state(target, rng)
        back = to_hbasis(from_hbasis(state), target)
        assert np.allclose(back.c, state.c, atol=1e-12)


def test_fidelity_examples():
    assert fidelity(pure_target(TRIANGLE)) == pytest.approx(1.0)
    half = mixture([basis_projector(TRIANGLE, 0), basis_projector(TRIANGLE, 1)], [0.5, 0.5])
    assert fidelity(half) == pytest.approx(0.5)


def test_fidelity_of_zero_state_raises():
    zero = HBState(target=TRIANGLE, c=np.zeros((8, 8), dtype=np.complex128))
    with pytest.raises(ZeroTraceError):
        fidelity(zero)
    with pytest.raises(ZeroTraceError):
        normalized(zero)


def test_hbstate_validation():
    with pytest.raises(ValueError):
        HBState(target=TRIANGLE, c=np.eye(4, dtype=np.complex128) / 4)
    with pytest.raises(ValueError):
        HBState(target=TRIANGLE, c=np.eye(8, dtype=np.complex128))


def test_trace_distance():
    assert trace_distance(basis_projector(TRIANGLE, 0), basis_projector(TRIANGLE, 3)) == pytest.approx(1.0)
    assert trace_distance(pure_target(TRIANGLE), pure_target(TRIANGLE)) == pytest.approx(0.0)


def test_snapshot_round_trip():
    state = noisy_target(TRIANGLE, NoiseSpec(kind="dephasing", p=0.8))
    snap = to_snapshot(state)
    assert snap["n"] == 3
    assert snap["edges"] == "3; {1,2,3}"
    assert snap["fidelity"] == pytest.approx(fidelity(state))
    assert np.allclose(from_snapshot(snap).c, state.c)


# ---------------------------
# Noise channels
# ---------------------------


@pytest.mark.parametrize("p", [0.0, 0.3, 0.7])
def test_white_noise_fidelity(p):
    state = noisy_target(TRIANGLE, NoiseSpec(kind="white", p=p))
    assert fidelity(state) == pytest.approx(p + (1 - p) / 8)
    expected = p * pure_target(TRIANGLE).c + (1 - p) / 8 * np.eye(8)
    assert np.allclose(state.c, expected)


def test_white_noise_composes():
    state = random_state(TRIANGLE, np.random.default_rng(3))
    twice = apply_noise(apply_noise(state, NoiseSpec(kind="white", p=0.8)), NoiseSpec(kind="white", p=0.5))
    once = apply_noise(state, NoiseSpec(kind="white", p=0.4))
    assert np.allclose(twice.c, once.c, atol=1e-10)


@pytest.mark.parametrize("kind", ["white", "dephasing", "depolarizing"])
def test_p_one_is_identity(kind, rng):
    state = random_state(TRIANGLE, rng)
    assert np.allclose(apply_noise(state, NoiseSpec(kind=kind, p=1.0)).c, state.c)


@pytest.mark.parametrize("kind", ["white", "dephasing", "depolarizing"])
@pytest.mark.parametrize("target", [TRIANGLE, linear_hypergraph(4)])
def test_channels_preserve_trace_and_positivity(kind, target, rng):
    for _ in range(10):
        state = random_state(target, rng)
        out = apply_noise(state, NoiseSpec(kind=kind, p=float(rng.uniform())))
        assert out.trace == pytest.approx(1.0, abs=1e-12)
        assert out.is_psd()


def _dense_dephasing(state: HBState, p: float) -> HBState:
    rho = from_hbasis(state)
    for v in range(1, state.n_vertices + 1):
        flipped = apply_operator(rho, PAULIS["Z"], (v,))
        rho = DenseState.from_matrix((1 + p) / 2 * rho.data + (1 - p) / 2 * flipped.data)
    return to_hbasis(rho, state.target)


@pytest.mark.parametrize("target", [TRIANGLE, linear_hypergraph(4)])
def test_dephasing_matches_dense_channel(target, rng):
    for _ in range(10):
        state = random_state(target, rng)
        p = float(rng.uniform())
        fast = apply_noise(state, NoiseSpec(kind="dephasing", p=p))
        assert np.allclose(fast.c, _dense_dephasing(state, p).c, atol=1e-10)


def test_noise_parameter_out_of_range():
    with pytest.raises(ValueError):
        NoiseSpec(kind="white", p=1.5)


def test_white_noise_for_fidelity():
    p = white_noise_for_fidelity(3, 0.93)
    assert p == pytest.approx(0.92)
    assert fidelity(noisy_target(TRIANGLE, NoiseSpec(kind="white", p=p))) == pytest.approx(0.93)
    with pytest.raises(NoiseParameterError):
        white_noise_for_fidelity(3, 0.1)

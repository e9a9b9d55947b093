import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msdyn import linkage
from msdyn import pulses as P
from msdyn.errors import ConfigError
from msdyn.linkage import Coupling, LinkageSpec
from msdyn.scenarios import x_fstirap


def w_table(a, b, d):
    return {"vp": P.constant(a), "vs": P.constant(b), "delta": P.constant(d)}


def test_w5_uncoupled_is_diagonal_detuning():
    H = linkage.build_hamiltonian(linkage.w5(w_table(0, 0, 2.5)), 0.0).matrix
    assert np.array_equal(H, np.diag([0, 0, 2.5, 2.5, 2.5]))


def test_npod_structure():
    table = {f"V{i}": P.constant(3.0) for i in range(1, 6)}
    table["delta"] = P.constant(0.0)
    H = linkage.build_hamiltonian(linkage.npod(5, table), 1.0).matrix
    expected = np.zeros((6, 6))
    expected[5, :5] = expected[:5, 5] = 1.5
    assert np.array_equal(H, expected)


def test_x5_caption_entry():
    spec = x_fstirap().build_linkage()
    H = linkage.build_hamiltonian(spec, 30.0).matrix
    assert H[2, 4] == pytest.approx(0.5 * 160)
    assert spec.labels == ["g1", "g2", "m", "e1", "e2"]


def test_coupling_blocks():
    V = linkage.coupling_matrices(linkage.w5(w_table(2.0, 3.0, 0)), 0.0)
    assert np.array_equal(V, [[2, 3, 0], [0, 2, 3]])
    table = {f"V{i}": P.constant(float(i)) for i in range(1, 6)}
    table["delta"] = P.constant(0.0)
    assert np.array_equal(linkage.coupling_matrices(linkage.npod(5, table), 0.0), np.arange(1, 6.0)[:, None])
    xt = {"vp1": P.constant(1.0), "vs1": P.constant(2.0), "vp2": P.constant(3.0), "vs2": P.constant(4.0),
          "delta": P.constant(0.0)}
    Vp, Vs = linkage.coupling_matrices(linkage.x5(xt), 0.0)
    assert np.array_equal(Vp, [[1], [2]])
    assert np.array_equal(Vs, [[3, 4]])


def test_coupling_blocks_time_axis():
    spec = x_fstirap().build_linkage()
    Vp, Vs = linkage.coupling_matrices(spec, np.linspace(40, 60, 5))
    assert Vp.shape == (5, 2, 1) and Vs.shape == (5, 1, 2)


def test_detuning_only_on_middle_set():
    spec = x_fstirap().build_linkage()
    H = linkage.build_hamiltonian(spec, 10.0).matrix
    assert np.array_equal(np.diag(H), [0, 0, 1e-4, 0, 0])


def test_shared_profile_for_coupling_and_detuning():
    spec = LinkageSpec((1, 1), (Coupling("g1", "e", "p"),), "p", {"p": P.constant(2.0)})
    H = linkage.build_hamiltonian(spec, 0.0).matrix
    assert np.array_equal(H, [[0, 1], [1, 2]])


@pytest.mark.parametrize(
    "couplings",
    [
        [("g1", "g2", "p")],  # intra-set
        [("g1", "e1", "p")],  # skips the middle set
        [("m", "g1", "p")],  # wrong direction
        [("g1", "m", "missing")],
        [("g1", "m", "p"), ("g1", "m", "p")],
        [("g9", "m", "p")],
    ],
)
def test_bad_topology_rejected(couplings):
    with pytest.raises(ConfigError):
        LinkageSpec((2, 1, 2), tuple(Coupling(*c) for c in couplings), "delta",
                    {"p": P.constant(1.0), "delta": P.constant(0.0)})


def test_unknown_detuning_and_set_count():
    with pytest.raises(ConfigError):
        LinkageSpec((1, 1), (), "nope", {"p": P.constant(1.0)})
    with pytest.raises(ConfigError):
        LinkageSpec((1, 1, 1, 1), (), "p", {"p": P.constant(1.0)})


def test_preset_keys():
    table = {f"V{i}": P.constant(1.0) for i in range(1, 4)}
    table["delta"] = P.constant(0.0)
    assert linkage.preset("npod(3)", table).set_sizes == (3, 1)
    assert linkage.preset("NPOD3", table).set_sizes == (3, 1)
    assert linkage.preset("w5", w_table(1, 1, 0)).set_sizes == (2, 3)
    with pytest.raises(ConfigError):
        linkage.preset("y7", table)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 100), st.floats(0, 100), st.floats(-50, 50), st.floats(-10, 60))
def test_hermitian_and_sparsity(a, b, d, t):
    spec = linkage.w5({"vp": P.gaussian(a, 30), "vs": P.gaussian(b, 31), "delta": P.linear(d, 30)})
    H = linkage.build_hamiltonian(spec, t).matrix
    assert np.abs(H - H.conj().T).max() < 1e-12
    mask = np.zeros((5, 5), bool)
    for i, j in [(0, 2), (0, 3), (1, 3), (1, 4)]:
        mask[i, j] = mask[j, i] = True
    mask[[2, 3, 4], [2, 3, 4]] = True
    assert np.all(H[~mask] == 0)


def test_series_matches_snapshots():
    spec = x_fstirap().build_linkage()
    times = np.linspace(26, 54, 9)
    series = linkage.hamiltonian_series(spec, times)
    for t, H in zip(times, series):
        assert np.allclose(H, linkage.build_hamiltonian(spec, t).matrix, atol=1e-14)

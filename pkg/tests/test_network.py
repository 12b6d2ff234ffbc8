import os

import numpy as np
import pytest

from secnc import linalg as la
from secnc.errors import BudgetExceededError, ParameterError
from secnc.gf import PrimeField
from secnc.network import (
    ChannelRealization,
    iter_exhaustive_realizations,
    lift,
    load_realization,
    noncoherent_decode,
    sample_realization,
    save_realization,
    transmit,
    transmit_lifted,
)
from secnc.scheme import SchemeParams, build_instance

PARAMS = SchemeParams(q=2, m=4, n=4, t=1, mu=1, k=1)


@pytest.fixture(scope="module")
def inst():
    return build_instance(PARAMS)


def clean_realization(n, q=2, cols=None):
    cols = n if cols is None else cols
    return ChannelRealization(
        q,
        np.eye(n, dtype=np.int64),
        np.zeros((n, 0), dtype=np.int64),
        np.zeros((0, cols), dtype=np.int64),
        np.zeros((0, n), dtype=np.int64),
    )


def test_transmit_identity_channel(inst):
    X = inst.encode([9], force_v=[4])
    res = transmit(inst.F, X, clean_realization(4, cols=4))
    assert (res.Y == la.expand(inst.F, X)).all()
    assert res.W.shape == (0, 4)


def test_transmit_zero_payload_shows_only_error(inst):
    rng = np.random.default_rng(3)
    real = sample_realization(PARAMS, 5, rng, "random")
    res = transmit(inst.F, [0, 0, 0, 0], real)
    assert (res.Y == real.effective_error()).all()
    assert (res.W == 0).all()


def test_effective_error_rank_bound(inst):
    rng = np.random.default_rng(5)
    for _ in range(40):
        real = sample_realization(PARAMS, 6, rng, "random")
        E = real.effective_error()
        assert la.rank_fq(E, 2) <= min(real.D.shape[1], la.rank_fq(real.Z, 2))
        assert la.rank_fq(E, 2) <= PARAMS.t


def test_realization_validation():
    I4 = np.eye(4, dtype=np.int64)
    with pytest.raises(ParameterError):
        ChannelRealization(2, np.zeros((4, 4), dtype=int), I4[:, :0],
                           np.zeros((0, 4), dtype=int),
                           np.zeros((0, 4), dtype=int))
    with pytest.raises(ParameterError):  # D rows != N
        ChannelRealization(2, I4, np.zeros((3, 1), dtype=int),
                           np.zeros((1, 4), dtype=int),
                           np.zeros((0, 4), dtype=int))
    with pytest.raises(ParameterError):  # Z rows != D cols
        ChannelRealization(2, I4, np.zeros((4, 2), dtype=int),
                           np.zeros((1, 4), dtype=int),
                           np.zeros((0, 4), dtype=int))
    with pytest.raises(ParameterError):  # B cols != n
        ChannelRealization(2, I4, np.zeros((4, 0), dtype=int),
                           np.zeros((0, 4), dtype=int),
                           np.ones((1, 3), dtype=int))


def test_from_effective_error_round_trip():
    rng = np.random.default_rng(11)
    field = PrimeField(3)
    for _ in range(30):
        E = rng.integers(0, 3, size=(5, 4))
        A = la.random_full_rank(field, 5, 4, rng)
        real = ChannelRealization.from_effective_error(
            3, A, E, np.zeros((0, 4), dtype=np.int64)
        )
        assert (real.effective_error() == E % 3).all()
        assert real.D.shape[1] == la.rank_fq(E, 3)


def test_exhaustive_realization_enumeration():
    reals = list(iter_exhaustive_realizations(PARAMS))
    assert len(reals) == 226 * 15  # rank-<=1 errors x full-rank 1x4 taps
    seen_errors = {tuple(map(tuple, r.effective_error())) for r in reals}
    assert len(seen_errors) == 226
    seen_taps = {tuple(map(tuple, r.B)) for r in reals}
    assert len(seen_taps) == 15
    with pytest.raises(BudgetExceededError):
        list(iter_exhaustive_realizations(PARAMS, budget=100))


def test_sample_realization_modes(inst, tmp_path):
    rng = np.random.default_rng(13)
    real = sample_realization(PARAMS, 6, rng, "random")
    assert real.A.shape == (6, 4) and la.rank_fq(real.A, 2) == 4
    assert real.D.shape == (6, 1) and real.Z.shape == (1, 4)
    assert real.B.shape == (1, 4)
    with pytest.raises(ParameterError):
        sample_realization(PARAMS, 3, rng, "random")
    with pytest.raises(ParameterError):
        sample_realization(PARAMS, 4, rng, "oracle")
    with pytest.raises(ParameterError):
        sample_realization(PARAMS, 4, rng, "fixed")
    path = os.path.join(tmp_path, "real.txt")
    save_realization(path, real)
    loaded = sample_realization(PARAMS, 6, rng, "fixed", path=path)
    assert (loaded.A == real.A).all() and (loaded.Z == real.Z).all()


def test_realization_file_round_trip(tmp_path, inst):
    rng = np.random.default_rng(17)
    real = sample_realization(PARAMS, 5, rng, "random", lifted=True)
    path = os.path.join(tmp_path, "real.txt")
    save_realization(path, real)
    again = load_realization(path, 2)
    for name in ("A", "D", "Z", "B"):
        assert (getattr(again, name) == getattr(real, name)).all()


def test_lift(inst):
    X = inst.encode([7], force_v=[2])
    L = lift(inst.F, X)
    assert L.shape == (4, 8)
    assert (L[:, :4] == np.eye(4, dtype=int)).all()
    assert (L[:, 4:] == la.expand(inst.F, X)).all()
    Z = lift(inst.F, [0, 0, 0, 0])
    assert (Z[:, 4:] == 0).all()


def test_lift_clean_channel_row_reduces_to_lifted_matrix(inst):
    # with no errors the received lifted matrix row-reduces back to [I | X]
    rng = np.random.default_rng(19)
    F = inst.F
    for _ in range(20):
        X = inst.encode([int(rng.integers(0, 16))], rng=rng)
        A = la.random_full_rank(F.base, 4, 4, rng)
        real = ChannelRealization(2, A, np.zeros((4, 0), dtype=int),
                                  np.zeros((0, 8), dtype=int),
                                  np.zeros((0, 4), dtype=int))
        res = transmit_lifted(F, X, real)
        R, _ = la.rref(F.base, res.Y)
        assert np.array_equal(np.array(R), lift(F, X))


def test_noncoherent_clean(inst):
    rng = np.random.default_rng(23)
    for s in range(16):
        X = inst.encode([s], rng=rng)
        A = la.random_full_rank(inst.F.base, 4, 4, rng)
        real = ChannelRealization(2, A, np.zeros((4, 0), dtype=int),
                                  np.zeros((0, 8), dtype=int),
                                  np.zeros((0, 4), dtype=int))
        res = transmit_lifted(inst.F, X, real)
        out = noncoherent_decode(inst, res.Y)
        assert out.ok and out.message == (s,) and out.error_rank == 0


def test_noncoherent_single_injection(inst):
    rng = np.random.default_rng(29)
    for trial in range(150):
        s = int(rng.integers(0, 16))
        X = inst.encode([s], rng=rng)
        real = sample_realization(PARAMS, 4, rng, "random", lifted=True)
        res = transmit_lifted(inst.F, X, real)
        out = noncoherent_decode(inst, res.Y)
        assert out.ok and out.message == (s,), (trial, s)
        assert out.error_rank <= 1


def test_noncoherent_rectangular_and_header_corruption(inst):
    rng = np.random.default_rng(31)
    for trial in range(60):
        s = int(rng.integers(0, 16))
        X = inst.encode([s], rng=rng)
        A = la.random_full_rank(inst.F.base, 6, 4, rng)
        Z = np.zeros((1, 8), dtype=np.int64)
        Z[0, :4] = rng.integers(0, 2, size=4)  # corrupt headers only
        real = ChannelRealization(2, A, rng.integers(0, 2, size=(6, 1)), Z,
                                  np.zeros((0, 4), dtype=int))
        res = transmit_lifted(inst.F, X, real)
        out = noncoherent_decode(inst, res.Y)
        assert out.ok and out.message == (s,), (trial, s)


def test_noncoherent_rejects_bad_shapes(inst):
    with pytest.raises(ParameterError):
        noncoherent_decode(inst, np.zeros((4, 7), dtype=int))
    with pytest.raises(ParameterError):
        noncoherent_decode(inst, np.zeros((3, 8), dtype=int))


def test_transmit_shape_mismatches(inst):
    X = inst.encode([1], force_v=[0])
    with pytest.raises(ParameterError):
        transmit(inst.F, X[:3], clean_realization(4, cols=4))
    with pytest.raises(ParameterError):
        transmit_lifted(inst.F, X, clean_realization(4, cols=4))  # Z too narrow

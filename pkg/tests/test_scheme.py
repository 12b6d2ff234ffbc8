import numpy as np
import pytest

from secnc import linalg as la
from secnc.errors import BudgetExceededError, ParameterError, ValidationError
from secnc.gf import ExtField
from secnc.scheme import (
    SchemeParams,
    build_broken_instance,
    build_instance,
    coset_decode,
    coset_encode,
    coset_syndrome_matrix,
    proposition1_check,
)

PARAMS = SchemeParams(q=2, m=4, n=4, t=1, mu=1, k=1)


@pytest.fixture(scope="module")
def inst():
    return build_instance(PARAMS)


def test_rate_bound_boundary():
    SchemeParams(2, 4, 4, 1, 1, 1).validate()  # k = n - 2t - mu accepted
    with pytest.raises(ValidationError) as e:
        SchemeParams(2, 4, 4, 1, 1, 2).validate()
    assert e.value.reason == "rate_bound"
    with pytest.raises(ValidationError) as e:
        SchemeParams(2, 4, 4, 1, 4, 0).validate()
    assert e.value.reason == "rate_bound"


def test_packet_length_boundary():
    with pytest.raises(ValidationError) as e:
        SchemeParams(2, 3, 4, 1, 1, 1).validate()
    assert e.value.reason == "packet_length"
    SchemeParams(2, 5, 4, 1, 1, 1).validate()  # m > n is fine


def test_shape_rejection():
    with pytest.raises(ValidationError) as e:
        SchemeParams(2, 4, 4, -1, 1, 1).validate()
    assert e.value.reason == "shape"


def test_boundary_sweep_small():
    # acceptance criterion 6 runs the full sweep; spot-check here
    for n, t, mu in [(3, 0, 1), (5, 1, 1), (8, 2, 2)]:
        kmax = n - 2 * t - mu
        if kmax < 1:
            continue
        SchemeParams(2, n, n, t, mu, kmax).validate()
        with pytest.raises(ValidationError):
            SchemeParams(2, n, n, t, mu, kmax + 1).validate()
        with pytest.raises(ValidationError):
            SchemeParams(2, n - 1, n, t, mu, kmax).validate()


def test_instance_structure(inst):
    p = inst.params
    assert p.min_distance == 3  # n - k - mu + 1 = 3 >= 2t + 1
    assert len(inst.G0) == p.k + p.mu
    assert inst.G == inst.G0[p.k:]
    Tt = la.transpose(inst.T)
    assert Tt[p.n - p.k - p.mu:] == inst.G0
    assert la.rank(inst.F, inst.T) == p.n


def test_encoder_views_agree(inst):
    # X = G0^T U and X = T [0; U] are the same map
    rng = np.random.default_rng(41)
    for _ in range(100):
        S = [int(rng.integers(0, 16))]
        V = [int(rng.integers(0, 16))]
        assert inst.encode(S, force_v=V) == inst.encode_via_transform(S, V)


def test_encode_zero_and_block_structure(inst):
    assert inst.encode([0], force_v=[0]) == [0, 0, 0, 0]
    # with V = 0 the payload is (first k rows of G0)^T S
    S = [11]
    X = inst.encode(S, force_v=[0])
    expected = la.matvec(inst.F, la.transpose(inst.G0[:1]), S)
    assert X == expected


def test_encode_coset_structure(inst):
    # for fixed S, the payloads over all V form a coset of the code
    # generated by G, with q^(m mu) distinct members
    F = inst.F
    base = inst.encode([6], force_v=[0])
    coset = set()
    for v in range(16):
        X = inst.encode([6], force_v=[v])
        diff = [F.sub(a, b) for a, b in zip(X, base)]
        # difference must be v times the single G row
        assert diff == [F.mul(v, g) for g in inst.G[0]]
        coset.add(tuple(X))
    assert len(coset) == 16


def test_encode_argument_checks(inst):
    with pytest.raises(ParameterError):
        inst.encode([1, 2], force_v=[0])
    with pytest.raises(ParameterError):
        inst.encode([1], force_v=[0, 0])
    with pytest.raises(ParameterError):
        inst.encode([1])  # no rng, no forced V


def test_coherent_decode_clean(inst):
    for s in range(16):
        X = inst.encode([s], force_v=[9])
        out = inst.coherent_decode(la.expand(inst.F, X), np.eye(4, dtype=int))
        assert out.ok and out.message == (s,) and out.error_rank == 0


def test_coherent_decode_all_rank1_errors_identity_A(inst):
    F = inst.F
    errors = list(la.iter_rank_at_most(2, 4, 4, 1))
    for s, v in [(3, 14), (0, 0), (15, 7)]:
        X = la.expand(F, inst.encode([s], force_v=[v]))
        for E in errors:
            Y = (X + np.array(E)) % 2
            out = inst.coherent_decode(Y, np.eye(4, dtype=int))
            assert out.ok and out.message == (s,)


def test_coherent_decode_random_rectangular(inst):
    rng = np.random.default_rng(43)
    F = inst.F
    for _ in range(60):
        s = int(rng.integers(0, 16))
        X = inst.encode([s], rng=rng)
        N = int(rng.integers(4, 8))
        A = la.random_full_rank(F.base, N, 4, rng)
        D = rng.integers(0, 2, size=(N, 1))
        Z = rng.integers(0, 2, size=(1, 4))
        Y = (np.array(A) @ la.expand(F, X) + D @ Z) % 2
        out = inst.coherent_decode(Y, A)
        assert out.ok and out.message == (s,)


def test_coherent_decode_output_independent_of_A(inst):
    # universality: for fixed X and fixed D Z, the decoded message does
    # not depend on which full-rank A carried it
    rng = np.random.default_rng(44)
    F = inst.F
    X = inst.encode([13], force_v=[5])
    E = np.array(next(iter(la.iter_rank_exactly(2, 5, 4, 1))))
    outs = set()
    for _ in range(15):
        A = la.random_full_rank(F.base, 5, 4, rng)
        Y = (np.array(A) @ la.expand(F, X) + E) % 2
        out = inst.coherent_decode(Y, A)
        outs.add((out.ok, out.message))
    assert outs == {(True, (13,))}


def test_coherent_decode_rejects_bad_transfer(inst):
    X = inst.encode([1], force_v=[0])
    Y = la.expand(inst.F, X)
    from secnc.errors import SingularMatrixError

    with pytest.raises(SingularMatrixError):
        inst.coherent_decode(Y, np.zeros((4, 4), dtype=int))
    with pytest.raises(ParameterError):
        inst.coherent_decode(Y[:3], np.eye(4, dtype=int))


def test_erasure_decode_exhaustive(inst):
    # all full-rank 2x4 A', all (S, V): 35 * 256 cases
    F = inst.F
    payloads = {}
    for s in range(16):
        for v in range(16):
            payloads[(s, v)] = la.expand(F, inst.encode([s], force_v=[v]))
    for Ap in la.iter_full_rank(2, 2, 4):
        Apn = np.array(Ap)
        for (s, v), X in payloads.items():
            out = inst.erasure_decode_scheme((Apn @ X) % 2, Ap)
            assert out.ok and out.message == (s,)


def test_erasure_agrees_with_coherent_on_clean_square():
    p = SchemeParams(q=2, m=4, n=4, t=0, mu=1, k=2)
    i = build_instance(p)
    rng = np.random.default_rng(45)
    for _ in range(25):
        S = [int(x) for x in rng.integers(0, 16, size=2)]
        X = i.encode(S, rng=rng)
        A = la.random_full_rank(i.F.base, 4, 4, rng)
        Y = (np.array(A) @ la.expand(i.F, X)) % 2
        a = i.coherent_decode(Y, A)
        b = i.erasure_decode_scheme(Y, A)
        assert a.ok and b.ok and a.message == b.message == tuple(S)


def test_degenerate_mu_zero():
    # pure error correction, no secrecy layer
    p = SchemeParams(q=2, m=4, n=4, t=1, mu=0, k=2)
    i = build_instance(p)
    rng = np.random.default_rng(46)
    for _ in range(20):
        S = [int(x) for x in rng.integers(0, 16, size=2)]
        X = i.encode(S, force_v=[])
        E = np.array(next(iter(la.iter_rank_exactly(2, 4, 4, 1))))
        Y = (la.expand(i.F, X) + E) % 2
        out = i.coherent_decode(Y, np.eye(4, dtype=int))
        assert out.ok and out.message == tuple(S)


def test_degenerate_t_zero():
    # pure coset coding through the combined interface
    p = SchemeParams(q=2, m=4, n=4, t=0, mu=2, k=2)
    i = build_instance(p)
    rng = np.random.default_rng(47)
    for _ in range(20):
        S = [int(x) for x in rng.integers(0, 16, size=2)]
        X = i.encode(S, rng=rng)
        out = i.coherent_decode(la.expand(i.F, X), np.eye(4, dtype=int))
        assert out.ok and out.message == tuple(S)


def test_message_of_codeword(inst):
    x = inst.encode([9], force_v=[2])
    assert inst.message_of_codeword(x) == [9, 2]
    assert inst.message_of_codeword([1, 0, 0, 0]) is None


def test_coset_round_trip_and_cardinality():
    F = ExtField(2, 3)
    i = build_instance(SchemeParams(q=2, m=3, n=3, t=0, mu=2, k=1))
    H = coset_syndrome_matrix(F, i.T, 1)
    for S in range(8):
        payloads = set()
        for v0 in range(8):
            for v1 in range(8):
                X = coset_encode(F, i.T, [S], force_v=[v0, v1])
                assert coset_decode(F, H, X) == [S]
                payloads.add(tuple(X))
        assert len(payloads) == 64  # q^(m(n-k)) member coset


def test_coset_encode_rng_path():
    F = ExtField(2, 3)
    i = build_instance(SchemeParams(q=2, m=3, n=3, t=0, mu=2, k=1))
    H = coset_syndrome_matrix(F, i.T, 1)
    rng = np.random.default_rng(48)
    for _ in range(20):
        X = coset_encode(F, i.T, [5], rng=rng)
        assert coset_decode(F, H, X) == [5]


def test_proposition1_check(inst):
    ok, dist = proposition1_check(inst.F, inst.T, 3)
    assert ok and dist == 4  # [4, 1] MRD: distance n - mu + 1
    ok2, dist2 = proposition1_check(inst.F, inst.T, 2)
    assert ok2 and dist2 == 3  # last two rows: the [4, 2] code G0
    broken = build_broken_instance(PARAMS)
    okb, distb = proposition1_check(inst.F, broken.T, 3)
    assert not okb and distb == 1
    assert proposition1_check(inst.F, inst.T, 0) == (True, 1)
    with pytest.raises(ParameterError):
        proposition1_check(inst.F, inst.T, 4)
    with pytest.raises(BudgetExceededError):
        proposition1_check(inst.F, inst.T, 1, budget=10)


def test_broken_instance_shape(inst):
    b = build_broken_instance(PARAMS)
    assert b.broken
    assert b.G0[-1] == [1, 1, 1, 1]
    assert b.G0[:1] == inst.G0[:1]
    # encoding still works, decoding is refused
    X = b.encode([3], force_v=[7])
    assert b.encode([3], force_v=[7]) == X
    with pytest.raises(ParameterError):
        b.coherent_decode(la.expand(b.F, X), np.eye(4, dtype=int))
    with pytest.raises(ParameterError):
        build_broken_instance(SchemeParams(2, 4, 4, 1, 0, 2))

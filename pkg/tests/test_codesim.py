import numpy as np
import pytest

from bcrsi.budget import BudgetExceeded
from bcrsi.codesim import (SplitBits, build_code, build_combined_code,
                           build_secret_key_code, build_superposition_code,
                           embed_lindet, exact_error_prob, exact_leakage,
                           trend_experiment)
from bcrsi.infotools import DmcChannel, Pmf, bsc_broadcast, mutual_information
from bcrsi.lindet import LinDetConfig, verify_exhaustive
from bcrsi.markov import SuperpositionSpec


def noiseless(nx=4):
    eye = np.eye(nx)
    return DmcChannel.from_marginals(eye, eye, eye)


def random_channel(rng):
    def kernel(nout):
        k = 0.05 + rng.random((2, nout))
        return k / k.sum(axis=1, keepdims=True)
    return DmcChannel.from_marginals(kernel(2), kernel(2), kernel(2))


class TestBuilders:
    def test_seeded_reproducibility(self):
        ch = noiseless()
        a = build_secret_key_code(ch, 4, 2, seed=9)
        b = build_secret_key_code(ch, 4, 2, seed=9)
        c = build_secret_key_code(ch, 4, 2, seed=10)
        assert np.array_equal(a.x_table, b.x_table)
        assert not np.array_equal(a.x_table, c.x_table)

    def test_combined_with_empty_private_part_matches_secret_key(self):
        ch = noiseless()
        sk = build_secret_key_code(ch, 3, 2, seed=4)
        cb = build_combined_code(ch, 3, SplitBits(k=2, s1=0), seed=4)
        assert np.array_equal(sk.x_table, cb.x_table.reshape(sk.x_table.shape))
        a = exact_leakage(sk, ch)
        b = exact_leakage(cb, ch)
        assert a.leak1_bits == b.leak1_bits and a.joint_bits == b.joint_bits

    def test_superposition_u_equals_v(self):
        ch = bsc_broadcast(0.05, 0.1, 0.3)
        spec = SuperpositionSpec(np.array([0.5, 0.5]), np.eye(2), np.eye(2))
        code = build_superposition_code(ch, 3, SplitBits(k=1), spec, seed=2)
        # satellite equals cloud symbol-for-symbol when p(v|u) is identity
        u_full = np.broadcast_to(code.u_table[:, None, None, None, None, :],
                                 code.v_table.shape)
        assert np.array_equal(code.v_table, u_full)

    def test_superposition_reproducible(self):
        ch = bsc_broadcast(0.05, 0.1, 0.3)
        spec = SuperpositionSpec(np.array([0.5, 0.5]),
                                 np.array([[0.8, 0.2], [0.3, 0.7]]), np.eye(2))
        s = SplitBits(k=1, sk=1, s1=1, s2=1, r=1)
        a = build_superposition_code(ch, 2, s, spec, seed=5)
        b = build_superposition_code(ch, 2, s, spec, seed=5)
        assert np.array_equal(a.x_table, b.x_table)

    def test_budget_caps(self):
        ch = noiseless()
        with pytest.raises(ValueError):
            build_secret_key_code(ch, 2, 21, seed=0)

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            build_code("bogus", noiseless(), 2, SplitBits(k=1), 0)


class TestSecretKeyExactness:
    def test_individual_leakage_zero_on_random_channels(self):
        rng = np.random.Generator(np.random.Philox(100))
        for _ in range(5):
            ch = random_channel(rng)
            for n in (1, 3):
                code = build_secret_key_code(ch, n, 2, seed=int(rng.integers(1e6)))
                leak = exact_leakage(code, ch)
                assert leak.leak1_bits <= 1e-12
                assert leak.leak2_bits <= 1e-12

    def test_joint_leak_equals_width_on_noiseless(self):
        ch = noiseless()
        code = build_secret_key_code(ch, 4, 2, seed=8)
        assert code.is_injective()
        leak = exact_leakage(code, ch)
        assert abs(leak.joint_bits - 2.0) <= 1e-9

    def test_conditional_z_pmf_identical_across_m1(self):
        ch = bsc_broadcast(0.1, 0.2, 0.3)
        code = build_secret_key_code(ch, 2, 1, seed=3)
        wz = ch.marginal("z")
        from bcrsi.codesim import _output_pmfs
        views = []
        for m1 in range(code.m1_space):
            acc = np.zeros(ch.z_size ** code.n)
            for m2 in range(code.m2_space):
                acc += _output_pmfs(code.codewords_for(m1, m2), wz).mean(axis=0)
            views.append(acc / code.m2_space)
        for v in views[1:]:
            assert np.allclose(v, views[0], atol=1e-15)

    def test_cloud_layer_of_superposition_is_secret(self):
        # both pad-carried parts (m1k and m1sk) leak exactly zero
        ch = bsc_broadcast(0.1, 0.2, 0.3)
        spec = SuperpositionSpec(np.array([0.5, 0.5]),
                                 np.array([[0.8, 0.2], [0.3, 0.7]]), np.eye(2))
        splits = SplitBits(k=1, sk=1, s1=1, s2=0, r=1)
        code = build_superposition_code(ch, 2, splits, spec, seed=21)
        wz = ch.marginal("z")
        from bcrsi.codesim import _output_pmfs
        zn = ch.z_size ** code.n
        for part_shift, part_name in ((2, "m1k"), (1, "m1sk")):
            joint = np.zeros((2, zn))
            for i1 in range(code.m1_space):
                part = (i1 >> part_shift) & 1
                for i2 in range(code.m2_space):
                    joint[part] += _output_pmfs(code.codewords_for(i1, i2), wz).mean(axis=0)
            pmf = Pmf(joint / joint.sum())
            assert mutual_information(pmf, (0,), (1,)) <= 1e-12, part_name

    def test_pad_part_of_combined_is_secret(self):
        # I(M1k; Z^n) = 0 exactly: marginalize the private part out
        ch = bsc_broadcast(0.1, 0.2, 0.3)
        code = build_combined_code(ch, 2, SplitBits(k=1, s1=1), seed=6)
        wz = ch.marginal("z")
        from bcrsi.codesim import _output_pmfs
        zn = ch.z_size ** code.n
        joint = np.zeros((2, zn))    # (m1k, z)
        for m1k in range(2):
            for m1s in range(2):
                i1 = (m1k << 1) | m1s
                for m2 in range(2):
                    joint[m1k] += _output_pmfs(code.codewords_for(i1, m2), wz).mean(axis=0)
        pmf = Pmf(joint / joint.sum())
        assert mutual_information(pmf, (0,), (1,)) <= 1e-12


class TestErrorProb:
    def test_noiseless_injective_zero_error(self):
        ch = noiseless()
        code = build_secret_key_code(ch, 4, 2, seed=8)
        assert code.is_injective()
        assert exact_error_prob(code, ch) == (0.0, 0.0)

    def test_constant_channel_guessing_floor(self):
        t = np.ones((2, 1, 1, 1))
        ch = DmcChannel(2, 1, 1, 1, t)
        code = build_secret_key_code(ch, 2, 2, seed=1)
        pe1, pe2 = exact_error_prob(code, ch)
        assert abs(pe1 - (1 - 0.25)) <= 1e-12
        assert abs(pe2 - (1 - 0.25)) <= 1e-12

    def test_only_ml_decoder(self):
        ch = noiseless()
        code = build_secret_key_code(ch, 2, 1, seed=1)
        with pytest.raises(ValueError):
            exact_error_prob(code, ch, decoder="typicality")


class TestLeakageEvaluator:
    def test_raw_message_full_leak(self):
        # X carries message 1 in the clear; Z is a copy of X
        ch = noiseless(2)
        code = build_combined_code(ch, 2, SplitBits(k=0, s1=2), seed=3,
                                   px=np.array([0.5, 0.5]))
        # force distinct codewords: enumerate directly
        code.x_table = np.array([[[0, 0]], [[0, 1]], [[1, 0]], [[1, 1]]]).reshape(1, 4, 2)
        leak = exact_leakage(code, ch)
        assert abs(leak.leak1_bits - 2.0) <= 1e-12
        assert leak.leak2_bits == 0.0

    def test_chain_rule_ordering(self):
        rng = np.random.Generator(np.random.Philox(55))
        ch = random_channel(rng)
        code = build_combined_code(ch, 3, SplitBits(k=1, s1=1), seed=9)
        leak = exact_leakage(code, ch)
        assert leak.leak1_bits <= leak.joint_bits + 1e-12
        assert leak.leak2_bits <= leak.joint_bits + 1e-12

    def test_budget_refusal(self):
        ch = noiseless(4)
        code = build_secret_key_code(ch, 14, 1, seed=0)
        with pytest.raises(BudgetExceeded):
            exact_leakage(code, ch)   # 4**14 outputs blow the cap


class TestLindetEmbedding:
    @pytest.mark.parametrize("gains,rates", [((4, 3, 2), (4, 3)),
                                             ((4, 3, 2), (2, 1)),
                                             ((2, 2, 3), (2, 2)),
                                             ((4, 2, 3), (3, 2)),
                                             ((3, 4, 2), (2, 4))])
    def test_matches_module_verification(self, gains, rates):
        cfg = LinDetConfig(*gains)
        book, dch = embed_lindet(cfg, *rates)
        rep = verify_exhaustive(cfg, *rates)
        leak = exact_leakage(book, dch)
        pe1, pe2 = exact_error_prob(book, dch)
        assert pe1 == 0.0 and pe2 == 0.0 and rep.error_count == 0
        assert abs(leak.leak1_bits - rep.leak1_bits) <= 1e-12
        assert abs(leak.leak2_bits - rep.leak2_bits) <= 1e-12
        assert abs(leak.joint_bits - rep.joint_leak_bits) <= 1e-12


class TestTrend:
    def test_secret_key_leak_columns_zero(self):
        ch = bsc_broadcast(0.1, 0.1, 0.3)
        rows = trend_experiment("secret-key", ch, [1, 2, 3], [5, 6],
                                lambda n: SplitBits(k=1))
        assert all(r.leak1_per_n <= 1e-12 and r.leak2_per_n <= 1e-12
                   for r in rows)

    def test_empty_n_list(self):
        ch = bsc_broadcast(0.1, 0.1, 0.3)
        assert trend_experiment("secret-key", ch, [], [1], lambda n: SplitBits(k=1)) == []

    def test_budget_skip_flag(self):
        ch = noiseless(4)
        rows = trend_experiment("secret-key", ch, [2, 14], [1],
                                lambda n: SplitBits(k=1))
        assert not rows[0].skipped and rows[1].skipped

    def test_records_split(self):
        ch = bsc_broadcast(0.1, 0.1, 0.3)
        rows = trend_experiment("combined", ch, [2], [1],
                                lambda n: SplitBits(k=2, s1=2))
        assert rows[0].splits == "k=2;sk=0;s1=2;s2=0;r=0"

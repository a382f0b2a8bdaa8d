#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡罗仿真测试用例
可复现性、子流划分与采样器分布
"""

import math
import os
import sys

import numpy as np
import pytest
from scipy import stats

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from channel.fading import FadingParams, snr_cdf_thz
from channel.pointing import PointingConfig, pointing_gain_cdf, pointing_params
from channel.scenario import Scenario
from mc.rng import MAX_SEED, check_seed, spawn_streams, split_counts
from mc.samplers import sample_alpha_mu, sample_pointing, sample_thz_snr
from mc.simulator import McEstimate, mc_hop_outage, mc_mean_snr, mc_outage
from utils.errors import DomainError


class TestRng:
    """随机数子流测试"""

    def test_split_counts(self):
        assert split_counts(10, 3) == [4, 3, 3]
        assert split_counts(8, 8) == [1] * 8
        assert sum(split_counts(1_000_003, 8)) == 1_000_003

    def test_check_seed(self):
        assert check_seed(0) == 0
        assert check_seed(MAX_SEED) == MAX_SEED
        with pytest.raises(DomainError):
            check_seed(-1)
        with pytest.raises(DomainError):
            check_seed(MAX_SEED + 1)
        with pytest.raises(DomainError):
            check_seed(1.5)

    def test_streams_reproducible(self):
        first = [g.random(4) for g in spawn_streams(42, 3)]
        second = [g.random(4) for g in spawn_streams(42, 3)]
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a, b)
        assert not np.array_equal(first[0], first[1]), "不同子流应给出不同序列"

    def test_stream_count(self):
        with pytest.raises(DomainError):
            spawn_streams(1, 0)


class TestSimulator:
    """仿真器测试"""

    def setup_method(self):
        self.scenario = Scenario.from_snr(FadingParams(2.0, 1.0), FadingParams(2.0, 1.0),
                                          PointingConfig.from_ratio(6.0, sigma_s=0.08), 2e4, 50.0)

    def test_deterministic(self):
        """相同种子结果逐位一致"""
        a = mc_mean_snr(self.scenario, 40_000, seed=123)
        b = mc_mean_snr(self.scenario, 40_000, seed=123)
        assert a.mean == b.mean
        assert a.ci_low == b.ci_low and a.ci_high == b.ci_high
        c = mc_mean_snr(self.scenario, 40_000, seed=124)
        assert c.mean != a.mean

    def test_threads_do_not_change_result(self):
        """线程数不影响结果"""
        serial = mc_outage(self.scenario, 2.5, 80_000, seed=99, n_streams=8, threads=1)
        parallel = mc_outage(self.scenario, 2.5, 80_000, seed=99, n_streams=8, threads=4)
        assert serial.mean == parallel.mean
        assert serial.std_error == parallel.std_error

    def test_minimum_samples(self):
        with pytest.raises(DomainError):
            mc_mean_snr(self.scenario, 9_999, seed=1)

    def test_estimate_record(self):
        estimate = mc_outage(self.scenario, 2.5, 20_000, seed=5, n_streams=4)
        assert isinstance(estimate, McEstimate)
        assert estimate.n_samples == 20_000
        assert estimate.n_streams == 4
        assert estimate.seed == 5
        assert estimate.contains(estimate.mean)
        assert estimate.ci_low <= estimate.mean <= estimate.ci_high
        record = estimate.to_dict()
        assert set(record) == {'mean', 'ci_low', 'ci_high', 'n_samples', 'seed', 'n_streams', 'std_error'}

    def test_hop_outage_bounds_relay(self):
        """P(min ≤ γth) ≥ 每一跳的中断概率"""
        relay = mc_outage(self.scenario, 2.5, 50_000, seed=3)
        rf = mc_hop_outage(self.scenario, 2.5, 'rf', 50_000, seed=3)
        assert relay.mean >= rf.mean - 4.0 * (relay.std_error + rf.std_error)
        assert rf.mean == pytest.approx(1.0 - math.exp(-2.5 / 50.0), abs=4.0 * rf.std_error + 1e-4)


class TestSamplers:
    """采样器分布测试"""

    def setup_method(self):
        self.rng = np.random.Generator(np.random.PCG64(2024))

    def test_alpha_mu_moment(self):
        """E[h^α] = Ω^α"""
        fading = FadingParams(alpha=2.5, mu=1.7, omega=1.3)
        samples = sample_alpha_mu(fading, self.rng, 200_000)
        values = samples ** fading.alpha
        target = fading.omega ** fading.alpha
        std_error = values.std() / math.sqrt(values.size)
        assert abs(values.mean() - target) <= 4.0 * std_error

    def test_pointing_gain_cdf(self):
        """经验分布与 (h/S0)^φ 一致"""
        config = PointingConfig.from_ratio(6.0, sigma_s=0.15)
        params = pointing_params(config)
        samples = sample_pointing(params, config.sigma_s, self.rng, 200_000)
        assert samples.max() <= params.s0
        for fraction in (0.3, 0.6, 0.9):
            h = fraction * params.s0
            empirical = float(np.mean(samples <= h))
            expected = pointing_gain_cdf(h, params)
            assert expected == pytest.approx((h / params.s0) ** params.phi)
            assert abs(empirical - expected) < 5e-3, f"h={h}: 经验 {empirical} vs {expected}"

    @pytest.mark.slow
    def test_thz_snr_kolmogorov_smirnov(self):
        """10⁶ 个 THz 信噪比样本与解析分布函数的 KS 距离小于 0.003"""
        scenario = Scenario.from_snr(FadingParams(2.0, 1.3), FadingParams(2.0, 2.0),
                                     PointingConfig.from_ratio(6.0, sigma_s=0.08), 3e3, 20.0)
        samples = sample_thz_snr(scenario, self.rng, 1_000_000)
        result = stats.kstest(samples, lambda g: snr_cdf_thz(g, scenario.derived, scenario.thz_fading))
        assert result.statistic < 0.003, f"KS 距离 {result.statistic:.5f}"


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

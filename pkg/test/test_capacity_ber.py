#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
遍历容量与平均误码率测试用例
"""

import os
import sys

import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from analytic.ber import (
    BPSK, DBPSK, MODULATIONS, NRZ_OOK, Modulation, _relay_cross_common_power, _relay_cross_laplace,
    _relay_cross_thz_exponential, ber_relay_inid, ber_rf, ber_thz, modulation_by_name, pam,
)
from analytic.capacity import (
    LN2, _relay_capacity_common_power, as_integer, capacity_lb_rf, capacity_lb_thz, capacity_relay_iid,
    capacity_relay_inid, capacity_rf_exact, capacity_thz_exact, log_capacity_terms, mixture_density,
    relay_reduction,
)
from analytic.quadrature import (
    ber_by_quadrature, ber_pdf_quadrature, capacity_by_quadrature, capacity_pdf_quadrature,
)
from analytic.special_cases import metric_special_cases
from channel.fading import FadingParams
from channel.pointing import PointingConfig
from channel.scenario import Scenario
from mc.simulator import mc_ber, mc_capacity
from utils.errors import DomainError


class TestCapacity:
    """遍历容量测试"""

    def setup_method(self):
        self.pointing = PointingConfig.from_ratio(6.0, sigma_s=0.08)
        self.scenario = Scenario.from_snr(FadingParams(2.0, 1.3), FadingParams(2.0, 2.0),
                                          self.pointing, 3e3, 20.0)

    def test_relay_matches_quadrature(self):
        closed = capacity_relay_inid(self.scenario)
        oracle = capacity_by_quadrature(self.scenario)
        assert closed == pytest.approx(oracle, rel=0.02), f"闭式 {closed} vs 积分 {oracle}"

    def test_two_quadrature_paths_agree(self):
        """∫(1-F)/(1+γ) 与 ∫log2(1+γ)f 两条路径一致"""
        assert capacity_by_quadrature(self.scenario) == pytest.approx(
            capacity_pdf_quadrature(self.scenario), rel=1e-5)

    def test_single_hop_exact(self):
        assert capacity_thz_exact(self.scenario) == pytest.approx(
            capacity_by_quadrature(self.scenario, link='thz'), rel=1e-3)
        assert capacity_rf_exact(self.scenario) == pytest.approx(
            capacity_by_quadrature(self.scenario, link='rf'), rel=1e-3)

    def test_lower_bounds(self):
        """E[log2 γ] ≤ E[log2(1 + γ)]"""
        assert capacity_lb_thz(self.scenario) <= capacity_by_quadrature(self.scenario, link='thz')
        assert capacity_lb_rf(self.scenario) <= capacity_by_quadrature(self.scenario, link='rf')

    def test_iid_log_capacity(self):
        """高信噪比时对数容量逼近遍历容量"""
        fading = FadingParams(2.0, 2.0)
        scenario = Scenario.from_snr(fading, fading, self.pointing, 1e7, 1e7)
        terms = log_capacity_terms(scenario)
        assert terms.total == pytest.approx(terms.eta1 + terms.eta2 - terms.eta12 - terms.eta21)
        oracle = capacity_by_quadrature(scenario)
        assert capacity_relay_iid(scenario) <= oracle
        assert oracle - capacity_relay_iid(scenario) < 0.1

    def test_iid_requirements(self):
        with pytest.raises(DomainError):
            capacity_relay_iid(self.scenario)
        non_integer = FadingParams(2.0, 1.5)
        scenario = Scenario.from_snr(non_integer, non_integer, self.pointing, 1e4, 1e4)
        with pytest.raises(DomainError):
            capacity_relay_iid(scenario)

    def test_common_shape_relay(self):
        """α1 = α2 = 1 且 α2 ≠ 2 时走指向混合表示"""
        scenario = Scenario.from_snr(FadingParams(1.0, 1.0), FadingParams(1.0, 2.0), self.pointing,
                                     100.0, 100.0)
        assert relay_reduction(scenario, 'capacity', 'capacity_by_quadrature') == 'common_power'
        oracle = capacity_by_quadrature(scenario)
        assert oracle == pytest.approx(0.43673, rel=1e-3)
        assert capacity_relay_inid(scenario) == pytest.approx(oracle, rel=0.02)

    def test_common_shape_matches_laplace(self):
        """α1 = α2 = 2 时两种化简给出同一结果"""
        laplace = capacity_relay_inid(self.scenario)
        mixture = _relay_capacity_common_power(self.scenario, 1e-11) / LN2
        assert mixture == pytest.approx(laplace, rel=1e-4)

    def test_mixture_density(self):
        """分布函数密度在 w < 1 与 w ≥ 1 处的两段，生存函数密度在 w ≤ 1 处为零"""
        assert mixture_density(0.25, 1.5, -3.0, survival=False) == pytest.approx(0.5)
        assert mixture_density(4.0, 1.5, -3.0, survival=False) == pytest.approx(4.0 ** -4.0)
        assert mixture_density(0.5, 1.5, -3.0, survival=True) == 0.0
        assert mixture_density(4.0, 1.5, -3.0, survival=True) == pytest.approx(2.0 - 4.0 ** -4.0)

    def test_closed_form_pattern_required(self):
        """μ2 非整数，或 α1 ≠ α2 且 α2 ≠ 2 时闭式不可用"""
        weibull = self.scenario.with_fading(rf_fading=FadingParams(1.5, 2.0))
        with pytest.raises(DomainError):
            capacity_relay_inid(weibull)
        fractional = self.scenario.with_fading(rf_fading=FadingParams(2.0, 1.5))
        with pytest.raises(DomainError):
            capacity_relay_inid(fractional)

    def test_as_integer(self):
        assert as_integer(3.0, 'μ') == 3
        assert as_integer(2.0 + 1e-13, 'μ') == 2
        with pytest.raises(DomainError):
            as_integer(2.5, 'μ')
        with pytest.raises(DomainError):
            as_integer(0.0, 'μ')

    @pytest.mark.slow
    def test_inside_monte_carlo(self):
        oracle = capacity_by_quadrature(self.scenario)
        estimate = mc_capacity(self.scenario, 1_000_000, seed=11)
        assert abs(estimate.mean - oracle) <= 4.0 * estimate.std_error


class TestBer:
    """平均误码率测试"""

    def setup_method(self):
        self.pointing = PointingConfig.from_ratio(6.0, sigma_s=0.08)
        self.scenario = Scenario.from_snr(FadingParams(2.0, 1.3), FadingParams(2.0, 2.0),
                                          self.pointing, 3e3, 20.0)

    @pytest.mark.parametrize("gamma0_2", [1.0, 50.0, 1e3])
    def test_rayleigh_dbpsk(self, gamma0_2):
        """Rayleigh 信道 DBPSK：½(1 + γ̄)⁻¹"""
        scenario = Scenario.from_snr(FadingParams(), FadingParams(), self.pointing, 1e3, gamma0_2)
        assert ber_rf(scenario, DBPSK) == pytest.approx(0.5 / (1.0 + gamma0_2), rel=1e-8)

    def test_relay_matches_quadrature(self):
        closed = ber_relay_inid(self.scenario, DBPSK)
        oracle = ber_by_quadrature(self.scenario, DBPSK)
        assert closed == pytest.approx(oracle, rel=0.05), f"闭式 {closed} vs 积分 {oracle}"

    def test_bpsk_relay(self):
        assert ber_relay_inid(self.scenario, BPSK) == pytest.approx(
            ber_by_quadrature(self.scenario, BPSK), rel=0.05)

    def test_thz_hop(self):
        assert ber_thz(self.scenario, DBPSK) == pytest.approx(
            ber_by_quadrature(self.scenario, DBPSK, link='thz'), rel=1e-3)

    def test_quadrature_paths_agree(self):
        """分布函数路径与概率密度路径一致"""
        assert ber_by_quadrature(self.scenario, DBPSK) == pytest.approx(
            ber_pdf_quadrature(self.scenario, DBPSK), rel=1e-5)

    def test_relay_worse_than_each_hop(self):
        relay = ber_relay_inid(self.scenario, DBPSK)
        assert relay >= ber_rf(self.scenario, DBPSK)
        assert relay >= ber_thz(self.scenario, DBPSK)
        assert 0.0 <= relay <= 0.5

    def test_modulation_validation(self):
        assert set(MODULATIONS) == {'dbpsk', 'bpsk', 'bfsk', 'ncbfsk', 'nrz-ook',
                                    '2-pam', '4-pam', '8-pam'}
        with pytest.raises(DomainError):
            Modulation(0.0, 1.0)
        with pytest.raises(DomainError):
            Modulation(1.0, -0.5)

    def test_pam(self):
        """M-PAM：p = 0.5，q = log2(M)/(8(M-1)²)"""
        four = pam(4)
        assert four.p == 0.5
        assert four.q == pytest.approx(2.0 / 72.0)
        assert pam(2).q == pytest.approx(0.125)
        assert modulation_by_name('16-PAM').q == pytest.approx(4.0 / (8.0 * 225.0))
        for order in (1, 3, 6):
            with pytest.raises(DomainError):
                pam(order)
        with pytest.raises(DomainError):
            modulation_by_name('qpsk')

    def test_pam_relay(self):
        """阶数越高，相同信噪比下误码率越大"""
        four = ber_relay_inid(self.scenario, pam(4))
        assert four == pytest.approx(ber_by_quadrature(self.scenario, pam(4)), rel=0.05)
        assert ber_relay_inid(self.scenario, pam(2)) < four < 0.5

    def test_nrz_ook(self):
        assert (NRZ_OOK.p, NRZ_OOK.q) == (0.5, 0.125)
        assert modulation_by_name('NRZ-OOK') is NRZ_OOK
        assert ber_relay_inid(self.scenario, NRZ_OOK) == pytest.approx(
            ber_by_quadrature(self.scenario, NRZ_OOK), rel=0.05)
        assert ber_rf(self.scenario, NRZ_OOK) > ber_rf(self.scenario, BPSK)

    def test_common_shape_relay(self):
        """α1 = α2 = 1：误码率闭式与数值积分一致"""
        scenario = Scenario.from_snr(FadingParams(1.0, 1.0), FadingParams(1.0, 2.0), self.pointing,
                                     100.0, 100.0)
        closed = ber_relay_inid(scenario, DBPSK)
        assert closed == pytest.approx(ber_by_quadrature(scenario, DBPSK), rel=0.05)

    def test_thz_exponential_relay(self):
        """α1 = 2 时 RF 的 α2、μ2 可以任取"""
        scenario = self.scenario.with_fading(rf_fading=FadingParams(1.5, 2.5))
        assert relay_reduction(scenario, 'ber', 'ber_by_quadrature') == 'thz_exponential'
        assert ber_relay_inid(scenario, DBPSK) == pytest.approx(
            ber_by_quadrature(scenario, DBPSK), rel=0.05)

    def test_common_shape_matches_laplace(self):
        """α1 = α2 = 2 且 μ2 为整数时三种化简一致"""
        laplace = _relay_cross_laplace(self.scenario, DBPSK, 1e-11)
        assert _relay_cross_common_power(self.scenario, DBPSK, 1e-11) == pytest.approx(laplace, rel=1e-4)
        assert _relay_cross_thz_exponential(self.scenario, DBPSK, 1e-11) == pytest.approx(laplace, rel=1e-4)

    def test_closed_form_pattern_required(self):
        """α1、α2 都不等于 2 且互不相同时闭式不可用"""
        scenario = Scenario.from_snr(FadingParams(1.5, 1.3), FadingParams(1.0, 2.0), self.pointing,
                                     3e3, 20.0)
        with pytest.raises(DomainError):
            ber_relay_inid(scenario)

    def test_special_case_ber(self):
        """Nakagami-Rayleigh 组合的简化误码率在 [0, 0.5] 外时标记为无效"""
        scenario = Scenario.from_snr(FadingParams(2.0, 2.0), FadingParams(2.0, 1.0), self.pointing,
                                     1e4, 100.0)
        result = metric_special_cases(scenario, 'ber', 'nakagami_rayleigh')
        assert result.valid == (0.0 <= result.value <= 0.5)
        assert result.oracle == pytest.approx(ber_by_quadrature(scenario, DBPSK))
        with pytest.raises(DomainError):
            metric_special_cases(scenario, 'outage', 'nakagami_rayleigh')

    @pytest.mark.slow
    def test_inside_monte_carlo(self):
        oracle = ber_by_quadrature(self.scenario, DBPSK)
        estimate = mc_ber(self.scenario, DBPSK, 1_000_000, seed=13)
        assert abs(estimate.mean - oracle) <= 4.0 * estimate.std_error


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

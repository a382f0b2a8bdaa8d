#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
中断概率测试用例
"""

import math
import os
import sys

import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(project_root)
sys.path.insert(0, project_root)

from analytic.outage import (
    diversity_order, low_snr_arguments, outage_exact, outage_high_snr, outage_high_snr_terms,
    outage_low_snr,
)
from analytic.quadrature import outage_by_quadrature
from channel.fading import FadingParams
from channel.link_budget import RfLinkBudget, ThzLinkBudget
from channel.pointing import PointingConfig, PointingParams
from channel.scenario import Scenario, build_scenario
from mc.simulator import mc_outage
from utils.errors import DomainError


def symmetric_scenario(thz: FadingParams, rf: FadingParams, pointing, gamma0: float) -> Scenario:
    return Scenario.from_snr(thz, rf, pointing, gamma0, gamma0)


class TestExactOutage:
    """精确中断概率"""

    def setup_method(self):
        self.pointing = PointingConfig.from_ratio(6.0, sigma_s=0.08)
        self.scenario = Scenario.from_snr(FadingParams(2.0, 1.0), FadingParams(2.0, 1.0),
                                          self.pointing, 2e4, 50.0)

    @pytest.mark.parametrize("gamma_th", [0.5, 2.5, 10.0, 80.0])
    def test_matches_quadrature(self, gamma_th):
        exact = outage_exact(self.scenario, gamma_th)
        oracle = outage_by_quadrature(self.scenario, gamma_th)
        assert exact == pytest.approx(oracle, rel=1e-6, abs=1e-12), f"γth={gamma_th}: {exact} vs {oracle}"

    def test_non_integer_mu(self):
        scenario = Scenario.from_snr(FadingParams(2.5, 0.7), FadingParams(2.0, 1.6),
                                     self.pointing, 3e4, 100.0)
        assert outage_exact(scenario, 4.0) == pytest.approx(outage_by_quadrature(scenario, 4.0), rel=1e-6)

    def test_limits(self):
        assert outage_exact(self.scenario, 0.0) == 0.0
        assert outage_exact(self.scenario, 1e9) == pytest.approx(1.0, abs=1e-12)
        values = [outage_exact(self.scenario, g) for g in (0.1, 1.0, 10.0, 100.0)]
        assert values == sorted(values), "中断概率应随门限单调不减"

    def test_negative_threshold(self):
        with pytest.raises(DomainError):
            outage_exact(self.scenario, -1.0)
        with pytest.raises(DomainError):
            outage_high_snr(self.scenario, -1.0)

    @pytest.mark.slow
    def test_inside_monte_carlo(self):
        exact = outage_exact(self.scenario, 2.5)
        estimate = mc_outage(self.scenario, 2.5, 1_000_000, seed=7)
        assert abs(estimate.mean - exact) <= 4.0 * estimate.std_error, \
            f"蒙特卡罗 {estimate.mean} ± {estimate.std_error} 与闭式 {exact} 不符"


class TestAsymptotics:
    """高/低信噪比渐近式与分集阶数"""

    def test_high_snr_converges(self):
        """γ⁰ → ∞ 时渐近式与精确值之比趋于 1"""
        base = symmetric_scenario(FadingParams(2.0, 1.0), FadingParams(2.0, 1.0),
                                  PointingConfig.from_ratio(6.0, sigma_s=0.08), 1.0)
        ratios = []
        for gamma0 in (1e4, 1e6, 1e8):
            scenario = base.with_snr(gamma0, gamma0)
            ratios.append(outage_high_snr(scenario, 2.5) / outage_exact(scenario, 2.5))
        assert abs(ratios[-1] - 1.0) < 1e-2, f"渐近比值 {ratios}"
        assert abs(ratios[-1] - 1.0) <= abs(ratios[0] - 1.0) + 1e-12

    @pytest.mark.parametrize("thz,rf,pointing,expected", [
        (FadingParams(2.0, 0.5), FadingParams(2.0, 2.0), PointingConfig.from_ratio(6.0, sigma_s=0.08), 0.5),
        (FadingParams(2.0, 3.0), FadingParams(2.0, 1.0), PointingConfig.from_ratio(6.0, sigma_s=0.08), 1.0),
        (FadingParams(2.0, 2.0), FadingParams(2.0, 2.0),
         PointingParams(s0=0.054, phi=1.0, w_zeq=0.4, upsilon=0.2), 0.5),
    ])
    def test_diversity_slope(self, thz, rf, pointing, expected):
        """log10 中断概率对 log10 γ⁰ 的斜率等于分集阶数"""
        low = symmetric_scenario(thz, rf, pointing, 1e6)
        high = symmetric_scenario(thz, rf, pointing, 1e7)
        assert diversity_order(low) == pytest.approx(expected)
        slope = math.log10(outage_exact(low, 1.0)) - math.log10(outage_exact(high, 1.0))
        assert slope == pytest.approx(expected, rel=0.05), f"斜率 {slope:.4f}, 期望 {expected}"

    def test_high_snr_terms_dominant(self):
        """指向误差受限时 φ/2 项占主导"""
        scenario = symmetric_scenario(FadingParams(2.0, 2.0), FadingParams(2.0, 2.0),
                                      PointingParams(s0=0.054, phi=1.0, w_zeq=0.4, upsilon=0.2), 1e7)
        terms = outage_high_snr_terms(scenario, 1.0)
        assert terms.thz_pointing > 100 * max(terms.thz_fading, terms.rf)
        assert terms.total == pytest.approx(terms.thz_fading + terms.thz_pointing + terms.rf)

    def test_integer_b1_rejected(self):
        """B1 = μ1 - φ/α1 为非正整数时展开不适用"""
        scenario = symmetric_scenario(FadingParams(2.0, 1.0), FadingParams(2.0, 1.0),
                                      PointingParams(s0=0.054, phi=4.0, w_zeq=0.4, upsilon=0.2), 1e5)
        with pytest.raises(DomainError):
            outage_high_snr_terms(scenario, 1.0)

    def test_low_snr_range(self):
        """门限远高于平均信噪比时低信噪比近似接近 1"""
        scenario = symmetric_scenario(FadingParams(2.0, 1.0), FadingParams(2.0, 1.0),
                                      PointingConfig.from_ratio(6.0, sigma_s=0.08), 1.0)
        approx = outage_low_snr(scenario, 20.0)
        assert 0.0 <= approx <= 1.05
        assert approx == pytest.approx(outage_exact(scenario, 20.0), abs=0.05)
        assert outage_low_snr(scenario, 0.0) == 0.0


def fig2a_scenario(tx_power: float) -> Scenario:
    """μ1 = 0.5 的 THz 链路与 Rayleigh RF 链路，σs = 8 cm，默认链路预算"""
    return build_scenario(FadingParams(2.0, 0.5), FadingParams(2.0, 1.0),
                          PointingConfig.from_ratio(6.0, sigma_s=0.08),
                          ThzLinkBudget(tx_power=tx_power), RfLinkBudget(tx_power=tx_power))


GAMMA_TH_4DB = 10.0 ** 0.4


class TestLinkBudgetAsymptotics:
    """按链路预算扫描发射功率时的渐近式"""

    def test_high_snr_ratio(self):
        """45 dBm 时高信噪比近似与精确值相差不超过 10%"""
        scenario = fig2a_scenario(45.0)
        exact = outage_exact(scenario, GAMMA_TH_4DB)
        assert outage_high_snr(scenario, GAMMA_TH_4DB) / exact == pytest.approx(1.0, abs=0.1)

    def test_slope_matches_diversity_order(self):
        """35~45 dBm 的对数斜率等于 min(α1μ1/2, α2μ2/2, φ/2) = 0.5"""
        low, high = fig2a_scenario(35.0), fig2a_scenario(45.0)
        assert diversity_order(low) == pytest.approx(0.5)
        slope = math.log10(outage_exact(low, GAMMA_TH_4DB)) - math.log10(outage_exact(high, GAMMA_TH_4DB))
        assert slope == pytest.approx(0.5, rel=0.05), f"斜率 {slope:.4f}"

    @pytest.mark.parametrize("tx_power", [-80.0, -70.0, -60.0, -50.0])
    def test_low_snr_sweep(self, tx_power):
        """THz 自变量进入大值区的功率点上，低信噪比近似是概率且与精确值一致"""
        scenario = fig2a_scenario(tx_power)
        big_x, _ = low_snr_arguments(scenario, GAMMA_TH_4DB)
        assert big_x >= scenario.pointing.phi / 2.0
        approx = outage_low_snr(scenario, GAMMA_TH_4DB)
        assert 0.0 <= approx <= 1.0
        assert approx == pytest.approx(outage_exact(scenario, GAMMA_TH_4DB), rel=0.1)

    @pytest.mark.parametrize("tx_power,exact", [(-40.0, 0.94), (-20.0, 0.150)])
    def test_low_snr_outside_tail(self, tx_power, exact):
        """X < φ/α1 且 Y < 1 时低信噪比展开不适用"""
        scenario = fig2a_scenario(tx_power)
        assert outage_exact(scenario, GAMMA_TH_4DB) == pytest.approx(exact, abs=0.02)
        with pytest.raises(DomainError):
            outage_low_snr(scenario, GAMMA_TH_4DB)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

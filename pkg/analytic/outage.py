#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
中断概率分析
精确中断概率、高/低信噪比渐近式与分集阶数
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

from scipy import special

from channel.scenario import Scenario, e2e_cdf
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class OutageTerms:
    """高信噪比中断概率的三个幂律项"""
    thz_fading: float     # 指数 α1μ1/2
    thz_pointing: float   # 指数 φ/2
    rf: float             # 指数 α2μ2/2

    @property
    def total(self) -> float:
        return self.thz_fading + self.thz_pointing + self.rf


def _check_threshold(gamma_th: float) -> None:
    if gamma_th < 0 or math.isnan(gamma_th):
        raise DomainError(f"信噪比门限必须非负: {gamma_th}")


def outage_exact(scenario: Scenario, gamma_th: float) -> float:
    """
    精确中断概率 P(min(γ1, γ2) ≤ γ_th)

    Raises:
        DomainError: 门限为负
    """
    _check_threshold(gamma_th)
    return min(max(float(e2e_cdf(gamma_th, scenario)), 0.0), 1.0)


def outage_high_snr_terms(scenario: Scenario, gamma_th: float) -> OutageTerms:
    """
    高信噪比展开
    F1 ≈ [C1^{μ1}(1/μ1 - 1/B1)x^{α1μ1/2} + C1^{φ/α1}Γ(B1)x^{φ/2}]/Γ(μ1)，x = γ_th/γ1⁰
    F2 ≈ B2^{μ2}/Γ(μ2+1)·y^{α2μ2/2}，y = γ_th/γ2⁰

    Raises:
        DomainError: B1 为零或负整数（展开系数发散）
    """
    _check_threshold(gamma_th)
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    b1 = consts.b1
    if b1 <= 0 and b1 == math.floor(b1):
        raise DomainError(f"B1={b1} 为非正整数，高信噪比展开不适用")

    if gamma_th == 0:
        return OutageTerms(thz_fading=0.0, thz_pointing=0.0, rf=0.0)
    log_x = math.log(gamma_th / consts.gamma0_1)
    log_y = math.log(gamma_th / consts.gamma0_2)
    log_norm = -math.lgamma(thz.mu)
    fading_term = (math.exp(log_norm + thz.mu * math.log(consts.c1)
                            + thz.alpha * thz.mu / 2.0 * log_x)
                   * (1.0 / thz.mu - 1.0 / b1))
    # C1^{φ/α1}·Γ(B1) 在 φ 较大时分别上溢、下溢
    pointing_term = special.gammasgn(b1) * math.exp(
        log_norm + consts.phi / thz.alpha * math.log(consts.c1) + special.gammaln(b1)
        + consts.phi / 2.0 * log_x
    )
    rf_term = math.exp(rf.mu * math.log(consts.b2) - math.lgamma(rf.mu + 1.0)
                       + rf.alpha * rf.mu / 2.0 * log_y)
    logger.debug(f"高信噪比中断项: THz衰落={fading_term:.4g}, 指向={pointing_term:.4g}, RF={rf_term:.4g}")
    return OutageTerms(thz_fading=fading_term, thz_pointing=float(pointing_term), rf=rf_term)


def outage_high_snr(scenario: Scenario, gamma_th: float) -> float:
    """高信噪比渐近中断概率（三个幂律项之和）"""
    return outage_high_snr_terms(scenario, gamma_th).total


def low_snr_arguments(scenario: Scenario, gamma_th: float) -> Tuple[float, float]:
    """X = C1·(γ_th/γ1⁰)^{α1/2}，Y = B2·(γ_th/γ2⁰)^{α2/2}"""
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    big_x = consts.c1 * (gamma_th / consts.gamma0_1) ** (thz.alpha / 2.0)
    big_y = consts.b2 * (gamma_th / consts.gamma0_2) ** (rf.alpha / 2.0)
    return big_x, big_y


def outage_low_snr(scenario: Scenario, gamma_th: float) -> float:
    """
    低信噪比渐近中断概率 P ≈ 1 - S1·S2

    Γ(a, x) ≈ e^{-x}x^{a-1}(1 + (a-1)/x) 代入 F1 后首项抵消，THz 生存函数取次项
    S1 ≈ (φ/α1)·e^{-X}X^{μ1-2}/Γ(μ1)；RF 生存函数 S2 ≈ e^{-Y}Y^{μ2-1}/Γ(μ2)。
    自变量未进入大值区的一跳生存函数以 1 为上界

    Raises:
        DomainError: 门限为负，或两跳自变量都未进入大值区
            （X < max(1, μ1, φ/α1) 且 Y < max(1, μ2)）
    """
    _check_threshold(gamma_th)
    if gamma_th == 0:
        return 0.0
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    big_x, big_y = low_snr_arguments(scenario, gamma_th)
    thz_tail = big_x >= max(1.0, thz.mu, consts.phi / thz.alpha)
    rf_tail = big_y >= max(1.0, rf.mu)
    if not (thz_tail or rf_tail):
        raise DomainError(
            f"门限 {gamma_th:.4g} 不在低信噪比区域: X={big_x:.4g}, Y={big_y:.4g}，请改用 outage_exact"
        )

    log_survival = 0.0
    if thz_tail:
        log_survival += (math.log(consts.phi / thz.alpha) - big_x
                         + (thz.mu - 2.0) * math.log(big_x) - math.lgamma(thz.mu))
    if rf_tail:
        log_survival += -big_y + (rf.mu - 1.0) * math.log(big_y) - math.lgamma(rf.mu)
    value = 1.0 - math.exp(min(log_survival, 0.0))
    logger.debug(f"低信噪比中断: X={big_x:.4g}, Y={big_y:.4g}, P={value:.6g}")
    return value


def diversity_order(scenario: Scenario) -> float:
    """分集阶数 M = min(α1μ1/2, α2μ2/2, φ/2)"""
    thz, rf = scenario.thz_fading, scenario.rf_fading
    return min(thz.alpha * thz.mu / 2.0, rf.alpha * rf.mu / 2.0, scenario.pointing.phi / 2.0)

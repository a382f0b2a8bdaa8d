#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
特殊衰落组合下的简化闭式
nakagami_rayleigh: α1=2, μ1=2, α2=2, μ2=1
weibull_rayleigh:  μ1=1, α2=2, μ2=1
简化式只在渐近区间成立，结果与数值积分参照解一并返回，并标注是否落在物理取值范围内
"""

import logging
import math
from dataclasses import dataclass

from scipy import special

from analytic.ber import DBPSK
from analytic.quadrature import ber_by_quadrature, capacity_by_quadrature, moment_by_quadrature
from channel.scenario import Scenario
from utils.errors import DomainError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
CASES = ('nakagami_rayleigh', 'weibull_rayleigh')
METRICS = ('capacity', 'ber')
PATTERN_TOL = 1e-12


@dataclass
class SpecialCaseResult:
    """简化闭式结果"""
    value: float
    oracle: float
    discrepancy: float   # 相对偏差 |value - oracle|/|oracle|
    valid: bool          # 是否落在物理取值范围内

    def __float__(self) -> float:
        return self.value


def _close(x: float, y: float) -> bool:
    return abs(x - y) <= PATTERN_TOL * max(1.0, abs(y))


def _check_pattern(scenario: Scenario, case: str) -> None:
    thz, rf = scenario.thz_fading, scenario.rf_fading
    if case == 'nakagami_rayleigh':
        matched = (_close(thz.alpha, 2.0) and _close(thz.mu, 2.0)
                   and _close(rf.alpha, 2.0) and _close(rf.mu, 1.0))
    elif case == 'weibull_rayleigh':
        matched = _close(thz.mu, 1.0) and _close(rf.alpha, 2.0) and _close(rf.mu, 1.0)
    else:
        raise DomainError(f"未知特殊情形 {case}，可选 {CASES}")
    if not matched:
        raise DomainError(
            f"场景参数 (α1={thz.alpha}, μ1={thz.mu}, α2={rf.alpha}, μ2={rf.mu}) 与 {case} 不匹配"
        )


def scaled_exp1(x: float) -> float:
    """e^x·Γ(0, x)，大自变量用渐近级数"""
    if x <= 0:
        raise DomainError(f"Γ(0, x) 要求 x > 0: {x}")
    if x < 600.0:
        return math.exp(x) * float(special.exp1(x))
    inv = 1.0 / x
    return inv * (1.0 - inv + 2.0 * inv ** 2 - 6.0 * inv ** 3 + 24.0 * inv ** 4)


def _result(value: float, oracle: float, low: float, high: float) -> SpecialCaseResult:
    discrepancy = abs(value - oracle) / abs(oracle) if oracle != 0 else abs(value)
    valid = math.isfinite(value) and low <= value <= high
    if not valid:
        logger.warning(f"简化闭式结果 {value:.6g} 超出取值范围 [{low}, {high}]")
    return SpecialCaseResult(value=value, oracle=oracle, discrepancy=discrepancy, valid=valid)


def avg_snr_special(scenario: Scenario, case: str) -> SpecialCaseResult:
    """
    特殊情形平均信噪比

    Raises:
        DomainError: 参数组合不匹配
    """
    _check_pattern(scenario, case)
    g1, g2 = scenario.gamma0_1, scenario.gamma0_2
    s0, phi = scenario.pointing.s0, scenario.pointing.phi
    if case == 'nakagami_rayleigh':
        w = 2.0 * s0 ** -2
        value = (g1 + 2.0 * g2
                 - w * g1 * (g1 - 1.0 / (math.sqrt(g1 / g2) + w) ** 2)
                 - g2 * (2.0 * (1.0 + w) ** 4 + 6.0 - (1.0 + w) ** 2) / (1.0 + w) ** 4)
    else:
        value = g2 - s0 ** -phi * g2 / phi
    oracle = moment_by_quadrature(scenario, 1.0)
    return _result(value, oracle, 0.0, math.inf)


def metric_special_cases(scenario: Scenario, metric: str, case: str) -> SpecialCaseResult:
    """
    特殊情形遍历容量 (metric='capacity') 或 DBPSK 平均误码率 (metric='ber')

    Raises:
        DomainError: 参数组合或指标不匹配
    """
    _check_pattern(scenario, case)
    g1, g2 = scenario.gamma0_1, scenario.gamma0_2
    s0, phi = scenario.pointing.s0, scenario.pointing.phi

    if metric == 'capacity':
        if case == 'nakagami_rayleigh':
            x = g2 + 2.0 * s0 ** -2 * g1
            scaled = scaled_exp1(x)
            value = -(1.0 - x * scaled) / (LN2 * x) + scaled / LN2
        else:
            value = scaled_exp1(g2) / LN2
        oracle = capacity_by_quadrature(scenario)
        return _result(value, oracle, 0.0, math.inf)

    if metric == 'ber':
        if case == 'nakagami_rayleigh':
            value = (1.0 - 1.0 / (1.0 + g2) + 1.0 / (2.0 * (1.0 + 2.0 * s0 ** -2 * g1 + g2))
                     - (1.0 + 3.0 * g2) / (1.0 + 2.0 * g2) ** 2)
        else:
            value = (g2 + 2.0 * s0 ** -phi) / (1.0 + g2)
        oracle = ber_by_quadrature(scenario, DBPSK)
        return _result(value, oracle, 0.0, 0.5)

    raise DomainError(f"未知指标 {metric}，可选 {METRICS}")

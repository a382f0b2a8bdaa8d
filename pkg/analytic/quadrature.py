#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值积分参照解
对矩、遍历容量、平均误码率直接做半无穷区间自适应积分，用于校验闭式结果。
信噪比跨越多个数量级，统一在对数轴 γ = e^u 上分段积分：
[0, γ_split] 内按特征尺度分段，γ_split = 10³·max(γ1⁰, γ2⁰) 以上为尾部
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List

import numpy as np
from scipy import integrate, special

from channel.fading import snr_ccdf_rf, snr_ccdf_thz, snr_cdf_rf, snr_cdf_thz
from channel.scenario import Scenario, e2e_ccdf, e2e_cdf, e2e_pdf
from utils.errors import DomainError, EvaluationError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
LINKS = ('relay', 'thz', 'rf')

# 默认相对精度
DEFAULT_RTOL = 1e-10
SPLIT_FACTOR = 1e3
PANEL_LIMIT = 500


@dataclass
class QuadResult:
    """积分结果与误差估计"""
    value: float
    error: float
    panels: int

    def __float__(self) -> float:
        return self.value


def integrate_positive(func: Callable[[float], float], scales: Iterable[float],
                       split: float, rtol: float = DEFAULT_RTOL, label: str = '') -> QuadResult:
    """
    计算 ∫_0^∞ func(γ) dγ

    Args:
        func: 被积函数（标量）
        scales: 被积函数的特征尺度，作为对数轴上的分段点
        split: 有限区间上端 γ_split，其上为尾部
        rtol: 相对精度目标
        label: 日志与诊断中使用的名称

    Raises:
        EvaluationError: 误差估计超过目标的 100 倍
    """
    def integrand(u: float) -> float:
        if u > 700.0:
            return 0.0
        gamma = math.exp(u)
        if gamma == 0.0:
            return 0.0
        with np.errstate(all='ignore'):
            value = func(gamma) * gamma
        return value if math.isfinite(value) else 0.0

    knots = sorted({math.log(s) for s in scales if 0 < s < split} | {math.log(split)})
    edges = [-math.inf] + knots + [math.inf]

    total = 0.0
    error = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        result = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=rtol,
                                limit=PANEL_LIMIT, full_output=1)
        total += result[0]
        error += result[1]

    tolerance = max(rtol * abs(total), 1e-300)
    if error > 100.0 * tolerance and error > 1e-14:
        raise EvaluationError(
            f"数值积分 {label} 未达到精度目标",
            diagnostics={'value': total, 'error': error, 'rtol': rtol},
        )
    logger.debug(f"积分 {label}: 值={total:.10g}, 误差估计={error:.3g}, 分段数={len(edges) - 1}")
    return QuadResult(value=total, error=error, panels=len(edges) - 1)


def characteristic_scales(scenario: Scenario) -> List[float]:
    """两跳信噪比分布的特征尺度"""
    g1, g2 = scenario.gamma0_1, scenario.gamma0_2
    s0 = scenario.pointing.s0
    scales = []
    for base in (g1 * s0 ** 2, g1, g2):
        scales.extend([base * 1e-4, base * 1e-2, base, base * 10.0])
    return scales


def split_point(scenario: Scenario) -> float:
    return SPLIT_FACTOR * max(scenario.gamma0_1, scenario.gamma0_2)


def _cdf_for(scenario: Scenario, link: str) -> Callable[[float], float]:
    if link == 'relay':
        return lambda g: e2e_cdf(g, scenario)
    if link == 'thz':
        return lambda g: snr_cdf_thz(g, scenario.derived, scenario.thz_fading)
    if link == 'rf':
        return lambda g: snr_cdf_rf(g, scenario.derived, scenario.rf_fading)
    raise DomainError(f"未知链路 {link}，可选 {LINKS}")


def _ccdf_for(scenario: Scenario, link: str) -> Callable[[float], float]:
    if link == 'relay':
        return lambda g: e2e_ccdf(g, scenario)
    if link == 'thz':
        return lambda g: snr_ccdf_thz(g, scenario.derived, scenario.thz_fading)
    if link == 'rf':
        return lambda g: snr_ccdf_rf(g, scenario.derived, scenario.rf_fading)
    raise DomainError(f"未知链路 {link}，可选 {LINKS}")


def _pdf_for(scenario: Scenario, link: str) -> Callable[[float], float]:
    if link == 'relay':
        return lambda g: e2e_pdf(g, scenario)
    if link == 'thz':
        return scenario.thz_pdf
    if link == 'rf':
        return scenario.rf_pdf
    raise DomainError(f"未知链路 {link}，可选 {LINKS}")


def moment_by_quadrature(scenario: Scenario, n: float, link: str = 'relay',
                         rtol: float = 1e-9) -> float:
    """
    n 阶矩 ∫ γⁿ f(γ) dγ

    Raises:
        DomainError: n < 0
        EvaluationError: 积分未收敛
    """
    if n < 0:
        raise DomainError(f"矩阶数必须非负: n={n}")
    pdf = _pdf_for(scenario, link)
    result = integrate_positive(lambda g: g ** n * pdf(g), characteristic_scales(scenario),
                                split_point(scenario), rtol, label=f"moment(n={n}, {link})")
    return result.value


def capacity_by_quadrature(scenario: Scenario, link: str = 'relay', rtol: float = 1e-9) -> float:
    """遍历容量 (1/ln2)·∫ (1 - F(γ))/(1 + γ) dγ"""
    ccdf = _ccdf_for(scenario, link)
    scales = characteristic_scales(scenario) + [1.0]
    result = integrate_positive(lambda g: ccdf(g) / (1.0 + g), scales, split_point(scenario),
                                rtol, label=f"capacity({link})")
    return result.value / LN2


def capacity_pdf_quadrature(scenario: Scenario, link: str = 'relay', rtol: float = 1e-9) -> float:
    """遍历容量 ∫ log2(1 + γ)·f(γ) dγ"""
    pdf = _pdf_for(scenario, link)
    scales = characteristic_scales(scenario) + [1.0]
    result = integrate_positive(lambda g: math.log1p(g) * pdf(g), scales, split_point(scenario),
                                rtol, label=f"capacity_pdf({link})")
    return result.value / LN2


def ber_by_quadrature(scenario: Scenario, mod, link: str = 'relay', rtol: float = 1e-10) -> float:
    """
    平均误码率 q^p/(2Γ(p))·∫ γ^{p-1}·e^{-qγ}·F(γ) dγ

    Args:
        mod: 调制参数，需有 p、q 属性
    """
    cdf = _cdf_for(scenario, link)
    p, q = mod.p, mod.q
    log_norm = p * math.log(q) - math.log(2.0) - math.lgamma(p)

    def integrand(g: float) -> float:
        return math.exp(log_norm + (p - 1.0) * math.log(g) - q * g) * cdf(g)

    scales = characteristic_scales(scenario) + [1e-3 / q, 1.0 / q, 30.0 / q]
    result = integrate_positive(integrand, scales, max(split_point(scenario), 1e3 / q),
                                rtol, label=f"ber({link})")
    return min(max(result.value, 0.0), 0.5)


def ber_pdf_quadrature(scenario: Scenario, mod, link: str = 'relay', rtol: float = 1e-10) -> float:
    """平均误码率的另一积分路径 E[Γ(p, qγ)]/(2Γ(p))"""
    pdf = _pdf_for(scenario, link)
    p, q = mod.p, mod.q

    def integrand(g: float) -> float:
        return 0.5 * special.gammaincc(p, q * g) * pdf(g)

    scales = characteristic_scales(scenario) + [1e-3 / q, 1.0 / q, 30.0 / q]
    result = integrate_positive(integrand, scales, split_point(scenario), rtol,
                                label=f"ber_pdf({link})")
    return min(max(result.value, 0.0), 0.5)


def log_capacity_cross_terms(scenario: Scenario, rtol: float = 1e-9) -> tuple:
    """
    对数容量交叉项
    η12 = ∫ log2(γ)·f1(γ)·F2(γ) dγ，η21 = ∫ log2(γ)·f2(γ)·F1(γ) dγ

    Returns:
        (η12, η21)
    """
    consts = scenario.derived
    scales = characteristic_scales(scenario)
    split = split_point(scenario)

    def eta12(g: float) -> float:
        return math.log(g) * scenario.thz_pdf(g) * snr_cdf_rf(g, consts, scenario.rf_fading)

    def eta21(g: float) -> float:
        return math.log(g) * scenario.rf_pdf(g) * snr_cdf_thz(g, consts, scenario.thz_fading)

    first = integrate_positive(eta12, scales, split, rtol, label='eta12')
    second = integrate_positive(eta21, scales, split, rtol, label='eta21')
    return first.value / LN2, second.value / LN2


def outage_by_quadrature(scenario: Scenario, gamma_th: float, link: str = 'relay',
                         rtol: float = 1e-10) -> float:
    """中断概率 ∫_0^{γ_th} f(γ) dγ（对数轴积分）"""
    if gamma_th < 0:
        raise DomainError(f"信噪比门限必须非负: {gamma_th}")
    if gamma_th == 0:
        return 0.0
    pdf = _pdf_for(scenario, link)

    def integrand(u: float) -> float:
        gamma = math.exp(u)
        if gamma == 0.0:
            return 0.0
        with np.errstate(all='ignore'):
            value = pdf(gamma) * gamma
        return value if math.isfinite(value) else 0.0

    upper = math.log(gamma_th)
    knots = sorted(math.log(s) for s in characteristic_scales(scenario) if s < gamma_th)
    edges = [-math.inf] + knots + [upper]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=rtol,
                                limit=PANEL_LIMIT, full_output=1)[0]
    return min(max(total, 0.0), 1.0)

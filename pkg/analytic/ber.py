#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
平均误码率
条件误码率 Γ(p, qγ)/(2Γ(p))，平均误码率 P̄e = q^p/(2Γ(p))·∫ γ^{p-1}e^{-qγ}F(γ) dγ。
单跳结果为 Meijer G 闭式；中继链路在 μ2 为整数且 α2 = 2 或 α1 = α2 时，
以及 α1 = 2 时化为 Meijer G 的一维积分
"""

import logging
import math
from dataclasses import dataclass

from analytic.capacity import mixture_integral, relay_reduction
from channel.fading import rf_rate, thz_rate
from channel.scenario import Scenario
from specfun.mellin import exp_kernel, lower_gamma_kernel, mellin_product, upper_gamma_kernel
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Modulation:
    """调制相关参数 (p, q)"""
    p: float = 1.0
    q: float = 1.0
    name: str = 'DBPSK'

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise DomainError(f"调制参数必须为正: p={self.p}, q={self.q}")


DBPSK = Modulation(1.0, 1.0, 'DBPSK')
BPSK = Modulation(0.5, 1.0, 'BPSK')
BFSK = Modulation(0.5, 0.5, 'BFSK')
NCBFSK = Modulation(1.0, 0.5, 'NCBFSK')
NRZ_OOK = Modulation(0.5, 0.125, 'NRZ-OOK')


def pam(order: int) -> Modulation:
    """M-PAM：p = 0.5，q = log2(M)/(8(M-1)²)"""
    if order < 2 or order & (order - 1):
        raise DomainError(f"M-PAM 阶数须为 2 的幂且不小于 2: {order}")
    return Modulation(0.5, math.log2(order) / (8.0 * (order - 1) ** 2), f'{order}-PAM')


MODULATIONS = {m.name.lower(): m for m in (DBPSK, BPSK, BFSK, NCBFSK, NRZ_OOK, pam(2), pam(4), pam(8))}


def modulation_by_name(name: str) -> Modulation:
    """按名称取调制方式，'M-pam' 形式的名称由 pam(M) 构造"""
    key = name.strip().lower()
    if key in MODULATIONS:
        return MODULATIONS[key]
    order, _, suffix = key.partition('-')
    if suffix == 'pam' and order.isdigit():
        return pam(int(order))
    raise DomainError(f"未知调制方式 {name}，可选 {sorted(MODULATIONS)} 或 M-pam")


def _log_weight(mod: Modulation) -> float:
    """ln(q^p/(2Γ(p)))"""
    return mod.p * math.log(mod.q) - math.log(2.0) - math.lgamma(mod.p)


def thz_cdf_transform(scenario: Scenario, p: float, q: float, rtol: float = 1e-11) -> float:
    """
    I(p, q) = ∫_0^∞ γ^{p-1}·e^{-qγ}·F1(γ) dγ
    F1 = [γ(μ1, κγ^{α1/2}) + κ^{φ/α1}γ^{φ/2}Γ(B1, κγ^{α1/2})]/Γ(μ1)
    """
    consts = scenario.derived
    thz = scenario.thz_fading
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    fading = mellin_product(exp_kernel(q), lower_gamma_kernel(thz.mu, kappa, g), p, rtol)
    pointing = mellin_product(
        exp_kernel(q), upper_gamma_kernel(consts.b1, kappa, g), p + consts.phi / 2.0, rtol,
        log_weight=consts.phi / thz.alpha * math.log(kappa),
    )
    return (fading + pointing) / math.gamma(thz.mu)


def ber_thz(scenario: Scenario, mod: Modulation = DBPSK, rtol: float = 1e-11) -> float:
    """THz 单跳平均误码率"""
    value = math.exp(_log_weight(mod)) * thz_cdf_transform(scenario, mod.p, mod.q, rtol)
    return min(max(value, 0.0), 0.5)


def ber_rf(scenario: Scenario, mod: Modulation = DBPSK, rtol: float = 1e-11) -> float:
    """RF 单跳平均误码率 q^p/(2Γ(p)Γ(μ2))·∫ γ^{p-1}e^{-qγ}γ(μ2, λγ^{α2/2}) dγ"""
    rf = scenario.rf_fading
    lam = rf_rate(scenario.derived, rf)
    integral = mellin_product(exp_kernel(mod.q), lower_gamma_kernel(rf.mu, lam, rf.alpha / 2.0),
                              mod.p, rtol)
    value = math.exp(_log_weight(mod) - math.lgamma(rf.mu)) * integral
    return min(max(value, 0.0), 0.5)


def _relay_cross_laplace(scenario: Scenario, mod: Modulation, rtol: float) -> float:
    """Σ_{k<μ2} λ^k/k!·I(p+k, q+λ)"""
    lam = rf_rate(scenario.derived, scenario.rf_fading)
    cross = 0.0
    for k in range(int(round(scenario.rf_fading.mu))):
        weight = math.exp(k * math.log(lam) - math.lgamma(k + 1.0))
        cross += weight * thz_cdf_transform(scenario, mod.p + k, mod.q + lam, rtol)
    return cross


def _relay_cross_common_power(scenario: Scenario, mod: Modulation, rtol: float) -> float:
    """
    α1 = α2 = 2g：κ^{μ1}/Γ(μ1)·Σ_{k<μ2} λ^k/k!·∫_0^∞ ρ(w)·∫ γ^{p+g(μ1+k)-1}e^{-qγ-(κw+λ)γ^g} dγ dw
    """
    consts = scenario.derived
    thz = scenario.thz_fading
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    lam = rf_rate(consts, scenario.rf_fading)
    knee = math.log(max(lam, mod.q ** g) / kappa)
    cross = 0.0
    for k in range(int(round(scenario.rf_fading.mu))):
        log_weight = (thz.mu * math.log(kappa) - math.lgamma(thz.mu)
                      + k * math.log(lam) - math.lgamma(k + 1.0))

        def inner(w: float, k: int = k, log_weight: float = log_weight) -> float:
            return mellin_product(exp_kernel(mod.q), exp_kernel(kappa * w + lam, g),
                                  mod.p + g * (thz.mu + k), rtol, log_weight=log_weight)

        rate = consts.phi / thz.alpha + mod.p / g + k
        cross += mixture_integral(inner, scenario, False, knee, rate, '中继误码率')
    return cross


def _relay_cross_thz_exponential(scenario: Scenario, mod: Modulation, rtol: float) -> float:
    """
    α1 = 2：κ^{μ1}/(Γ(μ1)Γ(μ2))·∫_0^∞ ρ(w)·∫ γ^{p+μ1-1}e^{-(q+κw)γ}Γ(μ2, λγ^{α2/2}) dγ dw
    """
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    kappa = thz_rate(consts, thz)
    lam, h = rf_rate(consts, rf), rf.alpha / 2.0
    log_weight = thz.mu * math.log(kappa) - math.lgamma(thz.mu) - math.lgamma(rf.mu)

    def inner(w: float) -> float:
        return mellin_product(exp_kernel(mod.q + kappa * w), upper_gamma_kernel(rf.mu, lam, h),
                              mod.p + thz.mu, rtol, log_weight=log_weight)

    knee = math.log(max(mod.q, lam ** (1.0 / h)) / kappa)
    return mixture_integral(inner, scenario, False, knee, consts.phi / thz.alpha + mod.p, '中继误码率')


def ber_relay_inid(scenario: Scenario, mod: Modulation = DBPSK, rtol: float = 1e-11) -> float:
    """
    中继链路平均误码率，F = F2 + F1(1 - F2)：
    P̄e = P̄e,RF + q^p/(2Γ(p))·∫ γ^{p-1}e^{-qγ}F1(1 - F2) dγ，
    α2 = 2 且 μ2 为整数时第二项为 Σ_{k<μ2} λ^k/k!·I(p+k, q+λ)

    Raises:
        DomainError: 参数组合不满足 relay_reduction，应改用 ber_by_quadrature
    """
    route = relay_reduction(scenario, 'ber', 'ber_by_quadrature')
    if route == 'rf_exponential':
        cross = _relay_cross_laplace(scenario, mod, rtol)
    elif route == 'common_power':
        cross = _relay_cross_common_power(scenario, mod, rtol)
    else:
        cross = _relay_cross_thz_exponential(scenario, mod, rtol)
    value = ber_rf(scenario, mod, rtol) + math.exp(_log_weight(mod)) * cross
    logger.debug(f"中继误码率 ({route}): {value:.6g} ({mod.name})")
    return min(max(value, 0.0), 0.5)

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
遍历容量
单跳下界（对数矩）、单跳精确容量（Meijer G）、中继链路容量
（μ2 为整数，α2 = 2 时经 Laplace 变换、α1 = α2 时经指向混合表示化为一维积分）以及 i.i.d. 情形的对数下界
"""

import logging
import math
from dataclasses import dataclass

from scipy import integrate

from analytic.moments import moment_rf, moment_thz
from analytic.quadrature import log_capacity_cross_terms
from channel.fading import rf_rate, thz_rate
from channel.scenario import Scenario
from specfun.gamma import digamma
from specfun.mellin import exp_kernel, mellin_product, rational_kernel, upper_gamma_kernel
from utils.errors import DomainError, EvaluationError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
INTEGER_TOL = 1e-12
# 指向混合积分截断：被积函数衰减到 e^{-37}（约 1e-16）以下
MIXTURE_TAIL_LOG = 37.0


@dataclass
class LogCapacityTerms:
    """i.i.d. 对数容量 η = η1 + η2 - η12 - η21"""
    total: float
    eta1: float
    eta2: float
    eta12: float
    eta21: float


def as_integer(value: float, name: str) -> int:
    """
    参数须为整数（容差 1e-12）

    Raises:
        DomainError: 非整数
    """
    rounded = round(value)
    if abs(value - rounded) > INTEGER_TOL or rounded < 1:
        raise DomainError(f"{name}={value} 不是正整数")
    return int(rounded)


def capacity_lb_thz(scenario: Scenario) -> float:
    """THz 链路容量下界 E[log2 γ1] = [ln γ1⁰ + 2ψ(μ1)/α1 - 2/φ - 2·ln C1/α1]/ln2"""
    consts = scenario.derived
    thz = scenario.thz_fading
    value = (math.log(consts.gamma0_1) + 2.0 * digamma(thz.mu) / thz.alpha
             - 2.0 / consts.phi - 2.0 * math.log(consts.c1) / thz.alpha)
    return value / LN2


def capacity_lb_rf(scenario: Scenario) -> float:
    """RF 链路容量下界 E[log2 γ2] = [ln γ2⁰ + 2(ψ(μ2) - ln B2)/α2]/ln2"""
    consts = scenario.derived
    rf = scenario.rf_fading
    value = math.log(consts.gamma0_2) + 2.0 * (digamma(rf.mu) - math.log(consts.b2)) / rf.alpha
    return value / LN2


def capacity_thz_exact(scenario: Scenario, rtol: float = 1e-11) -> float:
    """
    THz 单跳遍历容量 ∫ (1 - F1(γ))/(1 + γ) dγ / ln2，
    1 - F1 = [Γ(μ1, κγ^{α1/2}) - κ^{φ/α1}γ^{φ/2}Γ(B1, κγ^{α1/2})]/Γ(μ1)
    """
    consts = scenario.derived
    thz = scenario.thz_fading
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    main = mellin_product(rational_kernel(), upper_gamma_kernel(thz.mu, kappa, g), 1.0, rtol)
    pointing = mellin_product(
        rational_kernel(), upper_gamma_kernel(consts.b1, kappa, g), 1.0 + consts.phi / 2.0, rtol,
        log_weight=consts.phi / thz.alpha * math.log(kappa),
    )
    return (main - pointing) / (math.gamma(thz.mu) * LN2)


def capacity_rf_exact(scenario: Scenario, rtol: float = 1e-11) -> float:
    """RF 单跳遍历容量 ∫ Γ(μ2, λγ^{α2/2})/((1 + γ)Γ(μ2)) dγ / ln2"""
    rf = scenario.rf_fading
    lam = rf_rate(scenario.derived, rf)
    value = mellin_product(rational_kernel(), upper_gamma_kernel(rf.mu, lam, rf.alpha / 2.0), 1.0, rtol)
    return value / (math.gamma(rf.mu) * LN2)


def thz_survival_transform(scenario: Scenario, p: float, q: float, rtol: float = 1e-11) -> float:
    """
    J(p, q) = ∫_0^∞ γ^{p-1}·e^{-qγ}·(1 - F1(γ)) dγ
    """
    consts = scenario.derived
    thz = scenario.thz_fading
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    main = mellin_product(exp_kernel(q), upper_gamma_kernel(thz.mu, kappa, g), p, rtol)
    pointing = mellin_product(
        exp_kernel(q), upper_gamma_kernel(consts.b1, kappa, g), p + consts.phi / 2.0, rtol,
        log_weight=consts.phi / thz.alpha * math.log(kappa),
    )
    return (main - pointing) / math.gamma(thz.mu)


def _matches(value: float, target: float) -> bool:
    return abs(value - target) <= INTEGER_TOL * max(1.0, abs(target))


def relay_reduction(scenario: Scenario, metric: str, oracle: str) -> str:
    """
    选择中继闭式的化简方式，使每个积分只含两个 Mellin 核：

    - 'rf_exponential'：α2 = 2 且 μ2 为整数，RF 生存函数的指数与容量的 Laplace 核
      或误码率的 e^{-qγ} 合并
    - 'common_power'：α1 = α2 且 μ2 为整数，指向混合表示下 THz 与 RF 指数合并
    - 'thz_exponential'：α1 = 2（仅误码率），指向混合表示下 THz 指数与 e^{-qγ} 合并

    Raises:
        DomainError: 三个指数幂次互不相同（需要二元 Meijer G），应改用 oracle
    """
    thz, rf = scenario.thz_fading, scenario.rf_fading
    integer_mu2 = _matches(rf.mu, round(rf.mu)) and round(rf.mu) >= 1
    if integer_mu2 and _matches(rf.alpha, 2.0):
        return 'rf_exponential'
    if integer_mu2 and _matches(rf.alpha, thz.alpha):
        return 'common_power'
    if metric == 'ber' and _matches(thz.alpha, 2.0):
        return 'thz_exponential'
    raise DomainError(
        f"闭式要求 μ2 为整数且 α2 = 2 或 α1 = α2"
        f"{'，或 α1 = 2' if metric == 'ber' else ''} "
        f"(当前 α1={thz.alpha}, α2={rf.alpha}, μ2={rf.mu})，请改用 {oracle}"
    )


def mixture_density(w: float, mu1: float, b1: float, survival: bool) -> float:
    """
    指向混合表示 x = κγ^{α1/2}：
    1 - F1 = x^{μ1}/Γ(μ1)·∫_1^∞ (w^{μ1-1} - w^{B1-1})·e^{-xw} dw，
    F1 = x^{μ1}/Γ(μ1)·∫_0^∞ ρ(w)·e^{-xw} dw，w < 1 时 ρ = w^{μ1-1}，否则 ρ = w^{B1-1}
    """
    log_w = math.log(w)
    if survival:
        if w <= 1.0:
            return 0.0
        return math.exp((mu1 - 1.0) * log_w) * -math.expm1((b1 - mu1) * log_w)
    if w < 1.0:
        return math.exp((mu1 - 1.0) * log_w)
    return math.exp((b1 - 1.0) * log_w)


def mixture_integral(inner, scenario: Scenario, survival: bool, knee: float,
                     upper_rate: float, what: str) -> float:
    """
    ∫ ρ(w)·inner(w) dw，按 u = ln w 积分

    Args:
        inner: w 处的内层 Meijer G 积分
        survival: True 时 ρ 取生存函数密度（w ≥ 1），否则取分布函数密度
        knee: 内层积分开始按幂律衰减的位置 ln w
        upper_rate: 拐点之后被积函数在 u 上的衰减指数
    """
    consts = scenario.derived
    mu1 = scenario.thz_fading.mu

    def integrand(u: float) -> float:
        w = math.exp(u)
        density = mixture_density(w, mu1, consts.b1, survival)
        if density == 0.0:
            return 0.0
        return density * inner(w) * w

    lower = 0.0 if survival else -MIXTURE_TAIL_LOG / mu1
    upper = max(knee, 0.0) + MIXTURE_TAIL_LOG / upper_rate
    # ρ 在 w = 1 附近的上升尺度 α1/φ
    breaks = sorted(b for b in {0.0, knee, scenario.thz_fading.alpha / consts.phi}
                    if lower < b < upper)
    value, error = integrate.quad(integrand, lower, upper, points=breaks or None,
                                  epsabs=0.0, epsrel=1e-9, limit=400)
    if not math.isfinite(value):
        raise EvaluationError(f"{what}指向混合积分失败", diagnostics={'value': value, 'error': error})
    logger.debug(f"{what}指向混合积分: {value:.8g}, 误差估计={error:.3g}, u∈[{lower:.3g}, {upper:.3g}]")
    return value


def _relay_capacity_laplace(scenario: Scenario, rtol: float) -> float:
    """
    η·ln2 = ∫_0^∞ e^{-τ}·L(τ) dτ，L(τ) = Σ_{k<μ2} λ^k/k!·J(k+1, τ+λ)，
    J 为 THz 生存函数的加权 Laplace 变换（Meijer G 形式）
    """
    terms = int(round(scenario.rf_fading.mu))
    lam = rf_rate(scenario.derived, scenario.rf_fading)
    weights = [math.exp(k * math.log(lam) - math.lgamma(k + 1.0)) for k in range(terms)]

    def laplace(tau: float) -> float:
        return sum(w * thz_survival_transform(scenario, k + 1.0, tau + lam, rtol)
                   for k, w in enumerate(weights))

    def integrand(u: float) -> float:
        tau = math.exp(u)
        return math.exp(-tau) * laplace(tau) * tau

    mean_scale = max(moment_thz(scenario, 1.0), moment_rf(scenario, 1.0))
    lower = math.log(1e-9 / mean_scale)
    upper = math.log(50.0)
    breaks = [b for b in (-math.log(mean_scale), 0.0) if lower < b < upper]
    value, error = integrate.quad(integrand, lower, upper, points=breaks or None,
                                  epsabs=0.0, epsrel=1e-9, limit=200)
    if not math.isfinite(value):
        raise EvaluationError("中继容量积分失败", diagnostics={'value': value, 'error': error})
    return value


def _relay_capacity_common_power(scenario: Scenario, rtol: float) -> float:
    """
    α1 = α2 = 2g：η·ln2 = κ^{μ1}/Γ(μ1)·Σ_{k<μ2} λ^k/k!·∫_1^∞ ρ(w)·G_k(w) dw，
    G_k(w) = ∫ γ^{g(μ1+k)}·e^{-(κw+λ)γ^g}/(1+γ) dγ
    """
    consts = scenario.derived
    thz = scenario.thz_fading
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    lam = rf_rate(consts, scenario.rf_fading)
    total = 0.0
    for k in range(int(round(scenario.rf_fading.mu))):
        log_weight = (thz.mu * math.log(kappa) - math.lgamma(thz.mu)
                      + k * math.log(lam) - math.lgamma(k + 1.0))

        def inner(w: float, k: int = k, log_weight: float = log_weight) -> float:
            return mellin_product(rational_kernel(), exp_kernel(kappa * w + lam, g),
                                  g * (thz.mu + k) + 1.0, rtol, log_weight=log_weight)

        knee = math.log(max(lam, 1.0) / kappa)
        total += mixture_integral(inner, scenario, True, knee, 1.0 / g + k, '中继容量')
    return total


def capacity_relay_inid(scenario: Scenario, rtol: float = 1e-11) -> float:
    """
    中继链路遍历容量 η = (1/ln2)·∫ (1 - F1)(1 - F2)/(1 + γ) dγ
    μ2 为整数时 1 - F2 为 e^{-λγ^{α2/2}} 乘多项式，α2 = 2 或 α1 = α2 时化为 Meijer G 的一维积分

    Raises:
        DomainError: 参数组合不满足 relay_reduction，应改用 capacity_by_quadrature
    """
    route = relay_reduction(scenario, 'capacity', 'capacity_by_quadrature')
    if route == 'rf_exponential':
        value = _relay_capacity_laplace(scenario, rtol)
    else:
        value = _relay_capacity_common_power(scenario, rtol)
    logger.debug(f"中继容量 ({route}): {value / LN2:.8g} bit/s/Hz")
    return value / LN2


def capacity_relay_iid(scenario: Scenario) -> float:
    """i.i.d. 对数容量 η = E[log2 min(γ1, γ2)]"""
    return log_capacity_terms(scenario).total


def log_capacity_terms(scenario: Scenario) -> LogCapacityTerms:
    """
    i.i.d. 对数容量各项：η1、η2 为闭式，η12、η21 由数值积分得到

    Raises:
        DomainError: 两跳参数不同或 μ 非整数
    """
    if not scenario.is_iid:
        raise DomainError("capacity_relay_iid 要求 α1=α2, μ1=μ2")
    as_integer(scenario.thz_fading.mu, 'μ')
    eta1 = capacity_lb_thz(scenario)
    eta2 = capacity_lb_rf(scenario)
    eta12, eta21 = log_capacity_cross_terms(scenario)
    return LogCapacityTerms(total=eta1 + eta2 - eta12 - eta21, eta1=eta1, eta2=eta2,
                         eta12=eta12, eta21=eta21)

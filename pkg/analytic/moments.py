#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
端到端信噪比的矩与衰落量
γ̄⁽ⁿ⁾ = γ̄1 + γ̄2 - γ̄12 - γ̄21，交叉项
X12 = ∫γⁿ f1 (1-F2) dγ = γ̄1 - γ̄12，X21 = ∫γⁿ f2 (1-F1) dγ = γ̄2 - γ̄21
由 Mellin-Barnes 构造器化为 Meijer G 函数；α1、α2 为整数时另有按 Gauss 乘法公式展开的
显式参数列表；i.i.d. 情形另有 2F1 闭式
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List

from scipy import special

from analytic.quadrature import moment_by_quadrature
from channel.fading import rf_rate, thz_rate
from channel.scenario import Scenario
from specfun.hypergeometric import regularized_2f1
from specfun.meijer import MeijerSpec, meijer_g_scaled
from specfun.mellin import exp_kernel, mellin_product, upper_gamma_kernel
from utils.errors import DomainError, EvaluationError

logger = logging.getLogger(__name__)


@dataclass
class MomentTerms:
    """n 阶矩及其四个组成项"""
    total: float
    thz: float       # γ̄1
    rf: float        # γ̄2
    thz_rf: float    # γ̄12
    rf_thz: float    # γ̄21


def _check_order(n: float) -> None:
    if n < 0 or math.isnan(n):
        raise DomainError(f"矩阶数必须非负: n={n}")


def moment_thz(scenario: Scenario, n: float) -> float:
    """THz 单跳 n 阶矩 (A1/2)·γ1⁰^{-φ/2}·κ^{-(2n+φ)/α1}·Γ(B1 + (2n+φ)/α1)/(n + φ/2)"""
    _check_order(n)
    consts = scenario.derived
    alpha = scenario.thz_fading.alpha
    phi = consts.phi
    shift = (2.0 * n + phi) / alpha
    log_value = (math.log(0.5) + consts.log_a1 - 0.5 * phi * math.log(consts.gamma0_1)
                 - shift * math.log(thz_rate(consts, scenario.thz_fading))
                 + special.gammaln(consts.b1 + shift) - math.log(n + phi / 2.0))
    return math.exp(log_value)


def moment_rf(scenario: Scenario, n: float) -> float:
    """RF 单跳 n 阶矩 γ2⁰ⁿ·Γ(μ2 + 2n/α2)/(Γ(μ2)·B2^{2n/α2})"""
    _check_order(n)
    consts = scenario.derived
    rf = scenario.rf_fading
    shift = 2.0 * n / rf.alpha
    log_value = (n * math.log(consts.gamma0_2) + special.gammaln(rf.mu + shift)
                 - special.gammaln(rf.mu) - shift * math.log(consts.b2))
    return math.exp(log_value)


def _cross_terms_meijer(scenario: Scenario, n: float, rtol: float):
    """X12、X21 的 Meijer G 形式"""
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    phi = consts.phi
    kappa, g = thz_rate(consts, thz), thz.alpha / 2.0
    lam, h = rf_rate(consts, rf), rf.alpha / 2.0

    term = 'X12'
    try:
        log_pref12 = (math.log(0.5) + consts.log_a1 - 0.5 * phi * math.log(consts.gamma0_1)
                      - math.lgamma(rf.mu))
        x12 = mellin_product(
            upper_gamma_kernel(consts.b1, kappa, g), upper_gamma_kernel(rf.mu, lam, h),
            n + phi / 2.0, rtol, log_weight=log_pref12,
        )

        term = 'X21'
        pref21 = math.exp(math.log(h) + rf.mu * math.log(lam) - math.lgamma(thz.mu)
                          - math.lgamma(rf.mu))
        main = mellin_product(exp_kernel(lam, h), upper_gamma_kernel(thz.mu, kappa, g),
                              n + h * rf.mu, rtol)
        pointing = mellin_product(
            exp_kernel(lam, h), upper_gamma_kernel(consts.b1, kappa, g),
            n + h * rf.mu + phi / 2.0, rtol, log_weight=phi / thz.alpha * math.log(kappa),
        )
        x21 = pref21 * (main - pointing)
    except EvaluationError as exc:
        exc.diagnostics.setdefault('term', term)
        exc.diagnostics.setdefault('n', n)
        raise
    return x12, x21


def moment_terms(scenario: Scenario, n: float, rtol: float = 1e-11) -> MomentTerms:
    """
    n 阶矩的四个组成项（i.n.i.d. Meijer G 形式）

    Raises:
        DomainError: n < 0
        EvaluationError: Meijer G 求值失败，diagnostics 中注明失败的交叉项
    """
    _check_order(n)
    x12, x21 = _cross_terms_meijer(scenario, n, rtol)
    thz = moment_thz(scenario, n)
    rf = moment_rf(scenario, n)
    logger.debug(f"矩 n={n}: X12={x12:.6g}, X21={x21:.6g}, γ̄1={thz:.6g}, γ̄2={rf:.6g}")
    return MomentTerms(total=x12 + x21, thz=thz, rf=rf, thz_rf=thz - x12, rf_thz=rf - x21)


def moment_inid(scenario: Scenario, n: float, rtol: float = 1e-11) -> float:
    """端到端信噪比 n 阶矩（i.n.i.d. 闭式）"""
    return moment_terms(scenario, n, rtol).total


@dataclass
class DisplayedTerm:
    """exp(log_prefactor)·G^{m,n}_{p,q}(exp(log_z) | a; b)"""
    spec: MeijerSpec
    log_z: float
    log_prefactor: float

    def value(self, rtol: float = 1e-11) -> float:
        scaled = meijer_g_scaled(self.spec, self.log_z, rtol)
        if scaled.normalized == 0.0:
            return 0.0
        log_mag = self.log_prefactor + scaled.log_scale + math.log(abs(scaled.normalized))
        return math.copysign(math.exp(log_mag), scaled.normalized)


def _delta(k: int, a: float) -> List[float]:
    """Δ(k, a) = a/k, (a+1)/k, …, (a+k-1)/k"""
    return [(a + j) / k for j in range(k)]


def _integer_shape(alpha: float, name: str) -> int:
    rounded = round(alpha)
    if abs(alpha - rounded) > 1e-12 or rounded < 1:
        raise DomainError(f"{name}={alpha} 不是正整数，无法展开为 Meijer G 参数列表")
    return int(rounded)


def _exp_upper_displayed(k1: int, k2: int, w: float, c: float, log_c: float,
                         log_extra: float) -> DisplayedTerm:
    """
    J(w, c) = ∫_0^∞ t^{w-1}·e^{-t}·Γ(c, C·t^{k1/k2}) dt
            = k2·(2π)^{1-(k1+k2)/2}·k2^{c-3/2}·k1^{w-1/2}·G^{2k2,k1}_{k1+k2,2k2}(C^{k2}k1^{k1}/k2^{k2})
    """
    spec = MeijerSpec.from_groups(
        [1.0 - (w + i) / k1 for i in range(k1)], _delta(k2, 1.0),
        _delta(k2, c) + _delta(k2, 0.0), [],
    )
    log_z = k2 * log_c + k1 * math.log(k1) - k2 * math.log(k2)
    log_prefactor = (log_extra + math.log(k2) + (1.0 - 0.5 * (k1 + k2)) * math.log(2.0 * math.pi)
                     + (c - 1.5) * math.log(k2) + (w - 0.5) * math.log(k1))
    return DisplayedTerm(spec, log_z, log_prefactor)


def displayed_cross_terms(scenario: Scenario, n: float) -> Dict[str, DisplayedTerm]:
    """
    α1、α2 为整数时交叉项的显式 Meijer G 形式：
    X12 = γ̄1 - γ̄12 为一项 G^{2α1,2α2}_{α1+2α2,2α1+α2}，
    X21 = γ̄2 - γ̄21 为两项 G^{2α2,α1}_{α1+α2,2α2} 之差（'x21_main' - 'x21_pointing'）

    Raises:
        DomainError: α1 或 α2 不是正整数
    """
    _check_order(n)
    consts = scenario.derived
    thz, rf = scenario.thz_fading, scenario.rf_fading
    k1 = _integer_shape(thz.alpha, 'α1')
    k2 = _integer_shape(rf.alpha, 'α2')
    phi, b1 = consts.phi, consts.b1
    log_c1 = math.log(consts.c1)
    log_lam = math.log(rf_rate(consts, rf))
    log_kappa = math.log(thz_rate(consts, thz))

    # X12：B2' = λ·γ1⁰^{α2/2}
    s = (phi + 2.0 * n) / k1
    log_b2p = log_lam + 0.5 * k2 * math.log(consts.gamma0_1)
    x12 = DisplayedTerm(
        spec=MeijerSpec.from_groups(
            _delta(k2, 1.0 - s - b1) + _delta(k2, 1.0 - s), _delta(k1, 1.0),
            _delta(k1, rf.mu) + _delta(k1, 0.0), _delta(k2, -s),
        ),
        log_z=k1 * log_b2p - k1 * math.log(k1) - k2 * log_c1 + k2 * math.log(k2),
        log_prefactor=(consts.log_a1 - s * log_c1 + n * math.log(consts.gamma0_1)
                       + (rf.mu - 0.5) * math.log(k1) + (b1 + s - 1.5) * math.log(k2)
                       - math.lgamma(rf.mu) - math.log(k1)
                       - 0.5 * (k1 + k2 - 2) * math.log(2.0 * math.pi)),
    )

    # X21：t = λγ^{α2/2}，C = κ·λ^{-α1/α2}
    log_c = log_kappa - k1 / k2 * log_lam
    base = -2.0 * n / k2 * log_lam - math.lgamma(thz.mu) - math.lgamma(rf.mu)
    main = _exp_upper_displayed(k1, k2, rf.mu + 2.0 * n / k2, thz.mu, log_c, base)
    pointing = _exp_upper_displayed(
        k1, k2, rf.mu + (2.0 * n + phi) / k2, b1, log_c,
        base - phi / k2 * log_lam + phi / k1 * log_kappa,
    )
    return {'x12': x12, 'x21_main': main, 'x21_pointing': pointing}


def moment_terms_displayed(scenario: Scenario, n: float, rtol: float = 1e-11) -> MomentTerms:
    """n 阶矩的四个组成项，交叉项取 displayed_cross_terms 的显式 Meijer G 形式"""
    terms = displayed_cross_terms(scenario, n)
    x12 = terms['x12'].value(rtol)
    x21 = terms['x21_main'].value(rtol) - terms['x21_pointing'].value(rtol)
    thz = moment_thz(scenario, n)
    rf = moment_rf(scenario, n)
    return MomentTerms(total=x12 + x21, thz=thz, rf=rf, thz_rf=thz - x12, rf_thz=rf - x21)


def _upper_pair_integral(s: float, a: float, beta: float, b: float, lam: float) -> float:
    """
    H(s) = ∫_0^∞ u^{s-1}·Γ(a, βu)·Γ(b, λu) du
    分部积分后两项均为 ∫ t^{w-1} e^{-βt} Γ(ν, αt) dt = α^{-w}Γ(w+ν)Γ(w)·₂F̃₁(w, w+ν; w+1; -β/α)
    """
    total = s + a + b
    first = math.exp(a * math.log(beta) - (s + a) * math.log(lam)
                     + special.gammaln(total) + special.gammaln(s + a))
    first *= regularized_2f1(s + a, total, s + a + 1.0, -beta / lam)
    second = math.exp(b * math.log(lam) - (s + b) * math.log(beta)
                      + special.gammaln(total) + special.gammaln(s + b))
    second *= regularized_2f1(s + b, total, s + b + 1.0, -lam / beta)
    return (first + second) / s


def _exp_upper_integral(w: float, c: float, rate: float, kappa: float) -> float:
    """∫_0^∞ u^{w-1}·e^{-rate·u}·Γ(c, κu) du"""
    log_value = -w * math.log(kappa) + special.gammaln(w + c) + special.gammaln(w)
    return math.exp(log_value) * regularized_2f1(w, w + c, w + 1.0, -rate / kappa)


def moment_iid(scenario: Scenario, n: float) -> float:
    """
    端到端信噪比 n 阶矩（i.i.d. 闭式，仅用正则化 2F1）

    Raises:
        DomainError: α1 ≠ α2 或 μ1 ≠ μ2
    """
    _check_order(n)
    if not scenario.is_iid:
        raise DomainError("moment_iid 要求两跳衰落参数相同 (α1=α2, μ1=μ2)")
    consts = scenario.derived
    thz = scenario.thz_fading
    phi, mu = consts.phi, thz.mu
    g = thz.alpha / 2.0
    kappa = thz_rate(consts, thz)
    lam = rf_rate(consts, scenario.rf_fading)

    # X12 = pref12·(1/g)·H(σ/g)，σ = n + φ/2
    pref12 = math.exp(math.log(0.5) + consts.log_a1 - 0.5 * phi * math.log(consts.gamma0_1)
                      - math.lgamma(mu))
    x12 = pref12 / g * _upper_pair_integral((n + phi / 2.0) / g, consts.b1, kappa, mu, lam)

    # X21 = g·λ^μ/Γ(μ)²·(1/g)·[T(μ, σ1) - κ^{φ/α}·T(B1, σ2)]
    pref21 = math.exp(mu * math.log(lam) - 2.0 * math.lgamma(mu))
    sigma1 = n + g * mu
    sigma2 = sigma1 + phi / 2.0
    main = _exp_upper_integral(sigma1 / g, mu, lam, kappa)
    pointing = kappa ** (phi / thz.alpha) * _exp_upper_integral(sigma2 / g, consts.b1, lam, kappa)
    x21 = pref21 * (main - pointing)
    return x12 + x21


def amount_of_fading(scenario: Scenario, method: str = 'closed') -> float:
    """
    二阶衰落量 AoF = γ̄⁽²⁾/(γ̄⁽¹⁾)² - 1

    Args:
        method: 'closed'（Meijer G 闭式）或 'quadrature'（数值积分）
    """
    if method == 'closed':
        first, second = moment_inid(scenario, 1.0), moment_inid(scenario, 2.0)
    elif method == 'quadrature':
        first = moment_by_quadrature(scenario, 1.0)
        second = moment_by_quadrature(scenario, 2.0)
    else:
        raise DomainError(f"未知的求值方法: {method}")
    return max(second / first ** 2 - 1.0, 0.0)

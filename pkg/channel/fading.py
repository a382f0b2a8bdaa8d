#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
衰落分布
THz 链路：α-μ 衰落与指向误差的乘积；RF 链路：α-μ 衰落。
给出信噪比域的概率密度与分布函数，THz 分布函数支持非整数 μ1
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, special

from channel.pointing import PointingParams
from specfun.gamma import lower_gamma, upper_gamma, weighted_upper_gamma
from utils.errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Γ(B1, x) 小自变量级数项数
_SERIES_TERMS = 40
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class FadingParams:
    """α-μ 衰落参数"""
    alpha: float = 2.0   # 非线性参数
    mu: float = 1.0      # 簇参数，可为非整数
    omega: float = 1.0   # 包络的 α 次根均值

    def __post_init__(self):
        if not (self.alpha > 0 and self.mu > 0 and self.omega > 0):
            raise DomainError(
                f"衰落参数必须为正: alpha={self.alpha}, mu={self.mu}, omega={self.omega}"
            )


@dataclass(frozen=True)
class DerivedConstants:
    """
    闭式表达式使用的常数

    a1 = φ·S0^{-φ}·μ1^{φ/α1}/(Ω^φ·Γ(μ1))，b1 = μ1 - φ/α1，c1 = μ1·S0^{-α1}/Ω^{α1}，
    a2 = μ2^{μ2}/Ω^{α2·μ2}，b2 = μ2/Ω^{α2}

    φ 较大时 a1 超出浮点范围（记为 inf），闭式内部一律使用 log_a1
    """
    a1: float
    log_a1: float
    b1: float
    c1: float
    a2: float
    b2: float
    gamma0_1: float   # THz 无衰落信噪比（线性）
    gamma0_2: float   # RF 无衰落信噪比（线性）
    phi: float        # 指向误差形状参数
    s0: float         # 对准时收集功率比例


def derive_constants(thz: FadingParams, pointing: PointingParams, rf: FadingParams,
                     gamma0_1: float, gamma0_2: float) -> DerivedConstants:
    """
    计算闭式常数

    Raises:
        DomainError: 无衰落信噪比非正
    """
    if not (gamma0_1 > 0 and gamma0_2 > 0):
        raise DomainError(f"无衰落信噪比必须为正: γ1⁰={gamma0_1}, γ2⁰={gamma0_2}")

    phi, s0 = pointing.phi, pointing.s0
    log_a1 = (math.log(phi) - phi * math.log(s0) + phi / thz.alpha * math.log(thz.mu)
              - phi * math.log(thz.omega) - math.lgamma(thz.mu))
    return DerivedConstants(
        a1=math.exp(log_a1) if log_a1 < _LOG_FLOAT_MAX else math.inf,
        log_a1=log_a1,
        b1=thz.mu - phi / thz.alpha,
        c1=thz.mu * s0 ** (-thz.alpha) / thz.omega ** thz.alpha,
        a2=rf.mu ** rf.mu / rf.omega ** (rf.alpha * rf.mu),
        b2=rf.mu / rf.omega ** rf.alpha,
        gamma0_1=gamma0_1,
        gamma0_2=gamma0_2,
        phi=phi,
        s0=s0,
    )


def thz_rate(consts: DerivedConstants, fading: FadingParams) -> float:
    """C1·(√(γ/γ1⁰))^{α1} = κ·γ^{α1/2} 中的 κ"""
    return consts.c1 * consts.gamma0_1 ** (-fading.alpha / 2.0)


def rf_rate(consts: DerivedConstants, fading: FadingParams) -> float:
    """B2·(√(γ/γ2⁰))^{α2} = λ·γ^{α2/2} 中的 λ"""
    return consts.b2 * consts.gamma0_2 ** (-fading.alpha / 2.0)


def _prepare(gamma: ArrayLike) -> np.ndarray:
    values = np.atleast_1d(np.asarray(gamma, dtype=float))
    if np.any(values < 0) or np.any(np.isnan(values)):
        raise DomainError("信噪比必须非负")
    return values


def _output(values: np.ndarray, template: ArrayLike) -> ArrayLike:
    if np.ndim(template) == 0:
        return float(values[0])
    return values


def _thz_argument(g: np.ndarray, consts: DerivedConstants, fading: FadingParams) -> np.ndarray:
    """x = C1·(γ/γ1⁰)^{α1/2}"""
    return consts.c1 * (g / consts.gamma0_1) ** (fading.alpha / 2.0)


def thz_log_norm(consts: DerivedConstants, fading: FadingParams) -> float:
    """ln(A1·C1^{-φ/α1}/φ)，THz 分布函数的归一化系数"""
    return consts.log_a1 - consts.phi / fading.alpha * math.log(consts.c1) - math.log(consts.phi)


def _weighted_upper_gamma(argument: np.ndarray, consts: DerivedConstants,
                          fading: FadingParams) -> np.ndarray:
    """
    C1^{φ/α1}·(γ/γ1⁰)^{φ/2}·Γ(B1, x) = x^{φ/α1}·Γ(B1, x)，x = C1·(γ/γ1⁰)^{α1/2}

    B1 < 0 且 x < 0.5 时展开 Γ(B1, x) = Γ(B1) - x^{B1}·Σ(-x)^k/(k!(B1+k))，
    权重与 x^{B1} 合并为 x^{μ1}，不单独计算 x^{B1}
    """
    b1 = consts.b1
    power = consts.phi / fading.alpha
    out = np.empty_like(argument)
    if b1 < 0 and b1 != math.floor(b1):
        small = argument < 0.5
    else:
        small = np.zeros_like(argument, dtype=bool)
    if np.any(~small):
        out[~small] = weighted_upper_gamma(b1, argument[~small], power)
    if np.any(small):
        x = argument[small]
        k = np.arange(_SERIES_TERMS)
        terms = ((-x[:, None]) ** k / (special.factorial(k) * (b1 + k))).sum(axis=1)
        complete = special.gammasgn(b1) * np.exp(power * np.log(x) + special.gammaln(b1))
        out[small] = complete - x ** fading.mu * terms
    return out


def snr_pdf_thz(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """
    THz 链路信噪比概率密度
    f1(γ) = A1/(2√(γγ1⁰))·(√(γ/γ1⁰))^{φ-1}·Γ(B1, C1(√(γ/γ1⁰))^{α1})
    """
    g = _prepare(gamma)
    out = np.zeros_like(g)
    argument = _thz_argument(g, consts, fading)
    positive = argument > 0
    if np.any(positive):
        scale = 0.5 * consts.phi * math.exp(thz_log_norm(consts, fading))
        out[positive] = (scale / g[positive]
                         * _weighted_upper_gamma(argument[positive], consts, fading))
    if not np.all(positive):
        out[~positive] = _pdf_thz_at_zero(consts, fading)
    return _output(out, gamma)


def _pdf_thz_at_zero(consts: DerivedConstants, fading: FadingParams) -> float:
    """f1 在 γ→0 的极限，幂次 min(φ, α1μ1)/2 - 1 决定其为 0、常数或 ∞"""
    exponent = min(consts.phi, fading.alpha * fading.mu) / 2.0 - 1.0
    if exponent > 0:
        return 0.0
    if exponent < 0:
        return math.inf
    log_prefactor = math.log(0.5) + consts.log_a1 - 0.5 * consts.phi * math.log(consts.gamma0_1)
    if consts.b1 > 0:
        return math.exp(log_prefactor + math.lgamma(consts.b1))
    if consts.b1 < 0:
        rate = thz_rate(consts, fading)
        return math.exp(log_prefactor + consts.b1 * math.log(rate)) / (-consts.b1)
    return math.inf


def snr_cdf_thz(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """
    THz 链路信噪比分布函数
    F1(γ) = A1·C1^{-φ/α1}/φ·[γ(μ1, C1t) + C1^{φ/α1}(√(γ/γ1⁰))^φ·Γ(B1, C1t)]，t = (√(γ/γ1⁰))^{α1}
    """
    g = _prepare(gamma)
    out = np.zeros_like(g)
    argument = _thz_argument(g, consts, fading)
    positive = argument > 0
    if np.any(positive):
        norm = math.exp(thz_log_norm(consts, fading))
        values = norm * (lower_gamma(fading.mu, argument[positive])
                         + _weighted_upper_gamma(argument[positive], consts, fading))
        out[positive] = np.clip(values, 0.0, 1.0)
    return _output(out, gamma)


def snr_ccdf_thz(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """1 - F1(γ) = A1·C1^{-φ/α1}/φ·[Γ(μ1, C1t) - C1^{φ/α1}(√(γ/γ1⁰))^φ·Γ(B1, C1t)]"""
    g = _prepare(gamma)
    out = np.ones_like(g)
    argument = _thz_argument(g, consts, fading)
    positive = argument > 0
    if np.any(positive):
        norm = math.exp(thz_log_norm(consts, fading))
        values = norm * (upper_gamma(fading.mu, argument[positive])
                         - _weighted_upper_gamma(argument[positive], consts, fading))
        out[positive] = np.clip(values, 0.0, 1.0)
    return _output(out, gamma)


def snr_pdf_rf(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """RF 链路信噪比概率密度 f2(γ) = (α2/2)·λ^{μ2}/Γ(μ2)·γ^{α2μ2/2-1}·exp(-λγ^{α2/2})"""
    g = _prepare(gamma)
    out = np.zeros_like(g)
    positive = g > 0
    lam = rf_rate(consts, fading)
    h = fading.alpha / 2.0
    if np.any(positive):
        x = g[positive]
        log_pdf = (math.log(h) + fading.mu * math.log(lam) - special.gammaln(fading.mu)
                   + (h * fading.mu - 1.0) * np.log(x) - lam * x ** h)
        out[positive] = np.exp(log_pdf)
    if not np.all(positive):
        exponent = h * fading.mu - 1.0
        if exponent < 0:
            out[~positive] = math.inf
        elif exponent == 0:
            out[~positive] = h * lam ** fading.mu / math.gamma(fading.mu)
    return _output(out, gamma)


def snr_cdf_rf(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """RF 链路信噪比分布函数 F2(γ) = 1 - Γ(μ2, B2(√(γ/γ2⁰))^{α2})/Γ(μ2)"""
    g = _prepare(gamma)
    values = special.gammainc(fading.mu, rf_rate(consts, fading) * g ** (fading.alpha / 2.0))
    return _output(values, gamma)


def snr_ccdf_rf(gamma: ArrayLike, consts: DerivedConstants, fading: FadingParams) -> ArrayLike:
    """1 - F2(γ)"""
    g = _prepare(gamma)
    values = special.gammaincc(fading.mu, rf_rate(consts, fading) * g ** (fading.alpha / 2.0))
    return _output(values, gamma)


def alpha_mu_envelope_pdf(x: float, fading: FadingParams) -> float:
    """α-μ 包络密度 α·μ^μ·x^{αμ-1}/(Ω^{αμ}Γ(μ))·exp(-μx^α/Ω^α)"""
    if x <= 0:
        return 0.0
    a, m, w = fading.alpha, fading.mu, fading.omega
    log_pdf = (math.log(a) + m * math.log(m) + (a * m - 1.0) * math.log(x)
               - a * m * math.log(w) - math.lgamma(m) - m * (x / w) ** a)
    return math.exp(log_pdf)


def amplitude_pdf_thz(h: float, fading: FadingParams, pointing: PointingParams) -> float:
    """
    复合增益 |h_fp| = h_f·h_p 的概率密度，按乘积分布数值积分
    f(h) = ∫_{h/S0}^∞ f_f(x)·f_p(h/x)/x dx，f_p(y) = φ·y^{φ-1}/S0^φ
    """
    if h < 0:
        raise DomainError(f"幅度必须非负: {h}")
    if h == 0:
        return 0.0
    phi, s0 = pointing.phi, pointing.s0

    def integrand(x: float) -> float:
        y = h / x
        return (alpha_mu_envelope_pdf(x, fading) / x
                * math.exp(math.log(phi) + (phi - 1.0) * math.log(y / s0) - math.log(s0)))

    lower = h / s0
    # 包络密度峰值附近切分，提高 quad 精度
    mode = fading.omega * max((fading.mu - 1.0 / fading.alpha) / fading.mu, 1e-3) ** (1.0 / fading.alpha)
    points = [p for p in (mode, 2.0 * mode) if p > lower]
    if points:
        value, _ = integrate.quad(integrand, lower, points[-1], points=points[:-1] or None,
                                  epsabs=0.0, epsrel=1e-12, limit=400)
        tail, _ = integrate.quad(integrand, points[-1], math.inf, epsabs=0.0, epsrel=1e-12, limit=400)
        return value + tail
    value, _ = integrate.quad(integrand, lower, math.inf, epsabs=0.0, epsrel=1e-12, limit=400)
    return value

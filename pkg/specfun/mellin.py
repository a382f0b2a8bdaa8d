#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Mellin-Barnes 构造器
把 ∫_0^∞ t^{s0-1} K1(t) K2(t) dt 形式的积分化为单个 Meijer G 函数：
每个核 K(t) 由其 Mellin 变换（Gamma 因子乘积）描述，经 Parseval 公式
得到 σ 域被积函数；有理斜率通过公共分母缩放为整数，再用 Gauss 乘法公式
拆成 Meijer G 所需的单位斜率 Gamma 因子
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Tuple

from specfun.meijer import MeijerSpec, ScaledMeijer, meijer_g_scaled
from utils.errors import DomainError

logger = logging.getLogger(__name__)

# 有理化斜率时的分母上限与容差
MAX_DENOMINATOR = 120
RATIONAL_TOL = 1e-12
# 展开后 Meijer G 阶数上限
MAX_ORDER = 400


def as_fraction(value: float) -> Fraction:
    """
    把斜率转换为有理数

    Raises:
        DomainError: 无法在容差内有理化（Meijer G 阶数必须为整数）
    """
    frac = Fraction(value).limit_denominator(MAX_DENOMINATOR)
    if abs(float(frac) - value) > RATIONAL_TOL * max(1.0, abs(value)):
        raise DomainError(f"参数 {value} 无法有理化为分母 ≤ {MAX_DENOMINATOR} 的分数")
    return frac


@dataclass(frozen=True)
class GammaFactor:
    """Γ(shift + slope·σ)^{power}，power = +1（分子）或 -1（分母）"""
    shift: float
    slope: Fraction
    power: int = 1


@dataclass(frozen=True)
class MellinKernel:
    """
    核函数 K(t) 的 Mellin 变换
    M(σ) = exp(log_const - σ·log_rate) · Π Γ(shift + slope·σ)^{power}，
    在 strip = (lo, hi) 内成立
    """
    log_const: float
    log_rate: float
    factors: Tuple[GammaFactor, ...]
    strip: Tuple[float, float]
    label: str = ''

    def reflected(self, s0: float) -> 'MellinKernel':
        """σ → s0 - σ 代换后的变换"""
        factors = tuple(
            GammaFactor(f.shift + float(f.slope) * s0, -f.slope, f.power) for f in self.factors
        )
        lo, hi = self.strip
        return MellinKernel(
            log_const=self.log_const - s0 * self.log_rate,
            log_rate=-self.log_rate,
            factors=factors,
            strip=(s0 - hi, s0 - lo),
            label=f"{self.label}(s0-σ)",
        )


def exp_kernel(rate: float, power: float = 1.0) -> MellinKernel:
    """K(t) = exp(-rate·t^power)，M(σ) = rate^{-σ/ρ} Γ(σ/ρ) / ρ"""
    _check_positive(rate=rate, power=power)
    slope = as_fraction(1.0 / power)
    return MellinKernel(
        log_const=-math.log(power),
        log_rate=math.log(rate) / power,
        factors=(GammaFactor(0.0, slope),),
        strip=(0.0, math.inf),
        label='exp',
    )


def upper_gamma_kernel(a: float, rate: float, power: float = 1.0) -> MellinKernel:
    """K(t) = Γ(a, rate·t^power)，M(σ) = rate^{-σ/ρ} Γ(a + σ/ρ) Γ(σ)/Γ(1+σ)"""
    _check_positive(rate=rate, power=power)
    slope = as_fraction(1.0 / power)
    return MellinKernel(
        log_const=0.0,
        log_rate=math.log(rate) / power,
        factors=(
            GammaFactor(a, slope),
            GammaFactor(0.0, Fraction(1)),
            GammaFactor(1.0, Fraction(1), -1),
        ),
        strip=(max(0.0, -a * power), math.inf),
        label='upper_gamma',
    )


def lower_gamma_kernel(a: float, rate: float, power: float = 1.0) -> MellinKernel:
    """K(t) = γ(a, rate·t^power)，M(σ) = rate^{-σ/ρ} Γ(a + σ/ρ) Γ(-σ)/Γ(1-σ)"""
    _check_positive(a=a, rate=rate, power=power)
    slope = as_fraction(1.0 / power)
    return MellinKernel(
        log_const=0.0,
        log_rate=math.log(rate) / power,
        factors=(
            GammaFactor(a, slope),
            GammaFactor(0.0, Fraction(-1)),
            GammaFactor(1.0, Fraction(-1), -1),
        ),
        strip=(-a * power, 0.0),
        label='lower_gamma',
    )


def rational_kernel(rate: float = 1.0) -> MellinKernel:
    """K(t) = 1/(1 + rate·t)，M(σ) = rate^{-σ} Γ(σ) Γ(1-σ)"""
    _check_positive(rate=rate)
    return MellinKernel(
        log_const=0.0,
        log_rate=math.log(rate),
        factors=(GammaFactor(0.0, Fraction(1)), GammaFactor(1.0, Fraction(-1))),
        strip=(0.0, 1.0),
        label='rational',
    )


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"核函数参数 {name} 必须为正: {value}")


@dataclass
class MeijerForm:
    """积分 = exp(log_prefactor) · G^{m,n}_{p,q}(z)，z = exp(log_z)"""
    spec: MeijerSpec
    log_z: float
    log_prefactor: float
    cancelled: int = 0

    @property
    def z(self) -> float:
        return math.exp(self.log_z)


@dataclass
class ProductIntegral:
    """∫_0^∞ t^{s0-1} K1(t) K2(t) dt"""
    first: MellinKernel
    second: MellinKernel
    s0: float

    def sigma_strip(self) -> Tuple[float, float]:
        """Parseval 积分线可放置的区间"""
        reflected = self.first.reflected(self.s0)
        lo = max(self.second.strip[0], reflected.strip[0])
        hi = min(self.second.strip[1], reflected.strip[1])
        return lo, hi

    def to_meijer(self) -> MeijerForm:
        """
        化为 Meijer G 形式

        Raises:
            DomainError: Parseval 区间为空（积分发散）或斜率无法有理化
        """
        lo, hi = self.sigma_strip()
        if not lo < hi:
            raise DomainError(
                f"Mellin 乘积积分发散：基本带为空 ({lo}, {hi})，s0={self.s0}"
            )

        reflected = self.first.reflected(self.s0)
        factors = list(self.second.factors) + list(reflected.factors)
        log_const = self.second.log_const + reflected.log_const
        # σ 域指数项 exp(-σ·log_rate)
        log_rate = self.second.log_rate + reflected.log_rate

        # σ = L·v 使所有斜率变为整数
        scale = reduce(_lcm, (f.slope.denominator for f in factors), 1)
        log_const += math.log(scale)
        exponent = -scale * log_rate  # v 的系数

        b_head, a_head, a_tail, b_tail = [], [], [], []
        for factor in factors:
            k = int(factor.slope * scale)
            if k == 0:
                # 与 σ 无关的常数因子
                log_const += factor.power * math.lgamma(factor.shift)
                continue
            size = abs(k)
            # Gauss 乘法公式 Γ(c + kv) = (2π)^{(1-|k|)/2} |k|^{c-1/2} |k|^{kv} Π Γ((c+j)/|k| ± v)
            log_const += factor.power * (
                0.5 * (1 - size) * math.log(2.0 * math.pi)
                + (factor.shift - 0.5) * math.log(size)
            )
            exponent += factor.power * k * math.log(size)
            for j in range(size):
                d = (factor.shift + j) / size
                if k > 0 and factor.power > 0:
                    b_head.append(d)
                elif k < 0 and factor.power > 0:
                    a_head.append(1.0 - d)
                elif k > 0:
                    a_tail.append(d)
                else:
                    b_tail.append(1.0 - d)

        b_head, a_tail, n1 = _cancel_pairs(b_head, a_tail)
        a_head, b_tail, n2 = _cancel_pairs(a_head, b_tail)

        spec = MeijerSpec.from_groups(a_head, a_tail, b_head, b_tail)
        if spec.p + spec.q > MAX_ORDER:
            raise DomainError(f"Meijer G 阶数过高 (p+q={spec.p + spec.q})")

        # s = -v 代换后 z^s = exp(v·exponent)
        return MeijerForm(spec=spec, log_z=-exponent, log_prefactor=log_const,
                          cancelled=n1 + n2)

    def evaluate(self, rtol: float = 1e-11, log_weight: float = 0.0) -> float:
        """exp(log_weight) 乘以积分数值，权重在对数域并入"""
        form = self.to_meijer()
        scaled: ScaledMeijer = meijer_g_scaled(form.spec, form.log_z, rtol)
        if scaled.normalized == 0.0:
            return 0.0
        log_mag = (log_weight + form.log_prefactor + scaled.log_scale
                   + math.log(abs(scaled.normalized)))
        value = math.copysign(math.exp(log_mag), scaled.normalized)
        logger.debug(
            f"Mellin 乘积 {self.first.label}×{self.second.label}: "
            f"G^{{{form.spec.m},{form.spec.n}}}_{{{form.spec.p},{form.spec.q}}}, "
            f"log z={form.log_z:.4g}, 值={value:.6g}"
        )
        return value


def _lcm(x: int, y: int) -> int:
    return x * y // math.gcd(x, y)


def _cancel_pairs(upper: List[float], lower: List[float]) -> Tuple[List[float], List[float], int]:
    """同一参数同时出现在分子与分母时成对约去"""
    remaining = list(lower)
    kept = []
    cancelled = 0
    for value in upper:
        match = next((i for i, w in enumerate(remaining) if abs(w - value) < 1e-13), None)
        if match is None:
            kept.append(value)
        else:
            remaining.pop(match)
            cancelled += 1
    return kept, remaining, cancelled


# 便捷函数
def mellin_product(first: MellinKernel, second: MellinKernel, s0: float,
                   rtol: float = 1e-11, log_weight: float = 0.0) -> float:
    """计算 exp(log_weight)·∫_0^∞ t^{s0-1} K1(t) K2(t) dt"""
    return ProductIntegral(first, second, s0).evaluate(rtol, log_weight)

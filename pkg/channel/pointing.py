#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
THz 天线指向误差模型
由波束宽度 w_z、接收孔径半径 r1、抖动标准差 σ_s 导出
S0（对准时的收集功率比例）、等效波束宽度 w_zeq 与形状参数 φ
"""

import math
from dataclasses import dataclass, replace

from specfun.gamma import erf_fn
from utils.errors import ConfigValidationError, DomainError

# 模型适用范围 w_z/r1 ≥ 6
MIN_BEAMWIDTH_RATIO = 6.0


@dataclass(frozen=True)
class PointingConfig:
    """指向误差配置"""
    w_z: float = 0.6       # 接收端波束宽度 (m)
    r_1: float = 0.1       # 接收孔径半径 (m)
    sigma_s: float = 0.08  # 径向抖动均方根 (m)

    def __post_init__(self):
        if self.w_z <= 0 or self.r_1 <= 0 or self.sigma_s <= 0:
            raise DomainError(
                f"指向误差参数必须为正: w_z={self.w_z}, r_1={self.r_1}, sigma_s={self.sigma_s}"
            )
        # 允许 1e-12 的相对舍入
        if self.beamwidth_ratio < MIN_BEAMWIDTH_RATIO * (1.0 - 1e-12):
            raise ConfigValidationError(
                f"w_z/r_1 = {self.beamwidth_ratio:.4g} < {MIN_BEAMWIDTH_RATIO}，超出指向误差模型适用范围",
                key='pointing.beamwidth_ratio',
            )

    @property
    def beamwidth_ratio(self) -> float:
        return self.w_z / self.r_1

    @classmethod
    def from_ratio(cls, ratio: float, r_1: float = 0.1, sigma_s: float = 0.08) -> 'PointingConfig':
        """按 w_z/r1 比值构造"""
        return cls(w_z=ratio * r_1, r_1=r_1, sigma_s=sigma_s)

    def with_ratio(self, ratio: float) -> 'PointingConfig':
        return replace(self, w_z=ratio * self.r_1)


@dataclass(frozen=True)
class PointingParams:
    """指向误差导出参数"""
    s0: float         # 对准时收集功率比例 erf(υ)²
    phi: float        # 形状参数 w_zeq²/(2σ_s²)
    w_zeq: float      # 等效波束宽度 (m)
    upsilon: float    # υ = √(π/2)·r1/w_z


def pointing_params(cfg: PointingConfig) -> PointingParams:
    """
    计算指向误差参数

    S0 = erf(υ)²，w_zeq² = w_z²·√π·erf(υ)/(2υ·exp(-υ²))，φ = w_zeq²/(2σ_s²)
    """
    upsilon = math.sqrt(math.pi / 2.0) * cfg.r_1 / cfg.w_z
    erf_v = erf_fn(upsilon)
    w_zeq_sq = cfg.w_z ** 2 * math.sqrt(math.pi) * erf_v / (2.0 * upsilon * math.exp(-upsilon ** 2))
    phi = w_zeq_sq / (2.0 * cfg.sigma_s ** 2)
    return PointingParams(s0=erf_v ** 2, phi=phi, w_zeq=math.sqrt(w_zeq_sq), upsilon=upsilon)


def pointing_gain_pdf(h: float, params: PointingParams) -> float:
    """指向增益 h_p 的概率密度 φ/S0^φ·h^{φ-1}，0 ≤ h ≤ S0"""
    if h < 0:
        raise DomainError(f"指向增益必须非负: {h}")
    if h > params.s0 or h == 0.0:
        return 0.0
    return math.exp(math.log(params.phi) + (params.phi - 1.0) * math.log(h)
                    - params.phi * math.log(params.s0))


def pointing_gain_cdf(h: float, params: PointingParams) -> float:
    """指向增益 h_p 的分布函数 (h/S0)^φ"""
    if h < 0:
        raise DomainError(f"指向增益必须非负: {h}")
    return min(h / params.s0, 1.0) ** params.phi

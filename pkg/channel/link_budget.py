#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
链路预算
THz 链路：自由空间扩展损耗 + 分子吸收；RF 链路：3GPP 路径损耗模型。
内部一律使用线性单位，dB/dBm 仅出现在接口边界
"""

import math
from dataclasses import dataclass, replace

from channel.absorption import SPEED_OF_LIGHT, absorption_coefficient
from utils.errors import DomainError

# 热噪声功率谱密度 (dBm/Hz)
THERMAL_NOISE_DBM_HZ = -174.0

# 默认噪声功率 (dBm)
DEFAULT_THZ_NOISE_DBM = -69.4
DEFAULT_RF_NOISE_DBM = -104.4


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0:
        raise DomainError(f"线性值必须为正才能转换为 dB: {value}")
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class ThzLinkBudget:
    """THz 链路预算"""
    f: float = 275e9            # 载频 (Hz)
    d: float = 50.0             # 距离 (m)
    g_t: float = 55.0           # 发射天线增益 (dBi)
    g_r: float = 55.0           # 接收天线增益 (dBi)
    temperature: float = 296.0  # 温度 (K)
    humidity: float = 50.0      # 相对湿度 (%)
    pressure: float = 101325.0  # 大气压 (Pa)
    tx_power: float = 10.0      # 发射功率 (dBm)
    noise_power: float = DEFAULT_THZ_NOISE_DBM  # 噪声功率 (dBm)

    def __post_init__(self):
        if self.d <= 0:
            raise DomainError(f"THz 链路距离必须为正: {self.d}")
        if self.f <= 0:
            raise DomainError(f"THz 载频必须为正: {self.f}")
        if not 0.0 <= self.humidity <= 100.0:
            raise DomainError(f"相对湿度必须在 [0, 100] 内: {self.humidity}")
        if self.pressure <= 0:
            raise DomainError(f"气压必须为正: {self.pressure}")

    def with_tx_power(self, tx_power_dbm: float) -> 'ThzLinkBudget':
        return replace(self, tx_power=tx_power_dbm)

    def with_distance(self, d: float) -> 'ThzLinkBudget':
        return replace(self, d=d)


@dataclass(frozen=True)
class RfLinkBudget:
    """RF 链路预算"""
    f: float = 6e9              # 载频 (Hz)
    d: float = 50.0             # 距离 (m)
    g_t: float = 25.0           # 发射天线增益 (dBi)
    g_r: float = 25.0           # 接收天线增益 (dBi)
    tx_power: float = 10.0      # 中继发射功率 (dBm)
    noise_power: float = DEFAULT_RF_NOISE_DBM  # 噪声功率 (dBm)

    def __post_init__(self):
        if self.d <= 0:
            raise DomainError(f"RF 链路距离必须为正: {self.d}")
        if self.f <= 0:
            raise DomainError(f"RF 载频必须为正: {self.f}")

    def with_tx_power(self, tx_power_dbm: float) -> 'RfLinkBudget':
        return replace(self, tx_power=tx_power_dbm)

    def with_distance(self, d: float) -> 'RfLinkBudget':
        return replace(self, d=d)


def thz_path_gain(budget: ThzLinkBudget) -> float:
    """
    THz 路径增益 h_l = c·√(G_t·G_r)/(4π·f·d) · exp(-k·d/2)

    Returns:
        线性幅度增益
    """
    k = absorption_coefficient(budget.f, budget.temperature, budget.humidity, budget.pressure)
    antenna = math.sqrt(db_to_linear(budget.g_t) * db_to_linear(budget.g_r))
    spreading = SPEED_OF_LIGHT * antenna / (4.0 * math.pi * budget.f * budget.d)
    return spreading * math.exp(-0.5 * k * budget.d)


def rf_path_gain_db(d: float, f: float) -> float:
    """3GPP 路径增益 -(32.4 + 17.3·log10(d) + 20·log10(f·1e-9))，单位 dB"""
    if d <= 0 or f <= 0:
        raise DomainError(f"RF 距离和频率必须为正: d={d}, f={f}")
    return -(32.4 + 17.3 * math.log10(d) + 20.0 * math.log10(f * 1e-9))


def rf_path_gain(budget: RfLinkBudget) -> float:
    """RF 路径线性幅度增益（不含天线增益）"""
    return 10.0 ** (rf_path_gain_db(budget.d, budget.f) / 20.0)


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float) -> float:
    """噪声功率 -174 + 10·log10(B) + NF"""
    if bandwidth_hz <= 0:
        raise DomainError(f"带宽必须为正: {bandwidth_hz}")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db


def thz_noise_power_dbm(bandwidth_hz: float = 10e9, noise_figure_db: float = 5.0) -> float:
    return noise_power_dbm(bandwidth_hz, noise_figure_db)


def rf_noise_power_dbm(bandwidth_hz: float = 20e6, noise_figure_db: float = 5.0) -> float:
    return noise_power_dbm(bandwidth_hz, noise_figure_db)


def aperture_radius(f: float, gain_dbi: float) -> float:
    """由天线增益反推等效孔径半径 r = λ·√G/(2π)"""
    if f <= 0:
        raise DomainError(f"频率必须为正: {f}")
    wavelength = SPEED_OF_LIGHT / f
    return wavelength * math.sqrt(db_to_linear(gain_dbi)) / (2.0 * math.pi)


def faded_free_snr_thz(budget: ThzLinkBudget) -> float:
    """无衰落 THz 平均信噪比 γ1⁰ = P_t·h_l²/σ²（线性）"""
    h_l = thz_path_gain(budget)
    return db_to_linear(budget.tx_power - budget.noise_power) * h_l ** 2


def faded_free_snr_rf(budget: RfLinkBudget) -> float:
    """无衰落 RF 平均信噪比 γ2⁰ = P_r·G_t·G_r·h²/σ²（线性）"""
    gain_db = budget.g_t + budget.g_r + rf_path_gain_db(budget.d, budget.f)
    return db_to_linear(budget.tx_power + gain_db - budget.noise_power)

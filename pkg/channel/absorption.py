#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
THz 分子吸收模型
按温度、相对湿度、气压计算分子吸收系数 k(f, T, ψ, p)，
饱和水汽压采用 Buck 公式
"""

import math
from typing import Dict

from utils.errors import DomainError

# 光速 (m/s)
SPEED_OF_LIGHT = 299792458.0

# 吸收系数拟合参数
ABSORPTION_CONSTANTS: Dict[str, float] = {
    'q1': 0.2205, 'q2': 0.1303, 'q3': 0.0294, 'q4': 0.4093, 'q5': 0.0925,
    'q6': 2.014, 'q7': 0.1702, 'q8': 0.0303, 'q9': 0.537, 'q10': 0.0956,
    'c1': 5.54e-37,   # Hz^-3
    'c2': -3.94e-25,  # Hz^-2
    'c3': 9.06e-14,   # Hz^-1
    'c4': -6.36e-3,
    'p1': 10.835,     # cm^-1
    'p2': 12.664,     # cm^-1
}

# Buck 公式适用温度范围 (K)
BUCK_TEMPERATURE_RANGE = (240.0, 330.0)
KELVIN_OFFSET = 273.15


def buck_saturation_pressure(temperature: float, pressure: float = 101325.0,
                             enhanced: bool = False) -> float:
    """
    Buck 公式计算饱和水汽压

    p_w = 611.21·exp((18.678 - T_C/234.5)·T_C/(257.14 + T_C))，T_C 为摄氏温度

    Args:
        temperature: 温度 (K)
        pressure: 大气压 (Pa)，仅在 enhanced=True 时用于湿空气增强因子
        enhanced: 是否乘以增强因子 1.0007 + 3.46e-6·p(hPa)

    Returns:
        饱和水汽压 (Pa)

    Raises:
        DomainError: 温度超出 [240, 330] K 或气压非正
    """
    low, high = BUCK_TEMPERATURE_RANGE
    if not low <= temperature <= high:
        raise DomainError(f"温度 {temperature} K 超出 Buck 公式适用范围 [{low}, {high}] K")
    if pressure <= 0:
        raise DomainError(f"气压必须为正: {pressure} Pa")

    t_c = temperature - KELVIN_OFFSET
    p_w = 611.21 * math.exp((18.678 - t_c / 234.5) * (t_c / (257.14 + t_c)))
    if enhanced:
        p_w *= 1.0007 + 3.46e-6 * (pressure / 100.0)
    return p_w


def water_vapor_ratio(temperature: float, humidity: float, pressure: float) -> float:
    """水汽体积比 v = ψ/100 · p_w(T, p)/p"""
    if not 0.0 <= humidity <= 100.0:
        raise DomainError(f"相对湿度必须在 [0, 100] 内: {humidity}")
    if pressure <= 0:
        raise DomainError(f"气压必须为正: {pressure} Pa")
    return humidity / 100.0 * buck_saturation_pressure(temperature, pressure) / pressure


def absorption_coefficient(f: float, temperature: float = 296.0, humidity: float = 50.0,
                           pressure: float = 101325.0) -> float:
    """
    分子吸收系数 k(f, T, ψ, p)，单位 1/m

    Args:
        f: 载频 (Hz)，标称范围 0.1-1 THz
        temperature: 温度 (K)
        humidity: 相对湿度 (%)
        pressure: 大气压 (Pa)

    Raises:
        DomainError: 输入不符合物理意义
    """
    if f <= 0:
        raise DomainError(f"载频必须为正: {f} Hz")

    k = ABSORPTION_CONSTANTS
    v = water_vapor_ratio(temperature, humidity, pressure)
    wavenumber = f / (100.0 * SPEED_OF_LIGHT)  # cm^-1

    line1 = k['q1'] * v * (k['q2'] * v + k['q3']) / (
        (k['q4'] * v + k['q5']) ** 2 + (wavenumber - k['p1']) ** 2
    )
    line2 = k['q6'] * v * (k['q7'] * v + k['q8']) / (
        (k['q9'] * v + k['q10']) ** 2 + (wavenumber - k['p2']) ** 2
    )
    polynomial = k['c1'] * f ** 3 + k['c2'] * f ** 2 + k['c3'] * f + k['c4']
    # 拟合多项式在标称频段外可能为负
    return max(line1 + line2 + polynomial, 0.0)

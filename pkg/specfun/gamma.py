#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gamma 函数族
提供 Gamma、对数 Gamma、双 Gamma、误差函数以及上/下不完全 Gamma 函数，
其中上不完全 Gamma 支持负的非整数阶（THz 链路常数 B1 可能为负）
"""

import logging
import math
from typing import Union

import numpy as np
from scipy import special

from utils.errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# 连分式迭代参数
_CF_EPS = 1e-16
_CF_FPMIN = 1e-300
_CF_MAX_ITER = 2000


def _is_nonpositive_integer(x: complex) -> bool:
    """判断是否落在 Gamma 函数的极点上"""
    if isinstance(x, complex) and abs(x.imag) > 0.0:
        return False
    real = x.real if isinstance(x, complex) else float(x)
    return real <= 0.0 and real == math.floor(real)


def _scalar_or_array(values: np.ndarray, template) -> ArrayLike:
    """标量输入返回 float，数组输入返回 ndarray"""
    if np.ndim(template) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return values


def gamma_fn(x: float) -> float:
    """
    Gamma 函数 Γ(x)

    Raises:
        DomainError: x 为非正整数（极点）
    """
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma 函数在非正整数处有极点: x={x}")
    return float(special.gamma(x))


def log_gamma(z: complex) -> complex:
    """
    复平面上的对数 Gamma 函数（主分支）

    Raises:
        DomainError: z 为非正整数
    """
    if _is_nonpositive_integer(complex(z)):
        raise DomainError(f"对数 Gamma 在非正整数处有极点: z={z}")
    return complex(special.loggamma(complex(z)))


def digamma(x: float) -> float:
    """双 Gamma 函数 ψ(x)，仅接受正实数"""
    if x <= 0:
        raise DomainError(f"digamma 仅对正数定义: x={x}")
    return float(special.digamma(x))


def erf_fn(x: float) -> float:
    """误差函数"""
    return float(special.erf(x))


def lower_gamma(a: float, x: ArrayLike) -> ArrayLike:
    """
    下不完全 Gamma 函数 γ(a, x) = ∫_0^x t^{a-1} e^{-t} dt

    Args:
        a: 阶数，必须为正
        x: 自变量（标量或数组），非负

    Raises:
        DomainError: a ≤ 0 或 x < 0
    """
    if a <= 0:
        raise DomainError(f"下不完全 Gamma 要求 a > 0: a={a}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise DomainError("下不完全 Gamma 要求 x ≥ 0")
    values = special.gammainc(a, xs) * special.gamma(a)
    return _scalar_or_array(values, x)


def upper_gamma(a: float, x: ArrayLike) -> ArrayLike:
    """
    上不完全 Gamma 函数 Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt

    a > 0 时使用正则化函数；a ≤ 0 时，x ≥ 1 用连分式，
    x < 1 从 [0,1) 内的基准阶 a+⌈-a⌉ 向下递推到 a（基准阶为 0 时起点为 E1）

    Raises:
        DomainError: x < 0，或 a ≤ 0 且 x = 0（积分发散）
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0):
        raise DomainError("上不完全 Gamma 要求 x ≥ 0")

    if a > 0:
        values = special.gammaincc(a, xs) * special.gamma(a)
        return _scalar_or_array(values, x)

    if np.any(xs == 0):
        raise DomainError(f"a={a} ≤ 0 时 Γ(a, 0) 发散")

    values = np.exp(a * np.log(xs) - xs) * _negative_order_scaled(a, xs)
    return _scalar_or_array(values, x)


def weighted_upper_gamma(a: float, x: ArrayLike, power: float) -> ArrayLike:
    """
    x^{power}·Γ(a, x)，x > 0

    幂次与 Γ(a, x) 的 x^a·e^{-x} 因子在对数域合并，
    φ 很大时 B1 = μ1 - φ/α1 与 power = φ/α1 都很大，两者单独计算会溢出

    Raises:
        DomainError: x ≤ 0
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= 0):
        raise DomainError("weighted_upper_gamma 要求 x > 0")
    log_x = np.log(xs)
    if a > 0:
        with np.errstate(divide='ignore'):
            log_values = (power * log_x + np.log(special.gammaincc(a, xs))
                          + special.gammaln(a))
        values = np.exp(log_values)
    else:
        values = np.exp((a + power) * log_x - xs) * _negative_order_scaled(a, xs)
    return _scalar_or_array(values, x)


def _negative_order_scaled(a: float, x: np.ndarray) -> np.ndarray:
    """a ≤ 0 时的 R(a, x) = x^{-a}·e^{x}·Γ(a, x)"""
    values = np.empty_like(x)
    large = x >= 1.0
    if np.any(large):
        values[large] = _upper_gamma_continued_fraction(a, x[large])
    if np.any(~large):
        values[~large] = _upper_gamma_recurrence(a, x[~large])
    return values


def _upper_gamma_continued_fraction(a: float, x: np.ndarray) -> np.ndarray:
    """改进 Lentz 算法求 Γ(a,x)·x^{-a}·e^{x} 的连分式，适用于 x ≥ 1"""
    b = x + 1.0 - a
    c = np.full_like(x, 1.0 / _CF_FPMIN)
    d = 1.0 / b
    h = d.copy()
    active = np.ones_like(x, dtype=bool)

    for i in range(1, _CF_MAX_ITER + 1):
        an = -i * (i - a)
        b = b + 2.0
        d_new = an * d + b
        d_new = np.where(np.abs(d_new) < _CF_FPMIN, _CF_FPMIN, d_new)
        c_new = b + an / c
        c_new = np.where(np.abs(c_new) < _CF_FPMIN, _CF_FPMIN, c_new)
        d_new = 1.0 / d_new
        delta = d_new * c_new
        # 已收敛的元素保持不变
        h = np.where(active, h * delta, h)
        d = np.where(active, d_new, d)
        c = np.where(active, c_new, c)
        active &= np.abs(delta - 1.0) >= _CF_EPS
        if not np.any(active):
            break
    else:
        logger.warning(f"上不完全 Gamma 连分式未在 {_CF_MAX_ITER} 次迭代内收敛: a={a}")

    return h


def _upper_gamma_recurrence(a: float, x: np.ndarray) -> np.ndarray:
    """
    x < 1 时自基准阶向下递推
    Γ(j,x) = (Γ(j+1,x) - x^j e^{-x})/j 对 R(j) = x^{-j}e^{x}Γ(j,x) 写作 R(j) = (x·R(j+1) - 1)/j
    """
    steps = int(math.ceil(-a))
    base = a + steps
    if base == 0.0:
        # 整数阶从 Γ(0,x) = E1(x) 出发
        current = special.exp1(x) * np.exp(x)
    else:
        current = (special.gammaincc(base, x) * special.gamma(base)
                   * np.exp(x - base * np.log(x)))

    order = base
    for _ in range(steps):
        order -= 1.0
        current = (x * current - 1.0) / order
    return current

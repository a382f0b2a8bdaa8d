#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gauss 超几何函数 ₂F₁ 及其正则化形式
只处理实参数与实自变量 z < 1
"""

import math
from typing import List

from scipy import special

from utils.errors import DomainError

# |z| 超过该值时对负自变量做 Pfaff 变换
PFAFF_THRESHOLD = 0.5


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """
    Gauss 超几何函数 ₂F₁(a, b; c; z)

    z ≤ -0.5 时使用 Pfaff 变换
    ₂F₁(a,b;c;z) = (1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))，
    把自变量映射到 [1/3, 1) 内

    Raises:
        DomainError: z ≥ 1，或 c 为非正整数
    """
    if z >= 1.0:
        raise DomainError(f"₂F₁ 仅支持 z < 1: z={z}")
    if _is_nonpositive_integer(c):
        raise DomainError(f"c={c} 为非正整数，请使用 regularized_2f1")

    if z <= -PFAFF_THRESHOLD:
        w = z / (z - 1.0)
        return float((1.0 - z) ** (-a) * special.hyp2f1(a, c - b, c, w))
    return float(special.hyp2f1(a, b, c, z))


def regularized_2f1(a: float, b: float, c: float, z: float) -> float:
    """
    正则化超几何函数 ₂F̃₁(a, b; c; z) = ₂F₁(a, b; c; z) / Γ(c)

    c = -m 为非正整数时取极限形式
    (a)_{m+1} (b)_{m+1} / (m+1)! · z^{m+1} · ₂F₁(a+m+1, b+m+1; m+2; z)
    """
    if z >= 1.0:
        raise DomainError(f"₂F̃₁ 仅支持 z < 1: z={z}")

    if _is_nonpositive_integer(c):
        m = int(-c)
        coeff = special.poch(a, m + 1) * special.poch(b, m + 1) / math.factorial(m + 1)
        return float(coeff * z ** (m + 1) * gauss_2f1(a + m + 1, b + m + 1, m + 2, z))

    return gauss_2f1(a, b, c, z) * float(special.rgamma(c))


def delta_params(k: int, a: float) -> List[float]:
    """
    参数序列 Δ(k, a) = [a/k, (a+1)/k, ..., (a+k-1)/k]

    Raises:
        DomainError: k < 1
    """
    if k < 1:
        raise DomainError(f"Δ(k, a) 要求 k ≥ 1: k={k}")
    return [(a + j) / k for j in range(k)]

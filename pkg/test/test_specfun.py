#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
特殊函数测试用例
以 mpmath 高精度结果为参照
"""

import math
import os
import sys

import mpmath
import numpy as np
import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from specfun.gamma import digamma, gamma_fn, log_gamma, lower_gamma, upper_gamma
from specfun.hypergeometric import delta_params, gauss_2f1, regularized_2f1
from utils.errors import DomainError


class TestGamma:
    """Gamma 函数族测试"""

    def setup_method(self):
        mpmath.mp.dps = 30

    def test_gamma_poles(self):
        """非正整数处应报定义域错误"""
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(DomainError):
                gamma_fn(x)
        with pytest.raises(DomainError):
            log_gamma(-2)

    def test_gamma_values(self):
        """Γ(5) = 24，Γ(1/2) = √π"""
        assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14), "Γ(5) 应为 24"
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14), "Γ(1/2) 应为 √π"
        assert log_gamma(10.0).real == pytest.approx(math.log(362880.0), rel=1e-14)

    def test_digamma(self):
        """ψ(1) = -γ_E"""
        assert digamma(1.0) == pytest.approx(-float(mpmath.euler), rel=1e-14)
        with pytest.raises(DomainError):
            digamma(-0.5)

    @pytest.mark.parametrize("a,x", [
        (-2.7, 0.05), (-1.3, 0.4), (-0.5, 0.9), (-3.2, 1.5),
        (-0.25, 12.0), (-4.6, 30.0), (-2.0, 0.3), (0.0, 0.7), (-1.0, 5.0),
    ])
    def test_upper_gamma_negative_order(self, a, x):
        """负阶与零阶上不完全 Gamma 与 mpmath 一致"""
        value = float(upper_gamma(a, x))
        reference = float(mpmath.gammainc(a, x))
        assert value == pytest.approx(reference, rel=1e-10), \
            f"Γ({a}, {x}) 偏差过大: {value} vs {reference}"

    @pytest.mark.parametrize("a,x", [(0.5, 0.01), (1.3, 2.0), (4.0, 10.0), (2.5, 0.3)])
    def test_upper_lower_sum(self, a, x):
        """γ(a,x) + Γ(a,x) = Γ(a)"""
        total = float(lower_gamma(a, x)) + float(upper_gamma(a, x))
        assert total == pytest.approx(math.gamma(a), rel=1e-13), "上下不完全 Gamma 之和应为 Γ(a)"

    def test_array_input(self):
        """数组输入返回同形数组"""
        xs = np.array([0.1, 0.5, 2.0, 8.0])
        values = upper_gamma(-1.5, xs)
        assert isinstance(values, np.ndarray) and values.shape == xs.shape
        for x, v in zip(xs, values):
            assert v == pytest.approx(float(mpmath.gammainc(-1.5, x)), rel=1e-10)

    def test_incomplete_gamma_domain(self):
        """x < 0 或 Γ(a≤0, 0) 应报错"""
        with pytest.raises(DomainError):
            upper_gamma(1.0, -0.1)
        with pytest.raises(DomainError):
            upper_gamma(-0.5, 0.0)
        with pytest.raises(DomainError):
            lower_gamma(0.0, 1.0)


class TestHypergeometric:
    """Gauss 超几何函数测试"""

    def setup_method(self):
        mpmath.mp.dps = 30

    @pytest.mark.parametrize("a,b,c,z", [
        (0.5, 1.5, 2.5, 0.3), (1.2, 2.7, 3.1, -0.4), (2.0, 3.5, 4.2, -5.0),
        (0.3, 4.1, 1.7, -20.0), (3.3, 1.1, 2.0, 0.9),
    ])
    def test_gauss_2f1_against_mpmath(self, a, b, c, z):
        value = gauss_2f1(a, b, c, z)
        reference = float(mpmath.hyp2f1(a, b, c, z))
        assert value == pytest.approx(reference, rel=1e-10), f"₂F₁({a},{b};{c};{z}) 偏差过大"

    @pytest.mark.parametrize("a,b,c,z", [(1.5, 2.5, -1.0, -0.6), (0.7, 1.9, 0.0, -0.6), (2.1, 0.4, 3.3, -0.2)])
    def test_regularized_2f1(self, a, b, c, z):
        """正则化形式在 c 为非正整数时取级数极限"""
        value = regularized_2f1(a, b, c, z)
        start = int(-c) + 1 if c <= 0 else 0
        reference = float(mpmath.nsum(
            lambda k: mpmath.rf(a, k) * mpmath.rf(b, k) * mpmath.power(z, k)
            / (mpmath.gamma(c + k) * mpmath.factorial(k)),
            [start, mpmath.inf],
        ))
        assert value == pytest.approx(reference, rel=1e-9), f"₂F̃₁({a},{b};{c};{z}) 偏差过大"

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_2f1(1.0, 1.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            gauss_2f1(1.0, 1.0, -2.0, 0.5)

    def test_delta_params(self):
        """Δ(3, 1) = [1/3, 2/3, 1]"""
        assert delta_params(3, 1.0) == pytest.approx([1 / 3, 2 / 3, 1.0])
        with pytest.raises(DomainError):
            delta_params(0, 1.0)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

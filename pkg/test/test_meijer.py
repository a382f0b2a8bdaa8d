#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Meijer G 与 Mellin-Barnes 构造器测试用例
恒等式与 mpmath.meijerg 高精度围道结果为参照
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

from specfun.meijer import MeijerSpec, meijer_g
from specfun.mellin import (
    as_fraction, exp_kernel, lower_gamma_kernel, mellin_product, rational_kernel,
    upper_gamma_kernel,
)
from utils.errors import DomainError, MeijerGEvaluationError


class TestMeijerIdentities:
    """初等函数恒等式"""

    @pytest.mark.parametrize("z", [0.01, 0.7, 3.0, 25.0])
    def test_exponential(self, z):
        """G^{1,0}_{0,1}(z | -; 0) = e^{-z}"""
        spec = MeijerSpec(m=1, n=0, p=0, q=1, a=(), b=(0.0,))
        assert meijer_g(spec, z).value == pytest.approx(math.exp(-z), rel=1e-10)

    @pytest.mark.parametrize("a,z", [(0.5, 0.2), (1.7, 2.0), (3.2, 9.0)])
    def test_upper_incomplete_gamma(self, a, z):
        """G^{2,0}_{1,2}(z | 1; a, 0) = Γ(a, z)"""
        spec = MeijerSpec(m=2, n=0, p=1, q=2, a=(1.0,), b=(a, 0.0))
        reference = float(mpmath.gammainc(a, z))
        assert meijer_g(spec, z).value == pytest.approx(reference, rel=1e-10), \
            f"Γ({a}, {z}) 恒等式不成立"

    @pytest.mark.parametrize("a,z", [(0.5, 0.3), (2.0, 1.0), (1.4, 12.0)])
    def test_power(self, a, z):
        """G^{1,1}_{1,1}(z | 1-a; 0) = Γ(a)(1+z)^{-a}"""
        spec = MeijerSpec(m=1, n=1, p=1, q=1, a=(1.0 - a,), b=(0.0,))
        reference = math.gamma(a) * (1.0 + z) ** (-a)
        assert meijer_g(spec, z).value == pytest.approx(reference, rel=1e-10)


class TestMeijerRandomized:
    """随机参数与 mpmath 比较"""

    def setup_method(self):
        mpmath.mp.dps = 30
        self.rng = np.random.default_rng(20240501)

    def test_random_calls(self):
        """10 组随机 G^{2,1}_{1,3} 调用与 mpmath 相对偏差小于 1e-8"""
        for _ in range(10):
            a1 = self.rng.uniform(0.05, 0.8)
            b = (self.rng.uniform(0.3, 2.0), self.rng.uniform(0.3, 2.0), self.rng.uniform(0.0, 1.0))
            z = float(10 ** self.rng.uniform(-1.5, 1.0))
            spec = MeijerSpec(m=2, n=1, p=1, q=3, a=(a1,), b=b)
            groups_a, groups_b = spec.grouped()
            reference = float(mpmath.meijerg(groups_a, groups_b, z))
            value = meijer_g(spec, z).value
            assert value == pytest.approx(reference, rel=1e-8), \
                f"G(z={z:.4g}; a={a1:.3f}; b={b}) 与 mpmath 不一致: {value} vs {reference}"

    def test_spec_validation(self):
        """参数个数与阶数不符时报错"""
        with pytest.raises(DomainError):
            MeijerSpec(m=1, n=0, p=1, q=1, a=(), b=(0.0,))
        with pytest.raises(DomainError):
            MeijerSpec(m=3, n=0, p=0, q=2, a=(), b=(0.0, 1.0))
        with pytest.raises(DomainError):
            meijer_g(MeijerSpec(m=1, n=0, p=0, q=1, a=(), b=(0.0,)), -1.0)

    def test_duplicate_poles_perturbed(self):
        """前 m 个 b 重合时自动扰动"""
        spec = MeijerSpec(m=2, n=0, p=0, q=2, a=(), b=(0.5, 0.5))
        assert spec.b[0] != spec.b[1], "重合参数应被扰动"
        assert abs(spec.b[1] - spec.b[0]) < 1e-6

    def test_unseparable_poles(self):
        """a_k - 1 ≥ b_j 时加上错位极点的留数"""
        spec = MeijerSpec(m=1, n=1, p=1, q=1, a=(2.0,), b=(0.5,))
        result = meijer_g(spec, 1.0)
        assert result.contour == 'vertical+residue'
        assert result.value == pytest.approx(-5.013256549262, rel=1e-8)
        expected = float(mpmath.meijerg([[2.0], []], [[0.5], []], 1.0))
        assert result.value == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("z", [0.3, 2.5])
    def test_several_misplaced_poles(self, z):
        """G^{1,1}_{1,1}(z | a; b) = Γ(1-a+b)·z^b·(1+z)^{a-b-1}，a - 1 - b 跨过两个极点"""
        a, b = 3.2, 0.4
        spec = MeijerSpec(m=1, n=1, p=1, q=1, a=(a,), b=(b,))
        expected = math.gamma(1.0 - a + b) * z ** b * (1.0 + z) ** (a - b - 1.0)
        assert meijer_g(spec, z).value == pytest.approx(expected, rel=1e-8)

    def test_unseparable_bent_contour(self):
        """δ ≤ 0 的弯折围道同样加留数"""
        spec = MeijerSpec(m=1, n=1, p=2, q=2, a=(2.3, 0.2), b=(0.6, -0.4))
        expected = float(mpmath.meijerg([[2.3], [0.2]], [[0.6], [-0.4]], 0.4))
        assert meijer_g(spec, 0.4).value == pytest.approx(expected, rel=1e-7)

    def test_coincident_poles_undefined(self):
        """a 极点与 b 极点重合时函数无定义"""
        spec = MeijerSpec(m=1, n=1, p=1, q=1, a=(2.5,), b=(0.5,))
        with pytest.raises(MeijerGEvaluationError):
            meijer_g(spec, 1.0)


class TestMellinProduct:
    """Mellin 乘积积分测试"""

    def setup_method(self):
        mpmath.mp.dps = 30

    def test_as_fraction(self):
        assert as_fraction(0.5).denominator == 2
        assert as_fraction(2.0 / 3.0).numerator == 2
        with pytest.raises(DomainError):
            as_fraction(math.pi)

    def test_exp_upper_gamma(self):
        """∫ t^{s-1} e^{-qt} Γ(a, κt) dt 与 mpmath 数值积分一致"""
        s, q, a, kappa = 1.7, 0.8, -0.6, 2.3
        value = mellin_product(exp_kernel(q), upper_gamma_kernel(a, kappa), s)
        reference = float(mpmath.quad(
            lambda t: t ** (s - 1) * mpmath.exp(-q * t) * mpmath.gammainc(a, kappa * t), [0, 1, mpmath.inf]
        ))
        assert value == pytest.approx(reference, rel=1e-8)

    def test_rational_power_kernel(self):
        """有理幂次核 exp(-t^{3/2}) 与 γ(a, λt) 的乘积积分"""
        s, a, lam = 0.9, 1.5, 0.7
        value = mellin_product(exp_kernel(1.0, 1.5), lower_gamma_kernel(a, lam), s)
        reference = float(mpmath.quad(
            lambda t: t ** (s - 1) * mpmath.exp(-t ** 1.5) * mpmath.gammainc(a, 0, lam * t),
            [0, 1, mpmath.inf],
        ))
        assert value == pytest.approx(reference, rel=1e-8)

    def test_rational_kernel(self):
        """∫ e^{-t}/(1+t) dt = e·E1(1)"""
        value = mellin_product(exp_kernel(1.0), rational_kernel(1.0), 1.0)
        assert value == pytest.approx(math.e * float(mpmath.e1(1)), rel=1e-9)

    def test_divergent_product(self):
        """基本带为空时报定义域错误"""
        with pytest.raises(DomainError):
            mellin_product(rational_kernel(1.0), rational_kernel(1.0), 3.0)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

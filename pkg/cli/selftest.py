#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自检
在桌面规模上运行闭式 / 数值积分 / 蒙特卡罗三方交叉校验，
每项给出 PASS/FAIL 与实测偏差
"""

import logging
import math
import time
from dataclasses import dataclass
from functools import partial
from typing import Callable, List, Tuple

import mpmath

from analytic.ber import DBPSK, ber_relay_inid, ber_rf
from analytic.capacity import capacity_relay_inid
from analytic.moments import moment_iid, moment_inid
from analytic.outage import outage_exact
from analytic.quadrature import (
    ber_by_quadrature, capacity_by_quadrature, moment_by_quadrature, outage_by_quadrature,
)
from channel.fading import FadingParams
from channel.pointing import PointingConfig, pointing_params
from channel.scenario import Scenario
from cli.config import build_from_values, resolve_values
from mc.simulator import mc_mean_snr
from specfun.gamma import upper_gamma
from specfun.meijer import MeijerSpec, meijer_g
from utils.errors import DomainError, EvaluationError

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """单项自检结果"""
    name: str
    value: float
    reference: float
    discrepancy: float
    tolerance: float
    passed: bool
    detail: str = ''

    def line(self) -> str:
        status = 'PASS' if self.passed else 'FAIL'
        text = (f"[{status}] {self.name}: 值={self.value:.10g}, 参照={self.reference:.10g}, "
                f"偏差={self.discrepancy:.3g} (容差 {self.tolerance:.1g})")
        return f"{text} {self.detail}".rstrip()


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def _fig3b_scenario() -> Scenario:
    values = resolve_values({'thz.alpha': 2.0, 'thz.mu': 4.0, 'rf.alpha': 2.0, 'rf.mu': 1.0,
                             'pointing.sigma_s_cm': 15.0, 'pointing.beamwidth_ratio': 6.0})
    return build_from_values(values)[0]


def _iid_scenario() -> Scenario:
    fading = FadingParams(alpha=2.0, mu=2.0)
    return Scenario.from_snr(fading, fading, PointingConfig.from_ratio(6.0, sigma_s=0.15),
                             gamma0_1=1e4, gamma0_2=30.0)


def _integer_rf_scenario() -> Scenario:
    return Scenario.from_snr(FadingParams(alpha=2.0, mu=1.3), FadingParams(alpha=2.0, mu=2.0),
                             PointingConfig.from_ratio(6.0, sigma_s=0.08),
                             gamma0_1=3e3, gamma0_2=20.0)


def check_pointing() -> List[CheckResult]:
    results = []
    for sigma_s, expected in ((0.08, 28.9576), (0.15, 8.2368)):
        params = pointing_params(PointingConfig.from_ratio(6.0, r_1=0.1, sigma_s=sigma_s))
        err = _relative(params.phi, expected)
        results.append(CheckResult(f"pointing φ (σs={sigma_s * 100:g} cm)", params.phi,
                                   expected, err, 1e-3, err <= 1e-3))
    params = pointing_params(PointingConfig.from_ratio(6.0))
    err = abs(params.s0 - 0.054)
    results.append(CheckResult("pointing S0", params.s0, 0.054, err, 1e-3, err <= 1e-3))
    return results


def check_special_functions() -> List[CheckResult]:
    results = []
    for a, x in ((-1.7, 0.3), (-0.5, 4.0), (2.5, 1.2)):
        value = float(upper_gamma(a, x))
        reference = float(mpmath.gammainc(a, x))
        err = _relative(value, reference)
        results.append(CheckResult(f"Γ({a:g}, {x:g}) vs mpmath", value, reference, err,
                                   1e-10, err <= 1e-10))
    # G^{1,0}_{0,1}(z | -; 0) = e^{-z}
    z = 2.3
    value = meijer_g(MeijerSpec(m=1, n=0, p=0, q=1, a=(), b=(0.0,)), z).value
    err = _relative(value, math.exp(-z))
    results.append(CheckResult("Meijer G e^{-z} 恒等式", value, math.exp(-z), err, 1e-10, err <= 1e-10))
    return results


def check_normalization() -> List[CheckResult]:
    scenario = _integer_rf_scenario()
    results = []
    for link in ('thz', 'rf'):
        value = moment_by_quadrature(scenario, 0.0, link=link)
        err = abs(value - 1.0)
        results.append(CheckResult(f"∫f ({link})", value, 1.0, err, 1e-8, err <= 1e-8))
    return results


def check_moments() -> List[CheckResult]:
    results = []
    scenario = _fig3b_scenario()
    for n in (1.0, 2.0):
        value = moment_inid(scenario, n)
        reference = moment_by_quadrature(scenario, n)
        err = _relative(value, reference)
        results.append(CheckResult(f"moment_inid n={n:g} vs 积分", value, reference, err,
                                   1e-4, err <= 1e-4))
    iid = _iid_scenario()
    value = moment_iid(iid, 1.0)
    reference = moment_by_quadrature(iid, 1.0)
    err = _relative(value, reference)
    results.append(CheckResult("moment_iid n=1 vs 积分", value, reference, err, 1e-4, err <= 1e-4))
    return results


def check_outage() -> List[CheckResult]:
    scenario = _integer_rf_scenario()
    gamma_th = 10 ** 0.4
    value = outage_exact(scenario, gamma_th)
    reference = outage_by_quadrature(scenario, gamma_th)
    err = _relative(value, reference)
    return [CheckResult("outage_exact vs 积分", value, reference, err, 1e-6, err <= 1e-6)]


def check_capacity_ber() -> List[CheckResult]:
    scenario = _integer_rf_scenario()
    results = []
    value = capacity_relay_inid(scenario)
    reference = capacity_by_quadrature(scenario)
    err = _relative(value, reference)
    results.append(CheckResult("capacity_relay_inid vs 积分", value, reference, err, 0.02, err <= 0.02))

    value = ber_relay_inid(scenario, DBPSK)
    reference = ber_by_quadrature(scenario, DBPSK)
    err = _relative(value, reference)
    results.append(CheckResult("ber_relay_inid vs 积分", value, reference, err, 0.05, err <= 0.05))

    rayleigh = Scenario.from_snr(FadingParams(), FadingParams(), PointingConfig(), 1e3, 50.0)
    value = ber_rf(rayleigh, DBPSK)
    reference = 0.5 / (1.0 + 50.0)
    err = _relative(value, reference)
    results.append(CheckResult("Rayleigh DBPSK ½(1+γ2⁰)⁻¹", value, reference, err, 1e-8, err <= 1e-8))
    return results


def check_monte_carlo(samples: int = 200_000, seed: int = 1) -> List[CheckResult]:
    scenario = _fig3b_scenario()
    reference = moment_by_quadrature(scenario, 1.0)
    estimate = mc_mean_snr(scenario, samples, seed)
    err = abs(estimate.mean - reference)
    tolerance = 4.0 * estimate.std_error
    return [CheckResult("蒙特卡罗平均信噪比 vs 积分", estimate.mean, reference, err, tolerance,
                        err <= tolerance, detail=f"(n={samples}, seed={seed})")]


CHECKS: List[Tuple[str, Callable[[], List[CheckResult]]]] = [
    ('pointing', check_pointing),
    ('specfun', check_special_functions),
    ('normalization', check_normalization),
    ('moments', check_moments),
    ('outage', check_outage),
    ('capacity_ber', check_capacity_ber),
    ('monte_carlo', check_monte_carlo),
]


def run_selftest(mc_samples: int = 200_000, seed: int = 1) -> List[CheckResult]:
    """运行全部自检；某组检查抛出异常时记为 FAIL 并继续"""
    results: List[CheckResult] = []
    checks = CHECKS[:-1] + [('monte_carlo', partial(check_monte_carlo, mc_samples, seed))]
    for name, check in checks:
        start = time.time()
        try:
            results.extend(check())
        except (DomainError, EvaluationError) as e:
            logger.error(f"自检 {name} 失败: {e}")
            results.append(CheckResult(name, math.nan, math.nan, math.inf, 0.0, False, detail=str(e)))
        logger.info(f"自检 {name} 完成，用时 {time.time() - start:.2f}s")
    return results

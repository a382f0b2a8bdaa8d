#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
THz-RF 双跳译码转发场景
场景记录不可变；可由链路预算构造，也可直接按无衰落信噪比构造。
端到端信噪比 γ = min(γ1, γ2)
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np

from channel.fading import (
    DerivedConstants, FadingParams, derive_constants,
    snr_cdf_rf, snr_cdf_thz, snr_ccdf_rf, snr_ccdf_thz, snr_pdf_rf, snr_pdf_thz,
)
from channel.link_budget import (
    RfLinkBudget, ThzLinkBudget, faded_free_snr_rf, faded_free_snr_thz,
)
from channel.pointing import PointingConfig, PointingParams, pointing_params
from utils.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class Scenario:
    """双跳场景：THz 第一跳（衰落 + 指向误差）与 RF 第二跳"""
    thz_fading: FadingParams
    pointing: PointingParams
    rf_fading: FadingParams
    derived: DerivedConstants
    epsilon: float                                    # α2/α1，构造时写入
    thz_budget: Optional[ThzLinkBudget] = None
    rf_budget: Optional[RfLinkBudget] = None
    pointing_config: Optional[PointingConfig] = None

    def __post_init__(self):
        if abs(self.epsilon * self.thz_fading.alpha - self.rf_fading.alpha) > 1e-12 * self.rf_fading.alpha:
            raise DomainError(
                f"epsilon={self.epsilon} 与 α2/α1={self.rf_fading.alpha / self.thz_fading.alpha} 不一致"
            )

    @property
    def thz(self) -> Tuple[FadingParams, PointingParams, Optional[ThzLinkBudget]]:
        return self.thz_fading, self.pointing, self.thz_budget

    @property
    def rf(self) -> Tuple[FadingParams, Optional[RfLinkBudget]]:
        return self.rf_fading, self.rf_budget

    @property
    def gamma0_1(self) -> float:
        return self.derived.gamma0_1

    @property
    def gamma0_2(self) -> float:
        return self.derived.gamma0_2

    @property
    def is_iid(self) -> bool:
        """两跳衰落参数相同（α1=α2, μ1=μ2）"""
        return (self.thz_fading.alpha == self.rf_fading.alpha
                and self.thz_fading.mu == self.rf_fading.mu)

    @classmethod
    def from_snr(cls, thz_fading: FadingParams, rf_fading: FadingParams,
                 pointing: Union[PointingParams, PointingConfig],
                 gamma0_1: float, gamma0_2: float) -> 'Scenario':
        """按给定的无衰落信噪比（线性）构造场景"""
        config = pointing if isinstance(pointing, PointingConfig) else None
        params = pointing_params(pointing) if config is not None else pointing
        derived = derive_constants(thz_fading, params, rf_fading, gamma0_1, gamma0_2)
        return cls(
            thz_fading=thz_fading,
            pointing=params,
            rf_fading=rf_fading,
            derived=derived,
            epsilon=rf_fading.alpha / thz_fading.alpha,
            pointing_config=config,
        )

    def with_snr(self, gamma0_1: float, gamma0_2: float) -> 'Scenario':
        derived = derive_constants(self.thz_fading, self.pointing, self.rf_fading, gamma0_1, gamma0_2)
        return replace(self, derived=derived, thz_budget=None, rf_budget=None)

    def with_tx_power(self, tx_power_dbm: float) -> 'Scenario':
        """修改源端与中继发射功率（中继功率等于源端功率）"""
        thz_budget, rf_budget = self._require_budgets('tx_power')
        return build_scenario(self.thz_fading, self.rf_fading, self._require_pointing_config(),
                              thz_budget.with_tx_power(tx_power_dbm),
                              rf_budget.with_tx_power(tx_power_dbm))

    def with_distances(self, d1: float, d2: float) -> 'Scenario':
        thz_budget, rf_budget = self._require_budgets('distance')
        return build_scenario(self.thz_fading, self.rf_fading, self._require_pointing_config(),
                              thz_budget.with_distance(d1), rf_budget.with_distance(d2))

    def with_beamwidth_ratio(self, ratio: float) -> 'Scenario':
        config = self._require_pointing_config().with_ratio(ratio)
        params = pointing_params(config)
        derived = derive_constants(self.thz_fading, params, self.rf_fading,
                                   self.gamma0_1, self.gamma0_2)
        return replace(self, pointing=params, pointing_config=config, derived=derived)

    def with_fading(self, thz_fading: Optional[FadingParams] = None,
                    rf_fading: Optional[FadingParams] = None) -> 'Scenario':
        thz_fading = thz_fading or self.thz_fading
        rf_fading = rf_fading or self.rf_fading
        derived = derive_constants(thz_fading, self.pointing, rf_fading, self.gamma0_1, self.gamma0_2)
        return replace(self, thz_fading=thz_fading, rf_fading=rf_fading, derived=derived,
                       epsilon=rf_fading.alpha / thz_fading.alpha)

    def direct_links(self) -> Tuple['Scenario', 'Scenario']:
        """
        直连对比场景：THz 与 RF 各自跨越 d1+d2 的总距离

        Returns:
            (THz 直连场景, RF 直连场景)，分别只使用其 THz 跳或 RF 跳
        """
        thz_budget, rf_budget = self._require_budgets('direct link')
        total = thz_budget.d + rf_budget.d
        return (self.with_distances(total, rf_budget.d),
                self.with_distances(thz_budget.d, total))

    def _require_budgets(self, what: str) -> Tuple[ThzLinkBudget, RfLinkBudget]:
        if self.thz_budget is None or self.rf_budget is None:
            raise ConfigError(f"场景由信噪比直接构造，无链路预算可修改 ({what})", key=what)
        return self.thz_budget, self.rf_budget

    def _require_pointing_config(self) -> PointingConfig:
        if self.pointing_config is None:
            raise ConfigError("场景缺少指向误差几何配置", key='pointing')
        return self.pointing_config

    # 单跳分布
    def thz_cdf(self, gamma: ArrayLike) -> ArrayLike:
        return snr_cdf_thz(gamma, self.derived, self.thz_fading)

    def thz_pdf(self, gamma: ArrayLike) -> ArrayLike:
        return snr_pdf_thz(gamma, self.derived, self.thz_fading)

    def rf_cdf(self, gamma: ArrayLike) -> ArrayLike:
        return snr_cdf_rf(gamma, self.derived, self.rf_fading)

    def rf_pdf(self, gamma: ArrayLike) -> ArrayLike:
        return snr_pdf_rf(gamma, self.derived, self.rf_fading)

    def cdf(self, gamma: ArrayLike) -> ArrayLike:
        return e2e_cdf(gamma, self)

    def pdf(self, gamma: ArrayLike) -> ArrayLike:
        return e2e_pdf(gamma, self)

    def describe(self) -> str:
        """单行场景摘要"""
        return (f"α1={self.thz_fading.alpha:g}, μ1={self.thz_fading.mu:g}, "
                f"α2={self.rf_fading.alpha:g}, μ2={self.rf_fading.mu:g}, "
                f"φ={self.pointing.phi:.4f}, S0={self.pointing.s0:.4f}, "
                f"γ1⁰={10 * np.log10(self.gamma0_1):.2f} dB, γ2⁰={10 * np.log10(self.gamma0_2):.2f} dB")


def build_scenario(thz_fading: FadingParams, rf_fading: FadingParams,
                   pointing: PointingConfig, thz_budget: ThzLinkBudget,
                   rf_budget: RfLinkBudget) -> Scenario:
    """由链路预算构造场景"""
    params = pointing_params(pointing)
    gamma0_1 = faded_free_snr_thz(thz_budget)
    gamma0_2 = faded_free_snr_rf(rf_budget)
    logger.debug(f"构造场景: γ1⁰={gamma0_1:.4g}, γ2⁰={gamma0_2:.4g}, φ={params.phi:.4f}")
    return Scenario(
        thz_fading=thz_fading,
        pointing=params,
        rf_fading=rf_fading,
        derived=derive_constants(thz_fading, params, rf_fading, gamma0_1, gamma0_2),
        epsilon=rf_fading.alpha / thz_fading.alpha,
        thz_budget=thz_budget,
        rf_budget=rf_budget,
        pointing_config=pointing,
    )


def e2e_cdf(gamma: ArrayLike, scenario: Scenario) -> ArrayLike:
    """端到端分布函数 F = F1 + F2 - F1·F2"""
    f1 = snr_cdf_thz(gamma, scenario.derived, scenario.thz_fading)
    f2 = snr_cdf_rf(gamma, scenario.derived, scenario.rf_fading)
    return f1 + f2 - f1 * f2


def e2e_ccdf(gamma: ArrayLike, scenario: Scenario) -> ArrayLike:
    """端到端互补分布函数 (1-F1)(1-F2)"""
    return (snr_ccdf_thz(gamma, scenario.derived, scenario.thz_fading)
            * snr_ccdf_rf(gamma, scenario.derived, scenario.rf_fading))


def e2e_pdf(gamma: ArrayLike, scenario: Scenario) -> ArrayLike:
    """端到端概率密度 f = f1 + f2 - f1·F2 - F1·f2 = f1(1-F2) + f2(1-F1)"""
    consts = scenario.derived
    return (snr_pdf_thz(gamma, consts, scenario.thz_fading)
            * snr_ccdf_rf(gamma, consts, scenario.rf_fading)
            + snr_pdf_rf(gamma, consts, scenario.rf_fading)
            * snr_ccdf_thz(gamma, consts, scenario.thz_fading))

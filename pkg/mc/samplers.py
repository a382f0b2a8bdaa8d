#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信道采样器
α-μ 包络经 Gamma 变量变换得到；指向误差按物理模型采样：
径向偏移 r（E[r²] = σ_s²）对应增益 S0·exp(-2r²/w_zeq²)
"""

import numpy as np

from channel.fading import FadingParams
from channel.pointing import PointingParams
from channel.scenario import Scenario


def sample_alpha_mu(fading: FadingParams, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """α-μ 包络 Ω·(G/μ)^{1/α}，G ~ Gamma(μ, 1)"""
    g = rng.gamma(shape=fading.mu, scale=1.0, size=size)
    return fading.omega * (g / fading.mu) ** (1.0 / fading.alpha)


def sample_radial_offset(sigma_s: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """二维高斯偏移的模，每个分量方差 σ_s²/2"""
    offsets = rng.normal(0.0, sigma_s / np.sqrt(2.0), size=(size, 2))
    return np.hypot(offsets[:, 0], offsets[:, 1])


def pointing_gain(r: np.ndarray, params: PointingParams) -> np.ndarray:
    """偏移 r 处的收集功率比例 S0·exp(-2r²/w_zeq²)"""
    return params.s0 * np.exp(-2.0 * np.asarray(r) ** 2 / params.w_zeq ** 2)


def sample_pointing(params: PointingParams, sigma_s: float, rng: np.random.Generator,
                    size: int = 1) -> np.ndarray:
    """指向误差增益，取值 (0, S0]"""
    return pointing_gain(sample_radial_offset(sigma_s, rng, size), params)


def pointing_sigma(params: PointingParams) -> float:
    """由 φ = w_zeq²/(2σ_s²) 反求 σ_s"""
    return params.w_zeq / np.sqrt(2.0 * params.phi)


def sample_thz_snr(scenario: Scenario, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """γ1 = γ1⁰·(h_f·h_p)²"""
    sigma_s = (scenario.pointing_config.sigma_s if scenario.pointing_config is not None
               else pointing_sigma(scenario.pointing))
    h_f = sample_alpha_mu(scenario.thz_fading, rng, size)
    h_p = sample_pointing(scenario.pointing, sigma_s, rng, size)
    return scenario.gamma0_1 * (h_f * h_p) ** 2


def sample_rf_snr(scenario: Scenario, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """γ2 = γ2⁰·h_f²"""
    return scenario.gamma0_2 * sample_alpha_mu(scenario.rf_fading, rng, size) ** 2


def sample_e2e_snr(scenario: Scenario, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """端到端信噪比 min(γ1, γ2)，两跳独立采样"""
    return np.minimum(sample_thz_snr(scenario, rng, size), sample_rf_snr(scenario, rng, size))

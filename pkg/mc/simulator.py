#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡罗仿真
每个子流独立累计均值与二阶中心矩，按子流序号合并，
因此相同 (seed, n_streams, n) 的结果与线程调度无关、逐位一致。
误码率采用逐次条件误码率 Γ(p, qγ)/(2Γ(p)) 取平均
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from scipy import special

from analytic.ber import DBPSK, Modulation
from channel.scenario import Scenario
from mc.rng import DEFAULT_STREAMS, check_seed, spawn_streams, split_counts
from mc.samplers import sample_e2e_snr, sample_rf_snr, sample_thz_snr
from utils.errors import DomainError

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10_000
BLOCK_SIZE = 1 << 18
Z_95 = 1.959963984540054

Sampler = Callable[[np.random.Generator, int], np.ndarray]
Statistic = Callable[[np.ndarray], np.ndarray]


@dataclass
class McEstimate:
    """蒙特卡罗估计值及 95% 正态近似置信区间"""
    mean: float
    ci_low: float
    ci_high: float
    n_samples: int
    seed: int
    n_streams: int
    std_error: float = 0.0

    def contains(self, value: float) -> bool:
        return self.ci_low <= value <= self.ci_high

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class _Moments:
    """单个子流的样本数、均值与二阶中心矩"""
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add_block(self, values: np.ndarray) -> None:
        n_b = values.size
        if n_b == 0:
            return
        mean_b = float(np.mean(values))
        m2_b = float(np.sum((values - mean_b) ** 2))
        self.merge(_Moments(n_b, mean_b, m2_b))

    def merge(self, other: '_Moments') -> None:
        if other.count == 0:
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / total
        self.m2 += other.m2 + delta ** 2 * self.count * other.count / total
        self.count = total


def _run_stream(rng: np.random.Generator, count: int, sampler: Sampler,
                statistic: Statistic) -> _Moments:
    moments = _Moments()
    remaining = count
    while remaining > 0:
        size = min(BLOCK_SIZE, remaining)
        moments.add_block(statistic(sampler(rng, size)))
        remaining -= size
    return moments


def run_monte_carlo(sampler: Sampler, statistic: Statistic, n: int, seed: int,
                    n_streams: int = DEFAULT_STREAMS, threads: int = 1,
                    label: str = 'mc') -> McEstimate:
    """
    通用蒙特卡罗估计

    Args:
        sampler: (rng, size) -> 信噪比样本
        statistic: 样本 -> 逐次统计量
        n: 总样本数
        seed: 64 位种子
        n_streams: 子流数
        threads: 并行线程数，不影响结果

    Raises:
        DomainError: 样本数少于 10⁴
    """
    if n < MIN_SAMPLES:
        raise DomainError(f"蒙特卡罗样本数至少为 {MIN_SAMPLES}: n={n}")
    seed = check_seed(seed)
    streams = spawn_streams(seed, n_streams)
    counts = split_counts(n, n_streams)

    start = time.time()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials: List[_Moments] = list(pool.map(
                lambda args: _run_stream(args[0], args[1], sampler, statistic),
                zip(streams, counts),
            ))
    else:
        partials = [_run_stream(rng, c, sampler, statistic) for rng, c in zip(streams, counts)]

    total = _Moments()
    for index, partial in enumerate(partials):
        logger.debug(f"{label} 子流 {index}: n={partial.count}, 均值={partial.mean:.6g}")
        total.merge(partial)

    variance = total.m2 / (total.count - 1) if total.count > 1 else 0.0
    std_error = math.sqrt(variance / total.count)
    half = Z_95 * std_error
    logger.debug(f"{label}: 均值={total.mean:.6g} ± {half:.3g}, 用时 {time.time() - start:.2f}s")
    return McEstimate(mean=total.mean, ci_low=total.mean - half, ci_high=total.mean + half,
                      n_samples=total.count, seed=seed, n_streams=n_streams, std_error=std_error)


def _e2e_sampler(scenario: Scenario) -> Sampler:
    return lambda rng, size: sample_e2e_snr(scenario, rng, size)


def mc_outage(scenario: Scenario, gamma_th: float, n: int, seed: int,
              n_streams: int = DEFAULT_STREAMS, threads: int = 1,
              sampler: Optional[Sampler] = None) -> McEstimate:
    """经验中断概率 P(γ ≤ γ_th)"""
    if gamma_th < 0:
        raise DomainError(f"信噪比门限必须非负: {gamma_th}")
    return run_monte_carlo(sampler or _e2e_sampler(scenario),
                           lambda g: (g <= gamma_th).astype(float),
                           n, seed, n_streams, threads, label='outage')


def mc_hop_outage(scenario: Scenario, gamma_th: float, hop: str, n: int, seed: int,
                  n_streams: int = DEFAULT_STREAMS, threads: int = 1) -> McEstimate:
    """单跳经验中断概率，hop 为 'thz' 或 'rf'"""
    if hop == 'thz':
        sampler = lambda rng, size: sample_thz_snr(scenario, rng, size)
    elif hop == 'rf':
        sampler = lambda rng, size: sample_rf_snr(scenario, rng, size)
    else:
        raise DomainError(f"未知链路 {hop}，可选 thz/rf")
    return mc_outage(scenario, gamma_th, n, seed, n_streams, threads, sampler=sampler)


def mc_mean_snr(scenario: Scenario, n: int, seed: int, n_streams: int = DEFAULT_STREAMS,
                threads: int = 1, order: float = 1.0,
                sampler: Optional[Sampler] = None) -> McEstimate:
    """端到端信噪比 order 阶矩的经验估计"""
    return run_monte_carlo(sampler or _e2e_sampler(scenario), lambda g: g ** order,
                           n, seed, n_streams, threads, label=f'moment{order:g}')


def mc_capacity(scenario: Scenario, n: int, seed: int, n_streams: int = DEFAULT_STREAMS,
                threads: int = 1, sampler: Optional[Sampler] = None) -> McEstimate:
    """遍历容量 E[log2(1 + γ)]"""
    return run_monte_carlo(sampler or _e2e_sampler(scenario), lambda g: np.log1p(g) / math.log(2.0),
                           n, seed, n_streams, threads, label='capacity')


def mc_ber(scenario: Scenario, mod: Modulation = DBPSK, n: int = 1_000_000, seed: int = 0,
           n_streams: int = DEFAULT_STREAMS, threads: int = 1,
           sampler: Optional[Sampler] = None) -> McEstimate:
    """平均误码率，逐次条件误码率 Γ(p, qγ)/(2Γ(p)) 取平均"""
    return run_monte_carlo(sampler or _e2e_sampler(scenario),
                           lambda g: 0.5 * special.gammaincc(mod.p, mod.q * g),
                           n, seed, n_streams, threads, label='ber')

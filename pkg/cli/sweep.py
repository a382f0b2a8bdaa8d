#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
指标扫描
网格点分发到线程池，结果按网格顺序汇总；
某个 (指标, 方法) 组合不可用时记为 NA 并在 reason 列说明原因，不中断整次扫描
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from analytic.ber import ber_relay_inid, ber_rf, ber_thz
from analytic.capacity import capacity_relay_inid, capacity_rf_exact, capacity_thz_exact
from analytic.moments import amount_of_fading, moment_inid, moment_rf, moment_thz
from analytic.outage import outage_exact, outage_high_snr
from analytic.quadrature import (
    ber_by_quadrature, capacity_by_quadrature, moment_by_quadrature, outage_by_quadrature,
)
from channel.scenario import Scenario
from cli.config import SweepSpec
from mc.simulator import McEstimate, mc_ber, mc_capacity, mc_mean_snr, mc_outage
from utils.errors import ConfigError, DomainError, EvaluationError

logger = logging.getLogger(__name__)

NA = None


@dataclass
class SweepTable:
    """扫描结果表"""
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)


def point_scenario(scenario: Scenario, sweep: SweepSpec, x: float) -> Tuple[Scenario, float]:
    """网格点对应的场景与门限（线性）"""
    if sweep.variable == 'tx_power_dbm':
        return scenario.with_tx_power(x), sweep.gamma_th
    if sweep.variable == 'gamma_th_db':
        return scenario, 10.0 ** (x / 10.0)
    if sweep.variable == 'distance_split':
        if not 0 < x < sweep.total_distance_m:
            raise ConfigError(f"THz 距离 {x} m 不在 (0, {sweep.total_distance_m}) m 内",
                              key='sweep.grid')
        return scenario.with_distances(x, sweep.total_distance_m - x), sweep.gamma_th
    return scenario.with_beamwidth_ratio(x), sweep.gamma_th


def _closed(metric: str, scenario: Scenario, gamma_th: float, sweep: SweepSpec) -> float:
    if metric == 'outage':
        return outage_exact(scenario, gamma_th)
    if metric == 'outage_high_snr':
        return outage_high_snr(scenario, gamma_th)
    if metric == 'avg_snr':
        return moment_inid(scenario, 1.0)
    if metric == 'aof':
        return amount_of_fading(scenario, 'closed')
    if metric == 'capacity':
        return capacity_relay_inid(scenario)
    return ber_relay_inid(scenario, sweep.modulation)


def _quadrature(metric: str, scenario: Scenario, gamma_th: float, sweep: SweepSpec) -> float:
    if metric == 'outage':
        return outage_by_quadrature(scenario, gamma_th)
    if metric == 'avg_snr':
        return moment_by_quadrature(scenario, 1.0)
    if metric == 'aof':
        return amount_of_fading(scenario, 'quadrature')
    if metric == 'capacity':
        return capacity_by_quadrature(scenario)
    if metric == 'ber':
        return ber_by_quadrature(scenario, sweep.modulation)
    raise DomainError(f"{metric} 没有数值积分形式")


def _monte_carlo(metric: str, scenario: Scenario, gamma_th: float, sweep: SweepSpec) -> McEstimate:
    n, seed = sweep.mc_samples, sweep.seed
    if metric == 'outage':
        return mc_outage(scenario, gamma_th, n, seed)
    if metric == 'avg_snr':
        return mc_mean_snr(scenario, n, seed)
    if metric == 'capacity':
        return mc_capacity(scenario, n, seed)
    if metric == 'ber':
        return mc_ber(scenario, sweep.modulation, n, seed)
    raise DomainError(f"{metric} 没有蒙特卡罗估计")


def _direct(metric: str, scenario: Scenario, gamma_th: float, sweep: SweepSpec) -> Dict[str, Any]:
    """THz、RF 直连（跨越总距离）对比列"""
    direct_thz, direct_rf = scenario.direct_links()
    if metric == 'outage':
        return {'thz': direct_thz.thz_cdf(gamma_th), 'rf': direct_rf.rf_cdf(gamma_th)}
    if metric == 'avg_snr':
        return {'thz': moment_thz(direct_thz, 1.0), 'rf': moment_rf(direct_rf, 1.0)}
    if metric == 'capacity':
        return {'thz': capacity_thz_exact(direct_thz), 'rf': capacity_rf_exact(direct_rf)}
    if metric == 'ber':
        return {'thz': ber_thz(direct_thz, sweep.modulation), 'rf': ber_rf(direct_rf, sweep.modulation)}
    raise DomainError(f"{metric} 没有直连对比")


EVALUATORS: Dict[str, Callable] = {'closed': _closed, 'quadrature': _quadrature}


def table_columns(sweep: SweepSpec) -> List[str]:
    """列顺序：网格值，各 (指标, 方法) 值，mc 置信区间，直连列，reason（仅在有 NA 时输出）"""
    columns = [sweep.variable]
    for metric in sweep.metrics:
        for method in sweep.methods:
            columns.append(f"{metric}_{method}")
            if method == 'mc':
                columns.extend([f"{metric}_mc_ci_low", f"{metric}_mc_ci_high"])
        if sweep.direct:
            columns.extend([f"{metric}_direct_thz", f"{metric}_direct_rf"])
    columns.append('reason')
    return columns


def evaluate_point(scenario: Scenario, sweep: SweepSpec, x: float) -> Dict[str, Any]:
    """计算一个网格点的整行结果"""
    start = time.time()
    row: Dict[str, Any] = {sweep.variable: x}
    reasons: List[str] = []
    try:
        point, gamma_th = point_scenario(scenario, sweep, x)
    except (DomainError, ConfigError) as e:
        for column in table_columns(sweep)[1:-1]:
            row[column] = NA
        row['reason'] = f"网格点无效: {e}"
        return row

    for metric in sweep.metrics:
        for method in sweep.methods:
            column = f"{metric}_{method}"
            try:
                if method == 'mc':
                    estimate = _monte_carlo(metric, point, gamma_th, sweep)
                    row[column] = estimate.mean
                    row[f"{metric}_mc_ci_low"] = estimate.ci_low
                    row[f"{metric}_mc_ci_high"] = estimate.ci_high
                else:
                    row[column] = float(EVALUATORS[method](metric, point, gamma_th, sweep))
            except (DomainError, EvaluationError) as e:
                row[column] = NA
                if method == 'mc':
                    row[f"{metric}_mc_ci_low"] = NA
                    row[f"{metric}_mc_ci_high"] = NA
                reasons.append(f"{column}: {e}")
        if sweep.direct:
            try:
                direct = _direct(metric, point, gamma_th, sweep)
                row[f"{metric}_direct_thz"] = float(direct['thz'])
                row[f"{metric}_direct_rf"] = float(direct['rf'])
            except (DomainError, EvaluationError, ConfigError) as e:
                row[f"{metric}_direct_thz"] = NA
                row[f"{metric}_direct_rf"] = NA
                reasons.append(f"{metric}_direct: {e}")

    row['reason'] = '; '.join(reasons)
    logger.info(f"网格点 {sweep.variable}={x:g} 完成，用时 {time.time() - start:.2f}s")
    return row


def run_sweep(scenario: Scenario, sweep: SweepSpec, threads: int = 1,
              extra: Optional[Dict[str, Any]] = None) -> SweepTable:
    """
    执行扫描

    Args:
        scenario: 基准场景
        sweep: 扫描规格
        threads: 线程数，结果行始终按网格顺序排列
        extra: 附加到每行开头的常量列（如预设曲线参数）
    """
    logger.info(f"开始扫描 {sweep.variable}: {len(sweep.grid)} 个网格点, "
                f"指标={sweep.metrics}, 方法={sweep.methods}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda x: evaluate_point(scenario, sweep, x), sweep.grid))
    else:
        rows = [evaluate_point(scenario, sweep, x) for x in sweep.grid]

    columns = table_columns(sweep)
    if not any(row.get('reason') for row in rows):
        columns.remove('reason')
    if extra:
        columns = list(extra) + columns
        rows = [{**extra, **row} for row in rows]
    return SweepTable(columns=columns, rows=rows)

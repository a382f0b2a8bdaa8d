#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果图预设
每个预设固定图注中的全部参数，并列出若干条曲线（每条曲线一组覆盖项）；
运行结果按曲线顺序拼接成一张表，首列 curve 标识曲线
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from cli.config import build_from_values, resolve_values
from cli.sweep import SweepTable, run_sweep

logger = logging.getLogger(__name__)

# fig2* 指向误差参数
_FIG2_POINTING = {'pointing.sigma_s_cm': 8.0, 'pointing.beamwidth_ratio': 6.0}
# fig3* 至 fig5* 指向误差参数
_FIG3_POINTING = {'pointing.sigma_s_cm': 15.0}

_POWER_GRID_OUTAGE = {'sweep.start': -50.0, 'sweep.stop': 10.0, 'sweep.step': 5.0}
_POWER_GRID = {'sweep.start': -40.0, 'sweep.stop': 20.0, 'sweep.step': 5.0}


@dataclass
class PresetSpec:
    """预设：公共参数与曲线列表"""
    name: str
    description: str
    base: Dict[str, Any]
    curves: List[Tuple[str, Dict[str, Any]]] = field(default_factory=lambda: [('default', {})])


PRESETS: Dict[str, PresetSpec] = {
    'fig2a': PresetSpec(
        name='fig2a',
        description='中断概率 vs 发射功率，不同 μ1',
        base={'thz.alpha': 2.0, 'rf.alpha': 2.0, 'rf.mu': 1.0, 'sweep.gamma_th_db': 4.0,
              'sweep.metrics': ['outage'], **_FIG2_POINTING, **_POWER_GRID_OUTAGE},
        curves=[(f"mu1={mu:g}", {'thz.mu': mu}) for mu in (0.5, 1.0, 2.0, 3.0)],
    ),
    'fig2b': PresetSpec(
        name='fig2b',
        description='中断概率 vs 发射功率，不同 α1',
        base={'thz.mu': 1.0, 'rf.alpha': 2.0, 'rf.mu': 4.0, 'sweep.gamma_th_db': 4.0,
              'sweep.metrics': ['outage'], **_FIG2_POINTING, **_POWER_GRID_OUTAGE},
        curves=[(f"alpha1={alpha:g}", {'thz.alpha': alpha}) for alpha in (1.0, 2.0, 3.0)],
    ),
    'fig3a': PresetSpec(
        name='fig3a',
        description='平均信噪比 vs 发射功率，不同归一化波束宽度',
        base={'thz.alpha': 2.0, 'thz.mu': 4.0, 'rf.alpha': 2.0, 'rf.mu': 1.0,
              'sweep.metrics': ['avg_snr'], **_FIG3_POINTING, **_POWER_GRID},
        curves=[(f"ratio={r:g}", {'pointing.beamwidth_ratio': r}) for r in (6.0, 8.0, 10.0, 12.0)],
    ),
    'fig3b': PresetSpec(
        name='fig3b',
        description='平均信噪比：中继与 THz、RF 直连对比',
        base={'thz.alpha': 2.0, 'thz.mu': 4.0, 'rf.alpha': 2.0, 'rf.mu': 1.0,
              'pointing.beamwidth_ratio': 6.0, 'sweep.metrics': ['avg_snr'],
              'sweep.direct': True, **_FIG3_POINTING, **_POWER_GRID},
    ),
    'fig4a': PresetSpec(
        name='fig4a',
        description='遍历容量 vs 发射功率，不同归一化波束宽度',
        base={'thz.alpha': 2.0, 'thz.mu': 4.0, 'rf.alpha': 2.0, 'rf.mu': 1.0,
              'sweep.metrics': ['capacity'], **_FIG3_POINTING, **_POWER_GRID},
        curves=[(f"ratio={r:g}", {'pointing.beamwidth_ratio': r}) for r in (6.0, 8.0, 10.0, 12.0)],
    ),
    'fig4b': PresetSpec(
        name='fig4b',
        description='遍历容量与平均信噪比：不同 α1，含直连对比',
        base={'thz.mu': 1.0, 'rf.alpha': 2.0, 'rf.mu': 4.0, 'pointing.beamwidth_ratio': 6.0,
              'sweep.metrics': ['capacity', 'avg_snr'], 'sweep.direct': True,
              **_FIG3_POINTING, **_POWER_GRID},
        curves=[(f"alpha1={alpha:g}", {'thz.alpha': alpha}) for alpha in (1.0, 2.0, 3.0)],
    ),
    'fig5a': PresetSpec(
        name='fig5a',
        description='平均误码率 vs 发射功率，不同 α1 与归一化波束宽度',
        base={'thz.mu': 1.0, 'rf.alpha': 2.0, 'rf.mu': 4.0, 'sweep.metrics': ['ber'],
              **_FIG3_POINTING, **_POWER_GRID},
        curves=[(f"alpha1={alpha:g},ratio={r:g}",
                 {'thz.alpha': alpha, 'pointing.beamwidth_ratio': r})
                for alpha in (1.0, 2.5) for r in (6.0, 12.0)],
    ),
    'fig5b': PresetSpec(
        name='fig5b',
        description='平均误码率 vs 中继位置（总距离 80 m）',
        base={'thz.alpha': 2.0, 'thz.mu': 1.0, 'rf.alpha': 2.0, 'rf.mu': 4.0,
              'pointing.beamwidth_ratio': 6.0, 'link.tx_power_dbm': -10.0,
              'sweep.variable': 'distance_split', 'sweep.total_distance_m': 80.0,
              'sweep.metrics': ['ber'], 'sweep.start': 10.0, 'sweep.stop': 70.0,
              'sweep.step': 10.0, **_FIG3_POINTING},
    ),
}


def get_preset(name: str) -> PresetSpec:
    """
    按名称取预设

    Raises:
        KeyError: 预设不存在
    """
    if name not in PRESETS:
        raise KeyError(f"未知预设 {name}，可选: {', '.join(PRESETS)}")
    return PRESETS[name]


def run_preset(name: str, overrides: Optional[Dict[str, Any]] = None,
               threads: int = 1) -> SweepTable:
    """
    运行预设的全部曲线

    Args:
        name: 预设名称
        overrides: 作用于每条曲线的额外配置（如 sweep.methods、sweep.seed）
        threads: 网格点线程数

    Returns:
        拼接后的结果表，首列为 curve
    """
    preset = get_preset(name)
    logger.info(f"运行预设 {name}: {preset.description}, 共 {len(preset.curves)} 条曲线")
    table: Optional[SweepTable] = None
    for label, curve in preset.curves:
        values = resolve_values({**preset.base, **curve, **(overrides or {})})
        scenario, sweep = build_from_values(values)
        logger.info(f"曲线 {label}: {scenario.describe()}")
        part = run_sweep(scenario, sweep, threads=threads, extra={'curve': label})
        if table is None:
            table = part
        else:
            table.rows.extend(part.rows)
            table.columns.extend(c for c in part.columns if c not in table.columns)
    return table

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
场景与扫描配置
把点号键字典解析为完整场景与扫描规格；未给出的键取仿真参数表默认值，
未知键直接拒绝
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from analytic.ber import Modulation, modulation_by_name
from channel.fading import FadingParams
from channel.link_budget import (
    DEFAULT_RF_NOISE_DBM, DEFAULT_THZ_NOISE_DBM, RfLinkBudget, ThzLinkBudget,
    db_to_linear, rf_noise_power_dbm, thz_noise_power_dbm,
)
from channel.pointing import PointingConfig
from channel.scenario import Scenario, build_scenario
from utils.config_loader import load_config
from utils.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

VARIABLES = ('tx_power_dbm', 'gamma_th_db', 'distance_split', 'normalized_beamwidth')
METRICS = ('outage', 'outage_high_snr', 'avg_snr', 'aof', 'capacity', 'ber')
METHODS = ('closed', 'quadrature', 'mc')

# 仿真参数表默认值
DEFAULTS: Dict[str, Any] = {
    'thz.alpha': 2.0,
    'thz.mu': 1.0,
    'thz.omega': 1.0,
    'thz.frequency_ghz': 275.0,
    'thz.distance_m': 50.0,
    'thz.gain_tx_dbi': 55.0,
    'thz.gain_rx_dbi': 55.0,
    'thz.bandwidth_ghz': 10.0,
    'thz.noise_figure_db': 5.0,
    'thz.noise_dbm': DEFAULT_THZ_NOISE_DBM,
    'rf.alpha': 2.0,
    'rf.mu': 1.0,
    'rf.omega': 1.0,
    'rf.frequency_ghz': 6.0,
    'rf.distance_m': 50.0,
    'rf.gain_tx_dbi': 25.0,
    'rf.gain_rx_dbi': 25.0,
    'rf.bandwidth_mhz': 20.0,
    'rf.noise_figure_db': 5.0,
    'rf.noise_dbm': DEFAULT_RF_NOISE_DBM,
    'atmosphere.temperature_k': 296.0,
    'atmosphere.humidity': 50.0,
    'atmosphere.pressure_pa': 101325.0,
    'pointing.beamwidth_ratio': 6.0,
    'pointing.r1_cm': 10.0,
    'pointing.sigma_s_cm': 8.0,
    'link.tx_power_dbm': 10.0,
    'link.noise_model': 'fixed',
    'modulation.p': 1.0,
    'modulation.q': 1.0,
    'sweep.variable': 'tx_power_dbm',
    'sweep.grid': [0.0, 10.0, 20.0, 30.0],
    'sweep.metrics': ['outage'],
    'sweep.methods': ['closed'],
    'sweep.mc_samples': 1_000_000,
    'sweep.seed': 20240501,
    'sweep.gamma_th_db': 4.0,
    'sweep.total_distance_m': 100.0,
    'sweep.direct': False,
}

# 可选键：直接给定无衰落信噪比
OPTIONAL_KEYS = ('snr.gamma0_1_db', 'snr.gamma0_2_db', 'modulation.name',
                 'sweep.start', 'sweep.stop', 'sweep.step')


@dataclass
class SweepSpec:
    """扫描规格"""
    variable: str = 'tx_power_dbm'
    grid: List[float] = field(default_factory=lambda: [0.0])
    metrics: List[str] = field(default_factory=lambda: ['outage'])
    methods: List[str] = field(default_factory=lambda: ['closed'])
    mc_samples: int = 1_000_000
    seed: int = 20240501
    gamma_th_db: float = 4.0
    total_distance_m: float = 100.0
    direct: bool = False
    modulation: Modulation = field(default_factory=Modulation)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ConfigError(f"未知扫描变量 {self.variable}，可选 {VARIABLES}", key='sweep.variable')
        if not self.grid:
            raise ConfigError("扫描网格不能为空", key='sweep.grid')
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("扫描网格必须严格递增", key='sweep.grid')
        unknown = [m for m in self.metrics if m not in METRICS]
        if unknown or not self.metrics:
            raise ConfigError(f"未知指标 {unknown}，可选 {METRICS}", key='sweep.metrics')
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown or not self.methods:
            raise ConfigError(f"未知求值方法 {unknown}，可选 {METHODS}", key='sweep.methods')
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError(f"种子必须是 64 位无符号整数: {self.seed}", key='sweep.seed')

    @property
    def gamma_th(self) -> float:
        return db_to_linear(self.gamma_th_db)


def _as_list(value: Any) -> List[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _number(values: Dict[str, Any], key: str) -> float:
    value = values[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"配置项 {key} 必须是数值: {value!r}", key=key)
    return float(value)


def resolve_values(overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    合并默认值与覆盖值

    Raises:
        ConfigError: 出现未知键
    """
    for key in overrides:
        if key not in DEFAULTS and key not in OPTIONAL_KEYS:
            raise ConfigError(f"未知配置项: {key}", key=key)
    values = dict(DEFAULTS)
    values.update(overrides)
    return values


def build_from_values(values: Dict[str, Any]) -> Tuple[Scenario, SweepSpec]:
    """
    由合并后的配置构造场景与扫描规格

    Raises:
        ConfigError: 取值类型或组合错误
        ConfigValidationError: w_z/r1 < 6
    """
    try:
        thz_fading = FadingParams(_number(values, 'thz.alpha'), _number(values, 'thz.mu'),
                                  _number(values, 'thz.omega'))
        rf_fading = FadingParams(_number(values, 'rf.alpha'), _number(values, 'rf.mu'),
                                 _number(values, 'rf.omega'))
    except DomainError as e:
        raise ConfigError(str(e), key='fading')

    r1 = _number(values, 'pointing.r1_cm') / 100.0
    pointing = PointingConfig.from_ratio(_number(values, 'pointing.beamwidth_ratio'), r_1=r1,
                                         sigma_s=_number(values, 'pointing.sigma_s_cm') / 100.0)

    noise_model = values['link.noise_model']
    if noise_model == 'fixed':
        thz_noise = _number(values, 'thz.noise_dbm')
        rf_noise = _number(values, 'rf.noise_dbm')
    elif noise_model == 'psd':
        thz_noise = thz_noise_power_dbm(_number(values, 'thz.bandwidth_ghz') * 1e9,
                                        _number(values, 'thz.noise_figure_db'))
        rf_noise = rf_noise_power_dbm(_number(values, 'rf.bandwidth_mhz') * 1e6,
                                      _number(values, 'rf.noise_figure_db'))
    else:
        raise ConfigError(f"未知噪声模型 {noise_model}，可选 fixed/psd", key='link.noise_model')

    tx_power = _number(values, 'link.tx_power_dbm')
    try:
        thz_budget = ThzLinkBudget(
            f=_number(values, 'thz.frequency_ghz') * 1e9,
            d=_number(values, 'thz.distance_m'),
            g_t=_number(values, 'thz.gain_tx_dbi'),
            g_r=_number(values, 'thz.gain_rx_dbi'),
            temperature=_number(values, 'atmosphere.temperature_k'),
            humidity=_number(values, 'atmosphere.humidity'),
            pressure=_number(values, 'atmosphere.pressure_pa'),
            tx_power=tx_power,
            noise_power=thz_noise,
        )
        rf_budget = RfLinkBudget(
            f=_number(values, 'rf.frequency_ghz') * 1e9,
            d=_number(values, 'rf.distance_m'),
            g_t=_number(values, 'rf.gain_tx_dbi'),
            g_r=_number(values, 'rf.gain_rx_dbi'),
            tx_power=tx_power,
            noise_power=rf_noise,
        )
        scenario = build_scenario(thz_fading, rf_fading, pointing, thz_budget, rf_budget)
        if 'snr.gamma0_1_db' in values or 'snr.gamma0_2_db' in values:
            if 'snr.gamma0_1_db' not in values or 'snr.gamma0_2_db' not in values:
                raise ConfigError("snr.gamma0_1_db 与 snr.gamma0_2_db 必须同时给出", key='snr')
            scenario = scenario.with_snr(db_to_linear(_number(values, 'snr.gamma0_1_db')),
                                         db_to_linear(_number(values, 'snr.gamma0_2_db')))
    except DomainError as e:
        raise ConfigError(f"链路参数无效: {e}", key='link')

    sweep = SweepSpec(
        variable=values['sweep.variable'],
        grid=_resolve_grid(values),
        metrics=[str(m) for m in _as_list(values['sweep.metrics'])],
        methods=[str(m) for m in _as_list(values['sweep.methods'])],
        mc_samples=int(_number(values, 'sweep.mc_samples')),
        seed=int(_number(values, 'sweep.seed')),
        gamma_th_db=_number(values, 'sweep.gamma_th_db'),
        total_distance_m=_number(values, 'sweep.total_distance_m'),
        direct=bool(values['sweep.direct']),
        modulation=_resolve_modulation(values),
    )
    if scenario.thz_budget is None and sweep.variable in ('tx_power_dbm', 'distance_split'):
        raise ConfigError(f"按信噪比给定的场景不支持扫描 {sweep.variable}", key='sweep.variable')
    return scenario, sweep


def _resolve_modulation(values: Dict[str, Any]) -> Modulation:
    """modulation.name 优先于 modulation.p/q"""
    if 'modulation.name' not in values:
        return Modulation(_number(values, 'modulation.p'), _number(values, 'modulation.q'), name='custom')
    try:
        return modulation_by_name(str(values['modulation.name']))
    except DomainError as e:
        raise ConfigError(str(e), key='modulation.name')


def _resolve_grid(values: Dict[str, Any]) -> List[float]:
    """sweep.start/stop/step 优先于 sweep.grid"""
    if any(k in values for k in ('sweep.start', 'sweep.stop', 'sweep.step')):
        try:
            start, stop, step = (_number(values, k) for k in ('sweep.start', 'sweep.stop', 'sweep.step'))
        except KeyError as e:
            raise ConfigError(f"缺少扫描范围参数 {e.args[0]}", key=str(e.args[0]))
        if step <= 0:
            raise ConfigError(f"扫描步长必须为正: {step}", key='sweep.step')
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(v) for v in _as_list(values['sweep.grid'])]


def parse_config(path: Optional[str], overrides: Optional[Dict[str, Any]] = None,
                 base: Optional[Dict[str, Any]] = None) -> Tuple[Scenario, SweepSpec]:
    """
    读取配置文件并构造场景与扫描规格

    Args:
        path: 配置文件路径，None 表示只用默认值
        overrides: 额外覆盖项（优先级高于文件）
        base: 运行环境给出的默认项（优先级低于文件）

    Raises:
        FileNotFoundError: 文件不存在
        ConfigError: 键未知或取值无效
        ConfigValidationError: w_z/r1 < 6
    """
    values = dict(base or {})
    values.update(load_config(path) if path else {})
    values.update(overrides or {})
    scenario, sweep = build_from_values(resolve_values(values))
    logger.info(f"场景: {scenario.describe()}")
    return scenario, sweep

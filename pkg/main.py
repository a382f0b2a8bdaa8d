#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
THz-RF 双跳中继性能分析命令行
子命令: absorption / derive / sweep / preset <name> / mc / selftest
"""

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import asdict
from typing import Any, Dict, List, Optional

# 添加项目路径
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from channel.absorption import absorption_coefficient
from channel.link_budget import aperture_radius, linear_to_db, thz_path_gain
from cli.config import parse_config
from cli.presets import PRESETS, run_preset
from cli.report import FORMATS, emit
from cli.selftest import run_selftest
from cli.sweep import run_sweep
from mc.simulator import mc_ber, mc_capacity, mc_mean_snr, mc_outage
from production_config import get_config
from utils.errors import ConfigError, DomainError, EvaluationError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="THz-RF 双跳译码转发中继性能分析（闭式 / 数值积分 / 蒙特卡罗）",
    )
    parser.add_argument("--config", help="场景配置文件（点号键值文本或 JSON）")
    parser.add_argument("--out", help="输出文件路径，缺省写到标准输出")
    parser.add_argument("--format", choices=FORMATS, help="输出格式，缺省取运行环境配置")
    parser.add_argument("--seed", type=int, help="蒙特卡罗种子（64 位无符号整数）")
    parser.add_argument("--samples", type=int, help="蒙特卡罗样本数")
    parser.add_argument("--threads", type=int, help="网格点并行线程数")
    parser.add_argument("--methods", help="逗号分隔的求值方法，如 closed,mc")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="日志级别，缺省取运行环境配置")
    parser.add_argument("--environment", choices=["production", "development"],
                        help="运行环境，缺省读取 ENVIRONMENT 环境变量")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("absorption", help="打印分子吸收系数与 THz 链路预算")
    sub.add_parser("derive", help="打印闭式常数")
    sub.add_parser("sweep", help="按配置执行指标扫描")
    preset = sub.add_parser("preset", help="复现结果图数据")
    preset.add_argument("name", choices=sorted(PRESETS))
    sub.add_parser("mc", help="打印配置场景的蒙特卡罗估计")
    sub.add_parser("selftest", help="运行交叉校验自检")
    return parser


def _flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides['sweep.seed'] = args.seed
    if args.samples is not None:
        overrides['sweep.mc_samples'] = args.samples
    if args.methods:
        overrides['sweep.methods'] = [m.strip() for m in args.methods.split(',') if m.strip()]
    return overrides


def _write(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"结果已写入 {path}")
    else:
        sys.stdout.write(text)


def _dump(data: Dict[str, Any]) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + '\n'


def cmd_absorption(args, config) -> int:
    scenario, _ = parse_config(args.config, base={'sweep.mc_samples': config.MC_SAMPLES})
    budget = scenario.thz_budget
    if budget is None:
        raise ConfigError("absorption 需要链路预算参数，不能与 snr.* 同时使用", key='snr')
    k = absorption_coefficient(budget.f, budget.temperature, budget.humidity, budget.pressure)
    h_l = thz_path_gain(budget)
    report = {
        'frequency_hz': budget.f,
        'distance_m': budget.d,
        'absorption_coefficient_per_m': k,
        'absorption_loss_db': 10.0 * k * budget.d / math.log(10.0),
        'path_gain_linear': h_l,
        'path_gain_db': 20.0 * math.log10(h_l),
        'aperture_radius_m': aperture_radius(budget.f, budget.g_r),
        'gamma0_1_db': linear_to_db(scenario.gamma0_1),
    }
    _write(_dump(report), args.out)
    return 0


def cmd_derive(args, config) -> int:
    scenario, _ = parse_config(args.config, base={'sweep.mc_samples': config.MC_SAMPLES})
    report = {
        'derived': asdict(scenario.derived),
        'pointing': asdict(scenario.pointing),
        'epsilon': scenario.epsilon,
        'gamma0_1_db': linear_to_db(scenario.gamma0_1),
        'gamma0_2_db': linear_to_db(scenario.gamma0_2),
    }
    _write(_dump(report), args.out)
    return 0


def cmd_sweep(args, config) -> int:
    scenario, sweep = parse_config(args.config, _flag_overrides(args),
                                   base={'sweep.mc_samples': config.MC_SAMPLES})
    table = run_sweep(scenario, sweep, threads=args.threads or config.THREADS)
    text = emit(table, args.format or config.OUTPUT_FORMAT, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 0


def cmd_preset(args, config) -> int:
    overrides = {'sweep.mc_samples': config.MC_SAMPLES, **_flag_overrides(args)}
    table = run_preset(args.name, overrides, threads=args.threads or config.THREADS)
    text = emit(table, args.format or config.OUTPUT_FORMAT, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 0


def cmd_mc(args, config) -> int:
    scenario, sweep = parse_config(args.config, _flag_overrides(args),
                                   base={'sweep.mc_samples': config.MC_SAMPLES})
    n, seed = sweep.mc_samples, sweep.seed
    streams, threads = config.MC_STREAMS, args.threads or config.THREADS
    estimates = {
        'outage': mc_outage(scenario, sweep.gamma_th, n, seed, streams, threads),
        'avg_snr': mc_mean_snr(scenario, n, seed, streams, threads),
        'capacity': mc_capacity(scenario, n, seed, streams, threads),
        'ber': mc_ber(scenario, sweep.modulation, n, seed, streams, threads),
    }
    _write(_dump({name: est.to_dict() for name, est in estimates.items()}), args.out)
    return 0


def cmd_selftest(args, config) -> int:
    seed = args.seed if args.seed is not None else 1
    results = run_selftest(args.samples or config.SELFTEST_MC_SAMPLES, seed)
    lines: List[str] = [r.line() for r in results]
    failed = sum(1 for r in results if not r.passed)
    lines.append(f"共 {len(results)} 项, 失败 {failed} 项")
    _write('\n'.join(lines) + '\n', args.out)
    return 1 if failed else 0


COMMANDS = {
    'absorption': cmd_absorption,
    'derive': cmd_derive,
    'sweep': cmd_sweep,
    'preset': cmd_preset,
    'mc': cmd_mc,
    'selftest': cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = get_config(args.environment)
    logging.basicConfig(level=getattr(logging, args.log_level or config.LOG_LEVEL),
                        stream=sys.stderr)

    try:
        return COMMANDS[args.command](args, config)
    except ConfigError as e:
        key = f" [{e.key}]" if getattr(e, 'key', None) else ''
        logger.error(f"配置错误{key}: {e}")
        print(f"配置错误{key}: {e}", file=sys.stderr)
        return 2
    except (DomainError, EvaluationError, FileNotFoundError, ValueError) as e:
        logger.error(f"{args.command} 执行失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

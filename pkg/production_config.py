#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运行环境配置
生产环境蒙特卡罗默认 10⁶ 次，开发环境缩小样本
"""

import os
from typing import Any, Dict


class ProductionConfig:
    """生产环境配置类"""

    # 蒙特卡罗配置
    MC_SAMPLES = 1_000_000        # 参考设置为 10⁸，桌面规模取 10⁶
    MC_STREAMS = 8                # 独立随机子流数，结果与线程数无关
    SELFTEST_MC_SAMPLES = 200_000

    # 并发控制
    THREADS = 4  # 建议设置为CPU核心数

    # 输出配置
    OUTPUT_FORMAT = "csv"

    # 日志配置
    LOG_LEVEL = "INFO"

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        """全部大写配置项"""
        return {k: getattr(cls, k) for k in dir(cls) if k.isupper()}


class DevelopmentConfig(ProductionConfig):
    """开发环境配置"""

    MC_SAMPLES = 100_000
    SELFTEST_MC_SAMPLES = 50_000
    THREADS = 1
    LOG_LEVEL = "DEBUG"


# 环境配置选择
def get_config(environment: str = None):
    """根据参数或环境变量 ENVIRONMENT 选择配置"""
    env = (environment or os.getenv("ENVIRONMENT", "development")).lower()

    if env == "production":
        return ProductionConfig()
    else:
        return DevelopmentConfig()


if __name__ == "__main__":
    config = get_config()
    print(f"🔧 当前环境: {os.getenv('ENVIRONMENT', 'development')}")
    for key, value in config.as_dict().items():
        print(f"   {key} = {value}")

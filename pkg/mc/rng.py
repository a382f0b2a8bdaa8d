#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
可复现的随机数子流
由 (seed, 子流序号) 唯一确定每个子流，子流之间统计独立，
并行执行顺序不影响结果
"""

from typing import List

import numpy as np

from utils.errors import DomainError

# 64 位种子上限
MAX_SEED = 2 ** 64 - 1
DEFAULT_STREAMS = 8


def check_seed(seed: int) -> int:
    """校验种子为 64 位无符号整数"""
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) <= MAX_SEED:
        raise DomainError(f"种子必须是 64 位无符号整数: {seed}")
    return int(seed)


def spawn_streams(seed: int, n_streams: int = DEFAULT_STREAMS) -> List[np.random.Generator]:
    """
    从 SeedSequence(seed) 派生 n_streams 个独立的 Generator

    Raises:
        DomainError: 种子越界或子流数小于 1
    """
    if n_streams < 1:
        raise DomainError(f"子流数必须至少为 1: {n_streams}")
    children = np.random.SeedSequence(check_seed(seed)).spawn(n_streams)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def split_counts(n: int, n_streams: int) -> List[int]:
    """把 n 个样本按子流序号确定性地分配，余数分给前面的子流"""
    base, remainder = divmod(n, n_streams)
    return [base + (1 if i < remainder else 0) for i in range(n_streams)]

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
项目异常定义
区分定义域错误、数值求值失败和配置错误，便于命令行按类别处理
"""

from typing import Any, Dict, Optional


class DomainError(ValueError):
    """输入超出函数定义域（极点、发散积分、参数形态不匹配等）"""
    pass


class EvaluationError(RuntimeError):
    """数值求值失败，附带诊断信息"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class MeijerGEvaluationError(EvaluationError):
    """Meijer G 围道积分无法构造或不收敛"""
    pass


class ConfigError(ValueError):
    """配置文件或命令行参数错误"""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(message)
        self.key = key


class ConfigValidationError(ConfigError):
    """配置可以解析，但违反模型适用范围"""
    pass

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
场景配置文件加载工具
支持两种格式：带点号分节的键值文本（thz.alpha = 2）和 JSON 对象（嵌套或点号键），
按内容特征自动识别
"""

import json
import os
import re
from enum import Enum
from typing import Any, Dict, Tuple

from utils.errors import ConfigError


class ConfigFormat(Enum):
    """配置文件格式枚举"""
    KEY_VALUE = "key_value"
    JSON = "json"
    UNKNOWN = "unknown"


class ConfigLoader:
    """配置文件加载器"""

    def __init__(self):
        # 键值文本特征模式
        self.key_value_patterns = [
            re.compile(r'^\s*[A-Za-z_][\w]*(\.[A-Za-z_][\w]*)+\s*=', re.MULTILINE),
            re.compile(r'^\s*#', re.MULTILINE),
            re.compile(r'^\s*[A-Za-z_][\w.]*\s*=\s*\S', re.MULTILINE),
        ]

        # JSON 特征模式
        self.json_patterns = [
            re.compile(r'^\s*\{'),
            re.compile(r'"[\w.]+"\s*:'),
            re.compile(r'\}\s*$'),
        ]

    def load_config_file(self, file_path: str) -> Tuple[Dict[str, Any], ConfigFormat]:
        """
        加载配置文件

        Args:
            file_path: 配置文件路径

        Returns:
            元组：(点号键到值的扁平字典, 文件格式)

        Raises:
            FileNotFoundError: 文件不存在
            ConfigError: 无法识别格式或语法错误
        """
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"配置文件不存在: {file_path}")

        with open(file_path, 'r', encoding='utf-8') as f:
            content = f.read()

        config_format = self.detect_format(content)
        return self.parse_content(content, config_format), config_format

    def detect_format(self, content: str) -> ConfigFormat:
        """
        按特征模式打分识别配置格式

        Args:
            content: 配置文件内容

        Returns:
            配置格式；空内容视为键值文本
        """
        if not content.strip():
            return ConfigFormat.KEY_VALUE

        json_score = sum(1 for pattern in self.json_patterns if pattern.search(content))
        kv_score = sum(1 for pattern in self.key_value_patterns if pattern.search(content))

        if json_score > 0 and json_score >= kv_score:
            return ConfigFormat.JSON
        elif kv_score > 0:
            return ConfigFormat.KEY_VALUE
        else:
            return ConfigFormat.UNKNOWN

    def parse_content(self, content: str, config_format: ConfigFormat) -> Dict[str, Any]:
        """按格式解析为扁平字典"""
        if config_format == ConfigFormat.JSON:
            return self._parse_json(content)
        if config_format == ConfigFormat.KEY_VALUE:
            return self._parse_key_value(content)
        raise ConfigError("无法识别配置文件格式（既非键值文本也非 JSON）")

    def _parse_json(self, content: str) -> Dict[str, Any]:
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise ConfigError(f"JSON 语法错误: 第 {e.lineno} 行 {e.msg}")
        if not isinstance(data, dict):
            raise ConfigError("JSON 配置顶层必须是对象")
        flat: Dict[str, Any] = {}
        self._flatten(data, '', flat)
        return flat

    def _flatten(self, node: Dict[str, Any], prefix: str, out: Dict[str, Any]) -> None:
        for key, value in node.items():
            full_key = f"{prefix}{key}"
            if isinstance(value, dict):
                self._flatten(value, f"{full_key}.", out)
            elif full_key in out:
                raise ConfigError(f"重复的配置键: {full_key}", key=full_key)
            else:
                out[full_key] = value

    def _parse_key_value(self, content: str) -> Dict[str, Any]:
        flat: Dict[str, Any] = {}
        for line_no, raw in enumerate(content.split('\n'), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigError(f"第 {line_no} 行缺少 '=': {raw.strip()}")
            key, value = (part.strip() for part in line.split('=', 1))
            if not key:
                raise ConfigError(f"第 {line_no} 行缺少键名")
            if key in flat:
                raise ConfigError(f"重复的配置键: {key}", key=key)
            flat[key] = parse_scalar(value)
        return flat


def parse_scalar(text: str) -> Any:
    """解析键值文本中的值：数字、布尔、逗号分隔列表或字符串"""
    if ',' in text:
        return [parse_scalar(part.strip()) for part in text.split(',') if part.strip()]
    lowered = text.lower()
    if lowered in ('true', 'yes', 'on'):
        return True
    if lowered in ('false', 'no', 'off'):
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text.strip('"\'')


# 便捷函数
def load_config(file_path: str) -> Dict[str, Any]:
    """加载配置文件为扁平字典"""
    values, _ = ConfigLoader().load_config_file(file_path)
    return values

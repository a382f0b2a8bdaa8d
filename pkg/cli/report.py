#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果表输出
CSV：必有表头，缺失值写作 NA，浮点数用 repr（最短往返表示，'.' 小数点，与区域设置无关）；
JSON：对象数组，缺失值为 null
"""

import csv
import io
import json
import logging
import math
from typing import Any, Dict, List, Optional

from cli.sweep import SweepTable

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'json')
NA_TEXT = 'NA'


def _csv_cell(value: Any) -> str:
    if value is None:
        return NA_TEXT
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else NA_TEXT
    return str(value)


def _json_cell(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def to_csv(table: SweepTable) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=table.columns, lineterminator='\n')
    writer.writeheader()
    for row in table.rows:
        writer.writerow({c: _csv_cell(row.get(c)) for c in table.columns})
    return buffer.getvalue()


def to_json(table: SweepTable) -> str:
    records = [{c: _json_cell(row.get(c)) for c in table.columns} for row in table.rows]
    return json.dumps({'columns': table.columns, 'rows': records},
                      ensure_ascii=False, indent=2) + '\n'


def emit(table: SweepTable, fmt: str = 'csv', path: Optional[str] = None) -> str:
    """
    序列化结果表，给定 path 时写入文件

    Raises:
        ValueError: 未知格式
    """
    if fmt not in FORMATS:
        raise ValueError(f"未知输出格式 {fmt}，可选 {FORMATS}")
    text = to_csv(table) if fmt == 'csv' else to_json(table)
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"结果已写入 {path} ({len(table.rows)} 行, {fmt})")
    return text


def _parse_csv_cell(text: str) -> Any:
    if text == NA_TEXT:
        return None
    if text == '':
        return ''
    try:
        return float(text)
    except ValueError:
        return text


def parse_table(text: str, fmt: str = 'csv') -> SweepTable:
    """把 emit 的输出读回结果表"""
    if fmt == 'json':
        data = json.loads(text)
        return SweepTable(columns=list(data['columns']), rows=list(data['rows']))
    reader = csv.DictReader(io.StringIO(text))
    rows: List[Dict[str, Any]] = [
        {k: _parse_csv_cell(v) for k, v in row.items()} for row in reader
    ]
    return SweepTable(columns=list(reader.fieldnames or []), rows=rows)

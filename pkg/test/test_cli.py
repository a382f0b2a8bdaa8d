#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行层测试用例
配置加载、扫描、结果输出、预设与入口退出码
"""

import json
import math
import os
import sys

import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from cli.config import DEFAULTS, SweepSpec, build_from_values, parse_config, resolve_values
from cli.presets import PRESETS, get_preset, run_preset
from cli.report import emit, parse_table
from cli.sweep import run_sweep
from main import main
from utils.config_loader import ConfigFormat, ConfigLoader, parse_scalar
from utils.errors import ConfigError, ConfigValidationError

DATA_DIR = os.path.join(project_root, 'test', 'data')


def data_file(name: str) -> str:
    return os.path.join(DATA_DIR, name)


class TestConfigLoader:
    """配置文件加载测试"""

    def setup_method(self):
        self.loader = ConfigLoader()

    def test_key_value_file(self):
        values, fmt = self.loader.load_config_file(data_file('scenario.conf'))
        assert fmt == ConfigFormat.KEY_VALUE
        assert values['thz.mu'] == 4
        assert values['sweep.grid'] == [0, 10]
        assert values['sweep.metrics'] == ['outage', 'avg_snr']
        assert values['sweep.methods'] == 'closed'
        assert values['sweep.direct'] is True

    def test_json_file(self):
        values, fmt = self.loader.load_config_file(data_file('scenario.json'))
        assert fmt == ConfigFormat.JSON
        assert values['thz.mu'] == 1.3
        assert values['pointing.sigma_s_cm'] == 8
        assert values['sweep.variable'] == 'gamma_th_db'

    def test_duplicate_key(self):
        with pytest.raises(ConfigError) as exc:
            self.loader.parse_content("thz.mu = 1\nthz.mu = 2\n", ConfigFormat.KEY_VALUE)
        assert exc.value.key == 'thz.mu'
        with pytest.raises(ConfigError):
            self.loader.parse_content('{"thz": {"mu": 1}, "thz.mu": 2}', ConfigFormat.JSON)

    def test_syntax_errors(self):
        with pytest.raises(ConfigError):
            self.loader.parse_content("thz.mu 1\n", ConfigFormat.KEY_VALUE)
        with pytest.raises(ConfigError):
            self.loader.parse_content('{"thz": ', ConfigFormat.JSON)

    def test_parse_scalar(self):
        assert parse_scalar('2') == 2
        assert parse_scalar('2.5') == 2.5
        assert parse_scalar('off') is False
        assert parse_scalar('closed, mc') == ['closed', 'mc']
        assert parse_scalar('"psd"') == 'psd'

    def test_missing_file(self):
        with pytest.raises(FileNotFoundError):
            self.loader.load_config_file(data_file('missing.conf'))


class TestScenarioConfig:
    """场景与扫描规格构造测试"""

    def test_defaults(self):
        """缺省值取仿真参数表"""
        assert DEFAULTS['thz.noise_figure_db'] == 5.0
        assert DEFAULTS['thz.bandwidth_ghz'] == 10.0
        scenario, sweep = build_from_values(resolve_values({}))
        assert scenario.pointing.phi == pytest.approx(28.9576, rel=1e-4)
        assert scenario.pointing.s0 == pytest.approx(0.054, abs=1e-3)
        assert sweep.variable == 'tx_power_dbm'
        assert sweep.gamma_th == pytest.approx(10 ** 0.4)

    def test_noise_models(self):
        """psd 噪声模型按 -174 dBm/Hz + 带宽 + 噪声系数重新计算"""
        fixed, _ = build_from_values(resolve_values({}))
        psd, _ = build_from_values(resolve_values({'link.noise_model': 'psd'}))
        drop = 10 * math.log10(fixed.gamma0_2 / psd.gamma0_2)
        assert drop == pytest.approx(8.41, abs=0.05), f"RF 噪声差 {drop:.3f} dB"
        with pytest.raises(ConfigError):
            build_from_values(resolve_values({'link.noise_model': 'thermal'}))

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as exc:
            parse_config(data_file('unknown_key.conf'))
        assert exc.value.key == 'thz.colour'

    def test_beamwidth_ratio_out_of_range(self):
        with pytest.raises(ConfigValidationError) as exc:
            parse_config(data_file('bad_ratio.conf'))
        assert exc.value.key == 'pointing.beamwidth_ratio'

    def test_precedence(self):
        """运行环境默认 < 配置文件 < 命令行覆盖"""
        _, sweep = parse_config(data_file('scenario.conf'), overrides={'sweep.seed': 5},
                                base={'sweep.seed': 1, 'sweep.mc_samples': 20_000})
        assert sweep.seed == 5
        assert sweep.mc_samples == 20_000
        assert sweep.metrics == ['outage', 'avg_snr']
        assert sweep.direct is True

    def test_grid_validation(self):
        with pytest.raises(ConfigError) as exc:
            SweepSpec(grid=[0.0, 0.0, 5.0])
        assert exc.value.key == 'sweep.grid'
        with pytest.raises(ConfigError):
            SweepSpec(metrics=['throughput'])
        with pytest.raises(ConfigError):
            SweepSpec(methods=['exact'])

    def test_range_grid(self):
        _, sweep = build_from_values(resolve_values({'sweep.start': -10, 'sweep.stop': 10,
                                                     'sweep.step': 5}))
        assert sweep.grid == [-10.0, -5.0, 0.0, 5.0, 10.0]

    def test_modulation_name(self):
        """modulation.name 优先于 p/q，未知名称报配置错误"""
        _, sweep = build_from_values(resolve_values({'modulation.name': '4-PAM'}))
        assert sweep.modulation.p == 0.5
        assert sweep.modulation.q == pytest.approx(2.0 / 72.0)
        _, sweep = build_from_values(resolve_values({'modulation.name': 'nrz-ook'}))
        assert sweep.modulation.q == 0.125
        with pytest.raises(ConfigError) as exc:
            build_from_values(resolve_values({'modulation.name': '3-pam'}))
        assert exc.value.key == 'modulation.name'

    def test_snr_keys_must_pair(self):
        with pytest.raises(ConfigError):
            build_from_values(resolve_values({'snr.gamma0_1_db': 30.0}))

    def test_snr_scenario_rejects_power_sweep(self):
        with pytest.raises(ConfigError):
            build_from_values(resolve_values({'snr.gamma0_1_db': 30.0, 'snr.gamma0_2_db': 20.0}))
        scenario, _ = build_from_values(resolve_values({
            'snr.gamma0_1_db': 30.0, 'snr.gamma0_2_db': 20.0, 'sweep.variable': 'gamma_th_db',
        }))
        assert scenario.gamma0_1 == pytest.approx(1e3)


class TestSweep:
    """指标扫描测试"""

    def test_single_point(self):
        """单点、单指标、单方法：两列一行"""
        scenario, sweep = build_from_values(resolve_values({'sweep.grid': [10.0]}))
        table = run_sweep(scenario, sweep)
        assert table.columns == ['tx_power_dbm', 'outage_closed']
        assert len(table.rows) == 1
        assert 0.0 <= table.rows[0]['outage_closed'] <= 1.0

    def test_unavailable_method_is_na(self):
        """μ2 非整数时容量闭式不可用，记为 NA 并给出原因"""
        scenario, sweep = build_from_values(resolve_values({
            'rf.mu': 1.5, 'sweep.grid': [0.0], 'sweep.metrics': ['capacity'],
        }))
        table = run_sweep(scenario, sweep)
        assert table.columns == ['tx_power_dbm', 'capacity_closed', 'reason']
        row = table.rows[0]
        assert row['capacity_closed'] is None
        assert 'capacity_closed' in row['reason']

    def test_json_config_methods_agree(self):
        scenario, sweep = parse_config(data_file('scenario.json'))
        table = run_sweep(scenario, sweep, threads=2)
        assert table.columns == ['gamma_th_db', 'outage_closed', 'outage_quadrature']
        assert [row['gamma_th_db'] for row in table.rows] == [0.0, 4.0]
        for row in table.rows:
            assert row['outage_closed'] == pytest.approx(row['outage_quadrature'], rel=1e-6)

    def test_distance_split_outside_range(self):
        scenario, sweep = build_from_values(resolve_values({
            'sweep.variable': 'distance_split', 'sweep.grid': [50.0, 120.0],
        }))
        table = run_sweep(scenario, sweep)
        assert table.rows[0]['outage_closed'] is not None
        assert table.rows[1]['outage_closed'] is None
        assert table.rows[1]['reason']


class TestReport:
    """结果输出测试"""

    def setup_method(self):
        scenario, sweep = parse_config(data_file('scenario.conf'))
        self.scenario, self.sweep = scenario, sweep
        self.table = run_sweep(scenario, sweep)

    def test_csv_layout(self):
        text = emit(self.table, 'csv')
        lines = text.rstrip('\n').split('\n')
        assert lines[0] == ('tx_power_dbm,outage_closed,outage_direct_thz,outage_direct_rf,'
                            'avg_snr_closed,avg_snr_direct_thz,avg_snr_direct_rf')
        assert len(lines) == 3

    def test_reruns_identical(self):
        first = emit(self.table, 'csv')
        second = emit(run_sweep(self.scenario, self.sweep), 'csv')
        assert first == second, "相同配置两次运行的输出应逐字节一致"

    def test_round_trip(self):
        for fmt in ('csv', 'json'):
            parsed = parse_table(emit(self.table, fmt), fmt)
            assert parsed.columns == self.table.columns
            for original, restored in zip(self.table.rows, parsed.rows):
                for column in self.table.columns:
                    assert restored[column] == pytest.approx(original[column], rel=1e-15)

    def test_missing_values(self):
        table = run_sweep(*build_from_values(resolve_values({
            'rf.mu': 1.5, 'sweep.grid': [0.0], 'sweep.metrics': ['capacity'],
        })))
        assert ',NA,' in emit(table, 'csv')
        record = json.loads(emit(table, 'json'))['rows'][0]
        assert record['capacity_closed'] is None

    def test_write_file(self, tmp_path):
        path = tmp_path / 'out.json'
        text = emit(self.table, 'json', str(path))
        assert path.read_text(encoding='utf-8') == text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit(self.table, 'xlsx')


class TestPresets:
    """结果图预设测试"""

    def test_names(self):
        assert set(PRESETS) == {'fig2a', 'fig2b', 'fig3a', 'fig3b', 'fig4a', 'fig4b', 'fig5a', 'fig5b'}
        with pytest.raises(KeyError):
            get_preset('fig9')

    def test_curves_resolve(self):
        """每条曲线的配置都能构造场景"""
        for preset in PRESETS.values():
            for _, curve in preset.curves:
                scenario, sweep = build_from_values(resolve_values({**preset.base, **curve}))
                assert sweep.grid

    def test_outage_preset_short_grid(self):
        table = run_preset('fig2a', {'sweep.start': 0.0, 'sweep.stop': 10.0, 'sweep.step': 10.0})
        assert table.columns[:2] == ['curve', 'tx_power_dbm']
        assert len(table.rows) == 4 * 2
        assert [row['curve'] for row in table.rows[:2]] == ['mu1=0.5', 'mu1=0.5']

    @pytest.mark.slow
    def test_fig3b_relay_gain(self):
        """中继相对 THz 直连的平均信噪比增益约 6 dB"""
        table = run_preset('fig3b', {'sweep.start': 0.0, 'sweep.stop': 10.0, 'sweep.step': 10.0})
        for row in table.rows:
            gain = 10.0 * math.log10(row['avg_snr_closed'] / row['avg_snr_direct_thz'])
            assert 4.0 <= gain <= 6.5, f"P={row['tx_power_dbm']} dBm: 增益 {gain:.2f} dB"

    @pytest.mark.slow
    def test_fig4b_relay_capacity(self):
        table = run_preset('fig4b', {'sweep.start': 5.0, 'sweep.stop': 20.0, 'sweep.step': 5.0})
        for row in table.rows:
            assert row['capacity_closed'] > row['capacity_direct_thz'], f"{row['curve']} 在 {row['tx_power_dbm']} dBm"

    @pytest.mark.slow
    def test_fig5b_best_relay_position(self):
        """总距离 80 m 时中继越靠近源端误码率越低"""
        table = run_preset('fig5b')
        values = [row['ber_closed'] for row in table.rows]
        assert [row['distance_split'] for row in table.rows] == [10.0 * k for k in range(1, 8)]
        assert values.index(min(values)) == 0


class TestEntryPoint:
    """命令行入口测试"""

    def test_derive(self, capsys):
        assert main(['--environment', 'development', 'derive']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['pointing']['phi'] == pytest.approx(28.9576, rel=1e-4)
        assert report['epsilon'] == pytest.approx(1.0)

    def test_absorption(self, capsys):
        assert main(['absorption']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['absorption_coefficient_per_m'] == pytest.approx(3.94e-4, rel=0.03)
        assert report['gamma0_1_db'] == pytest.approx(74.1, abs=0.3)

    def test_bad_ratio_exit_code(self):
        assert main(['--config', data_file('bad_ratio.conf'), 'derive']) == 2

    def test_sweep_to_file(self, tmp_path):
        path = tmp_path / 'sweep.csv'
        code = main(['--config', data_file('scenario.conf'), '--out', str(path), 'sweep'])
        assert code == 0
        header = path.read_text(encoding='utf-8').split('\n', 1)[0]
        assert header.startswith('tx_power_dbm,outage_closed')


if __name__ == '__main__':
    pytest.main([__file__, '-v'])

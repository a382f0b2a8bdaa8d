#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Meijer G 函数数值求值
通过 Mellin-Barnes 围道积分计算 G^{m,n}_{p,q}(z)：
- δ = m + n - (p+q)/2 > 0 时在鞍点处取竖直围道，用梯形公式逐次加密
- δ ≤ 0 时把围道两端弯折成射线，用自适应积分
- a 极点落在 b 极点右侧时，围道取在剩余极点的分隔带内，另加错位极点的留数

内部接口以 log z 为自变量，返回 (归一化值, 对数尺度)
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize, special

from utils.errors import DomainError, MeijerGEvaluationError

logger = logging.getLogger(__name__)

# 重复 b 参数的扰动步长
POLE_PERTURBATION = 1e-8
# 截断阈值：被积函数对数值低于峰值该量后视为可忽略
TAIL_LOG_DROP = 45.0
# 梯形节点上限
MAX_NODES = 4_000_000
CHUNK_SIZE = 512
MAX_HALVINGS = 10
# 精度验收下限（目标精度 1e-8）
ACCEPT_RTOL = 1e-8
# 留数圆上的节点数
RESIDUE_NODES = 64
# a 极点与 b 极点视为重合的相对距离
POLE_COINCIDENCE = 1e-10
# 同一留数圆内的极点间距上限
POLE_MERGE = 1e-3
MAX_MISPLACED_POLES = 200


@dataclass(frozen=True)
class MeijerSpec:
    """Meijer G 函数参数"""
    m: int
    n: int
    p: int
    q: int
    a: Tuple[float, ...]  # 长度 p，前 n 个对应分子 Γ(1 - a_k + s)
    b: Tuple[float, ...]  # 长度 q，前 m 个对应分子 Γ(b_j - s)

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if len(a) != self.p or len(b) != self.q:
            raise DomainError(
                f"参数个数与阶数不符: p={self.p}, len(a)={len(a)}, q={self.q}, len(b)={len(b)}"
            )
        if not (0 <= self.m <= self.q and 0 <= self.n <= self.p):
            raise DomainError(f"阶数非法: m={self.m}, n={self.n}, p={self.p}, q={self.q}")
        if not all(math.isfinite(v) for v in a + b):
            raise DomainError("Meijer G 参数必须为有限实数")

        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', self._perturb_duplicates(b))

    def _perturb_duplicates(self, b: Tuple[float, ...]) -> Tuple[float, ...]:
        """前 m 个 b 参数重合时按序号加 1e-8·j 的扰动"""
        head = list(b[:self.m])
        for j in range(1, len(head)):
            if any(abs(head[j] - head[i]) < 1e-12 for i in range(j)):
                shifted = head[j] + POLE_PERTURBATION * j
                logger.debug(
                    f"Meijer G 参数 b[{j}]={head[j]} 与前项重合，扰动为 {shifted}（相对误差约 1e-8）"
                )
                head[j] = shifted
        return tuple(head) + b[self.m:]

    @classmethod
    def from_groups(cls, a_head: Sequence[float], a_tail: Sequence[float],
                    b_head: Sequence[float], b_tail: Sequence[float]) -> 'MeijerSpec':
        """按 [[a_1..a_n], [a_{n+1}..a_p]], [[b_1..b_m], [b_{m+1}..b_q]] 分组构造"""
        return cls(
            m=len(b_head), n=len(a_head),
            p=len(a_head) + len(a_tail), q=len(b_head) + len(b_tail),
            a=tuple(a_head) + tuple(a_tail), b=tuple(b_head) + tuple(b_tail),
        )

    @property
    def delta(self) -> float:
        return self.m + self.n - 0.5 * (self.p + self.q)

    @property
    def strip(self) -> Tuple[float, float]:
        """竖直围道可放置的区间 (max(a_k - 1), min(b_j))"""
        lo = max((ak - 1.0 for ak in self.a[:self.n]), default=-math.inf)
        hi = min(self.b[:self.m], default=math.inf)
        return lo, hi

    def grouped(self) -> Tuple[List[List[float]], List[List[float]]]:
        """mpmath.meijerg 风格的分组参数"""
        return (
            [list(self.a[:self.n]), list(self.a[self.n:])],
            [list(self.b[:self.m]), list(self.b[self.m:])],
        )


@dataclass
class MeijerValue:
    """Meijer G 求值结果"""
    value: float
    error: float           # 误差估计（绝对值）
    contour: str           # 'vertical' 或 'bent'
    nodes: int             # 被积函数求值次数
    diagnostics: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value


@dataclass
class ScaledMeijer:
    """归一化结果：G = normalized · exp(log_scale)"""
    normalized: float
    log_scale: float
    error: float  # 归一化尺度上的误差
    contour: str
    nodes: int

    @property
    def value(self) -> float:
        return self.normalized * math.exp(self.log_scale)


def _log_integrand(spec: MeijerSpec, s: np.ndarray, log_z: float) -> np.ndarray:
    """Mellin-Barnes 被积函数的对数（复数组）"""
    total = s * log_z
    for bj in spec.b[:spec.m]:
        total = total + special.loggamma(bj - s)
    for ak in spec.a[:spec.n]:
        total = total + special.loggamma(1.0 - ak + s)
    for bj in spec.b[spec.m:]:
        total = total - special.loggamma(1.0 - bj + s)
    for ak in spec.a[spec.n:]:
        total = total - special.loggamma(ak - s)
    return total


def _denominator_envelope(x: float) -> float:
    """分母 log|Γ(x)| 的光滑包络：x < 1/2 时去掉反射公式中的 |sin πx|"""
    if x >= 0.5:
        return float(special.gammaln(x))
    return math.log(math.pi) - float(special.gammaln(1.0 - x))


def _denominator_curvature(x: float) -> float:
    if x >= 0.5:
        return -float(special.polygamma(1, x))
    return float(special.polygamma(1, 1.0 - x))


def _envelope(spec: MeijerSpec, c: float, log_z: float) -> float:
    """实轴上 log|被积函数| 的包络"""
    val = c * log_z
    for bj in spec.b[:spec.m]:
        val += float(special.gammaln(bj - c))
    for ak in spec.a[:spec.n]:
        val += float(special.gammaln(1.0 - ak + c))
    for bj in spec.b[spec.m:]:
        val -= _denominator_envelope(1.0 - bj + c)
    for ak in spec.a[spec.n:]:
        val -= _denominator_envelope(ak - c)
    return val


def _envelope_curvature(spec: MeijerSpec, c: float) -> float:
    kappa = 0.0
    for bj in spec.b[:spec.m]:
        kappa += float(special.polygamma(1, bj - c))
    for ak in spec.a[:spec.n]:
        kappa += float(special.polygamma(1, 1.0 - ak + c))
    for bj in spec.b[spec.m:]:
        kappa += _denominator_curvature(1.0 - bj + c)
    for ak in spec.a[spec.n:]:
        kappa += _denominator_curvature(ak - c)
    return kappa


def _locate_saddle(spec: MeijerSpec, log_z: float, lo: float, hi: float) -> float:
    """在极点分隔带内寻找包络最小点（竖直方向上的鞍点）"""
    objective = lambda c: _envelope(spec, c, log_z)

    if math.isfinite(lo) and math.isfinite(hi):
        margin = 1e-4 * (hi - lo)
        left, right = lo + margin, hi - margin
    elif math.isfinite(hi):
        right = hi - 1e-4
        width = 30.0
        # 向左扩展直到包络重新上升
        while width < 1e7 and objective(right - width) <= objective(right - 0.5 * width):
            width *= 4.0
        left = right - width
    else:
        left = lo + 1e-4
        width = 30.0
        while width < 1e7 and objective(left + width) <= objective(left + 0.5 * width):
            width *= 4.0
        right = left + width

    result = optimize.minimize_scalar(objective, bounds=(left, right), method='bounded',
                                      options={'xatol': 1e-10 * max(1.0, right - left)})
    return float(result.x)


def _evaluate_vertical(spec: MeijerSpec, log_z: float, lo: float, hi: float,
                       rtol: float) -> ScaledMeijer:
    """竖直围道 + 梯形公式"""
    c = _locate_saddle(spec, log_z, lo, hi)
    gap = min(c - lo, hi - c)
    kappa = _envelope_curvature(spec, c)
    sigma_t = 1.0 / math.sqrt(kappa) if kappa > 0 else 1.0
    h = min(gap / 4.0, sigma_t / 2.0, 1.0)

    # 基础网格：分块推进直到被积函数衰减到峰值以下
    chunks = []
    peak = -math.inf
    start = 0
    while True:
        t = h * np.arange(start, start + CHUNK_SIZE)
        lf = _log_integrand(spec, c + 1j * t, log_z)
        chunks.append(lf)
        real = lf.real[np.isfinite(lf.real)]
        if real.size:
            peak = max(peak, float(real.max()))
            chunk_max = float(real.max())
        else:
            chunk_max = -math.inf
        start += CHUNK_SIZE
        if start > CHUNK_SIZE and chunk_max < peak - TAIL_LOG_DROP:
            break
        if start >= MAX_NODES:
            raise MeijerGEvaluationError(
                "Meijer G 围道积分节点数超限",
                {'c': c, 'h': h, 'log_z': log_z, 'delta': spec.delta},
            )

    if not math.isfinite(peak):
        raise MeijerGEvaluationError("Meijer G 被积函数在围道上非有限", {'c': c, 'log_z': log_z})

    def weights(lf: np.ndarray) -> np.ndarray:
        vals = np.exp(lf - peak)
        vals[~np.isfinite(vals)] = 0.0
        return vals

    base = weights(np.concatenate(chunks))
    n_base = base.size
    total = base.real.sum() - 0.5 * base[0].real
    l1 = np.abs(base).sum()
    estimate = h * total / math.pi
    scale = h * l1 / math.pi
    nodes = n_base
    count = n_base
    error = math.inf

    for _ in range(MAX_HALVINGS):
        # 加密：只计算新的中点
        offsets = h * (np.arange(count) + 0.5)
        count *= 2
        mid = weights(_log_integrand(spec, c + 1j * offsets, log_z))
        h_new = 0.5 * h
        refined = 0.5 * estimate + h_new * mid.real.sum() / math.pi
        scale = 0.5 * scale + h_new * np.abs(mid).sum() / math.pi
        error = abs(refined - estimate)
        estimate = refined
        nodes += mid.size
        h = h_new
        if error <= max(rtol * abs(estimate), 64.0 * np.finfo(float).eps * scale):
            break
    else:
        if error > max(ACCEPT_RTOL * abs(estimate), 1e-12 * scale):
            raise MeijerGEvaluationError(
                "Meijer G 梯形公式未收敛",
                {'c': c, 'h': h, 'error': error, 'estimate': estimate, 'nodes': nodes},
            )

    logger.debug(f"Meijer G 竖直围道: c={c:.6g}, h={h:.3g}, 节点={nodes}, 误差={error:.2e}")
    return ScaledMeijer(normalized=float(estimate), log_scale=peak, error=float(error),
                        contour='vertical', nodes=nodes)


def _evaluate_bent(spec: MeijerSpec, log_z: float, lo: float, hi: float,
                   rtol: float) -> ScaledMeijer:
    """δ ≤ 0：围道两端沿 ±θ 方向弯折成射线"""
    if math.isfinite(lo) and math.isfinite(hi):
        c = 0.5 * (lo + hi)
    elif math.isfinite(hi):
        c = hi - 0.5
    elif math.isfinite(lo):
        c = lo + 0.5
    else:
        raise MeijerGEvaluationError("m = n = 0 时无法构造围道", {'spec': spec})

    # 射线走向右侧极点（p < q）或左侧极点（p > q）；p = q 时由 |z| 决定
    if spec.p < spec.q or (spec.p == spec.q and log_z < 0):
        theta = math.pi / 3.0
    else:
        theta = 2.0 * math.pi / 3.0
    direction = complex(math.cos(theta), math.sin(theta))
    peak = float(_log_integrand(spec, np.array([complex(c, 0.0)]), log_z)[0].real)

    def integrand(r: float) -> float:
        lf = _log_integrand(spec, np.array([c + r * direction]), log_z)[0]
        val = direction * np.exp(lf - peak)
        return float(val.imag) if np.isfinite(val) else 0.0

    value, abserr, info = integrate.quad(integrand, 0.0, np.inf, limit=400,
                                         epsrel=rtol, epsabs=0.0, full_output=True)
    value /= math.pi
    abserr /= math.pi
    if abserr > max(ACCEPT_RTOL * abs(value), 1e-14):
        raise MeijerGEvaluationError(
            "Meijer G 弯折围道积分未收敛",
            {'c': c, 'theta': theta, 'error': abserr, 'estimate': value},
        )
    return ScaledMeijer(normalized=value, log_scale=peak, error=abserr,
                        contour='bent', nodes=int(info['neval']))


def _pole_residue(spec: MeijerSpec, center: float, radius: float,
                  log_z: float) -> Tuple[float, float, float]:
    """
    圆周 |s - center| = radius 上的梯形公式求留数之和，
    返回 (归一化值, 对数尺度, 误差)，误差取 64 点与 32 点结果之差
    """
    phase = np.exp(2j * math.pi * np.arange(RESIDUE_NODES) / RESIDUE_NODES)
    lf = _log_integrand(spec, center + radius * phase, log_z)
    peak = float(np.max(lf.real))
    vals = np.exp(lf - peak) * radius * phase
    fine = vals.mean()
    coarse = vals[::2].mean()
    return float(fine.real), peak, float(abs(fine - coarse))


def _nearest_pole_distance(spec: MeijerSpec, s: float, cluster: Sequence[float]) -> float:
    """s 到簇外最近极点的距离"""
    nearest = math.inf
    candidates = []
    for bj in spec.b[:spec.m]:
        base = max(0, math.floor(s - bj))
        candidates.extend(bj + l for l in (base, base + 1))
    for ak in spec.a[:spec.n]:
        base = max(0, math.floor(ak - 1.0 - s))
        candidates.extend(ak - 1.0 - l for l in (base, base + 1))
    for pole in candidates:
        if all(abs(pole - member) > POLE_MERGE for member in cluster):
            nearest = min(nearest, abs(pole - s))
    return nearest


def _misplaced_poles(spec: MeijerSpec, hi: float) -> Tuple[float, List[List[float]]]:
    """
    位于 min(b_j) 右侧的 Γ(1 - a_k + s) 极点

    Returns:
        (这些极点移走后的 max 左侧极点, 按位置聚合的极点簇)

    Raises:
        MeijerGEvaluationError: a 极点与 b 极点重合或极点数过多
    """
    lo_eff = -math.inf
    poles = []
    for ak in spec.a[:spec.n]:
        top = ak - 1.0
        count = 0 if top < hi else math.floor(top - hi) + 1
        poles.extend(top - l for l in range(count))
        lo_eff = max(lo_eff, top - count)
    if len(poles) > MAX_MISPLACED_POLES:
        raise MeijerGEvaluationError("需要修正的极点过多", {'count': len(poles), 'a': spec.a, 'b': spec.b})

    b_poles = [bj + l for bj in spec.b[:spec.m] for l in range(len(poles) + 2)]
    for pole in poles + [lo_eff]:
        if any(abs(pole - bp) <= POLE_COINCIDENCE * max(1.0, abs(bp)) for bp in b_poles):
            raise MeijerGEvaluationError(
                "Meijer G 的 a 极点与 b 极点重合，函数无定义",
                {'pole': pole, 'a': spec.a, 'b': spec.b},
            )

    clusters: List[List[float]] = []
    for pole in sorted(poles):
        if clusters and pole - clusters[-1][-1] <= POLE_MERGE:
            clusters[-1].append(pole)
        else:
            clusters.append([pole])
    return lo_eff, clusters


def _with_residues(spec: MeijerSpec, log_z: float, hi: float, rtol: float) -> ScaledMeijer:
    """
    极点无法分隔时，围道取在去掉错位极点后的分隔带内，
    再加上绕错位 a 极点逆时针一周的留数
    """
    lo_eff, clusters = _misplaced_poles(spec, hi)
    if spec.delta > 0:
        line = _evaluate_vertical(spec, log_z, lo_eff, hi, rtol)
    else:
        line = _evaluate_bent(spec, log_z, lo_eff, hi, rtol)

    parts = [(line.normalized, line.log_scale, line.error)]
    for cluster in clusters:
        center = 0.5 * (cluster[0] + cluster[-1])
        radius = 0.5 * min(_nearest_pole_distance(spec, center, cluster), 1.0)
        if radius <= 2.0 * (cluster[-1] - center):
            raise MeijerGEvaluationError("留数圆无法隔离极点", {'cluster': cluster, 'radius': radius})
        parts.append(_pole_residue(spec, center, radius, log_z))

    log_scale = max(scale for _, scale, _ in parts)
    normalized = sum(v * math.exp(scale - log_scale) for v, scale, _ in parts)
    error = sum(e * math.exp(scale - log_scale) for _, scale, e in parts)
    logger.debug(f"Meijer G 留数修正: {sum(len(c) for c in clusters)} 个极点, 分隔带=({lo_eff:.6g}, {hi:.6g})")
    return ScaledMeijer(normalized=normalized, log_scale=log_scale, error=error,
                        contour=f"{line.contour}+residue", nodes=line.nodes + RESIDUE_NODES * len(clusters))


def meijer_g_scaled(spec: MeijerSpec, log_z: float, rtol: float = 1e-11) -> ScaledMeijer:
    """
    以 log z 为自变量计算 G^{m,n}_{p,q}(z)，返回归一化值与对数尺度

    Raises:
        MeijerGEvaluationError: a 极点与 b 极点重合或积分不收敛
    """
    lo, hi = spec.strip
    if not lo < hi:
        return _with_residues(spec, log_z, hi, rtol)
    if spec.delta > 0:
        return _evaluate_vertical(spec, log_z, lo, hi, rtol)
    return _evaluate_bent(spec, log_z, lo, hi, rtol)


def meijer_g(spec: MeijerSpec, z: float, rtol: float = 1e-11) -> MeijerValue:
    """
    计算 Meijer G 函数 G^{m,n}_{p,q}(z | a; b)，z > 0

    Args:
        spec: 参数
        z: 正实自变量
        rtol: 相对精度目标

    Returns:
        带误差估计的结果
    """
    if not z > 0:
        raise DomainError(f"meijer_g 仅支持 z > 0: z={z}")
    scaled = meijer_g_scaled(spec, math.log(z), rtol)
    factor = math.exp(scaled.log_scale)
    return MeijerValue(
        value=scaled.normalized * factor,
        error=scaled.error * factor,
        contour=scaled.contour,
        nodes=scaled.nodes,
        diagnostics={'log_scale': scaled.log_scale},
    )

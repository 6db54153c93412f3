"""Canceller-configuration solvers.

The configuration problem is a box-constrained nonlinear least squares:
minimize sum_k |H_SI(f_k) - H(f_k; x)|^2 over the 4M knobs x of an M-tap
canceller.  This module provides:

* multi-start projected gradient descent on the continuous box,
* rounding onto quantization grids plus coordinate-wise local search,
* the per-tap iterative fitting heuristic,
* an exhaustive lattice oracle for testing.

Knob vectors are ordered (amp_db, phase_rad, center, q) per tap, taps
concatenated.  For the ideal model center/q are f_c (Hz) and Q; for the PCB
model they are C_F and C_Q in pF.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import ComplexResponse, FrequencyGrid
from .errors import InvalidArgumentError, LatticeTooLargeError, SolverFailureError
from .metrics import rf_sic_db
from .models import IdealTapConfig, PcbBoardParams, PcbTapConfig

KNOB_NAMES = ("amp_db", "phase_rad", "center", "q")
LATTICE_CAP = 10**7


# ---------------------------------------------------------------------------
# knob grids, bounds, presets


@dataclass(frozen=True)
class KnobSpec:
    """Discrete grid for one knob: a range plus a step or a bit depth."""

    min: float
    max: float
    step: float | None = None
    bits: int | None = None
    periodic: bool = False

    def __post_init__(self):
        if not (self.min < self.max):
            raise InvalidArgumentError("knob min must be < max")
        if (self.step is None) == (self.bits is None):
            raise InvalidArgumentError("specify exactly one of step or bits")
        if self.step is not None and not (self.step > 0):
            raise InvalidArgumentError("step must be positive")
        if self.bits is not None and self.bits < 1:
            raise InvalidArgumentError("bits must be >= 1")

    def values(self) -> np.ndarray:
        if self.bits is not None:
            return np.linspace(self.min, self.max, 2**self.bits)
        n = int(math.floor((self.max - self.min) / self.step + 1e-9)) + 1
        return self.min + np.arange(n) * self.step

    def snap(self, v: float) -> float:
        """Nearest grid value; exact midpoints round toward the smaller value."""
        span = self.max - self.min
        if self.periodic:
            v = (v - self.min) % span + self.min
        if v < self.min - 1e-9 * span or v > self.max + 1e-9 * span:
            raise InvalidArgumentError(
                f"value {v!r} outside knob range [{self.min}, {self.max}]"
            )
        vals = self.values()
        v = min(max(v, vals[0]), vals[-1])
        idx = int(np.searchsorted(vals, v))
        if idx == 0:
            return float(vals[0])
        lo, hi = vals[idx - 1], vals[min(idx, vals.size - 1)]
        return float(lo) if v - lo <= hi - v else float(hi)


@dataclass(frozen=True)
class QuantizationSpec:
    """Per-knob discrete grids for one tap model."""

    amp_db: KnobSpec
    phase_rad: KnobSpec
    center: KnobSpec
    q: KnobSpec

    def knobs(self):
        return (self.amp_db, self.phase_rad, self.center, self.q)

    def bounds(self) -> "BoxBounds":
        return BoxBounds(
            amp_db=(self.amp_db.min, self.amp_db.max),
            phase_rad=(self.phase_rad.min, self.phase_rad.max),
            center=(self.center.min, self.center.max),
            q=(self.q.min, self.q.max),
        )


@dataclass(frozen=True)
class BoxBounds:
    """Continuous box constraints per knob; phase is treated as periodic."""

    amp_db: tuple
    phase_rad: tuple = (-np.pi, np.pi)
    center: tuple = (875e6, 925e6)
    q: tuple = (1.0, 50.0)

    def lows(self) -> np.ndarray:
        return np.array(
            [self.amp_db[0], self.phase_rad[0], self.center[0], self.q[0]]
        )

    def highs(self) -> np.ndarray:
        return np.array(
            [self.amp_db[1], self.phase_rad[1], self.center[1], self.q[1]]
        )


def quantization_preset(name: str) -> QuantizationSpec:
    """Named hardware presets: `rfic` (ideal tap) and `pcb` (discrete tap)."""
    if name == "rfic":
        return QuantizationSpec(
            amp_db=KnobSpec(-40.0, -10.0, step=0.25),
            phase_rad=KnobSpec(-np.pi, np.pi, bits=8, periodic=True),
            center=KnobSpec(875e6, 925e6, bits=8),
            q=KnobSpec(1.0, 50.0, bits=8),
        )
    if name == "pcb":
        return QuantizationSpec(
            amp_db=KnobSpec(-15.5, 0.0, step=0.5),
            phase_rad=KnobSpec(-np.pi, np.pi, bits=8, periodic=True),
            center=KnobSpec(0.6, 2.4, step=0.12),
            q=KnobSpec(2.0, 14.0, step=0.39),
        )
    raise InvalidArgumentError(f"unknown preset {name!r} (expected 'rfic' or 'pcb')")


def default_bounds(model: str) -> BoxBounds:
    return quantization_preset("rfic" if model == "ideal" else "pcb").bounds()


# ---------------------------------------------------------------------------
# model kernels (vectorized evaluation from raw knob matrices)


def _ideal_tap_matrix(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Per-tap responses of M ideal taps, shape (M, K); x has shape (M, 4)."""
    amp = 10.0 ** (x[:, 0] / 20.0)
    fc = x[:, 2]
    q = x[:, 3]
    ratio = fc[:, None] / f[None, :] - f[None, :] / fc[:, None]
    return amp[:, None] * np.exp(-1j * x[:, 1])[:, None] / (1.0 - 1j * q[:, None] * ratio)


def _ideal_values(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Canceller response of M ideal taps; x has shape (M, 4)."""
    return _ideal_tap_matrix(x, f).sum(axis=0)


def _pcb_tap_matrix(x: np.ndarray, f: np.ndarray, board: PcbBoardParams) -> np.ndarray:
    """Per-tap responses of M PCB taps including the global attenuation/delay
    factor (which is linear, so the canceller response is the row sum)."""
    w = 2.0 * np.pi * f
    y_f = (
        1.0 / board.r_f_ohm
        + 1j * w[None, :] * (x[:, 2, None] * 1e-12)
        + 1.0 / (1j * w[None, :] * (board.l_f_nh * 1e-9))
    )
    y_q = (
        1.0 / board.r_q_ohm
        + 1j * w[None, :] * (x[:, 3, None] * 1e-12)
        + 1.0 / (1j * w[None, :] * (board.l_q_nh * 1e-9))
    )
    bl = board.beta_l_rad
    z0 = board.z0_ohm
    s2 = np.sin(2.0 * bl)
    m_c = (
        1j * s2 * z0 * y_f * y_q
        + np.cos(bl) ** 2 * y_f
        + 2.0 * np.cos(2.0 * bl) * y_q
        + 1j * s2 / z0
        + 1j * s2 * z0 * y_q * y_q
        - np.sin(bl) ** 2 * z0 * z0 * y_f * y_q * y_q
    )
    h_bpf = 1.0 / (board.r_s_ohm * m_c)
    amp = 10.0 ** (x[:, 0] / 20.0)
    weighted = amp[:, None] * np.exp(-1j * x[:, 1])[:, None] * h_bpf
    a0 = 10.0 ** (board.a0_db / 20.0)
    return a0 * np.exp(-2j * np.pi * f * board.tau0_s)[None, :] * weighted


def _pcb_values(x: np.ndarray, f: np.ndarray, board: PcbBoardParams) -> np.ndarray:
    """Canceller response of M PCB taps; x has shape (M, 4) with C in pF."""
    return _pcb_tap_matrix(x, f, board).sum(axis=0)


class ModelKernel:
    """Evaluates objective(x) = sum_k |h_si_k - H(f_k; x)|^2 for one model."""

    def __init__(self, model: str, h_si: ComplexResponse, board=None):
        if model not in ("ideal", "pcb"):
            raise InvalidArgumentError(f"unknown model {model!r}")
        self.model = model
        self.h_si = h_si
        self.board = board if board is not None else PcbBoardParams()
        self._f = h_si.grid.points
        self._target = h_si.values

    def response_values(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1, 4)
        if self.model == "ideal":
            return _ideal_values(x, self._f)
        return _pcb_values(x, self._f, self.board)

    def objective(self, x: np.ndarray) -> float:
        d = self._target - self.response_values(x)
        return float(np.sum(d.real**2 + d.imag**2))

    def objective_batch(self, xs: np.ndarray) -> np.ndarray:
        """Objectives for a batch of configs; xs has shape (P, M, 4)."""
        p, m, _ = xs.shape
        flat = xs.reshape(p * m, 4)
        if self.model == "ideal":
            mat = _ideal_tap_matrix(flat, self._f)
        else:
            mat = _pcb_tap_matrix(flat, self._f, self.board)
        resp = mat.reshape(p, m, self._f.size).sum(axis=1)
        d = self._target[None, :] - resp
        return np.sum(d.real**2 + d.imag**2, axis=1)

    def configs_from_vector(self, x: np.ndarray):
        x = np.asarray(x, dtype=float).reshape(-1, 4)
        if self.model == "ideal":
            return [IdealTapConfig(r[0], r[1], r[2], r[3]) for r in x]
        return [PcbTapConfig(r[0], r[1], r[2], r[3]) for r in x]

    def avg_sic_db(self, x: np.ndarray) -> float:
        resid = self._target - self.response_values(x)
        return rf_sic_db(ComplexResponse(self.h_si.grid, resid)).avg_db


def config_vector(cfgs) -> np.ndarray:
    """Flatten tap configs into the (M, 4) knob matrix."""
    rows = []
    for c in cfgs:
        if isinstance(c, IdealTapConfig):
            rows.append([c.amp_db, c.phase_rad, c.center_hz, c.q])
        elif isinstance(c, PcbTapConfig):
            rows.append([c.amp_db, c.phase_rad, c.cf_pf, c.cq_pf])
        else:
            raise InvalidArgumentError(f"unsupported config type {type(c).__name__}")
    return np.array(rows, dtype=float)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SolveOptions:
    restarts: int = 16
    max_iters: int = 500
    grad_eps: float = 1e-6
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise InvalidArgumentError("restarts and max_iters must be >= 1")
        if not (self.grad_eps > 0) or self.tol < 0:
            raise InvalidArgumentError("grad_eps must be > 0 and tol >= 0")


@dataclass(frozen=True)
class SolveReport:
    config: list
    objective: float
    avg_sic_db: float
    iterations: int
    restart_index: int
    trace: list = field(repr=False)
    quantized: bool = False

    def to_dict(self) -> dict:
        cfgs = []
        for c in self.config:
            if isinstance(c, IdealTapConfig):
                cfgs.append(
                    {
                        "kind": "ideal",
                        "amp_db": c.amp_db,
                        "phase_rad": c.phase_rad,
                        "center_hz": c.center_hz,
                        "q": c.q,
                    }
                )
            else:
                cfgs.append(
                    {
                        "kind": "pcb",
                        "amp_db": c.amp_db,
                        "phase_rad": c.phase_rad,
                        "cf_pf": c.cf_pf,
                        "cq_pf": c.cq_pf,
                    }
                )
        return {
            "config": cfgs,
            "objective": self.objective,
            "avg_sic_db": self.avg_sic_db,
            "iterations": self.iterations,
            "restart_index": self.restart_index,
            "trace": list(self.trace),
            "quantized": self.quantized,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def report_from_dict(d: dict) -> SolveReport:
    cfgs = []
    for c in d["config"]:
        if c["kind"] == "ideal":
            cfgs.append(
                IdealTapConfig(c["amp_db"], c["phase_rad"], c["center_hz"], c["q"])
            )
        else:
            cfgs.append(PcbTapConfig(c["amp_db"], c["phase_rad"], c["cf_pf"], c["cq_pf"]))
    return SolveReport(
        cfgs,
        d["objective"],
        d["avg_sic_db"],
        d["iterations"],
        d["restart_index"],
        list(d["trace"]),
        bool(d.get("quantized", False)),
    )


# ---------------------------------------------------------------------------
# objective + continuous solver


def residual_objective(h_si: ComplexResponse, h_canc: ComplexResponse) -> float:
    """sum_k |H_SI(f_k) - H(f_k)|^2."""
    if h_canc.grid != h_si.grid:
        raise InvalidArgumentError("responses must share a grid")
    d = h_si.values - h_canc.values
    return float(np.sum(d.real**2 + d.imag**2))


def _descend(kernel, z0, lows, span, periodic, opts):
    """Projected gradient descent in box-normalized coordinates z in [0,1].

    Returns (z_best, objective, trace) with a monotone non-increasing trace,
    or None if the objective was never finite.
    """

    n = z0.size
    m = n // 4

    def denorm(z):
        return lows + z * span

    def project(z):
        z = z.copy()
        z[..., periodic] = z[..., periodic] % 1.0
        np.clip(z, 0.0, 1.0, out=z)
        return z

    def f(z):
        return kernel.objective(denorm(z))

    def f_batch(zs):
        return kernel.objective_batch(denorm(zs).reshape(zs.shape[0], m, 4))

    z = project(z0)
    fz = f(z)
    if not np.isfinite(fz):
        return None
    trace = [fz]
    h = max(opts.grad_eps, 1e-9)
    t = 1.0
    n_bt = 40
    g_prev = None
    s_prev = None
    for _ in range(opts.max_iters):
        # central-difference gradient, all 2n perturbed points in one batch
        zs = np.repeat(z[None, :], 2 * n, axis=0)
        dz = np.empty(n)
        for i in range(n):
            if periodic[i]:
                zp, zm = z[i] + h, z[i] - h
            else:
                zp, zm = min(z[i] + h, 1.0), max(z[i] - h, 0.0)
            zs[2 * i, i] = zp
            zs[2 * i + 1, i] = zm
            dz[i] = zp - zm
        fs = f_batch(project(zs))
        with np.errstate(invalid="ignore"):
            g = np.where(dz != 0, (fs[0::2] - fs[1::2]) / np.where(dz == 0, 1, dz), 0.0)
        gnorm2 = float(np.dot(g, g))
        if gnorm2 == 0 or not np.isfinite(gnorm2):
            break
        # spectral (Barzilai-Borwein) initial step length, safeguarded by
        # backtracking; all candidate step lengths evaluated in one batch
        t_bb = None
        if g_prev is not None and s_prev is not None:
            y = g - g_prev
            sy = float(np.dot(s_prev, y))
            if sy > 0 and np.isfinite(sy):
                t_bb = float(np.dot(s_prev, s_prev)) / sy
        t = t_bb if t_bb is not None else t * 2.0
        t = min(max(t, 1e-12), 1e3)
        steps = t * 0.5 ** np.arange(n_bt)
        cands = project(z[None, :] - steps[:, None] * g[None, :])
        fcs = f_batch(cands)
        ok = np.isfinite(fcs) & (fcs <= fz - 1e-4 * steps * gnorm2)
        if not np.any(ok):
            break
        k = int(np.argmax(ok))
        t = float(steps[k])
        cand, fc = cands[k], float(fcs[k])
        s_prev = cand - z
        s_prev[periodic] = (s_prev[periodic] + 0.5) % 1.0 - 0.5
        g_prev = g
        gain = fz - fc
        z, fz = cand, fc
        trace.append(fz)
        if gain <= opts.tol * max(fz, 1e-300):
            break
    return z, fz, trace


def solve_continuous(
    model: str,
    h_si: ComplexResponse,
    bounds: BoxBounds | None = None,
    opts: SolveOptions | None = None,
    num_taps: int = 1,
    board: PcbBoardParams | None = None,
    init_configs=None,
) -> SolveReport:
    """Multi-start projected gradient descent over the continuous knob box.

    `init_configs` optionally adds deterministic warm starts (lists of tap
    configs) after the random ones; the best start by final objective wins,
    with the lowest start index breaking ties.
    """
    if num_taps < 1:
        raise InvalidArgumentError("num_taps must be >= 1")
    opts = opts or SolveOptions()
    bounds = bounds or default_bounds(model)
    kernel = ModelKernel(model, h_si, board)
    lows = np.tile(bounds.lows(), num_taps)
    highs = np.tile(bounds.highs(), num_taps)
    span = highs - lows
    periodic = np.tile(np.array([False, True, False, False]), num_taps)
    rng = np.random.default_rng(opts.seed)
    starts = [z for z in rng.uniform(size=(opts.restarts, 4 * num_taps))]
    for cfgs in init_configs or []:
        x = config_vector(cfgs).ravel()
        starts.append((x - lows) / span)

    best = None
    for r, z0 in enumerate(starts):
        out = _descend(kernel, z0, lows, span, periodic, opts)
        if out is None:
            continue
        z, fz, trace = out
        if best is None or fz < best[1]:
            best = (z, fz, trace, r)
    if best is None:
        raise SolverFailureError("all restarts produced non-finite objectives")
    z, fz, trace, r = best
    x = lows + z * span
    return SolveReport(
        config=kernel.configs_from_vector(x),
        objective=fz,
        avg_sic_db=kernel.avg_sic_db(x),
        iterations=len(trace) - 1,
        restart_index=r,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# quantization + local search


def quantize_config(config, spec: QuantizationSpec):
    """Snap every knob of every tap to its nearest quantization-grid value."""
    out = []
    for c in config:
        x = config_vector([c])[0]
        snapped = [k.snap(v) for k, v in zip(spec.knobs(), x)]
        if isinstance(c, IdealTapConfig):
            out.append(IdealTapConfig(*snapped))
        else:
            out.append(PcbTapConfig(*snapped))
    return out


def _grid_indices(spec: QuantizationSpec, x: np.ndarray) -> np.ndarray:
    idx = np.empty(x.shape, dtype=int)
    for j, knob in enumerate(spec.knobs()):
        vals = knob.values()
        for i in range(x.shape[0]):
            idx[i, j] = int(np.argmin(np.abs(vals - x[i, j])))
    return idx


def local_search(
    qconfig,
    model: str,
    h_si: ComplexResponse,
    spec: QuantizationSpec,
    max_rounds: int = 10,
    board: PcbBoardParams | None = None,
) -> SolveReport:
    """Coordinate-wise +/-1-step hill climbing on the quantization lattice."""
    kernel = ModelKernel(model, h_si, board)
    x = config_vector(qconfig)
    idx = _grid_indices(spec, x)
    knob_vals = [k.values() for k in spec.knobs()]
    periodic = [k.periodic for k in spec.knobs()]

    def vec(ix):
        return np.array(
            [[knob_vals[j][ix[i, j]] for j in range(4)] for i in range(ix.shape[0])]
        )

    fx = kernel.objective(vec(idx))
    trace = [fx]
    rounds = 0
    for _ in range(max_rounds):
        rounds += 1
        improved = False
        for i in range(idx.shape[0]):
            for j in range(4):
                n = knob_vals[j].size
                for delta in (-1, 1):
                    cand = idx.copy()
                    k = idx[i, j] + delta
                    if periodic[j]:
                        k %= n
                    elif k < 0 or k >= n:
                        continue
                    cand[i, j] = k
                    fc = kernel.objective(vec(cand))
                    if fc < fx:
                        idx, fx = cand, fc
                        trace.append(fx)
                        improved = True
        if not improved:
            break
    x = vec(idx)
    return SolveReport(
        config=kernel.configs_from_vector(x),
        objective=fx,
        avg_sic_db=kernel.avg_sic_db(x),
        iterations=rounds,
        restart_index=0,
        trace=trace,
        quantized=True,
    )


# ---------------------------------------------------------------------------
# iterative per-tap heuristic


def iterative_heuristic(
    model: str,
    h_si: ComplexResponse,
    canc_freqs,
    bounds: BoxBounds | None = None,
    spec: QuantizationSpec | None = None,
    opts: SolveOptions | None = None,
    board: PcbBoardParams | None = None,
) -> SolveReport:
    """Fit taps one at a time to the running residual around given frequencies.

    Each tap is fit by the same descent kernel restricted to a 3-point window
    centered on its cancellation frequency, then subtracted from the residual.
    """
    bounds = bounds or default_bounds(model)
    opts = opts or SolveOptions(restarts=8, max_iters=200)
    grid = h_si.grid
    f = grid.points
    kernel_full = ModelKernel(model, h_si, board)
    residual = h_si.values.copy()
    configs = []
    for tap_i, fc in enumerate(canc_freqs):
        if not (f[0] <= fc <= f[-1]):
            raise InvalidArgumentError(
                f"cancellation frequency {fc:.6g} Hz outside grid span"
            )
        j = int(np.argmin(np.abs(f - fc)))
        j = min(max(j, 1), grid.count - 2)
        window = FrequencyGrid(f[j - 1 : j + 2])
        sub = ComplexResponse(window, residual[j - 1 : j + 2])
        sub_opts = SolveOptions(
            restarts=opts.restarts,
            max_iters=opts.max_iters,
            grad_eps=opts.grad_eps,
            tol=opts.tol,
            seed=opts.seed + tap_i,
        )
        rep = solve_continuous(model, sub, bounds, sub_opts, num_taps=1, board=board)
        cfg = rep.config[0]
        if spec is not None:
            cfg = quantize_config([cfg], spec)[0]
        configs.append(cfg)
        tap_vals = ModelKernel(model, h_si, board).response_values(
            config_vector([cfg])
        )
        residual = residual - tap_vals
    x = config_vector(configs)
    obj = kernel_full.objective(x)
    return SolveReport(
        config=configs,
        objective=obj,
        avg_sic_db=kernel_full.avg_sic_db(x),
        iterations=len(configs),
        restart_index=0,
        trace=[obj],
        quantized=spec is not None,
    )


# ---------------------------------------------------------------------------
# continuous -> quantize -> local-search pipeline


def greedy_extend(
    model: str,
    h_si: ComplexResponse,
    config,
    num_taps: int,
    bounds: BoxBounds | None = None,
    board: PcbBoardParams | None = None,
    seed: int = 0,
):
    """Extend a tap list to `num_taps` by repeatedly fitting one tap to the
    running residual; used to warm-start a larger joint solve from a smaller
    one's solution."""
    bounds = bounds or default_bounds(model)
    cfg = list(config)[:num_taps]
    kernel = ModelKernel(model, h_si, board)
    while len(cfg) < num_taps:
        resid = h_si.values - kernel.response_values(config_vector(cfg))
        sub = ComplexResponse(h_si.grid, resid)
        opts = SolveOptions(restarts=8, max_iters=150, seed=seed + len(cfg))
        rep = solve_continuous(model, sub, bounds, opts, 1, board)
        cfg.append(rep.config[0])
    return cfg


def fit_pipeline(
    model: str,
    h_si: ComplexResponse,
    num_taps: int,
    opts: SolveOptions | None = None,
    spec: QuantizationSpec | None = None,
    board: PcbBoardParams | None = None,
    init_configs=None,
):
    """Full configuration pipeline.

    Continuous multi-start solve; if a quantization spec is given, round and
    hill-climb on the lattice, then re-descend in continuous space from the
    lattice solution and keep whichever continuous result is better.  The
    polish step guarantees continuous objective <= quantized objective, so
    quantization can only degrade the reported figures.

    Returns (continuous_report, quantized_report_or_None).
    """
    opts = opts or SolveOptions()
    bounds = spec.bounds() if spec is not None else default_bounds(model)
    cont = solve_continuous(
        model, h_si, bounds, opts, num_taps, board, init_configs=init_configs
    )
    if spec is None:
        return cont, None
    qcfg = quantize_config(cont.config, spec)
    qrep = local_search(qcfg, model, h_si, spec, board=board)
    if qrep.objective < cont.objective:
        polish_opts = SolveOptions(
            restarts=1,
            max_iters=opts.max_iters,
            grad_eps=opts.grad_eps,
            tol=opts.tol,
            seed=opts.seed,
        )
        polished = solve_continuous(
            model, h_si, bounds, polish_opts, num_taps, board,
            init_configs=[qrep.config],
        )
        if polished.objective < cont.objective:
            cont = polished
    return cont, qrep


# ---------------------------------------------------------------------------
# exhaustive lattice oracle


def grid_search_oracle(
    model: str,
    h_si: ComplexResponse,
    spec: QuantizationSpec,
    points_per_knob: int,
    num_taps: int = 1,
    board: PcbBoardParams | None = None,
) -> SolveReport:
    """Exhaustively evaluate a coarse sublattice of the quantization grid."""
    if num_taps not in (1, 2):
        raise InvalidArgumentError("oracle supports 1 or 2 taps")
    if points_per_knob < 2:
        raise InvalidArgumentError("points_per_knob must be >= 2")
    sub_vals = []
    for knob in spec.knobs():
        vals = knob.values()
        ix = np.unique(
            np.round(np.linspace(0, vals.size - 1, points_per_knob)).astype(int)
        )
        sub_vals.append(vals[ix])
    per_tap = int(np.prod([v.size for v in sub_vals]))
    total = per_tap**num_taps
    if total > LATTICE_CAP:
        raise LatticeTooLargeError(total, LATTICE_CAP)

    kernel = ModelKernel(model, h_si, board)
    grids = np.meshgrid(*sub_vals, indexing="ij")
    tap_configs = np.stack([g.ravel() for g in grids], axis=1)  # (per_tap, 4)

    # single-tap response of every lattice point: (per_tap, K)
    if model == "ideal":
        resp = _ideal_tap_matrix(tap_configs, h_si.grid.points)
    else:
        resp = _pcb_tap_matrix(tap_configs, h_si.grid.points, kernel.board)
    target = h_si.values

    if num_taps == 1:
        d = target[None, :] - resp
        obj = np.sum(d.real**2 + d.imag**2, axis=1)
        best = int(np.argmin(obj))
        x = tap_configs[best : best + 1]
        fbest = float(obj[best])
    else:
        fbest = np.inf
        best_pair = (0, 0)
        for i in range(per_tap):
            d = target[None, :] - resp[i][None, :] - resp
            obj = np.sum(d.real**2 + d.imag**2, axis=1)
            j = int(np.argmin(obj))
            if obj[j] < fbest:
                fbest = float(obj[j])
                best_pair = (i, j)
        x = tap_configs[list(best_pair)]

    return SolveReport(
        config=kernel.configs_from_vector(x),
        objective=fbest,
        avg_sic_db=kernel.avg_sic_db(x),
        iterations=total,
        restart_index=0,
        trace=[fbest],
        quantized=True,
    )

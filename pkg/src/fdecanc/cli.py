"""Command-line frontend emitting CSV/JSON plot data.

Commands: model, fit, sweep, network (uldl | tdma), genchannel.
Exit codes: 0 success, 1 usage error, 2 computation failure.
All frequency flags accept `start:stop:count` grid syntax; outputs are
written atomically (temp file + rename) and are deterministic given --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .core import ComplexResponse, FrequencyGrid, amplitude_db, group_delay, unwrapped_phase
from .errors import FdecancError
from .metrics import rf_sic_db
from .models import (
    IdealTapConfig,
    PcbBoardParams,
    PcbTapConfig,
    ideal_tap_response,
    pcb_bpf_response_closed_form,
)
from .network import (
    MultiUserScenario,
    ScheduleSpec,
    UlDlScenario,
    shannon_rate,
    tdma_schedule_eval,
    uldl_throughputs,
)
from .optimizer import (
    ModelKernel,
    SolveOptions,
    config_vector,
    default_bounds,
    fit_pipeline,
    greedy_extend,
    quantization_preset,
)
from .sichannel import SynthChannelSpec, load_si_channel, save_si_channel, synth_si_channel


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_band(text: str) -> FrequencyGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"band must be start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed band spec {text!r}") from None
    return FrequencyGrid.linspace(start, stop, count)


def _parse_db_range(text: str) -> np.ndarray:
    """A single dB value or a start:stop:count sweep."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be start:stop:count, got {text!r}")
        try:
            return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise UsageError(f"malformed range spec {text!r}") from None
    try:
        return np.array([float(text)])
    except ValueError:
        raise UsageError(f"malformed value {text!r}") from None


def _snr_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _atomic_write(path: str, content: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# subcommands


def cmd_model(args) -> int:
    grid = _parse_band(args.band)
    if args.kind == "ideal":
        if args.fc is None:
            raise UsageError("--fc is required for --kind ideal")
        cfg = IdealTapConfig(args.amp_db, args.phase, args.fc, args.q)
        r = ideal_tap_response(cfg, grid)
    else:
        cfg = PcbTapConfig(args.amp_db, args.phase, args.cf_pf, args.cq_pf)
        bare = pcb_bpf_response_closed_form(cfg, PcbBoardParams(), grid)
        weight = 10.0 ** (args.amp_db / 20.0) * np.exp(-1j * args.phase)
        r = ComplexResponse(grid, weight * bare.values)
    amp = amplitude_db(r)
    ph = unwrapped_phase(r)
    gd = group_delay(r)
    lines = ["freq_hz,amp_db,phase_rad,gd_s"]
    for f, a, p, g in zip(grid.points, amp, ph, gd):
        lines.append("%.17g,%.17g,%.17g,%.17g" % (f, a, p, g))
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


def _load_or_synth(args):
    if args.channel is not None:
        return load_si_channel(args.channel)
    if not args.synth:
        raise UsageError("provide --channel FILE or --synth")
    if args.band is None:
        raise UsageError("--band is required with --synth")
    grid = _parse_band(args.band)
    return synth_si_channel(SynthChannelSpec(seed=args.seed), grid)


def cmd_fit(args) -> int:
    h_si = _load_or_synth(args)
    opts = SolveOptions(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed)
    spec = quantization_preset(args.quantize) if args.quantize else None
    cont, quant = fit_pipeline(args.model, h_si, args.taps, opts, spec)
    rep = quant if quant is not None else cont
    report = rep.to_dict()
    report["model"] = args.model
    report["seed"] = args.seed
    if quant is not None:
        report["continuous_objective"] = cont.objective
        report["continuous_avg_sic_db"] = cont.avg_sic_db
    _atomic_write(args.out_report, json.dumps(report, indent=2, sort_keys=True) + "\n")
    if args.out_csv:
        kernel = ModelKernel(args.model, h_si)
        resid = h_si.values - kernel.response_values(config_vector(rep.config))
        sic = rf_sic_db(ComplexResponse(h_si.grid, resid)).per_point_db
        lines = ["freq_hz,sic_db"]
        for f, sdb in zip(h_si.grid.points, sic):
            lines.append("%.17g,%.17g" % (f, sdb))
        _atomic_write(args.out_csv, "\n".join(lines) + "\n")
    if rep.avg_sic_db < args.min_sic_db:
        print(
            f"average SIC {rep.avg_sic_db:.3f} dB below threshold {args.min_sic_db} dB",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_sweep(args) -> int:
    taps_list = [int(t) for t in args.taps.split(",")]
    bw_list = [float(b) for b in args.bandwidths_mhz.split(",")]
    center = args.center_mhz * 1e6
    opts = SolveOptions(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed)
    spec = quantization_preset(args.quantize) if args.quantize else None
    bounds = spec.bounds() if spec is not None else default_bounds(args.model)
    lines = ["taps,bandwidth_hz,mode,avg_sic_db,avg_sic_pow_db"]

    def pow_db(rep, k):
        return -10.0 * np.log10(rep.objective / k) if rep.objective > 0 else float("inf")

    for bw_mhz in bw_list:
        bw = bw_mhz * 1e6
        grid = FrequencyGrid.linspace(center - bw / 2, center + bw / 2, args.points)
        h_si = synth_si_channel(SynthChannelSpec(seed=args.seed), grid)
        prev = None  # (num_taps, config) for warm-starting larger solves
        for m in taps_list:
            inits = None
            if prev is not None and m > prev[0]:
                inits = [
                    greedy_extend(
                        args.model, h_si, prev[1], m, bounds, seed=args.seed
                    )
                ]
            cont, quant = fit_pipeline(
                args.model, h_si, m, opts, spec, init_configs=inits
            )
            prev = (m, cont.config)
            lines.append(
                "%d,%.17g,continuous,%.17g,%.17g"
                % (m, bw, cont.avg_sic_db, pow_db(cont, args.points))
            )
            if quant is not None:
                lines.append(
                    "%d,%.17g,quantized,%.17g,%.17g"
                    % (m, bw, quant.avg_sic_db, pow_db(quant, args.points))
                )
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_network_uldl(args) -> int:
    ul = _parse_db_range(args.gamma_ul_db)
    dl = _parse_db_range(args.gamma_dl_db)
    iui = _parse_db_range(args.gamma_iui_db)
    lines = ["gamma_ul_db,gamma_dl_db,gamma_iui_db,hd_bps,fd_bps,gain"]
    for u in ul:
        for d in dl:
            for q in iui:
                s = UlDlScenario(
                    gamma_ul=_snr_linear(u),
                    gamma_dl=_snr_linear(d),
                    gamma_iui=_snr_linear(q),
                    gamma_self=args.gamma_self,
                    bandwidth_hz=args.bandwidth_hz,
                )
                hd, fd, gain = uldl_throughputs(s)
                lines.append(
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g" % (u, d, q, hd, fd, gain)
                )
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_network_tdma(args) -> int:
    n = args.users
    gammas = [_snr_linear(float(g)) for g in args.gammas_db.split(",")]
    if len(gammas) == 1:
        gammas = gammas * n
    if args.fd is None:
        fd = [True] + [False] * (n - 1)
    else:
        fd = [tok == "1" for tok in args.fd.split(",")]
    iui_lin = _snr_linear(args.iui_db)
    iui = tuple(
        tuple(0.0 if i == j else iui_lin for j in range(n)) for i in range(n)
    )
    s = MultiUserScenario(
        gammas=tuple(gammas),
        fd_capable=tuple(fd),
        gamma_self=args.gamma_self,
        bandwidth_hz=args.bandwidth_hz,
    )
    slots = args.slots if args.slots is not None else n
    res = tdma_schedule_eval(s, ScheduleSpec(args.schedule, slots, iui))
    hd_total = sum(shannon_rate(g, s.bandwidth_hz) / n for g in s.gammas)
    gain = res["total"] / hd_total if hd_total > 0 else float("nan")
    lines = ["scenario_id,case,total_bps,jfi,gain"]
    lines.append("0,%s,%.17g,%.17g,%.17g" % (args.schedule, res["total"], res["jfi"], gain))
    for i, r in enumerate(res["per_user"]):
        lines.append("0,user%d,%.17g,," % (i, r))
    _atomic_write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_genchannel(args) -> int:
    grid = _parse_band(args.band)
    if args.no_reflections:
        refl = ()
    elif args.reflections is not None:
        refl = []
        for tok in args.reflections.split(","):
            a, d = tok.split(":")
            refl.append((float(a), float(d) * 1e-9))
        refl = tuple(refl)
    else:
        refl = SynthChannelSpec().reflections
    spec = SynthChannelSpec(
        isolation_db=args.isolation_db,
        base_delay_s=args.base_delay_ns * 1e-9,
        reflections=refl,
        seed=args.seed,
    )
    r = synth_si_channel(spec, grid)
    d = os.path.dirname(os.path.abspath(args.out))
    fd_, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    os.close(fd_)
    try:
        save_si_channel(tmp, r)
        os.replace(tmp, args.out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    p = _Parser(prog="fdecanc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("model", help="evaluate one tap's transfer function")
    pm.add_argument("--kind", choices=["ideal", "pcb"], required=True)
    pm.add_argument("--amp-db", type=float, default=0.0)
    pm.add_argument("--phase", type=float, default=0.0)
    pm.add_argument("--fc", type=float, default=None)
    pm.add_argument("--q", type=float, default=10.0)
    pm.add_argument("--cf-pf", type=float, default=1.5)
    pm.add_argument("--cq-pf", type=float, default=8.0)
    pm.add_argument("--band", required=True)
    pm.add_argument("--out", default="model.csv")
    pm.set_defaults(func=cmd_model)

    pf = sub.add_parser("fit", help="optimize a canceller against an SI channel")
    pf.add_argument("--channel", default=None)
    pf.add_argument("--synth", action="store_true")
    pf.add_argument("--band", default=None)
    pf.add_argument("--model", choices=["ideal", "pcb"], default="ideal")
    pf.add_argument("--taps", type=int, default=2)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--restarts", type=int, default=16)
    pf.add_argument("--max-iters", type=int, default=500)
    pf.add_argument("--quantize", choices=["rfic", "pcb"], default=None)
    pf.add_argument("--min-sic-db", type=float, default=0.0)
    pf.add_argument("--out-report", default="report.json")
    pf.add_argument("--out-csv", default=None)
    pf.set_defaults(func=cmd_fit)

    ps = sub.add_parser("sweep", help="avg SIC over (taps, bandwidth) grid")
    ps.add_argument("--taps", default="1,2,3,4")
    ps.add_argument("--bandwidths-mhz", default="20,40,80")
    ps.add_argument("--center-mhz", type=float, default=900.0)
    ps.add_argument("--points", type=int, default=101)
    ps.add_argument("--model", choices=["ideal", "pcb"], default="ideal")
    ps.add_argument("--quantize", choices=["rfic", "pcb"], default=None)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--restarts", type=int, default=16)
    ps.add_argument("--max-iters", type=int, default=500)
    ps.add_argument("--out", default="sweep.csv")
    ps.set_defaults(func=cmd_sweep)

    pn = sub.add_parser("network", help="throughput-gain analysis")
    nsub = pn.add_subparsers(dest="netcmd", required=True)

    pu = nsub.add_parser("uldl", help="UL-DL gain surface")
    pu.add_argument("--gamma-ul-db", required=True)
    pu.add_argument("--gamma-dl-db", required=True)
    pu.add_argument("--gamma-iui-db", default="0")
    pu.add_argument("--gamma-self", type=float, default=1.0)
    pu.add_argument("--bandwidth-hz", type=float, default=1.0)
    pu.add_argument("--out", default="uldl.csv")
    pu.set_defaults(func=cmd_network_uldl)

    pt = nsub.add_parser("tdma", help="slot-level schedule evaluation")
    pt.add_argument("--users", type=int, default=3)
    pt.add_argument("--schedule", choices=["rro", "iuif"], required=True)
    pt.add_argument("--gammas-db", default="10")
    pt.add_argument("--fd", default=None, help="comma list of 0/1 flags")
    pt.add_argument("--gamma-self", type=float, default=1.0)
    pt.add_argument("--iui-db", type=float, default=0.0)
    pt.add_argument("--slots", type=int, default=None)
    pt.add_argument("--bandwidth-hz", type=float, default=1.0)
    pt.add_argument("--out", default="tdma.csv")
    pt.set_defaults(func=cmd_network_tdma)

    pg = sub.add_parser("genchannel", help="write a synthetic SI-channel CSV")
    pg.add_argument("--band", required=True)
    pg.add_argument("--isolation-db", type=float, default=-20.0)
    pg.add_argument("--base-delay-ns", type=float, default=10.0)
    pg.add_argument("--reflections", default=None, help="ampdb:delayns,...")
    pg.add_argument("--no-reflections", action="store_true")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--out", default="channel.csv")
    pg.set_defaults(func=cmd_genchannel)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FdecancError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

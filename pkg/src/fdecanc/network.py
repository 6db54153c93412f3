"""Analytical full-duplex throughput gains and TDMA schedule evaluation.

All rates are Shannon capacities; gamma values are linear (not dB) ratios.
gamma_self is the residual self-interference-to-noise ratio (XINR) an FD link
sees after cancellation, and defaults to 1 everywhere (a 3 dB effective-SNR
loss).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, UndefinedGainError


def shannon_rate(gamma: float, b_hz: float) -> float:
    """r = B * log2(1 + gamma), bits per second."""
    if gamma < 0:
        raise InvalidArgumentError("gamma must be nonnegative")
    if not (b_hz > 0):
        raise InvalidArgumentError("bandwidth must be positive")
    return b_hz * math.log2(1.0 + gamma)


@dataclass(frozen=True)
class UlDlScenario:
    """One UL user and one DL user served by a (possibly FD) base station."""

    gamma_ul: float
    gamma_dl: float
    gamma_iui: float = 0.0
    gamma_self: float = 1.0
    bandwidth_hz: float = 1.0

    def __post_init__(self):
        for name in ("gamma_ul", "gamma_dl", "gamma_iui", "gamma_self"):
            if getattr(self, name) < 0:
                raise InvalidArgumentError(f"{name} must be nonnegative")
        if not (self.bandwidth_hz > 0):
            raise InvalidArgumentError("bandwidth_hz must be positive")


def uldl_throughputs(s: UlDlScenario):
    """HD TDMA rate, FD simultaneous rate, and their ratio.

    hd = (B/2) log2(1+g_ul) + (B/2) log2(1+g_dl)
    fd = B log2(1 + g_ul/(1+g_self)) + B log2(1 + g_dl/(1+g_iui))
    """
    b = s.bandwidth_hz
    hd = 0.5 * shannon_rate(s.gamma_ul, b) + 0.5 * shannon_rate(s.gamma_dl, b)
    fd = shannon_rate(s.gamma_ul / (1.0 + s.gamma_self), b) + shannon_rate(
        s.gamma_dl / (1.0 + s.gamma_iui), b
    )
    if hd == 0:
        raise UndefinedGainError("half-duplex baseline rate is zero")
    return hd, fd, fd / hd


@dataclass(frozen=True)
class MultiUserScenario:
    """2-3 users with symmetric UL/DL SNRs and per-user FD capability."""

    gammas: tuple
    fd_capable: tuple
    gamma_self: float = 1.0
    bandwidth_hz: float = 1.0

    def __post_init__(self):
        g = tuple(float(x) for x in self.gammas)
        c = tuple(bool(x) for x in self.fd_capable)
        if len(g) not in (2, 3):
            raise InvalidArgumentError("scenario supports 2 or 3 users")
        if len(c) != len(g):
            raise InvalidArgumentError("fd_capable length must match gammas")
        if any(x < 0 for x in g):
            raise InvalidArgumentError("gammas must be nonnegative")
        if self.gamma_self < 0:
            raise InvalidArgumentError("gamma_self must be nonnegative")
        if not (self.bandwidth_hz > 0):
            raise InvalidArgumentError("bandwidth_hz must be positive")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "fd_capable", c)

    @property
    def n_users(self) -> int:
        return len(self.gammas)


def _fd_snr(gamma, gamma_self):
    return gamma / (1.0 + gamma_self)


def three_node_throughputs(s: MultiUserScenario) -> dict:
    """Rates and gains for a 2-user cell by FD-capability case.

    Cases: "hd" (no FD), "fd1"/"fd2" (only that user FD), "fd" (both FD).
    An HD user gets half the slots at full SNR; an FD user gets its full
    share in duplex at gamma/(1+gamma_self).  Gains are relative to "hd".
    """
    if s.n_users != 2:
        raise InvalidArgumentError("three_node_throughputs requires 2 users")
    b = s.bandwidth_hz
    g1, g2 = s.gammas
    gs = s.gamma_self

    def hd_rate(g):
        return 0.5 * shannon_rate(g, b)

    def fd_rate(g):
        return shannon_rate(_fd_snr(g, gs), b)

    rates = {
        "hd": hd_rate(g1) + hd_rate(g2),
        "fd1": fd_rate(g1) + hd_rate(g2),
        "fd2": hd_rate(g1) + fd_rate(g2),
        "fd": fd_rate(g1) + fd_rate(g2),
    }
    if rates["hd"] == 0:
        raise UndefinedGainError("half-duplex baseline rate is zero")
    gains = {k: v / rates["hd"] for k, v in rates.items()}
    return {"rates": rates, "gains": gains}


def multi_user_throughputs(s: MultiUserScenario) -> dict:
    """n-user generalization: each user gets a 1/n time share; an FD user
    transmits and receives throughout its share at gamma/(1+gamma_self),
    doubling its per-share rate."""
    b = s.bandwidth_hz
    n = s.n_users
    per_user = []
    for g, cap in zip(s.gammas, s.fd_capable):
        if cap:
            per_user.append(2.0 * shannon_rate(_fd_snr(g, s.gamma_self), b) / n)
        else:
            per_user.append(shannon_rate(g, b) / n)
    baseline = [shannon_rate(g, b) / n for g in s.gammas]
    total = sum(per_user)
    total_hd = sum(baseline)
    if total_hd == 0:
        raise UndefinedGainError("half-duplex baseline rate is zero")
    return {
        "per_user": per_user,
        "total": total,
        "gain": total / total_hd,
        "jfi": jain_fairness(per_user),
    }


def jain_fairness(throughputs) -> float:
    """(sum x)^2 / (n * sum x^2); 1 at perfect equity, 1/n at worst."""
    x = np.asarray(list(throughputs), dtype=float)
    if x.size == 0 or np.any(x < 0):
        raise InvalidArgumentError("throughputs must be a nonempty nonnegative list")
    ssq = float(np.sum(x * x))
    if ssq == 0:
        raise UndefinedGainError("all-zero throughputs have no fairness index")
    return float(np.sum(x)) ** 2 / (x.size * ssq)


@dataclass(frozen=True)
class ScheduleSpec:
    """Slot-level TDMA schedule: round-robin opportunistic or IUI-free."""

    kind: str
    slots: int
    iui_matrix: tuple = ()

    def __post_init__(self):
        if self.kind not in ("rro", "iuif"):
            raise InvalidArgumentError("kind must be 'rro' or 'iuif'")
        if self.slots < 1:
            raise InvalidArgumentError("slots must be >= 1")
        m = tuple(tuple(float(v) for v in row) for row in self.iui_matrix)
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                if v < 0:
                    raise InvalidArgumentError("iui_matrix must be nonnegative")
                if i == j and v != 0:
                    raise InvalidArgumentError("iui_matrix diagonal must be zero")
        object.__setattr__(self, "iui_matrix", m)

    def iui(self, tx: int, rx: int) -> float:
        if not self.iui_matrix:
            return 0.0
        return self.iui_matrix[tx][rx]


def tdma_schedule_eval(s: MultiUserScenario, sched: ScheduleSpec) -> dict:
    """Slot-by-slot evaluation of RRO and IUI-F schedules.

    Slot t makes user u = t mod n the primary transmitter.

    RRO: an FD-capable primary runs a duplex slot (UL and its own DL, both at
    gamma_u/(1+gamma_self)).  An HD primary sends UL while the base station
    concurrently serves DL to the next user v = (u+1) mod n, whose receiver
    sees IUI from u: DL SINR = gamma_v / (1 + iui[u][v]).  The HD primary's
    UL still faces the base station's own transmission, so its SINR is
    gamma_u/(1+gamma_self).

    IUI-F: concurrency only when it is IUI-free, i.e. the duplex slot of an
    FD primary.  An HD primary gets a solo slot at full SNR (UL and DL
    alternate across its slots; rates are identical under symmetric SNR).
    """
    if sched.slots < s.n_users:
        raise InvalidArgumentError("need at least one slot per user")
    if sched.iui_matrix and len(sched.iui_matrix) != s.n_users:
        raise InvalidArgumentError("iui_matrix size must match user count")
    n = s.n_users
    b = s.bandwidth_hz
    per_user = [0.0] * n
    for t in range(sched.slots):
        u = t % n
        if s.fd_capable[u]:
            per_user[u] += 2.0 * shannon_rate(_fd_snr(s.gammas[u], s.gamma_self), b)
        elif sched.kind == "rro":
            v = (u + 1) % n
            per_user[u] += shannon_rate(_fd_snr(s.gammas[u], s.gamma_self), b)
            per_user[v] += shannon_rate(
                s.gammas[v] / (1.0 + sched.iui(u, v)), b
            )
        else:
            per_user[u] += shannon_rate(s.gammas[u], b)
    per_user = [r / sched.slots for r in per_user]
    total = sum(per_user)
    return {
        "per_user": per_user,
        "total": total,
        "jfi": jain_fairness(per_user) if total > 0 else float("nan"),
    }

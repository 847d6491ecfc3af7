"""Transmission-energy model.

The per-slot energy to move ``h`` bits in ``x`` time units over a unit
path-loss channel is ``f(h, x) = x * (2**(h/x) - 1)`` (inverse of the AWGN
capacity formula). It is strictly decreasing and convex in ``x``, blows up
as ``x -> 0+`` and tends to ``h*ln2`` as ``x -> inf``, so any per-slot energy
budget strictly above ``h*ln2`` corresponds to a unique transmission time.

The low-rate regime replaces the curve with the time-independent linear
approximation ``c * h`` (``c`` defaults to ln 2, the first-order slope).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleEnergyError, NumericError

LN2 = math.log(2.0)

# Relative tolerance and iteration cap for the bisection inverse.
_INV_REL_TOL = 1e-12
_INV_MAX_ITER = 200


@dataclass(frozen=True)
class Shannon:
    """Exact curve f(h, x) = x*(2**(h/x) - 1)."""


@dataclass(frozen=True)
class Srra:
    """Small-rate approximation: energy = c*h, independent of time."""

    c: float = LN2

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"Srra constant c must be positive, got {self.c}")


EnergyMode = Shannon | Srra


def tx_energy(h: float, x: float, mode: EnergyMode = Shannon()) -> float:
    """Energy to transmit ``h`` bits in ``x`` time units (unit path loss)."""
    if h < 0:
        raise ValueError(f"bit load must be nonnegative, got {h}")
    if isinstance(mode, Srra):
        return mode.c * h
    if h == 0:
        return 0.0
    if x <= 0:
        raise ValueError(f"transmission time must be positive, got {x}")
    try:
        return x * math.expm1(LN2 * h / x)
    except OverflowError:
        return math.inf


def srra_error(h: float, x: float) -> float:
    """Gap between the exact curve and its linear asymptote: f(h,x) - h*ln2."""
    if h == 0:
        return 0.0
    return tx_energy(h, x) - h * LN2


def min_time_for_energy(h: float, e: float) -> float:
    """Unique time t with tx_energy(h, t) == e, for e strictly above h*ln2.

    Bracketed bisection on t: f is strictly decreasing from +inf (t -> 0+)
    to h*ln2 (t -> inf), so the bracket always contains exactly one root.
    """
    if h <= 0:
        raise ValueError(f"bit load must be positive, got {h}")
    if e <= h * LN2:
        raise InfeasibleEnergyError(
            f"per-slot energy {e} is at or below the asymptote h*ln2 = {h * LN2}"
        )
    hi = 1.0
    while tx_energy(h, hi) > e:
        hi *= 2.0
    lo = hi
    while tx_energy(h, lo) < e:
        lo /= 2.0
    for _ in range(_INV_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if tx_energy(h, mid) > e:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _INV_REL_TOL * hi:
            break
    return 0.5 * (lo + hi)


def min_time_for_energy_vec(h: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Vectorized inverse of tx_energy in time, for batches of (h, e) pairs.

    Substituting u = h*ln2/t turns f(h, t) = e into (exp(u) - 1)/u = e/(h*ln2),
    a strictly increasing scalar equation. Its log, ln(expm1(u)) - ln(u),
    stays representable for every double-precision ratio (for u > 40 it is
    u - ln(u) to machine precision), so bisecting on ln(u) converges to full
    precision regardless of how many orders of magnitude the ratio spans.
    Agreement with the scalar bisection inverse is enforced by tests; entries
    with h == 0 get t == 0.
    """
    h = np.asarray(h, dtype=float)
    e = np.asarray(e, dtype=float)
    t = np.zeros(np.broadcast(h, e).shape)
    active = h > 0
    if not np.any(active):
        return t
    ha = np.broadcast_to(h, t.shape)[active]
    ea = np.broadcast_to(e, t.shape)[active]
    r = ea / (ha * LN2)
    if np.any(r <= 1.0):
        raise InfeasibleEnergyError("per-slot energy at or below the h*ln2 asymptote")
    ln_r = np.log(r)

    # Bracket in v = ln(u): the root satisfies u <= ln(r) + ln(u) + 1, which
    # is below e^7 ~ 1096 for every finite double r, and u -> 0+ as r -> 1+.
    lo = np.full(r.shape, -700.0)
    hi = np.full(r.shape, 7.0)
    for _ in range(80):
        v = 0.5 * (lo + hi)
        u = np.exp(v)
        small = u <= 40.0
        log_g = np.where(small, np.log(np.expm1(np.where(small, u, 1.0))), u) - v
        above = log_g >= ln_r
        hi = np.where(above, v, hi)
        lo = np.where(above, lo, v)
    u = np.exp(0.5 * (lo + hi))
    if np.any(hi - lo > 1e-9):
        raise NumericError("vectorized energy inverse failed to converge")
    t[active] = ha * LN2 / u
    return t


def tx_energy_vec(h: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Vectorized Shannon curve; entries with h == 0 cost nothing."""
    h = np.asarray(h, dtype=float)
    x = np.asarray(x, dtype=float)
    out = np.zeros(np.broadcast(h, x).shape)
    active = np.broadcast_to(h, out.shape) > 0
    hb = np.broadcast_to(h, out.shape)[active]
    xb = np.broadcast_to(x, out.shape)[active]
    if np.any(xb <= 0):
        raise ValueError("transmission time must be positive where h > 0")
    with np.errstate(over="ignore"):
        out[active] = xb * np.expm1(LN2 * hb / xb)
    return out

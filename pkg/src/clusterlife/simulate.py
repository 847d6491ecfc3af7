"""Slot-by-slot battery walk cross-checking analytic lifetimes.

Analytic lifetimes treat the slot count as a real number; the simulator
executes whole slots against double-precision batteries and reports how many
actually complete. A static plan repeats one per-slot cost vector until some
node cannot pay; a dynamic plan runs its columns largest-slot-count first
(floors), then tries each column once more while batteries allow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamic_sched import DynamicPlan
from .errors import GuardError, ValidationError
from .model import ClusterSpec
from .static_sched import StaticResult

# Absolute slack when comparing a battery to a per-slot cost, absorbing
# root-finder residue in the analytic allocations.
FEASIBILITY_SLACK = 1e-9


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    order: tuple[int, ...]
    energy_spent: np.ndarray
    remaining: np.ndarray


@dataclass(frozen=True)
class SimTrace:
    records: tuple[SlotRecord, ...]
    completed_slots: int
    first_dead: int | None  # smallest node id that blocked the next slot


def _can_pay(remaining: np.ndarray, cost: np.ndarray) -> bool:
    return bool(np.all(remaining >= cost - FEASIBILITY_SLACK))


def _blocking_node(remaining: np.ndarray, cost: np.ndarray) -> int:
    short = np.nonzero(remaining < cost - FEASIBILITY_SLACK)[0]
    return int(short[0])


def simulate_static(result: StaticResult, cluster: ClusterSpec, max_slots: int = 10**7) -> SimTrace:
    """Repeat one schedule's per-slot cost until a node cannot pay."""
    cost = np.asarray(result.per_slot_energy, dtype=float)
    if cost.size != cluster.n:
        raise ValidationError("plan does not match the cluster's node count")
    if not np.any(cost > 0):
        raise GuardError("plan consumes no energy; lifetime is unbounded")
    remaining = cluster.energies.astype(float).copy()
    records = []
    slot = 0
    while slot < max_slots and _can_pay(remaining, cost):
        remaining = remaining - cost
        slot += 1
        records.append(
            SlotRecord(slot=slot, order=result.order, energy_spent=cost.copy(), remaining=remaining.copy())
        )
    if slot >= max_slots:
        raise GuardError(f"simulation exceeded {max_slots} slots")
    return SimTrace(
        records=tuple(records),
        completed_slots=slot,
        first_dead=_blocking_node(remaining, cost),
    )


def simulate_dynamic(plan: DynamicPlan, cluster: ClusterSpec, max_slots: int = 10**7) -> SimTrace:
    """Execute a cooperation plan integrally: floors first, then a greedy pass."""
    if plan.infinite:
        raise GuardError("plan has unbounded lifetime; nothing to simulate")
    support = plan.support()
    if not support:
        return SimTrace(records=(), completed_slots=0, first_dead=None)
    for col, _ in support:
        if col.energy.size != cluster.n:
            raise ValidationError("plan does not match the cluster's node count")
    # Largest slot count first; ties broken by schedule order for determinism.
    support.sort(key=lambda item: (-item[1], item[0].order))
    remaining = cluster.energies.astype(float).copy()
    records = []
    slot = 0
    first_dead = None

    def run_column(col, count):
        nonlocal slot, remaining, first_dead
        cost = col.energy
        for _ in range(count):
            if slot >= max_slots:
                raise GuardError(f"simulation exceeded {max_slots} slots")
            if not _can_pay(remaining, cost):
                if first_dead is None:
                    first_dead = _blocking_node(remaining, cost)
                return False
            remaining = remaining - cost
            slot += 1
            records.append(
                SlotRecord(slot=slot, order=col.order, energy_spent=cost.copy(), remaining=remaining.copy())
            )
        return True

    for col, tau in support:
        run_column(col, math.floor(tau))
    for col, _ in support:
        run_column(col, 1)
    return SimTrace(records=tuple(records), completed_slots=slot, first_dead=first_dead)


def simulate(plan, cluster: ClusterSpec) -> SimTrace:
    """Dispatch on plan type: StaticResult or DynamicPlan."""
    if isinstance(plan, StaticResult):
        return simulate_static(plan, cluster)
    if isinstance(plan, DynamicPlan):
        return simulate_dynamic(plan, cluster)
    raise ValidationError(f"cannot simulate a {type(plan).__name__}")

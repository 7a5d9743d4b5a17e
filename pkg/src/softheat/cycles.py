"""Closed cycles built from process primitives, and closed-form efficiencies.

Corner numbering follows each cycle's own convention: for the constant-load
cycle heating runs 1->2, for the Otto cycle compression runs 1->2. In both,
corner 1 is the coldest state and corner 3 the hottest.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass

from .errors import ConstraintError, DomainError, UndefinedEfficiencyError
from .thermo import (
    AIR,
    INVARIANT_RTOL,
    GasProperties,
    GasState,
    ProcessStep,
    advance_isentropic,
    advance_isobaric,
    advance_isochoric,
    advance_isochoric_to_pressure,
    advance_isothermal,
    internal_energy,
)


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


@dataclass(frozen=True)
class Cycle:
    steps: tuple[ProcessStep, ...]
    label: str = ""

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise DomainError("a cycle needs at least one step")
        for i, (prev, nxt) in enumerate(zip(steps, steps[1:])):
            if prev.end != nxt.start:
                raise ConstraintError(f"step {i} does not chain into step {i + 1}")
        first, last = steps[0].start, steps[-1].end
        for name in ("P", "V", "T"):
            if not _close(getattr(first, name), getattr(last, name), INVARIANT_RTOL):
                raise ConstraintError(f"cycle {self.label!r} is not closed in {name}")

    @property
    def corners(self) -> list[GasState]:
        """States at the start of each step (corner 1 first)."""
        return [s.start for s in self.steps]


@dataclass(frozen=True)
class CycleMetrics:
    net_work: float
    heat_in: float
    heat_out: float
    efficiency: float
    T_min: float
    T_max: float
    P_min: float
    P_max: float
    V_min: float
    V_max: float
    cyclic_delta_U: float


def evaluate(c: Cycle) -> CycleMetrics:
    """Sum signed work and heat over the steps of a closed cycle."""
    net_work = math.fsum(s.work_by_gas for s in c.steps)
    heat_in = math.fsum(s.heat_into_gas for s in c.steps if s.heat_into_gas > 0)
    heat_out = -math.fsum(s.heat_into_gas for s in c.steps if s.heat_into_gas < 0)
    if heat_in <= 0:
        raise UndefinedEfficiencyError(f"cycle {c.label!r} has no heat input")
    states = [s.start for s in c.steps] + [c.steps[-1].end]
    return CycleMetrics(
        net_work=net_work,
        heat_in=heat_in,
        heat_out=heat_out,
        efficiency=net_work / heat_in,
        T_min=min(s.T for s in states),
        T_max=max(s.T for s in states),
        P_min=min(s.P for s in states),
        P_max=max(s.P for s in states),
        V_min=min(s.V for s in states),
        V_max=max(s.V for s in states),
        cyclic_delta_U=math.fsum(s.delta_U for s in c.steps),
    )


def build_constant_load_cycle(
    start: GasState, P_high: float, expansion_ratio: float, props: GasProperties = AIR
) -> Cycle:
    """Rectangular cycle: heat at V1, expand at P_high, cool at V3, compress at P1."""
    r = expansion_ratio
    if not r > 1:
        raise ConstraintError(f"expansion ratio must exceed 1, got {r}")
    if not P_high > start.P:
        raise ConstraintError(f"P_high={P_high} must exceed the start pressure {start.P}")
    x = (P_high / start.P) * r
    if r >= max_expansion_ratio_cl(x):
        raise ConstraintError(
            f"expansion ratio {r} reaches the constant-load maximum {x} (T3/T1)"
        )
    # pressure-targeted isochores keep both isobars at exactly P_high and P1
    s12 = advance_isochoric_to_pressure(start, P_high, props)
    s23 = advance_isobaric(s12.end, start.V * r, props)
    s34 = advance_isochoric_to_pressure(s23.end, start.P, props)
    s41 = advance_isobaric(s34.end, start.V, props)
    return Cycle((s12, s23, s34, s41), label="constant_load")


def build_constant_load_cycle_xr(
    start: GasState, temperature_ratio: float, expansion_ratio: float, props: GasProperties = AIR
) -> Cycle:
    """Constant-load cycle specified by T3/T1 and V3/V1 instead of P_high."""
    x, r = temperature_ratio, expansion_ratio
    if not r > 1:
        raise ConstraintError(f"expansion ratio must exceed 1, got {r}")
    if r >= max_expansion_ratio_cl(x):
        raise ConstraintError(
            f"expansion ratio {r} reaches the constant-load maximum expansion ratio {x}"
        )
    # correctly rounded P1 x / r; the net work is (P_high - P1) dV, so every ulp counts near r = x
    P_high = float(Fraction(start.P) * Fraction(x) / Fraction(r))
    return build_constant_load_cycle(start, P_high, r, props)


def build_otto_cycle(
    start: GasState, expansion_ratio: float, T_max: float, props: GasProperties = AIR
) -> Cycle:
    """Isentropic compression by ``r``, isochoric heating to T_max, isentropic
    expansion back to V1, isochoric rejection."""
    r = expansion_ratio
    if not r > 1:
        raise ConstraintError(f"expansion ratio must exceed 1, got {r}")
    T2 = start.T * r ** (props.gamma - 1.0)
    if not T_max > T2:
        raise ConstraintError(
            f"T_max={T_max} must exceed the post-compression temperature {T2}"
        )
    s12 = advance_isentropic(start, start.V / r, props)
    s23 = advance_isochoric(s12.end, T_max, props)
    s34 = advance_isentropic(s23.end, start.V, props)
    s41 = advance_isochoric(s34.end, start.T, props)
    return Cycle((s12, s23, s34, s41), label="otto")


def build_carnot_cycle(
    start: GasState, T_hot: float, isothermal_ratio: float, props: GasProperties = AIR
) -> Cycle:
    """Carnot cycle starting at the cold, largest-volume corner.

    Used as a self-check of :func:`evaluate`: its efficiency is 1 - T_cold/T_hot.
    """
    if not T_hot > start.T:
        raise ConstraintError(f"T_hot={T_hot} must exceed T_cold={start.T}")
    if not isothermal_ratio > 1:
        raise ConstraintError("isothermal ratio must exceed 1")
    exponent = 1.0 / (props.gamma - 1.0)
    s1 = advance_isothermal(start, start.V / isothermal_ratio, props)
    s2 = advance_isentropic(s1.end, s1.end.V * (start.T / T_hot) ** exponent, props)
    s3 = advance_isothermal(s2.end, s2.end.V * isothermal_ratio, props)
    s4 = advance_isentropic(s3.end, start.V, props)
    return Cycle((s1, s2, s3, s4), label="carnot")


def efficiency_cl_general(P1: float, P2: float, V2: float, V3: float, U1: float, U3: float) -> float:
    """Constant-load efficiency from corner pressures, volumes and internal energies."""
    if P2 < P1:
        raise DomainError(f"P2={P2} is below P1={P1}")
    if V3 < V2:
        raise DomainError(f"V3={V3} is below V2={V2}")
    den = P2 * (V3 - V2) + U3 - U1
    if not den > 0:
        raise DomainError("heat input (denominator) must be positive")
    return (P2 - P1) * (V3 - V2) / den


def efficiency_cl_ideal(x: float, r: float, c_v: float) -> float:
    """Ideal-gas constant-load efficiency for T3/T1 = x and V3/V1 = r."""
    if not c_v > 0:
        raise DomainError(f"c_v must be positive, got {c_v}")
    if r < 1:
        raise DomainError(f"expansion ratio must be at least 1, got {r}")
    if x <= r:
        raise ConstraintError(
            f"expansion ratio {r} is not below the maximum expansion ratio {x}"
        )
    q = x / r
    # (x - r)/r rather than q - 1: no cancellation as r approaches x
    return ((x - r) / r) * (r - 1.0) / (q * (r - 1.0) + c_v * (x - 1.0))


def efficiency_otto_general(U1: float, U2: float, U3: float, U4: float) -> float:
    """Otto efficiency from the four corner internal energies."""
    if not U3 > U2:
        raise DomainError("U3 must exceed U2 (no heat added)")
    if U4 < U1:
        raise DomainError("U4 must not be below U1")
    return 1.0 - (U4 - U1) / (U3 - U2)


def efficiency_otto_ideal(r: float, gamma: float) -> float:
    """1 - r**(1 - gamma)."""
    if r < 1:
        raise DomainError(f"expansion ratio must be at least 1, got {r}")
    if not gamma > 1:
        raise DomainError(f"gamma must exceed 1, got {gamma}")
    return -math.expm1((1.0 - gamma) * math.log(r))


def max_expansion_ratio_cl(x: float) -> float:
    """Exclusive upper bound on V3/V1 for a constant-load cycle with T3/T1 = x."""
    if not x > 1:
        raise DomainError(f"temperature ratio must exceed 1, got {x}")
    return x


def max_expansion_ratio_otto(x: float, gamma: float) -> float:
    """Exclusive upper bound on V1/V2 for an Otto cycle with T3/T1 = x."""
    if not x > 1:
        raise DomainError(f"temperature ratio must exceed 1, got {x}")
    if not gamma > 1:
        raise DomainError(f"gamma must exceed 1, got {gamma}")
    return x ** (1.0 / (gamma - 1.0))


def carnot_efficiency(T1: float, T3: float) -> float:
    if not (0 < T1 < T3):
        raise DomainError(f"need 0 < T1 < T3, got T1={T1}, T3={T3}")
    return 1.0 - T1 / T3


def corner_energies(c: Cycle, props: GasProperties = AIR) -> list[float]:
    """Internal energy at each corner, in corner order."""
    return [internal_energy(s, props) for s in c.corners]

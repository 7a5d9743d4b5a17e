"""Static model of the lever test rig.

Gauge pressure needed to hold the lever at angle ``theta`` follows from a
torque balance about the axle. The actuator pushes at distance ``r_a``; a
removable mass ``m2`` hangs at ``r_mx2``; for the decreasing-load setup a
fixed mass ``m1`` sits at horizontal/vertical offsets ``r_mx1``/``r_my1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import AlignmentError, DomainError, InfeasibleTargetError

G_STANDARD = 9.80665
P_ATM = 101325.0
ACTUATOR_DIAMETER = 0.048
NOMINAL_AREA = math.pi * (ACTUATOR_DIAMETER / 2) ** 2


class LoadMode(str, Enum):
    CONSTANT_LOAD = "constant_load"
    OTTO = "otto"


@dataclass(frozen=True)
class LeverRig:
    """Rig geometry. ``A`` defaults to the nominal 48 mm pouch area.

    ``wall_force`` is the pouch deformation force (N) acting at the actuator;
    it is off by default.
    """

    r_a: float
    r_mx2: float
    A: float = NOMINAL_AREA
    r_mx1: float = 0.0
    r_my1: float = 0.0
    g: float = G_STANDARD
    P_atm: float = P_ATM
    wall_force: float = 0.0

    def __post_init__(self):
        if not (self.A > 0 and self.r_a > 0 and self.g > 0):
            raise DomainError("A, r_a and g must be positive")
        if min(self.r_mx1, self.r_my1, self.r_mx2) < 0:
            raise DomainError("mass offsets must be non-negative")
        if not self.P_atm > 0:
            raise DomainError("ambient pressure must be positive")

    @property
    def lever_area(self) -> float:
        """A * r_a: converts torque (N m) to gauge pressure (Pa)."""
        return self.A * self.r_a

    def to_absolute(self, p_gauge: float) -> float:
        return p_gauge + self.P_atm

    def to_gauge(self, p_abs: float) -> float:
        return p_abs - self.P_atm


def _check_theta(theta):
    if not abs(theta) < math.pi / 2:
        raise DomainError(f"theta must lie in (-pi/2, pi/2), got {theta}")


def _check_mass(name, m):
    if m < 0:
        raise DomainError(f"{name} must be non-negative, got {m}")


def _wall_term(rig):
    return rig.wall_force * rig.r_a


def pressure_constant_load(rig: LeverRig, theta: float, m2: float) -> float:
    _check_theta(theta)
    _check_mass("m2", m2)
    torque = m2 * rig.g * math.cos(theta) * rig.r_mx2
    return (torque + _wall_term(rig)) / rig.lever_area


def pressure_otto(rig: LeverRig, theta: float, m1: float, m2: float) -> float:
    """Decreasing-load pressure; with ``m2 = 0`` this is the restoring profile."""
    _check_theta(theta)
    _check_mass("m1", m1)
    _check_mass("m2", m2)
    c, s = math.cos(theta), math.sin(theta)
    torque = m1 * rig.g * (c * rig.r_mx1 - s * rig.r_my1) + m2 * rig.g * c * rig.r_mx2
    return (torque + _wall_term(rig)) / rig.lever_area


def pressure(rig: LeverRig, theta: float, mode: LoadMode, m2: float, m1: float = 0.0) -> float:
    if LoadMode(mode) is LoadMode.CONSTANT_LOAD:
        return pressure_constant_load(rig, theta, m2)
    return pressure_otto(rig, theta, m1, m2)


@dataclass(frozen=True)
class LoadProfile:
    samples: tuple[tuple[float, float], ...]
    mode: LoadMode

    def __post_init__(self):
        samples = tuple((float(t), float(p)) for t, p in self.samples)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "mode", LoadMode(self.mode))
        if not samples:
            raise DomainError("a load profile needs at least one sample")
        for (t0, p0), (t1, p1) in zip(samples, samples[1:]):
            if not t1 > t0:
                raise DomainError("profile angles must be strictly increasing")
        if any(not math.isfinite(p) for _, p in samples):
            raise DomainError("profile pressures must be finite")
        if self.mode is LoadMode.OTTO:
            for (t0, p0), (t1, p1) in zip(samples, samples[1:]):
                if t0 >= 0 and t1 < math.pi / 2 and not p1 < p0:
                    raise DomainError(
                        f"decreasing-load profile rises between {t0} and {t1} rad"
                    )

    @property
    def thetas(self) -> list[float]:
        return [t for t, _ in self.samples]

    @property
    def pressures(self) -> list[float]:
        return [p for _, p in self.samples]


def build_profile(
    rig: LeverRig, thetas: Sequence[float], mode: LoadMode, m2: float, m1: float = 0.0
) -> LoadProfile:
    return LoadProfile(tuple((t, pressure(rig, t, mode, m2, m1)) for t in thetas), mode)


def check_positive_work(expand: LoadProfile, restore: LoadProfile) -> tuple[bool, float]:
    """True iff the expansion load exceeds the restoring load at every angle.

    Also returns the smallest pointwise pressure margin (Pa).
    """
    if expand.thetas != restore.thetas:
        raise AlignmentError("expansion and restoring profiles use different angles")
    margin = min(pe - pr for pe, pr in zip(expand.pressures, restore.pressures))
    return margin > 0, margin


def solve_mass_for_pressure(
    rig: LeverRig, theta: float, P_target: float, mode: LoadMode, m1: float = 0.0
) -> float:
    """Removable mass ``m2`` that makes the rig hold ``P_target`` gauge at ``theta``."""
    _check_theta(theta)
    mode = LoadMode(mode)
    needed = P_target * rig.lever_area - _wall_term(rig)
    if mode is LoadMode.OTTO:
        _check_mass("m1", m1)
        needed -= m1 * rig.g * (math.cos(theta) * rig.r_mx1 - math.sin(theta) * rig.r_my1)
    per_kg = rig.g * math.cos(theta) * rig.r_mx2
    if per_kg <= 0:
        raise InfeasibleTargetError("removable mass has no lever arm (r_mx2 = 0)")
    m2 = needed / per_kg
    if m2 < 0:
        raise InfeasibleTargetError(
            f"target {P_target:g} Pa needs a negative mass ({m2:.6g} kg)"
        )
    return m2


def solve_fixed_mass(rig: LeverRig, P_target: float) -> float:
    """Fixed mass ``m1`` giving a restoring pressure of ``P_target`` at theta = 0."""
    if rig.r_mx1 <= 0:
        raise InfeasibleTargetError("fixed mass has no horizontal offset (r_mx1 = 0)")
    m1 = (P_target * rig.lever_area - _wall_term(rig)) / (rig.g * rig.r_mx1)
    if m1 < 0:
        raise InfeasibleTargetError(f"target {P_target:g} Pa needs a negative mass")
    return m1


def stroke_displacement(r: float, theta0: float, theta1: float) -> float:
    """Vertical travel of a point at horizontal distance ``r`` from the axle."""
    if theta1 < theta0:
        raise DomainError("theta1 must not be below theta0")
    return r * (math.sin(theta1) - math.sin(theta0))


def net_cycle_work(lift_mass: float, displacement: float, g: float = G_STANDARD) -> float:
    if displacement < 0:
        raise DomainError("displacement must be non-negative")
    return lift_mass * g * displacement


def lift_mass(mode: LoadMode, m2_expand: float, m2_restore: float = 0.0) -> float:
    """Mass effectively raised per cycle.

    Constant load: the difference between expansion and restoring masses.
    Decreasing load: the removable mass alone (the fixed mass returns).
    """
    if LoadMode(mode) is LoadMode.CONSTANT_LOAD:
        return m2_expand - m2_restore
    return m2_expand

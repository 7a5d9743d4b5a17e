"""Ideal-gas states and quasi-static process primitives.

All pressures here are absolute. Conversion from gauge readings happens in
:mod:`softheat.rig` and :mod:`softheat.analysis`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConsistencyError, DomainError

R_MOLAR = 8.314462618  # J/(mol K)
CV_AIR = 2.5
GAMMA_AIR = 1.4

# Tolerances used by invariant checks and tests.
PROPS_RTOL = 1e-12
INVARIANT_RTOL = 1e-9
INTEGRATION_RTOL = 1e-6


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


def check_gas_consistency(gamma: float, c_v: float, rtol: float = PROPS_RTOL) -> None:
    """Raise ConsistencyError unless gamma == 1 + 1/c_v within ``rtol``."""
    if not (c_v > 0 and gamma > 1):
        raise DomainError(f"need c_v > 0 and gamma > 1, got c_v={c_v}, gamma={gamma}")
    expected = 1.0 + 1.0 / c_v
    if abs(gamma - expected) > rtol * expected:
        raise ConsistencyError(
            f"gamma={gamma!r} is inconsistent with c_v={c_v!r} (expected {expected!r})"
        )


@dataclass(frozen=True)
class GasProperties:
    """Ideal-gas constants. ``c_v`` is molar and measured in units of R."""

    c_v_dimensionless: float = CV_AIR
    gamma: float = GAMMA_AIR
    R_molar: float = R_MOLAR

    def __post_init__(self):
        _positive("R_molar", self.R_molar)
        check_gas_consistency(self.gamma, self.c_v_dimensionless)

    @classmethod
    def air(cls) -> "GasProperties":
        return cls()

    @classmethod
    def from_gamma(cls, gamma: float) -> "GasProperties":
        if not gamma > 1:
            raise DomainError(f"gamma must exceed 1, got {gamma}")
        return cls(c_v_dimensionless=1.0 / (gamma - 1.0), gamma=gamma)

    @classmethod
    def from_cv(cls, c_v: float) -> "GasProperties":
        if not c_v > 0:
            raise DomainError(f"c_v must be positive, got {c_v}")
        return cls(c_v_dimensionless=c_v, gamma=1.0 + 1.0 / c_v)

    @property
    def c_v(self) -> float:
        return self.c_v_dimensionless


AIR = GasProperties()


@dataclass(frozen=True)
class GasState:
    """A fixed amount of ideal gas at absolute pressure ``P``."""

    n: float
    P: float
    V: float
    T: float

    def __post_init__(self):
        for name in ("n", "P", "V", "T"):
            _positive(name, getattr(self, name))

    def closure_error(self, props: GasProperties = AIR) -> float:
        """Relative residual of PV = nRT."""
        nrt = self.n * props.R_molar * self.T
        return abs(self.P * self.V - nrt) / nrt


class ProcessKind(str, Enum):
    ISOCHORIC = "isochoric"
    ISOBARIC = "isobaric"
    ISENTROPIC = "isentropic"
    ISOTHERMAL = "isothermal"


@dataclass(frozen=True)
class ProcessStep:
    """One quasi-static process between two equilibrium states.

    Sign convention: ``heat_into_gas = delta_U + work_by_gas``.
    """

    kind: ProcessKind
    start: GasState
    end: GasState
    work_by_gas: float
    heat_into_gas: float
    delta_U: float


def state_from_pvn(P: float, V: float, n: float, props: GasProperties = AIR) -> GasState:
    """Close the ideal gas law for temperature."""
    _positive("P", P)
    _positive("V", V)
    _positive("n", n)
    return GasState(n=n, P=P, V=V, T=P * V / (n * props.R_molar))


def state_from_tvn(T: float, V: float, n: float, props: GasProperties = AIR) -> GasState:
    _positive("T", T)
    _positive("V", V)
    _positive("n", n)
    return GasState(n=n, P=n * props.R_molar * T / V, V=V, T=T)


def internal_energy(s: GasState, props: GasProperties = AIR) -> float:
    """U = n c_v R T, taking U = 0 at T = 0."""
    return s.n * props.c_v_dimensionless * props.R_molar * s.T


def _delta_U(start: GasState, T_end: float, props: GasProperties) -> float:
    return start.n * props.c_v_dimensionless * props.R_molar * (T_end - start.T)


def advance_isochoric(s: GasState, T_target: float, props: GasProperties = AIR) -> ProcessStep:
    """Heat or cool at fixed volume to ``T_target``."""
    _positive("T_target", T_target)
    end = GasState(n=s.n, P=s.P * (T_target / s.T), V=s.V, T=T_target)
    dU = _delta_U(s, T_target, props)
    return ProcessStep(ProcessKind.ISOCHORIC, s, end, 0.0, dU, dU)


def advance_isochoric_to_pressure(s: GasState, P_target: float, props: GasProperties = AIR) -> ProcessStep:
    """Isochoric step specified by its end pressure; ``end.P`` is exactly ``P_target``."""
    _positive("P_target", P_target)
    T_end = s.T * (P_target / s.P)
    end = GasState(n=s.n, P=P_target, V=s.V, T=T_end)
    dU = _delta_U(s, T_end, props)
    return ProcessStep(ProcessKind.ISOCHORIC, s, end, 0.0, dU, dU)


def advance_isobaric(s: GasState, V_target: float, props: GasProperties = AIR) -> ProcessStep:
    """Expand or compress at fixed pressure to ``V_target``."""
    _positive("V_target", V_target)
    T_end = s.T * (V_target / s.V)
    end = GasState(n=s.n, P=s.P, V=V_target, T=T_end)
    W = s.P * (V_target - s.V)
    dU = _delta_U(s, T_end, props)
    return ProcessStep(ProcessKind.ISOBARIC, s, end, W, dU + W, dU)


def advance_isentropic(s: GasState, V_target: float, props: GasProperties = AIR) -> ProcessStep:
    """Reversible adiabatic volume change to ``V_target``."""
    _positive("V_target", V_target)
    ratio = s.V / V_target
    g = props.gamma
    T_end = s.T * ratio ** (g - 1.0)
    end = GasState(n=s.n, P=s.P * ratio**g, V=V_target, T=T_end)
    dU = _delta_U(s, T_end, props)
    return ProcessStep(ProcessKind.ISENTROPIC, s, end, -dU, 0.0, dU)


def advance_isothermal(s: GasState, V_target: float, props: GasProperties = AIR) -> ProcessStep:
    """Volume change at fixed temperature; all work is drawn from heat."""
    _positive("V_target", V_target)
    end = GasState(n=s.n, P=s.P * (s.V / V_target), V=V_target, T=s.T)
    W = s.n * props.R_molar * s.T * math.log(V_target / s.V)
    return ProcessStep(ProcessKind.ISOTHERMAL, s, end, W, W, 0.0)


def entropy_change(step: ProcessStep, props: GasProperties = AIR) -> float:
    """Ideal-gas entropy change between the endpoints of ``step`` (J/K)."""
    a, b = step.start, step.end
    return a.n * props.R_molar * (
        props.c_v_dimensionless * math.log(b.T / a.T) + math.log(b.V / a.V)
    )


def sample_path(step: ProcessStep, props: GasProperties = AIR, points: int = 100):
    """Return ``points`` (P, V, T) tuples along the process path, endpoints included."""
    if points < 2:
        raise DomainError("need at least two points per process")
    a, b = step.start, step.end
    out = []
    for i in range(points):
        f = i / (points - 1)
        if i == points - 1:
            out.append((b.P, b.V, b.T))
            continue
        if step.kind is ProcessKind.ISOCHORIC:
            T = a.T + f * (b.T - a.T)
            out.append((a.P * T / a.T, a.V, T))
        else:
            V = a.V + f * (b.V - a.V)
            if step.kind is ProcessKind.ISOBARIC:
                out.append((a.P, V, a.T * V / a.V))
            elif step.kind is ProcessKind.ISOTHERMAL:
                out.append((a.P * a.V / V, V, a.T))
            else:
                ratio = a.V / V
                out.append((a.P * ratio**props.gamma, V, a.T * ratio ** (props.gamma - 1.0)))
    return out

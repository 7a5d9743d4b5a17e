"""Sensor log analysis from CSV ingestion to per-cycle efficiency.

Also holds the actuator characterization estimates and a seeded synthetic
log generator used to check the pipeline end to end.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Mapping, Optional

import numpy as np

from .cycles import efficiency_otto_ideal
from .errors import (
    DataError,
    DomainError,
    PlausibilityWarning,
    SchemaError,
    UndefinedEfficiencyError,
)
from .rig import P_ATM, LeverRig, LoadMode, lift_mass, net_cycle_work, stroke_displacement

CHANNELS = ("t", "pressure_gauge", "angle", "temperature", "heater_voltage")
DEFAULT_COLUMNS = {
    "t": "time_s",
    "pressure_gauge": "pressure_gauge_pa",
    "angle": "angle_deg",
    "temperature": "temperature_k",
    "heater_voltage": "heater_v",
    "heater_current": "heater_a",
}
REPORT_COLUMNS = ("cycle_index", "stroke_deg", "displacement_m", "work_j", "heat_j", "efficiency")

DEFAULT_WINDOW_S = 1.0
DEFAULT_THRESHOLD_V = 2.0
DEFAULT_WARMUP_SKIP = 2
RATIO_PLAUSIBILITY = 1.5

# Values quoted from the experiments, used as comparison targets in reports.
REPORTED_IMPROVEMENT = 11.3
REPORTED_EFFICIENCY_CL = 0.0021e-2
REPORTED_EFFICIENCY_OTTO = 0.032e-2
OBSERVED_COMPRESSION_RISE = 5000.0
OBSERVED_EXPANSION_SPAN = 4500.0


@dataclass(frozen=True)
class SensorSample:
    t: float
    pressure_gauge: float
    angle: float
    temperature: float
    heater_voltage: float


@dataclass(frozen=True, eq=False)
class SensorLog:
    """Column-oriented time series. Angles in radians, pressures gauge (Pa)."""

    t: np.ndarray
    pressure_gauge: np.ndarray
    angle: np.ndarray
    temperature: np.ndarray
    heater_voltage: np.ndarray
    heater_current: Optional[np.ndarray] = None

    def __post_init__(self):
        n = len(self.t)
        for name in CHANNELS + ("heater_current",):
            col = getattr(self, name)
            if col is None:
                continue
            col = np.asarray(col, dtype=float)
            object.__setattr__(self, name, col)
            if col.shape != (n,):
                raise DomainError(f"channel {name} has {col.shape} samples, expected {n}")

    @classmethod
    def from_samples(cls, samples) -> "SensorLog":
        samples = list(samples)
        cols = {name: np.array([getattr(s, name) for s in samples], dtype=float) for name in CHANNELS}
        return cls(**cols)

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, key):
        if isinstance(key, slice):
            cur = None if self.heater_current is None else self.heater_current[key]
            return SensorLog(*(getattr(self, name)[key] for name in CHANNELS), heater_current=cur)
        return SensorSample(*(float(getattr(self, name)[key]) for name in CHANNELS))

    def __iter__(self) -> Iterator[SensorSample]:
        for i in range(len(self)):
            yield self[i]

    def equals(self, other: "SensorLog") -> bool:
        names = CHANNELS + ("heater_current",)
        for name in names:
            a, b = getattr(self, name), getattr(other, name)
            if (a is None) != (b is None):
                return False
            if a is not None and not np.array_equal(a, b):
                return False
        return True


def _resolve_columns(column_map):
    cols = dict(DEFAULT_COLUMNS)
    if column_map:
        unknown = set(column_map) - set(cols)
        if unknown:
            raise DomainError(f"unknown channels in column map: {sorted(unknown)}")
        cols.update(column_map)
    return cols


def load_timeseries(
    path,
    column_map: Optional[Mapping[str, str]] = None,
    calibrations: Optional[Mapping[str, tuple[float, float]]] = None,
) -> SensorLog:
    """Read a CSV log.

    ``column_map`` renames channels (keys from :data:`DEFAULT_COLUMNS`).
    ``calibrations`` maps a channel to ``(gain, offset)`` applied to the raw
    column before unit handling, e.g. a thermocouple voltage to kelvin. The
    angle column is in degrees after calibration.
    """
    cols = _resolve_columns(column_map)
    calibrations = dict(calibrations or {})
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaError(cols["t"], f"{path}: empty file, no header") from None
        index = {}
        for name in CHANNELS:
            if cols[name] not in header:
                raise SchemaError(name, f"{path}: missing column {cols[name]!r} (channel {name!r})")
            index[name] = header.index(cols[name])
        if cols["heater_current"] in header:
            index["heater_current"] = header.index(cols["heater_current"])
        data = {name: [] for name in index}
        for row_no, row in enumerate(reader):
            if not row:
                continue
            try:
                for name, j in index.items():
                    data[name].append(float(row[j]))
            except (ValueError, IndexError) as exc:
                raise DataError(row_no, f"unparseable value ({exc})") from None
    arrays = {}
    for name, values in data.items():
        col = np.array(values, dtype=float)
        if name in calibrations:
            gain, offset = calibrations[name]
            col = col * gain + offset
        arrays[name] = col
    bad = np.flatnonzero(~np.all(np.isfinite(np.vstack(list(arrays.values()))), axis=0)) if len(arrays["t"]) else []
    if len(bad):
        raise DataError(int(bad[0]), "non-finite value")
    back = np.flatnonzero(np.diff(arrays["t"]) < 0)
    if len(back):
        raise DataError(int(back[0]) + 1, "time goes backwards")
    if len(arrays["t"]) and arrays["t"][0] < 0:
        raise DataError(0, "negative time")
    arrays["angle"] = np.radians(arrays["angle"])
    return SensorLog(**arrays)


def _exact_degrees(rad: float) -> float:
    """Degree value that converts back to exactly ``rad`` when one exists."""
    d = math.degrees(rad)
    if math.radians(d) == rad:
        return d
    lo = hi = d
    for _ in range(8):
        lo, hi = math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)
        for cand in (lo, hi):
            if math.radians(cand) == rad:
                return cand
    return d


def write_timeseries(log: SensorLog, path, column_map: Optional[Mapping[str, str]] = None) -> Path:
    """Write a log in the format read by :func:`load_timeseries`."""
    cols = _resolve_columns(column_map)
    names = list(CHANNELS) + (["heater_current"] if log.heater_current is not None else [])
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([cols[n] for n in names])
        arrays = [getattr(log, n) for n in names]
        angle_i = names.index("angle")
        for i in range(len(log)):
            row = [float(a[i]) for a in arrays]
            row[angle_i] = _exact_degrees(row[angle_i])
            w.writerow([repr(v) for v in row])
    return path


def smooth_angle(log: SensorLog, window_s: float = DEFAULT_WINDOW_S) -> SensorLog:
    """Centered moving average of the angle over a time window.

    Each sample averages all samples within ``window_s / 2`` of it; near the
    ends the window shrinks. Other channels are returned unchanged.
    """
    if not window_s > 0:
        raise DomainError(f"window must be positive, got {window_s}")
    if len(log) == 0:
        return log
    half = window_s / 2 * (1 + 1e-9)
    lo = np.searchsorted(log.t, log.t - half, side="left")
    hi = np.searchsorted(log.t, log.t + half, side="right")
    # cumulative sum relative to the first sample keeps offsets from eating precision
    base = log.angle[0]
    csum = np.concatenate(([0.0], np.cumsum(log.angle - base)))
    smoothed = (csum[hi] - csum[lo]) / (hi - lo) + base
    return replace(log, angle=smoothed)


@dataclass(frozen=True, eq=False)
class CycleSegment:
    samples: SensorLog
    start_index: int
    heater_on_duration: float
    theta_min: float
    theta_max: float
    P_min: float
    P_max: float
    T_min: float
    T_max: float

    @property
    def stroke(self) -> float:
        return self.theta_max - self.theta_min


def rising_edges(heater_voltage: np.ndarray, threshold: float) -> np.ndarray:
    on = heater_voltage >= threshold
    return np.flatnonzero(on[1:] & ~on[:-1]) + 1


def segment_cycles(log: SensorLog, heater_threshold: float = DEFAULT_THRESHOLD_V) -> list[CycleSegment]:
    """Split a log at heater rising edges.

    A segment runs from one rising edge up to (excluding) the next; the
    trailing partial period is dropped. The angle channel is used as given,
    so smooth it first.
    """
    edges = rising_edges(log.heater_voltage, heater_threshold)
    segments = []
    for a, b in zip(edges, edges[1:]):
        # include the closing sample so the last interval is counted
        on = log.heater_voltage[a:b] >= heater_threshold
        dt = np.diff(log.t[a : b + 1])
        seg = log[a:b]
        segments.append(
            CycleSegment(
                samples=seg,
                start_index=int(a),
                heater_on_duration=float(np.sum(dt[on])),
                theta_min=float(seg.angle.min()),
                theta_max=float(seg.angle.max()),
                P_min=float(seg.pressure_gauge.min()),
                P_max=float(seg.pressure_gauge.max()),
                T_min=float(seg.temperature.min()),
                T_max=float(seg.temperature.max()),
            )
        )
    return segments


@dataclass(frozen=True)
class LoadMasses:
    """Masses on the rig. ``m2_restore`` applies to constant-load runs only."""

    m2_expand: float
    m2_restore: float = 0.0
    m1: float = 0.0


@dataclass(frozen=True)
class HeaterInput:
    """Supply voltage and current. ``amps=None`` reads a logged current channel."""

    volts: float = 3.92
    amps: Optional[float] = 0.91
    threshold_v: float = DEFAULT_THRESHOLD_V


@dataclass(frozen=True)
class CycleResult:
    index: int
    stroke: float
    displacement: float
    work: float
    heat_in: float
    efficiency: float
    heater_on_duration: float
    T_min: float = math.nan
    T_max: float = math.nan
    P_min: float = math.nan
    P_max: float = math.nan


def cycle_metrics(
    segment: CycleSegment,
    rig: LeverRig,
    mode: LoadMode,
    masses: LoadMasses,
    heater: HeaterInput = HeaterInput(),
    index: int = 0,
) -> CycleResult:
    """Work from lever kinematics, heat from V * I * heater-on time."""
    amps = heater.amps
    if amps is None:
        cur = segment.samples.heater_current
        if cur is None:
            raise DomainError("no heater current configured and none logged")
        on = segment.samples.heater_voltage >= heater.threshold_v
        amps = float(np.mean(cur[on])) if on.any() else 0.0
    heat = heater.volts * amps * segment.heater_on_duration
    if not heat > 0:
        raise UndefinedEfficiencyError(f"cycle {index} has no heat input")
    disp = stroke_displacement(rig.r_mx2, segment.theta_min, segment.theta_max)
    work = net_cycle_work(lift_mass(mode, masses.m2_expand, masses.m2_restore), disp, rig.g)
    return CycleResult(
        index=index,
        stroke=segment.stroke,
        displacement=disp,
        work=work,
        heat_in=heat,
        efficiency=work / heat,
        heater_on_duration=segment.heater_on_duration,
        T_min=segment.T_min,
        T_max=segment.T_max,
        P_min=segment.P_min,
        P_max=segment.P_max,
    )


@dataclass(frozen=True)
class ExperimentReport:
    mode: LoadMode
    cycles: tuple[CycleResult, ...]
    skipped: int = 0
    window_s: float = DEFAULT_WINDOW_S

    def _mean(self, attr):
        if not self.cycles:
            return math.nan
        return math.fsum(getattr(c, attr) for c in self.cycles) / len(self.cycles)

    @property
    def mean_work(self) -> float:
        return self._mean("work")

    @property
    def mean_heat(self) -> float:
        return self._mean("heat_in")

    @property
    def mean_efficiency(self) -> float:
        return self._mean("efficiency")

    @property
    def mean_stroke(self) -> float:
        return self._mean("stroke")

    @property
    def mean_displacement(self) -> float:
        return self._mean("displacement")

    @property
    def mean_heating_duration(self) -> float:
        return self._mean("heater_on_duration")


def analyze(
    log: SensorLog,
    rig: LeverRig,
    mode: LoadMode,
    masses: LoadMasses,
    heater: HeaterInput = HeaterInput(),
    window_s: float = DEFAULT_WINDOW_S,
    warmup_skip: int = DEFAULT_WARMUP_SKIP,
) -> ExperimentReport:
    """Smooth, segment and evaluate every cycle after the warm-up ones."""
    mode = LoadMode(mode)
    segments = segment_cycles(smooth_angle(log, window_s), heater.threshold_v)
    kept = segments[warmup_skip:]
    results = tuple(
        cycle_metrics(seg, rig, mode, masses, heater, index=warmup_skip + i)
        for i, seg in enumerate(kept)
    )
    return ExperimentReport(mode, results, skipped=min(warmup_skip, len(segments)), window_s=window_s)


def write_report_csv(report: ExperimentReport, path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for c in report.cycles:
            w.writerow(
                [
                    c.index,
                    f"{math.degrees(c.stroke):.9g}",
                    f"{c.displacement:.9g}",
                    f"{c.work:.9g}",
                    f"{c.heat_in:.9g}",
                    f"{c.efficiency:.9g}",
                ]
            )
    return path


def format_report(report: ExperimentReport) -> str:
    lines = [
        f"mode: {report.mode.value}",
        f"cycles analyzed: {len(report.cycles)} (warm-up skipped: {report.skipped})",
        f"angle smoothing window: {report.window_s:g} s",
        "",
        f"{'cycle':>5} {'stroke_deg':>10} {'disp_mm':>8} {'work_J':>10} {'heat_J':>9} "
        f"{'eff_%':>9} {'T_min_K':>8} {'T_max_K':>8}",
    ]
    for c in report.cycles:
        lines.append(
            f"{c.index:>5d} {math.degrees(c.stroke):>10.4f} {c.displacement * 1e3:>8.4f} "
            f"{c.work:>10.5f} {c.heat_in:>9.2f} {c.efficiency * 100:>9.5f} "
            f"{c.T_min:>8.1f} {c.T_max:>8.1f}"
        )
    if report.cycles:
        lines += [
            "",
            f"mean stroke: {math.degrees(report.mean_stroke):.4f} deg",
            f"mean displacement: {report.mean_displacement * 1e3:.4f} mm",
            f"mean heating duration: {report.mean_heating_duration:.3f} s",
            f"mean work: {report.mean_work:.5g} J",
            f"mean heat input (high estimate): {report.mean_heat:.5g} J",
            f"mean efficiency: {report.mean_efficiency * 100:.5f} %",
        ]
    else:
        lines += ["", "no complete cycles after warm-up"]
    if report.mode is LoadMode.CONSTANT_LOAD:
        lines += [
            "",
            "note: thermocouple temperatures in constant-load runs may read low after the "
            "sensor was repositioned; no correction is applied.",
        ]
    return "\n".join(lines) + "\n"


def improvement_factor(cl: ExperimentReport, otto: ExperimentReport) -> dict:
    """Efficiency quotient (Otto over constant load), mean-based and per cycle."""
    per_cycle = [o.efficiency / c.efficiency for c, o in zip(cl.cycles, otto.cycles) if c.efficiency > 0]
    return {
        "quotient_of_means": otto.mean_efficiency / cl.mean_efficiency,
        "per_cycle": per_cycle,
        "from_reported_values": REPORTED_EFFICIENCY_OTTO / REPORTED_EFFICIENCY_CL,
        "reported_factor": REPORTED_IMPROVEMENT,
    }


def format_comparison(cl: ExperimentReport, otto: ExperimentReport) -> str:
    f = improvement_factor(cl, otto)
    lines = [
        "constant-load vs decreasing-load comparison",
        f"mean efficiency, constant load: {cl.mean_efficiency * 100:.5f} %",
        f"mean efficiency, decreasing load: {otto.mean_efficiency * 100:.5f} %",
        f"improvement (quotient of means): {f['quotient_of_means']:.2f}x",
    ]
    if f["per_cycle"]:
        lines.append("per-cycle quotients: " + ", ".join(f"{q:.2f}" for q in f["per_cycle"]))
    lines += [
        "",
        f"footnote: the experiments report an improvement factor of {f['reported_factor']:g}, "
        f"but the reported rounded efficiencies (0.032 % / 0.0021 %) give "
        f"{f['from_reported_values']:.1f}; the discrepancy is left as is.",
    ]
    return "\n".join(lines) + "\n"


# -- characterization ------------------------------------------------------


def expansion_ratio_isothermal(
    P1_abs: float, P2_abs: float, plausibility: float = RATIO_PLAUSIBILITY
) -> float:
    """V2/V1 from absolute pressures before and after a slow expansion."""
    if not (P1_abs > 0 and P2_abs > 0):
        raise DomainError(f"absolute pressures must be positive, got {P1_abs}, {P2_abs}")
    if P1_abs < P2_abs:
        raise DomainError("pressure rose; not an expansion")
    ratio = P1_abs / P2_abs
    if ratio > plausibility:
        warnings.warn(
            f"expansion ratio {ratio:.3g} exceeds {plausibility:g}; were gauge pressures passed?",
            PlausibilityWarning,
            stacklevel=2,
        )
    return ratio


def predict_isentropic_pressure_change(P1_abs: float, ratio: float, gamma: float = 1.4) -> float:
    """Pressure change for an adiabatic volume change V1/V2 = ``ratio``.

    ``ratio > 1`` is a compression (positive change).
    """
    if not ratio > 0:
        raise DomainError(f"ratio must be positive, got {ratio}")
    return P1_abs * math.expm1(gamma * math.log(ratio))


def predicted_otto_efficiency(ratio: float, gamma: float = 1.4) -> float:
    return efficiency_otto_ideal(ratio, gamma)


@dataclass(frozen=True)
class CharacterizationReport:
    ambient_pressure: float
    p_initial_gauge: float
    p_expanded_gauge: float
    expansion_ratio: float
    compression_rise: float
    expansion_drop: float
    otto_max_gauge: float
    predicted_efficiency: float
    observed_compression_rise: float
    observed_expansion_span: float
    cl_max_gauge: float
    cl_restore_gauge: float
    gamma: float

    @property
    def compression_residual(self) -> float:
        """Observed minus predicted compression rise, relative to observed."""
        return (self.observed_compression_rise - self.compression_rise) / self.observed_compression_rise

    @property
    def expansion_residual(self) -> float:
        return (self.observed_expansion_span - abs(self.expansion_drop)) / self.observed_expansion_span

    def format(self) -> str:
        lines = [
            f"assumed ambient pressure: {self.ambient_pressure:.0f} Pa, gamma = {self.gamma:g}",
            "",
            f"1. isothermal expansion ratio: {self.p_initial_gauge / 1e3:.2f} -> "
            f"{self.p_expanded_gauge / 1e3:.2f} kPa gauge gives r = {self.expansion_ratio:.4f}",
            f"2. isentropic compression estimate: predicted rise {self.compression_rise / 1e3:.2f} kPa, "
            f"observed {self.observed_compression_rise / 1e3:.2f} kPa "
            f"(residual {self.compression_residual * 100:+.1f} %)",
            f"3. decreasing-load maximum pressure target: {self.otto_max_gauge / 1e3:.2f} kPa gauge",
            f"4. isentropic expansion estimate from {self.otto_max_gauge / 1e3:.2f} kPa: predicted drop "
            f"{abs(self.expansion_drop) / 1e3:.2f} kPa, observed span "
            f"{self.observed_expansion_span / 1e3:.2f} kPa (residual {self.expansion_residual * 100:+.1f} %)",
            f"5. constant-load maximum pressure target: {self.cl_max_gauge / 1e3:.2f} kPa gauge",
            f"6. constant-load restoring target: {self.cl_restore_gauge / 1e3:.2f} kPa gauge",
            "",
            f"predicted ideal Otto efficiency at r = {self.expansion_ratio:.4f}: "
            f"{self.predicted_efficiency * 100:.3f} %",
            "note: residuals between predicted adiabatic and observed pressure changes are "
            "attributed to heat loss during the non-ideal rapid strokes.",
        ]
        return "\n".join(lines) + "\n"


def characterize(
    p_initial_gauge: float = 6900.0,
    p_expanded_gauge: float = 4055.0,
    otto_max_gauge: float = 14000.0,
    cl_max_gauge: float = 13000.0,
    cl_restore_gauge: float = 11000.0,
    observed_compression_rise: float = OBSERVED_COMPRESSION_RISE,
    observed_expansion_span: float = OBSERVED_EXPANSION_SPAN,
    gamma: float = 1.4,
    ambient_pressure: float = P_ATM,
) -> CharacterizationReport:
    """Characterization calculations from gauge pressure readings.

    The expanded-state default is reconstructed from the 6.9 kPa fill and the
    1.027 expansion ratio, since only the ratio was reported.
    """
    p1 = p_initial_gauge + ambient_pressure
    p2 = p_expanded_gauge + ambient_pressure
    ratio = expansion_ratio_isothermal(p1, p2)
    return CharacterizationReport(
        ambient_pressure=ambient_pressure,
        p_initial_gauge=p_initial_gauge,
        p_expanded_gauge=p_expanded_gauge,
        expansion_ratio=ratio,
        compression_rise=predict_isentropic_pressure_change(p1, ratio, gamma),
        expansion_drop=predict_isentropic_pressure_change(otto_max_gauge + ambient_pressure, 1 / ratio, gamma),
        otto_max_gauge=otto_max_gauge,
        predicted_efficiency=predicted_otto_efficiency(ratio, gamma),
        observed_compression_rise=observed_compression_rise,
        observed_expansion_span=observed_expansion_span,
        cl_max_gauge=cl_max_gauge,
        cl_restore_gauge=cl_restore_gauge,
        gamma=gamma,
    )


# -- synthetic logs --------------------------------------------------------


@dataclass(frozen=True)
class SyntheticConfig:
    """Parameters of a synthetic experiment log.

    Each cycle: the heater is on for ``heating_s``; the lever sits at
    ``theta0`` for the first 30 % of heating, rises by ``stroke`` over the
    next 20 %, holds, and after the heater switches off it returns over the
    30-50 % part of the rest period. Angles and noise levels are in degrees.
    """

    mode: LoadMode = LoadMode.CONSTANT_LOAD
    rig: LeverRig = field(default_factory=lambda: LeverRig(r_a=0.137, r_mx2=0.200))
    masses: LoadMasses = LoadMasses(m2_expand=1.643, m2_restore=1.361)
    heater: HeaterInput = HeaterInput()
    n_cycles: int = 4
    rate_hz: float = 50.0
    heating_s: float = 153.6
    rest_s: float = 60.0
    theta0_deg: float = 0.0
    stroke_deg: float = 1.2
    p_low_gauge: float = 10600.0
    p_high_gauge: float = 15000.0
    t_low: float = 300.0
    t_high: float = 317.0
    heater_on_v: float = 4.0
    lead_s: float = 2.0
    sigma_angle_deg: float = 0.0
    sigma_pressure: float = 0.0
    sigma_temperature: float = 0.0
    sigma_heater_v: float = 0.0

    def __post_init__(self):
        if not self.rate_hz > 0:
            raise DomainError("rate must be positive")
        for name in ("sigma_angle_deg", "sigma_pressure", "sigma_temperature", "sigma_heater_v"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")
        if self.lead_s < 0:
            raise DomainError("lead time must be non-negative")
        if self.n_cycles < 1 or self.heating_s <= 0 or self.rest_s <= 0:
            raise DomainError("need at least one cycle with positive heating and rest times")
        object.__setattr__(self, "mode", LoadMode(self.mode))


def reference_constant_load_config(**overrides) -> SyntheticConfig:
    return replace(SyntheticConfig(), **overrides)


def reference_otto_config(**overrides) -> SyntheticConfig:
    base = SyntheticConfig(
        mode=LoadMode.OTTO,
        rig=LeverRig(r_a=0.137, r_mx2=0.028, r_mx1=0.028, r_my1=0.210),
        masses=LoadMasses(m2_expand=1.00, m1=13.6),
        heating_s=5.5,
        rest_s=10.0,
        stroke_deg=1.3,
        p_low_gauge=7400.0,
        p_high_gauge=14600.0,
        t_low=310.0,
        t_high=321.0,
    )
    return replace(base, **overrides)


def _smoothstep(u):
    return 0.5 - 0.5 * np.cos(np.pi * np.clip(u, 0.0, 1.0))


def generate_synthetic(config: SyntheticConfig, seed: int = 0) -> tuple[SensorLog, list[CycleResult]]:
    """Build a log of ``n_cycles`` heater periods and its ground-truth metrics.

    The log opens with ``lead_s`` of idle samples so the first heater switch-on
    is a detectable rising edge, and ends with one sample at the next rising
    edge so the final cycle is complete.
    """
    c = config
    per_heat = round(c.heating_s * c.rate_hz)
    per_rest = round(c.rest_s * c.rate_hz)
    per_lead = round(c.lead_s * c.rate_hz)
    period = per_heat + per_rest
    k = np.arange(per_lead + c.n_cycles * period + 1)
    t = k / c.rate_hz
    # the lead-in is the tail of a rest period
    local = (k - per_lead) % period
    heating = (local < per_heat) & (k >= per_lead)
    local = np.where(k >= per_lead, local, period - per_lead + k)
    tau = local / c.rate_hz
    h = per_heat / c.rate_hz
    rest = per_rest / c.rate_hz

    rise = _smoothstep((tau - 0.3 * h) / (0.2 * h))
    fall = _smoothstep((tau - h - 0.3 * rest) / (0.2 * rest))
    lift = np.where(heating, rise, 1.0 - fall)
    angle_deg = c.theta0_deg + c.stroke_deg * lift

    p_up = np.clip(tau / (0.3 * h), 0.0, 1.0)
    p_down = np.clip((tau - h) / (0.3 * rest), 0.0, 1.0)
    pressure = c.p_low_gauge + (c.p_high_gauge - c.p_low_gauge) * np.where(heating, p_up, 1.0 - p_down)
    temp_frac = np.where(heating, tau / h, 1.0 - (tau - h) / rest)
    temperature = c.t_low + (c.t_high - c.t_low) * temp_frac
    heater = np.where(heating, c.heater_on_v, 0.0)

    rng = np.random.default_rng(seed)
    n = len(k)
    if c.sigma_angle_deg:
        angle_deg = angle_deg + rng.normal(0.0, c.sigma_angle_deg, n)
    if c.sigma_pressure:
        pressure = pressure + rng.normal(0.0, c.sigma_pressure, n)
    if c.sigma_temperature:
        temperature = temperature + rng.normal(0.0, c.sigma_temperature, n)
    if c.sigma_heater_v:
        heater = heater + rng.normal(0.0, c.sigma_heater_v, n)

    log = SensorLog(t, pressure, np.radians(angle_deg), temperature, heater)

    theta0 = math.radians(c.theta0_deg)
    theta1 = math.radians(c.theta0_deg + c.stroke_deg)
    disp = stroke_displacement(c.rig.r_mx2, theta0, theta1)
    work = net_cycle_work(lift_mass(c.mode, c.masses.m2_expand, c.masses.m2_restore), disp, c.rig.g)
    heat = c.heater.volts * c.heater.amps * h
    truth = [
        CycleResult(
            index=i,
            stroke=theta1 - theta0,
            displacement=disp,
            work=work,
            heat_in=heat,
            efficiency=work / heat,
            heater_on_duration=h,
            T_min=c.t_low,
            T_max=c.t_high,
            P_min=c.p_low_gauge,
            P_max=c.p_high_gauge,
        )
        for i in range(c.n_cycles)
    ]
    return log, truth

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from softheat.errors import ConsistencyError, DomainError
from softheat.thermo import (
    AIR,
    INTEGRATION_RTOL,
    INVARIANT_RTOL,
    R_MOLAR,
    GasProperties,
    GasState,
    ProcessKind,
    advance_isentropic,
    advance_isobaric,
    advance_isochoric,
    advance_isochoric_to_pressure,
    advance_isothermal,
    entropy_change,
    internal_energy,
    sample_path,
    state_from_pvn,
    state_from_tvn,
)

# Expected values below were computed with mpmath at 40 digits.
T_FROM_PVN = 999.98944543934685
U_300K = 6235.8469635
Q_300_TO_317 = 353.364661265
W_ISOBARIC = 0.3059775
ISENTROPIC_P_FACTOR = 2.6390158215457885
P_AFTER_ISOTHERMAL = 105379.74683544304
W_ISOTHERMAL_DOUBLING = 1728.9438964613285
S_ISOTHERMAL_DOUBLING = 5.7631463215377616
S_ISOCHORIC_DOUBLING = 14.407865803844404


def air_state(T=300.0, V=1.0e-3, n=1.0):
    return state_from_tvn(T, V, n, AIR)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestGasProperties:
    def test_air_defaults(self):
        assert AIR.c_v == 2.5
        assert AIR.gamma == 1.4
        assert AIR.R_molar == R_MOLAR

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ConsistencyError):
            GasProperties(c_v_dimensionless=2.5, gamma=5 / 3)

    def test_monatomic(self):
        p = GasProperties.from_gamma(5 / 3)
        assert p.c_v == pytest.approx(1.5, rel=1e-12)

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_nonpositive_cv(self, bad):
        with pytest.raises(DomainError):
            GasProperties.from_cv(bad)


class TestStateFromPVN:
    def test_temperature_closure(self):
        s = state_from_pvn(101325.0, 8.20565e-2, 1.0)
        assert s.T == pytest.approx(T_FROM_PVN, rel=1e-13)

    def test_identity_300(self):
        V, n = 2.5e-4, 0.37
        P = n * R_MOLAR * 300.0 / V
        assert state_from_pvn(P, V, n).T == pytest.approx(300.0, rel=1e-14)

    @pytest.mark.parametrize("args", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0), (1.0, 1.0, 0.0)])
    def test_nonpositive_rejected(self, args):
        with pytest.raises(DomainError):
            state_from_pvn(*args)

    def test_state_fields_positive(self):
        with pytest.raises(DomainError):
            GasState(n=1.0, P=1.0, V=1.0, T=-3.0)


class TestInternalEnergy:
    def test_value(self):
        assert internal_energy(air_state()) == pytest.approx(U_300K, rel=1e-14)

    def test_linear_in_temperature(self):
        assert internal_energy(air_state(T=600.0)) == pytest.approx(2 * U_300K, rel=1e-14)

    def test_extensive(self):
        assert internal_energy(air_state(n=2.0)) == 2 * internal_energy(air_state())


class TestIsochoric:
    def test_pressure_doubles(self):
        s = air_state()
        step = advance_isochoric(s, 600.0)
        assert step.end.P == pytest.approx(2 * s.P, rel=1e-15)
        assert step.end.V == s.V

    def test_identity(self):
        step = advance_isochoric(air_state(), 300.0)
        assert step.heat_into_gas == step.work_by_gas == step.delta_U == 0.0

    def test_heat(self):
        step = advance_isochoric(air_state(), 317.0)
        assert step.heat_into_gas == pytest.approx(Q_300_TO_317, rel=1e-12)
        assert step.delta_U == step.heat_into_gas

    def test_bad_target(self):
        with pytest.raises(DomainError):
            advance_isochoric(air_state(), 0.0)

    def test_pressure_target_exact(self):
        s = air_state()
        P = s.P * 317.0 / 300.0
        step = advance_isochoric_to_pressure(s, P)
        assert step.end.P == P
        assert step.end.T == pytest.approx(317.0, rel=1e-15)
        assert step.heat_into_gas == pytest.approx(Q_300_TO_317, rel=1e-12)
        with pytest.raises(DomainError):
            advance_isochoric_to_pressure(s, -1.0)


class TestIsobaric:
    def test_temperature_doubles(self):
        s = air_state()
        assert advance_isobaric(s, 2 * s.V).end.T == pytest.approx(600.0, rel=1e-15)

    def test_identity(self):
        s = air_state()
        step = advance_isobaric(s, s.V)
        assert step.work_by_gas == step.heat_into_gas == step.delta_U == 0.0
        assert step.end == s

    def test_work(self):
        s = state_from_pvn(113325.0, 1.0e-4, 1e-3)
        step = advance_isobaric(s, 1.027e-4)
        assert step.work_by_gas == pytest.approx(W_ISOBARIC, rel=1e-12)


def isentropic_oracle(s, V_target, props):
    """Integrate n c_v R dT = -P dV with P = nRT/V."""
    sol = solve_ivp(
        lambda V, T: -T / (props.c_v * V),
        (s.V, V_target),
        [s.T],
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
    )
    T_end = sol.y[0, -1]
    return s.n * props.R_molar * T_end / V_target, T_end


class TestIsentropic:
    def test_halving_volume(self):
        s = air_state()
        step = advance_isentropic(s, s.V / 2)
        assert step.end.P / s.P == pytest.approx(ISENTROPIC_P_FACTOR, rel=1e-13)
        P_o, T_o = isentropic_oracle(s, s.V / 2, AIR)
        assert rel(step.end.P, P_o) < INTEGRATION_RTOL
        assert rel(step.end.T, T_o) < INTEGRATION_RTOL

    def test_identity(self):
        s = air_state()
        step = advance_isentropic(s, s.V)
        assert step.work_by_gas == step.heat_into_gas == step.delta_U == 0.0

    def test_reversible(self):
        s = air_state()
        back = advance_isentropic(advance_isentropic(s, s.V / 3).end, s.V).end
        for name in ("P", "V", "T"):
            assert rel(getattr(back, name), getattr(s, name)) < INVARIANT_RTOL

    def test_adiabatic(self):
        step = advance_isentropic(air_state(), 4e-4)
        assert step.heat_into_gas == 0.0
        assert step.work_by_gas == -step.delta_U
        assert abs(entropy_change(step)) < 1e-12


class TestIsothermal:
    def test_pressure_after_expansion(self):
        s = state_from_pvn(108225.0, 1.0e-4, 4e-3)
        step = advance_isothermal(s, 1.027e-4)
        assert step.end.P == pytest.approx(P_AFTER_ISOTHERMAL, rel=1e-13)

    def test_identity(self):
        s = air_state()
        step = advance_isothermal(s, s.V)
        assert step.work_by_gas == 0.0 and step.end == s

    def test_work_doubling(self):
        s = air_state()
        step = advance_isothermal(s, 2 * s.V)
        assert step.work_by_gas == pytest.approx(W_ISOTHERMAL_DOUBLING, rel=1e-13)
        assert step.heat_into_gas == step.work_by_gas
        assert step.delta_U == 0.0


class TestEntropy:
    def test_isothermal_doubling(self):
        s = air_state()
        assert entropy_change(advance_isothermal(s, 2 * s.V)) == pytest.approx(
            S_ISOTHERMAL_DOUBLING, rel=1e-13
        )

    def test_isochoric_doubling(self):
        assert entropy_change(advance_isochoric(air_state(), 600.0)) == pytest.approx(
            S_ISOCHORIC_DOUBLING, rel=1e-13
        )


ADVANCES = {
    ProcessKind.ISOCHORIC: (advance_isochoric, "T"),
    ProcessKind.ISOBARIC: (advance_isobaric, "V"),
    ProcessKind.ISENTROPIC: (advance_isentropic, "V"),
    ProcessKind.ISOTHERMAL: (advance_isothermal, "V"),
}

states = st.builds(
    lambda T, V, n: state_from_tvn(T, V, n),
    st.floats(50.0, 2000.0),
    st.floats(1e-6, 1.0),
    st.floats(1e-4, 10.0),
)
factors = st.floats(0.2, 5.0)
gases = st.sampled_from([AIR, GasProperties.from_gamma(5 / 3)])
kinds = st.sampled_from(list(ProcessKind))


@settings(max_examples=300, deadline=None)
@given(states, factors, gases, kinds)
def test_first_law_and_closure(s, f, props, kind):
    advance, var = ADVANCES[kind]
    step = advance(s, getattr(s, var) * f, props)
    scale = max(abs(step.heat_into_gas), abs(step.delta_U), abs(step.work_by_gas))
    assert abs(step.heat_into_gas - step.delta_U - step.work_by_gas) <= INVARIANT_RTOL * scale
    assert step.end.closure_error(props) < INVARIANT_RTOL
    assert step.kind is kind


@settings(max_examples=300, deadline=None)
@given(states, factors, gases, kinds)
def test_path_reversal(s, f, props, kind):
    advance, var = ADVANCES[kind]
    out = advance(s, getattr(s, var) * f, props).end
    back = advance(out, getattr(s, var), props).end
    for name in ("P", "V", "T"):
        assert rel(getattr(back, name), getattr(s, name)) < INVARIANT_RTOL


@settings(max_examples=100, deadline=None)
@given(states, factors, gases)
def test_isentropic_matches_integration(s, f, props):
    step = advance_isentropic(s, s.V * f, props)
    P_o, T_o = isentropic_oracle(s, s.V * f, props)
    assert rel(step.end.P, P_o) < INTEGRATION_RTOL
    assert rel(step.end.T, T_o) < INTEGRATION_RTOL


@pytest.mark.parametrize("kind", list(ProcessKind))
def test_sample_path_endpoints(kind):
    s = air_state()
    advance, var = ADVANCES[kind]
    step = advance(s, getattr(s, var) * 1.7)
    pts = sample_path(step, AIR, 50)
    assert len(pts) == 50
    assert pts[0] == pytest.approx((s.P, s.V, s.T), rel=1e-14)
    assert pts[-1] == (step.end.P, step.end.V, step.end.T)
    for P, V, T in pts:
        assert abs(P * V - s.n * R_MOLAR * T) <= 1e-9 * P * V

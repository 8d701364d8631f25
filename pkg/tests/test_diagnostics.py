import numpy as np
import pytest

from conftest import linear_system, rwa_system
from qsubthermo import (
    Classification,
    FockConfig,
    InteractionKind,
    ModelError,
    OscillatorSystem,
    SingularCouplingError,
    ThermalPreparation,
    csl_check,
    decomposition_audit,
    heat_transfer,
    scan_violations,
)

HOT_A = ThermalPreparation.from_temperatures(100.0, 50.0)


class TestCslCheck:
    def test_compliant_flow_down_the_gradient(self):
        verdict = csl_check(0.4, HOT_A)
        assert verdict.compliant and verdict.margin == pytest.approx(0.4)
        assert not verdict.anomaly

    def test_violation_flagged_with_negative_margin(self):
        verdict = csl_check(-0.4, HOT_A)
        assert not verdict.compliant
        assert verdict.margin == pytest.approx(-0.4)

    def test_zero_transfer_is_compliant(self):
        assert csl_check(0.0, HOT_A).compliant
        assert csl_check(5e-13, HOT_A.swapped()).compliant

    def test_equal_temperature_anomaly(self):
        prep = ThermalPreparation(0.7, 0.7)
        verdict = csl_check(0.3, prep)
        assert verdict.anomaly and not verdict.compliant
        quiet = csl_check(1e-14, prep)
        assert quiet.compliant and not quiet.anomaly

    def test_fig3_regime_produces_violations(self):
        sys_ = linear_system(g=0.49)
        verdicts = [
            csl_check(heat_transfer(float(t), sys_, HOT_A).dq_ab, HOT_A, t=float(t))
            for t in np.linspace(0.0, 50.0, 600)
        ]
        assert any(not v.compliant for v in verdicts)
        assert any(v.compliant for v in verdicts)


class TestScanViolations:
    def test_rwa_is_clean(self):
        profile = scan_violations(rwa_system(g=0.2), HOT_A, t_max=40.0, n_samples=400)
        assert profile.classification is Classification.NONE
        assert profile.violations == ()

    def test_linear_just_below_critical_is_transient(self):
        profile = scan_violations(linear_system(g=0.49), HOT_A, t_max=50.0, n_samples=512)
        assert profile.violations
        assert profile.classification is Classification.TRANSIENT

    def test_linear_above_critical_is_persistent(self):
        profile = scan_violations(linear_system(g=0.51), HOT_A, t_max=50.0, n_samples=512)
        assert profile.violations
        assert profile.classification is Classification.PERSISTENT

    def test_grid_validation(self):
        with pytest.raises(ModelError):
            scan_violations(rwa_system(), HOT_A, t_max=0.0, n_samples=64)
        with pytest.raises(ModelError):
            scan_violations(rwa_system(), HOT_A, t_max=10.0, n_samples=8)

    def test_singular_coupling_propagates(self):
        with pytest.raises(SingularCouplingError):
            scan_violations(linear_system(g=0.5), HOT_A, t_max=10.0, n_samples=64)


class TestDecompositionAudit:
    def test_rwa_is_safe(self, cfg_small):
        audit = decomposition_audit(rwa_system(), cfg_small)
        assert audit.csl_safe
        assert max(audit.norm_h0v, audit.norm_hv, audit.norm_h0h) < 1e-10

    def test_linear_is_not_safe(self, cfg_small):
        audit = decomposition_audit(linear_system(g=0.1), cfg_small)
        assert not audit.csl_safe
        assert audit.norm_h0v > 0.01
        assert audit.norm_h0v == pytest.approx(audit.norm_hv, abs=1e-10)
        assert audit.norm_h0v == pytest.approx(audit.norm_h0h, abs=1e-10)

    def test_uncoupled_is_trivially_safe(self, cfg_small):
        audit = decomposition_audit(OscillatorSystem(1.0, 1.0, InteractionKind.NONE), cfg_small)
        assert audit.csl_safe
        assert audit.norm_h0v == 0.0


def test_safe_decomposition_implies_compliance(cfg_small):
    # the sufficiency direction: wherever the audit reports safe, every
    # scanned verdict is compliant
    preps = [HOT_A, HOT_A.swapped(), ThermalPreparation(0.5, 1.0)]
    for g in (0.05, 0.2, 0.45):
        sys_ = rwa_system(g=g)
        assert decomposition_audit(sys_, cfg_small).csl_safe
        for prep in preps:
            profile = scan_violations(sys_, prep, t_max=30.0, n_samples=300)
            assert profile.classification is Classification.NONE, (g, prep)

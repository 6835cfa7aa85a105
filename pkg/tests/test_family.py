"""Tests for family construction, the residual identity, and certification."""

from __future__ import annotations

import json

import pytest

from akforge.classify import AkCertificate
from akforge.errors import CertificationFailed, IdentityViolation, InvalidInput
from akforge.family import (
    CurveInstance,
    FamilyParams,
    build_A,
    build_F,
    certify_member,
    family_params,
    verify_eq2,
)
from akforge.poly import SparsePoly, parse_poly
from akforge.series import Weights


def test_family_params_values():
    assert family_params(0) == FamilyParams(0, 1, 2, 9, 42)
    assert family_params(1) == FamilyParams(1, 4, 9, 37, 731)
    assert family_params(2) == FamilyParams(2, 7, 16, 65, 2260)


def test_family_params_identities():
    for s in range(51):
        p = family_params(s)
        assert p.d == 4 * p.m + 1 == 7 * p.l + p.m == 28 * s + 9
        assert p.k + 1 == p.l * (20 * p.m + 3)


def test_family_params_rejects_bad_index():
    for bad in (-1, 1.5, "0"):
        with pytest.raises(InvalidInput):
            family_params(bad)


def test_build_A_s0_exact():
    expected = parse_poly("x^4 + 2*x^3*y^2 - 2*x^2*y^4 + 4*x*y^6 - 10*y^8")
    assert build_A(0) == expected


def test_build_A_structure():
    for s in (0, 1, 3, 7):
        A = build_A(s)
        p = family_params(s)
        assert len(A) == 5
        assert A.coefficient(4 * p.l, 0) == 1
        assert A.coefficient(0, 4 * p.m) == -10


def test_build_F_degree_and_sample_terms():
    inst = build_F(0)
    assert inst.F.total_degree == 9
    # the -2y * (-10 y^8) product contributes +20 y^9
    assert inst.F.coefficient(0, 9) == 20
    assert inst.F.coefficient(0, 2) == 1
    assert build_F(1).F.total_degree == 37


def test_verify_eq2_small_members():
    for s in range(3):
        inst = build_F(s)
        residual = verify_eq2(inst)
        p = inst.params
        coeffs = [
            residual.coefficient(3 * p.l, 5 * p.m),
            residual.coefficient(2 * p.l, 6 * p.m),
            residual.coefficient(p.l, 7 * p.m),
            residual.coefficient(0, 8 * p.m),
        ]
        assert coeffs == [56, -56, 80, -100]
        assert len(residual) == 4


def test_verify_eq2_s0_closed_form():
    residual = verify_eq2(build_F(0))
    assert residual == parse_poly("56*x^3*y^10 - 56*x^2*y^12 + 80*x*y^14 - 100*y^16")


def test_verify_eq2_detects_tampering():
    inst = build_F(0)
    bad = CurveInstance(
        params=inst.params, F=inst.F + SparsePoly.term(1, 1, 1), A=inst.A
    )
    with pytest.raises(IdentityViolation) as err:
        verify_eq2(bad)
    assert err.value.difference == SparsePoly.term(1, 1, 1)


def test_certify_member_s0():
    cert = certify_member(0)
    assert cert.certified
    assert cert.params.k == 42
    assert cert.weights == Weights(2, 43)
    assert cert.cutoff == 86
    assert cert.newton.coeff_z2 == 1
    assert cert.newton.coeff_xk1 == 56
    assert cert.newton.violations == ()
    assert cert.bound_upper == 52
    assert cert.milnor is None


def test_certify_member_s0_with_milnor():
    cert = certify_member(0, with_milnor=True)
    assert cert.milnor is not None
    assert cert.milnor.mu == 42
    assert cert.milnor.method == "truncated-local-algebra"
    assert cert.milnor.stabilized_at == 42


def test_certify_member_s1():
    cert = certify_member(1)
    assert cert.certified
    assert cert.params.k == 731
    assert cert.newton.coeff_xk1 == 56
    assert cert.newton.violations == ()
    assert cert.params.k <= cert.bound_upper == 990


def revalidate_from_json(payload: dict) -> bool:
    """Re-check the segment condition using only the serialized fields."""
    k = payload["newton_certificate"]["k"]
    wx, wz = payload["inversion"]["weights"]
    cutoff = payload["inversion"]["cutoff"]
    corner_ok = {"z2": False, "xk1": False}
    for term in payload["window_terms"]:
        i, j = term["e"]
        if (i, j) == (0, 2):
            corner_ok["z2"] = term["c"] not in ("0",)
        elif (i, j) == (k + 1, 0):
            corner_ok["xk1"] = term["c"] not in ("0",)
        elif wx * i + wz * j <= cutoff:
            return False
    return corner_ok["z2"] and corner_ok["xk1"]


def test_certificate_json_schema_and_offline_recheck():
    cert = certify_member(0, with_milnor=True)
    payload = cert.to_json_dict()
    assert payload["family"] == {"s": 0, "l": 1, "m": 2, "d": 9, "k": 42}
    assert payload["eq2_identity"] == "ok"
    assert payload["inversion"] == {"weights": [2, 43], "cutoff": 86}
    nc = payload["newton_certificate"]
    assert nc["k"] == 42
    assert nc["coeff_z2"] == "1"
    assert nc["coeff_x_k_plus_1"] == "56"
    assert nc["violations"] == []
    assert payload["milnor"]["value"] == 42
    assert payload["bound"] == {"d": 9, "upper": 52, "satisfied": True}
    assert revalidate_from_json(payload)


def test_certificate_json_deterministic():
    a = json.dumps(certify_member(1).to_json_dict(), sort_keys=True)
    b = json.dumps(certify_member(1).to_json_dict(), sort_keys=True)
    assert a == b


def test_certification_failure_carries_certificate(monkeypatch):
    import akforge.family as family_mod

    def reject(series, expected_k):
        return AkCertificate(
            k=expected_k,
            coeff_z2=1,
            coeff_xk1=0,
            weights=series.weights,
            cutoff=series.cutoff,
        )

    monkeypatch.setattr(family_mod, "newton_ak_certify", reject)
    with pytest.raises(CertificationFailed) as err:
        certify_member(0)
    assert err.value.certificate is not None
    assert not err.value.certificate.certified

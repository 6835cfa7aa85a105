"""Tests for the two Milnor-number oracles."""

from __future__ import annotations

import random

import pytest

import akforge.milnor as milnor_mod
from akforge.errors import (
    GenericityFailure,
    InvalidInput,
    NonIsolated,
    NonIsolatedSuspected,
    PreconditionViolated,
)
from akforge.milnor import (
    MilnorReport,
    milnor_number,
    milnor_resultant,
    milnor_truncated,
)
from akforge.poly import SparsePoly, parse_poly


def member_s0() -> SparsePoly:
    A = parse_poly("x^4 + 2*x^3*y^2 - 2*x^2*y^4 + 4*x*y^6 - 10*y^8")
    return parse_poly("y^2 + x^8 + 4*x^7*y^2") - parse_poly("2*y") * A


def test_truncated_dimension_basics():
    assert milnor_truncated(parse_poly("x^2 + y^2"), 3) == 1
    assert milnor_truncated(parse_poly("y^2 + x^6"), 8) == 5
    with pytest.raises(InvalidInput):
        milnor_truncated(parse_poly("x^2"), 0)
    with pytest.raises(PreconditionViolated):
        milnor_truncated(parse_poly("1 + x^2"), 4)


def test_truncated_dimension_never_stabilizes_for_nonisolated():
    for M in (3, 5, 9):
        assert milnor_truncated(parse_poly("x^2"), M) == M


def test_milnor_number_small_cases():
    assert milnor_number(parse_poly("x^2 + y^2")).mu == 1
    r = milnor_number(parse_poly("x^3 + y^3"))
    assert (r.mu, r.method, r.arithmetic) == (4, "truncated-local-algebra", "exact")
    # smooth germ
    assert milnor_number(parse_poly("x + y^2")).mu == 0
    # quasihomogeneous check: mu(x^a + y^b) = (a-1)(b-1)
    for a, b in ((2, 5), (3, 4), (4, 4)):
        f = parse_poly(f"x^{a} + y^{b}")
        assert milnor_number(f).mu == (a - 1) * (b - 1)


def test_milnor_number_chain_family():
    for k in range(1, 21):
        f = parse_poly(f"y^2 + x^{k + 1}")
        assert milnor_number(f, expected=k).mu == k
        assert milnor_resultant(f).mu == k


def test_milnor_number_rational_coefficients():
    assert milnor_number(parse_poly("1/2*x^2 + 1/5*y^3")).mu == 2


def test_milnor_number_cap_behavior():
    with pytest.raises(NonIsolatedSuspected):
        milnor_number(parse_poly("x^2"), 40)
    with pytest.raises(NonIsolatedSuspected):
        # isolated, but the cap is too small to see stabilization
        milnor_number(parse_poly("y^2 + x^6"), 3)
    with pytest.raises(InvalidInput):
        milnor_number(parse_poly("x^2 + y^2"), 0)


def test_member_s0_both_oracles_give_42():
    F = member_s0()
    rt = milnor_number(F, expected=42)
    rr = milnor_resultant(F)
    assert rt.mu == 42 and rr.mu == 42
    assert rt.arithmetic == "exact" and rr.arithmetic == "exact"
    assert rr.stabilized_at == 42


def test_member_s1_modular_resultant():
    A1 = parse_poly("x^16 + 2*x^12*y^9 - 2*x^8*y^18 + 4*x^4*y^27 - 10*y^36")
    F1 = parse_poly("y^2 + x^32 + 4*x^28*y^9") - parse_poly("2*y") * A1
    r = milnor_resultant(F1, arithmetic="modular")
    assert r.mu == 731
    assert r.method == "resultant"
    assert r.arithmetic.startswith("two-prime-modular(")


def test_modular_truncated_matches_exact():
    rng = random.Random(606)
    for _ in range(10):
        a = rng.randrange(2, 5)
        b = rng.randrange(2, 5)
        c = rng.randrange(-3, 4)
        f = parse_poly(f"x^{a} + y^{b}") + SparsePoly({(1, 1): c})
        exact = milnor_number(f)
        modular = milnor_number(f, arithmetic="modular")
        assert modular.mu == exact.mu
        assert modular.arithmetic.startswith("two-prime-modular(") or (
            modular.arithmetic == "exact"
        )


def test_prime_seed_shows_up_in_report(monkeypatch):
    from akforge._modp import primes_from_seed

    monkeypatch.setenv("AKFORGE_PRIME_SEED", "31415")
    p1, p2 = primes_from_seed(2, seed=31415)
    r = milnor_number(parse_poly("x^2 + y^3"), arithmetic="modular")
    assert r.arithmetic == f"two-prime-modular({p1},{p2})"


def test_resultant_examples():
    assert milnor_resultant(parse_poly("x^2 + y^2")).mu == 1
    assert milnor_resultant(parse_poly("y^2 + x^6")).mu == 5
    assert milnor_resultant(parse_poly("x + y^2")).mu == 0
    r = milnor_resultant(parse_poly("x^2 + y^2"), arithmetic="modular")
    assert r.mu == 1


def test_resultant_nonisolated_detection():
    with pytest.raises(NonIsolated):
        milnor_resultant(parse_poly("y^2"))  # critical line y = 0
    with pytest.raises(NonIsolated):
        milnor_resultant(parse_poly("x^2*y^2"))  # both axes critical
    with pytest.raises(NonIsolated):
        milnor_resultant(SparsePoly.constant(3))  # zero gradient
    with pytest.raises(NonIsolated):
        milnor_resultant(parse_poly("(x + y)^3"))  # shared factor in partials


def test_resultant_retries_shear_and_succeeds():
    # Critical points at (0, 0), (0, 1/2), (0, 1) spoil the identity shear;
    # the first seeded shear moves the extra ones off the line x = 0.
    f = parse_poly("x^2 + y^2*(y - 1)^2")
    r = milnor_resultant(f)
    assert r.mu == 1


def test_resultant_genericity_failure(monkeypatch):
    monkeypatch.setattr(milnor_mod, "_shear_values", lambda seed: [0])
    with pytest.raises(GenericityFailure):
        milnor_resultant(parse_poly("x^2 + y^2*(y - 1)^2"))


def test_resultant_shear_seed_determinism():
    f = parse_poly("x^2 + y^2*(y - 1)^2")
    assert milnor_resultant(f, shear_seed=5) == milnor_resultant(f, shear_seed=5)


def test_unknown_arithmetic_rejected():
    with pytest.raises(InvalidInput):
        milnor_resultant(parse_poly("x^2 + y^2"), arithmetic="float")
    with pytest.raises(InvalidInput):
        milnor_truncated(parse_poly("x^2 + y^2"), 3, arithmetic="float")


def test_oracle_agreement_randomized():
    # Random perturbations of y^2 + x^(k+1) by higher-weight terms keep the
    # singularity type; both oracles must agree on mu = k.
    rng = random.Random(4242)
    for _ in range(25):
        k = rng.randrange(1, 9)
        f = parse_poly(f"y^2 + x^{k + 1}")
        # add terms strictly above the Newton segment
        for _ in range(rng.randrange(3)):
            i = rng.randrange(0, 8)
            j = rng.randrange(0, 4)
            if 2 * i + (k + 1) * j > 2 * (k + 1):
                f = f + SparsePoly({(i, j): rng.randrange(-4, 5)})
        a = milnor_number(f, expected=k).mu
        b = milnor_resultant(f).mu
        assert a == b == k, (f, a, b)


def test_report_shape():
    r = milnor_number(parse_poly("x^2 + y^2"))
    assert isinstance(r, MilnorReport)
    assert r.stabilized_at >= 1
    assert r.mu >= 0


def test_modular_dense_size_guard(monkeypatch):
    import akforge.milnor as milnor_mod

    monkeypatch.setattr(milnor_mod, "_DENSE_ENTRY_LIMIT", 10)
    report = milnor_number(parse_poly("y^2 + x^6"), arithmetic="modular")
    assert report.mu == 5 and report.arithmetic == "exact"

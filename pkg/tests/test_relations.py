"""Exchange-relation catalog and the level-1 kernel verification."""

from fractions import Fraction as Fr

import mpmath as mp
import pytest

from ospboson.errors import DomainError, PoleError, StructuralError
from ospboson.freefield import DeformationParams
from ospboson.relations import (
    DISPLAY_AUDIT,
    EE_MIXED,
    FF_MIXED,
    eval_structure_function,
    inverse_structure_function,
    relation_catalog,
    structure_function_repr,
    swapped_relation,
    verify_ef,
    verify_exchange,
    verify_invertibility,
)
from ospboson.scalars import sample_parameters

P = DeformationParams.from_sqrt(Fr(2, 5), Fr(1, 2))  # q = 2/5, p = 1/4
DIGITS = 50


def by_id(rels):
    return {r.rel_id: r for r in rels}


def test_catalog_completeness():
    for mode in ("canonical", "strict-text"):
        rels = relation_catalog(mode=mode)
        assert len(rels) == 10
        ids = [r.rel_id for r in rels]
        assert len(set(ids)) == 10
        kinds = [r.kind for r in rels]
        assert kinds.count("exchange") == 8
        assert kinds.count("anticommutator-delta") == 1
        assert kinds.count("invertibility") == 1
        # each unordered current pair governed by exactly one schema
        pairs = sorted(tuple(sorted(r.left)) for r in rels if r.kind == "exchange")
        assert pairs == sorted([
            ("E", "H+"), ("E", "H-"), ("F", "H+"), ("F", "H-"),
            ("H+", "H+"), ("H+", "H-"), ("E", "E"), ("F", "F")])


def test_catalog_invalid_mode():
    with pytest.raises(StructuralError):
        relation_catalog(mode="loose")


def test_factor_counts_balanced():
    for r in relation_catalog():
        if r.kind != "exchange":
            continue
        sf = r.structure_function
        num = [f for f in sf.factors if f.power == 1]
        assert len(num) * 2 == len(sf.factors)
        assert len(sf.factors) in (4, 8)


def test_ee_golden_value():
    # frozen from two independent runs at 50 and 70 digits
    rels = by_id(relation_catalog())
    with mp.workdps(60):
        v = eval_structure_function(
            rels["EE"].structure_function, mp.mpc("0.3", "0.1"),
            mp.mpf("0.4"), mp.mpf("0.5"), 1, DIGITS)
        ref = mp.mpc(
            "0.16442895360523056265674157896994931355611473",
            "0.0389497870798544890175764540518703755133117765")
        assert abs(v - ref) < mp.mpf(10) ** -40


def test_structure_functions_collapse_at_p_one():
    # at p = 1 all theta arguments coincide pairwise, leaving the sign
    with mp.workdps(40):
        x = mp.mpc("0.3", "0.2")
        for r in relation_catalog():
            if r.kind != "exchange":
                continue
            v = eval_structure_function(
                r.structure_function, x, mp.mpf("0.4"), mp.mpf(1), 1, 30)
            assert abs(v - r.structure_function.sign) < mp.mpf(10) ** -25


def test_hphm_collapses_to_hh_at_c_zero():
    rels = by_id(relation_catalog())
    with mp.workdps(40):
        x = mp.mpc("0.43", "-0.21")
        q, p = mp.mpf("0.37"), mp.mpf("0.29")
        a = eval_structure_function(rels["H+H-"].structure_function, x, q, p, 0, 30)
        b = eval_structure_function(rels["HH"].structure_function, x, q, p, 0, 30)
        assert abs(a - b) < mp.mpf(10) ** -25


@pytest.mark.parametrize("mixed,rel_id", [(EE_MIXED, "EE"), (FF_MIXED, "FF")])
def test_mixed_orientation_displays_agree(mixed, rel_id):
    # the two printed forms are related by theta quasi-periodicity; checked
    # numerically rather than trusting either display
    import random
    rels = by_id(relation_catalog())
    rng = random.Random(("duality", rel_id).__repr__())
    with mp.workdps(50):
        q, p = mp.mpf("0.4"), mp.mpf("0.25")
        for _ in range(25):
            r = 0.15 + 0.7 * rng.random()
            x = r * mp.e ** (2j * mp.pi * rng.random())
            a = eval_structure_function(mixed, x, q, p, 1, 40)
            b = eval_structure_function(
                rels[rel_id].structure_function, x, q, p, 1, 40)
            assert abs(a - b) / abs(b) < mp.mpf(10) ** -30


def test_display_audit_hh_constant():
    # the printed mixed-orientation HH display is p^-1 times the canonical
    # structure function (quasi-periodicity of the two inverted factors)
    can = by_id(relation_catalog(mode="canonical"))
    strict = by_id(relation_catalog(mode="strict-text"))
    assert DISPLAY_AUDIT["HH"] == ("constant", -1)
    with mp.workdps(50):
        q, p = mp.mpf("0.4"), mp.mpf("0.25")
        for re_, im_ in (("0.31", "0.17"), ("-0.22", "0.41")):
            x = mp.mpc(re_, im_)
            a = eval_structure_function(strict["HH"].structure_function, x, q, p, 1, 40)
            b = eval_structure_function(can["HH"].structure_function, x, q, p, 1, 40)
            assert abs(a / b - p ** -1) < mp.mpf(10) ** -30


def test_display_audit_hphm_inequivalent():
    # the printed H+H- display differs from the canonical function by a
    # non-constant factor, so no prefactor convention can reconcile them
    can = by_id(relation_catalog(mode="canonical"))
    strict = by_id(relation_catalog(mode="strict-text"))
    assert DISPLAY_AUDIT["H+H-"] == "inequivalent"
    with mp.workdps(50):
        q, p = mp.mpf("0.4"), mp.mpf("0.25")
        ratios = []
        for re_, im_ in (("0.31", "0.17"), ("-0.22", "0.41")):
            x = mp.mpc(re_, im_)
            a = eval_structure_function(strict["H+H-"].structure_function, x, q, p, 1, 40)
            b = eval_structure_function(can["H+H-"].structure_function, x, q, p, 1, 40)
            ratios.append(a / b)
        assert abs(ratios[0] - ratios[1]) > mp.mpf(10) ** -6


def test_pole_error_carries_factor():
    rels = by_id(relation_catalog())
    with mp.workdps(40):
        q, p = mp.mpf("0.4"), mp.mpf("0.25")
        x = q * q / (p * p)  # zero of the denominator factor theta(x p^2)
        with pytest.raises(PoleError) as exc:
            eval_structure_function(rels["EE"].structure_function, x, q, p, 1, 30)
        assert exc.value.factor is not None


def test_structure_function_repr_readable():
    rels = by_id(relation_catalog())
    s = structure_function_repr(rels["H+E"].structure_function)
    assert "theta_q2" in s and "c" in s and "/" in s


@pytest.mark.parametrize("rel_id", ["EE", "FF", "H+E", "H-E", "H+F", "H-F",
                                    "HH", "H+H-"])
def test_exchange_relations_hold(rel_id):
    rels = by_id(relation_catalog())
    rep = verify_exchange(rels[rel_id], P, samples=8, digits=DIGITS, seed=3)
    assert rep["verdict"] == "pass", rep
    assert mp.mpf(rep["residual_max"]) <= mp.mpf(10) ** -20
    assert rep["fields_match"]


def test_hh_schema_covers_hminus_pair():
    rels = by_id(relation_catalog())
    hh = rels["HH"]
    hmhm = type(hh)("HH", "exchange", ("H-", "H-"), ("H-", "H-"),
                    hh.structure_function, hh.mode, hh.notes)
    rep = verify_exchange(hmhm, P, samples=6, digits=DIGITS, seed=5)
    assert rep["verdict"] == "pass"


def test_negative_control_unit_structure():
    rels = by_id(relation_catalog())
    rep = verify_exchange(rels["EE"], P, samples=6, digits=DIGITS, seed=3,
                          unit_structure=True)
    assert rep["verdict"] == "fail"
    assert mp.mpf(rep["residual_max"]) > mp.mpf(10) ** -2


def test_strict_text_hf_fails_and_canonical_passes():
    # the printed H+-F displays carry p^(-+c/2) where the realization
    # kernels require p^(+-c/2); strict-text mode preserves the print and
    # is expected to fail the kernel check
    strict = by_id(relation_catalog(mode="strict-text"))
    for rel_id in ("H+F", "H-F"):
        rep = verify_exchange(strict[rel_id], P, samples=6, digits=DIGITS, seed=3)
        assert rep["verdict"] == "fail"
        assert mp.mpf(rep["residual_max"]) > mp.mpf(10) ** -2


def test_strict_text_hme_records_field_mismatch():
    strict = by_id(relation_catalog(mode="strict-text"))
    rep = verify_exchange(strict["H-E"], P, samples=6, digits=DIGITS, seed=3)
    assert not rep["fields_match"]
    assert rep["verdict"] == "fail"
    assert "H+" in rep["notes"]


def test_verification_symmetry():
    # verifying (A,B) with S and (B,A) with 1/S(1/x) must agree
    rels = by_id(relation_catalog())
    for rel_id in ("EE", "H+E", "H+H-"):
        fwd = verify_exchange(rels[rel_id], P, samples=5, digits=DIGITS, seed=9)
        bwd = verify_exchange(swapped_relation(rels[rel_id]), P, samples=5,
                              digits=DIGITS, seed=9)
        assert fwd["verdict"] == bwd["verdict"] == "pass"


def test_residuals_shrink_with_precision():
    rels = by_id(relation_catalog())
    r50 = verify_exchange(rels["EE"], P, samples=5, digits=50, seed=11)
    r80 = verify_exchange(rels["EE"], P, samples=5, digits=80,
                          tolerance=mp.mpf(10) ** -40, seed=11)
    assert mp.mpf(r80["residual_max"]) < mp.mpf(r50["residual_max"])


def test_tolerance_floor_enforced():
    rels = by_id(relation_catalog())
    with pytest.raises(DomainError):
        verify_exchange(rels["EE"], P, samples=2, digits=20,
                        tolerance=mp.mpf(10) ** -20)


def test_ef_exact():
    for q, p, r in sample_parameters(13, count=3):
        rep = verify_ef(DeformationParams(q, p, r))
        assert rep["verdict"] == "pass", rep
        assert all(rep["checks"].values())
        assert rep["exact"]


def test_ef_coefficients_at_p_one_limit():
    # the displayed coefficient (p^(1/2)+p^(-1/2))^-1 tends to 1/2
    assert 1 / (Fr(1) + Fr(1)) == Fr(1, 2)
    r = Fr(99, 100)
    val = 1 / (r + 1 / r)
    assert abs(val - Fr(1, 2)) < Fr(1, 1000)


def test_invertibility_flag():
    rep = verify_invertibility(P)
    assert rep["verdict"] == "pass"

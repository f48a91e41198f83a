"""Independence certificates: generation, serialization, verification."""

import copy
import json
from fractions import Fraction

import pytest

import knotcert as kc
import knotcert.certify as certify
import knotcert.obstruction as obstruction


def family(*ms):
    base = kc.mirror(kc.torus(2, 3))
    return tuple(kc.multiple(m, base) for m in ms)


def small_cert(**kw):
    args = dict(budget=2, mode="exhaustive")
    args.update(kw)
    return kc.certify_independence(
        kc.whitehead_cover(1, 1), kc.CGProfile.zero(), family(1, 5), **args
    )


# ---------------------------------------------------------------------------
# generation

def test_ordering_mode_has_no_combos():
    cert = kc.certify_independence(
        kc.whitehead_cover(1, 1), kc.CGProfile.zero(), family(1, 5)
    )
    assert cert.mode == "ordering"
    assert cert.combos == ()
    assert cert.ordering.holds
    assert cert.selection.indices == (0, 1)


def test_exhaustive_mode_sweeps_signed_combinations():
    cert = small_cert()
    # count 2, budget 2: 4 singles, 4 doubled singles, 4 mixed pairs
    assert len(cert.combos) == 12
    coeff_sets = [c.coefficients for c in cert.combos]
    assert len(set(coeff_sets)) == 12
    assert all(sum(map(abs, cs)) <= 2 for cs in coeff_sets)
    # deterministic order: sorted by (total multiplicity, coefficients)
    totals = [sum(map(abs, cs)) for cs in coeff_sets]
    assert totals == sorted(totals)
    for combo in cert.combos:
        assert combo.reason in ("parity", "witnessed")
        if combo.reason == "witnessed":
            assert combo.witnesses


def test_boundary_growth_still_certifies():
    # subset sums collide at 3*v1 = v2, but candidate metabolizers have
    # order 3^(total/2) and every such subgroup meets a coordinate
    # hyperplane, so a witness always exists
    cert = kc.certify_independence(
        kc.whitehead_cover(1, 1), kc.CGProfile.zero(), family(1, 3),
        budget=4, mode="exhaustive",
    )
    assert all(c.reason in ("parity", "witnessed") for c in cert.combos)


def test_per_side_cap_filters_combinations():
    cert = small_cert(budget=4, per_side_cap=1)
    coeff_sets = {c.coefficients for c in cert.combos}
    assert coeff_sets == {
        (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1),
    }
    assert cert.per_side_cap == 1


# ---------------------------------------------------------------------------
# hypothesis validation

def test_validation_rejects_bad_inputs():
    cover = kc.whitehead_cover(1, 1)
    prof = kc.CGProfile.zero()
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(cover, prof, ())
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(cover, prof, family(1), mode="telepathy")
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(cover, prof, family(1), budget=0)


def test_validation_rejects_degenerate_patterns():
    prof = kc.CGProfile.zero()
    lam = ((Fraction(1, 3),),)
    trivial = kc.PatternCover(kc.FiniteAbelianGroup(()), (), (), 0, ())
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(trivial, prof, family(1))
    noncyclic = kc.PatternCover(
        kc.FiniteAbelianGroup((3, 3)), (1, 0), (1, 0), 0,
        ((Fraction(1, 3), Fraction(0)), (Fraction(0), Fraction(1, 3))),
    )
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(noncyclic, prof, family(1))
    nongen = kc.PatternCover(
        kc.FiniteAbelianGroup((9,)), (3,), (3,), 0, ((Fraction(1, 9),),)
    )
    with pytest.raises(kc.HypothesisViolation):
        kc.certify_independence(nongen, prof, family(1))
    with pytest.raises(kc.HypothesisViolation):
        # rejected at construction already
        kc.PatternCover(kc.FiniteAbelianGroup((3,)), (1,), (1,), 1, lam)


def test_ordering_failure_is_reported():
    with pytest.raises(kc.HypothesisViolation) as exc:
        kc.certify_independence(
            kc.whitehead_cover(1, 1), kc.CGProfile.zero(), family(1, 1)
        )
    assert "ordering" in str(exc.value)


def test_empty_selection_raises():
    with pytest.raises(kc.EmptySelectionError):
        kc.certify_independence(
            kc.whitehead_cover(1, 1), kc.CGProfile.zero(), (kc.unknot(),)
        )
    with pytest.raises(kc.EmptySelectionError):
        # negative CG values only
        kc.certify_independence(
            kc.whitehead_cover(1, 1), kc.CGProfile.zero(), (kc.torus(2, 3),)
        )


def test_inconclusive_combination_raises(monkeypatch):
    # the committed selection criterion provably leaves no vanishing
    # subgroup, so the handler is exercised with a stubbed search
    def stub(inst, **kw):
        return kc.SliceObstructionResult(
            False, "vanishing-subgroup", inst.p, inst.k, inst.total, 0,
            failed_subgroup=((1, 1),),
        )

    monkeypatch.setattr(certify, "check_slice_obstruction", stub)
    with pytest.raises(kc.CertificationInconclusive) as exc:
        small_cert()
    assert "vanishing-subgroup" in str(exc.value) or "subgroup" in str(exc.value)


# ---------------------------------------------------------------------------
# serialization and round trips

def test_json_round_trip_verifies():
    cert = small_cert()
    data = json.loads(cert.to_json())
    ok, problems = kc.verify_certificate(data)
    assert ok, problems
    assert problems == []


def test_json_is_deterministic():
    assert small_cert().to_json() == small_cert().to_json()


def test_json_carries_conventions_and_version():
    d = small_cert().to_json_dict()
    assert d["version"] == kc.__version__
    assert d["conventions"] == kc.CONVENTIONS
    assert d["prime"] == 3 and d["exponent"] == 1
    assert d["family"] == ["1*mirror(torus(2,3))", "5*mirror(torus(2,3))"]


def test_witness_cap_replaces_lists_with_digests():
    capped = small_cert(witness_cap=2).to_json_dict()
    full = small_cert(witness_cap=None).to_json_dict()
    digested = [c for c in capped["combos"] if "witness_digest" in c]
    assert digested, "4-subgroup combos exceed a cap of 2"
    by_coeffs = {tuple(c["coefficients"]): c for c in full["combos"]}
    for combo in digested:
        assert "witnesses" not in combo
        twin = by_coeffs[tuple(combo["coefficients"])]
        assert combo["witness_count"] == twin["subgroup_count"]
        assert combo["witness_digest"] == obstruction.witness_list_digest(
            twin["witnesses"]
        )
    ok, problems = kc.verify_certificate(capped)
    assert ok, problems


# ---------------------------------------------------------------------------
# tamper detection

def tampered(mutate):
    data = json.loads(small_cert().to_json())
    mutate(data)
    return kc.verify_certificate(data)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(version=2),
        lambda d: d.update(budget=3),
        lambda d: d.update(per_side_cap=1),
        lambda d: d["family"].append("torus(2,3)"),
        lambda d: d["conventions"].update(signature="flipped"),
        lambda d: d["ordering"].update(holds=False),
        lambda d: d["combos"][0].update(reason="witnessed"),
        lambda d: d["combos"].pop(),
        lambda d: d["selection"]["indices"].pop(),
    ],
    ids=[
        "version", "budget", "per_side_cap", "family", "conventions",
        "ordering", "combo-reason", "combo-missing", "selection",
    ],
)
def test_any_field_tamper_is_caught(mutate):
    ok, problems = tampered(mutate)
    assert not ok
    assert problems


def test_witness_value_tamper_is_caught():
    def mutate(d):
        for combo in d["combos"]:
            if combo.get("witnesses"):
                combo["witnesses"][0]["value"] = "2"
                return
        raise AssertionError("expected an inline witness")

    ok, problems = tampered(mutate)
    assert not ok
    # both routes complain: recomputation diff and direct replay
    assert any("witness" in p or "combo" in p for p in problems)


def test_witness_digest_tamper_is_caught():
    data = json.loads(small_cert(witness_cap=2).to_json())
    for combo in data["combos"]:
        if "witness_digest" in combo:
            combo["witness_digest"] = "0" * 64
            break
    ok, problems = kc.verify_certificate(data)
    assert not ok
    assert problems


def test_verify_rejects_malformed_documents():
    ok, problems = kc.verify_certificate({"certificate": "bogus"})
    assert not ok
    assert problems

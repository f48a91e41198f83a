"""Subgroup enumeration in homocyclic p-groups, checked by brute force."""

from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

import knotcert as kc
from oracles import brute_force_subgroups


def element_set(sub):
    return frozenset(sub.elements())


# ---------------------------------------------------------------------------
# Howell canonical form

@given(
    st.sampled_from([(2, 9), (2, 4), (3, 3), (3, 8), (2, 27)]),
    st.data(),
)
def test_howell_form_is_canonical_for_the_span(shape, data):
    n, modulus = shape
    rows = data.draw(
        st.lists(
            st.tuples(*[st.integers(0, modulus - 1)] * n),
            min_size=1,
            max_size=3,
        )
    )
    h = kc.howell_form(tuple(rows), n, modulus)

    def span(gen_rows):
        out = {(0,) * n}
        frontier = list(out)
        while frontier:
            v = frontier.pop()
            for g in gen_rows:
                w = tuple((a + b) % modulus for a, b in zip(v, g))
                if w not in out:
                    out.add(w)
                    frontier.append(w)
        return frozenset(out)

    # same row span
    assert span(h) == span(rows)
    # canonical: recomputing from the form, or from any reordering of the
    # original rows, gives the same generators
    assert kc.howell_form(h, n, modulus) == h
    assert kc.howell_form(tuple(reversed(rows)), n, modulus) == h


# ---------------------------------------------------------------------------
# Subgroup objects

def test_subgroup_elements_consistency():
    for factors, order in (((3, 3), 3), ((9, 9), 9), ((2, 2, 2, 2), 4)):
        for sub in kc.enumerate_subgroups(factors, order):
            els = sub.elements()
            assert len(els) == order == sub.order
            assert len(set(els)) == order
            q = factors[0]
            for a in els:
                assert sub.contains(a)
                for b in els:
                    s = tuple((x + y) % q for x, y in zip(a, b))
                    assert s in set(els)
            # nothing outside the listed elements is claimed
            outside = [
                g
                for g in product(*[range(f) for f in factors])
                if g not in set(els)
            ]
            for g in outside[:5]:
                assert not sub.contains(g)


# ---------------------------------------------------------------------------
# enumeration against the brute-force lattice

@pytest.mark.parametrize(
    "factors,order",
    [
        ((3, 3), 1),
        ((3, 3), 3),
        ((3, 3), 9),
        ((2, 2, 2, 2), 4),
        ((9, 9), 3),
        ((9, 9), 9),
        ((9, 9), 27),
        ((3, 3, 3), 9),
        ((4, 4), 4),
    ],
)
def test_enumeration_matches_brute_force(factors, order):
    ours = {element_set(s) for s in kc.enumerate_subgroups(factors, order)}
    brute = brute_force_subgroups(factors, order)
    assert ours == brute
    # and no subgroup is listed twice
    assert len(kc.enumerate_subgroups(factors, order)) == len(ours)


def test_enumeration_is_deterministic():
    a = kc.enumerate_subgroups((3, 3, 3), 9)
    b = kc.enumerate_subgroups((3, 3, 3), 9)
    assert [s.gens for s in a] == [s.gens for s in b]


def test_enumeration_validates_inputs():
    with pytest.raises(kc.HypothesisViolation):
        kc.enumerate_subgroups((3, 3), 5)
    with pytest.raises(kc.HypothesisViolation):
        kc.enumerate_subgroups((3, 6), 3)
    with pytest.raises(kc.HypothesisViolation):
        kc.enumerate_subgroups((3, 3), 27)  # exceeds the group order


# ---------------------------------------------------------------------------
# projection bookkeeping used by the satellite obstruction

def split_projections(sub, half):
    els = sub.elements()
    proj_a = {e[:half] for e in els}
    meets_b = any(
        all(x == 0 for x in e[:half]) and any(x != 0 for x in e[half:])
        for e in els
    )
    meets_a = any(
        all(x == 0 for x in e[half:]) and any(x != 0 for x in e[:half])
        for e in els
    )
    return proj_a, meets_a, meets_b


@pytest.mark.parametrize(
    "q,n_total,order",
    [(3, 2, 3), (3, 4, 9), (9, 2, 9), (2, 4, 4)],
)
def test_trivial_intersection_makes_projection_injective(q, n_total, order):
    # M meet (0 + B) = 0 implies |proj_A M| = |M|; when both side
    # intersections vanish the projections to either side are injective
    half = n_total // 2
    for sub in kc.enumerate_subgroups((q,) * n_total, order):
        els = sub.elements()
        proj_a, meets_a, meets_b = split_projections(sub, half)
        if not meets_b:
            assert len(proj_a) == len(els), sub
        if not meets_a and not meets_b:
            proj_b = {e[half:] for e in els}
            assert len(proj_a) == len(els) == len(proj_b), sub

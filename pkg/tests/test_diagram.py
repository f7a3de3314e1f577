import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from ounumber.diagram import (
    Arc,
    LinkDiagram,
    crossing_sign,
    linking_number,
    non_self_ou,
    non_self_ou_from,
    ou_number,
    ou_vector,
    permute_components,
    reverse_component,
    total_linking,
    trace_component,
    writhe,
)
from ounumber.errors import BadComponent, SameComponent, ValidationError
from ounumber.generators import (
    braid_closure,
    fixture,
    parse_braid,
    random_closure,
    trivial_diagram,
)
from ounumber.ousequence import CyclicOUSequence, OUSequence, count_letters

C = CyclicOUSequence


@pytest.fixture
def hopf():
    return braid_closure(parse_braid("s1 s1"))


def closures(max_crossings=10, max_components=4):
    return st.builds(
        lambda seed: random_closure(random.Random(seed), max_crossings, max_components),
        st.integers(0, 2**32),
    )


def all_fixture_diagrams():
    out = [fixture(n) for n in ("F2_left", "F2_right", "F4", "F5")]
    out += list(fixture("CESS_pair"))
    return out


def test_hopf_shape(hopf):
    assert hopf.r == 2
    assert len(hopf.arcs) == 4
    assert len(hopf.faces) == 4  # V - E + F = 2 - 4 + 4
    assert [crossing_sign(hopf, c) for c in hopf.crossings] == [1, 1]
    assert writhe(hopf) == 2
    assert linking_number(hopf, 1, 2) == 1
    assert linking_number(hopf, 2, 1) == 1


def test_mirror_hopf_has_negative_linking():
    d = braid_closure(parse_braid("s1^-2"))
    assert linking_number(d, 1, 2) == -1
    assert ou_vector(d) == (1, 1)


def test_trace_skips_self_crossings():
    d = fixture("F2_left")
    tr = trace_component(d, 2)
    assert len(tr.encounters) == 6  # 4 non-self visits + the self crossing twice
    assert sum(e.self_crossing for e in tr.encounters) == 2
    assert C(OUSequence(tr.non_self_letters())) == C("OOUU")


def test_non_self_ou_fixture_values():
    assert non_self_ou(fixture("F2_left"), 1) == C("OUOU")
    assert non_self_ou(fixture("F2_left"), 2) == C("OOUU")
    assert ou_vector(fixture("F2_left")) == (2, 0)
    assert ou_vector(fixture("F5")) == (0, 2, 0)
    assert non_self_ou(fixture("F5"), 3) == C("UUUU")


def test_loop_component_has_empty_word():
    d = trivial_diagram(2)
    assert len(non_self_ou(d, 1)) == 0
    assert ou_number(d, 2) == 0


def test_bad_component(hopf):
    for i in (0, 3):
        with pytest.raises(BadComponent):
            non_self_ou(hopf, i)
        with pytest.raises(BadComponent):
            reverse_component(hopf, i)


def test_linking_same_component(hopf):
    with pytest.raises(SameComponent):
        linking_number(hopf, 1, 1)


def test_word_from_any_start_is_a_rotation():
    d = fixture("F5")
    for a in d.arcs:
        w = non_self_ou_from(d, a.id)
        assert C(w) == non_self_ou(d, a.component)


@pytest.mark.parametrize("d", all_fixture_diagrams())
def test_reversal_keeps_phi(d):
    for i in range(1, d.r + 1):
        rev = reverse_component(d, i)
        assert ou_vector(rev) == ou_vector(d)
        w = non_self_ou(d, i).representative
        assert non_self_ou(rev, i) == C(OUSequence(w.letters[::-1]))
        assert reverse_component(rev, i) == d


def test_reversal_flips_linking_sign():
    d = fixture("CESS_pair")[0]
    assert linking_number(reverse_component(d, 1), 1, 2) == -2


def test_permute_components():
    d = fixture("F5")
    p = permute_components(d, [3, 1, 2])
    assert ou_vector(p) == (0, 0, 2)
    assert non_self_ou(p, 1) == C("UUUU")
    with pytest.raises(BadComponent):
        permute_components(d, [1, 1, 2])


def test_lemma_on_fixtures():
    for d in all_fixture_diagrams():
        for i in range(1, d.r + 1):
            n_o, n_u = count_letters(non_self_ou(d, i))
            lk = total_linking(d, i)
            assert abs(lk) <= min(n_o, n_u)
            assert (lk - n_o) % 2 == 0


def test_cess_linking_number():
    assert linking_number(fixture("CESS_pair")[0], 1, 2) == 2


# -- validation -----------------------------------------------------------------


def test_rejects_duplicate_crossing(hopf):
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, list(hopf.crossings) + [hopf.crossings[0]], hopf.arcs)


def test_rejects_bad_over_axis(hopf):
    cs = [replace(hopf.crossings[0], over=2), hopf.crossings[1]]
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, cs, hopf.arcs)


def test_rejects_dangling_slot(hopf):
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, hopf.crossings, hopf.arcs[1:])


def test_rejects_half_open_arc():
    with pytest.raises(ValidationError):
        LinkDiagram.build(1, [], [Arc(1, 1, None, (1, 0))])


def test_rejects_unused_component():
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, [], [Arc(1, 1, None, None)])


def test_rejects_strand_not_oriented_through(hopf):
    a = hopf.arcs[0]
    arcs = [replace(a, tail=a.head, head=a.tail)] + list(hopf.arcs[1:])
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, hopf.crossings, arcs)


def test_rejects_component_change_along_strand(hopf):
    a = hopf.arcs[0]
    arcs = [replace(a, component=3 - a.component)] + list(hopf.arcs[1:])
    with pytest.raises(ValidationError):
        LinkDiagram.build(2, hopf.crossings, arcs)


def test_rejects_non_planar_rotation():
    # swapping two adjacent slots of one crossing breaks planarity
    d = braid_closure(parse_braid("s1 s1 s1"))
    c = d.crossings[0].id

    def swap(e):
        if e is None or e[0] != c or e[1] not in (1, 2):
            return e
        return (c, 3 - e[1])

    arcs = [replace(a, tail=swap(a.tail), head=swap(a.head)) for a in d.arcs]
    with pytest.raises(ValidationError):
        LinkDiagram.build(d.r, d.crossings, arcs)


@settings(max_examples=150, deadline=None)
@given(closures())
def test_generated_diagrams_are_consistent(d):
    d.validate()
    # every non-self word has even length and every corner is on one face
    for i in range(1, d.r + 1):
        assert len(non_self_ou(d, i)) % 2 == 0
    assert len(d.face_of_corner) == 4 * d.crossing_count
    # orientation independence
    for i in range(1, d.r + 1):
        assert ou_vector(reverse_component(d, i)) == ou_vector(d)


@settings(max_examples=150, deadline=None)
@given(closures())
def test_linking_lemma_and_parity(d):
    for i in range(1, d.r + 1):
        n_o, n_u = count_letters(non_self_ou(d, i))
        lk = total_linking(d, i)
        assert abs(lk) <= min(n_o, n_u)
        assert (lk - n_o) % 2 == 0
        assert (lk - ou_number(d, i)) % 2 == 0


def test_signs_sum_to_twice_linking():
    rng = random.Random(11)
    for _ in range(100):
        d = random_closure(rng, 10, 3, 2)
        for i in range(1, d.r + 1):
            for j in range(i + 1, d.r + 1):
                s = sum(
                    crossing_sign(d, c)
                    for c in d.crossings
                    if {d.strand_component(c.id, 0), d.strand_component(c.id, 1)} == {i, j}
                )
                assert s == 2 * linking_number(d, i, j)


def test_braid_letter_signs():
    d = braid_closure(parse_braid("s1 s2^-1 s1", strands=3))
    assert [crossing_sign(d, c) for c in d.crossings] == [1, -1, 1]

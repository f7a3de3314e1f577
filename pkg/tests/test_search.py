import random
from collections import Counter
from dataclasses import replace

import pytest

from ounumber.bounds import Parity, lower_bound_ordered, lower_bound_unordered, parity_constraint
from ounumber.canonical import canonical_key, digest
from ounumber.diagram import Arc, Crossing, LinkDiagram, ou_vector, permute_components, reverse_component
from ounumber.errors import BadParams, ComponentMismatch
from ounumber.generators import (
    braid_closure,
    fixture,
    hhn_word,
    parse_braid,
    random_closure,
    trivial_diagram,
)
from ounumber.moves import MoveKind
from ounumber.pdcode import parse_pd, serialize_pd
from ounumber.search import (
    MoveSequence,
    Objective,
    SearchConfig,
    SearchStatus,
    connect,
    fuzz_walk,
    random_walk,
)


def relabel(d: LinkDiagram, rng: random.Random) -> LinkDiagram:
    """Same diagram with arc and crossing ids shuffled."""
    cmap = dict(zip([c.id for c in d.crossings], rng.sample(range(50, 150), len(d.crossings))))
    amap = dict(zip([a.id for a in d.arcs], rng.sample(range(200, 300), len(d.arcs))))

    def end(e):
        return None if e is None else (cmap[e[0]], e[1])

    crossings = [Crossing(cmap[c.id], c.over) for c in d.crossings]
    arcs = [Arc(amap[a.id], a.component, end(a.tail), end(a.head), a.face) for a in d.arcs]
    return LinkDiagram.build(d.r, crossings, arcs, d.ordered)


def hopf():
    return braid_closure(parse_braid("s1 s1"))


# -- canonical keys -----------------------------------------------------------------


def test_key_survives_round_trip_and_relabeling():
    rng = random.Random(0)
    for _ in range(100):
        d = random_closure(rng, 10, 4)
        assert canonical_key(parse_pd(serialize_pd(d))) == canonical_key(d)
        assert canonical_key(relabel(d, rng)) == canonical_key(d)
        assert digest(relabel(d, rng)) == digest(d)


def test_key_separates():
    assert canonical_key(hopf()) != canonical_key(trivial_diagram(2))
    assert canonical_key(hopf()) != canonical_key(braid_closure(parse_braid("s1^-2")))
    d = fixture("F4")
    assert canonical_key(d) != canonical_key(permute_components(d, [2, 1]))
    assert canonical_key(d) != canonical_key(reverse_component(d, 1))


def test_unordered_key_ignores_component_order():
    d = replace(fixture("F5"), ordered=False)
    p = replace(permute_components(fixture("F5"), [3, 1, 2]), ordered=False)
    assert canonical_key(d) == canonical_key(p)


def test_key_ignores_outer_face():
    a, b = fixture("CESS_pair")
    assert digest(a) == digest(b)


# -- connect --------------------------------------------------------------------------


def test_f2_needs_exactly_one_alpha_move():
    res = connect(fixture("F2_left"), fixture("F2_right"), SearchConfig(7, 10**6))
    assert res.found
    assert res.sequence.alpha_count == 1
    assert res.lower_bound == 1
    assert res.optimal_certified
    end = res.sequence.replay()
    assert canonical_key(end) == canonical_key(fixture("F2_right"))
    assert res.to_dict()["optimal_certified"] is True


def test_same_diagram_gives_empty_sequence():
    d = fixture("F5")
    res = connect(d, relabel(d, random.Random(1)))
    assert res.found and len(res.sequence) == 0
    assert res.optimal_certified


def test_cess_pair_is_connected_by_nothing_on_the_sphere():
    a, b = fixture("CESS_pair")
    res = connect(a, b)
    assert res.found and res.sequence.alpha_count == 0
    assert parity_constraint(a, b) is Parity.EVEN_ALPHA_COUNT


@pytest.mark.parametrize("caps", [(2, 50), (3, 500), (4, 2000)])
def test_different_links_run_out_of_caps(caps):
    res = connect(hopf(), trivial_diagram(2), SearchConfig(*caps))
    assert res.status is SearchStatus.NOT_FOUND_WITHIN_CAPS
    assert res.sequence is None and not res.optimal_certified
    assert res.lower_bound is None  # Φ parity already says these differ


def test_component_mismatch():
    with pytest.raises(ComponentMismatch):
        connect(hopf(), trivial_diagram(3))


def test_bad_caps():
    with pytest.raises(BadParams):
        SearchConfig(max_states=0)


def test_scrambled_unlink_is_found():
    t = trivial_diagram(2)
    d, walk = random_walk(t, 6, seed=3, max_crossings=4)
    assert d.crossing_count > 0
    res = connect(d, t, SearchConfig(5, 20000))
    assert res.found and res.optimal_certified
    assert res.sequence.alpha_count <= walk.alpha_count
    assert canonical_key(res.sequence.replay()) == canonical_key(t)


def test_total_objective_is_never_longer():
    d = braid_closure(hhn_word(2))
    t = trivial_diagram(2)
    a = connect(d, t, SearchConfig(5, 20000, objective=Objective.MIN_ALPHA_MOVES))
    b = connect(d, t, SearchConfig(5, 20000, objective=Objective.MIN_TOTAL_MOVES))
    assert a.found and b.found
    assert len(b.sequence) <= len(a.sequence)
    assert a.sequence.alpha_count <= b.sequence.alpha_count


def walk_pairs(seed, count, steps=4, max_crossings=7, increasing=False):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = random_closure(rng, max_crossings, 3, 2)
        end, seq = random_walk(
            d, steps, rng.randrange(2**32), allow_increasing=increasing, max_crossings=max_crossings
        )
        out.append((d, end, seq))
    return out


def test_pruned_and_unpruned_agree():
    agreed = 0
    for d, end, _ in walk_pairs(3, 60):
        cfg = SearchConfig(d.crossing_count, 5000, allow_increasing=False)
        a = connect(d, end, cfg)
        b = connect(d, end, replace(cfg, use_heuristic=False))
        assert a.found and b.found
        assert a.sequence.alpha_count == b.sequence.alpha_count
        agreed += 1
    for d, end, _ in walk_pairs(4, 15, steps=2, max_crossings=4, increasing=True):
        cap = max(d.crossing_count, end.crossing_count) + 1
        a = connect(d, end, SearchConfig(cap, 1500))
        b = connect(d, end, SearchConfig(cap, 1500, use_heuristic=False))
        if a.found and b.found:
            assert a.sequence.alpha_count == b.sequence.alpha_count
            agreed += 1
    assert agreed >= 50


def test_found_sequences_respect_bounds_and_replay():
    for d, end, walk in walk_pairs(5, 40):
        res = connect(d, end, SearchConfig(d.crossing_count, 5000, allow_increasing=False))
        assert res.found
        seq = res.sequence
        assert canonical_key(seq.replay()) == canonical_key(end)
        assert seq.alpha_count <= walk.alpha_count
        assert seq.alpha_count >= lower_bound_ordered(d, end)
        assert seq.alpha_count >= lower_bound_unordered(d, end)
        if parity_constraint(d, end) is Parity.EVEN_ALPHA_COUNT:
            assert seq.alpha_count % 2 == 0


def test_raising_caps_never_hurts():
    for d, end, _ in walk_pairs(6, 6, steps=2, max_crossings=4, increasing=True):
        best = None
        for cap, states in [(4, 300), (5, 1000), (6, 3000)]:
            res = connect(d, end, SearchConfig(cap, states))
            if res.found:
                if best is not None:
                    assert res.sequence.alpha_count <= best
                best = res.sequence.alpha_count


# -- sequences and walks ------------------------------------------------------------------


def test_move_sequence_counts():
    d = fixture("F2_left")
    res = connect(d, fixture("F2_right"), SearchConfig(7, 10**6))
    counts = res.sequence.counts()
    assert counts["R3_alpha"] == 1 and counts["total"] == 1
    assert res.sequence.log_lines()[0].startswith("  1. R3α")
    assert res.sequence.to_dict()["counts"]["R3"] == 1


def test_replay_detects_tampering():
    d = fixture("F5")
    _, seq = random_walk(d, 5, seed=2)
    assert len(seq) == 5
    bad = MoveSequence(fixture("F4"), seq.records)
    with pytest.raises(Exception):
        bad.replay()


def test_fuzz_walk_basics():
    d = braid_closure(hhn_word(3))
    assert fuzz_walk(d, 0, seed=1) == []
    assert fuzz_walk(d, 30, seed=1) == fuzz_walk(d, 30, seed=1)
    with pytest.raises(BadParams):
        fuzz_walk(d, -1)


def test_fuzz_walk_phi_changes_only_at_alpha_moves():
    d = braid_closure(hhn_word(4))
    phi = ou_vector(d)
    kinds = Counter()
    for rec, after in fuzz_walk(d, 1000, seed=7):
        kinds[rec.site.kind] += 1
        if not rec.alpha:
            assert Counter(after) == Counter(phi)
            assert after == phi
        else:
            j = rec.site.role("middle").component
            assert all(a == b for i, (a, b) in enumerate(zip(after, phi), 1) if i != j)
        phi = after
    assert kinds[MoveKind.R3] > 50

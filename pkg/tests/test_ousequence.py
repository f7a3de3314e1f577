import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ounumber.errors import ParseError, RejectError, ValidationError
from ounumber.ousequence import (
    CyclicOUSequence,
    HalfInteger,
    Letter,
    OUSequence,
    alternating,
    count_letters,
    cyclic_reduction_sites,
    is_alternating,
    parse_word,
    phi_cyclic,
    phi_linear,
    reduce_cyclic_at,
    reduce_full,
    reduce_once,
    reverse,
    rotate,
    sign,
    swap_ou_to_uo,
)

W = OUSequence.parse
C = CyclicOUSequence
O, U = Letter.O, Letter.U


def words(max_len, min_len=0, even=False):
    for m in range(min_len, max_len + 1):
        if even and m % 2:
            continue
        for t in itertools.product("OU", repeat=m):
            yield OUSequence.of(t)


def oracle_phi(word: str) -> Fraction:
    # counts by position parity, independent of sign()
    plus = sum(1 for i, x in enumerate(word, 1) if (x == "O") == (i % 2 == 0))
    return Fraction(plus - (len(word) - plus), 2)


def test_sign_table():
    assert sign(U, 1) == 1
    assert sign(O, 1) == -1
    assert sign(O, 2) == 1
    assert sign(U, 2) == -1
    with pytest.raises(ValueError):
        sign(O, 0)


def test_phi_linear_examples():
    assert phi_linear(W("OUUUOU")) == -2
    assert phi_linear(W("OU^3OU")) == -2
    assert phi_linear(W("")) == 0
    assert phi_linear(W("OUOUO")) == Fraction(-5, 2)
    assert phi_linear(W("UOUOO")) == Fraction(3, 2)
    assert str(phi_linear(W("OUOUO"))) == "-5/2"


@pytest.mark.parametrize("m", [2, 4, 6, 10, 20])
def test_alternating_linear_and_cyclic(m):
    s = alternating(m)
    assert phi_linear(s) == -m // 2
    assert phi_cyclic(C(s)) == m // 2


def test_phi_cyclic_examples():
    assert phi_cyclic(C("OU^3OU")) == 2
    assert phi_cyclic(C("")) == 0
    assert phi_cyclic(C("OUOO")) == 1
    assert phi_cyclic(C("UOOO")) == 1
    assert phi_cyclic(C("OOUOOUOU")) == 1


def test_cyclic_rejects_odd_length():
    with pytest.raises(ValidationError):
        C("OUO")


def test_cyclic_equality_is_rotation_only():
    assert C("OOUU") == C("UOOU")
    assert C("OOUU") == C("UUOO")
    # the reversal UUOUOO is not a rotation of OOUOUU
    assert C("OOUOUU") != C("UUOUOO")


def test_reverse_examples():
    r = reverse(W("OUUUOU"))
    assert str(r) == "UOUUUO"
    assert phi_linear(r) == 2
    assert reverse(W("O")) == W("O")
    assert phi_linear(W("O")) == Fraction(-1, 2)
    assert reverse(W("")) == W("")


def test_rotate_examples():
    assert str(rotate(W("OOUU"))) == "OUUO"
    assert phi_linear(W("OOUU")) == 0 == phi_linear(W("OUUO"))
    assert str(rotate(W("OUOU"))) == "UOUO"
    assert phi_linear(W("UOUO")) == 2
    assert str(rotate(W("OUOUO"))) == "UOUOO"
    assert phi_linear(W("UOUOO")) == Fraction(3, 2)


def test_reduce_once_examples():
    assert reduce_once(W("OUUUOU"), 2) == W("OUOU")
    assert reduce_once(W("OO"), 1) == W("")
    assert reduce_once(W("OOUOOUOU"), 1) == W("UOOUOU")
    with pytest.raises(RejectError):
        reduce_once(W("OU"), 1)
    with pytest.raises(RejectError):
        reduce_once(W("OO"), 2)


def test_reduce_full_examples():
    assert reduce_full(C("OOUOOUOU")) == C("OU")
    assert phi_cyclic(reduce_full(C("OOUOOUOU"))) == 1
    assert reduce_full(C("OOUU")) == C("")
    assert reduce_full(C("OUOU")) == C("OUOU")


def test_reduce_uses_seam():
    # interior has no equal pair; only the seam (U...U) does
    w = C("UOUOOU")
    assert cyclic_reduction_sites(w) == [4, 6]
    assert reduce_cyclic_at(w, 6) == C("OUOO")


def test_swap_examples():
    t = C("OUUOUO")
    t2 = swap_ou_to_uo(t, 1)
    assert t2 == C("UOUOUO")
    assert (phi_cyclic(t), phi_cyclic(t2)) == (1, 3)
    w = C("OUOO")
    assert swap_ou_to_uo(w, 1) == C("UOOO")
    assert phi_cyclic(swap_ou_to_uo(w, 1)) == 1
    v = swap_ou_to_uo(C("OUOU"), 1)
    assert str(v) == "UOOU"
    assert phi_cyclic(v) == 0
    with pytest.raises(RejectError):
        swap_ou_to_uo(C("UOOU"), 1)


def test_swap_across_seam():
    # pair (4, 1) of UOUO reads OU
    assert swap_ou_to_uo(C("UOUO"), 4) == C("OOUU")


def test_count_letters():
    assert count_letters(W("OUUUOU")) == (2, 4)
    assert count_letters(W("")) == (0, 0)
    assert count_letters(W("O^4")) == (4, 0)


def test_parse_word():
    assert parse_word("O^2U^2") == W("OOUU")
    assert parse_word("~OUOU") == C("UOUO")
    assert parse_word("") == W("")
    with pytest.raises(ParseError):
        parse_word("OX")
    with pytest.raises(ParseError):
        parse_word("O^")


def test_half_integer_exact():
    h = HalfInteger(-5)
    assert h == Fraction(-5, 2)
    assert abs(h) == HalfInteger.of(Fraction(5, 2))
    assert not h.is_integer
    assert HalfInteger(4).to_int() == 2
    with pytest.raises(ValueError):
        HalfInteger.of(Fraction(1, 3))


# --- exhaustive properties -------------------------------------------------


def test_phi_matches_parity_count_oracle():
    for s in words(10):
        assert phi_linear(s) == oracle_phi(str(s))


def test_integrality_and_magnitude():
    for s in words(12):
        phi = phi_linear(s)
        if len(s) % 2 == 0:
            assert phi.is_integer and abs(phi) <= len(s) // 2
        else:
            assert not phi.is_integer


def test_reduction_invariance_exhaustive():
    for s in words(14, min_len=2):
        letters = s.letters
        for i in range(1, len(s)):
            if letters[i - 1] is letters[i]:
                r = reduce_once(s, i)
                assert phi_linear(r) == phi_linear(s)
                assert len(r) % 2 == len(s) % 2


def test_rotation_antisymmetry_even():
    for s in words(12, even=True):
        assert phi_linear(rotate(s)) == -phi_linear(s)


def test_reversal_law():
    for s in words(12):
        factor = -((-1) ** len(s))
        assert phi_linear(reverse(s)).doubled == factor * phi_linear(s).doubled


def test_cyclic_well_defined():
    for s in words(12, even=True):
        values = {abs(phi_linear(r)) for r in C(s).rotations()}
        assert len(values) == 1


def _all_normal_forms(w):
    # every terminal word reachable by any reduction order
    seen, stack, terminal = {w}, [w], set()
    while stack:
        cur = stack.pop()
        sites = cyclic_reduction_sites(cur)
        if not sites:
            terminal.add(cur)
        for i in sites:
            nxt = reduce_cyclic_at(cur, i)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return terminal


def test_normal_form_unique_small():
    for s in words(10, even=True):
        nfs = _all_normal_forms(C(s))
        assert len(nfs) == 1
        (nf,) = nfs
        assert is_alternating(nf)
        assert len(nf) // 2 == phi_cyclic(C(s))


def test_normal_form_randomized_orders():
    rng = random.Random(7)
    for s in words(12, even=True):
        w = C(s)
        default = reduce_full(w)
        assert is_alternating(default)
        assert len(default) // 2 == phi_cyclic(w)
        for _ in range(2):
            assert reduce_full(w, choose=rng.choice) == default


def test_swap_law_exhaustive():
    for s in words(12, min_len=2, even=True):
        w = C(s)
        before = phi_cyclic(w)
        m = len(s)
        for i in range(1, m + 1):
            if s[i - 1] is O and s[i % m] is U:
                delta = abs(phi_cyclic(swap_ou_to_uo(w, i)) - before)
                assert delta in (0, 2)
                if before != 1:
                    assert delta == 2


@given(st.text(alphabet="OU", max_size=40))
def test_reversal_and_rotation_hypothesis(text):
    s = W(text)
    assert phi_linear(reverse(reverse(s))) == phi_linear(s)
    if len(s) % 2 == 0:
        assert phi_linear(rotate(rotate(s))) == phi_linear(s)
        assert phi_cyclic(reduce_full(C(s))) == phi_cyclic(C(s))

"""Batch invariant suites behind ``ounumber verify``.

Each suite returns a :class:`SuiteResult`; the command succeeds only when all
of them pass. ``small`` keeps the whole run to a few seconds, ``full``
matches the sizes used by the acceptance tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from .bounds import lemma_checks, lower_bound_ordered, lower_bound_unordered
from .diagram import ou_vector
from .generators import (
    braid_closure,
    fixture,
    hhn_word,
    jablonowski_sequences,
    random_closure,
    trivial_diagram,
)
from .moves import MoveKind, delta_phi, enumerate_moves
from .ousequence import (
    CyclicOUSequence,
    Letter,
    OUSequence,
    is_alternating,
    phi_cyclic,
    phi_linear,
    reduce_full,
    reduce_once,
    reverse,
    rotate,
    swap_ou_to_uo,
)
from .search import SearchConfig, connect

SCALES = {
    "small": {"word_len": 8, "fuzz": 300, "lemma": 100, "hhn_max": 8},
    "full": {"word_len": 12, "fuzz": 10_000, "lemma": 1_000, "hhn_max": 12},
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "detail": self.detail}


def _words(max_len: int):
    for m in range(max_len + 1):
        for letters in product((Letter.O, Letter.U), repeat=m):
            yield OUSequence(letters)


def suite_sequences(scale: dict, rng: random.Random) -> SuiteResult:
    checked = 0
    for s in _words(scale["word_len"]):
        m = len(s)
        phi = phi_linear(s)
        for i in range(1, m):
            if s[i - 1] is s[i] and phi_linear(reduce_once(s, i)) != phi:
                return SuiteResult("sequences", False, checked, f"reduction changes Φ of {s}")
        if m and m % 2 == 0 and phi_linear(rotate(s)) != -phi:
            return SuiteResult("sequences", False, checked, f"rotation law fails for {s}")
        if phi_linear(reverse(s)) != phi.as_fraction() * (-((-1) ** m)):
            return SuiteResult("sequences", False, checked, f"reversal law fails for {s}")
        if m % 2 == 0:
            w = CyclicOUSequence(s)
            values = {abs(phi_linear(r).as_fraction()) for r in w.rotations()}
            if len(values) > 1:
                return SuiteResult("sequences", False, checked, f"Φ of ~{s} depends on start")
            p = phi_cyclic(w)
            for i in range(1, m + 1):
                if s[i - 1] is Letter.O and s[i % m] is Letter.U and m > 1:
                    d = abs(phi_cyclic(swap_ou_to_uo(w, i)) - p)
                    if d not in (0, 2) or (p != 1 and d != 2):
                        return SuiteResult("sequences", False, checked, f"swap law fails for ~{s}")
            nf = reduce_full(w)
            if not is_alternating(nf) or Fraction(len(nf), 2) != p:
                return SuiteResult("sequences", False, checked, f"normal form of ~{s} is off")
        checked += 1
    return SuiteResult("sequences", True, checked)


def suite_families(scale: dict, rng: random.Random) -> SuiteResult:
    checked = 0
    for n in range(4, scale["hhn_max"] + 1):
        d = braid_closure(hhn_word(n))
        expected = {
            0: (n // 2, n // 2),
            2: (n // 2 - 1, n // 2 + 1),
            1: ((n - 1) // 2, (n - 1) // 2),
            3: ((n + 1) // 2, (n + 1) // 2),
        }[n % 4]
        if d.r != 2 or sorted(ou_vector(d)) != sorted(expected):
            return SuiteResult("families", False, checked, f"D_{n}: Φ = {ou_vector(d)}")
        if lower_bound_unordered(d, trivial_diagram(2)) != sum(expected) // 2:
            return SuiteResult("families", False, checked, f"D_{n}: wrong bound")
        checked += 1
    for n in range(2, 11):
        for k in range(3, 10, 2):
            f1, f2 = jablonowski_sequences(n, k)
            if (phi_cyclic(f1), phi_cyclic(f2)) != (2 * n, 0):
                return SuiteResult("families", False, checked, f"D_({n},{k}) Φ off")
            if 2 * n > k and lower_bound_unordered((f1, f2), (0, 0)) != n:
                return SuiteResult("families", False, checked, f"D_({n},{k}) bound off")
            checked += 1
    return SuiteResult("families", True, checked)


def suite_fixtures(scale: dict, rng: random.Random) -> SuiteResult:
    checks = [
        ou_vector(fixture("F2_left")) == (2, 0),
        ou_vector(fixture("F2_right")) == (0, 0),
        ou_vector(fixture("F4")) == (0, 2),
        ou_vector(fixture("F5")) == (0, 2, 0),
        all(ou_vector(x) == (2, 2) for x in fixture("CESS_pair")),
        lower_bound_ordered(fixture("F2_left"), fixture("F2_right")) == 1,
    ]
    return SuiteResult("fixtures", all(checks), len(checks))


def suite_move_invariance(scale: dict, rng: random.Random) -> SuiteResult:
    checked = 0
    while checked < scale["fuzz"]:
        d = random_closure(rng, max_crossings=10)
        sites = enumerate_moves(d, allow_increasing=True, max_crossings=d.crossing_count + 2)
        if not sites:
            continue
        before = ou_vector(d)
        for site in rng.sample(sites, min(5, len(sites))):
            delta = delta_phi(d, site)
            if site.kind is MoveKind.R3 and site.alpha:
                j = site.role("middle").component
                others_zero = all(x == 0 for i, x in enumerate(delta, 1) if i != j)
                ok = others_zero and delta[j - 1] in (0, 2, -2)
                ok = ok and (before[j - 1] == 1 or abs(delta[j - 1]) == 2)
            else:
                ok = not any(delta)
            if not ok:
                return SuiteResult("move_invariance", False, checked, f"{site} gave {delta}")
            checked += 1
    return SuiteResult("move_invariance", True, checked)


def suite_lemma(scale: dict, rng: random.Random) -> SuiteResult:
    checked = 0
    for _ in range(scale["lemma"]):
        d = random_closure(rng, max_crossings=10)
        for i in range(1, d.r + 1):
            rep = lemma_checks(d, i)
            if not rep.passed:
                return SuiteResult("lemma", False, checked, str(rep.to_dict()))
            checked += 1
    return SuiteResult("lemma", True, checked)


def suite_search(scale: dict, rng: random.Random) -> SuiteResult:
    res = connect(fixture("F2_left"), fixture("F2_right"), SearchConfig(7, 10**6))
    ok = res.found and res.sequence.alpha_count == 1 and res.optimal_certified
    return SuiteResult("search", ok, 1, "" if ok else str(res.to_dict()))


SUITES: dict[str, Callable[[dict, random.Random], SuiteResult]] = {
    "sequences": suite_sequences,
    "families": suite_families,
    "fixtures": suite_fixtures,
    "move_invariance": suite_move_invariance,
    "lemma": suite_lemma,
    "search": suite_search,
}


def run_suites(scale: str = "small", seed: int = 0, only: list[str] | None = None) -> list[SuiteResult]:
    params = SCALES[scale]
    names = only or list(SUITES)
    return [SUITES[n](params, random.Random(f"{seed}:{n}")) for n in names]

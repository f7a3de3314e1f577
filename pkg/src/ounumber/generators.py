"""Diagram families: braid closures, the D_n braids, D_{n,k} words, fixtures."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .diagram import Arc, Crossing, LinkDiagram
from .errors import BadParams, InvalidWord, UnknownFixture
from .ousequence import CyclicOUSequence, Letter, OUSequence, alternating


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()  # (generator index, ±1)

    def __post_init__(self):
        if self.strands < 2:
            raise InvalidWord("a braid needs at least 2 strands")
        for i, e in self.letters:
            if not 1 <= i < self.strands or e not in (1, -1):
                raise InvalidWord(f"bad letter s{i}^{e} on {self.strands} strands")

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    def permutation(self) -> list[int]:
        """``perm[p]`` = bottom position reached from top position ``p`` (0-based)."""
        pos = list(range(self.strands))  # pos[strand] = current position
        at = list(range(self.strands))  # at[position] = strand
        for i, _ in self.letters:
            a, b = at[i - 1], at[i]
            at[i - 1], at[i] = b, a
            pos[a], pos[b] = i, i - 1
        return pos


_BRAID_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``s1 s2^-1 s3^2 ...``; the strand count defaults to max index + 1."""
    letters = []
    for tok in text.split():
        m = _BRAID_TOKEN.match(tok)
        if m is None:
            raise InvalidWord(f"bad braid token {tok!r}")
        i = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        if power == 0:
            continue
        letters.extend([(i, 1 if power > 0 else -1)] * abs(power))
    if strands is None:
        strands = max((i for i, _ in letters), default=1) + 1
    return BraidWord(strands, tuple(letters))


def braid_closure(w: BraidWord) -> LinkDiagram:
    """Closure with all strands running downward and closing arcs on the right.

    Letter ``s_i`` crosses the strand at position i over the one at i + 1
    (a positive crossing). Slots at each crossing: 0 top-left in, 1
    bottom-left out, 2 bottom-right out, 3 top-right in.
    """
    n = w.strands
    events: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    crossings = []
    for t, (i, e) in enumerate(w.letters, start=1):
        crossings.append(Crossing(t, 0 if e == 1 else 1))
        events[i - 1].append((t, 0, 1))
        events[i].append((t, 3, 2))

    ends = []  # (tail, head, top position of the arc entering first event)
    loops = []
    for p in range(n):
        ev = events[p]
        if not ev:
            loops.append(p)
            continue
        for j, (c, _, out) in enumerate(ev):
            nc, inn, _ = ev[(j + 1) % len(ev)]
            ends.append(((c, out), (nc, inn), p if j == len(ev) - 1 else None))

    # components: walk strands from the top of each position in order
    slot_arc = {}
    for idx, (tail, head, _) in enumerate(ends):
        slot_arc[tail] = idx
    head_of = {idx: head for idx, (_, head, _) in enumerate(ends)}
    wrap_of_position = {top: idx for idx, (_, _, top) in enumerate(ends) if top is not None}

    comp_of_arc: dict[int, int] = {}
    comp_of_loop: dict[int, int] = {}
    order: list[int] = []  # arc indices in traversal order per component
    k = 0
    for p in range(n):
        if p in loops:
            if p not in comp_of_loop:
                k += 1
                comp_of_loop[p] = k
            continue
        start = wrap_of_position[p]
        if start in comp_of_arc:
            continue
        k += 1
        cur = start
        while cur not in comp_of_arc:
            comp_of_arc[cur] = k
            order.append(cur)
            c, s = head_of[cur]
            cur = slot_arc[(c, (s + 2) % 4)]

    arcs = []
    ids = {}
    for idx in order:
        ids[idx] = len(ids) + 1
        tail, head, _ = ends[idx]
        arcs.append(Arc(ids[idx], comp_of_arc[idx], tail, head))
    next_id = len(ids) + 1
    for p in loops:
        arcs.append(Arc(next_id, comp_of_loop[p], None, None, p))
        next_id += 1
    return LinkDiagram.build(k, crossings, arcs)


def hhn_word(n: int) -> BraidWord:
    """σ1 (σ2 σ1)(σ3 σ2) … (σn σ(n-1)) σn^(-n) on n + 1 strands."""
    if n < 1:
        raise BadParams("n must be at least 1")
    letters = [(1, 1)]
    for j in range(2, n + 1):
        letters += [(j, 1), (j - 1, 1)]
    letters += [(n, -1)] * n
    return BraidWord(n + 1, tuple(letters))


def jablonowski_sequences(n: int, k: int) -> tuple[CyclicOUSequence, CyclicOUSequence]:
    """Non-self OU words of the two components of D_{n,k}."""
    if n < 2 or k < 3 or k % 2 == 0:
        raise BadParams(f"D_(n,k) needs n >= 2 and odd k >= 3, got n={n}, k={k}")
    o_block = alternating(k, Letter.O).letters  # O U O ... O
    u_block = alternating(k, Letter.U).letters  # U O U ... U
    f1 = o_block + alternating(4 * n, Letter.U).letters + o_block
    ou = alternating(2 * n, Letter.O).letters
    f2 = ou + u_block + ou + u_block
    return CyclicOUSequence(OUSequence(f1)), CyclicOUSequence(OUSequence(f2))


def trivial_diagram(r: int) -> LinkDiagram:
    if r < 1:
        raise BadParams("r must be at least 1")
    # loop i sits in the face numbered i - 1 (nested circles)
    return LinkDiagram.build(r, [], [Arc(i, i, None, None, i - 1) for i in range(1, r + 1)])


def random_braid(
    rng: random.Random, strands: int, length: int
) -> BraidWord:
    letters = tuple(
        (rng.randrange(1, strands), rng.choice((1, -1))) for _ in range(length)
    )
    return BraidWord(strands, letters)


def random_closure(
    rng: random.Random,
    max_crossings: int = 10,
    max_components: int = 4,
    min_components: int = 1,
) -> LinkDiagram:
    """Uniform random braid word closure, resampled until the component count fits."""
    while True:
        strands = rng.randint(2, max_components + 1)
        length = rng.randint(0, max_crossings)
        d = braid_closure(random_braid(rng, strands, length))
        if min_components <= d.r <= max_components:
            return d


# Hand-built fixtures. F2 is the closure of s1^2 s2^-1 s1^-1 s2^-1 with the
# components relabeled; F2_right is its image under the RIIIα move at
# crossings 1, 2, 4. F4 and F5 are closures of s1^2 s2 s1 s2 and
# s1 s2 s1 s2^-1 s1^-1 s2^-1. CESS_pair is the closure of s1^4 twice, the
# second copy marking the other square face as the outer one (the two are
# the same diagram on S^2).
_FIXTURES = {
    "F2_left": """\
link r=2 ordered=true
X1[1,8,2,7] O:{0,2} I:{0,3}
X2[8,3,9,2] O:{0,2} I:{0,3}
X3[9,6,10,5] O:{1,3} I:{0,3}
X4[3,1,4,6] O:{1,3} I:{0,3}
X5[4,7,5,10] O:{1,3} I:{0,3}
comp 7=1
comp 1=2
""",
    "F2_right": """\
link r=2 ordered=true
X1[6,9,1,8] O:{0,2} I:{0,3}
X2[7,4,8,3] O:{0,2} I:{0,3}
X3[9,6,10,5] O:{1,3} I:{0,3}
X4[2,2,3,1] O:{1,3} I:{0,3}
X5[4,7,5,10] O:{1,3} I:{0,3}
comp 7=1
comp 1=2
""",
    "F4": """\
link r=2 ordered=true
X1[1,8,2,7] O:{0,2} I:{0,3}
X2[8,3,9,2] O:{0,2} I:{0,3}
X3[9,6,10,5] O:{0,2} I:{0,3}
X4[3,1,4,6] O:{0,2} I:{0,3}
X5[4,7,5,10] O:{0,2} I:{0,3}
comp 7=1
comp 1=2
""",
    "F5": """\
link r=3 ordered=true
X1[1,6,2,5] O:{0,2} I:{0,3}
X2[2,10,3,9] O:{0,2} I:{0,3}
X3[6,11,7,10] O:{0,2} I:{0,3}
X4[7,4,8,3] O:{1,3} I:{0,3}
X5[11,1,12,4] O:{1,3} I:{0,3}
X6[12,5,9,8] O:{1,3} I:{0,3}
comp 1=1
comp 5=2
comp 9=3
""",
}

_CESS = """\
link r=2 ordered=true outer={outer}
X1[1,6,2,5] O:{{0,2}} I:{{0,3}}
X2[6,3,7,2] O:{{0,2}} I:{{0,3}}
X3[3,8,4,7] O:{{0,2}} I:{{0,3}}
X4[8,1,5,4] O:{{0,2}} I:{{0,3}}
comp 1=1
comp 5=2
"""

FIXTURE_NAMES = ("F2_left", "F2_right", "F4", "F5", "CESS_pair")


def fixture_text(name: str) -> str:
    if name == "CESS_pair":
        raise UnknownFixture("CESS_pair is a pair; use fixture()")
    try:
        return _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}") from None


def fixture(name: str) -> LinkDiagram | tuple[LinkDiagram, LinkDiagram]:
    from .pdcode import parse_pd

    if name == "CESS_pair":
        return parse_pd(_CESS.format(outer=0)), parse_pd(_CESS.format(outer=2))
    return parse_pd(fixture_text(name))

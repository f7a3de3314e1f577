"""Oriented link diagrams on S² as combinatorial maps.

A crossing has four slots numbered counterclockwise; the strands through it
join slots (0, 2) and (1, 3). Each arc runs from a tail endpoint
``(crossing, slot)`` to a head endpoint, so the orientation is carried by the
arcs themselves. A component without crossings is an arc whose endpoints are
both ``None`` (a loop).

Faces are traced on corners: corner ``(c, j)`` is the angle between slots
``j`` and ``j + 1`` of crossing ``c``. Leaving ``c`` through slot ``j + 1``
along its arc and arriving at ``(c', s')`` continues the face at corner
``(c', s')``. With this rule the face of a corner lies to the right of the
arc being walked.

Split pieces of a diagram (connected components of the shadow) carry no
relative placement; see :mod:`ounumber.moves` for what that means for moves.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator

from .errors import BadComponent, SameComponent, ValidationError
from .ousequence import CyclicOUSequence, Letter, OUSequence, phi_cyclic

Endpoint = tuple[int, int]
Corner = tuple[int, int]

RIGHT = "R"
LEFT = "L"


@dataclass(frozen=True)
class Crossing:
    id: int
    over: int  # 0: strand on slots {0, 2} is over; 1: strand on {1, 3}

    def is_over(self, slot: int) -> bool:
        return slot % 2 == self.over


@dataclass(frozen=True)
class Arc:
    id: int
    component: int
    tail: Endpoint | None
    head: Endpoint | None
    face: int | None = None  # placement annotation for loops; not semantic

    @property
    def is_loop(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class Encounter:
    crossing: int
    letter: Letter
    self_crossing: bool


@dataclass(frozen=True)
class ComponentTrace:
    component: int
    encounters: tuple[Encounter, ...]

    def non_self_letters(self) -> tuple[Letter, ...]:
        return tuple(e.letter for e in self.encounters if not e.self_crossing)


@dataclass(frozen=True)
class LinkDiagram:
    r: int
    crossings: tuple[Crossing, ...]
    arcs: tuple[Arc, ...]
    ordered: bool = True
    outer_face: int | None = field(default=None, compare=False)

    @classmethod
    def build(
        cls,
        r: int,
        crossings: Iterable[Crossing],
        arcs: Iterable[Arc],
        ordered: bool = True,
        outer_face: int | None = None,
    ) -> "LinkDiagram":
        d = cls(
            r,
            tuple(sorted(crossings, key=lambda c: c.id)),
            tuple(sorted(arcs, key=lambda a: a.id)),
            ordered,
            outer_face,
        )
        d.validate()
        return d

    # -- lookups ---------------------------------------------------------

    @cached_property
    def crossing_by_id(self) -> dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    @cached_property
    def arc_by_id(self) -> dict[int, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def slot_table(self) -> dict[Endpoint, tuple[int, bool]]:
        """``(crossing, slot) -> (arc id, arc enters the crossing here)``."""
        table: dict[Endpoint, tuple[int, bool]] = {}
        for a in self.arcs:
            for end, incoming in ((a.tail, False), (a.head, True)):
                if end is None:
                    continue
                if end in table:
                    raise ValidationError(f"slot {end} used twice")
                table[end] = (a.id, incoming)
        return table

    def arc_at(self, c: int, s: int) -> Arc:
        return self.arc_by_id[self.slot_table[(c, s % 4)][0]]

    def is_incoming(self, c: int, s: int) -> bool:
        return self.slot_table[(c, s % 4)][1]

    def next_arc(self, arc: Arc) -> Arc:
        """The arc following ``arc`` along its component."""
        if arc.is_loop:
            return arc
        c, s = arc.head
        return self.arc_at(c, s + 2)

    def component_arcs(self, i: int) -> list[Arc]:
        """Arcs of component ``i`` in orientation order from its lowest arc id."""
        self._check_component(i)
        start = min((a for a in self.arcs if a.component == i), key=lambda a: a.id)
        return self._arcs_from(start)

    def _arcs_from(self, start: Arc) -> list[Arc]:
        out = [start]
        cur = self.next_arc(start)
        while cur.id != start.id:
            out.append(cur)
            cur = self.next_arc(cur)
        return out

    def strand_component(self, c: int, s: int) -> int:
        return self.arc_at(c, s).component

    def is_self(self, c: int) -> bool:
        return self.strand_component(c, 0) == self.strand_component(c, 1)

    def _check_component(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.r:
            raise BadComponent(f"component {i} not in 1..{self.r}")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def next_arc_id(self) -> int:
        return max((a.id for a in self.arcs), default=0) + 1

    def next_crossing_id(self) -> int:
        return max((c.id for c in self.crossings), default=0) + 1

    # -- faces -----------------------------------------------------------

    def next_corner(self, corner: Corner) -> Corner:
        c, j = corner
        other = self.arc_at(c, j + 1)
        end = other.head if other.tail == (c, (j + 1) % 4) else other.tail
        return end

    @cached_property
    def faces(self) -> tuple[tuple[Corner, ...], ...]:
        """Faces as cyclic corner tuples, ordered by their smallest corner."""
        seen: set[Corner] = set()
        faces = []
        for c in self.crossings:
            for j in range(4):
                if (c.id, j) in seen:
                    continue
                face = []
                cur = (c.id, j)
                while cur not in seen:
                    seen.add(cur)
                    face.append(cur)
                    cur = self.next_corner(cur)
                if cur != (c.id, j):
                    raise ValidationError("corner walk does not close up")
                faces.append(tuple(face))
        return tuple(sorted(faces, key=min))

    @cached_property
    def face_of_corner(self) -> dict[Corner, int]:
        return {k: i for i, f in enumerate(self.faces) for k in f}

    def side_face(self, arc_id: int, side: str):
        """Face on the given side of an arc (walking tail to head).

        Loops have two private sides, returned as ``("loop", id, side)``.
        """
        a = self.arc_by_id[arc_id]
        if a.is_loop:
            return ("loop", a.id, side)
        c, s = a.head
        if side == RIGHT:
            return self.face_of_corner[(c, s)]
        return self.face_of_corner[(c, (s - 1) % 4)]

    @cached_property
    def pieces(self) -> tuple[tuple[int, ...], ...]:
        """Connected shadow pieces as sorted crossing-id tuples (loops excluded)."""
        parent = {c.id: c.id for c in self.crossings}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arcs:
            if not a.is_loop:
                ra, rb = find(a.tail[0]), find(a.head[0])
                if ra != rb:
                    parent[ra] = rb
        groups = defaultdict(list)
        for cid in parent:
            groups[find(cid)].append(cid)
        return tuple(sorted(tuple(sorted(g)) for g in groups.values()))

    @cached_property
    def piece_of_crossing(self) -> dict[int, int]:
        return {c: i for i, p in enumerate(self.pieces) for c in p}

    def arc_piece(self, arc_id: int):
        a = self.arc_by_id[arc_id]
        if a.is_loop:
            return ("loop", a.id)
        return self.piece_of_crossing[a.head[0]]

    # -- validation --------------------------------------------------------

    def validate(self) -> None:
        if self.r < 1:
            raise ValidationError("a diagram needs at least one component")
        ids = [c.id for c in self.crossings]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate crossing ids")
        arc_ids = [a.id for a in self.arcs]
        if len(set(arc_ids)) != len(arc_ids) or any(i < 1 for i in arc_ids):
            raise ValidationError("arc ids must be distinct positive integers")
        for c in self.crossings:
            if c.over not in (0, 1):
                raise ValidationError(f"crossing {c.id}: bad over axis")
        known = set(ids)
        for a in self.arcs:
            if (a.tail is None) != (a.head is None):
                raise ValidationError(f"arc {a.id}: half-open arc")
            for end in (a.tail, a.head):
                if end is not None and (end[0] not in known or end[1] not in range(4)):
                    raise ValidationError(f"arc {a.id}: bad endpoint {end}")
            if not 1 <= a.component <= self.r:
                raise ValidationError(f"arc {a.id}: component {a.component} out of range")
        table = self.slot_table
        if len(table) != 4 * len(self.crossings):
            raise ValidationError("every crossing slot must hold exactly one arc end")
        for c in self.crossings:
            for s in (0, 1):
                if table[(c.id, s)][1] == table[(c.id, s + 2)][1]:
                    raise ValidationError(
                        f"crossing {c.id}: strand through slots {s},{s + 2} is not oriented through"
                    )
        for a in self.arcs:
            if self.next_arc(a).component != a.component:
                raise ValidationError(f"arc {a.id}: component changes along a strand")
        used = {a.component for a in self.arcs}
        if used != set(range(1, self.r + 1)):
            raise ValidationError(f"components {sorted(set(range(1, self.r + 1)) - used)} unused")
        self._check_euler()

    def _check_euler(self) -> None:
        faces_per_piece: dict[int, int] = defaultdict(int)
        for f in self.faces:
            faces_per_piece[self.piece_of_crossing[f[0][0]]] += 1
        edges_per_piece: dict[int, int] = defaultdict(int)
        for a in self.arcs:
            if not a.is_loop:
                edges_per_piece[self.piece_of_crossing[a.head[0]]] += 1
        for i, piece in enumerate(self.pieces):
            chi = len(piece) - edges_per_piece[i] + faces_per_piece[i]
            if chi != 2:
                raise ValidationError(
                    f"shadow piece with crossings {piece} is not planar (V-E+F={chi})"
                )


# -- module-level operations -------------------------------------------------


def trace_component(d: LinkDiagram, i: int) -> ComponentTrace:
    arcs = d.component_arcs(i)
    encounters = []
    if not arcs[0].is_loop:
        for a in arcs:
            c, s = a.head
            crossing = d.crossing_by_id[c]
            letter = Letter.O if crossing.is_over(s) else Letter.U
            encounters.append(Encounter(c, letter, d.is_self(c)))
    return ComponentTrace(i, tuple(encounters))


def non_self_ou(d: LinkDiagram, i: int) -> CyclicOUSequence:
    return CyclicOUSequence(OUSequence(trace_component(d, i).non_self_letters()))


def ou_number(d: LinkDiagram, i: int) -> int:
    return phi_cyclic(non_self_ou(d, i))


def ou_vector(d: LinkDiagram) -> tuple[int, ...]:
    return tuple(ou_number(d, i) for i in range(1, d.r + 1))


def non_self_ou_from(d: LinkDiagram, arc_id: int) -> OUSequence:
    """Linear non-self word read from an arbitrary starting arc."""
    start = d.arc_by_id[arc_id]
    letters = []
    if not start.is_loop:
        for a in d._arcs_from(start):
            c, s = a.head
            if not d.is_self(c):
                letters.append(Letter.O if d.crossing_by_id[c].is_over(s) else Letter.U)
    return OUSequence(tuple(letters))


def reverse_component(d: LinkDiagram, i: int) -> LinkDiagram:
    d._check_component(i)
    arcs = [
        replace(a, tail=a.head, head=a.tail) if a.component == i else a for a in d.arcs
    ]
    return LinkDiagram.build(d.r, d.crossings, arcs, d.ordered, d.outer_face)


def crossing_sign(d: LinkDiagram, c: Crossing | int) -> int:
    """+1 iff turning the under direction a quarter-turn counterclockwise gives the over direction."""
    cid = c.id if isinstance(c, Crossing) else c
    crossing = d.crossing_by_id[cid]
    out_slots = [s for s in range(4) if not d.is_incoming(cid, s)]
    over_out = next(s for s in out_slots if crossing.is_over(s))
    under_out = next(s for s in out_slots if not crossing.is_over(s))
    return 1 if over_out == (under_out + 1) % 4 else -1


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    d._check_component(i)
    d._check_component(j)
    if i == j:
        raise SameComponent(f"linking number needs two components, got {i} twice")
    total = 0
    for c in d.crossings:
        comps = {d.strand_component(c.id, 0), d.strand_component(c.id, 1)}
        if comps == {i, j}:
            total += crossing_sign(d, c)
    if total % 2:
        raise ValidationError("odd signed crossing count between two components")
    return total // 2


def total_linking(d: LinkDiagram, i: int) -> int:
    d._check_component(i)
    return sum(linking_number(d, i, j) for j in range(1, d.r + 1) if j != i)


def writhe(d: LinkDiagram) -> int:
    return sum(crossing_sign(d, c) for c in d.crossings)


def iter_components(d: LinkDiagram) -> Iterator[int]:
    return iter(range(1, d.r + 1))


def permute_components(d: LinkDiagram, order: list[int]) -> LinkDiagram:
    """Renumber components so that old component ``order[k]`` becomes ``k + 1``."""
    if sorted(order) != list(range(1, d.r + 1)):
        raise BadComponent(f"{order} is not a permutation of 1..{d.r}")
    new = {old: k + 1 for k, old in enumerate(order)}
    arcs = [replace(a, component=new[a.component]) for a in d.arcs]
    return LinkDiagram.build(d.r, d.crossings, arcs, d.ordered, d.outer_face)

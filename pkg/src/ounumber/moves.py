"""Reidemeister moves on :class:`LinkDiagram` values.

Decreasing moves and RIII are located on faces: RI at monogons, RII at
bigons whose two sides are layered (one strand over at both crossings), RIII
at triangles with three distinct crossings whose sides admit a strict
top/middle/bottom order.

Split pieces of a diagram carry no relative placement, so a monogon, bigon or
triangle never has anything nested inside it, and an RII move may poke any
arc of one piece against any arc of another (the second piece is placed in
the face the first arc borders). Within a piece, an RII poke needs both arcs
on a common face; an arc may also poke a later stretch of itself.

Crossing ids survive moves; new arcs and crossings take fresh ids above the
current maximum. Arc ids of merged arcs keep the smallest id involved.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Iterator

from .diagram import LEFT, RIGHT, Arc, Crossing, LinkDiagram, ou_vector
from .errors import InternalError, NotR3, StaleSite, ValidationError


class MoveKind(enum.Enum):
    R1_REMOVE = "R1_remove"
    R1_ADD = "R1_add"
    R2_REMOVE = "R2_remove"
    R2_ADD = "R2_add"
    R3 = "R3"

    @property
    def crossing_change(self) -> int:
        return {"R1_remove": -1, "R1_add": 1, "R2_remove": -2, "R2_add": 2, "R3": 0}[
            self.value
        ]


@dataclass(frozen=True)
class SideRole:
    """One of the three strands of an RIII triangle."""

    role: str  # "upper" | "middle" | "lower"
    arc: int
    component: int


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    location: tuple
    r3_roles: tuple[SideRole, ...] | None = None
    alpha: bool | None = None

    def role(self, name: str) -> SideRole:
        if self.r3_roles is None:
            raise NotR3(f"{self.kind.value} site has no roles")
        return next(x for x in self.r3_roles if x.role == name)

    def describe(self) -> dict:
        out = {"kind": self.kind.value, "location": _jsonable(self.location)}
        if self.kind is MoveKind.R3:
            out["alpha"] = self.alpha
            out["roles"] = {x.role: x.component for x in self.r3_roles}
        return out


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


@dataclass(frozen=True)
class MoveRecord:
    site: MoveSite
    before: str
    after: str
    delta_phi: tuple[int, ...]

    @property
    def alpha(self) -> bool:
        return bool(self.site.alpha)


# -- detection ------------------------------------------------------------------


def _side_arc(d: LinkDiagram, corner):
    """Arc leaving corner ``(c, j)`` through slot ``j + 1``."""
    c, j = corner
    return d.arc_at(c, j + 1)


def _monogons(d: LinkDiagram) -> Iterator[MoveSite]:
    for face in d.faces:
        if len(face) == 1:
            yield MoveSite(MoveKind.R1_REMOVE, face[0])


def _bigon_site(d: LinkDiagram, face) -> MoveSite | None:
    (c1, j1), (c2, j2) = face
    if c1 == c2:
        return None
    x1, x2 = d.crossing_by_id[c1], d.crossing_by_id[c2]
    # side leaving c1 at j1+1 arrives at c2 slot j2
    if x1.is_over(j1 + 1) != x2.is_over(j2):
        return None
    return MoveSite(MoveKind.R2_REMOVE, (face[0], face[1]))


def _triangle_site(d: LinkDiagram, face) -> MoveSite | None:
    if len({c for c, _ in face}) != 3:
        return None
    roles = []
    overs = []
    for k in range(3):
        (c, j), (cn, jn) = face[k], face[(k + 1) % 3]
        arc = _side_arc(d, (c, j))
        over_here = d.crossing_by_id[c].is_over(j + 1)
        over_there = d.crossing_by_id[cn].is_over(jn)
        overs.append((over_here, over_there))
        roles.append(arc)
    named = []
    for arc, (a, b) in zip(roles, overs):
        if a and b:
            named.append(SideRole("upper", arc.id, arc.component))
        elif not a and not b:
            named.append(SideRole("lower", arc.id, arc.component))
        else:
            named.append(SideRole("middle", arc.id, arc.component))
    if sorted(x.role for x in named) != ["lower", "middle", "upper"]:
        return None  # cyclic layering
    by = {x.role: x.component for x in named}
    alpha = by["middle"] != by["upper"] and by["middle"] != by["lower"]
    return MoveSite(MoveKind.R3, tuple(face), tuple(named), alpha)


def _arc_sides(d: LinkDiagram):
    for a in d.arcs:
        for side in (RIGHT, LEFT):
            yield a, side, d.side_face(a.id, side)


def enumerate_moves(
    d: LinkDiagram,
    allow_increasing: bool = False,
    max_crossings: int | None = None,
) -> list[MoveSite]:
    """All applicable move sites, decreasing and RIII first.

    Increasing moves need ``allow_increasing`` and respect ``max_crossings``.
    RII pokes are listed once per unordered pair of (arc, side) choices,
    an arc paired with itself included; the two layerings are separate sites.
    """
    sites: list[MoveSite] = list(_monogons(d))
    for face in d.faces:
        if len(face) == 2:
            s = _bigon_site(d, face)
            if s:
                sites.append(s)
    for face in d.faces:
        if len(face) == 3:
            s = _triangle_site(d, face)
            if s:
                sites.append(s)
    if not allow_increasing:
        return sites
    n = d.crossing_count
    if max_crossings is None or n + 1 <= max_crossings:
        for a in d.arcs:
            for side in (LEFT, RIGHT):
                for over in (0, 1):
                    sites.append(MoveSite(MoveKind.R1_ADD, (a.id, side, over)))
    if max_crossings is None or n + 2 <= max_crossings:
        sides = list(_arc_sides(d))
        for ia, (a, sa, fa) in enumerate(sides):
            pa = d.arc_piece(a.id)
            for b, sb, fb in sides[ia:]:
                if (b.id == a.id or pa == d.arc_piece(b.id)) and fa != fb:
                    continue
                for a_over in (True, False):
                    sites.append(MoveSite(MoveKind.R2_ADD, (a.id, sa, b.id, sb, a_over)))
    return sites


def classify_r3(d: LinkDiagram, site: MoveSite) -> str:
    if site.kind is not MoveKind.R3:
        raise NotR3(f"{site.kind.value} is not an RIII site")
    fresh = _triangle_site(d, site.location) if _is_face(d, site.location) else None
    if fresh is None:
        raise StaleSite("triangle no longer admits RIII")
    return "alpha" if fresh.alpha else "non_alpha"


def _is_face(d: LinkDiagram, corners) -> bool:
    try:
        idx = {d.face_of_corner[c] for c in corners}
    except KeyError:
        return False
    return len(idx) == 1 and len(d.faces[idx.pop()]) == len(corners)


def _revalidate(d: LinkDiagram, site: MoveSite) -> MoveSite:
    k = site.kind
    if k is MoveKind.R1_REMOVE:
        if _is_face(d, (site.location,)):
            return site
    elif k is MoveKind.R2_REMOVE:
        if _is_face(d, site.location):
            s = _bigon_site(d, d.faces[d.face_of_corner[site.location[0]]])
            if s is not None:
                return s
    elif k is MoveKind.R3:
        if _is_face(d, site.location):
            s = _triangle_site(d, d.faces[d.face_of_corner[site.location[0]]])
            if s is not None:
                return s
    elif k is MoveKind.R1_ADD:
        aid, side, over = site.location
        if aid in d.arc_by_id and side in (LEFT, RIGHT) and over in (0, 1):
            return site
    elif k is MoveKind.R2_ADD:
        a, sa, b, sb, _ = site.location
        if a in d.arc_by_id and b in d.arc_by_id and sa in (LEFT, RIGHT) and sb in (LEFT, RIGHT):
            if d.side_face(a, sa) == d.side_face(b, sb) or (
                a != b and d.arc_piece(a) != d.arc_piece(b)
            ):
                return site
    raise StaleSite(f"{k.value} site {site.location} does not apply")


# -- rewriting --------------------------------------------------------------------


def _splice(d: LinkDiagram, removed: set[int]) -> LinkDiagram:
    """Delete crossings, joining each strand straight through them."""
    arcs: list[Arc] = []
    visited: set[int] = set()
    for a in d.arcs:
        if a.is_loop:
            arcs.append(a)
            visited.add(a.id)
        elif a.tail[0] not in removed:
            chain = [a]
            cur = a
            while cur.head[0] in removed:
                cur = d.next_arc(cur)
                chain.append(cur)
            visited.update(x.id for x in chain)
            arcs.append(Arc(min(x.id for x in chain), a.component, a.tail, cur.head))
    for a in d.arcs:
        if a.id in visited:
            continue
        cycle = d._arcs_from(a)
        visited.update(x.id for x in cycle)
        arcs.append(Arc(min(x.id for x in cycle), a.component, None, None))
    crossings = [c for c in d.crossings if c.id not in removed]
    return LinkDiagram.build(d.r, crossings, arcs, d.ordered, d.outer_face)


def _apply_r3(d: LinkDiagram, corners) -> LinkDiagram:
    # With triangle corners (c_i, j_i) in face-walk order, the outer end of
    # the strand entering c_i at j_i+1 ... is re-attached as follows:
    #   (c_{i+2}, j_{i+2}+3) -> (c_i, j_i)
    #   (c_{i+1}, j_{i+1}+2) -> (c_i, j_i+1)
    # and the new sides join (c_i, j_i+2) with (c_{i+2}, j_{i+2}+3).
    cs = [c for c, _ in corners]
    js = [j for _, j in corners]
    remap = {}
    for i in range(3):
        i1, i2 = (i + 1) % 3, (i + 2) % 3
        remap[(cs[i2], (js[i2] + 3) % 4)] = (cs[i], js[i])
        remap[(cs[i1], (js[i1] + 2) % 4)] = (cs[i], (js[i] + 1) % 4)
    side_arcs = {d.arc_at(cs[i], js[i] + 1).id for i in range(3)}
    # the old side through c_i and c_{i+1} lies on the strand that becomes the
    # new side joining (c_{i+1}, j_{i+1}+2) and (c_i, j_i+3)
    new_side_ends = {}
    for i in range(3):
        i1 = (i + 1) % 3
        old = d.arc_at(cs[i], js[i] + 1)
        new_side_ends[old.id] = ((cs[i1], (js[i1] + 2) % 4), (cs[i], (js[i] + 3) % 4))
    arcs = []
    for a in d.arcs:
        if a.id in side_arcs:
            continue
        if a.is_loop:
            arcs.append(a)
            continue
        arcs.append(replace(a, tail=remap.get(a.tail, a.tail), head=remap.get(a.head, a.head)))
    heads = {a.head for a in arcs if a.head is not None}
    for aid, (p, q) in new_side_ends.items():
        old = d.arc_by_id[aid]
        # the new side leaves the crossing whose opposite slot is entered
        opp_p = (p[0], (p[1] + 2) % 4)
        if opp_p in heads:
            tail, head = p, q
        else:
            tail, head = q, p
        arcs.append(Arc(aid, old.component, tail, head))
    return LinkDiagram.build(d.r, d.crossings, arcs, d.ordered, d.outer_face)


def _apply_r1_add(d: LinkDiagram, aid: int, side: str, over: int) -> LinkDiagram:
    a = d.arc_by_id[aid]
    n = d.next_crossing_id()
    fresh = d.next_arc_id()
    # enter at slot 0, leave for the kink at 2; the kink returns at 3 (monogon
    # on the left) or 1 (monogon on the right) and the arc exits opposite.
    back, out = (3, 1) if side == LEFT else (1, 3)
    kink = Arc(fresh, a.component, (n, 2), (n, back))
    if a.is_loop:
        main = [Arc(a.id, a.component, (n, out), (n, 0))]
    else:
        main = [
            Arc(a.id, a.component, a.tail, (n, 0)),
            Arc(fresh + 1, a.component, (n, out), a.head),
        ]
    arcs = [x for x in d.arcs if x.id != aid] + main + [kink]
    crossings = list(d.crossings) + [Crossing(n, over)]
    return LinkDiagram.build(d.r, crossings, arcs, d.ordered, d.outer_face)


def _self_poke(d, a, am, bm, first_in, last_out, n1, n2, fresh, a_over) -> LinkDiagram:
    # An earlier stretch of the arc pokes a later stretch of itself: the same
    # layout as two arcs, with the arc's end after the poke fused to its start
    # before the poked stretch.
    if a.is_loop:
        arcs = [
            Arc(a.id, a.component, last_out, (n1, 0)),
            am,
            Arc(next(fresh), a.component, (n2, 2), first_in),
            bm,
        ]
    else:
        arcs = [
            Arc(a.id, a.component, a.tail, (n1, 0)),
            am,
            Arc(next(fresh), a.component, (n2, 2), first_in),
            bm,
            Arc(next(fresh), a.component, last_out, a.head),
        ]
    over = 0 if a_over else 1
    arcs = [x for x in d.arcs if x.id != a.id] + arcs
    crossings = list(d.crossings) + [Crossing(n1, over), Crossing(n2, over)]
    return LinkDiagram.build(d.r, crossings, arcs, d.ordered, d.outer_face)


def _apply_r2_add(
    d: LinkDiagram, aid: int, side_a: str, bid: int, side_b: str, a_over: bool
) -> LinkDiagram:
    a, b = d.arc_by_id[aid], d.arc_by_id[bid]
    n1 = d.next_crossing_id()
    n2 = n1 + 1
    fresh = itertools.count(d.next_arc_id())
    # a runs along the face, pushes a finger through b and comes back:
    # a enters n1 at 0, leaves at 2, enters n2 at 0, leaves at 2.
    if side_a == LEFT:
        west1, east1, west2, east2 = 3, 1, 1, 3
    else:
        west1, east1, west2, east2 = 1, 3, 3, 1
    am = Arc(next(fresh), a.component, (n1, 2), (n2, 0))
    if a.is_loop:
        a_arcs = [Arc(a.id, a.component, (n2, 2), (n1, 0)), am]
    else:
        a_arcs = [
            Arc(a.id, a.component, a.tail, (n1, 0)),
            am,
            Arc(next(fresh), a.component, (n2, 2), a.head),
        ]
    if side_a != side_b:  # b runs the same way as a along the poke
        first_in, mid, last_out = (n1, west1), ((n1, east1), (n2, west2)), (n2, east2)
    else:
        first_in, mid, last_out = (n2, east2), ((n2, west2), (n1, east1)), (n1, west1)
    bm = Arc(next(fresh), b.component, mid[0], mid[1])
    if aid == bid:
        return _self_poke(d, a, am, bm, first_in, last_out, n1, n2, fresh, a_over)
    if b.is_loop:
        b_arcs = [Arc(b.id, b.component, last_out, first_in), bm]
    else:
        b_arcs = [
            Arc(b.id, b.component, b.tail, first_in),
            bm,
            Arc(next(fresh), b.component, last_out, b.head),
        ]
    over = 0 if a_over else 1
    arcs = [x for x in d.arcs if x.id not in (aid, bid)] + a_arcs + b_arcs
    crossings = list(d.crossings) + [Crossing(n1, over), Crossing(n2, over)]
    return LinkDiagram.build(d.r, crossings, arcs, d.ordered, d.outer_face)


def apply_move(d: LinkDiagram, site: MoveSite) -> LinkDiagram:
    site = _revalidate(d, site)
    k = site.kind
    try:
        if k is MoveKind.R1_REMOVE:
            out = _splice(d, {site.location[0]})
        elif k is MoveKind.R2_REMOVE:
            out = _splice(d, {site.location[0][0], site.location[1][0]})
        elif k is MoveKind.R3:
            out = _apply_r3(d, site.location)
        elif k is MoveKind.R1_ADD:
            out = _apply_r1_add(d, *site.location)
        else:
            out = _apply_r2_add(d, *site.location)
    except ValidationError as exc:
        raise InternalError(f"{k.value} at {site.location} broke the diagram: {exc}") from exc
    if out.crossing_count != d.crossing_count + k.crossing_change:
        raise InternalError(f"{k.value} changed the crossing count wrongly")
    return out


def delta_phi(d: LinkDiagram, site: MoveSite) -> tuple[int, ...]:
    after = apply_move(d, site)
    return tuple(x - y for x, y in zip(ou_vector(after), ou_vector(d)))


def record_move(d: LinkDiagram, site: MoveSite) -> tuple[LinkDiagram, MoveRecord]:
    from .canonical import digest

    after = apply_move(d, site)
    delta = tuple(x - y for x, y in zip(ou_vector(after), ou_vector(d)))
    return after, MoveRecord(site, digest(d), digest(after), delta)

"""Relabeling-invariant keys for diagrams.

Each shadow piece is encoded by a breadth-first walk from a start arc that
numbers crossings and arcs in discovery order; the piece code is the least
such encoding over all start arcs. Orientation, over/under data and the
counterclockwise slot order are part of the code, so mirror images and
reversed components get different keys.
"""
from __future__ import annotations

import hashlib
from collections import deque
from itertools import permutations

from .diagram import Arc, LinkDiagram


def _slot_rows(d: LinkDiagram) -> dict:
    """Per crossing: for each slot, (arc id, incoming, far endpoint of the arc)."""
    rows = {}
    for c in d.crossings:
        row = []
        for s in range(4):
            arc = d.arc_at(c.id, s)
            incoming = d.is_incoming(c.id, s)
            row.append((arc.id, incoming, arc.tail if incoming else arc.head))
        rows[c.id] = (c, row)
    return rows


def _walk(rows: dict, start: Arc, comp_of: dict) -> tuple:
    arc_label = {start.id: 0}
    seen = {start.head[0]}
    queue = deque([start.head])
    body = []
    while queue:
        c, ref = queue.popleft()
        crossing, row = rows[c]
        entries = []
        for k in range(4):
            aid, incoming, other = row[(ref + k) % 4]
            lab = arc_label.get(aid)
            if lab is None:
                lab = arc_label[aid] = len(arc_label)
            if other[0] not in seen:
                seen.add(other[0])
                queue.append(other)
            entries.append((lab, incoming))
        body.append((crossing.is_over(ref), tuple(entries)))
    comps = [0] * len(arc_label)
    for aid, lab in arc_label.items():
        comps[lab] = comp_of[aid]
    return (tuple(body), tuple(comps))


def _first_step(rows: dict, start: Arc) -> tuple:
    # the code of the first crossing reached, which leads every walk's encoding
    c, ref = start.head
    crossing, row = rows[c]
    labels = {start.id: 0}
    entries = []
    for k in range(4):
        aid, incoming, _ = row[(ref + k) % 4]
        entries.append((labels.setdefault(aid, len(labels)), incoming))
    return (crossing.is_over(ref), tuple(entries))


def _promising(rows: dict, arcs: list[Arc]) -> list[Arc]:
    firsts = [(_first_step(rows, a), a) for a in arcs]
    least = min(f for f, _ in firsts)
    return [a for f, a in firsts if f == least]


def _key_with(d: LinkDiagram, comp_map) -> tuple:
    rows = _slot_rows(d)
    comp_of = {a.id: comp_map[a.component] for a in d.arcs}
    by_piece: dict[int, list[Arc]] = {}
    loops = []
    for a in d.arcs:
        if a.is_loop:
            loops.append(comp_map[a.component])
        else:
            by_piece.setdefault(d.piece_of_crossing[a.head[0]], []).append(a)
    codes = sorted(
        min(_walk(rows, a, comp_of) for a in _promising(rows, arcs))
        for arcs in by_piece.values()
    )
    return (tuple(codes), tuple(sorted(loops)))


def canonical_key(d: LinkDiagram) -> tuple:
    if d.ordered:
        return (d.r, True, _key_with(d, {i: i for i in range(1, d.r + 1)}))
    best = min(
        _key_with(d, dict(zip(range(1, d.r + 1), perm)))
        for perm in permutations(range(1, d.r + 1))
    )
    return (d.r, False, best)


def digest(d: LinkDiagram) -> str:
    return hashlib.sha1(repr(canonical_key(d)).encode()).hexdigest()[:16]

"""PD text format and its JSON mirror.

Text format, one item per line (``#`` starts a comment)::

    link r=2 ordered=true
    X1[1,5,2,4] O:{1,3} I:{0,3}
    loop c=2 a=9 face=0
    comp 1=1

Slots are listed counterclockwise. ``O:`` names the slot pair carrying the
over-strand. ``I:`` (optional) names the incoming slot of each strand; a
component with no ``I:`` information is oriented so that its lowest arc
enters the crossing where it is first listed. ``comp <arc>=<k>`` labels the
component through an arc; unlabelled components take the remaining indices
in order of their lowest arc id.
"""
from __future__ import annotations

import json
import re

from .diagram import Arc, Crossing, LinkDiagram
from .errors import ParseError, ValidationError

_HEADER = re.compile(r"^link\b(.*)$")
_KV = re.compile(r"(\w+)=(\S+)")
_CROSSING = re.compile(
    r"^X(\d*)\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]"
    r"\s+O:\{\s*([0-3])\s*,\s*([0-3])\s*\}"
    r"(?:\s+I:\{\s*([0-3])\s*,\s*([0-3])\s*\})?\s*$"
)
_LOOP = re.compile(r"^loop\b(.*)$")
_COMP = re.compile(r"^comp\s+(\d+)\s*=\s*(\d+)\s*$")


def _bool(text: str) -> bool:
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise ParseError(f"bad boolean {text!r}")


def _axis(a: int, b: int, what: str) -> int:
    pair = {a, b}
    if pair == {0, 2}:
        return 0
    if pair == {1, 3}:
        return 1
    raise ParseError(f"{what} must be {{0,2}} or {{1,3}}, got {{{a},{b}}}")


def parse_pd(text: str) -> LinkDiagram:
    header: dict[str, str] = {}
    rows = []  # (crossing id, slots, over axis, incoming slots | None)
    loops = []  # dict with c, a, face
    labels: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _HEADER.match(line):
            header.update(dict(_KV.findall(m.group(1))))
        elif m := _CROSSING.match(line):
            cid = int(m.group(1)) if m.group(1) else len(rows) + 1
            slots = tuple(int(m.group(k)) for k in range(2, 6))
            over = _axis(int(m.group(6)), int(m.group(7)), "O:")
            incoming = None
            if m.group(8) is not None:
                x, y = int(m.group(8)), int(m.group(9))
                if x % 2 == y % 2:
                    raise ParseError(f"line {lineno}: I: needs one slot per strand")
                incoming = (x, y)
            rows.append((cid, slots, over, incoming))
        elif m := _LOOP.match(line):
            kv = dict(_KV.findall(m.group(1)))
            try:
                loops.append({k: int(v) for k, v in kv.items()})
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if "c" not in kv:
                raise ParseError(f"line {lineno}: loop needs c=<component>")
        elif m := _COMP.match(line):
            labels[int(m.group(1))] = int(m.group(2))
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}")

    try:
        r = int(header["r"]) if "r" in header else None
    except ValueError:
        raise ParseError(f"bad r= value {header['r']!r}") from None
    ordered = _bool(header.get("ordered", "true"))
    outer = int(header["outer"]) if "outer" in header else None
    return _assemble(rows, loops, labels, r, ordered, outer)


def _assemble(rows, loops, labels, r, ordered, outer) -> LinkDiagram:
    ids = [row[0] for row in rows]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate crossing ids")
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for cid, slots, _, _ in rows:
        for s, a in enumerate(slots):
            if a < 1:
                raise ValidationError("arc labels must be positive")
            occurrences.setdefault(a, []).append((cid, s))
    for a, occ in occurrences.items():
        if len(occ) != 2:
            raise ValidationError(f"arc {a} occurs {len(occ)} times (expected 2)")
    slot_arc = {(cid, s): a for cid, slots, _, _ in rows for s, a in enumerate(slots)}

    # Orientation: True = the arc enters the crossing at this slot.
    incoming: dict[tuple[int, int], bool] = {}
    fixed = {}
    for cid, _, _, inc in rows:
        if inc is not None:
            for s in range(4):
                fixed[(cid, s)] = s in inc
    order = [(cid, s) for cid, _, _, _ in rows for s in range(4)]
    position = {e: i for i, e in enumerate(order)}

    def cycle_from(end):
        # all endpoints on the component through `end`
        seen, stack = {end}, [end]
        while stack:
            c, s = stack.pop()
            a = slot_arc[(c, s)]
            for nb in ((c, (s + 2) % 4), *occurrences[a]):
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return seen

    cycles = []
    for end in order:
        if end in incoming:
            continue
        members = cycle_from(end)
        seeds = [e for e in members if e in fixed]
        if seeds:
            seed, value = seeds[0], fixed[seeds[0]]
        else:
            low = min(slot_arc[e] for e in members)
            seed, value = min(occurrences[low], key=position.__getitem__), True
        # propagate around the cycle
        stack = [(seed, value)]
        while stack:
            e, v = stack.pop()
            if e in incoming:
                if incoming[e] != v:
                    raise ValidationError(f"inconsistent orientation at {e}")
                continue
            incoming[e] = v
            c, s = e
            stack.append(((c, (s + 2) % 4), not v))
            for other in occurrences[slot_arc[e]]:
                if other != e:
                    stack.append((other, not v))
        for e in seeds:
            if incoming[e] != fixed[e]:
                raise ValidationError(f"I: flags disagree with orientation at {e}")
        cycles.append(sorted({slot_arc[e] for e in members}))

    arcs_ends = {}
    for a, occ in occurrences.items():
        head = next(e for e in occ if incoming[e])
        tail = next(e for e in occ if not incoming[e])
        arcs_ends[a] = (tail, head)

    used = set(occurrences)
    loop_arcs = []
    for lp in loops:
        aid = lp.get("a")
        if aid is None:
            aid = max(used | {0}) + 1
        if aid in used:
            raise ValidationError(f"loop arc id {aid} already used")
        used.add(aid)
        loop_arcs.append((aid, lp["c"], lp.get("face")))

    # component labels
    comp_of_cycle: dict[int, int] = {}
    for idx, cyc in enumerate(cycles):
        found = {labels[a] for a in cyc if a in labels}
        if len(found) > 1:
            raise ValidationError(f"conflicting comp labels on arcs {cyc}")
        if found:
            comp_of_cycle[idx] = found.pop()
    for a in labels:
        if a not in occurrences:
            raise ValidationError(f"comp label for unknown arc {a}")
    taken = set(comp_of_cycle.values()) | {c for _, c, _ in loop_arcs}
    total = len(cycles) + len(loop_arcs)
    if r is None:
        r = total
    if total != r:
        raise ValidationError(f"header says r={r} but the diagram has {total} components")
    free = iter(k for k in range(1, r + 1) if k not in taken)
    for idx in sorted(range(len(cycles)), key=lambda i: cycles[i][0]):
        if idx not in comp_of_cycle:
            try:
                comp_of_cycle[idx] = next(free)
            except StopIteration:
                raise ValidationError("more components than labels allow") from None
    comp_of_arc = {a: comp_of_cycle[i] for i, cyc in enumerate(cycles) for a in cyc}

    arcs = [Arc(a, comp_of_arc[a], t, h) for a, (t, h) in arcs_ends.items()]
    arcs += [Arc(aid, c, None, None, face) for aid, c, face in loop_arcs]
    crossings = [Crossing(cid, over) for cid, _, over, _ in rows]
    labels_used = [a.component for a in arcs]
    if len(set(labels_used)) != r:
        raise ValidationError("two components share an index or an index is unused")
    return LinkDiagram.build(r, crossings, arcs, ordered, outer)


def _component_cycles(d: LinkDiagram) -> list[list[int]]:
    return [[a.id for a in d.component_arcs(i)] for i in range(1, d.r + 1)]


def serialize_pd(d: LinkDiagram) -> str:
    header = f"link r={d.r} ordered={'true' if d.ordered else 'false'}"
    if d.outer_face is not None:
        header += f" outer={d.outer_face}"
    lines = [header]
    for c in d.crossings:
        slots = [d.arc_at(c.id, s).id for s in range(4)]
        inc = [s for s in range(4) if d.is_incoming(c.id, s)]
        inc.sort(key=lambda s: s % 2)
        over = "{0,2}" if c.over == 0 else "{1,3}"
        lines.append(
            f"X{c.id}[{','.join(map(str, slots))}] O:{over} I:{{{inc[0]},{inc[1]}}}"
        )
    for a in d.arcs:
        if a.is_loop:
            extra = f" face={a.face}" if a.face is not None else ""
            lines.append(f"loop c={a.component} a={a.id}{extra}")
    for i in range(1, d.r + 1):
        first = min(a.id for a in d.arcs if a.component == i)
        if not d.arc_by_id[first].is_loop:
            lines.append(f"comp {first}={i}")
    return "\n".join(lines) + "\n"


def to_json(d: LinkDiagram) -> dict:
    crossings = []
    for c in d.crossings:
        crossings.append(
            {
                "id": c.id,
                "slots": [d.arc_at(c.id, s).id for s in range(4)],
                "over": [0, 2] if c.over == 0 else [1, 3],
                "incoming": sorted(
                    (s for s in range(4) if d.is_incoming(c.id, s)), key=lambda s: s % 2
                ),
            }
        )
    return {
        "schema": 1,
        "r": d.r,
        "ordered": d.ordered,
        "outer": d.outer_face,
        "crossings": crossings,
        "loops": [
            {"arc": a.id, "component": a.component, "face": a.face}
            for a in d.arcs
            if a.is_loop
        ],
        "components": {
            str(min(a.id for a in d.arcs if a.component == i)): i for i in range(1, d.r + 1)
        },
    }


def from_json(data: dict | str) -> LinkDiagram:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
    try:
        rows = []
        for c in data["crossings"]:
            over = _axis(*c["over"], "over")
            inc = tuple(c["incoming"]) if c.get("incoming") is not None else None
            rows.append((int(c["id"]), tuple(int(x) for x in c["slots"]), over, inc))
        loops = [
            {"a": lp.get("arc"), "c": lp["component"], "face": lp.get("face")}
            for lp in data.get("loops", [])
        ]
        for lp in loops:
            if lp["a"] is None:
                del lp["a"]
            if lp["face"] is None:
                del lp["face"]
        labels = {int(k): int(v) for k, v in data.get("components", {}).items()}
        labels = {a: c for a, c in labels.items() if a not in {lp.get("a") for lp in loops}}
        return _assemble(
            rows, loops, labels, data.get("r"), bool(data.get("ordered", True)), data.get("outer")
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON diagram: {exc}") from None

"""Bounded shortest-path search over Reidemeister moves, plus random walks.

States are diagrams up to relabeling (their canonical digest). Costs are
compared lexicographically: (RIIIα moves, total moves) when minimizing α
moves, (total moves, RIIIα moves) otherwise. The default heuristic is the
OU-number distance to the target, which never overestimates the number of
RIIIα moves still needed, so the first time the target is popped its cost is
optimal among sequences that stay within the caps.
"""
from __future__ import annotations

import enum
import heapq
import random
from collections import Counter
from dataclasses import dataclass, field, replace

from .bounds import lower_bound_ordered, lower_bound_unordered
from .canonical import canonical_key, digest
from .diagram import LinkDiagram, ou_vector
from .errors import BadParams, ComponentMismatch, InternalError, NonIntegralBound
from .moves import MoveKind, MoveRecord, MoveSite, apply_move, enumerate_moves, record_move

__all__ = [
    "Objective",
    "SearchConfig",
    "SearchStatus",
    "MoveSequence",
    "SearchResult",
    "canonical_key",
    "connect",
    "fuzz_walk",
    "random_walk",
]


class Objective(enum.Enum):
    MIN_ALPHA_MOVES = "alpha"
    MIN_TOTAL_MOVES = "total"


@dataclass(frozen=True)
class SearchConfig:
    max_crossings: int = 8
    max_states: int = 100_000
    allow_increasing: bool = True
    objective: Objective = Objective.MIN_ALPHA_MOVES
    use_heuristic: bool = True

    def __post_init__(self):
        if self.max_crossings < 0 or self.max_states < 1:
            raise BadParams("search caps must be positive")


@dataclass(frozen=True)
class MoveSequence:
    start: LinkDiagram
    records: tuple[MoveRecord, ...] = ()

    @property
    def alpha_count(self) -> int:
        return sum(r.alpha for r in self.records)

    def __len__(self) -> int:
        return len(self.records)

    def counts(self) -> dict[str, int]:
        c = Counter(r.site.kind.value for r in self.records)
        c["R3_alpha"] = self.alpha_count
        c["R3_non_alpha"] = c["R3"] - c["R3_alpha"]
        c["total"] = len(self.records)
        return {k: c[k] for k in sorted(c)}

    def replay(self) -> LinkDiagram:
        """Re-apply every move from the start, checking each recorded digest."""
        d = self.start
        for i, rec in enumerate(self.records):
            if digest(d) != rec.before:
                raise InternalError(f"move {i} starts from an unexpected diagram")
            d = apply_move(d, rec.site)
            if digest(d) != rec.after:
                raise InternalError(f"move {i} ends at an unexpected diagram")
        return d

    def to_dict(self) -> dict:
        return {
            "start": digest(self.start),
            "end": self.records[-1].after if self.records else digest(self.start),
            "counts": self.counts(),
            "moves": [
                {**r.site.describe(), "before": r.before, "after": r.after,
                 "delta_phi": list(r.delta_phi)}
                for r in self.records
            ],
        }

    def log_lines(self) -> list[str]:
        out = []
        for i, r in enumerate(self.records, 1):
            kind = r.site.kind.value
            if r.site.kind is MoveKind.R3:
                kind += "α" if r.alpha else " (non-α)"
            out.append(f"{i:3d}. {kind} at {r.site.location}  Δphi={list(r.delta_phi)}")
        return out


class SearchStatus(enum.Enum):
    FOUND = "FOUND"
    NOT_FOUND_WITHIN_CAPS = "NOT_FOUND_WITHIN_CAPS"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    sequence: MoveSequence | None
    lower_bound: int | None
    states_seen: int

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def optimal_certified(self) -> bool:
        """The α count meets the OU-number lower bound, so no sequence does better."""
        return (
            self.found
            and self.lower_bound is not None
            and self.sequence.alpha_count == self.lower_bound
        )

    def to_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "lower_bound": self.lower_bound,
            "optimal_certified": self.optimal_certified,
            "states_seen": self.states_seen,
        }
        if self.sequence is not None:
            out["sequence"] = self.sequence.to_dict()
        return out


def _alpha_distance(phi, target, ordered: bool) -> int:
    # ceil of the bound, so it stays admissible for inputs of different links
    if ordered:
        n = sum(abs(x - y) for x, y in zip(phi, target))
    else:
        n = abs(sum(phi) - sum(target))
    return (n + 1) // 2


def _bound(a: LinkDiagram, b: LinkDiagram, ordered: bool) -> int | None:
    try:
        return lower_bound_ordered(a, b) if ordered else lower_bound_unordered(a, b)
    except NonIntegralBound:
        return None


def connect(d: LinkDiagram, target: LinkDiagram, cfg: SearchConfig | None = None) -> SearchResult:
    """Cheapest move sequence from ``d`` to a relabeling of ``target`` within caps."""
    cfg = cfg or SearchConfig()
    if d.r != target.r:
        raise ComponentMismatch(f"{d.r} components vs {target.r}")
    ordered = d.ordered and target.ordered
    if not ordered:
        d, target = replace(d, ordered=False), replace(target, ordered=False)
    goal = digest(target)
    goal_phi = ou_vector(target)
    goal_n = target.crossing_count
    alpha_first = cfg.objective is Objective.MIN_ALPHA_MOVES

    def estimate(phi, n) -> tuple[int, int]:
        if not cfg.use_heuristic:
            return (0, 0)
        h_alpha = _alpha_distance(phi, goal_phi, ordered)
        h_total = max(h_alpha, (abs(n - goal_n) + 1) // 2)
        return (h_alpha, h_total) if alpha_first else (h_total, h_alpha)

    def step_cost(g, alpha: bool):
        a, t = (1 if alpha else 0), 1
        return (g[0] + a, g[1] + t) if alpha_first else (g[0] + t, g[1] + a)

    start_key = digest(d)
    # key -> (cost, diagram, parent key, site)
    best: dict[str, tuple] = {start_key: ((0, 0), d, None, None)}
    h0 = estimate(ou_vector(d), d.crossing_count)
    heap = [(h0, start_key)]
    closed: set[str] = set()
    while heap:
        _, key = heapq.heappop(heap)
        if key in closed:
            continue
        closed.add(key)
        g, cur, _, _ = best[key]
        if key == goal:
            return SearchResult(
                SearchStatus.FOUND, _path(best, key), _bound(d, target, ordered), len(best)
            )
        sites = enumerate_moves(cur, cfg.allow_increasing, cfg.max_crossings)
        for site in sites:
            nxt = apply_move(cur, site)
            if nxt.crossing_count > cfg.max_crossings:
                continue
            k = digest(nxt)
            if k in closed:
                continue
            ng = step_cost(g, bool(site.alpha))
            old = best.get(k)
            if old is not None and old[0] <= ng:
                continue
            if old is None and len(best) >= cfg.max_states:
                return SearchResult(
                    SearchStatus.NOT_FOUND_WITHIN_CAPS, None, _bound(d, target, ordered), len(best)
                )
            best[k] = (ng, nxt, key, site)
            h = estimate(ou_vector(nxt), nxt.crossing_count)
            heapq.heappush(heap, ((ng[0] + h[0], ng[1] + h[1]), k))
    return SearchResult(
        SearchStatus.NOT_FOUND_WITHIN_CAPS, None, _bound(d, target, ordered), len(best)
    )


def _path(best: dict, key: str) -> MoveSequence:
    steps = []
    while best[key][2] is not None:
        _, _, parent, site = best[key]
        steps.append((parent, site))
        key = parent
    start = best[key][1]
    records = []
    cur = start
    for parent, site in reversed(steps):
        cur, rec = record_move(cur, site)
        records.append(rec)
    return MoveSequence(start, tuple(records))


def _pick(rng: random.Random, sites: list[MoveSite]) -> MoveSite:
    # choose the move kind first so the many RII pokes do not drown out the rest
    kinds = sorted({s.kind for s in sites}, key=lambda k: k.value)
    kind = rng.choice(kinds)
    return rng.choice([s for s in sites if s.kind is kind])


def random_walk(
    d: LinkDiagram,
    steps: int,
    seed: int | None = None,
    *,
    allow_increasing: bool = True,
    max_crossings: int | None = None,
) -> tuple[LinkDiagram, MoveSequence]:
    """Apply up to ``steps`` random moves; stops early when no move applies."""
    if steps < 0:
        raise BadParams("steps must be non-negative")
    rng = random.Random(seed)
    if max_crossings is None:
        max_crossings = d.crossing_count + 4
    cur = d
    records = []
    for _ in range(steps):
        sites = enumerate_moves(cur, allow_increasing, max_crossings)
        if not sites:
            break
        cur, rec = record_move(cur, _pick(rng, sites))
        records.append(rec)
    return cur, MoveSequence(d, tuple(records))


def fuzz_walk(
    d: LinkDiagram,
    steps: int,
    seed: int | None = None,
    **kwargs,
) -> list[tuple[MoveRecord, tuple[int, ...]]]:
    """Random walk transcript: each move with the Φ vector right after it."""
    _, seq = random_walk(d, steps, seed, **kwargs)
    out = []
    phi = ou_vector(d)
    for rec in seq.records:
        phi = tuple(x + y for x, y in zip(phi, rec.delta_phi))
        out.append((rec, phi))
    return out

"""Lower bounds on the number of RIIIα moves between two diagrams.

Every function takes either two diagrams or two bare inputs: a vector of
OU numbers, or a vector of non-self OU words (as shipped for D_{n,k}).
Bounds presuppose that both inputs are diagrams of the same link; when the
OU numbers rule that out by parity, :class:`NonIntegralBound` is raised
rather than silently rounding.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

from .diagram import LinkDiagram, non_self_ou, ou_vector, total_linking
from .errors import BadComponent, BadParams, ComponentMismatch, NonIntegralBound
from .ousequence import CyclicOUSequence, count_letters, phi_cyclic

CAVEAT = "valid under the hypothesis that D and D′ represent the same link"

BoundInput = Union[LinkDiagram, Sequence[int], Sequence[CyclicOUSequence]]


class Parity(enum.Enum):
    NONE = "none"
    EVEN_ALPHA_COUNT = "even_alpha_count"


def phi_of(x: BoundInput) -> tuple[int, ...]:
    """OU number vector of a diagram, a Φ vector or a vector of cyclic words."""
    if isinstance(x, LinkDiagram):
        return ou_vector(x)
    out = []
    for v in x:
        if isinstance(v, CyclicOUSequence):
            out.append(phi_cyclic(v))
        elif isinstance(v, int) and not isinstance(v, bool) and v >= 0:
            out.append(v)
        else:
            raise BadParams(f"expected a non-negative integer or cyclic word, got {v!r}")
    return tuple(out)


def _pair(a: BoundInput, b: BoundInput) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pa, pb = phi_of(a), phi_of(b)
    if len(pa) != len(pb):
        raise ComponentMismatch(f"{len(pa)} components vs {len(pb)}")
    return pa, pb


def _require_ordered(*xs: BoundInput) -> None:
    for x in xs:
        if isinstance(x, LinkDiagram) and not x.ordered:
            raise BadParams("an ordered bound needs diagrams with ordered components")


def _half(numerator: int, what: str) -> int:
    if numerator % 2:
        raise NonIntegralBound(
            f"{what} is odd ({numerator}); the inputs cannot be diagrams of the same link"
        )
    return numerator // 2


def per_component_bound(a: BoundInput, b: BoundInput, j: int) -> int:
    """Least number of RIIIα moves whose middle segment lies on component j."""
    _require_ordered(a, b)
    pa, pb = _pair(a, b)
    if not 1 <= j <= len(pa):
        raise BadComponent(f"component {j} out of range 1..{len(pa)}")
    return _half(abs(pb[j - 1] - pa[j - 1]), f"|ΔΦ| of component {j}")


def lower_bound_ordered(a: BoundInput, b: BoundInput) -> int:
    """½ Σ |Φ(K'_i) − Φ(K_i)| for ordered components."""
    _require_ordered(a, b)
    pa, pb = _pair(a, b)
    return sum(per_component_bound(pa, pb, j) for j in range(1, len(pa) + 1))


def lower_bound_unordered(a: BoundInput, b: BoundInput) -> int:
    """½ |Σ Φ(K'_i) − Σ Φ(K_i)|; needs no matching of components."""
    pa, pb = _pair(a, b)
    return _half(abs(sum(pb) - sum(pa)), "|ΔΣΦ|")


def multiset_obstruction(a: BoundInput, b: BoundInput) -> bool:
    """True iff the Φ multisets differ, so at least one RIIIα move is needed."""
    pa, pb = _pair(a, b)
    return Counter(pa) != Counter(pb)


def _linking_parities_even(x: BoundInput, phi: tuple[int, ...]) -> bool:
    if isinstance(x, LinkDiagram):
        return all(total_linking(x, i) % 2 == 0 for i in range(1, x.r + 1))
    # Φ(K_i) and the total linking number of K_i have the same parity
    return all(p % 2 == 0 for p in phi)


def parity_constraint(a: BoundInput, b: BoundInput) -> Parity:
    """EVEN_ALPHA_COUNT when every total linking number is even and Φ agrees componentwise."""
    pa, pb = _pair(a, b)
    if pa != pb:
        return Parity.NONE
    if not (_linking_parities_even(a, pa) and _linking_parities_even(b, pb)):
        return Parity.NONE
    return Parity.EVEN_ALPHA_COUNT


@dataclass(frozen=True)
class BoundReport:
    ordered_bound: int | None
    unordered_bound: int
    per_component_bounds: tuple[int, ...] | None
    multiset_obstruction: bool
    parity_constraint: Parity
    phi_vectors: tuple[tuple[int, ...], tuple[int, ...]]
    caveat: str = CAVEAT

    def to_dict(self) -> dict:
        return {
            "ordered_bound": self.ordered_bound,
            "unordered_bound": self.unordered_bound,
            "per_component_bounds": (
                None if self.per_component_bounds is None else list(self.per_component_bounds)
            ),
            "multiset_obstruction": self.multiset_obstruction,
            "parity_constraint": self.parity_constraint.value,
            "phi_vectors": [list(v) for v in self.phi_vectors],
            "caveat": self.caveat,
        }


def bound_report(a: BoundInput, b: BoundInput) -> BoundReport:
    """All bounds at once; the ordered ones are omitted for unordered diagrams."""
    pa, pb = _pair(a, b)
    ordered = not any(isinstance(x, LinkDiagram) and not x.ordered for x in (a, b))
    per = None
    total = None
    if ordered:
        per = tuple(per_component_bound(pa, pb, j) for j in range(1, len(pa) + 1))
        total = sum(per)
    return BoundReport(
        ordered_bound=total,
        unordered_bound=lower_bound_unordered(pa, pb),
        per_component_bounds=per,
        multiset_obstruction=multiset_obstruction(pa, pb),
        parity_constraint=parity_constraint(a, b),
        phi_vectors=(pa, pb),
    )


@dataclass(frozen=True)
class LemmaReport:
    component: int
    total_linking: int
    count_o: int
    count_u: int
    phi: int

    @property
    def magnitude_ok(self) -> bool:
        return abs(self.total_linking) <= min(self.count_o, self.count_u)

    @property
    def o_parity_ok(self) -> bool:
        return (self.total_linking - self.count_o) % 2 == 0

    @property
    def phi_parity_ok(self) -> bool:
        return (self.total_linking - self.phi) % 2 == 0

    @property
    def passed(self) -> bool:
        return self.magnitude_ok and self.o_parity_ok and self.phi_parity_ok

    def to_dict(self) -> dict:
        return {
            "component": self.component,
            "total_linking": self.total_linking,
            "count_O": self.count_o,
            "count_U": self.count_u,
            "phi": self.phi,
            "magnitude_ok": self.magnitude_ok,
            "o_parity_ok": self.o_parity_ok,
            "phi_parity_ok": self.phi_parity_ok,
            "passed": self.passed,
        }


def lemma_checks(d: LinkDiagram, i: int) -> LemmaReport:
    """Check |Σ lk| ≤ min(#O, #U), Σ lk ≡ #O and Σ lk ≡ Φ (mod 2) for component i."""
    f = non_self_ou(d, i)  # raises BadComponent
    n_o, n_u = count_letters(f)
    return LemmaReport(i, total_linking(d, i), n_o, n_u, phi_cyclic(f))

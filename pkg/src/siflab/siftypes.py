"""Interleaving-function types and closure under a type.

A type constrains, per tuple component (high input, low input, high
output, low output), where the output trace's view must come from: the
first argument (1), the second argument (2), or anywhere (0, free).
There are 3^4 = 81 types.  A trace set is closed under a type when every
ordered pair of members has some member matching the constrained views;
this matches closure under the (infinite) set of functions obeying the
constraints, because such a set contains every constraint-obeying
function and the witness may vary per pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import FormatError
from .properties import PropertyKind, StrategySystem, check_nos, check_property, union_system
from .traces import HI_VIEW, HO_VIEW, LI_VIEW, LO_VIEW, Component, System, view


class Slot(IntEnum):
    FREE = 0
    FIRST = 1
    SECOND = 2


_SLOT_COMPONENTS = (
    ("in_h", HI_VIEW),
    ("in_l", LI_VIEW),
    ("out_h", HO_VIEW),
    ("out_l", LO_VIEW),
)


@dataclass(frozen=True, order=True)
class SifType:
    """Four copy slots: inputs and outputs, high and low."""

    in_h: int
    in_l: int
    out_h: int
    out_l: int

    def __post_init__(self):
        for name, _ in _SLOT_COMPONENTS:
            if getattr(self, name) not in (0, 1, 2):
                raise FormatError(f"slot {name} must be 0, 1 or 2")

    @property
    def slots(self) -> tuple[int, int, int, int]:
        return (self.in_h, self.in_l, self.out_h, self.out_l)

    def constraints(self) -> tuple[tuple[Component, int], ...]:
        """The non-free slots as (component view, argument index) pairs."""
        return tuple(
            (comp, getattr(self, name)) for name, comp in _SLOT_COMPONENTS if getattr(self, name) != Slot.FREE
        )

    def __str__(self) -> str:
        return format_type(self)


_TYPE_RE = re.compile(r"^([012]):([012])/([012]):([012])$")


def parse_type(literal: str) -> SifType:
    """Parse the CLI literal ``"a:b/c:d"`` (inputs high:low / outputs high:low)."""
    m = _TYPE_RE.match(literal.strip())
    if not m:
        raise FormatError(f'type literal must look like "1:2/0:2", got {literal!r}')
    a, b, c, d = (int(g) for g in m.groups())
    return SifType(a, b, c, d)


def format_type(t: SifType) -> str:
    return f"{t.in_h}:{t.in_l}/{t.out_h}:{t.out_l}"


def enumerate_types() -> tuple[SifType, ...]:
    """All 81 types in lexicographic slot order."""
    return tuple(SifType(a, b, c, d) for a, b, c, d in product((0, 1, 2), repeat=4))


def swap_type(t: SifType) -> SifType:
    """Exchange first and second in every slot; an involution."""
    flip = {0: 0, 1: 2, 2: 1}
    return SifType(flip[t.in_h], flip[t.in_l], flip[t.out_h], flip[t.out_l])


# Canonical types for the three pair-quantified properties.  The RGNI
# choice mirrors the GNI one by symmetry and is validated exhaustively
# over the enumerated universe before anything relies on it.
SEP_TYPE = SifType(1, 2, 1, 2)
GNI_TYPE = SifType(1, 2, 0, 2)
RGNI_TYPE = SifType(1, 2, 1, 0)

# Types with no second-argument slot; a pair's first trace matches all of
# them, so every trace set whatsoever is closed under these (and, by the
# swap rule, under their mirrors).
ALL_SYSTEMS_TYPES = tuple(t for t in enumerate_types() if all(s in (0, 1) for s in t.slots))


def closed_under_type(s: System, t: SifType) -> bool:
    """Pair-quantified closure of ``s`` under ``t``."""
    cons = t.constraints()
    if not cons:
        return True  # any member witnesses any pair; vacuous when empty
    keys = {tuple(view(x, comp) for comp, _ in cons) for x in s.members}
    firsts = s.members
    for a in firsts:
        for b in firsts:
            req = tuple(view(a if which == Slot.FIRST else b, comp) for comp, which in cons)
            if req not in keys:
                return False
    return True


def represents(t: SifType, kind: PropertyKind, universe: Iterable[System]) -> bool:
    """True when property membership and closure under ``t`` coincide on every system."""
    for s in universe:
        if check_property(kind, s) != closed_under_type(s, t):
            return False
    return True


REFUTED_HOLDS_NOT_CLOSED = "property-holds-not-closed"
REFUTED_CLOSED_NOT_HOLDS = "closed-property-fails"
UNREFUTED = "unrefuted"


@dataclass(frozen=True)
class Refutation:
    """Verdict for one type: a disagreement witness, or none found."""

    type: SifType
    status: str
    witness: str | None = None

    @property
    def refuted(self) -> bool:
        return self.status != UNREFUTED


@dataclass(frozen=True)
class RefutationReport:
    """One verdict per type, covering all 81 exactly once."""

    entries: tuple[Refutation, ...]

    def __post_init__(self):
        if len(self.entries) != 81:
            raise ValueError("a refutation report covers all 81 types")

    @property
    def all_refuted(self) -> bool:
        return all(e.refuted for e in self.entries)

    @property
    def unrefuted(self) -> tuple[SifType, ...]:
        return tuple(e.type for e in self.entries if not e.refuted)

    def entry(self, t: SifType) -> Refutation:
        for e in self.entries:
            if e.type == t:
                return e
        raise KeyError(t)

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            if e.refuted:
                out.append(f"{format_type(e.type)}  refuted by {e.witness} ({e.status})")
            else:
                out.append(f"{format_type(e.type)}  UNREFUTED")
        return out


SystemLike = "System | StrategySystem"


def as_plain_system(member) -> System:
    """The trace set closure checks run on (union for strategy systems)."""
    if isinstance(member, StrategySystem):
        return union_system(member)
    if isinstance(member, System):
        return member
    raise TypeError(f"expected a system or strategy system, got {type(member).__name__}")


def property_predicate(kind: PropertyKind | str) -> Callable:
    """A predicate over pool members for the named property (NOS included)."""
    if str(kind) == "nos":
        return lambda member: check_nos(member)
    try:
        k = PropertyKind(kind)
    except ValueError:
        raise FormatError(f"no pool predicate for property {kind!r}") from None
    return lambda member: check_property(k, as_plain_system(member))


def refute_all_types(
    predicate: Callable,
    pool: Mapping[str, object] | Sequence[tuple[str, object]],
    extension: Iterable[tuple[str, object]] = (),
    mirror: bool = True,
) -> RefutationReport:
    """Search, per type, for a pool member where the property and closure
    under the type disagree.

    ``pool`` maps labels to systems or strategy systems; ``extension`` is
    consulted lazily, only for types the pool leaves unrefuted.  With
    ``mirror`` enabled each witness also settles the slot-swapped type,
    which is sound because closure is invariant under the swap.
    """
    items = list(pool.items()) if isinstance(pool, Mapping) else list(pool)
    prop_cache = {label: bool(predicate(member)) for label, member in items}
    plain = {label: as_plain_system(member) for label, member in items}

    verdicts: dict[SifType, Refutation] = {}

    def try_refute(t: SifType, label: str, holds: bool, system: System) -> Refutation | None:
        closed = closed_under_type(system, t)
        if closed == holds:
            return None
        status = REFUTED_HOLDS_NOT_CLOSED if holds else REFUTED_CLOSED_NOT_HOLDS
        return Refutation(t, status, label)

    for t in enumerate_types():
        if t in verdicts:
            continue
        found = None
        for label, member in items:
            found = try_refute(t, label, prop_cache[label], plain[label])
            if found:
                break
        verdicts[t] = found or Refutation(t, UNREFUTED)
        if mirror:
            tm = swap_type(t)
            if tm != t and tm not in verdicts:
                if found:
                    verdicts[tm] = Refutation(tm, found.status, found.witness)
                else:
                    verdicts[tm] = Refutation(tm, UNREFUTED)

    remaining = [t for t, v in verdicts.items() if not v.refuted]
    if remaining:
        for label, member in extension:
            holds = bool(predicate(member))
            system = as_plain_system(member)
            still = []
            for t in remaining:
                found = try_refute(t, label, holds, system)
                if found:
                    verdicts[t] = found
                    if mirror:
                        tm = swap_type(t)
                        if tm != t and not verdicts[tm].refuted:
                            verdicts[tm] = Refutation(tm, found.status, found.witness)
                else:
                    still.append(t)
            remaining = [t for t in still if not verdicts[t].refuted]
            if not remaining:
                break

    return RefutationReport(tuple(verdicts[t] for t in enumerate_types()))

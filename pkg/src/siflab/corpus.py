"""Seeded corpora for the equivalence and implication suites.

Everything here is deterministic given the seed, so verification runs
and tests see identical inputs.  Three kinds of material are produced:
strategy systems generated from random finite-state protocols, system
collections for the pinning-function suite, and asynchronous event
systems for the insertion-property suite.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

from .errors import ProtocolError, RunExplosion
from .families import ExtensionalSif, verify_zigzag_collection
from .properties import StrategySystem, check_injectivity
from .strategies import (
    GenerationMode,
    SystemProtocol,
    UserProtocol,
    build_strategy_system,
    protocols_from_obj,
)
from .traces import LassoTrace, System, binary_space
from .zl import AsyncSystem, EventDecl, ExtensionalQ, lles

DEFAULT_SEED = 74911

_BITS = ("0", "1")


# ---------------------------------------------------------------- protocols


def constant_user(bit: str) -> UserProtocol:
    return UserProtocol(
        ("s",),
        "s",
        {"s": (bit,)},
        {("s", i, o): "s" for i in _BITS for o in _BITS},
    )


def copy_low_machine() -> SystemProtocol:
    """Both outputs repeat the current low input."""
    return SystemProtocol(
        ("m",),
        "m",
        {("m", hi, li): ((li, li),) for hi in _BITS for li in _BITS},
        {("m", hi, li, ho, lo): "m" for hi in _BITS for li in _BITS for ho in _BITS for lo in _BITS},
    )


def echo_high_machine() -> SystemProtocol:
    """High output repeats the high input; low output stays silent."""
    return SystemProtocol(
        ("m",),
        "m",
        {("m", hi, li): ((hi, "0"),) for hi in _BITS for li in _BITS},
        {("m", hi, li, ho, lo): "m" for hi in _BITS for li in _BITS for ho in _BITS for lo in _BITS},
    )


def leak_high_machine() -> SystemProtocol:
    """Both outputs repeat the high input; the low user sees everything."""
    return SystemProtocol(
        ("m",),
        "m",
        {("m", hi, li): ((hi, hi),) for hi in _BITS for li in _BITS},
        {("m", hi, li, ho, lo): "m" for hi in _BITS for li in _BITS for ho in _BITS for lo in _BITS},
    )


def alternating_user() -> UserProtocol:
    return UserProtocol(
        ("a", "b"),
        "a",
        {"a": ("0",), "b": ("1",)},
        {(s, i, o): ("b" if s == "a" else "a") for s in ("a", "b") for i in _BITS for o in _BITS},
    )


def designed_strategy_systems() -> list[StrategySystem]:
    """Hand-built protocol sets covering the interesting verdict corners."""
    from .fixtures import echo_protocols

    out = []
    ps, pl, hs = protocols_from_obj(echo_protocols())
    out.append(build_strategy_system(ps, pl, hs, GenerationMode.exact()))

    # union satisfies separability; NOS holds
    out.append(
        build_strategy_system(
            echo_high_machine(),
            constant_user("0"),
            {"H0": constant_user("0"), "H1": constant_user("1")},
            GenerationMode.exact(),
        )
    )
    # the machine leaks the high input into the low output; NOS fails
    out.append(
        build_strategy_system(
            leak_high_machine(),
            constant_user("0"),
            {"H0": constant_user("0"), "H1": constant_user("1")},
            GenerationMode.exact(),
        )
    )
    # three protocols, one of them period two
    out.append(
        build_strategy_system(
            copy_low_machine(),
            constant_user("1"),
            {"H0": constant_user("0"), "H1": constant_user("1"), "H2": alternating_user()},
            GenerationMode.exact(),
        )
    )
    return out


def _random_user(rng: random.Random) -> UserProtocol:
    states = tuple(f"u{i}" for i in range(rng.randint(1, 2)))
    emit = {
        s: _BITS if rng.random() < 0.25 else (rng.choice(_BITS),)
        for s in states
    }
    update = {(s, i, o): rng.choice(states) for s in states for i in _BITS for o in _BITS}
    return UserProtocol(states, states[0], emit, update)


def _random_machine(rng: random.Random) -> SystemProtocol:
    states = tuple(f"m{i}" for i in range(rng.randint(1, 2)))
    pairs = [(a, b) for a in _BITS for b in _BITS]
    output = {}
    for key in product(states, _BITS, _BITS):
        if rng.random() < 0.2:
            output[key] = tuple(rng.sample(pairs, 2))
        else:
            output[key] = (rng.choice(pairs),)
    update = {
        (s, hi, li, ho, lo): rng.choice(states)
        for s in states
        for hi in _BITS
        for li in _BITS
        for ho in _BITS
        for lo in _BITS
    }
    return SystemProtocol(states, states[0], output, update)


def strategy_corpus(
    count: int = 120,
    seed: int = DEFAULT_SEED,
    max_family_size: int = 8,
    max_protocols: int = 3,
) -> list[StrategySystem]:
    """Injective strategy systems generated from finite-state protocols.

    Starts with the designed systems (so both NOS verdicts and a
    separable union are always present), then draws random protocol
    sets, preferring exact lasso generation and falling back to bounded
    runs when a cycle carries a choice.
    """
    rng = random.Random(seed)
    out = designed_strategy_systems()
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200 * count:
            raise RuntimeError("strategy corpus generation stalled; loosen the filters")
        hs = {f"H{i}": _random_user(rng) for i in range(rng.randint(1, max_protocols))}
        pl = _random_user(rng)
        ps = _random_machine(rng)
        try:
            try:
                ss = build_strategy_system(ps, pl, hs, GenerationMode.exact())
            except RunExplosion:
                ss = build_strategy_system(ps, pl, hs, GenerationMode.bounded(3))
        except ProtocolError:
            continue
        if any(len(fam) > max_family_size for _, fam in ss.families):
            continue
        if not check_injectivity(ss):
            continue
        out.append(ss)
    return out[:count]


# ----------------------------------------------------- pinning collections


def _standard_traces() -> list[LassoTrace]:
    from .enumeration import standard_universe

    _, traces = standard_universe()
    return list(traces)


def disjoint_collection(block_sizes: list[int], seed: int = DEFAULT_SEED) -> list[System]:
    """Pairwise disjoint systems partitioning the 16-trace universe."""
    traces = _standard_traces()
    if sum(block_sizes) > len(traces) or any(b < 1 for b in block_sizes):
        raise ValueError("block sizes must be positive and fit the universe")
    rng = random.Random(seed)
    rng.shuffle(traces)
    space = binary_space()
    out = []
    at = 0
    for size in block_sizes:
        out.append(System(space, traces[at : at + size]))
        at += size
    return out


def disjoint_ten() -> list[System]:
    """A fixed ten-member pairwise disjoint collection."""
    return disjoint_collection([2, 2, 2, 2, 2, 2, 1, 1, 1, 1], seed=7)


def zigzag_corpus(count: int = 24, seed: int = DEFAULT_SEED) -> tuple[list[list[System]], int]:
    """Collections on which the pinning-function suite is exercised.

    Half are pairwise disjoint partitions (these provably satisfy both
    the uniqueness and the subset-representation claims); the rest are
    random overlapping draws kept only when the exhaustive checker
    confirms both claims.  Returns the collections and the number of
    rejected draws: overlapping members can defeat subset
    representation, so rejections are expected and reported rather than
    hidden.
    """
    rng = random.Random(seed)
    traces = _standard_traces()
    space = binary_space()
    collections: list[list[System]] = []
    rejected = 0
    half = count // 2
    while len(collections) < half:
        k = rng.randint(2, 8)
        sizes = []
        left = len(traces)
        for i in range(k):
            # Leave at least one trace for each block still to come.
            size = rng.randint(1, min(4, left - (k - i - 1)))
            sizes.append(size)
            left -= size
        collections.append(disjoint_collection(sizes, seed=rng.randrange(1 << 30)))
    while len(collections) < count:
        k = rng.randint(3, 6)
        members = []
        seen = set()
        while len(members) < k:
            size = rng.randint(1, 5)
            s = System(space, rng.sample(traces, size))
            if s.traces not in seen:
                seen.add(s.traces)
                members.append(s)
        report = verify_zigzag_collection(members)
        if report.uniqueness_ok and report.representation_ok:
            collections.append(members)
        else:
            rejected += 1
    return collections, rejected


# --------------------------------------------------------- async material


def enumerate_event_decls(max_events: int = 3) -> list[EventDecl]:
    """All declarations with 1..max_events events and every level split."""
    decls = []
    for k in range(1, max_events + 1):
        names = tuple(f"e{i}" for i in range(1, k + 1))
        for levels in product("LH", repeat=k):
            decls.append(EventDecl(tuple(zip(names, levels))))
    return decls


def enumerate_event_traces(decl: EventDecl, max_len: int = 3) -> list[tuple[str, ...]]:
    out: list[tuple[str, ...]] = []
    for n in range(max_len + 1):
        out.extend(product(decl.names, repeat=n))
    return out


def enumerate_async_systems(
    max_events: int = 3,
    max_len: int = 3,
    cap: int = 60000,
    include_empty: bool = True,
) -> Iterator[AsyncSystem]:
    """Deterministic capped enumeration of event systems.

    The cap is split evenly across event declarations; within each, the
    subsets of the length-sorted trace list are walked in mask order
    until the quota runs out.
    """
    decls = enumerate_event_decls(max_events)
    quota = max(1, cap // len(decls))
    for decl in decls:
        traces = enumerate_event_traces(decl, max_len)
        total = 1 << len(traces)
        start = 0 if include_empty else 1
        for mask in range(start, min(total, start + quota)):
            yield AsyncSystem(decl, (traces[i] for i in range(len(traces)) if mask >> i & 1))


def async_corpus(
    count: int = 500,
    seed: int = DEFAULT_SEED,
    max_events: int = 4,
    max_len: int = 4,
    max_traces: int = 6,
) -> list[AsyncSystem]:
    """Random event systems, larger than the capped enumeration covers."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, max_events)
        names = tuple(f"e{i}" for i in range(1, k + 1))
        levels = tuple(rng.choice("LH") for _ in names)
        if "L" not in levels or "H" not in levels:
            continue
        decl = EventDecl(tuple(zip(names, levels)))
        pool = enumerate_event_traces(decl, max_len)
        size = rng.randint(1, max_traces)
        out.append(AsyncSystem(decl, (tuple(t) for t in rng.sample(pool, size))))
    return out


# -------------------------------------------------------- randomized cases


def conj_cases(
    count: int = 1000, seed: int = DEFAULT_SEED
) -> Iterator[tuple[System, list[ExtensionalSif], list[ExtensionalSif]]]:
    """Random (system, family, family) triples for the pairing identity."""
    rng = random.Random(seed)
    traces = _standard_traces()
    space = binary_space()
    for _ in range(count):
        members = rng.sample(traces, rng.randint(2, 5))
        s = System(space, members)

        def family() -> list[ExtensionalSif]:
            fams = []
            for _ in range(rng.randint(1, 3)):
                table = {}
                for a in members:
                    for b in members:
                        if rng.random() < 0.8:
                            # mostly map back into the system, sometimes out
                            out = rng.choice(members) if rng.random() < 0.85 else rng.choice(traces)
                            table[(a, b)] = out
                fams.append(ExtensionalSif.from_mapping(table))
            return fams

        yield s, family(), family()


def zl_conj_cases(
    count: int = 1000, seed: int = DEFAULT_SEED
) -> Iterator[tuple[System, ExtensionalQ, ExtensionalQ]]:
    """Random (system, Q, Q') triples for the conjunction identity."""
    rng = random.Random(seed)
    traces = _standard_traces()
    space = binary_space()
    all_classes = []
    for size in (1, 2, 3, 4):
        for _ in range(8):
            s = System(space, rng.sample(traces, size))
            all_classes.extend(lles(t, s) for t in s)
    class_pool = sorted(set(all_classes), key=lambda c: sorted(map(repr, c)))
    for _ in range(count):
        s = System(space, rng.sample(traces, rng.randint(1, 4)))
        own = [lles(t, s) for t in s]
        q1 = ExtensionalQ(
            frozenset(c for c in own if rng.random() < 0.7)
            | frozenset(c for c in rng.sample(class_pool, 4))
        )
        q2 = ExtensionalQ(
            frozenset(c for c in own if rng.random() < 0.7)
            | frozenset(c for c in rng.sample(class_pool, 4))
        )
        yield s, q1, q2

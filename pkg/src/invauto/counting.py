"""Exact per-level counts of state behavior, and growth classification.

For a transformation g, ``count_ns`` tallies the words of each length that
leave the machine in a state still acting nontrivially, and ``count_nc`` the
words whose state path never touches an unconditional cycle.  Both are path
counts over the transition graph, computed by one dynamic-programming sweep
per level with Python's arbitrary-precision integers.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import Automaton, Transformation, Word, trivial_states
from .errors import NotMaterializableError

NS = "ns"
NC = "nc"


@dataclass(frozen=True)
class UnconditionalCycle:
    """States whose transitions ignore the input letter, closed in a cycle."""

    states: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states or len(set(self.states)) != len(self.states):
            raise ValueError("cycle states must be nonempty and pairwise distinct")

    @property
    def length(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class CountTable:
    """Counts indexed by level 0..max_level for one transformation."""

    transformation: Transformation
    kind: str
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (NS, NC):
            raise ValueError(f"kind must be {NS!r} or {NC!r}")
        object.__setattr__(self, "counts", tuple(self.counts))
        if not self.counts or self.counts[0] not in (0, 1):
            raise ValueError("level-0 count must be 0 or 1")
        k = self.transformation.alphabet.size
        for level, c in enumerate(self.counts):
            if not 0 <= c <= k**level:
                raise ValueError(f"count {c} at level {level} exceeds {k}^{level}")

    @property
    def max_level(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, level: int) -> int:
        return self.counts[level]


@dataclass(frozen=True)
class GrowthReport:
    """Growth class of the per-level activity counts."""

    category: str
    degree: int | None = None
    rate: float | None = None

    def __post_init__(self):
        if self.category not in ("bounded", "polynomial", "exponential"):
            raise ValueError(f"bad growth category {self.category!r}")
        if (self.degree is not None) != (self.category == "polynomial"):
            raise ValueError("degree is present exactly for polynomial growth")
        if (self.rate is not None) != (self.category == "exponential"):
            raise ValueError("rate is present exactly for exponential growth")
        if self.degree is not None and self.degree < 1:
            raise ValueError("polynomial degree must be >= 1")


@dataclass(frozen=True)
class MembershipDecision:
    """Outcome of an exact smallness decision, with evidence.

    When ``member`` is False, ``witness`` is a shortest word leading into
    ``core``, a set of states the machine can never leave; every extension of
    the witness then stays out of the small set, forcing full growth.
    """

    member: bool
    witness: Word | None
    core: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.member


def _unconditional_successor(automaton: Automaton, q: int) -> int | None:
    row = automaton.transitions[q]
    return row[0] if all(t == row[0] for t in row) else None


def find_ucs(automaton: Automaton) -> tuple[UnconditionalCycle, ...]:
    """All maximal unconditional cycles.

    Restricting to states with input-independent successors gives a partial
    functional graph; its cycles are exactly the unconditional cycles.  A
    trivial sink state shows up as a cycle of length 1.
    """
    n = automaton.n_states
    sigma = [_unconditional_successor(automaton, q) for q in range(n)]
    cycles = []
    state_flag = [0] * n  # 0 unvisited, 1 on current walk, 2 done
    for q0 in range(n):
        if state_flag[q0] or sigma[q0] is None:
            continue
        walk, pos = [], {}
        q = q0
        while q is not None and state_flag[q] == 0 and sigma[q] is not None:
            state_flag[q] = 1
            pos[q] = len(walk)
            walk.append(q)
            q = sigma[q]
        if q is not None and state_flag[q] == 1:
            cycle = walk[pos[q]:]
            low = cycle.index(min(cycle))
            cycle = cycle[low:] + cycle[:low]
            cycles.append(UnconditionalCycle(tuple(automaton.states[i] for i in cycle)))
        for i in walk:
            state_flag[i] = 2
    cycles.sort(key=lambda c: automaton.state_index(c.states[0]))
    return tuple(cycles)


def uc_state_lengths(automaton: Automaton) -> dict[int, int]:
    """State index -> length of the unconditional cycle it belongs to."""
    lengths: dict[int, int] = {}
    for cycle in find_ucs(automaton):
        for name in cycle.states:
            lengths[automaton.state_index(name)] = cycle.length
    return lengths


def _iter_survivor_counts(g: Transformation, dead: frozenset[int]) -> Iterator[int]:
    """Per-level counts of words whose state path stays out of ``dead``.

    ``dead`` is closed under transitions for both uses (trivial states only
    lead to trivial states; cycle states only cycle), so dropping mass on
    entry is exact: a path ends outside ``dead`` iff it never entered it.
    """
    automaton = g.automaton
    horizon = automaton.horizon(g.state)
    n, k = automaton.n_states, automaton.alphabet.size
    trans = automaton.transitions
    alive = [q for q in range(n) if q not in dead]
    vec = [0] * n
    if g.start not in dead:
        vec[g.start] = 1
    level = 0
    while True:
        yield sum(vec[q] for q in alive)
        level += 1
        if horizon is not None and level > horizon:
            raise NotMaterializableError(
                f"level {level} exceeds the materialized horizon {horizon} "
                f"of state {g.state!r}"
            )
        nxt = [0] * n
        for q in alive:
            c = vec[q]
            if not c:
                continue
            row = trans[q]
            for x in range(k):
                t = row[x]
                if t not in dead:
                    nxt[t] += c
        vec = nxt


def iter_ns_counts(g: Transformation) -> Iterator[int]:
    """Yields NS(g, 0), NS(g, 1), ... lazily."""
    return _iter_survivor_counts(g, trivial_states(g.automaton))


def iter_nc_counts(g: Transformation) -> Iterator[int]:
    """Yields NC(g, 0), NC(g, 1), ... lazily."""
    return _iter_survivor_counts(g, frozenset(uc_state_lengths(g.automaton)))


def count_ns(g: Transformation, max_level: int) -> CountTable:
    """Words of each length l <= max_level ending in a nontrivial state."""
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    counts = tuple(itertools.islice(iter_ns_counts(g), max_level + 1))
    return CountTable(g, NS, counts)


def count_nc(g: Transformation, max_level: int) -> CountTable:
    """Words of each length l <= max_level avoiding all unconditional cycles."""
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    counts = tuple(itertools.islice(iter_nc_counts(g), max_level + 1))
    return CountTable(g, NC, counts)


def _survivor_words(g: Transformation, level: int, dead: frozenset[int]):
    k = g.alphabet.size
    trans = g.automaton.transitions
    for word in itertools.product(range(k), repeat=level):
        q = g.start
        if q in dead:
            continue
        for x in word:
            q = trans[q][x]
            if q in dead:
                break
        else:
            yield word


def ns_words(g: Transformation, level: int) -> list[Word]:
    """The actual words counted by NS at one level.

    Enumerates all |X|^level words; meant for small levels only (the counts
    themselves come from :func:`count_ns`, which never enumerates).
    """
    g._check_length(level)
    return list(_survivor_words(g, level, trivial_states(g.automaton)))


def nc_words(g: Transformation, level: int) -> list[Word]:
    """The actual words counted by NC at one level; small levels only."""
    g._check_length(level)
    return list(_survivor_words(g, level, frozenset(uc_state_lengths(g.automaton))))


def _states_within(g: Transformation, steps: int) -> set[int]:
    """States reachable from g's start within at most ``steps`` letters."""
    automaton = g.automaton
    k = automaton.alphabet.size
    seen = {g.start}
    frontier = [g.start]
    for _ in range(steps):
        nxt = []
        for q in frontier:
            for x in range(k):
                t = automaton.transitions[q][x]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        if not nxt:
            break
        frontier = nxt
    return seen


def reachable_uc_lengths(g: Transformation, level: int) -> tuple[int, ...]:
    """Lengths of the unconditional cycles g can enter within ``level`` steps."""
    lengths = uc_state_lengths(g.automaton)
    hit = {lengths[q] for q in _states_within(g, level) if q in lengths}
    return tuple(sorted(hit))


def max_uc_length(g: Transformation, level: int) -> int:
    """Largest unconditional cycle reachable within ``level`` steps (0 if none)."""
    return max(reachable_uc_lengths(g, level), default=0)


def _dominant_rate(matrix: list[list[int]]) -> float:
    """Power-iteration estimate of the dominant growth base.

    The matrix is shifted by the identity so periodic cycle structure cannot
    stall convergence; the shift is subtracted from the estimate.
    """
    a = np.array(matrix, dtype=float) + np.eye(len(matrix))
    v = np.ones(len(matrix)) / len(matrix)
    estimate = 0.0
    for _ in range(10_000):
        w = a @ v
        total = w.sum()
        if total == 0.0:
            return 0.0
        if abs(total - estimate) < 1e-9:
            estimate = total
            break
        estimate = total
        v = w / total
    return float(estimate - 1.0)


def _activity_graph(g: Transformation) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Nontrivial states reachable from g, with letter-multiplicity edges."""
    automaton = g.automaton
    k = automaton.alphabet.size
    dead = trivial_states(automaton)
    if g.start in dead:
        return [], {}
    seen = {g.start}
    queue = deque([g.start])
    edges: dict[tuple[int, int], int] = {}
    while queue:
        q = queue.popleft()
        for x in range(k):
            t = automaton.transitions[q][x]
            if t in dead:
                continue
            edges[(q, t)] = edges.get((q, t), 0) + 1
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen), edges


def classify_growth(g: Transformation) -> GrowthReport:
    """Growth class of NS(g, l) from the cycle structure of the active part.

    Exponential iff some state lies on two distinct directed cycles (an
    strongly connected piece carrying more edges, counted with letter
    multiplicity, than states); otherwise the count grows like l^d where d+1
    is the largest number of cycles met along one directed path, and d = 0
    is reported as bounded.
    """
    import networkx as nx

    nodes, edges = _activity_graph(g)
    if not nodes:
        return GrowthReport("bounded")

    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    for (q, t), mult in edges.items():
        graph.add_edge(q, t, mult=mult)

    components = list(nx.strongly_connected_components(graph))
    intra: dict[int, int] = {}
    for ci, comp in enumerate(components):
        intra[ci] = sum(
            mult for (q, t), mult in edges.items() if q in comp and t in comp
        )
        if intra[ci] > len(comp):
            k = g.alphabet.size
            rate = _dominant_rate(
                [[edges.get((q, t), 0) for t in nodes] for q in nodes]
            )
            return GrowthReport("exponential", rate=min(rate, float(k)))

    condensed = nx.condensation(graph, components)
    cyclic = {ci: 1 if intra[ci] >= 1 else 0 for ci in condensed.nodes}
    best: dict[int, int] = {}
    for ci in reversed(list(nx.topological_sort(condensed))):
        succ = [best[cj] for cj in condensed.successors(ci)]
        best[ci] = cyclic[ci] + max(succ, default=0)
    start_comp = condensed.graph["mapping"][g.start]
    met = best[start_comp]
    if met <= 1:
        return GrowthReport("bounded")
    return GrowthReport("polynomial", degree=met - 1)


def _escape_proof_core(automaton: Automaton, excluded: frozenset[int]) -> set[int]:
    """Largest state set outside ``excluded`` keeping every transition inside.

    Iteratively prunes states with an escaping transition; what survives
    traps the machine, so any word reaching it pins the count to full growth.
    """
    k = automaton.alphabet.size
    core = {q for q in range(automaton.n_states) if q not in excluded}
    while True:
        keep = {
            q for q in core
            if all(automaton.transitions[q][x] in core for x in range(k))
        }
        if keep == core:
            return core
        core = keep


def _shortest_word_to(g: Transformation, targets: set[int]) -> Word | None:
    automaton = g.automaton
    k = automaton.alphabet.size
    if g.start in targets:
        return ()
    parent: dict[int, tuple[int, int]] = {}
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        q = queue.popleft()
        for x in range(k):
            t = automaton.transitions[q][x]
            if t in seen:
                continue
            parent[t] = (q, x)
            if t in targets:
                letters = []
                while t != g.start:
                    t, x = parent[t]
                    letters.append(x)
                return tuple(reversed(letters))
            seen.add(t)
            queue.append(t)
    return None


def _decide_small(g: Transformation, excluded: frozenset[int]) -> MembershipDecision:
    if g.automaton.policy is not None:
        raise NotMaterializableError(
            "exact membership needs the full automaton; this one is a "
            "depth-bounded materialization (diagnose empirically from the "
            "count tables instead)"
        )
    core = _escape_proof_core(g.automaton, excluded)
    witness = _shortest_word_to(g, core) if core else None
    names = tuple(g.automaton.states[q] for q in sorted(core))
    if witness is None:
        return MembershipDecision(True, None, names)
    return MembershipDecision(False, witness, names)


def decide_g0(g: Transformation) -> MembershipDecision:
    """Exact test that NS(g, l) is negligible against |X|^l.

    False, with a witness word w of length m, means every extension of w
    ends in the escape-proof nontrivial core, so NS(g, l) >= |X|^(l-m); True
    means the core is unreachable and the growth base stays below |X|.
    """
    return _decide_small(g, trivial_states(g.automaton))


def decide_g1(g: Transformation) -> MembershipDecision:
    """Exact test that NC(g, l) is negligible against |X|^l.

    Same pruning as :func:`decide_g0` with "trivial" replaced by "member of
    an unconditional cycle".
    """
    return _decide_small(g, frozenset(uc_state_lengths(g.automaton)))

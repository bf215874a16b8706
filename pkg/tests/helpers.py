"""Corpus machines and independent oracles shared across the test suite.

The oracles deliberately avoid the library's counting code paths: counts are
obtained by enumerating the word tree, triviality by checking output rows
along reachability, and the adding machine against plain binary arithmetic.
"""

from __future__ import annotations

import itertools
import random

import invauto as iv


# ---------------------------------------------------------------- corpus

def adding():
    return iv.generate_builtin("adding")


def flip_all():
    return iv.generate_builtin("flip_all")


def flip_alternator():
    return iv.generate_builtin("flip_alternator")


def remark_chain(depth):
    return iv.generate_builtin("remark_chain", depth=depth)


def uv_core():
    """Two states with input-dependent transitions, both flipping; no UCs."""
    return iv.Automaton.from_table(
        ("0", "1"),
        {
            "u": {"0": ("u", "1"), "1": ("v", "0")},
            "v": {"0": ("u", "1"), "1": ("v", "0")},
        },
    )


def poly_chain():
    """Two flip states feeding a sink; activity grows linearly in the level."""
    return iv.Automaton.from_table(
        ("0", "1"),
        {
            "c2": {"0": ("c2", "1"), "1": ("c1", "0")},
            "c1": {"0": ("c1", "1"), "1": ("e", "0")},
            "e": {"0": ("e", "0"), "1": ("e", "1")},
        },
    )


def binary_corpus():
    """Transformations over {0,1} used throughout the suite."""
    return [
        adding().at("q"),
        adding().at("e"),
        flip_all().at("r"),
        flip_alternator().at("a"),
        flip_alternator().at("b"),
        uv_core().at("u"),
        poly_chain().at("c2"),
        iv.identity_automaton(2).at("e"),
    ]


def full_corpus(remark_depth=9):
    return binary_corpus() + [remark_chain(remark_depth).at("q_1")]


# ---------------------------------------------------------------- word helpers

def all_words(k, length):
    return itertools.product(range(k), repeat=length)


def add_one(word):
    """(w + 1) mod 2^len under lowest-digit-first binary encoding."""
    bits = list(word)
    carry = 1
    for i, b in enumerate(bits):
        total = b + carry
        bits[i] = total % 2
        carry = total // 2
    return tuple(bits)


def subtract_one(word):
    """(w - 1) mod 2^len under lowest-digit-first binary encoding."""
    bits = list(word)
    borrow = 1
    for i, b in enumerate(bits):
        total = b - borrow
        bits[i] = total % 2
        borrow = 1 if total < 0 else 0
    return tuple(bits)


# ---------------------------------------------------------------- oracles

def oracle_trivial_states(automaton):
    """A state acts as the identity iff every reachable state copies letters."""
    k = automaton.alphabet.size
    identity = tuple(range(k))
    trivial = set()
    for q in range(automaton.n_states):
        seen = {q}
        stack = [q]
        ok = True
        while stack and ok:
            s = stack.pop()
            if automaton.outputs[s] != identity:
                ok = False
                break
            for x in range(k):
                t = automaton.transitions[s][x]
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        if ok:
            trivial.add(q)
    return trivial


def oracle_uc_lengths(automaton):
    """State -> cycle length, by walking input-independent successors."""
    n = automaton.n_states
    lengths = {}
    for q in range(n):
        s = q
        for steps in range(1, n + 1):
            row = automaton.transitions[s]
            if any(t != row[0] for t in row):
                break
            s = row[0]
            if s == q:
                lengths[q] = steps
                break
    return lengths


def brute_counts(g, max_level):
    """Per-level (ns, nc) by enumerating the word tree, no dynamic programming."""
    automaton = g.automaton
    k = automaton.alphabet.size
    nontrivial = [
        q not in oracle_trivial_states(automaton) for q in range(automaton.n_states)
    ]
    uc = oracle_uc_lengths(automaton)
    ns = [0] * (max_level + 1)
    nc = [0] * (max_level + 1)
    stack = [(g.start, 0, g.start in uc)]
    while stack:
        state, depth, hit = stack.pop()
        if nontrivial[state]:
            ns[depth] += 1
        if not hit:
            nc[depth] += 1
        if depth < max_level:
            for x in range(k):
                t = automaton.transitions[state][x]
                stack.append((t, depth + 1, hit or t in uc))
    return ns, nc


# ---------------------------------------------------------------- generators

def random_automaton(rng: random.Random, n_states: int, k: int) -> iv.Automaton:
    """Uniformly random complete machine with permutation output rows."""
    names = [f"s{i}" for i in range(n_states)]
    symbols = [str(x) for x in range(k)]
    table = {}
    for name in names:
        perm = list(range(k))
        rng.shuffle(perm)
        table[name] = {
            symbols[x]: (names[rng.randrange(n_states)], symbols[perm[x]])
            for x in range(k)
        }
    return iv.Automaton.from_table(symbols, table)


def random_funnel(rng: random.Random, n_states: int, k: int) -> iv.Automaton:
    """Random machine whose nontrivial part is acyclic: all transitions move
    strictly toward the identity sink, so activity dies out within n steps."""
    names = [f"t{i}" for i in range(n_states)] + ["e"]
    symbols = [str(x) for x in range(k)]
    table = {}
    for i in range(n_states):
        perm = list(range(k))
        rng.shuffle(perm)
        table[names[i]] = {
            symbols[x]: (names[rng.randrange(i + 1, n_states + 1)], symbols[perm[x]])
            for x in range(k)
        }
    table["e"] = {s: ("e", s) for s in symbols}
    return iv.Automaton.from_table(symbols, table)


def random_ep_word(rng: random.Random, k: int, max_prefix: int, max_period: int):
    prefix = tuple(rng.randrange(k) for _ in range(rng.randint(0, max_prefix)))
    period = tuple(rng.randrange(k) for _ in range(rng.randint(1, max_period)))
    return iv.EventuallyPeriodicWord(prefix, period)


# ---------------------------------------------------------------- comparisons

def named_table(automaton):
    """The transition table keyed by names, for order-insensitive comparison."""
    k = automaton.alphabet.size
    return {
        automaton.states[q]: {
            automaton.alphabet.symbols[x]: (
                automaton.states[automaton.transitions[q][x]],
                automaton.alphabet.symbols[automaton.outputs[q][x]],
            )
            for x in range(k)
        }
        for q in range(automaton.n_states)
    }


def isomorphic_under(a, b, rename):
    """True iff renaming a's states by ``rename`` gives exactly b's table."""
    if a.alphabet.symbols != b.alphabet.symbols:
        return False
    renamed = {
        rename(state): {
            letter: (rename(nxt), out) for letter, (nxt, out) in row.items()
        }
        for state, row in named_table(a).items()
    }
    return renamed == named_table(b)

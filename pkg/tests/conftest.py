"""Shared helpers: random term generation and hypothesis strategies."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from stonework.terms import And, Gen, Not, ONE, Or, Term, ZERO


def random_term(rng: random.Random, gens: list[str], depth: int) -> Term:
    """Uniform-ish random term over the given generators, bounded depth."""
    if depth == 0 or rng.random() < 0.3:
        choice = rng.randrange(len(gens) + 2) if gens else rng.randrange(2)
        if choice == 0:
            return ZERO
        if choice == 1:
            return ONE
        return Gen(gens[choice - 2])
    op = rng.randrange(3)
    if op == 0:
        return Not(random_term(rng, gens, depth - 1))
    left = random_term(rng, gens, depth - 1)
    right = random_term(rng, gens, depth - 1)
    return And(left, right) if op == 1 else Or(left, right)


def term_strategy(gens: list[str], max_depth: int = 4) -> st.SearchStrategy[Term]:
    leaves = st.sampled_from([ZERO, ONE] + [Gen(g) for g in gens])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.tuples(sub, sub).map(lambda p: And(*p)),
            st.tuples(sub, sub).map(lambda p: Or(*p)),
        ),
        max_leaves=2**max_depth,
    )

"""Seeded random PrAAFs for property checks and experiment scripts."""

from __future__ import annotations

import random
from itertools import product
from string import ascii_lowercase

from .constellation import PrAAF

# 0.1 .. 0.9 plus certainty, each equally likely
PROBABILITIES = tuple(round(0.1 * k, 1) for k in range(1, 10)) + (1,)


def random_praaf(
    rng: random.Random,
    max_args: int = 4,
    max_atts: int = 5,
    probabilities=PROBABILITIES,
    min_args: int = 1,
) -> PrAAF:
    n = rng.randint(min_args, max_args)
    names = list(ascii_lowercase[:n])
    pairs = list(product(names, repeat=2))  # self-attacks included
    atts = rng.sample(pairs, rng.randint(0, min(max_atts, len(pairs))))
    return PrAAF(
        {a: rng.choice(probabilities) for a in names},
        {e: rng.choice(probabilities) for e in atts},
    )


def random_corpus(size: int, seed: int = 0, **kwargs) -> list[PrAAF]:
    rng = random.Random(seed)
    return [random_praaf(rng, **kwargs) for _ in range(size)]

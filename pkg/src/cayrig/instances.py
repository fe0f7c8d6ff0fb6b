"""Seeded construction of the degree-p permutation instance: two p-cycles
a, b of Sym(p) with ab again a p-cycle and <a, b> nonabelian."""

from __future__ import annotations

import random

from .errors import SearchError
from .groups import PermutationGroup


def _is_full_cycle(perm) -> bool:
    n = len(perm)
    x = perm[0]
    steps = 1
    while x != 0:
        x = perm[x]
        steps += 1
        if steps > n:
            return False
    return steps == n


def abc_permutation_instance(p: int = 269, seed: int = 1,
                             max_tries: int = 10_000):
    """Returns (group, a, b); deterministic for a fixed seed."""
    rng = random.Random(seed)
    a = tuple((x + 1) % p for x in range(p))
    points = list(range(p))
    for _ in range(max_tries):
        rng.shuffle(points)
        b = [0] * p
        for t in range(p):
            b[points[t]] = points[(t + 1) % p]
        b = tuple(b)
        ab = tuple(a[b[x]] for x in range(p))
        if not _is_full_cycle(ab):
            continue
        if b == a or all(a[b[x]] == b[a[x]] for x in range(p)):
            continue
        group = PermutationGroup(p, [a, b], names=("a", "b"),
                                 name=f"Sym{p}-pair")
        return group, a, b
    raise SearchError(f"no suitable pair found in {max_tries} tries")

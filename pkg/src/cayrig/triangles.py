"""Triangle counts through labelled edges of a Cayley graph.

For s in the symmetric closure, the number of triangles of Cay(G,S)
containing the edge (1, s) equals |S^pm intersect s S^pm|; membership
hashing keeps each count at O(|S^pm|) group operations, so censuses work
unchanged on groups far beyond enumeration.
"""

from __future__ import annotations

from .errors import PreconditionError
from .groups import GenSet, Group


def count_in_set(group: Group, sym: frozenset, s) -> int:
    """Triangles through (1, s) in the Cayley graph of the symmetric set
    `sym`; s must lie in `sym` for the edge to exist."""
    s_inv = group.inv(s)
    mul = group.mul
    return sum(1 for u in sym if mul(s_inv, u) in sym)


def census_of_set(group: Group, sym: frozenset) -> dict:
    """Mapping class representative -> count over all inverse-classes."""
    reps = sorted({min(s, group.inv(s), key=group.sort_key) for s in sym},
                  key=group.sort_key)
    return {rep: count_in_set(group, sym, rep) for rep in reps}


def triangle_count(group: Group, genset: GenSet, s) -> int:
    if s not in genset.sym_set:
        raise PreconditionError(
            f"{group.element_name(s)} is not in the symmetric closure; "
            f"(1, s) is not an edge")
    return count_in_set(group, genset.sym_set, s)


class TriangleCensus:
    """Census over inverse-classes [s] = {s, s^-1}, in canonical class
    order; counts agree on s and s^-1."""

    def __init__(self, group: Group, genset: GenSet):
        self.group = group
        self.genset = genset
        self.counts = census_of_set(group, genset.sym_set)

    def __getitem__(self, s) -> int:
        rep = min(s, self.group.inv(s), key=self.group.sort_key)
        return self.counts[rep]

    def items(self):
        return self.counts.items()

    def to_json(self) -> dict:
        return {self.group.element_name(rep): c
                for rep, c in self.counts.items()}


def triangle_census(group: Group, genset: GenSet) -> TriangleCensus:
    return TriangleCensus(group, genset)

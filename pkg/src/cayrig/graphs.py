"""Cayley graphs, digraphs and labelled radius-r balls around the identity."""

from __future__ import annotations

from typing import Optional, Sequence

from . import limits
from .errors import BudgetError, PreconditionError
from .groups import GenSet, Group


class Graph:
    """Simple (di)graph on vertices 0..n-1 with sorted adjacency lists."""

    def __init__(self, n: int, edges, directed: bool = False,
                 names: Optional[Sequence[str]] = None):
        self.n = n
        self.directed = directed
        self.names = tuple(names) if names is not None else tuple(
            str(i) for i in range(n))
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)] if directed else out
        seen = set()
        for (i, j) in edges:
            if i == j:
                raise PreconditionError("simple graph cannot have loops")
            if not directed and (j, i) in seen:
                continue
            if (i, j) in seen:
                continue
            seen.add((i, j))
            out[i].append(j)
            if directed:
                inn[j].append(i)
            else:
                out[j].append(i)
        self.out = tuple(tuple(sorted(a)) for a in out)
        self.inn = self.out if not directed else tuple(
            tuple(sorted(a)) for a in inn)
        self.out_sets = tuple(frozenset(a) for a in self.out)
        self.edge_count = sum(len(a) for a in self.out)
        if not directed:
            self.edge_count //= 2

    @property
    def adj(self):
        return self.out

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.out_sets[i]

    def edges(self):
        """Ordered arcs (directed) or pairs i < j (undirected)."""
        for i in range(self.n):
            for j in self.out[i]:
                if self.directed or i < j:
                    yield (i, j)

    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.out)

    def triangle_counts(self) -> tuple:
        """Per-vertex count of adjacent neighbour pairs (undirected only)."""
        out = []
        for v in range(self.n):
            nb = self.out[v]
            t = 0
            for idx, u in enumerate(nb):
                us = self.out_sets[u]
                for w in nb[idx + 1:]:
                    if w in us:
                        t += 1
            out.append(t)
        return tuple(out)

    def to_json(self, labels: Optional[dict] = None) -> dict:
        data = {
            "vertices": list(self.names),
            "edges": [[i, j] for (i, j) in self.edges()],
            "directed": self.directed,
        }
        if labels is not None:
            data["labels"] = {f"{i},{j}": lab for (i, j), lab in
                              sorted(labels.items())}
        return data

    def to_dot(self, labels: Optional[dict] = None,
               graph_name: str = "g") -> str:
        arrow = "->" if self.directed else "--"
        kind = "digraph" if self.directed else "graph"
        lines = [f"{kind} {graph_name} {{"]
        for i in range(self.n):
            lines.append(f'  {i} [label="{self.names[i]}"];')
        for (i, j) in self.edges():
            attr = ""
            if labels and (i, j) in labels:
                attr = f' [label="{labels[(i, j)]}"]'
            lines.append(f"  {i} {arrow} {j}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class LabelledBall:
    """Induced subgraph of Cay(G,T) on {1} plus T^(<=r), with arc labels
    g^-1 h; labels are stored once per ordered pair i < j."""

    def __init__(self, group: Group, genset: GenSet, radius: int,
                 budget: int = limits.BALL_BUDGET):
        if radius < 1:
            raise PreconditionError("ball radius must be >= 1")
        if radius > limits.MAX_BALL_RADIUS:
            raise PreconditionError(
                f"ball radius {radius} exceeds the configured maximum "
                f"{limits.MAX_BALL_RADIUS}")
        self.group = group
        self.genset = genset
        self.radius = radius
        shell = genset.ball(radius, budget=budget)
        elems = sorted(shell + (group.identity,), key=group.sort_key)
        self.elements = tuple(elems)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.center = self.index[group.identity]
        sym = genset.sym_set
        edges = []
        labels = {}
        inv = group.inv
        mul = group.mul
        for i, g in enumerate(self.elements):
            gi = inv(g)
            for j in range(i + 1, len(self.elements)):
                lab = mul(gi, self.elements[j])
                if lab in sym:
                    edges.append((i, j))
                    labels[(i, j)] = lab
        self._labels = labels
        self.graph = Graph(len(self.elements), edges, directed=False,
                           names=[group.element_name(g) for g in self.elements])

    def label(self, i: int, j: int):
        if (i, j) in self._labels:
            return self._labels[(i, j)]
        if (j, i) in self._labels:
            return self.group.inv(self._labels[(j, i)])
        raise KeyError((i, j))

    def label_names(self) -> dict:
        out = {}
        for (i, j), lab in self._labels.items():
            out[(i, j)] = self.group.element_name(lab)
        return out

    def to_json(self) -> dict:
        return self.graph.to_json(labels=self.label_names())

    def to_dot(self) -> str:
        return self.graph.to_dot(labels=self.label_names(), graph_name="ball")


class CayleyGraph:
    """Full Cayley graph or digraph of a finite group."""

    def __init__(self, group: Group, genset: GenSet, directed: bool = False,
                 limit: int = limits.ENUM_LIMIT):
        self.group = group
        self.genset = genset
        self.directed = directed
        self.elements = group.elements(limit)
        self.index = {g: i for i, g in enumerate(self.elements)}
        mul = group.mul
        edges = []
        if directed:
            for i, g in enumerate(self.elements):
                for s in genset.base:
                    edges.append((i, self.index[mul(g, s)]))
        else:
            for i, g in enumerate(self.elements):
                for s in genset.sym:
                    j = self.index[mul(g, s)]
                    if i < j:
                        edges.append((i, j))
        self.graph = Graph(len(self.elements), edges, directed=directed,
                           names=[group.element_name(g) for g in self.elements])

    def label(self, i: int, j: int):
        return self.group.mul(self.group.inv(self.elements[i]),
                              self.elements[j])

    def has_bigon(self) -> bool:
        """True iff the base set meets its own inverse set."""
        if not self.directed:
            return False
        base = set(self.genset.base)
        return any(self.group.inv(s) in base for s in self.genset.base)

    def to_json(self) -> dict:
        return self.graph.to_json()

    def to_dot(self) -> str:
        return self.graph.to_dot(graph_name="cayley")


def build_ball(group: Group, genset: GenSet, radius: int,
               budget: int = limits.BALL_BUDGET) -> LabelledBall:
    return LabelledBall(group, genset, radius, budget=budget)


def build_cayley(group: Group, genset: GenSet, directed: bool = False,
                 limit: int = limits.ENUM_LIMIT) -> CayleyGraph:
    if not group.is_enumerable(limit):
        raise BudgetError(
            f"{group.name}: cannot enumerate (order {group.order!r}) to "
            f"build the full Cayley graph")
    return CayleyGraph(group, genset, directed=directed, limit=limit)

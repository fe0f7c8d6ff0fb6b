"""Automorphism search and the local/global rigidity checks.

The graph search is classic individualization with equitable partition
refinement.  Domain and image partitions are refined by the same
deterministic procedure, so corresponding cells stay positionally aligned
and a shape mismatch is a sound prune; every leaf is verified edge by
edge before it is reported.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import limits
from .errors import BudgetError, PreconditionError
from .graphs import CayleyGraph, Graph, LabelledBall, build_ball, build_cayley
from .groups import GenSet, Group


# -- equitable refinement ----------------------------------------------------


def _refine(out, inn, cells, cell_of):
    """Refine an ordered partition to equitability, in place.

    Splits are deterministic functions of positional structure plus
    adjacency counts, which keeps two isomorphic configurations aligned
    cell-by-cell."""
    directed = inn is not out
    queue = deque(range(len(cells)))
    queued = [True] * len(cells)
    while queue:
        qi = queue.popleft()
        queued[qi] = False
        splitter = cells[qi]
        cnt_out = {}
        for w in splitter:
            for v in inn[w]:
                cnt_out[v] = cnt_out.get(v, 0) + 1
        cnt_in = {}
        if directed:
            for w in splitter:
                for v in out[w]:
                    cnt_in[v] = cnt_in.get(v, 0) + 1
        touched = {cell_of[v] for v in cnt_out}
        touched.update(cell_of[v] for v in cnt_in)
        for ci in sorted(touched):
            cell = cells[ci]
            if len(cell) == 1:
                continue
            groups = {}
            for v in cell:
                key = (cnt_out.get(v, 0), cnt_in.get(v, 0))
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            cells[ci] = groups[keys[0]]
            if not queued[ci]:
                queue.append(ci)
                queued[ci] = True
            for key in keys[1:]:
                part = groups[key]
                idx = len(cells)
                cells.append(part)
                queued.append(True)
                queue.append(idx)
                for v in part:
                    cell_of[v] = idx
    return cells


def _initial_cells(graph: Graph, fix: Optional[int]):
    """Vertex invariants: degrees, triangle participation, distance from
    the fixed vertex and (for its neighbours) the shared-neighbour count
    with it."""
    n = graph.n
    colors = [[len(graph.out[v])] for v in range(n)]
    if graph.directed:
        for v in range(n):
            colors[v].append(len(graph.inn[v]))
    else:
        tri = graph.triangle_counts()
        for v in range(n):
            colors[v].append(tri[v])
    if fix is not None:
        dist = [-1] * n
        dist[fix] = 0
        frontier = [fix]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in graph.out[u]:
                    if dist[w] < 0:
                        dist[w] = d
                        nxt.append(w)
                if graph.directed:
                    for w in graph.inn[u]:
                        if dist[w] < 0:
                            dist[w] = d
                            nxt.append(w)
            frontier = nxt
        fix_nb = graph.out_sets[fix]
        for v in range(n):
            colors[v].append(dist[v])
            if not graph.directed and v in fix_nb:
                colors[v].append(len(fix_nb & graph.out_sets[v]))
            else:
                colors[v].append(-1)
        colors[fix] = [-2]
    by_color = {}
    for v in range(n):
        by_color.setdefault(tuple(colors[v]), []).append(v)
    return [by_color[key] for key in sorted(by_color)]


def _search_automorphisms(graph: Graph, init_cells, max_autos, max_nodes):
    out, inn = graph.out, graph.inn
    out_sets = graph.out_sets
    inn_sets = tuple(frozenset(a) for a in graph.inn) if graph.directed \
        else out_sets
    results = []
    nodes = [0]

    def verify(mapping):
        for v in range(graph.n):
            mv = mapping[v]
            for u in out[v]:
                if mapping[u] not in out_sets[mv]:
                    return False
            if graph.directed:
                for u in inn[v]:
                    if mapping[u] not in inn_sets[mv]:
                        return False
        return True

    def recurse(cells_d, cellof_d, cells_i, cellof_i):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise BudgetError(
                f"automorphism search exceeded {max_nodes} nodes")
        _refine(out, inn, cells_d, cellof_d)
        _refine(out, inn, cells_i, cellof_i)
        if len(cells_d) != len(cells_i):
            return
        for cd, ci in zip(cells_d, cells_i):
            if len(cd) != len(ci):
                return
        target = -1
        best = None
        for idx, cell in enumerate(cells_d):
            if len(cell) > 1 and (best is None or len(cell) < best):
                best = len(cell)
                target = idx
        if target < 0:
            mapping = [0] * graph.n
            for cd, ci in zip(cells_d, cells_i):
                mapping[cd[0]] = ci[0]
            if verify(mapping):
                results.append(tuple(mapping))
                if len(results) > max_autos:
                    raise BudgetError(
                        f"more than {max_autos} automorphisms")
            return
        v = min(cells_d[target])
        rest_d = sorted(u for u in cells_d[target] if u != v)
        for w in sorted(cells_i[target]):
            rest_i = sorted(u for u in cells_i[target] if u != w)
            nd = [list(c) for c in cells_d]
            ni = [list(c) for c in cells_i]
            nd[target] = [v]
            ni[target] = [w]
            nd.append(rest_d)
            ni.append(rest_i)
            cd = list(cellof_d)
            cidx = len(nd) - 1
            for u in rest_d:
                cd[u] = cidx
            cio = list(cellof_i)
            for u in rest_i:
                cio[u] = cidx
            recurse(nd, cd, ni, cio)

    cells = [sorted(c) for c in init_cells]
    cellof = [0] * graph.n
    for idx, cell in enumerate(cells):
        for v in cell:
            cellof[v] = idx
    recurse([list(c) for c in cells], list(cellof),
            [list(c) for c in cells], list(cellof))
    return sorted(results)


@dataclass
class AutoReport:
    """Automorphisms of a graph (optionally the stabilizer of one vertex),
    with per-permutation label/colour/orientation flags when a Cayley
    context is supplied."""

    perms: list
    fixed: Optional[int] = None
    vertex_names: tuple = ()
    flags: Optional[list] = None

    @property
    def count(self) -> int:
        return len(self.perms)

    @property
    def is_trivial(self) -> bool:
        return all(all(p[i] == i for i in range(len(p))) for p in self.perms)

    def to_json(self) -> dict:
        data = {
            "count": self.count,
            "fixed": self.fixed,
            "generators": [list(p) for p in self.perms],
        }
        if self.vertex_names:
            data["vertices"] = list(self.vertex_names)
        if self.flags is not None:
            data["flags"] = self.flags
        return data


def enumerate_automorphisms(graph: Graph, fix: Optional[int] = None,
                            max_vertices: Optional[int] = None,
                            max_autos: int = limits.AUT_COUNT_BUDGET,
                            max_nodes: int = limits.AUT_NODE_BUDGET) -> AutoReport:
    """Complete list of automorphisms, or of the stabilizer of `fix`."""
    if max_vertices is None:
        max_vertices = (limits.AUT_VERTICES_FIXED if fix is not None
                        else limits.AUT_VERTICES_FREE)
    if graph.n > max_vertices:
        raise BudgetError(
            f"graph has {graph.n} vertices, budget is {max_vertices}"
            f" ({'with' if fix is not None else 'without'} a fixed vertex)")
    perms = _search_automorphisms(graph, _initial_cells(graph, fix),
                                  max_autos, max_nodes)
    return AutoReport(perms=perms, fixed=fix, vertex_names=graph.names)


def perm_flags(cay, perm) -> dict:
    """Label/colour/orientation preservation of a vertex permutation of a
    CayleyGraph (or LabelledBall restricted to its edges)."""
    group = cay.group
    elements = cay.elements
    index = cay.index
    mul, inv = group.mul, group.inv
    label = colour = orientation = True
    base = set(cay.genset.base)
    for i, g in enumerate(elements):
        pg = elements[perm[i]]
        for s in cay.genset.sym:
            gs = mul(g, s)
            j = index.get(gs)
            if j is None:
                continue
            im = elements[perm[j]]
            keep = mul(pg, s)
            if im != keep:
                label = False
                if im != mul(pg, inv(s)):
                    colour = False
            if s in base and mul(inv(pg), im) not in base:
                orientation = False
        if not (label or colour or orientation):
            break
    return {"label": label, "colour": colour, "orientation": orientation}


# -- colour-preserving ball automorphisms -------------------------------------


class ColourBallReport:
    """The group of colour-preserving permutations of {1} union T^pm fixing
    the identity (members listed as element maps)."""

    def __init__(self, group: Group, genset: GenSet, members: list):
        self.group = group
        self.genset = genset
        self.members = members
        self.vertices = tuple(sorted((group.identity,) + genset.sym,
                                     key=group.sort_key))
        self.index = {g: i for i, g in enumerate(self.vertices)}

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return all(all(m[v] == v for v in self.vertices)
                   for m in self.members)

    def perms(self) -> list:
        return [tuple(self.index[m[v]] for v in self.vertices)
                for m in self.members]

    def contains_inverse_map(self) -> bool:
        inv = self.group.inv
        return any(all(m[v] == inv(v) for v in self.vertices)
                   for m in self.members)

    def to_json(self) -> dict:
        name = self.group.element_name
        return {
            "count": self.count,
            "vertices": [name(v) for v in self.vertices],
            "generators": [list(p) for p in self.perms()],
        }


def _colour_ball_constraints(group: Group, genset: GenSet):
    """Classes {t, t^-1} of T^pm plus the product constraints
    (s, t, st in T^pm) grouped by the last class they mention."""
    inv, mul = group.inv, group.mul
    sym = genset.sym
    sym_set = genset.sym_set
    reps = list(genset.class_reps)
    class_of = {}
    for idx, rep in enumerate(reps):
        class_of[rep] = idx
        class_of[inv(rep)] = idx
    swappable = [not group.is_involution(rep) for rep in reps]
    grouped = [[] for _ in reps]
    for s in (group.identity,) + sym:
        cs = class_of.get(s, -1)
        for t in sym:
            st = mul(s, t)
            if st not in sym_set:
                continue
            cst = class_of[st]
            last = max(cs, cst)
            if last >= 0:
                grouped[last].append((s, t, inv(t), st))
    return reps, class_of, swappable, grouped


def iter_colour_ball_members(group: Group, genset: GenSet):
    """Yield the members of the colour-preserving ball group as element
    maps on {1} union T^pm, identity first, in deterministic order."""
    inv, mul = group.inv, group.mul
    reps, class_of, swappable, grouped = _colour_ball_constraints(group, genset)
    k = len(reps)
    assign = [0] * k

    def phi(x):
        if x == group.identity:
            return x
        return inv(x) if assign[class_of[x]] else x

    def ok(level):
        for (s, t, t_inv, st) in grouped[level]:
            target = phi(st)
            ps = phi(s)
            if target != mul(ps, t) and target != mul(ps, t_inv):
                return False
        return True

    def rec(level):
        if level == k:
            mapping = {group.identity: group.identity}
            for rep in reps:
                mapping[rep] = phi(rep)
                mapping[inv(rep)] = phi(inv(rep))
            yield mapping
            return
        for value in ((0, 1) if swappable[level] else (0,)):
            assign[level] = value
            if ok(level):
                yield from rec(level + 1)
        assign[level] = 0

    yield from rec(0)


def ball_colour_autos(group: Group, genset: GenSet) -> ColourBallReport:
    members = list(iter_colour_ball_members(group, genset))
    return ColourBallReport(group, genset, members)


def is_colour_ball_member(group: Group, genset: GenSet, mapping: dict) -> bool:
    """Validate an explicit map on {1} union T^pm against the ball
    colour-automorphism conditions."""
    inv, mul = group.inv, group.mul
    verts = set(genset.sym) | {group.identity}
    if set(mapping) != verts or set(mapping.values()) != verts:
        return False
    if mapping[group.identity] != group.identity:
        return False
    for t in genset.sym:
        if mapping[t] not in (t, inv(t)):
            return False
    for s in verts:
        for t in genset.sym:
            st = mul(s, t)
            if st in genset.sym_set:
                if mapping[st] not in (mul(mapping[s], t),
                                       mul(mapping[s], inv(t))):
                    return False
    return True


def inverse_map_on_ball(group: Group, genset: GenSet) -> dict:
    verts = (group.identity,) + genset.sym
    return {v: group.inv(v) for v in verts}


# -- triple checks -------------------------------------------------------------


@dataclass
class TripleVerdict:
    mode: str
    verdict: bool
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_json(self, group: Optional[Group] = None) -> dict:
        data = {"mode": self.mode, "verdict": self.verdict}
        if self.witness is not None and group is not None:
            data["witness"] = {group.element_name(k): group.element_name(v)
                               for k, v in self.witness.items()}
        data.update(self.details)
        return data


def _require_subset(group: Group, small: GenSet, big: GenSet) -> None:
    if not small.sym_set <= big.sym_set:
        missing = sorted(small.sym_set - big.sym_set, key=group.sort_key)
        raise PreconditionError(
            "S must sit inside T (on symmetric closures); missing "
            + ", ".join(group.element_name(x) for x in missing))


def _ball_auto_maps(group: Group, genset: GenSet,
                    max_autos: int = limits.AUT_COUNT_BUDGET):
    """Automorphisms of the radius-1 ball fixing the identity, as element
    maps, plus the ball itself."""
    ball = build_ball(group, genset, 1)
    report = enumerate_automorphisms(ball.graph, fix=ball.center,
                                     max_autos=max_autos)
    elements = ball.elements
    maps = [{elements[i]: elements[p[i]] for i in range(len(elements))}
            for p in report.perms]
    return ball, maps


def check_triple(group: Group, s_set: GenSet, t_set: GenSet,
                 mode: str) -> TripleVerdict:
    """Local rigidity of the triple (G, S, T) read off radius-1 balls.

    orientation: every colour-preserving ball permutation over T fixes S^pm
    pointwise.  colour: every ball automorphism over T acts on the S-ball
    by colour-preserving maps.  grr: every ball automorphism over T fixes
    the S-ball pointwise."""
    if mode not in ("orientation", "colour", "grr"):
        raise PreconditionError(f"unknown triple mode {mode!r}")
    _require_subset(group, s_set, t_set)
    inv, mul = group.inv, group.mul
    if mode == "orientation":
        # the inverse map is the canonical obstruction; prefer it as witness
        inv_map = inverse_map_on_ball(group, t_set)
        if any(inv_map[s] != s for s in s_set.sym) and \
                is_colour_ball_member(group, t_set, inv_map):
            return TripleVerdict(mode, False, witness=inv_map,
                                 details={"witness_kind": "inverse-map"})
        checked = 0
        for mapping in iter_colour_ball_members(group, t_set):
            checked += 1
            moved = [s for s in s_set.sym if mapping[s] != s]
            if moved:
                return TripleVerdict(mode, False, witness=mapping,
                                     details={"members_checked": checked})
        return TripleVerdict(mode, True,
                             details={"members_checked": checked})

    ball, maps = _ball_auto_maps(group, t_set)
    s_vertices = (group.identity,) + s_set.sym
    s_pairs = []
    for g in s_vertices:
        gi = inv(g)
        for h in s_vertices:
            if h != g and mul(gi, h) in s_set.sym_set:
                s_pairs.append((g, h, mul(gi, h)))
    if mode == "grr":
        for mapping in maps:
            moved = [v for v in s_vertices if mapping[v] != v]
            if moved:
                return TripleVerdict(mode, False, witness=mapping,
                                     details={"autos_checked": len(maps)})
        return TripleVerdict(mode, True, details={"autos_checked": len(maps)})
    for mapping in maps:
        for (g, h, s) in s_pairs:
            img = mapping[h]
            pg = mapping[g]
            if img != mul(pg, s) and img != mul(pg, inv(s)):
                return TripleVerdict(mode, False, witness=mapping,
                                     details={"autos_checked": len(maps)})
    return TripleVerdict(mode, True, details={"autos_checked": len(maps)})


# -- global checks --------------------------------------------------------------


def colour_stabilizer(group: Group, genset: GenSet,
                      max_members: int = limits.AUT_COUNT_BUDGET) -> list:
    """Stabilizer of the identity inside the colour-preserving automorphisms
    of the full Cayley graph (finite groups only), as element maps."""
    elements = group.elements()
    inv, mul = group.inv, group.mul
    sym = genset.sym
    order = [group.identity]
    parent = {group.identity: None}
    seen = {group.identity}
    qi = 0
    while qi < len(order):
        g = order[qi]
        qi += 1
        for s in sym:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                parent[h] = (g, s)
                order.append(h)
    if len(order) != len(elements):
        raise PreconditionError("generating set does not cover the group")
    results = []
    phi = {group.identity: group.identity}
    used = {group.identity}

    def rec(pos):
        if pos == len(order):
            results.append(dict(phi))
            if len(results) > max_members:
                raise BudgetError("colour stabilizer exceeds budget")
            return
        v = order[pos]
        pg, s = parent[v]
        for cand in (mul(phi[pg], s), mul(phi[pg], inv(s))):
            if cand in used:
                continue
            consistent = True
            for t in sym:
                w = mul(v, t)
                if w in phi:
                    im = phi[w]
                    if im != mul(cand, t) and im != mul(cand, inv(t)):
                        consistent = False
                        break
            if consistent:
                phi[v] = cand
                used.add(cand)
                rec(pos + 1)
                del phi[v]
                used.discard(cand)

    rec(1)
    return results


@dataclass
class GlobalVerdict:
    mode: str
    verdict: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"mode": self.mode, "verdict": self.verdict, **self.details}


def check_global(group: Group, genset: GenSet, mode: str,
                 cross_check: bool = False) -> GlobalVerdict:
    """Global regular-representation checks on the full Cayley (di)graph.

    GRR / DRR: the stabilizer of the identity in the automorphism group of
    the graph / digraph is trivial.  ORR: DRR with no bigons.  colour-pair:
    every stabilizer member is colour-preserving.  orientation-pair: the
    colour-preserving ball group over S is trivial (works for huge groups)."""
    if mode == "orientation-pair":
        report = ball_colour_autos(group, genset)
        details = {"ball_members": report.count}
        if cross_check and group.is_enumerable():
            stab = colour_stabilizer(group, genset)
            details["global_members"] = len(stab)
            details["ball_global_agree"] = (
                (report.count == 1) == (len(stab) == 1))
        return GlobalVerdict(mode, report.count == 1, details)
    if not group.is_enumerable():
        raise BudgetError(
            f"{group.name} is not enumerable; only orientation-pair mode "
            f"works without enumeration")
    if mode in ("GRR", "colour-pair"):
        cay = build_cayley(group, genset, directed=False)
        stab = enumerate_automorphisms(cay.graph,
                                       fix=cay.index[group.identity])
        if mode == "GRR":
            return GlobalVerdict(mode, stab.count == 1,
                                 {"stabilizer_order": stab.count})
        flags = [perm_flags(cay, p) for p in stab.perms]
        bad = sum(1 for f in flags if not f["colour"])
        return GlobalVerdict(mode, bad == 0,
                             {"stabilizer_order": stab.count,
                              "non_colour_members": bad})
    if mode in ("DRR", "ORR"):
        dig = build_cayley(group, genset, directed=True)
        stab = enumerate_automorphisms(dig.graph,
                                       fix=dig.index[group.identity])
        verdict = stab.count == 1
        details = {"stabilizer_order": stab.count}
        if mode == "ORR":
            bigon = dig.has_bigon()
            details["has_bigon"] = bigon
            verdict = verdict and not bigon
        return GlobalVerdict(mode, verdict, details)
    raise PreconditionError(f"unknown global mode {mode!r}")

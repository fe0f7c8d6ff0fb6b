"""Group backends, element arithmetic, generating sets and word-length balls.

Elements are plain hashable Python values owned by their Group (ints for
table/cyclic groups, image tuples for permutations, small tuples for the
built-in extensions).  All groups are immutable after construction and safe
to share.
"""

from __future__ import annotations

import itertools
import random
from math import gcd
from typing import Iterable, Optional, Sequence

from . import limits
from .errors import BudgetError, GroupSpecError, PreconditionError


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Group:
    """Abstract multiplication structure with identity, inversion and a
    canonical total order on elements."""

    name = "group"

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when unknown (not enumerated / infinite)."""
        return None

    def sort_key(self, g):
        """Key for the canonical total order on elements."""
        return g

    def element_name(self, g) -> str:
        return str(g)

    def generators(self) -> dict:
        """Named generators, used for reports and word parsing."""
        return {}

    def element_from_token(self, token: str):
        """Resolve a single name token to an element (backend hook)."""
        gens = self.generators()
        if token in gens:
            return gens[token]
        if token in ("e", "id"):
            return self.identity
        raise KeyError(token)

    # -- derived arithmetic ------------------------------------------------

    def power(self, g, k: int):
        """g**k by binary exponentiation; k may be negative."""
        if k < 0:
            g = self.inv(g)
            k = -k
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def conjugate(self, g, a):
        """g a g^-1."""
        return self.mul(self.mul(g, a), self.inv(g))

    def commutes(self, a, b) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def commutator(self, a, b):
        """a b a^-1 b^-1."""
        return self.mul(self.mul(a, b), self.inv(self.mul(b, a)))

    def is_involution(self, g) -> bool:
        return g != self.identity and self.mul(g, g) == self.identity

    # -- enumeration -------------------------------------------------------

    def is_enumerable(self, limit: int = limits.ENUM_LIMIT) -> bool:
        return self.order is not None and self.order <= limit

    def elements(self, limit: int = limits.ENUM_LIMIT) -> tuple:
        """All elements in canonical order; BudgetError when not enumerable."""
        if not self.is_enumerable(limit):
            raise BudgetError(
                f"{self.name}: order {self.order!r} exceeds enumeration "
                f"limit {limit}"
            )
        return self._all_elements()

    def _all_elements(self) -> tuple:
        raise NotImplementedError

    def element_order(self, g, cap: Optional[int] = None) -> Optional[int]:
        """Smallest k >= 1 with g^k = 1, or None when it exceeds `cap`
        (or cannot be determined).  Found by walking g, g^2, g^3, ..."""
        limit = cap if cap is not None else (self.order or limits.ENUM_LIMIT)
        acc = g
        k = 1
        while k <= limit:
            if acc == self.identity:
                return k
            acc = self.mul(acc, g)
            k += 1
        return None


class TableGroup(Group):
    """Finite group given by element names and an n x n index table."""

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]],
                 name: str = "table", generator_names: Optional[Iterable[str]] = None,
                 rng_seed: int = 0):
        self.name = name
        self._names = tuple(str(x) for x in names)
        n = len(self._names)
        if len(set(self._names)) != n:
            raise GroupSpecError("duplicate element names in table group")
        self._table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self._table) != n or any(len(r) != n for r in self._table):
            raise GroupSpecError(f"table must be {n}x{n}")
        full = set(range(n))
        for i, row in enumerate(self._table):
            if set(row) != full:
                raise GroupSpecError(f"table is not a Latin square (row {i})")
        for j in range(n):
            if {row[j] for row in self._table} != full:
                raise GroupSpecError(f"table is not a Latin square (column {j})")
        self._identity = self._find_identity()
        self._check_associativity(rng_seed)
        self._inverses = self._find_inverses()
        gnames = tuple(generator_names) if generator_names else ()
        for g in gnames:
            if g not in self._names:
                raise GroupSpecError(f"unknown generator name {g!r}")
        self._generator_names = gnames

    def _find_identity(self) -> int:
        n = len(self._names)
        for e in range(n):
            if all(self._table[e][x] == x and self._table[x][e] == x
                   for x in range(n)):
                return e
        raise GroupSpecError("table has no identity element")

    def _check_associativity(self, rng_seed: int) -> None:
        n = len(self._names)
        t = self._table
        if n <= 256:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(rng_seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20 * n))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupSpecError(
                    f"table is not associative at ({a},{b},{c})")

    def _find_inverses(self) -> tuple:
        n = len(self._names)
        e = self._identity
        return tuple(self._table[a].index(e) for a in range(n))

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a, b):
        return self._table[a][b]

    def inv(self, a):
        return self._inverses[a]

    @property
    def order(self) -> int:
        return len(self._names)

    def _all_elements(self) -> tuple:
        return tuple(range(len(self._names)))

    def element_name(self, g) -> str:
        return self._names[g]

    def generators(self) -> dict:
        if self._generator_names:
            return {x: self._names.index(x) for x in self._generator_names}
        return {x: i for i, x in enumerate(self._names)}

    def element_from_token(self, token: str):
        if token in self._names:
            return self._names.index(token)
        return super().element_from_token(token)


class CyclicGroup(Group):
    """Z/n written additively (n = None gives the infinite cyclic group Z)."""

    def __init__(self, n: Optional[int]):
        if n is not None and n < 1:
            raise GroupSpecError("cyclic group needs n >= 1 (or None for Z)")
        self.n = n
        self.name = f"Z{n}" if n is not None else "Z"

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a, b):
        s = a + b
        return s % self.n if self.n is not None else s

    def inv(self, a):
        return (-a) % self.n if self.n is not None else -a

    def power(self, g, k):
        v = g * k
        return v % self.n if self.n is not None else v

    @property
    def order(self) -> Optional[int]:
        return self.n

    def _all_elements(self) -> tuple:
        return tuple(range(self.n))

    def element_order(self, g, cap=None):
        if g == 0:
            return 1
        if self.n is None:
            return None
        o = self.n // gcd(self.n, g)
        if cap is not None and o > cap:
            return None
        return o

    def generators(self) -> dict:
        return {"g": 1 if (self.n is None or self.n > 1) else 0}

    def element_from_token(self, token: str):
        try:
            v = int(token)
        except ValueError:
            return super().element_from_token(token)
        return v % self.n if self.n is not None else v


class PermutationGroup(Group):
    """Subgroup of Sym(degree) generated by given permutations.

    Elements are image tuples (0-based); composition acts left-to-right on
    points: mul(a, b) maps x to a[b[x]].  The full element set is only
    enumerated on demand, within a budget.
    """

    def __init__(self, degree: int, gens: Sequence[Sequence[int]],
                 names: Optional[Sequence[str]] = None, name: str = "perm"):
        if degree < 1:
            raise GroupSpecError("permutation degree must be >= 1")
        self.degree = degree
        pts = set(range(degree))
        self._gens = tuple(tuple(int(x) for x in g) for g in gens)
        for g in self._gens:
            if len(g) != degree or set(g) != pts:
                raise GroupSpecError(f"not a permutation of 0..{degree - 1}: {g}")
        if names is None:
            names = [f"g{i}" for i in range(len(self._gens))]
        self._gen_names = tuple(names)
        if len(self._gen_names) != len(self._gens):
            raise GroupSpecError("generator name count mismatch")
        self.name = name
        self._elements_cache: Optional[tuple] = None

    @property
    def identity(self) -> tuple:
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(a[x] for x in b)

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def cycles(self, g) -> list:
        """Cycle decomposition (including fixed points as 1-cycles)."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = g[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = g[x]
            out.append(cyc)
        return out

    def element_order(self, g, cap=None):
        o = 1
        for cyc in self.cycles(g):
            o = _lcm(o, len(cyc))
        if cap is not None and o > cap:
            return None
        return o

    @property
    def order(self) -> Optional[int]:
        if self._elements_cache is not None:
            return len(self._elements_cache)
        return None

    def is_enumerable(self, limit: int = limits.ENUM_LIMIT) -> bool:
        try:
            self._enumerate(limit)
        except BudgetError:
            return False
        return True

    def _enumerate(self, limit: int) -> tuple:
        if self._elements_cache is not None:
            if len(self._elements_cache) > limit:
                raise BudgetError("permutation group exceeds enumeration limit")
            return self._elements_cache
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self._gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        if len(seen) >= limit:
                            raise BudgetError(
                                f"permutation group exceeds enumeration "
                                f"limit {limit}")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self._elements_cache = tuple(sorted(seen))
        return self._elements_cache

    def _all_elements(self) -> tuple:
        return self._enumerate(limits.ENUM_LIMIT)

    def elements(self, limit: int = limits.ENUM_LIMIT) -> tuple:
        return self._enumerate(limit)

    def element_name(self, g) -> str:
        parts = ["(" + " ".join(str(x) for x in c) + ")"
                 for c in self.cycles(g) if len(c) > 1]
        return "".join(parts) if parts else "e"

    def generators(self) -> dict:
        return dict(zip(self._gen_names, self._gens))


class GeneralizedDihedral(Group):
    """A x| Z/2 with the involution acting on the abelian group A by
    inversion.  A is a product of cyclic groups given by its factor list.

    Elements are ((a_1, ..., a_k), eps)."""

    def __init__(self, factors: Sequence[int], name: Optional[str] = None):
        self.factors = tuple(int(n) for n in factors)
        if not self.factors or any(n < 1 for n in self.factors):
            raise GroupSpecError("generalized dihedral needs positive factors")
        self.name = name or ("GDih" + "x".join(str(n) for n in self.factors))

    def _anorm(self, a):
        return tuple(x % n for x, n in zip(a, self.factors))

    @property
    def identity(self):
        return (tuple(0 for _ in self.factors), 0)

    def mul(self, x, y):
        a, e = x
        b, f = y
        if e:
            b = tuple(-v for v in b)
        return (self._anorm(tuple(u + v for u, v in zip(a, b))), (e + f) % 2)

    def inv(self, x):
        a, e = x
        if e:
            return (self._anorm(a), 1)
        return (self._anorm(tuple(-v for v in a)), 0)

    @property
    def order(self) -> int:
        o = 2
        for n in self.factors:
            o *= n
        return o

    def sort_key(self, g):
        return (g[1], g[0])

    def _all_elements(self) -> tuple:
        ranges = [range(n) for n in self.factors]
        return tuple(sorted(((tuple(a), e) for e in (0, 1)
                             for a in itertools.product(*ranges)),
                            key=self.sort_key))

    def element_order(self, g, cap=None):
        a, e = g
        if e:
            return 2
        o = 1
        for v, n in zip(a, self.factors):
            if v % n:
                o = _lcm(o, n // gcd(n, v % n))
        if cap is not None and o > cap:
            return None
        return o

    def element_name(self, g) -> str:
        a, e = g
        if len(self.factors) == 1:
            parts = []
            if a[0]:
                parts.append("r" if a[0] == 1 else f"r^{a[0]}")
            if e:
                parts.append("f")
            return "*".join(parts) if parts else "e"
        vec = ",".join(str(v) for v in a)
        return f"({vec}{';f' if e else ''})"

    def generators(self) -> dict:
        k = len(self.factors)
        gens = {}
        for i in range(k):
            a = tuple(1 if j == i else 0 for j in range(k))
            gens["r" if k == 1 else f"a{i + 1}"] = (self._anorm(a), 0)
        gens["f"] = (tuple(0 for _ in self.factors), 1)
        return gens


def dihedral(n: int) -> GeneralizedDihedral:
    """Dihedral group of order 2n (generators r of order n and flip f)."""
    g = GeneralizedDihedral([n], name=f"D{n}")
    return g


class GeneralizedDicyclic(Group):
    """Extension of an abelian group A by an order-4 element x with
    x^2 = y (a fixed involution of A) and x a x^-1 = a^-1.

    Elements are (a, eps) with a in A; (a,1) stands for a*x."""

    def __init__(self, abelian: Group, y, name: Optional[str] = None):
        self.A = abelian
        if self.A.mul(y, y) != self.A.identity or y == self.A.identity:
            raise GroupSpecError(
                "generalized dicyclic needs y to be an involution of A")
        gens = list(self.A.generators().values())
        for a, b in itertools.combinations(gens, 2):
            if not self.A.commutes(a, b):
                raise GroupSpecError("generalized dicyclic needs A abelian")
        self.y = y
        self.name = name or f"Dic({self.A.name})"

    @property
    def identity(self):
        return (self.A.identity, 0)

    def mul(self, g, h):
        a, e = g
        b, f = h
        if e:
            b = self.A.inv(b)
            if f:
                return (self.A.mul(self.A.mul(a, b), self.y), 0)
            return (self.A.mul(a, b), 1)
        return (self.A.mul(a, b), f)

    def inv(self, g):
        a, e = g
        if e:
            # (a,1)^-1 = (a*y, 1): check (a,1)(a*y,1) = (a*(a*y)^-1*y, 0) = 1
            return (self.A.mul(a, self.y), 1)
        return (self.A.inv(a), 0)

    @property
    def order(self) -> Optional[int]:
        return None if self.A.order is None else 2 * self.A.order

    def sort_key(self, g):
        return (g[1], self.A.sort_key(g[0]))

    def _all_elements(self) -> tuple:
        return tuple(sorted(((a, e) for e in (0, 1)
                             for a in self.A.elements()), key=self.sort_key))

    def element_order(self, g, cap=None):
        a, e = g
        if e:
            return 4  # (a,1)^2 = (y,0) of order 2
        return self.A.element_order(a, cap)

    def element_name(self, g) -> str:
        a, e = g
        an = self.A.element_name(a)
        if not e:
            return an
        return "x" if a == self.A.identity else f"{an}*x"

    def generators(self) -> dict:
        gens = {k: (v, 0) for k, v in self.A.generators().items()}
        gens["x"] = (self.A.identity, 1)
        return gens


class HnGroup(Group):
    """2-group of order 2^(n+1) on generators s_1..s_n where conjugation by
    any generator inverts every other generator and all squares equal the
    central involution eps = s_1^2.

    Elements are (a0, bits): eps^a0 * prod s_i^{bit i}, multiplied through
    the cocycle c(v, w) = sum_{i>j} v_i w_j + sum_i v_i w_i (mod 2)."""

    def __init__(self, n: int):
        if n < 2:
            raise GroupSpecError("hn family needs n >= 2")
        self.n = n
        self.name = f"H{n}"

    @staticmethod
    def _cocycle(v: int, w: int) -> int:
        par = bin(v & w).count("1") & 1
        x = v
        while x:
            low = x & (-x)
            par ^= bin(w & (low - 1)).count("1") & 1
            x ^= low
        return par

    @property
    def identity(self):
        return (0, 0)

    def mul(self, g, h):
        a0, v = g
        b0, w = h
        return ((a0 + b0 + self._cocycle(v, w)) & 1, v ^ w)

    def inv(self, g):
        a0, v = g
        return ((a0 + self._cocycle(v, v)) & 1, v)

    @property
    def order(self) -> int:
        return 2 ** (self.n + 1)

    def sort_key(self, g):
        return (g[1], g[0])

    def _all_elements(self) -> tuple:
        return tuple(sorted(((a0, v) for v in range(2 ** self.n)
                             for a0 in (0, 1)), key=self.sort_key))

    def element_order(self, g, cap=None):
        if g == (0, 0):
            return 1
        a0, v = g
        return 2 if self._cocycle(v, v) == 0 else 4

    def element_name(self, g) -> str:
        a0, v = g
        parts = ["eps"] if a0 else []
        for i in range(self.n):
            if v >> i & 1:
                parts.append(f"s{i + 1}")
        return "*".join(parts) if parts else "e"

    def generators(self) -> dict:
        gens = {f"s{i + 1}": (0, 1 << i) for i in range(self.n)}
        gens["eps"] = (1, 0)
        return gens


class ProductGroup(Group):
    """Direct product; elements are tuples of component elements."""

    def __init__(self, components: Sequence[Group], name: Optional[str] = None):
        self.components = tuple(components)
        if not self.components:
            raise GroupSpecError("product needs at least one component")
        self.name = name or "x".join(g.name for g in self.components)

    @property
    def identity(self):
        return tuple(g.identity for g in self.components)

    def mul(self, a, b):
        return tuple(g.mul(x, y)
                     for g, x, y in zip(self.components, a, b))

    def inv(self, a):
        return tuple(g.inv(x) for g, x in zip(self.components, a))

    @property
    def order(self) -> Optional[int]:
        o = 1
        for g in self.components:
            if g.order is None:
                return None
            o *= g.order
        return o

    def sort_key(self, g):
        return tuple(c.sort_key(x) for c, x in zip(self.components, g))

    def _all_elements(self) -> tuple:
        return tuple(sorted(itertools.product(
            *(g.elements() for g in self.components)), key=self.sort_key))

    def element_order(self, g, cap=None):
        o = 1
        for comp, x in zip(self.components, g):
            ox = comp.element_order(x, cap)
            if ox is None:
                return None
            o = _lcm(o, ox)
        if cap is not None and o > cap:
            return None
        return o

    def element_name(self, g) -> str:
        return "(" + ",".join(c.element_name(x)
                              for c, x in zip(self.components, g)) + ")"

    def generators(self) -> dict:
        gens = {}
        for i, comp in enumerate(self.components):
            for cname, cval in comp.generators().items():
                lifted = tuple(cval if j == i else other.identity
                               for j, other in enumerate(self.components))
                gens[f"{cname}{i}" if len(self.components) > 1 else cname] = lifted
        return gens


_Q8_UNIT_MUL = {
    (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
    (1, 0): (0, 1), (2, 0): (0, 2), (3, 0): (0, 3),
    (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
    (1, 2): (0, 3), (2, 1): (1, 3),
    (2, 3): (0, 1), (3, 2): (1, 1),
    (3, 1): (0, 2), (1, 3): (1, 2),
}


def q8_group() -> TableGroup:
    """Quaternion group {1,-1,i,-i,j,-j,k,-k} as a named table group."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = lambda sign, unit: 2 * unit + sign
    table = [[0] * 8 for _ in range(8)]
    for s1 in (0, 1):
        for u1 in range(4):
            for s2 in (0, 1):
                for u2 in range(4):
                    s3, u3 = _Q8_UNIT_MUL[(u1, u2)]
                    table[idx(s1, u1)][idx(s2, u2)] = idx((s1 + s2 + s3) % 2, u3)
    return TableGroup(names, table, name="Q8", generator_names=("i", "j", "k"))


# -- generating sets and balls ----------------------------------------------


class GenSet:
    """A generating set with its symmetric closure and class statistics.

    `p` counts inverse-classes {s, s^-1} of involutions, `q` those of order
    at least 3, so the symmetric closure has exactly p + 2q elements."""

    def __init__(self, group: Group, elements: Iterable, check: bool = True):
        self.group = group
        base = sorted(set(elements), key=group.sort_key)
        if not base:
            raise PreconditionError("generating set must be non-empty")
        if group.identity in base:
            raise PreconditionError("generating set must not contain the identity")
        self.base = tuple(base)
        sym = set(base)
        sym.update(group.inv(s) for s in base)
        self.sym = tuple(sorted(sym, key=group.sort_key))
        self.sym_set = frozenset(sym)
        reps = sorted({min(s, group.inv(s), key=group.sort_key) for s in sym},
                      key=group.sort_key)
        self.class_reps = tuple(reps)
        self.p = sum(1 for s in reps if group.is_involution(s))
        self.q = len(reps) - self.p
        if check and group.is_enumerable():
            if closure(group, self.base) != frozenset(group.elements()):
                raise PreconditionError(
                    f"set does not generate {group.name}: "
                    f"{[group.element_name(s) for s in self.base]}")

    def __len__(self) -> int:
        return len(self.base)

    def __iter__(self):
        return iter(self.base)

    def class_of(self, s) -> tuple:
        return min(s, self.group.inv(s), key=self.group.sort_key)

    def names(self) -> list:
        return [self.group.element_name(s) for s in self.base]

    def ball(self, n: int, budget: int = limits.BALL_BUDGET) -> tuple:
        if not hasattr(self, "_ball_cache"):
            object.__setattr__(self, "_ball_cache", {})
        key = (n, budget)
        if key not in self._ball_cache:
            self._ball_cache[key] = ball_elements(self.group, self, n,
                                                  budget=budget)
        return self._ball_cache[key]


def gen_set(group: Group, elements: Iterable, check: bool = True) -> GenSet:
    return GenSet(group, elements, check=check)


def words_gen_set(group: Group, words: str, check: bool = True) -> GenSet:
    """GenSet from a comma-separated list of element words."""
    from .words import parse_element
    elems = [parse_element(group, w) for w in words.split(",") if w.strip()]
    return GenSet(group, elems, check=check)


def closure(group: Group, gens: Iterable, budget: int = limits.ENUM_LIMIT) -> frozenset:
    """Subgroup generated by `gens`, as a frozenset of elements."""
    gens = list(gens)
    seen = {group.identity}
    frontier = [group.identity]
    # inverses come for free: finite orbits of right multiplication close up
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in seen:
                    if len(seen) >= budget:
                        raise BudgetError(f"closure exceeds budget {budget}")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generates(group: Group, gens: Iterable) -> bool:
    if group.order is None:
        raise PreconditionError(
            "cannot decide generation for a non-enumerable group")
    return len(closure(group, gens, budget=group.order)) == group.order


def ball_elements(group: Group, gens, n: int,
                  budget: int = limits.BALL_BUDGET) -> tuple:
    """Non-identity elements of word length <= n over the symmetric closure,
    in canonical order (breadth-first closure underneath)."""
    if n < 0:
        raise PreconditionError("ball radius must be >= 0")
    sym = gens.sym if isinstance(gens, GenSet) else tuple(gens)
    seen = {group.identity}
    frontier = [group.identity]
    for _ in range(n):
        nxt = []
        for x in frontier:
            for s in sym:
                y = group.mul(x, s)
                if y not in seen:
                    if len(seen) > budget:
                        raise BudgetError(f"ball exceeds budget {budget}")
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    seen.discard(group.identity)
    return tuple(sorted(seen, key=group.sort_key))


# -- family registry ---------------------------------------------------------


def make_group(spec: dict) -> Group:
    """Build a group from a JSON-style descriptor; see README for formats."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise GroupSpecError("group spec must be an object with a 'type' key")
    kind = spec["type"]
    if kind == "cyclic":
        n = spec.get("n")
        return CyclicGroup(None if n in (None, 0) else int(n))
    if kind == "dihedral":
        return dihedral(int(spec["n"]))
    if kind == "generalized_dihedral":
        return GeneralizedDihedral([int(x) for x in spec["factors"]])
    if kind == "generalized_dicyclic":
        abelian = make_group(spec["abelian"])
        from .words import parse_element
        y = parse_element(abelian, str(spec["y"]))
        return GeneralizedDicyclic(abelian, y)
    if kind == "q8":
        return q8_group()
    if kind == "hn":
        return HnGroup(int(spec["n"]))
    if kind == "product":
        return ProductGroup([make_group(s) for s in spec["factors"]])
    if kind == "table":
        return TableGroup(spec["names"], spec["table"],
                          name=spec.get("name", "table"),
                          generator_names=spec.get("generators"))
    if kind == "permutation":
        return PermutationGroup(int(spec["degree"]), spec["generators"],
                                names=spec.get("names"),
                                name=spec.get("name", "perm"))
    if kind == "abc_permutation":
        from .instances import abc_permutation_instance
        group, _, _ = abc_permutation_instance(int(spec.get("p", 269)),
                                               seed=int(spec.get("seed", 1)))
        return group
    raise GroupSpecError(f"unknown group family {kind!r}")

"""Group-theoretic predicates behind the rigidity theorems: abelian and
exponent tests, generalized dicyclic/dihedral detection with verified
witnesses, the quaternion two-relation test, and the generating-set
conditions star (*), dagger and ddagger."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from . import limits
from .errors import BudgetError, PreconditionError
from .groups import GenSet, Group, closure


def _lcm(a, b):
    return a // gcd(a, b) * b


def center(group: Group) -> frozenset:
    elements = group.elements()
    return frozenset(z for z in elements
                     if all(group.commutes(z, g) for g in elements))


def is_central(group: Group, g) -> bool:
    """Exact center membership via the named generators (works on huge
    backends); falls back to a full scan when no generators are declared."""
    gens = list(group.generators().values())
    if gens:
        return all(group.commutes(g, x) for x in gens)
    return all(group.commutes(g, x) for x in group.elements())


def square_subgroup(group: Group) -> frozenset:
    """Subgroup generated by all squares (finite groups)."""
    squares = {group.mul(g, g) for g in group.elements()}
    return closure(group, squares)


def exponent(group: Group) -> Optional[int]:
    """Least common multiple of element orders; None when unknown or
    infinite."""
    if not group.is_enumerable():
        return None
    e = 1
    for g in group.elements():
        o = group.element_order(g)
        if o is None:
            return None
        e = _lcm(e, o)
    return e


def is_abelian(group: Group) -> bool:
    gens = list(group.generators().values())
    if gens:
        return all(group.commutes(a, b)
                   for i, a in enumerate(gens) for b in gens[i + 1:])
    elements = group.elements()
    return all(group.commutes(a, b)
               for i, a in enumerate(elements) for b in elements[i + 1:])


# -- generalized dicyclic / dihedral detection --------------------------------


def _coset_quotient_hyperplanes(group: Group):
    """Index-2 subgroups of G listed as preimages of hyperplanes in the
    elementary abelian quotient G / <squares, commutators>."""
    elements = group.elements()
    gens = {group.mul(g, g) for g in elements}
    gens.update(group.commutator(a, b)
                for i, a in enumerate(elements) for b in elements[i + 1:])
    k_sub = closure(group, gens)
    if len(elements) % len(k_sub):
        raise PreconditionError("subgroup size does not divide group order")
    # coset labels
    coset_of = {}
    reps = []
    for g in sorted(elements, key=group.sort_key):
        if g in coset_of:
            continue
        reps.append(g)
        for h in k_sub:
            coset_of[group.mul(g, h)] = len(reps) - 1
    m = len(reps)
    if m & (m - 1):
        raise PreconditionError("quotient by squares and commutators is "
                                "not a 2-group: the table is inconsistent")
    # coordinates over F2: pick a greedy basis of coset representatives
    coords = {coset_of[group.identity]: 0}
    basis = []
    for idx, rep in enumerate(reps):
        if idx in coords:
            continue
        basis.append(rep)
        bit = 1 << (len(basis) - 1)
        for known_idx, vec in list(coords.items()):
            combo = group.mul(reps[known_idx], rep)
            coords[coset_of[combo]] = vec | bit
    dim = len(basis)
    assert len(coords) == m == 2 ** dim
    vec_map = {g: coords[coset_of[g]] for g in elements}
    hyperplanes = []
    for lam in range(1, 2 ** dim):
        sub = frozenset(g for g in elements
                        if bin(vec_map[g] & lam).count("1") % 2 == 0)
        hyperplanes.append(sub)
    return hyperplanes


def _is_abelian_subset(group: Group, subset) -> bool:
    items = sorted(subset, key=group.sort_key)
    return all(group.commutes(a, b)
               for i, a in enumerate(items) for b in items[i + 1:])


def dicyclic_witness_for(group: Group, a_subgroup) -> Optional[object]:
    """Order-4 element x outside the abelian subgroup with x a x^-1 = a^-1
    for every a, or None."""
    a_set = frozenset(a_subgroup)
    if not _is_abelian_subset(group, a_set):
        return None
    if 2 * len(a_set) != len(group.elements()):
        return None
    for x in sorted(set(group.elements()) - a_set, key=group.sort_key):
        if group.element_order(x) != 4:
            continue
        if all(group.conjugate(x, a) == group.inv(a) for a in a_set):
            return x
    return None


def dihedral_witness_for(group: Group, a_subgroup) -> Optional[object]:
    """Involution t outside the abelian subgroup inverting it, or None."""
    a_set = frozenset(a_subgroup)
    if not _is_abelian_subset(group, a_set):
        return None
    if 2 * len(a_set) != len(group.elements()):
        return None
    for t in sorted(set(group.elements()) - a_set, key=group.sort_key):
        if not group.is_involution(t):
            continue
        if all(group.conjugate(t, a) == group.inv(a) for a in a_set):
            return t
    return None


@dataclass
class ClassificationReport:
    group_name: str
    abelian: bool
    exponent: Optional[int]
    has_element_of_order_gt2: bool
    generalized_dicyclic: bool
    dicyclic_witness: Optional[tuple] = None   # (A elements, x)
    generalized_dihedral: bool = False
    dihedral_witness: Optional[tuple] = None   # (A elements, t)
    center: tuple = ()
    watkins_obstruction: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_json(self, group: Optional[Group] = None) -> dict:
        name = group.element_name if group else str
        data = {
            "group": self.group_name,
            "abelian": self.abelian,
            "exponent": self.exponent if self.exponent is not None else "unknown",
            "has_element_of_order_gt2": self.has_element_of_order_gt2,
            "generalized_dicyclic": self.generalized_dicyclic,
            "generalized_dihedral": self.generalized_dihedral,
            "center": [name(z) for z in self.center],
        }
        if self.dicyclic_witness:
            a_set, x = self.dicyclic_witness
            data["dicyclic_witness"] = {
                "A": [name(a) for a in sorted(a_set)[:64]] if group is None
                else [name(a) for a in a_set],
                "x": name(x),
            }
        if self.dihedral_witness:
            a_set, t = self.dihedral_witness
            data["dihedral_witness"] = {
                "A": [name(a) for a in a_set], "t": name(t)}
        if self.watkins_obstruction is not None:
            data["watkins_obstruction"] = self.watkins_obstruction["kind"]
        data.update(self.details)
        return data


def _validate_pm_automorphism(group: Group, phi) -> bool:
    """phi must be a group automorphism with phi(g) in {g, g^-1}."""
    elements = group.elements()
    for g in elements:
        if phi(g) not in (g, group.inv(g)):
            return False
    for a in elements:
        fa = phi(a)
        for b in elements:
            if phi(group.mul(a, b)) != group.mul(fa, phi(b)):
                return False
    return True


def classify_group(group: Group) -> ClassificationReport:
    """Full classification of a finite enumerable group; the fields that
    drive the rigidity theorems are exact, and every detection witness is
    re-verified by direct multiplication."""
    if not group.is_enumerable():
        raise BudgetError(
            f"{group.name} is not enumerable; classification of huge "
            f"backends needs a finite witness quotient")
    elements = group.elements()
    abelian = _is_abelian_subset(group, elements)
    exp = exponent(group)
    gt2 = exp is not None and exp > 2
    zcenter = tuple(sorted(center(group), key=group.sort_key))

    dicyclic = False
    dicyclic_witness = None
    dihedral_flag = False
    dihedral_witness = None
    if len(elements) > 1:
        for sub in _coset_quotient_hyperplanes(group):
            if not _is_abelian_subset(group, sub):
                continue
            # dicyclic is a non-abelian notion by definition
            if not abelian and dicyclic_witness is None:
                x = dicyclic_witness_for(group, sub)
                if x is not None:
                    dicyclic = True
                    a_sorted = tuple(sorted(sub, key=group.sort_key))
                    dicyclic_witness = (a_sorted, x)
            if dihedral_witness is None:
                t = dihedral_witness_for(group, sub)
                if t is not None:
                    dihedral_flag = True
                    a_sorted = tuple(sorted(sub, key=group.sort_key))
                    dihedral_witness = (a_sorted, t)
            if (abelian or dicyclic_witness is not None) and \
                    dihedral_witness is not None:
                break

    obstruction = None
    if abelian and gt2:
        phi = group.inv
        if _validate_pm_automorphism(group, phi):
            obstruction = {"kind": "inverse", "map": {g: phi(g)
                                                      for g in elements}}
    elif dicyclic:
        a_set = frozenset(dicyclic_witness[0])
        mapping = {g: (g if g in a_set else group.inv(g)) for g in elements}
        if _validate_pm_automorphism(group, mapping.__getitem__):
            obstruction = {"kind": "identity-on-A", "map": mapping}

    return ClassificationReport(
        group_name=group.name,
        abelian=abelian,
        exponent=exp,
        has_element_of_order_gt2=gt2,
        generalized_dicyclic=dicyclic,
        dicyclic_witness=dicyclic_witness,
        generalized_dihedral=dihedral_flag,
        dihedral_witness=dihedral_witness,
        center=zcenter,
        watkins_obstruction=obstruction,
    )


def is_orientation_exceptional(group: Group) -> bool:
    """True when the group is generalized dicyclic or abelian with an
    element of order greater than 2 (the two non-rigid families)."""
    rep = classify_group(group)
    return rep.generalized_dicyclic or (rep.abelian and
                                        rep.has_element_of_order_gt2)


# -- quaternion test -----------------------------------------------------------


NOT_Q8 = "not-q8-quotient"
PROPER_QUOTIENT = "proper-quotient"
IS_Q8 = "isomorphic-to-q8"


def q8_test(group: Group, g, h) -> str:
    """Classify <g, h> through the two relations gh = hg^-1 and
    hg = gh^-1: both must hold for a quaternion quotient; the quotient is
    proper exactly when <g, h> is elementary abelian of exponent <= 2."""
    mul, inv = group.mul, group.inv
    if mul(g, h) != mul(h, inv(g)) or mul(h, g) != mul(g, inv(h)):
        return NOT_Q8
    sub = closure(group, [g, h], budget=16)
    if any(group.mul(x, x) != group.identity for x in sub) or \
            not _is_abelian_subset(group, sub):
        assert len(sub) == 8
        return IS_Q8
    return PROPER_QUOTIENT


# -- generating-set conditions ---------------------------------------------------


STAR = "star"
DAGGER = "dagger"
DDAGGER = "ddagger"


def star_witness_ok(group: Group, s, g) -> bool:
    """g certifies s for condition star: s^2 != g^2 and s g s^-1 is neither
    g nor g^-1."""
    if group.mul(s, s) == group.mul(g, g):
        return False
    c = group.conjugate(s, g)
    return c != g and c != group.inv(g)


def find_star_witness(group: Group, genset: GenSet, s,
                      search_radius: Optional[int] = None):
    """Witness search for one element: candidates sh, sh^-1, hs^-1,
    h^-1 s^-1 over non-commuting h in the radius-2 ball first, then an
    exhaustive or ball-limited sweep."""
    mul, inv = group.mul, group.inv
    for h in genset.ball(2):
        if group.commutes(s, h):
            continue
        for cand in (mul(s, h), mul(s, inv(h)), mul(h, inv(s)),
                     mul(inv(h), inv(s))):
            if cand != group.identity and star_witness_ok(group, s, cand):
                return cand
    if group.is_enumerable():
        pool = group.elements()
    elif search_radius is not None:
        pool = genset.ball(search_radius)
    else:
        raise PreconditionError(
            "witness search on a non-enumerable group needs a search radius")
    for cand in pool:
        if cand != group.identity and star_witness_ok(group, s, cand):
            return cand
    return None


@dataclass
class ConditionReport:
    which: str
    verdict: bool
    witnesses: dict = field(default_factory=dict)  # s -> "order2" | g_s
    violations: list = field(default_factory=list)

    def to_json(self, group: Optional[Group] = None) -> dict:
        name = group.element_name if group else str
        return {
            "condition": self.which,
            "verdict": self.verdict,
            "witnesses": {name(s): (w if isinstance(w, str) else name(w))
                          for s, w in self.witnesses.items()},
            "violations": [name(v) for v in self.violations],
        }


def check_condition(group: Group, genset: GenSet, which: str,
                    search_radius: Optional[int] = None) -> ConditionReport:
    if which == STAR:
        witnesses = {}
        violations = []
        for s in genset.base:
            if group.mul(s, s) == group.identity:
                witnesses[s] = "order2"
                continue
            g = find_star_witness(group, genset, s, search_radius)
            if g is None:
                violations.append(s)
            else:
                witnesses[s] = g
        return ConditionReport(STAR, not violations, witnesses, violations)

    if which == DAGGER:
        violations = []
        witnesses = {}
        for s in genset.base:
            s2 = group.mul(s, s)
            if s2 == group.identity:
                witnesses[s] = "order2"
                continue
            if is_central(group, s):
                violations.append(s)
                continue
            if group.mul(s2, s2) == group.identity:  # order exactly 4
                violations.append(s)
                continue
            witnesses[s] = "order>2-noncentral-not4"
        return ConditionReport(DAGGER, not violations, witnesses, violations)

    if which == DDAGGER:
        if not group.is_enumerable():
            raise BudgetError("ddagger needs a finite enumerable group")
        sq = square_subgroup(group)
        sq_sorted = sorted(sq, key=group.sort_key)
        z_sq = frozenset(z for z in sq_sorted
                         if all(group.commutes(z, g) for g in sq_sorted))
        violations = []
        witnesses = {}
        for s in genset.base:
            s2 = group.mul(s, s)
            if s2 == group.identity:
                witnesses[s] = "order2"
            elif s2 in z_sq:
                violations.append(s)
            else:
                witnesses[s] = "square-off-center"
        return ConditionReport(DDAGGER, not violations, witnesses, violations)

    raise PreconditionError(f"unknown condition {which!r}")


def central_shift(group: Group, genset: GenSet) -> GenSet:
    """Replace every central generator s of order > 2 by s*t for a fixed
    non-central t from the set; keeps the cardinality and restores
    condition star applicability for groups with no order-4 elements."""
    non_central = [t for t in genset.base if not is_central(group, t)]
    if not non_central:
        raise PreconditionError(
            "cannot shift central generators: the whole set is central")
    t = non_central[0]
    replaced = []
    for s in genset.base:
        if is_central(group, s) and group.mul(s, s) != group.identity:
            replaced.append(group.mul(s, t))
        else:
            replaced.append(s)
    return GenSet(group, replaced)


def exhaustive_condition_scan(group: Group, which: str) -> dict:
    """Scan every inverse-closed generating subset for the condition.

    Returns counts plus (when one exists) the first satisfying generating
    set; per-element flags make each subset test O(classes)."""
    if not group.is_enumerable():
        raise BudgetError("exhaustive scan needs a finite group")
    elements = [g for g in group.elements() if g != group.identity]
    inv = group.inv
    reps = sorted({min(g, inv(g), key=group.sort_key) for g in elements},
                  key=group.sort_key)
    if len(reps) > 20:
        raise BudgetError(f"too many inverse-classes ({len(reps)}) to scan")

    def element_ok(s) -> bool:
        if group.mul(s, s) == group.identity:
            return True
        if which == STAR:
            return any(star_witness_ok(group, s, g) for g in elements)
        if which == DAGGER:
            if is_central(group, s):
                return False
            s2 = group.mul(s, s)
            return group.mul(s2, s2) != group.identity
        if which == DDAGGER:
            sq = square_subgroup(group)
            z_sq = frozenset(z for z in sq if all(group.commutes(z, g)
                                                  for g in sq))
            return group.mul(s, s) not in z_sq
        raise PreconditionError(f"unknown condition {which!r}")

    ok_class = [element_ok(rep) and element_ok(inv(rep)) for rep in reps]
    ok_mask = sum(1 << i for i, flag in enumerate(ok_class) if flag)
    order = group.order
    total = candidates = satisfying = 0
    first = None
    for mask in range(1, 1 << len(reps)):
        total += 1
        if mask & ~ok_mask:
            continue  # some chosen class fails the per-element condition
        candidates += 1
        chosen = [reps[i] for i in range(len(reps)) if mask >> i & 1]
        sym = set(chosen)
        sym.update(inv(r) for r in chosen)
        if len(closure(group, sym, budget=order)) != order:
            continue
        satisfying += 1
        if first is None:
            first = sorted(sym, key=group.sort_key)
    return {
        "condition": which,
        "classes": len(reps),
        "subsets_scanned": total,
        "all_ok_subsets": candidates,
        "satisfying_generating_sets": satisfying,
        "first_satisfying": first,
        "none_exists": satisfying == 0,
    }

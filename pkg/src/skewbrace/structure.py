"""Ideals, quotient braces, triviality chains and brace automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass

from .braces import SkewBrace
from .config import DEFAULT_LIMITS, Limits
from .errors import CriterionMismatch, NotAnIdeal, NotAntiHomomorphism, OrderCapExceeded
from .groups import (
    FiniteGroup,
    automorphism_group,
    group_from_table,
    subgroup_closure_in,
)


@dataclass(frozen=True)
class IdealReport:
    elements: tuple
    lambda_invariant: bool
    normal_add: bool
    normal_circ: bool
    witness: tuple | None = None

    @property
    def is_ideal(self) -> bool:
        return self.lambda_invariant and self.normal_add and self.normal_circ


def _is_normal_subgroup(group: FiniteGroup, members: set):
    for a in members:
        for b in members:
            if group.table[a][b] not in members:
                return False, ("closure", a, b)
    for g in range(group.order):
        for a in members:
            if group.conj(g, a) not in members:
                return False, ("conjugation", g, a)
    return True, None


def is_ideal(brace: SkewBrace, elements) -> IdealReport:
    """Check the three ideal conditions; failures carry a witness."""
    members = set(elements)
    if 0 not in members:
        return IdealReport(tuple(sorted(members)), False, False, False, ("identity",))
    lam = brace.lam
    lam_ok, witness = True, None
    for a in range(brace.order):
        for x in sorted(members):
            if lam.maps[a].images[x] not in members:
                lam_ok, witness = False, ("lambda", a, x)
                break
        if not lam_ok:
            break
    add_ok, add_w = _is_normal_subgroup(brace.add, members)
    circ_ok, circ_w = _is_normal_subgroup(brace.circ, members)
    return IdealReport(tuple(sorted(members)), lam_ok, add_ok, circ_ok,
                       witness or add_w or circ_w)


def kernel_ideal(brace: SkewBrace) -> IdealReport:
    """Ker lambda as an ideal; the sub-brace on it is trivial by construction."""
    kernel = brace.lam.kernel
    report = is_ideal(brace, kernel)
    if not report.is_ideal:
        raise CriterionMismatch("the kernel of lambda must be an ideal")
    pointwise = tuple(
        a for a in range(brace.order)
        if all(brace.circ.table[a][b] == brace.add.table[a][b] for b in range(brace.order))
    )
    if pointwise != kernel:
        raise CriterionMismatch("kernel must equal the set where both products agree")
    for a in kernel:
        for b in kernel:
            if brace.circ.table[a][b] != brace.add.table[a][b]:
                raise CriterionMismatch("sub-brace on the kernel must be trivial")
    return report


def sub_brace(brace: SkewBrace, elements) -> SkewBrace:
    """Restriction of both operations to a subgroup closed under both."""
    members = tuple(sorted(set(elements)))
    index = {x: i for i, x in enumerate(members)}
    n = len(members)
    add = [[index[brace.add.table[a][b]] for b in members] for a in members]
    circ = [[index[brace.circ.table[a][b]] for b in members] for a in members]
    return SkewBrace(group_from_table(add), group_from_table(circ))


def quotient_brace(brace: SkewBrace, ideal) -> SkewBrace:
    """The brace on cosets of an ideal, indexed by minimal coset representative."""
    members = set(ideal.elements if isinstance(ideal, IdealReport) else ideal)
    report = is_ideal(brace, members)
    if not report.is_ideal:
        raise NotAnIdeal(f"{sorted(members)} fails {report.witness}")
    n = brace.order
    coset_of = {}
    reps = []
    for a in range(n):
        if a in coset_of:
            continue
        coset = sorted(brace.add.table[a][x] for x in members)
        for y in coset:
            coset_of[y] = len(reps)
        reps.append(coset[0])
    k = len(reps)
    add = [[0] * k for _ in range(k)]
    circ = [[0] * k for _ in range(k)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            add[i][j] = coset_of[brace.add.table[a][b]]
            circ[i][j] = coset_of[brace.circ.table[a][b]]
    # well-definedness: any representatives give the same cosets
    for a in range(n):
        for b in range(n):
            i, j = coset_of[a], coset_of[b]
            if coset_of[brace.add.table[a][b]] != add[i][j] \
                    or coset_of[brace.circ.table[a][b]] != circ[i][j]:
                raise CriterionMismatch("quotient operations are not well-defined")
    return SkewBrace(group_from_table(add), group_from_table(circ))


# ---------------------------------------------------------------------------
# Ideal lattice and triviality chains


def all_subgroups(group: FiniteGroup) -> list:
    """Every subgroup, by closure of seed extensions with dedup."""
    seen = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for members in frontier:
            mset = set(members)
            for g in range(1, group.order):
                if g in mset:
                    continue
                closure = subgroup_closure_in(group, members + (g,))
                if closure not in seen:
                    seen.add(closure)
                    nxt.append(closure)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), s))


def all_ideals(brace: SkewBrace, limits: Limits = DEFAULT_LIMITS) -> list:
    if brace.order > limits.max_ideal_search_order:
        raise OrderCapExceeded(
            f"ideal search capped at order {limits.max_ideal_search_order}")
    return [s for s in all_subgroups(brace.add) if is_ideal(brace, s).is_ideal]


@dataclass(frozen=True)
class TrivialityChain:
    chain: tuple   # ascending ideals, starting at {0}, ending at the carrier
    step: int

    def as_report(self) -> dict:
        return {"step": self.step, "chain": [list(part) for part in self.chain]}


def triviality_step(brace: SkewBrace, limits: Limits = DEFAULT_LIMITS) -> TrivialityChain | None:
    """Shortest chain of ideals with trivial successive quotients, or None.

    Breadth-first over ideals: a step from I to J > I is allowed when every
    pair from J multiplies the same way under both operations modulo I.
    """
    ideals = all_ideals(brace, limits)
    everything = tuple(range(brace.order))
    t_add, t_circ = brace.add.table, brace.circ.table
    inv_add = brace.add.inverse

    def trivial_quotient(small: set, big) -> bool:
        return all(
            t_add[inv_add[t_add[a][b]]][t_circ[a][b]] in small
            for a in big for b in big
        )

    if brace.order == 1:
        return TrivialityChain(((0,),), 0)
    start = (0,)
    parents = {start: None}
    layer = [start]
    while layer:
        nxt = []
        for current in layer:
            cset = set(current)
            for candidate in ideals:
                if candidate == current or not cset < set(candidate):
                    continue
                if candidate in parents:
                    continue
                if trivial_quotient(cset, candidate):
                    parents[candidate] = current
                    if candidate == everything:
                        chain = [candidate]
                        while parents[chain[-1]] is not None:
                            chain.append(parents[chain[-1]])
                        chain.reverse()
                        return TrivialityChain(tuple(chain), len(chain) - 1)
                    nxt.append(candidate)
        layer = nxt
    return None


# ---------------------------------------------------------------------------
# Naturality


def naturality_report(brace: SkewBrace) -> dict:
    """For anti-homomorphic braces: either the brace or its kernel quotient is natural."""
    if not brace.lam.anti_homomorphic_on_add:
        raise NotAntiHomomorphism(-1, -1)
    is_natural = brace.circ.table == brace.add.opposite().table
    quotient = quotient_brace(brace, kernel_ideal(brace))
    quotient_natural = quotient.circ.table == quotient.add.opposite().table
    if not (is_natural or quotient_natural):
        raise CriterionMismatch(
            "an anti-homomorphic brace or its kernel quotient must be natural")
    return {"is_natural": is_natural, "quotient_natural": quotient_natural}


# ---------------------------------------------------------------------------
# Brace automorphisms


def brace_automorphisms(brace: SkewBrace, limits: Limits = DEFAULT_LIMITS) -> list:
    """Permutations that are automorphisms of both operation tables.

    For a homomorphic brace with abelian image every lambda value must be in
    the list (asserted).
    """
    auts = automorphism_group(brace.add, limits)
    n = brace.order
    out = [
        m for m in auts
        if all(m.images[brace.circ.table[a][b]] == brace.circ.table[m.images[a]][m.images[b]]
               for a in range(n) for b in range(n))
    ]
    lam = brace.lam
    if lam.homomorphic_on_add and lam.image_abelian:
        listed = {m.images for m in out}
        if any(mp.images not in listed for mp in lam.maps):
            raise CriterionMismatch("lambda values must be brace automorphisms here")
    return out

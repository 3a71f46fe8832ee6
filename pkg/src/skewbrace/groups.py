"""Finite groups as multiplication tables, with 0-based indexing and identity 0.

The table convention is ``table[a][b] = a * b`` (row = left factor).  All
values emitted by this module are immutable and safe to share across threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .config import DEFAULT_LIMITS, Limits
from .errors import InvalidGroup, NotASubgroup, OrderCapExceeded


class FiniteGroup:
    """A group on {0,...,order-1} given by its multiplication table.

    The identity element is always index 0; use :func:`verify_group` to
    validate and normalize untrusted tables.
    """

    __slots__ = ("order", "table", "inverse", "name", "_abelian")

    def __init__(self, table, name: str = ""):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = self.table[a].index(0)
        self.inverse = tuple(inv)
        self._abelian = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """Inner action g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t = self.table
        return t[t[t[self.inverse[a]][self.inverse[b]]][a]][b]

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = all(
                self.table[a][b] == self.table[b][a]
                for a in range(self.order) for b in range(self.order)
            )
        return self._abelian

    def elements(self) -> range:
        return range(self.order)

    def opposite(self) -> "FiniteGroup":
        """The opposite group: a *op b = b * a (same carrier, same inverses)."""
        n = self.order
        return FiniteGroup(
            tuple(tuple(self.table[b][a] for b in range(n)) for a in range(n)),
            name=f"{self.name}^op" if self.name else "",
        )

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        label = self.name or f"order {self.order}"
        return f"FiniteGroup({label})"


@dataclass(frozen=True)
class GroupMap:
    """A self-map of a group given by its image array, with computed flags."""

    images: tuple
    is_endomorphism: bool = False
    is_automorphism: bool = False
    is_anti_homomorphism: bool = False

    @staticmethod
    def on(group: FiniteGroup, images) -> "GroupMap":
        images = tuple(images)
        n = group.order
        endo = all(
            images[group.table[a][b]] == group.table[images[a]][images[b]]
            for a in range(n) for b in range(n)
        )
        anti = all(
            images[group.table[a][b]] == group.table[images[b]][images[a]]
            for a in range(n) for b in range(n)
        )
        bij = len(set(images)) == n
        return GroupMap(images, endo, endo and bij, anti)

    def __call__(self, a: int) -> int:
        return self.images[a]


def identity_map(n: int) -> tuple:
    return tuple(range(n))


def compose(f, g) -> tuple:
    """Composition f after g on image arrays."""
    return tuple(f[x] for x in g)


def invert_permutation(p) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def permutation_order(p) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            order = order * length // gcd(order, length)
    return order


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    code: str            # not_square | entry_out_of_range | not_latin_square |
    witness: tuple       # no_identity | no_inverse | not_associative


@dataclass(frozen=True)
class GroupCheck:
    ok: bool
    group: FiniteGroup | None
    relabeling: tuple | None   # relabeling[old_label] = new_label
    violations: tuple

    def as_report(self) -> dict:
        return {
            "group_ok": self.ok,
            "order": self.group.order if self.group else None,
            "relabeling": list(self.relabeling) if self.relabeling else None,
            "violations": [{"code": v.code, "witness": list(v.witness)} for v in self.violations],
        }


def verify_group(table, name: str = "") -> GroupCheck:
    """Check the group axioms on a raw table.

    On success the identity is relabeled to index 0 and the relabeling
    permutation (old label -> new label) is reported so external labels
    round-trip.  On failure every violated axiom is reported with a witness.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    violations = []
    if any(len(r) != n for r in rows) or n == 0:
        return GroupCheck(False, None, None, (Violation("not_square", (n,)),))
    for a in range(n):
        for b in range(n):
            v = rows[a][b]
            if not isinstance(v, int) or not (0 <= v < n):
                return GroupCheck(False, None, None, (Violation("entry_out_of_range", (a, b)),))

    for a in range(n):
        if len(set(rows[a])) != n:
            violations.append(Violation("not_latin_square", ("row", a)))
            break
    else:
        for b in range(n):
            if len({rows[a][b] for a in range(n)}) != n:
                violations.append(Violation("not_latin_square", ("col", b)))
                break

    identity = None
    for e in range(n):
        if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        violations.append(Violation("no_identity", ()))

    if identity is not None:
        for a in range(n):
            if identity not in rows[a]:
                violations.append(Violation("no_inverse", (a,)))
                break

    assoc_witness = None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    assoc_witness = (a, b, c)
                    break
            if assoc_witness:
                break
        if assoc_witness:
            break
    if assoc_witness:
        violations.append(Violation("not_associative", assoc_witness))

    if violations:
        return GroupCheck(False, None, None, tuple(violations))

    relabel = list(range(n))
    if identity != 0:
        old_order = [identity] + [x for x in range(n) if x != identity]
        relabel = [0] * n
        for new, old in enumerate(old_order):
            relabel[old] = new
    new_table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            new_table[relabel[a]][relabel[b]] = relabel[rows[a][b]]
    return GroupCheck(True, FiniteGroup(new_table, name=name), tuple(relabel), ())


def group_from_table(table, name: str = "") -> FiniteGroup:
    """verify_group that raises on failure; for trusted-but-checked construction."""
    check = verify_group(table, name=name)
    if not check.ok:
        raise InvalidGroup(check.violations)
    return check.group


# ---------------------------------------------------------------------------
# Constructors


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), name="1")


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"Z{n}"
    )


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    m = h.order
    n = g.order * m
    table = [[0] * n for _ in range(n)]
    for a1 in range(g.order):
        for b1 in range(m):
            for a2 in range(g.order):
                for b2 in range(m):
                    table[a1 * m + b1][a2 * m + b2] = g.table[a1][a2] * m + h.table[b1][b2]
    return FiniteGroup(table, name=name or f"{g.name}x{h.name}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element r^i s^j has index i + n*j."""
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in (0, 1):
            for k in range(n):
                for l in (0, 1):
                    rot = (i + (k if j == 0 else -k)) % n
                    table[i + n * j][k + n * l] = rot + n * ((j + l) % 2)
    return FiniteGroup(table, name=f"D{n}")


def dicyclic_group(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n (n=2 gives the quaternion group Q8)."""
    m = 2 * n
    table = [[0] * (4 * n) for _ in range(4 * n)]
    for i in range(m):
        for j in (0, 1):
            for k in range(m):
                for l in (0, 1):
                    if j == 0:
                        rot, flip = (i + k) % m, l
                    else:
                        rot, flip = (i - k) % m, 1 + l
                    if flip == 2:
                        rot, flip = (rot + n) % m, 0
                    table[i + m * j][k + m * l] = rot + m * flip
    return FiniteGroup(table, name="Q8" if n == 2 else f"Dic{n}")


def _perm_group_from(perms, name: str) -> FiniteGroup:
    elems = sorted(perms)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(p[q[x]] for x in range(len(p)))] for q in elems] for p in elems]
    return group_from_table(table, name=name)


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations

    return _perm_group_from(list(permutations(range(n))), name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    from itertools import permutations

    def sign(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    return _perm_group_from([p for p in permutations(range(n)) if sign(p) == 1], name=f"A{n}")


def group_from_permutations(generators, degree: int, name: str = "") -> FiniteGroup:
    """Closure of permutation generators on {0..degree-1}; elements sorted lexicographically."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise InvalidGroup((Violation("entry_out_of_range", tuple(g)),))
    closure = {tuple(range(degree))}
    frontier = list(closure)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[x]] for x in range(degree))
                if q not in closure:
                    closure.add(q)
                    nxt.append(q)
        frontier = nxt
    return _perm_group_from(closure, name=name)


def small_group_catalog(max_order: int) -> list:
    """One representative per isomorphism class of groups of order <= max_order (max 12)."""
    if max_order > 12:
        raise OrderCapExceeded(f"catalog covers orders <= 12, asked for {max_order}")
    z = cyclic_group
    groups = [
        trivial_group(), z(2), z(3), z(4), direct_product(z(2), z(2)), z(5),
        z(6), symmetric_group(3), z(7),
        z(8), direct_product(z(4), z(2)),
        direct_product(direct_product(z(2), z(2)), z(2), name="Z2xZ2xZ2"),
        dihedral_group(4), dicyclic_group(2),
        z(9), direct_product(z(3), z(3)), z(10), dihedral_group(5), z(11),
        z(12), direct_product(z(6), z(2)), dihedral_group(6), alternating_group(4),
        dicyclic_group(3),
    ]
    return [g for g in groups if g.order <= max_order]


# ---------------------------------------------------------------------------
# Structure: center, derived subgroup, inner automorphisms


@dataclass(frozen=True)
class StructureInfo:
    center: tuple
    derived_subgroup: tuple
    inner_automorphisms: tuple  # GroupMaps indexed by coset representatives of G/Z


def subgroup_closure_in(group: FiniteGroup, seeds) -> tuple:
    """Subgroup generated by the seed elements, as a sorted index tuple."""
    members = {0}
    frontier = [0]
    for s in seeds:
        if s not in members:
            members.add(s)
            frontier.append(s)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for c in (group.table[a][b], group.table[b][a]):
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(members))


def structure_subgroups(group: FiniteGroup) -> StructureInfo:
    n = group.order
    center = tuple(
        a for a in range(n)
        if all(group.table[a][b] == group.table[b][a] for b in range(n))
    )
    commutators = {group.commutator(a, b) for a in range(n) for b in range(n)}
    derived = subgroup_closure_in(group, commutators)
    inner, seen = [], set()
    for g in range(n):
        images = tuple(group.conj(g, x) for x in range(n))
        if images not in seen:
            seen.add(images)
            inner.append(GroupMap(images, True, True, group.is_abelian))
    return StructureInfo(center, derived, tuple(inner))


def nilpotency_class(group: FiniteGroup) -> int | None:
    """Length of the lower central series, or None for non-nilpotent groups."""
    current = tuple(range(group.order))
    k = 0
    while len(current) > 1:
        step = {group.commutator(a, b) for a in range(group.order) for b in current}
        nxt = subgroup_closure_in(group, step)
        if nxt == current:
            return None
        current = nxt
        k += 1
        if k > group.order:
            return None
    return k


# ---------------------------------------------------------------------------
# Automorphisms and isomorphisms


def _greedy_generators(group: FiniteGroup) -> list:
    gens = []
    closure = {0}
    while len(closure) < group.order:
        g = min(x for x in range(group.order) if x not in closure)
        gens.append(g)
        closure = set(subgroup_closure_in(group, gens))
    return gens


def _extend_homomorphism(src: FiniteGroup, dst: FiniteGroup, gens, images) -> tuple | None:
    """Extend generator images to a full map by closure, or None on conflict.

    The returned array satisfies m[a*g] = m[a]*m[g] along the spanning tree;
    full multiplicativity still has to be checked by the caller.
    """
    m = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                b = src.table[a][g]
                mb = dst.table[m[a]][h]
                if b in m:
                    if m[b] != mb:
                        return None
                else:
                    m[b] = mb
                    nxt.append(b)
        frontier = nxt
    if len(m) != src.order:
        return None
    return tuple(m[a] for a in range(src.order))


def _is_multiplicative(src: FiniteGroup, dst: FiniteGroup, images) -> bool:
    return all(
        images[src.table[a][b]] == dst.table[images[a]][images[b]]
        for a in range(src.order) for b in range(src.order)
    )


def group_isomorphisms(src: FiniteGroup, dst: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> list:
    """All isomorphisms src -> dst as image tuples, sorted lexicographically.

    Backtracks over generator images, pruning by element-order mismatch.
    """
    if src.order != dst.order:
        return []
    if src.order > limits.max_group_order:
        raise OrderCapExceeded(
            f"order {src.order} exceeds automorphism cap {limits.max_group_order}")
    gens = _greedy_generators(src)
    by_order: dict = {}
    for x in range(dst.order):
        by_order.setdefault(dst.element_order(x), []).append(x)
    found = []

    def backtrack(idx, chosen):
        if idx == len(gens):
            images = _extend_homomorphism(src, dst, gens, chosen)
            if images is not None and len(set(images)) == src.order \
                    and _is_multiplicative(src, dst, images):
                found.append(images)
            return
        order = src.element_order(gens[idx])
        for h in by_order.get(order, ()):
            backtrack(idx + 1, chosen + [h])

    backtrack(0, [])
    return sorted(set(found))


@lru_cache(maxsize=256)
def _automorphism_images(table: tuple, cap: int) -> tuple:
    group = FiniteGroup(table)
    return tuple(group_isomorphisms(group, group, Limits(max_group_order=cap)))


def automorphism_group(group: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> list:
    """All automorphisms as GroupMaps, identity first, lexicographic on image arrays."""
    images = _automorphism_images(group.table, limits.max_group_order)
    return [GroupMap(img, True, True,
                     all(img[group.table[a][b]] == group.table[img[b]][img[a]]
                         for a in range(group.order) for b in range(group.order)))
            for img in images]


def endomorphisms(group: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> list:
    """All endomorphism image tuples of the group, sorted."""
    if group.order > limits.max_group_order:
        raise OrderCapExceeded(f"order {group.order} exceeds cap {limits.max_group_order}")
    gens = _greedy_generators(group)
    found = []

    def backtrack(idx, chosen):
        if idx == len(gens):
            images = _extend_homomorphism(group, group, gens, chosen)
            if images is not None and _is_multiplicative(group, group, images):
                found.append(images)
            return
        order = group.element_order(gens[idx])
        for h in range(group.order):
            if order % group.element_order(h) == 0:
                backtrack(idx + 1, chosen + [h])

    backtrack(0, [])
    return sorted(set(found))


# ---------------------------------------------------------------------------
# Holomorph


class Holomorph:
    """Hol G = Aut G x| G with product (f,a)(g,b) = (fg, a f(b)).

    Pairs (f, a) are indexed as f_index * |G| + a, so the identity pair is 0.
    """

    def __init__(self, base: FiniteGroup, automorphisms, group: FiniteGroup):
        self.base = base
        self.automorphisms = automorphisms
        self.group = group

    def pair_of(self, idx: int) -> tuple:
        return divmod(idx, self.base.order)

    def index_of(self, aut_idx: int, element: int) -> int:
        return aut_idx * self.base.order + element

    def second(self, idx: int) -> int:
        return idx % self.base.order

    def translation_subgroup(self) -> tuple:
        return tuple(range(self.base.order))


def build_holomorph(base: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> Holomorph:
    auts = automorphism_group(base, limits)
    n = base.order
    total = len(auts) * n
    if total > limits.max_holomorph_order:
        raise OrderCapExceeded(
            f"holomorph order {total} exceeds cap {limits.max_holomorph_order}")
    aut_index = {a.images: i for i, a in enumerate(auts)}
    comp = [[aut_index[compose(f.images, g.images)] for g in auts] for f in auts]
    table = [[0] * total for _ in range(total)]
    for fi, f in enumerate(auts):
        fimg = f.images
        for a in range(n):
            row = table[fi * n + a]
            arow = base.table[a]
            for gi in range(len(auts)):
                block = comp[fi][gi] * n
                for b in range(n):
                    row[gi * n + b] = block + arow[fimg[b]]
    hol = FiniteGroup(table, name=f"Hol({base.name})" if base.name else "Hol")
    return Holomorph(base, auts, hol)


def subgroup_closure(hol: Holomorph, seeds) -> tuple:
    """Subgroup of Hol G generated by the given pair indices, sorted."""
    return subgroup_closure_in(hol.group, seeds)


def is_regular_subgroup(hol: Holomorph, members) -> bool:
    """True iff the subgroup acts freely and transitively on the base.

    Since automorphisms fix the identity, the orbit of the identity is the
    set of second coordinates, so regularity amounts to the second
    coordinates being pairwise distinct and covering the base.
    """
    members = tuple(sorted(members))
    if subgroup_closure(hol, members) != members:
        raise NotASubgroup(f"{len(members)} elements do not form a subgroup")
    if len(members) != hol.base.order:
        return False
    seconds = {hol.second(idx) for idx in members}
    return len(seconds) == hol.base.order


# ---------------------------------------------------------------------------
# File format


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple:
    """Parse cycle notation like "(1 2)(3 4)" on points 1..degree into a 0-based permutation."""
    images = list(range(degree))
    body = text.strip()
    if body in ("", "()", "e", "id"):
        return tuple(images)
    if _CYCLE_RE.sub("", body).strip():
        raise InvalidGroup((Violation("entry_out_of_range", (text,)),))
    for cycle in _CYCLE_RE.findall(body):
        points = [int(tok) - 1 for tok in re.split(r"[,\s]+", cycle.strip()) if tok]
        if any(not (0 <= p < degree) for p in points) or len(set(points)) != len(points):
            raise InvalidGroup((Violation("entry_out_of_range", (text,)),))
        for i, p in enumerate(points):
            images[p] = points[(i + 1) % len(points)]
    return tuple(images)


def group_from_json(data) -> FiniteGroup:
    """Load a group from the JSON file format.

    Either {"name", "order", "table"} with an arbitrary labeling (the
    identity is auto-normalized to 0), or {"name", "degree", "generators"}
    with cycle notation on points 1..degree.
    """
    if isinstance(data, str):
        data = json.loads(data)
    name = data.get("name", "")
    if "table" in data:
        if "order" in data and data["order"] != len(data["table"]):
            raise InvalidGroup((Violation("not_square", (data["order"],)),))
        return group_from_table(data["table"], name=name)
    if "generators" in data:
        degree = data["degree"]
        gens = [parse_cycles(g, degree) for g in data["generators"]]
        return group_from_permutations(gens, degree, name=name)
    raise InvalidGroup((Violation("no_identity", ()),))


def group_to_json(group: FiniteGroup) -> dict:
    return {"name": group.name, "order": group.order, "table": [list(r) for r in group.table]}

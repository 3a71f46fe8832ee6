"""Rota-Baxter operators on groups and the braces they induce.

A self-map B is a Rota-Baxter operator (of weight 1) when
``B(g) B(h) = B(g B(g) h B(g)^-1)``; it equips the carrier with a derived
group operation ``g o h = g B(g) h B(g)^-1`` and hence a skew brace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .braces import SkewBrace, classify
from .config import DEFAULT_LIMITS, DEFAULT_SAMPLING, Limits, SampleConfig
from .errors import CriterionMismatch, NotRotaBaxter, PreconditionFails
from .groups import FiniteGroup, endomorphisms, group_from_table, structure_subgroups
from .rng import Lcg
from .words import FreeWord, sample_word, word_from_text, word_to_text


@dataclass(frozen=True)
class RbCheck:
    ok: bool
    witness: tuple | None

    def __bool__(self):
        return self.ok


def is_rb(group: FiniteGroup, b_map) -> RbCheck:
    """Exhaustively check the Rota-Baxter identity; the witness is a failing pair."""
    b = tuple(b_map)
    t, inv = group.table, group.inverse
    for g in range(group.order):
        bg, bg_inv = b[g], inv[b[g]]
        gg = t[g][bg]
        lhs_left = b[g]
        for h in range(group.order):
            if t[lhs_left][b[h]] != b[t[t[gg][h]][bg_inv]]:
                return RbCheck(False, (g, h))
    return RbCheck(True, None)


def inversion_operator(group: FiniteGroup) -> tuple:
    """g -> g^-1, a Rota-Baxter operator on every group."""
    return group.inverse


def constant_operator(group: FiniteGroup) -> tuple:
    return (0,) * group.order


def derived_table(group: FiniteGroup, b_map) -> list:
    b = tuple(b_map)
    t, inv = group.table, group.inverse
    return [
        [t[t[t[g][b[g]]][h]][inv[b[g]]] for h in range(group.order)]
        for g in range(group.order)
    ]


def derived_group(group: FiniteGroup, b_map) -> FiniteGroup:
    """The group (G, o) with g o h = g B(g) h B(g)^-1.

    Asserts the two structural facts this operation carries: B is again
    Rota-Baxter on (G, o), and B is a homomorphism (G, o) -> (G, .).
    """
    check = is_rb(group, b_map)
    if not check.ok:
        raise NotRotaBaxter(check.witness)
    b = tuple(b_map)
    derived = group_from_table(derived_table(group, b_map))
    if not is_rb(derived, b_map).ok:
        raise CriterionMismatch("operator is not Rota-Baxter on the derived group")
    for g in range(group.order):
        for h in range(group.order):
            if b[derived.table[g][h]] != group.table[b[g]][b[h]]:
                raise CriterionMismatch("operator is not a homomorphism out of the derived group")
    return derived


def rb_brace(group: FiniteGroup, b_map) -> SkewBrace:
    """The skew brace (G, ., o) of a Rota-Baxter operator; lambda is conjugation by B."""
    brace = SkewBrace(group, derived_group(group, b_map))
    b = tuple(b_map)
    for a in range(group.order):
        conj = tuple(group.table[group.table[b[a]][x]][group.inverse[b[a]]]
                     for x in range(group.order))
        if brace.lam.maps[a].images != conj:
            raise CriterionMismatch("lambda of a Rota-Baxter brace must be conjugation by B")
    return brace


def rb_symmetry_check(group: FiniteGroup, b_map) -> dict:
    """Symmetry of the Rota-Baxter brace versus centrality of the anti-homomorphism defect."""
    brace = rb_brace(group, b_map)
    symmetric = classify(brace).symmetric
    b = tuple(b_map)
    center = set(structure_subgroups(group).center)
    t, inv = group.table, group.inverse
    center_condition = all(
        t[t[inv[b[c]]][inv[b[a]]]][b[t[c][a]]] in center
        for a in range(group.order) for c in range(group.order)
    )
    if symmetric != center_condition:
        raise CriterionMismatch("symmetry and the central-defect condition must agree")
    return {"symmetric": symmetric, "center_condition": center_condition}


def rb_lambda_hom_check(group: FiniteGroup, b_map) -> dict:
    """Lambda-homomorphy of the Rota-Baxter brace versus the homomorphism defect of B."""
    brace = rb_brace(group, b_map)
    lam_hom = brace.lam.homomorphic_on_add
    b = tuple(b_map)
    center = set(structure_subgroups(group).center)
    t, inv = group.table, group.inverse
    center_condition = all(
        t[t[inv[b[t[a][c]]]][b[a]]][b[c]] in center
        for a in range(group.order) for c in range(group.order)
    )
    if lam_hom != center_condition:
        raise CriterionMismatch("lambda-homomorphy and the defect condition must agree")
    return {"lambda_homomorphic": lam_hom, "center_condition": center_condition}


def rb_anti_hom_lemma_check(group: FiniteGroup, b_map) -> bool:
    """For anti-homomorphic Rota-Baxter operators: [B(b), B(B(a)) B(a)] is trivial."""
    check = is_rb(group, b_map)
    if not check.ok:
        raise NotRotaBaxter(check.witness)
    b = tuple(b_map)
    t = group.table
    anti = all(b[t[g][h]] == t[b[h]][b[g]] for g in range(group.order) for h in range(group.order))
    if not anti:
        raise PreconditionFails("operator must be an anti-homomorphism")
    for a in range(group.order):
        u = t[b[b[a]]][b[a]]
        for x in range(group.order):
            if t[b[x]][u] != t[u][b[x]]:
                return False
    return True


# ---------------------------------------------------------------------------
# Word expansion


def _fold_vs_formula(mul, invert, identity, b_of, letters):
    """Evaluate a product of circle-powers two ways and insist they agree.

    Fold: repeated derived products g o h = g B(g) h B(g)^-1, with the
    circle inverse B(a)^-1 a^-1 B(a).  Formula: the closed rewriting
    prod (a_i B(a_i))^{k_i} . prod_reversed B(a_i)^{-k_i}.
    """
    def circ(g, h):
        bg = b_of(g)
        return mul(mul(mul(g, bg), h), invert(bg))

    def circ_inv(a):
        ba = b_of(a)
        out = mul(mul(invert(ba), invert(a)), ba)
        if circ(a, out) != identity or circ(out, a) != identity:
            raise CriterionMismatch("closed-form circle inverse failed")
        return out

    def gpow(x, k):
        out = identity
        step = x if k >= 0 else invert(x)
        for _ in range(abs(k)):
            out = mul(out, step)
        return out

    def circ_pow(a, k):
        out = identity
        step = a if k >= 0 else circ_inv(a)
        for _ in range(abs(k)):
            out = circ(out, step)
        return out

    folded = identity
    for a, k in letters:
        folded = circ(folded, circ_pow(a, k))

    formula = identity
    for a, k in letters:
        formula = mul(formula, gpow(mul(a, b_of(a)), k))
    for a, k in reversed(letters):
        formula = mul(formula, gpow(b_of(a), -k))

    if folded != formula:
        raise CriterionMismatch(f"fold {folded!r} differs from closed form {formula!r}")
    return folded


def circ_word_expand(group: FiniteGroup, b_map, letters):
    """Evaluate a circle-operation word on a finite carrier, fold vs closed form."""
    check = is_rb(group, b_map)
    if not check.ok:
        raise NotRotaBaxter(check.witness)
    b = tuple(b_map)
    return _fold_vs_formula(
        lambda x, y: group.table[x][y],
        lambda x: group.inverse[x],
        0,
        lambda x: b[x],
        list(letters),
    )


def circ2_expansion_report(group: FiniteGroup, b_map) -> dict:
    """Check the stated flat expansion of the second derived operation.

    The second operation of the operator-built tower is compared entrywise
    with x B(x)^2 B(B(x)) y B(y) ... (the printed flat form); any mismatch is
    reported rather than assumed away.
    """
    check = is_rb(group, b_map)
    if not check.ok:
        raise NotRotaBaxter(check.witness)
    b = tuple(b_map)
    t, inv = group.table, group.inverse
    circ1 = group_from_table(derived_table(group, b_map))
    c1, i1 = circ1.table, circ1.inverse

    def circ2(x, y):
        return c1[c1[c1[x][b[x]]][y]][i1[b[x]]]

    witness = None
    for x in range(group.order):
        bx, b2x = b[x], b[b[x]]
        for y in range(group.order):
            flat = t[x][t[bx][bx]]
            flat = t[flat][b2x]
            flat = t[flat][y]
            flat = t[flat][b[y]]
            flat = t[flat][inv[b2x]]
            flat = t[flat][inv[bx]]
            flat = t[flat][b2x]
            flat = t[flat][inv[b[y]]]
            flat = t[flat][inv[b2x]]
            flat = t[flat][inv[bx]]
            if flat != circ2(x, y):
                witness = (x, y)
                break
        if witness:
            break
    return {"matches_printed": witness is None, "witness": witness}


# ---------------------------------------------------------------------------
# Searches


def rb_self_maps(group: FiniteGroup) -> list:
    """All Rota-Baxter operators among the self-maps of a small group.

    B(e) = e is forced by the identity at the pair (e, e), so only the other
    values are enumerated; keep carriers at order <= 6.
    """
    if group.order > 6:
        raise PreconditionFails("exhaustive self-map search is capped at order 6")
    found = []
    n = group.order
    for tail in product(range(n), repeat=n - 1):
        candidate = (0,) + tail
        if is_rb(group, candidate).ok:
            found.append(candidate)
    return found


def rb_endomorphisms(group: FiniteGroup, limits: Limits = DEFAULT_LIMITS) -> list:
    """Endomorphisms of the group that satisfy the Rota-Baxter identity."""
    return [e for e in endomorphisms(group, limits) if is_rb(group, e).ok]


# ---------------------------------------------------------------------------
# The free-group operator B(w) = x1^{exp_sum(w)}


@dataclass(frozen=True)
class FreeRb:
    """A homomorphic operator on a free group, given by generator images."""

    rank: int
    images: tuple  # FreeWord per generator

    def apply(self, w: FreeWord) -> FreeWord:
        out = FreeWord(self.rank)
        for g, e in w.syllables:
            out = out.mul(self.images[g - 1].pow(e))
        return out


def free_is_rb(op: FreeRb, sampling: SampleConfig = DEFAULT_SAMPLING) -> dict:
    """Sampled Rota-Baxter identity check for a free-group operator."""
    rng = Lcg(sampling.seed)
    failures = []
    for trial in range(sampling.samples):
        g = sample_word(rng, op.rank, sampling.max_syllables, sampling.max_exponent)
        h = sample_word(rng, op.rank, sampling.max_syllables, sampling.max_exponent)
        lhs = op.apply(g).mul(op.apply(h))
        rhs = op.apply(g.mul(op.apply(g)).mul(h).mul(op.apply(g).inv()))
        if lhs != rhs:
            failures.append({"trial": trial, "g": word_to_text(g), "h": word_to_text(h)})
    return {"rank": op.rank, "samples": sampling.samples, "seed": sampling.seed,
            "failure_count": len(failures), "failures": failures}


def free_rb_example(m: int, a: FreeWord, b: FreeWord) -> FreeWord:
    """Level-m multiplication of the rank-2 example: a x1^{m l(a)} b x1^{-m l(a)}."""
    if a.rank != 2 or b.rank != 2:
        raise ValueError("the example lives on the free group of rank 2")
    conjugator = FreeWord.generator(2, 1, m * a.exp_sum())
    return a.mul(conjugator).mul(b).mul(conjugator.inv())


def free_rb_report(m: int, sampling: SampleConfig = DEFAULT_SAMPLING) -> dict:
    """Sampled checks for the rank-2 operator x -> x, y -> x.

    Verifies the Rota-Baxter identity for B(w) = x1^{l(w)} and the
    consecutive tower condition between levels m and m+1.
    """
    op = FreeRb(2, (FreeWord.generator(2, 1), FreeWord.generator(2, 1)))
    rng = Lcg(sampling.seed)
    failures = []

    def level_inv(i, a):
        conj = FreeWord.generator(2, 1, -i * a.exp_sum())
        return conj.mul(a.inv()).mul(conj.inv())

    for trial in range(sampling.samples):
        g, h, c = (sample_word(rng, 2, sampling.max_syllables, sampling.max_exponent)
                   for _ in range(3))
        lhs = op.apply(g).mul(op.apply(h))
        rhs = op.apply(g.mul(op.apply(g)).mul(h).mul(op.apply(g).inv()))
        if lhs != rhs:
            failures.append({"trial": trial, "kind": "rb_identity", "g": word_to_text(g)})
        left = free_rb_example(m + 1, g, free_rb_example(m, h, c))
        right = free_rb_example(
            m,
            free_rb_example(m, free_rb_example(m + 1, g, h), level_inv(m, g)),
            free_rb_example(m + 1, g, c),
        )
        if left != right:
            failures.append({"trial": trial, "kind": "tower_condition",
                             "g": word_to_text(g), "h": word_to_text(h), "c": word_to_text(c)})
    return {
        "m": m,
        "samples": sampling.samples,
        "seed": sampling.seed,
        "failure_count": len(failures),
        "failures": failures,
    }


def free_circ_word_expand(op: FreeRb, letters):
    """Fold-vs-formula evaluation of a circle word on a free carrier."""
    return _fold_vs_formula(
        lambda x, y: x.mul(y),
        lambda x: x.inv(),
        FreeWord(op.rank),
        op.apply,
        list(letters),
    )


# ---------------------------------------------------------------------------
# File format


def rb_from_json(data):
    """Load an operator: {"order": n, "map": [...]} or {"rank": 2, "images": [...]}."""
    if isinstance(data, str):
        data = json.loads(data)
    if "map" in data:
        values = tuple(data["map"])
        if "order" in data and data["order"] != len(values):
            raise ValueError("declared order does not match the map length")
        return values
    if "images" in data:
        rank = data["rank"]
        return FreeRb(rank, tuple(word_from_text(rank, s) for s in data["images"]))
    raise ValueError("unrecognized operator payload")

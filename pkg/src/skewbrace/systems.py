"""Brace systems: families of group operations on one carrier, as labeled graphs.

A vertex is an operation table, an ordered edge (u, v) records whether the
pair (carrier, op_u, op_v) satisfies the left brace law.  Vertices are
deduplicated by exact table equality, keeping the label closest to the base.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .braces import left_law_witness
from .config import DEFAULT_LIMITS, Limits
from .errors import (
    BaseMismatch,
    CarrierMismatch,
    CriterionMismatch,
    NotRotaBaxter,
    OrderCapExceeded,
    PreconditionFails,
    UnsupportedFormat,
)
from .groups import (
    FiniteGroup,
    GroupMap,
    compose,
    group_from_table,
    identity_map,
    invert_permutation,
    permutation_order,
)
from .rota import derived_table, is_rb


@dataclass
class BraceSystemGraph:
    carrier_order: int
    vertices: tuple              # FiniteGroup per vertex
    labels: tuple                # display label per vertex (str)
    edges: dict                  # (u, v) -> "verified" | "failed"
    kind: str                    # general | symmetric | full_symmetric | linear | rooted
    label_map: dict = field(default_factory=dict)   # built level -> vertex index
    lambda_images: tuple | None = None              # level-0 assignment, when built from one
    image_exponent: int | None = None
    hypotheses_met: bool | None = None              # union linking hypotheses, when evaluated

    def vertex_count(self) -> int:
        return len(self.vertices)

    def verified_edges(self):
        return sorted(k for k, v in self.edges.items() if v == "verified")

    def is_edge_symmetric(self) -> bool:
        verified = {k for k, v in self.edges.items() if v == "verified"}
        return all((v, u) in verified for (u, v) in verified)


def _verify_all_pairs(vertices) -> dict:
    edges = {}
    for u, gu in enumerate(vertices):
        for v, gv in enumerate(vertices):
            if u == v:
                continue
            edges[(u, v)] = "verified" if left_law_witness(gu, gv) is None else "failed"
    return edges


def _dedupe(tables_by_label, limits: Limits):
    """Keep first occurrence of each table, in the given label order."""
    vertices = []
    labels = []
    label_map = {}
    seen = {}
    for label, table in tables_by_label:
        if table in seen:
            label_map[label] = seen[table]
            continue
        if len(vertices) >= limits.max_system_vertices:
            raise OrderCapExceeded(
                f"system would exceed {limits.max_system_vertices} vertices")
        idx = len(vertices)
        seen[table] = idx
        vertices.append(group_from_table(table))
        labels.append(f"circ_{label}")
        label_map[label] = idx
    return tuple(vertices), tuple(labels), label_map


# ---------------------------------------------------------------------------
# Linear systems from an abelian-image lambda assignment


def check_linear_preconditions(group: FiniteGroup, arrays) -> None:
    """The assignment must be a homomorphism with abelian image whose
    commutator values land in its kernel; each value an automorphism."""
    n = group.order
    for a in range(n):
        if not GroupMap.on(group, arrays[a]).is_automorphism:
            raise PreconditionFails("lambda value is not an automorphism", a)
    for a in range(n):
        for b in range(n):
            if arrays[group.table[a][b]] != compose(arrays[a], arrays[b]):
                raise PreconditionFails("lambda is not a homomorphism", (a, b))
    distinct = sorted(set(arrays))
    for f in distinct:
        for g in distinct:
            if compose(f, g) != compose(g, f):
                raise PreconditionFails("lambda image is not abelian", None)
    ident = identity_map(n)
    kernel = {a for a in range(n) if arrays[a] == ident}
    for a in range(n):
        for b in range(n):
            if group.table[group.inverse[b]][arrays[a][b]] not in kernel:
                raise PreconditionFails("kernel condition fails", (a, b))


def image_exponent_of(arrays) -> int:
    exponent = 1
    for img in set(arrays):
        o = permutation_order(img)
        exponent = exponent * o // gcd(exponent, o)
    return exponent


def build_linear_system(group: FiniteGroup, lam, depth: int | None = None,
                        include_negative: bool = False,
                        limits: Limits = DEFAULT_LIMITS) -> BraceSystemGraph:
    """Materialize the iterated operations a o_i b = a . lambda_a^i(b).

    ``depth`` defaults to the exponent of the image, so the whole period is
    built; negative levels use the inverse automorphisms.  Every ordered pair
    of distinct vertices is verified and must pass.
    """
    arrays = [tuple(m.images if isinstance(m, GroupMap) else m) for m in lam]
    check_linear_preconditions(group, arrays)
    exponent = image_exponent_of(arrays)
    if depth is None:
        depth = exponent
    if depth < 0:
        raise ValueError("depth must be non-negative")
    n = group.order
    inv_arrays = [invert_permutation(a) for a in arrays]

    def level_table(i):
        powered = []
        for a in range(n):
            img = identity_map(n)
            step = arrays[a] if i >= 0 else inv_arrays[a]
            for _ in range(abs(i)):
                img = compose(step, img)
            powered.append(img)
        return tuple(tuple(group.table[a][powered[a][b]] for b in range(n)) for a in range(n))

    levels = list(range(depth + 1))
    if include_negative:
        levels += [-i for i in range(1, depth + 1)]
    tables = [(i, level_table(i)) for i in levels]
    vertices, labels, label_map = _dedupe(tables, limits)
    edges = _verify_all_pairs(vertices)
    if any(status == "failed" for status in edges.values()):
        raise CriterionMismatch("a pair of iterated operations failed the brace law")
    return BraceSystemGraph(
        carrier_order=n,
        vertices=vertices,
        labels=labels,
        edges=edges,
        kind="linear",
        label_map=label_map,
        lambda_images=tuple(arrays),
        image_exponent=exponent,
    )


def detect_period(system: BraceSystemGraph) -> int | None:
    """Smallest p >= 1 with o_p = o_0 among the built levels, or None."""
    if 0 not in system.label_map:
        raise PreconditionFails("system was not built from a level iteration")
    base = system.label_map[0]
    positive = sorted(lbl for lbl in system.label_map if lbl >= 1)
    for p in positive:
        if system.label_map[p] == base:
            if system.image_exponent is not None and system.image_exponent % p != 0:
                raise CriterionMismatch(
                    f"period {p} does not divide the image exponent {system.image_exponent}")
            return p
    return None


# ---------------------------------------------------------------------------
# Unions


def union_systems(sys1: BraceSystemGraph, sys2: BraceSystemGraph,
                  limits: Limits = DEFAULT_LIMITS) -> BraceSystemGraph:
    """Merge two linear systems sharing carrier and base vertex.

    The linking hypotheses (commuting images, crossed kernel containments)
    are evaluated on the level-0 assignments; when they hold every cross pair
    must verify, otherwise the per-edge results stand on their own.
    """
    if sys1.carrier_order != sys2.carrier_order:
        raise CarrierMismatch("carrier orders differ")
    if sys1.vertices[sys1.label_map.get(0, 0)].table != sys2.vertices[sys2.label_map.get(0, 0)].table:
        raise BaseMismatch("base operations differ")
    base = sys1.vertices[sys1.label_map.get(0, 0)]
    hypotheses_met = None
    if sys1.lambda_images is not None and sys2.lambda_images is not None:
        n = sys1.carrier_order
        t, inv = base.table, base.inverse
        d1, d2 = set(sys1.lambda_images), set(sys2.lambda_images)
        ident = identity_map(n)
        k1 = {a for a in range(n) if sys1.lambda_images[a] == ident}
        k2 = {a for a in range(n) if sys2.lambda_images[a] == ident}
        commute = all(compose(f, g) == compose(g, f) for f in d1 for g in d2)
        cond_i = all(t[inv[b]][sys2.lambda_images[a][b]] in k1
                     for a in range(n) for b in range(n))
        cond_ii = all(t[inv[b]][sys1.lambda_images[a][b]] in k2
                      for a in range(n) for b in range(n))
        hypotheses_met = commute and cond_i and cond_ii

    tables = [(("a", lbl), g.table) for lbl, g in zip(sys1.labels, sys1.vertices)]
    tables += [(("b", lbl), g.table) for lbl, g in zip(sys2.labels, sys2.vertices)]
    vertices, _, _ = _dedupe(tables, limits)
    labels = tuple(f"circ_{i}" for i in range(len(vertices)))
    edges = _verify_all_pairs(vertices)
    if hypotheses_met:
        if any(status == "failed" for status in edges.values()):
            raise CriterionMismatch("union hypotheses held but a cross pair failed")
        kind = "full_symmetric"
    else:
        verified = {k for k, v in edges.items() if v == "verified"}
        symmetric = all((v, u) in verified for (u, v) in verified)
        kind = "symmetric" if symmetric else "general"
    return BraceSystemGraph(
        carrier_order=sys1.carrier_order,
        vertices=vertices,
        labels=labels,
        edges=edges,
        kind=kind,
        label_map={},
        hypotheses_met=hypotheses_met,
    )


# ---------------------------------------------------------------------------
# Operator towers


def build_rb_multibrace(group: FiniteGroup, b_map, k: int,
                        limits: Limits = DEFAULT_LIMITS) -> BraceSystemGraph:
    """The operator tower o_0 = ., o_{i+1} built from o_i and the operator.

    Consecutive pairs must satisfy the mixed law (asserted); non-consecutive
    pairs are tested and tagged but carry no guarantee.
    """
    check = is_rb(group, b_map)
    if not check.ok:
        raise NotRotaBaxter(check.witness)
    if k < 0:
        raise ValueError("tower height must be non-negative")
    b = tuple(b_map)
    n = group.order
    level_tables = [group.table]
    current = group
    for _ in range(k):
        nxt = group_from_table(derived_table(current, b))
        level_tables.append(nxt.table)
        current = nxt
    vertices, labels, label_map = _dedupe(list(enumerate(level_tables)), limits)
    edges = _verify_all_pairs(vertices)
    for i in range(1, k + 1):
        u, v = label_map[i - 1], label_map[i]
        if u != v and edges[(u, v)] != "verified":
            raise CriterionMismatch(f"consecutive pair ({i - 1}, {i}) failed the mixed law")
    return BraceSystemGraph(
        carrier_order=n,
        vertices=vertices,
        labels=labels,
        edges=edges,
        kind="linear",
        label_map=label_map,
    )


def build_rooted_system(base: FiniteGroup, circ_groups, limits: Limits = DEFAULT_LIMITS) -> BraceSystemGraph:
    """Root vertex plus one vertex per operation, with root -> vertex edges."""
    tables = [("root", base.table)] + [(i, g.table) for i, g in enumerate(circ_groups)]
    vertices, _, label_map = _dedupe(tables, limits)
    labels = ("circ_root",) + tuple(f"circ_{i}" for i in range(1, len(vertices)))
    root = label_map["root"]
    edges = {}
    for v in range(len(vertices)):
        if v == root:
            continue
        status = "verified" if left_law_witness(vertices[root], vertices[v]) is None else "failed"
        edges[(root, v)] = status
    return BraceSystemGraph(
        carrier_order=base.order,
        vertices=vertices,
        labels=labels,
        edges=edges,
        kind="rooted",
        label_map=label_map,
    )


# ---------------------------------------------------------------------------
# Export


def export_graph(system: BraceSystemGraph, fmt: str = "dot") -> str:
    if fmt == "dot":
        lines = ["digraph brace_system {"]
        for i, label in enumerate(system.labels):
            lines.append(f'  v{i} [label="{label}"];')
        for (u, v) in sorted(system.edges):
            status = system.edges[(u, v)]
            if status == "verified":
                lines.append(f"  v{u} -> v{v};")
            else:
                lines.append(f'  v{u} -> v{v} [status="failed", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        import json

        return json.dumps(system_to_json(system), indent=2, sort_keys=True) + "\n"
    raise UnsupportedFormat(f"unknown export format {fmt!r}")


def system_to_json(system: BraceSystemGraph) -> dict:
    return {
        "carrier_order": system.carrier_order,
        "kind": system.kind,
        "labels": list(system.labels),
        "vertices": [[list(row) for row in g.table] for g in system.vertices],
        "edges": [[u, v, system.edges[(u, v)]] for (u, v) in sorted(system.edges)],
    }

"""Independent brute-force oracles used to cross-check library output.

Everything here deliberately avoids the code paths it is checking: tables
are enumerated directly from the axioms.
"""

from itertools import permutations

from skewbrace.groups import automorphism_group, compose, invert_permutation


def group_tables_identity_zero(n):
    """All group multiplication tables on {0..n-1} with identity 0."""
    if n == 1:
        return [((0,),)]
    rows_by_first = {}
    for a in range(1, n):
        rows_by_first[a] = [
            (a,) + p for p in permutations([x for x in range(n) if x != a])
        ]
    tables = []

    def fill(row_idx, rows):
        if row_idx == n:
            t = tuple(rows)
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        if t[t[a][b]][c] != t[a][t[b][c]]:
                            return
            tables.append(t)
            return
        for cand in rows_by_first[row_idx]:
            ok = True
            for col in range(n):  # keep columns latin as rows are placed
                seen = {rows[r][col] for r in range(row_idx)}
                if cand[col] in seen:
                    ok = False
                    break
            if ok:
                fill(row_idx + 1, rows + [cand])

    fill(1, [tuple(range(n))])
    return tables


def left_law_holds(add_table, circ_table, add_inverse):
    n = len(add_table)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = circ_table[a][add_table[b][c]]
                rhs = add_table[add_table[circ_table[a][b]][add_inverse[a]]][circ_table[a][c]]
                if lhs != rhs:
                    return False
    return True


def brute_force_circ_tables(group):
    """Every group table with identity 0 forming a skew brace over the given addition."""
    inv = group.inverse
    return [
        t for t in group_tables_identity_zero(group.order)
        if left_law_holds(group.table, t, inv)
    ]


def isomorphism_classes_by_orbit(braces):
    """Partition labeled braces into isomorphism classes by brute-force relabeling.

    A brace isomorphism fixes the identity, so the classes are the orbits of
    the census set under pushforward along all permutations fixing 0.
    """
    n = braces[0].order
    tables = {(b.add.table, b.circ.table): i for i, b in enumerate(braces)}
    perms = [(0,) + p for p in permutations(range(1, n))]
    unassigned = set(range(len(braces)))
    classes = []
    while unassigned:
        seed = min(unassigned)
        brace = braces[seed]
        orbit = set()
        for p in perms:
            inv = invert_permutation(p)
            add = tuple(tuple(p[brace.add.table[inv[a]][inv[b]]] for b in range(n))
                        for a in range(n))
            circ = tuple(tuple(p[brace.circ.table[inv[a]][inv[b]]] for b in range(n))
                         for a in range(n))
            hit = tables.get((add, circ))
            if hit is not None:
                orbit.add(hit)
        classes.append(sorted(orbit))
        unassigned -= orbit
    return classes


def regular_subgroup_count_by_lambda_walk(group):
    """Count regular subgroups of Hol G by assigning an automorphism to each element.

    A regular subgroup is exactly a total assignment a -> f_a with f_e = id
    that is closed under the holomorph product; the walk branches per element
    and propagates forced assignments, which is structurally unrelated to the
    closure-based enumeration in the library.
    """
    auts = [m.images for m in automorphism_group(group)]
    aut_index = {img: i for i, img in enumerate(auts)}
    n = group.order
    table = group.table
    comp_cache = {}

    def comp(i, j):
        key = (i, j)
        if key not in comp_cache:
            comp_cache[key] = aut_index[compose(auts[i], auts[j])]
        return comp_cache[key]

    inv_cache = {}

    def aut_inv(i):
        if i not in inv_cache:
            inv_cache[i] = aut_index[invert_permutation(auts[i])]
        return inv_cache[i]

    # (f, a) must generate a cyclic group meeting each coordinate at most once
    identity = tuple(range(n))
    allowed = {0: [0]} if n == 1 else {}
    for a in range(1, n):
        ok = []
        for fi, img in enumerate(auts):
            coords = set()
            x, fk = a, img  # the pair (f, a)^k is (fk, x)
            size = 1
            good = True
            while True:
                if x == 0:
                    good = fk == identity  # else (fk, 0) collides with the identity pair
                    break
                if x in coords:
                    good = False
                    break
                coords.add(x)
                x = table[x][fk[a]]
                fk = compose(fk, img)
                size += 1
            if good and n % size == 0:
                ok.append(fi)
        allowed[a] = ok

    def propagate(f):
        changed = True
        while changed:
            changed = False
            items = list(f.items())
            for a, fa in items:
                fa_img = auts[fa]
                for b, fb in items:
                    c = table[a][fa_img[b]]
                    fc = comp(fa, fb)
                    if c in f:
                        if f[c] != fc:
                            return False
                    else:
                        f[c] = fc
                        changed = True
                ci = auts[aut_inv(fa)][group.inverse[a]]
                if ci in f:
                    if f[ci] != aut_inv(fa):
                        return False
                else:
                    f[ci] = aut_inv(fa)
                    changed = True
        return True

    count = 0

    def dfs(f):
        nonlocal count
        if len(f) == n:
            count += 1
            return
        a = min(x for x in range(n) if x not in f)
        for fi in allowed[a]:
            g = dict(f)
            g[a] = fi
            if propagate(g):
                dfs(g)

    dfs({0: 0})
    return count

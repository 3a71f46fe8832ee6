"""The rank-2 integer lattice with the one-parameter family of graded multiplications.

The grading is the coordinate sum s(a) = a1 + a2; the automorphism attached
to every basis vector is the unipotent matrix M(p) with (M - I)^2 = 0, so
powers are exact: M^k = I + k (M - I).  All arithmetic is exact big-integer
arithmetic, so the algebraic identities hold on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_LIMITS, DEFAULT_SAMPLING, Limits, SampleConfig
from .errors import CriterionMismatch
from .rng import Lcg

Vec = tuple  # (v1, v2)
Mat = tuple  # ((m11, m12), (m21, m22)) acting on column vectors


def mat_mul(a: Mat, b: Mat) -> Mat:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def vec_add(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def vec_neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


IDENTITY: Mat = ((1, 0), (0, 1))


def grading(v: Vec) -> int:
    """The coordinate-sum homomorphism that powers the automorphism."""
    return v[0] + v[1]


@dataclass(frozen=True)
class LatticeAuto:
    """A 2x2 integer matrix of determinant +-1 with (M - I)^2 = 0."""

    matrix: Mat

    def power(self, k: int) -> Mat:
        m = self.matrix
        # nilpotency of M - I makes powers affine in k
        return (
            (1 + k * (m[0][0] - 1), k * m[0][1]),
            (k * m[1][0], 1 + k * (m[1][1] - 1)),
        )

    def apply(self, v: Vec, k: int = 1) -> Vec:
        return mat_vec(self.power(k), v)


def lattice_lambda(p: int) -> LatticeAuto:
    """The basis action x1 -> (1+p, -p), x2 -> (p, 1-p), as a matrix on columns."""
    m: Mat = ((1 + p, p), (-p, 1 - p))
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det not in (1, -1):
        raise CriterionMismatch("lattice automorphism must have determinant +-1")
    d = ((m[0][0] - 1, m[0][1]), (m[1][0], m[1][1] - 1))
    if mat_mul(d, d) != ((0, 0), (0, 0)):
        raise CriterionMismatch("the matrix family must satisfy (M - I)^2 = 0")
    return LatticeAuto(m)


def lattice_circ(a: Vec, b: Vec, p: int, level: int = 1) -> Vec:
    """a o_i b = a + M^{i s(a)} b, the level-i multiplication."""
    if level < 0:
        raise ValueError("level must be non-negative")
    auto = lattice_lambda(p)
    return vec_add(a, auto.apply(b, level * grading(a)))


def lattice_circ_iterated(a: Vec, b: Vec, p: int, level: int) -> Vec:
    """The same multiplication through the recursion o_{i+1}(a, b) = o_i(a, M^{s(a)} b)."""
    auto = lattice_lambda(p)
    for _ in range(level):
        b = auto.apply(b, grading(a))
    return vec_add(a, b)


def lattice_circ_inverse(a: Vec, p: int, level: int = 1) -> Vec:
    auto = lattice_lambda(p)
    return auto.apply(vec_neg(a), -level * grading(a))


def sample_vec(rng: Lcg, bound: int = 9) -> Vec:
    return (rng.next_in(-bound, bound), rng.next_in(-bound, bound))


def lattice_system_check(p: int, depth: int = 3,
                         sampling: SampleConfig = DEFAULT_SAMPLING,
                         limits: Limits = DEFAULT_LIMITS) -> dict:
    """Sampled verification that the level tower is a commutative brace system.

    For every level up to ``depth``: group laws, commutativity, the closed
    form versus the recursion, compatibility of every ordered level pair, and
    the desk-scale content of freeness (no sampled torsion, every sampled
    vector splits over the two generators).
    """
    if depth > limits.max_lattice_depth:
        raise ValueError(f"depth is capped at {limits.max_lattice_depth}")
    rng = Lcg(sampling.seed)
    auto = lattice_lambda(p)
    failures = {
        "associativity": 0, "identity": 0, "inverse": 0, "commutativity": 0,
        "closed_form": 0, "compatibility": 0, "torsion": 0, "generation": 0,
        "lambda_homomorphism": 0, "kernel_containment": 0,
    }

    def circ(i, a, b):
        return vec_add(a, auto.apply(b, i * grading(a)))

    def circ_inv(i, a):
        return auto.apply(vec_neg(a), -i * grading(a))

    def circ_pow(i, a, k):
        out = (0, 0)
        step = a if k >= 0 else circ_inv(i, a)
        for _ in range(abs(k)):
            out = circ(i, out, step)
        return out

    for _ in range(sampling.samples):
        a, b, c = sample_vec(rng), sample_vec(rng), sample_vec(rng)
        for i in range(depth + 1):
            if circ(i, circ(i, a, b), c) != circ(i, a, circ(i, b, c)):
                failures["associativity"] += 1
            if circ(i, (0, 0), a) != a or circ(i, a, (0, 0)) != a:
                failures["identity"] += 1
            inv_a = circ_inv(i, a)
            if circ(i, a, inv_a) != (0, 0) or circ(i, inv_a, a) != (0, 0):
                failures["inverse"] += 1
            if circ(i, a, b) != circ(i, b, a):
                failures["commutativity"] += 1
            if i <= 4 and lattice_circ_iterated(a, b, p, i) != circ(i, a, b):
                failures["closed_form"] += 1
            for j in range(i):
                lhs = circ(i, a, circ(j, b, c))
                rhs = circ(j, circ(j, circ(i, a, b), circ_inv(j, a)), circ(i, a, c))
                if lhs != rhs:
                    failures["compatibility"] += 1
        # exactness facts about the grading
        if mat_mul(auto.power(grading(a)), auto.power(grading(b))) != auto.power(grading(a) + grading(b)):
            failures["lambda_homomorphism"] += 1
        if grading(vec_add(auto.apply(b, grading(a)), vec_neg(b))) != 0:
            failures["kernel_containment"] += 1
        # torsion: circle powers of a nonzero vector never vanish
        if a != (0, 0):
            for i in range(depth + 1):
                for k in range(1, 5):
                    if circ_pow(i, a, k) == (0, 0):
                        failures["torsion"] += 1
        # generation: v = (t, -t) o_i x1^{o_i sigma} with sigma = s(v)
        for i in range(depth + 1):
            sigma = grading(a)
            g = circ_pow(i, (1, 0), sigma)
            u = circ(i, a, circ_inv(i, g))
            if grading(u) != 0 or u[0] != -u[1] or circ(i, u, g) != a:
                failures["generation"] += 1
    return {
        "p": p,
        "depth": depth,
        "samples": sampling.samples,
        "seed": sampling.seed,
        "failures": failures,
        "failure_count": sum(failures.values()),
    }

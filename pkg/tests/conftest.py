"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms:
determinants by cofactor expansion, Pfaffians by the 4x4 combinatorial
formula, quivers by the literal three-step truncation, and kernels /
cokernels over Z/q by explicit enumeration of the map on (Z/q)^k.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from math import gcd, prod

import numpy as np

from ksing import IntMatrix, QuotientParams, iter_weight_tuples


def all_valid_params(max_n: int, max_d: int | None = None) -> list[QuotientParams]:
    """Every valid parameter tuple with n <= max_n (and optionally d <= max_d)."""
    out = []
    for n in range(2, max_n + 1):
        top = n if max_d is None else min(n, max_d)
        for d in range(2, top + 1):
            for weights in iter_weight_tuples(n, d):
                out.append(QuotientParams(n, d, weights))
    return out


def three_step_quiver(params: QuotientParams):
    """Literal three-step truncation on Z/nZ; returns (arrows, relations).

    Arrows are (source, target, letter) triples, relations (vertex, j, j')
    with j < j'.  A relation survives when all four arrows of its square
    do; the two sides are checked separately.
    """
    n, weights = params.n, params.weights
    full = {
        (i, (i + a) % n, j)
        for i in range(n)
        for j, a in enumerate(weights, 1)
    }
    no_wrap = {(i, t, j) for (i, t, j) in full if i < t}
    arrows = {(i, t, j) for (i, t, j) in no_wrap if i != 0 and t != 0}

    relations = set()
    for i in range(n):
        for j in range(1, len(weights) + 1):
            for jp in range(j + 1, len(weights) + 1):
                a, b = weights[j - 1], weights[jp - 1]
                side1 = (
                    (i, (i + a) % n, j) in arrows
                    and ((i + a) % n, (i + a + b) % n, jp) in arrows
                )
                side2 = (
                    (i, (i + b) % n, jp) in arrows
                    and ((i + b) % n, (i + a + b) % n, j) in arrows
                )
                assert side1 == side2, (
                    f"square ({i}, {j}, {jp}) of {params} has one side"
                    f" truncated but not the other"
                )
                if side1 and side2:
                    relations.add((i, j, jp))
    return arrows, relations


def laplace_det(rows) -> int:
    """Cofactor-expansion determinant; exponential, for small matrices only."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * x * laplace_det(minor)
    return total


def pfaffian4(m: IntMatrix) -> int:
    """The 4x4 Pfaffian a12*a34 - a13*a24 + a14*a23."""
    assert m.rows == m.cols == 4
    return m[0, 1] * m[2, 3] - m[0, 2] * m[1, 3] + m[0, 3] * m[1, 2]


def random_int_matrix(rng, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def random_unimodular(rng, k: int, steps: int = 12) -> IntMatrix:
    """Product of elementary shears, swaps and sign flips; |det| = 1."""
    m = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if kind == 0 and i != j:
            c = rng.choice((-2, -1, 1, 2))
            for t in range(k):
                m[i][t] += c * m[j][t]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return IntMatrix(m)


def divisors_of(q: int) -> list[int]:
    return [e for e in range(1, q + 1) if q % e == 0]


_VECTOR_CACHE: dict = {}


def _mod_q_vectors(q: int, k: int):
    """All of (Z/q)^k as a (q**k, k) int64 array, plus per-divisor data."""
    key = (q, k)
    if key not in _VECTOR_CACHE:
        idx = np.arange(q**k, dtype=np.int64)
        powers = q ** np.arange(k, dtype=np.int64)
        vecs = (idx[:, None] // powers[None, :]) % q
        per_divisor = {}
        for e in divisors_of(q):
            scaled = vecs * e % q
            per_divisor[e] = (
                (scaled == 0).all(axis=1),
                scaled @ powers,
            )
        _VECTOR_CACHE[key] = (vecs, powers, per_divisor)
    return _VECTOR_CACHE[key]


def mod_q_annihilator_counts(m: IntMatrix, q: int) -> dict[int, tuple[int, int]]:
    """For each e | q: (#kernel elements killed by e, #cokernel ditto).

    Fully enumerates the map x -> Mx on (Z/q)^k.  A finite abelian group
    annihilated by q is determined up to isomorphism by these counts, so
    matching them against a claimed group proves the isomorphism type.
    Entries stay far below 2**63: k * q^2 <= 7 * 169^2.
    """
    k = m.rows
    vecs, powers, per_divisor = _mod_q_vectors(q, k)
    mm = np.array([[x % q for x in row] for row in m.entries], dtype=np.int64)
    images = vecs @ mm.T % q
    kernel_mask = (images == 0).all(axis=1)
    image_keys = np.unique(images @ powers)
    out = {}
    for e, (killed_mask, scaled_keys) in per_divisor.items():
        ker = int(np.count_nonzero(kernel_mask & killed_mask))
        hits = int(np.count_nonzero(np.isin(scaled_keys, image_keys)))
        assert hits % len(image_keys) == 0
        out[e] = (ker, hits // len(image_keys))
    return out


def predicted_annihilator_counts(orders, q: int) -> dict[int, int]:
    """Counts N_e = #{g : e*g = 0} for the direct sum of Z/m over orders."""
    return {e: prod(gcd(e, m) for m in orders) for e in divisors_of(q)}

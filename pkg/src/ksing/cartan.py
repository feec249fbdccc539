"""Path counts of the truncated quiver and the resulting Cartan matrix.

The commutation squares identify any two reorderings of the same letters,
so path classes between two vertices correspond to letter multisets with
matching weight sum.  The number of classes from i to i + s therefore does
not depend on i and equals the coefficient of t**s in the power series
prod_j 1 / (1 - t**a_j).  Two independent routes to these numbers live
here: exact series expansion, and brute-force path enumeration with
multiset deduplication.
"""

from __future__ import annotations

from .errors import InputError
from .linalg import IntMatrix
from .params import QuotientParams
from .quiver import Quiver


class PathExplosion(InputError):
    """Raw path enumeration exceeded the configured cap."""


def path_counts_gf(params: QuotientParams) -> list[int]:
    """Path-class counts P(0), ..., P(n-2) by series expansion.

    >>> path_counts_gf(QuotientParams(5, 3, (1, 2, 2)))
    [1, 1, 3, 3]
    """
    n = params.n
    counts = [0] * (n - 1)
    counts[0] = 1
    for a in params.weights:
        for s in range(a, n - 1):
            counts[s] += counts[s - a]
    return counts


def path_counts_bruteforce(q: Quiver, cap: int = 10_000_000) -> list[int]:
    """Path-class counts by depth-first enumeration of every raw path.

    Each path is canonicalized to the sorted multiset of its letters and
    deduplicated; classes are tallied by endpoint offset.  Raises
    PathExplosion once more than ``cap`` raw paths have been walked.
    Also asserts homogeneity: the class count from i to i + s is the same
    for every start vertex i.
    """
    out: dict[int, list[tuple[int, int]]] = {
        v: [] for v in range(1, q.vertex_count + 1)
    }
    for arrow in q.arrows:
        out[arrow.source].append((arrow.target, arrow.letter))
    for adj in out.values():
        adj.sort()

    raw = 0
    per_start: dict[int, dict[int, int]] = {}
    for start in range(1, q.vertex_count + 1):
        seen: dict[int, set[tuple[int, ...]]] = {0: {()}}
        stack: list[tuple[int, tuple[int, ...]]] = [(start, ())]
        while stack:
            v, letters = stack.pop()
            for w, letter in out[v]:
                raw += 1
                if raw > cap:
                    raise PathExplosion(
                        f"more than {cap} raw paths; raise the cap to continue"
                    )
                ext = letters + (letter,)
                seen.setdefault(w - start, set()).add(tuple(sorted(ext)))
                stack.append((w, ext))
        per_start[start] = {off: len(cls) for off, cls in seen.items()}

    base = per_start[1]
    for start in range(2, q.vertex_count + 1):
        for off in range(q.vertex_count - start + 1):
            assert per_start[start].get(off, 0) == base.get(off, 0), (
                f"path count from {start} at offset {off} differs from"
                f" vertex 1"
            )
    return [base.get(s, 0) for s in range(q.vertex_count)]


def cartan_matrix(counts: list[int]) -> IntMatrix:
    """Lower-triangular Toeplitz matrix with entry (i, j) = P(i - j)."""
    if not counts or counts[0] != 1:
        raise ValueError("path counts must start with P(0) = 1")
    k = len(counts)
    return IntMatrix(
        [[counts[i - j] if i >= j else 0 for j in range(k)] for i in range(k)]
    )

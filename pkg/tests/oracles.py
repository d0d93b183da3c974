"""Brute-force reference computations, written without the package internals."""
from __future__ import annotations

import itertools
import math


def order_mod(x: int, m: int) -> int:
    x %= m
    acc, k = x, 1
    while acc != 1:
        acc = acc * x % m
        k += 1
    return k


def smallest_field(e: int, p: int) -> tuple[int, int, int]:
    """(ell, q, zeta): smallest prime with elements of order e and p, by scanning."""
    ell = 2
    while True:
        if all(ell % f for f in range(2, int(ell ** 0.5) + 1)) and p % ell:
            qs = [x for x in range(2, ell) if order_mod(x, ell) == e]
            zs = [x for x in range(1, ell) if order_mod(x, ell) == p]
            if qs and zs:
                return ell, qs[0], zs[0]
        ell += 1


def pprime_eta(ell: int, q: int, zeta: int, p: int) -> tuple[int, int]:
    """Least m >= 1 with zeta^m a power of q, and the least such power."""
    powers_of_q = {}
    acc = 1
    for k in range(ell):
        powers_of_q.setdefault(acc, k)
        acc = acc * q % ell
    for m in range(1, p + 1):
        z = pow(zeta, m, ell)
        if z in powers_of_q:
            return m, powers_of_q[z]
    raise AssertionError("unreachable: zeta^p = 1")


def fixed_point_count(r: int, p: int, n: int) -> int:
    """#{(m_1..m_n) in [0,r)^n : sum = 0 mod p} * n!."""
    good = sum(1 for ms in itertools.product(range(r), repeat=n) if sum(ms) % p == 0)
    return good * math.factorial(n)


def morita_rhs(levels: list[int], n: int) -> int:
    """Sum over all maps {1..n} -> J' of the product of the block sizes, grouped by composition."""
    total = 0
    parts = len(levels)
    for assignment in itertools.product(range(parts), repeat=n):
        counts = [assignment.count(j) for j in range(parts)]
        m = math.factorial(n)
        for c in counts:
            m //= math.factorial(c)
        block = 1
        for lev, c in zip(levels, counts):
            block *= lev ** c * math.factorial(c)
        # each composition appears m times among the assignments
        total += m * block
    return total


def matrix_power_mod(M: list[list[int]], k: int, ell: int) -> list[list[int]]:
    n = len(M)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(out[i][t] * M[t][j] for t in range(n)) % ell for j in range(n)] for i in range(n)]
    return out


def is_minimal_annihilator(M, coeffs: list[int], ell: int) -> bool:
    """coeffs (constant first, monic) kills M, and no lower-degree monic polynomial does."""
    n = len(M)
    powers = [matrix_power_mod(M, k, ell) for k in range(len(coeffs))]
    acc = [[0] * n for _ in range(n)]
    for c, P in zip(coeffs, powers):
        acc = [[(acc[i][j] + c * P[i][j]) % ell for j in range(n)] for i in range(n)]
    if any(any(row) for row in acc):
        return False
    # lower degree: the first deg powers are linearly independent
    deg = len(coeffs) - 1
    vecs = [[x for row in P for x in row] for P in powers[:deg]]
    return _rank_mod(vecs, ell) == deg


def _rank_mod(rows: list[list[int]], ell: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % ell), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, ell)
        rows[rank] = [x * inv % ell for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % ell:
                f = rows[i][c]
                rows[i] = [(a - f * b) % ell for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rank_mod(rows, ell: int) -> int:
    return _rank_mod([list(map(int, r)) for r in rows], ell)


def _partitions(n: int, cap: int | None = None):
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap or n), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _multipartitions(n: int, r: int):
    if r == 1:
        yield from (((lam,) for lam in _partitions(n)))
        return
    for m in range(n + 1):
        for head in _partitions(m):
            for tail in _multipartitions(n - m, r - 1):
                yield (head,) + tail


def _add_remove(shape, node_residue):
    """Addable and removable nodes (row, col, comp) of a multipartition."""
    add, rem = [], []
    for m, lam in enumerate(shape):
        rows = list(lam)
        for row in range(len(rows) + 1):
            length = rows[row] if row < len(rows) else 0
            above = rows[row - 1] if row > 0 else None
            if above is None or length < above:
                add.append((row, length, m))
            if length and (row + 1 >= len(rows) or rows[row + 1] < length):
                rem.append((row, length - 1, m))
    return add, rem


def klr_graded_dimension(charges: list, q: int, ell: int, n: int) -> dict[int, int]:
    """Graded dimension of a cyclotomic KLR algebra from standard tableaux.

    ``charges`` lists one field value per component (with multiplicity);
    the node in row r, column c of component m has residue charges[m]*q^(c-r).
    Each tableau gets the usual addable-minus-removable degree, and the
    graded dimension is the sum over shapes of (sum_t t^deg)^2."""
    r = len(charges)

    def residue(node):
        row, col, m = node
        return charges[m] * pow(q, col - row, ell) % ell

    def below(a, b):
        return a[2] > b[2] or (a[2] == b[2] and a[0] > b[0])

    out: dict[int, int] = {}
    for shape in _multipartitions(n, r):
        degs: dict[int, int] = {}

        def grow(cur, deg, left):
            if not left:
                degs[deg] = degs.get(deg, 0) + 1
                return
            add, rem = _add_remove(cur, residue)
            for node in add:
                row, col, m = node
                target = shape[m]
                if row >= len(target) or col >= target[row]:
                    continue
                res = residue(node)
                nxt = list(map(list, cur))
                if row < len(nxt[m]):
                    nxt[m][row] += 1
                else:
                    nxt[m].append(1)
                d = sum(1 for x in add if residue(x) == res and below(x, node))
                d -= sum(1 for x in rem if residue(x) == res and below(x, node))
                grow(tuple(tuple(x) for x in nxt), deg + d, left - 1)

        grow(tuple(() for _ in range(r)), 0, n)
        for d1, c1 in degs.items():
            for d2, c2 in degs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
    return out

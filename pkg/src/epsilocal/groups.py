"""Structure of small finite abelian groups given by generators and multiplication.

The quotients handled here have at most a few thousand elements, so the
strategy is fully exhaustive: breadth-first enumeration over candidate
generators collects Schreier relations, a Smith-style diagonalization of
the relation lattice yields independent cyclic factors, and a rebuilt
discrete-log table maps every element to its exponent vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque

from .errors import InternalInvariantError


def smith_diagonalize(rows: list[list[int]], k: int):
    """Diagonalize the lattice spanned by rows inside Z^k.

    Returns (diag, W) where W is unimodular and, reading the rows as
    relations among generators g_1..g_k, the elements
    h_j = prod_i g_i**W[j][i] are independent of orders diag[j].
    W is maintained as the inverse of the accumulated column operations.
    """
    A = [row[:] for row in rows]
    r = len(A)
    W = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def col_op(src, dst, q):
        # A -> A * (I - q E_{src,dst});  W -> (I + q E_{src,dst}) * W
        for row in A:
            row[dst] -= q * row[src]
        Ws, Wd = W[src], W[dst]
        for i in range(k):
            Ws[i] += q * Wd[i]

    def col_swap(j1, j2):
        for row in A:
            row[j1], row[j2] = row[j2], row[j1]
        W[j1], W[j2] = W[j2], W[j1]

    def col_neg(j):
        for row in A:
            row[j] = -row[j]
        for i in range(k):
            W[j][i] = -W[j][i]

    t = 0
    while t < min(r, k):
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, k):
                a = abs(A[i][j])
                if a and (best is None or a < best):
                    best = a
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            col_swap(t, j0)
        while True:
            dirty = False
            for i in range(r):
                if i != t and A[i][t]:
                    q = A[i][t] // A[t][t]
                    for j in range(k):
                        A[i][j] -= q * A[t][j]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            for j in range(k):
                if j != t and A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(t, j, q)
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        if A[t][t] < 0:
            col_neg(t)
        t += 1
    diag = [A[j][j] if j < t else 0 for j in range(k)]
    return diag, W


@dataclass
class GroupStructure:
    """A finite abelian group with a chosen independent generating set."""

    order: int
    reps: tuple          # all element keys, canonically sorted
    basis: tuple         # keys of independent generators
    orders: tuple        # orders of the basis elements, aligned with basis
    dlog: dict           # element key -> exponent tuple against basis

    def exponent(self) -> int:
        e = 1
        for d in self.orders:
            e = e * d // __import__("math").gcd(e, d)
        return e


def abelian_structure(identity, gens, mul, inv, expected_order=None) -> GroupStructure:
    """Resolve the group generated by gens into independent cyclic factors."""
    k = len(gens)
    elements = {identity: tuple([0] * k)}
    relations = []
    seen_rel = set()
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        vec = elements[x]
        for idx, g in enumerate(gens):
            y = mul(x, g)
            cand = list(vec)
            cand[idx] += 1
            if y in elements:
                rel = tuple(a - b for a, b in zip(cand, elements[y]))
                if any(rel) and rel not in seen_rel:
                    seen_rel.add(rel)
                    relations.append(list(rel))
            else:
                elements[y] = tuple(cand)
                queue.append(y)
    order = len(elements)
    if expected_order is not None and order != expected_order:
        raise InternalInvariantError(
            f"generators produced a group of order {order}, expected {expected_order}"
        )

    diag, W = smith_diagonalize(relations, k)
    if any(d == 0 for d in diag):
        raise InternalInvariantError("relation lattice does not have full rank on a finite group")
    prod = 1
    for d in diag:
        prod *= d
    if prod != order:
        raise InternalInvariantError(
            f"diagonalized relation lattice gives order {prod}, group has {order}"
        )

    def power(g, e):
        if e < 0:
            g = inv(g)
            e = -e
        acc = identity
        base = g
        while e:
            if e & 1:
                acc = mul(acc, base)
            base = mul(base, base)
            e >>= 1
        return acc

    raw = []
    for j in range(k):
        if diag[j] == 1:
            continue
        h = identity
        for i in range(k):
            if W[j][i]:
                h = mul(h, power(gens[i], W[j][i]))
        raw.append((diag[j], h))
    raw.sort(key=lambda t: (-t[0], t[1]))
    orders = tuple(d for d, _ in raw)
    basis = tuple(h for _, h in raw)

    # Rebuild the discrete-log table against the independent basis.
    dlog = {identity: tuple([0] * len(basis))}
    frontier = [identity]
    for j, (d, h) in enumerate(zip(orders, basis)):
        new_frontier = list(frontier)
        for x in frontier:
            y = x
            vec = dlog[x]
            for e in range(1, d):
                y = mul(y, h)
                if y in dlog:
                    raise InternalInvariantError("basis elements are not independent")
                dlog[y] = tuple(v + (e if i == j else 0) for i, v in enumerate(vec))
                new_frontier.append(y)
        frontier = new_frontier
    if len(dlog) != order:
        raise InternalInvariantError("discrete-log table does not cover the group")
    reps = tuple(sorted(elements.keys()))
    return GroupStructure(order=order, reps=reps, basis=basis, orders=orders, dlog=dlog)


def subgroup_closure(identity, gens, mul) -> frozenset:
    """All elements generated by gens inside an ambient finite group."""
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)

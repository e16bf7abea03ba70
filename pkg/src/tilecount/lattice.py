"""Exact integer matrix algebra: Smith and Hermite normal forms, integer
linear systems and the isomorphism type of ``Z^n / L``.

Matrices are plain lists of rows of Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

IntMatrix = list[list[int]]


class StepBudgetExceeded(RuntimeError):
    pass


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if any(len(row) != inner for row in a):
        raise ValueError("dimension mismatch")
    bt = list(zip(*b)) if b else [()] * cols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass
class SmithDecomposition:
    """``D = U @ A @ V`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a: Sequence[Sequence[int]], max_steps: int | None = None) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot rule: the smallest nonzero absolute value in the remaining block,
    ties broken by (row, col) position.  ``max_steps`` bounds the number of
    pivot searches.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("ragged matrix")
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    # V is kept transposed so that column operations are row operations.
    vt = identity(n)
    steps = 0

    for t in range(min(m, n)):
        while True:
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise StepBudgetExceeded(f"smith normal form exceeded {max_steps} steps")
            best = None
            for i in range(t, m):
                row = d[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return _finish(u, d, vt)
            _, pi, pj = best
            if pi != t:
                d[t], d[pi] = d[pi], d[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in d:
                    row[t], row[pj] = row[pj], row[t]
                vt[t], vt[pj] = vt[pj], vt[t]
            p = d[t][t]
            dt, ut = d[t], u[t]
            dirty = False
            for i in range(t + 1, m):
                x = d[i][t]
                if x:
                    q = x // p
                    row, urow = d[i], u[i]
                    for j in range(t, n):
                        if dt[j]:
                            row[j] -= q * dt[j]
                    for j in range(m):
                        if ut[j]:
                            urow[j] -= q * ut[j]
                    if row[t]:
                        dirty = True
            if dirty:
                continue
            # column t is now clean below the pivot, so column operations
            # only change row t of D.
            vtt = vt[t]
            for j in range(t + 1, n):
                x = dt[j]
                if x:
                    q = x // p
                    dt[j] = x - q * p
                    vrow = vt[j]
                    for k in range(n):
                        if vtt[k]:
                            vrow[k] -= q * vtt[k]
                    if dt[j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                row = d[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                if p < 0:
                    d[t] = [-x for x in d[t]]
                    u[t] = [-x for x in u[t]]
                break
            row, urow = d[bad], u[bad]
            for j in range(t, n):
                dt[j] += row[j]
            for j in range(m):
                ut[j] += urow[j]
    return _finish(u, d, vt)


def _finish(u: IntMatrix, d: IntMatrix, vt: IntMatrix) -> SmithDecomposition:
    v = [list(col) for col in zip(*vt)] if vt else []
    return SmithDecomposition(u, d, v)


def invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form (divisibility chain)."""
    if not a or not a[0]:
        return []
    return [x for x in smith_normal_form(a).diagonal if x]


def hermite_normal_form(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form: a basis of the row lattice of ``a``.

    Rows are in echelon form with positive pivots, entries above each pivot
    reduced into ``[0, pivot)``; zero rows are dropped.
    """
    rows = [list(map(int, r)) for r in a if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < n:
        nonzero = [r for r in rows if r[col]]
        if not nonzero:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(nonzero) > 1:
            nonzero.sort(key=lambda r: abs(r[col]))
            piv = nonzero[0]
            nxt = [piv]
            for r in nonzero[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nonzero = nxt
        piv = nonzero[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = rest
        col += 1
    # reduce above pivots
    for k, row in enumerate(basis):
        pc = next(j for j, x in enumerate(row) if x)
        for above in range(k):
            q = basis[above][pc] // row[pc]
            if q:
                basis[above] = [x - q * y for x, y in zip(basis[above], row)]
    return basis


def _size_reduce(w: list[int], kernel: list[list[int]], rounds: int = 4) -> list[int]:
    """Greedy norm reduction of ``w`` by integer multiples of kernel vectors."""
    for _ in range(rounds):
        changed = False
        for k in kernel:
            kk = sum(x * x for x in k)
            dot = sum(x * y for x, y in zip(w, k))
            lam = (2 * dot + kk) // (2 * kk)  # nearest integer to dot / kk
            if lam:
                w = [x - lam * y for x, y in zip(w, k)]
                changed = True
        if not changed:
            break
    return w


def solve_linear_integer(a: Sequence[Sequence[int]], b: Sequence[int], max_steps: int | None = None,
                         reduce: bool = True) -> list[int] | None:
    """Some integer ``w`` with ``a @ w == b``, or ``None`` if none exists.

    With ``reduce`` the particular solution is shortened greedily along the
    integer kernel, which keeps weights small without changing ``a @ w``.
    """
    m = len(a)
    if len(b) != m:
        raise ValueError("dimension mismatch")
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    if n == 0:
        return [] if not any(b) else None
    snf = smith_normal_form(a, max_steps=max_steps)
    c = matvec(snf.U, b)
    z = [0] * n
    for i in range(m):
        di = snf.D[i][i] if i < n else 0
        if di == 0:
            if c[i]:
                return None
        else:
            if c[i] % di:
                return None
            z[i] = c[i] // di
    w = matvec(snf.V, z)
    if reduce:
        kernel = [[row[j] for row in snf.V] for j in range(snf.rank, n)]
        w = _size_reduce(w, kernel)
    if matvec(a, w) != list(b):
        raise ArithmeticError("integer solve failed its own check")
    return w


@dataclass(frozen=True)
class GroupShape:
    """Finitely generated abelian group ``Z^free_rank + Z_t1 + Z_t2 + ...``."""

    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tors = tuple(int(t) for t in self.torsion)
        if any(t < 2 for t in tors):
            raise ValueError("torsion factors must be >= 2")
        if any(tors[i + 1] % tors[i] for i in range(len(tors) - 1)):
            raise ValueError("torsion factors must form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"


def quotient_shape(rows_span: Sequence[Sequence[int]], ambient_rank: int) -> GroupShape:
    """Isomorphism type of ``Z^ambient_rank`` modulo the lattice spanned by the rows."""
    rows = [list(r) for r in rows_span if any(r)]
    if any(len(r) != ambient_rank for r in rows):
        raise ValueError("row length must equal the ambient rank")
    if not rows:
        return GroupShape(ambient_rank, ())
    factors = [abs(x) for x in invariant_factors(hermite_normal_form(rows))]
    return GroupShape(ambient_rank - len(factors), tuple(f for f in factors if f > 1))


def in_row_lattice(v: Sequence[int], rows: Sequence[Sequence[int]]) -> bool:
    """Whether ``v`` is an integer combination of ``rows``."""
    if not any(v):
        return True
    if not rows:
        return False
    at = [list(col) for col in zip(*rows)]
    return solve_linear_integer(at, list(v)) is not None

"""Move-invariant oracles: abelianization, Smith normal form, finite-quotient counts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .words import exponent_sums


class BudgetExceeded(RuntimeError):
    pass


def abelianization_matrix(p) -> list[list[int]]:
    """Exponent-sum matrix, one row per relator, one column per generator."""
    k = len(p.alphabet.names)
    return [exponent_sums(r, k) for r in p.relators]


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    def h1(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion coefficients > 1) of the cokernel Z^cols / rowspace."""
        rows, cols = self.shape
        rank = sum(1 for d in self.invariants if d != 0)
        torsion = tuple(d for d in self.invariants if d > 1)
        return cols - rank, torsion

    def h1_trivial(self) -> bool:
        free, torsion = self.h1()
        return free == 0 and not torsion


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> SmithForm:
    """Diagonalise an integer matrix by unimodular row/column operations.

    Returns invariants ``d1 | d2 | ...`` (length ``min(rows, cols)``, nonnegative)
    and transforms with ``left @ M @ right == diag``.
    """
    M = [[int(v) for v in row] for row in matrix]
    m = len(M)
    n = len(M[0]) if m else 0
    if m and any(len(row) != n for row in M):
        raise ValueError("ragged matrix")
    L = _identity(m)
    R = _identity(n)

    def swap_rows(a, b):
        M[a], M[b] = M[b], M[a]
        L[a], L[b] = L[b], L[a]

    def swap_cols(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in R:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, -q)
                    if M[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, -q)
                    if M[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            L[t] = [-x for x in L[t]]
        t += 1
    diag = tuple(M[i][i] for i in range(min(m, n)))
    return SmithForm(diag, tuple(map(tuple, L)), tuple(map(tuple, R)), (m, n))


def h1_signature(p) -> tuple[int, tuple[int, ...]]:
    return smith_normal_form(abelianization_matrix(p)).h1() if p.relators else (len(p.alphabet.names), ())


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table ``table[a, b] = a*b``."""

    name: str
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError(f"group {self.name}: table must be a nonempty square matrix")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValueError(f"group {self.name}: entries out of range")
        rng = np.arange(n)
        for row in t:
            if not np.array_equal(np.sort(row), rng):
                raise ValueError(f"group {self.name}: not a latin square")
        for col in t.T:
            if not np.array_equal(np.sort(col), rng):
                raise ValueError(f"group {self.name}: not a latin square")
        ids = [e for e in range(n) if np.array_equal(t[e], rng)]
        if not ids:
            raise ValueError(f"group {self.name}: no identity element")
        # (ab)c == a(bc)
        left = t[t, :]  # left[a, b, c] = (ab)c
        right = t[:, t]  # right[a, b, c] = a(bc)
        if not np.array_equal(left, right):
            raise ValueError(f"group {self.name}: not associative")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        rng = np.arange(self.order)
        return next(e for e in range(self.order) if np.array_equal(self.table[e], rng))

    @property
    def inverse(self) -> np.ndarray:
        e = self.identity
        return np.argmax(self.table == e, axis=1).astype(np.int64)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.name == other.name and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.name, self.table.tobytes()))


def _perm_group(name, perms):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            # a*b means apply b then a
            table[i, j] = index[tuple(a[b[x]] for x in range(len(a)))]
    return FiniteGroup(name, table)


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup(f"Z{n}", (idx[:, None] + idx[None, :]) % n)


def symmetric_group(n: int) -> FiniteGroup:
    return _perm_group(f"S{n}", itertools.permutations(range(n)))


def alternating_group(n: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    return _perm_group(f"A{n}", [p for p in itertools.permutations(range(n)) if even(p)])


def default_groups() -> list[FiniteGroup]:
    return [cyclic_group(2), cyclic_group(3), symmetric_group(3), alternating_group(4)]


def count_homomorphisms(p, group: FiniteGroup, max_assignments: int = 10**7, use_numba=None) -> int:
    """Count generator assignments into ``group`` satisfying every relator, by enumeration."""
    k = len(p.alphabet.names)
    if group.order ** k > max_assignments:
        raise BudgetExceeded(f"{group.order}^{k} assignments exceed the budget of {max_assignments}")
    letters, offsets = _kernels.pack_relators(p.relators, k)
    return _kernels.count_assignments(group.table, group.inverse, group.identity,
                                      letters, offsets, k, use_numba=use_numba)

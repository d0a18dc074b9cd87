"""Independent reference implementations used by the tests.

Nothing here imports the package's algorithms; words are plain lists of
signed generator codes (``+g``/``-g`` for generator ``g``, 1-based).
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction


def naive_reduce(letters):
    """Scan for an adjacent cancelling pair, delete it, restart. Quadratic but obvious."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] == -w[k + 1]:
                del w[k:k + 2]
                changed = True
                break
    return w


def inv(w):
    return [-c for c in reversed(w)]


def expand(*parts):
    """Raw concatenation followed by naive reduction."""
    out = []
    for p in parts:
        out.extend(p)
    return naive_reduce(out)


def slide_oracle(relators, duals, i, j, c, c_star, sign):
    """Expected (relators, duals) after sliding handle i over sign*H_j along (c, c*)."""
    rels, ds = [list(r) for r in relators], [list(d) for d in duals]
    rj = rels[j] if sign > 0 else inv(rels[j])
    rels[i] = expand(rels[i], c, rj, inv(c))
    di = inv(ds[i]) if sign > 0 else ds[i]
    ds[j] = expand(ds[j], inv(c_star), di, c_star)
    return rels, ds


def double_slide_oracle(relators, i, j, c, sign, exponent):
    rels = [list(r) for r in relators]
    rj = rels[j] if sign > 0 else inv(rels[j])
    comm = [*c, *rj, *inv(c), *inv(rj)]
    if exponent < 0:
        comm = inv(comm)
    rels[i] = expand(rels[i], comm)
    return rels


def conjugate_of_generator(r):
    """(g, sign) when the reduced word r equals u g^sign u^-1 for some u, else None."""
    r = naive_reduce(r)
    if len(r) % 2 == 0:
        return None
    m = len(r) // 2
    if r[m + 1:] != inv(r[:m]):
        return None
    return abs(r[m]) - 1, (1 if r[m] > 0 else -1)


def brute_force_ac(ngens, relators):
    """(type1, type2) by enumerating every injective relator/generator assignment."""
    match = [conjugate_of_generator(r) for r in relators]
    ok = [set() if m is None else {m[0]} for m in match]
    n = len(relators)

    def covers_relators():
        for gens in itertools.permutations(range(ngens), n):
            if all(g in ok[t] for t, g in enumerate(gens)):
                return True
        return False

    def covers_generators():
        for rels in itertools.permutations(range(n), ngens):
            if all(g in ok[t] for g, t in enumerate(rels)):
                return True
        return False

    type1 = ngens >= n and covers_relators()
    type2 = ngens <= n and covers_generators()
    return type1, type2


def exponent_matrix(ngens, relators):
    rows = []
    for r in relators:
        row = [0] * ngens
        for c in r:
            row[abs(c) - 1] += 1 if c > 0 else -1
        rows.append(row)
    return rows


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c2 in range(col, n):
                m[r][c2] -= f * m[col][c2]
    return int(det)


def invariant_factors(matrix):
    """Nonzero invariant factors via gcds of k x k minors (determinantal divisors)."""
    if not matrix or not matrix[0]:
        return []
    rows, cols = len(matrix), len(matrix[0])
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[matrix[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def hom_count(ngens, relators, table):
    """Count assignments of generators to group elements killing every relator."""
    n = len(table)
    e = next(a for a in range(n) if all(table[a][b] == b for b in range(n)))
    inverse = [next(b for b in range(n) if table[a][b] == e) for a in range(n)]
    count = 0
    for img in itertools.product(range(n), repeat=ngens):
        good = True
        for r in relators:
            v = e
            for c in r:
                x = img[abs(c) - 1]
                v = table[v][x if c > 0 else inverse[x]]
            if v != e:
                good = False
                break
        count += good
    return count


def perm_table(perms):
    """Multiplication table of a list of permutations; a*b applies b first."""
    index = {p: k for k, p in enumerate(perms)}
    return [[index[tuple(a[b[t]] for t in range(len(b)))] for b in perms] for a in perms]


def sym_table(n):
    return perm_table(sorted(itertools.permutations(range(n))))


def random_word(rng: random.Random, ngens, max_len, min_len=0):
    """Freely reduced random word of length between min_len and max_len."""
    while True:
        length = rng.randint(min_len, max_len)
        w = []
        while len(w) < length:
            c = rng.choice([g for g in range(1, ngens + 1)] + [-g for g in range(1, ngens + 1)])
            if w and w[-1] == -c:
                continue
            w.append(c)
        if len(w) >= min_len:
            return w

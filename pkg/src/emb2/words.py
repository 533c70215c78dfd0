"""Words in finitely generated groups, and the word-problem primitives for
canonical surface groups.

A word is a tuple of nonzero ints: +g is a generator, -g its inverse.  The
deciders here work on words over the canonical generators of a closed-surface
presentation:

* sphere: trivial group;
* orientable genus 1: Z x Z, decided by exponent vectors;
* nonorientable genus 1: Z/2, decided by parity;
* nonorientable genus 2: the Klein bottle group <a, b | bab^-1 = a^-1>,
  decided by the (m, n) |-> a^m b^n normal form;
* negative Euler characteristic: Dehn's algorithm over the symmetrized
  canonical relator (replace any subword longer than half of a cyclic
  conjugate of the relator or its inverse by the shorter complement).
"""

from __future__ import annotations

from typing import NamedTuple

Word = tuple[int, ...]


def inv(word) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def concat(*words) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def conjugate(word, by) -> Word:
    return concat(by, word, inv(by))


def exponent_vector(word, rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


# ---------------------------------------------------------------------------
# Klein bottle group <a, b | bab^-1 = a^-1>, generators a=1, b=2


class KleinElement(NamedTuple):
    """Normal form a^m b^n; multiplication follows from b a b^-1 = a^-1."""

    m: int
    n: int

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        sign = -1 if self.n % 2 else 1
        return KleinElement(self.m + sign * other.m, self.n + other.n)

    def inverse(self) -> "KleinElement":
        sign = 1 if self.n % 2 else -1
        return KleinElement(sign * self.m, -self.n)

    @property
    def is_identity(self) -> bool:
        return self.m == 0 and self.n == 0

    def power(self, k: int) -> "KleinElement":
        if k < 0:
            return self.inverse().power(-k)
        out = KleinElement(0, 0)
        for _ in range(k):
            out = out * self
        return out


KLEIN_IDENTITY = KleinElement(0, 0)
_KLEIN_GENS = {
    1: KleinElement(1, 0),
    -1: KleinElement(-1, 0),
    2: KleinElement(0, 1),
    -2: KleinElement(0, -1),
}


def klein_normal_form(word) -> KleinElement:
    """Left-to-right fold of a word over {a=1, b=2}."""
    out = KLEIN_IDENTITY
    for x in word:
        if abs(x) not in (1, 2):
            raise ValueError(f"not a Klein bottle generator: {x}")
        out = out * _KLEIN_GENS[x]
    return out


def klein_commutes(p: KleinElement, q: KleinElement) -> bool:
    return p * q == q * p


# ---------------------------------------------------------------------------
# Dehn's algorithm


class DehnTable:
    """Replacement table for Dehn's algorithm: every prefix u of a cyclic
    conjugate of r or r^-1 with |u| > |r|/2 maps to the inverse of the
    complement (a strictly shorter equal word)."""

    def __init__(self, relator: Word):
        self.relator = tuple(relator)
        n = len(self.relator)
        self.length = n
        self.min_match = n // 2 + 1
        self.table: dict[Word, Word] = {}
        variants = []
        for base in (self.relator, inv(self.relator)):
            for i in range(n):
                variants.append(base[i:] + base[:i])
        for r in variants:
            for k in range(self.min_match, n + 1):
                u, v = r[:k], r[k:]
                self.table.setdefault(u, inv(v))

    def reduce(self, word) -> Word:
        """Cyclically reduce, then greedily shorten until no replacement
        applies.  Empty result iff the word is trivial in the group."""
        w = list(cyclic_reduce(word))
        n_rel = self.length
        while True:
            if not w:
                return ()
            doubled = w + w
            m = len(w)
            found = None
            for k in range(min(n_rel, m), self.min_match - 1, -1):
                for i in range(m):
                    u = tuple(doubled[i : i + k])
                    v = self.table.get(u)
                    if v is not None:
                        found = (i, k, v)
                        break
                if found:
                    break
            if not found:
                return tuple(w)
            i, k, v = found
            rest = doubled[i + k : i + m]
            w = list(cyclic_reduce(tuple(v) + tuple(rest)))


def canonical_relator(kind: str, genus: int) -> Word:
    if kind == "orientable":
        out: list[int] = []
        for i in range(genus):
            a, b = 2 * i + 1, 2 * i + 2
            out += [a, b, -a, -b]
        return tuple(out)
    if kind == "nonorientable":
        out = []
        for i in range(genus):
            out += [i + 1, i + 1]
        return tuple(out)
    return ()


def canonical_rank(kind: str, genus: int) -> int:
    if kind == "orientable":
        return 2 * genus
    if kind == "nonorientable":
        return genus
    return 0


def canonical_h1_class(kind: str, genus: int, word) -> tuple:
    """Image of a canonical word in H1, in a fixed normal form; the zero
    class is the all-zero tuple."""
    rank = canonical_rank(kind, genus)
    v = exponent_vector(word, rank)
    if kind == "orientable" or kind == "sphere":
        return v
    # nonorientable genus n: relation 2(x1+...+xn) = 0
    n = genus
    return tuple(v[i] - v[n - 1] for i in range(n - 1)) + (v[n - 1] % 2,)


class CanonicalGroup:
    """Word problem for the fundamental group of a closed surface presented
    by its canonical one-relator schema."""

    def __init__(self, kind: str, genus: int):
        self.kind = kind
        self.genus = genus
        self.rank = canonical_rank(kind, genus)
        self.relator = canonical_relator(kind, genus)
        chi = 2 if kind == "sphere" else (
            2 - 2 * genus if kind == "orientable" else 2 - genus
        )
        self.chi = chi
        self._dehn = DehnTable(self.relator) if chi < 0 else None

    def h1_class(self, word) -> tuple:
        return canonical_h1_class(self.kind, self.genus, word)

    def is_trivial(self, word) -> bool:
        word = free_reduce(word)
        if self.kind == "sphere":
            return True
        if any(self.h1_class(word)):
            return False
        if self.kind == "orientable" and self.genus == 1:
            return True  # Z x Z: zero exponent vector settles it
        if self.kind == "nonorientable" and self.genus == 1:
            return True  # Z/2: even exponent settles it
        if self.kind == "nonorientable" and self.genus == 2:
            return klein_normal_form(klein_coords(word)).is_identity
        return self._dehn.reduce(word) == ()

    def commutes(self, w1, w2) -> bool:
        return self.is_trivial(concat(w1, w2, inv(w1), inv(w2)))


# Fixed change of coordinates between the canonical nonorientable genus-2
# schema <x, y | xxyy> and the Klein bottle presentation <a, b | bab^-1 a>:
# x = b and y = b^-1 a  (equivalently a = xy, b = x).
_KLEIN_FROM_SCHEMA = {1: (2,), 2: (-2, 1)}


def klein_coords(word) -> Word:
    """Rewrite a word over the canonical genus-2 schema generators x=1, y=2
    in the Klein bottle generators a=1, b=2."""
    out: list[int] = []
    for x in word:
        repl = _KLEIN_FROM_SCHEMA[abs(x)]
        out.extend(repl if x > 0 else inv(repl))
    return free_reduce(out)


# ---------------------------------------------------------------------------
# Smith normal form (exact, for abelianization oracles)


def smith_normal_form(matrix):
    """Diagonalize an integer matrix: returns (diag, U) with U*A*V = D for
    some unimodular V; U is returned so cokernel classes can be computed.
    `diag` lists the diagonal entries of D (nonnegative, divisibility chain).
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(r) for r in matrix]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]

    def row_op(i, j, k):  # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, k):  # col_i += k * col_j
        for r in range(rows):
            a[r][i] += k * a[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if y % x:
                g = _gcd(x, y)
                lcm = x * y // g
                # standard 2x2 fix: replace (x, y) by (g, lcm)
                a[i][i], a[i + 1][i + 1] = g, lcm
                # adjust U accordingly via the explicit 2x2 transform
                s, (p, q) = _bezout(x, y)
                # U rows i, i+1: [[p, q], [y/g * ?, ...]]  -- recompute exactly:
                # (g) = p*x + q*y; transform rows: new_i = p*row_i + q*row_{i+1}
                # new_{i+1} = -(y/g)*row_i + (x/g)*row_{i+1}
                ri = [p * aa + q * bb for aa, bb in zip(u[i], u[i + 1])]
                rj = [
                    -(y // g) * aa + (x // g) * bb for aa, bb in zip(u[i], u[i + 1])
                ]
                u[i], u[i + 1] = ri, rj
                changed = True
    diag = [a[i][i] for i in range(min(rows, cols))]
    return diag, u


def _gcd(x, y):
    x, y = abs(x), abs(y)
    while y:
        x, y = y, x % y
    return x


def _bezout(x, y):
    # returns (g, (p, q)) with p*x + q*y = g
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, (old_s, old_t)


def cokernel_invariants(matrix, rank_ambient):
    """Invariant factors of Z^rank / column-span(matrix): returns
    (torsion list, free rank)."""
    if not matrix or not matrix[0]:
        return [], rank_ambient
    diag, _ = smith_normal_form(matrix)
    torsion = [d for d in diag if d not in (0, 1)]
    zero = sum(1 for d in diag if d == 0)
    free = rank_ambient - (len(diag) - zero)
    return torsion, free


def cokernel_class(matrix_u, diag, vector):
    """Class of `vector` in the cokernel, given U and the Smith diagonal."""
    y = [sum(r[i] * vector[i] for i in range(len(vector))) for r in matrix_u]
    out = []
    for i, val in enumerate(y):
        if i < len(diag) and diag[i] > 0:
            out.append(val % diag[i])
        else:
            out.append(val)
    return tuple(out)

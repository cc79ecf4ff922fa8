"""Exact linear algebra over Z and finite abelian groups.

Everything here works with arbitrary-precision Python integers.  Matrices are
plain lists/tuples of rows.  Finite abelian groups are kept in invariant-factor
form d1 | d2 | ... | dk; elements are exponent tuples reduced mod di.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod


class AbgroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    assert all(len(r) == k for r in A) or not A
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D, U and V unimodular, D diagonal with
    D[0][0] | D[1][1] | ... .  Pivoting picks the smallest nonzero entry."""
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q * row_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, q):  # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero pivot in the trailing block
        pi = pj = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best):
                    best = abs(a)
                    pi, pj = i, j
        if best is None:
            break
        swap_rows(t, pi)
        swap_cols(t, pj)

        while True:
            # clear column t
            dirty = False
            for i in range(m):
                if i != t and A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(i, t)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(n):
                if j != t and A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def invert_unimodular(U):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(U)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(U)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise AbgroupError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise AbgroupError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


def solve_integer(A, v):
    """One integer solution x of A x = v, or None if there is none."""
    D, U, V = smith_normal_form(A)
    m = len(A)
    n = len(A[0]) if m else 0
    uv = mat_vec(U, v)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < min(m, n) else 0
        if i < n and d:
            if uv[i] % d:
                return None
            y[i] = uv[i] // d
        elif uv[i]:
            return None
    return mat_vec(V, y)


def right_kernel(A):
    """Basis (list of vectors) of {x : A x = 0} over Z."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    D, U, V = smith_normal_form(A)
    basis = []
    for j in range(n):
        d = D[j][j] if j < min(m, n) else 0
        if d == 0:
            basis.append([V[i][j] for i in range(n)])
    return basis


def hnf_rows(vectors, n):
    """Unique row-style Hermite normal form of the lattice spanned by the
    given row vectors in Z^n.  Rows are returned in echelon order with
    positive pivots and entries above each pivot reduced into [0, pivot)."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    col = 0
    while col < n and rows:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = []
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = [piv] + nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
        col += 1
    # reduce entries above pivots
    for k, row in enumerate(basis):
        p = next(j for j in range(n) if row[j])
        for r in range(k):
            q = basis[r][p] // row[p]
            if q:
                basis[r] = [a - q * b for a, b in zip(basis[r], row)]
    return [tuple(r) for r in basis]


def quotient_coords(relation_rows, ngens):
    """Structure of Z^ngens modulo the span of the relation rows.

    Returns (invariants, coord_fn, generator_vectors): the invariant factors
    (each > 1), a map from an exponent vector to canonical coordinates, and
    one Z^ngens representative per invariant factor.
    """
    if ngens == 0:
        return (), (lambda c: ()), []
    rels = [list(r) for r in relation_rows]
    if not rels:
        raise AbgroupError("quotient is infinite")
    M = transpose(rels)  # relations as columns, ngens x r
    D, U, V = smith_normal_form(M)
    r = len(rels)
    diag = [D[i][i] if i < min(ngens, r) else 0 for i in range(ngens)]
    if any(d == 0 for d in diag):
        raise AbgroupError("quotient is infinite")
    Uinv = invert_unimodular(U)
    kept = [i for i in range(ngens) if diag[i] != 1]
    invariants = tuple(diag[i] for i in kept)

    def coord_fn(c):
        return tuple(sum(U[i][j] * c[j] for j in range(ngens)) % diag[i]
                     for i in kept)

    genvecs = [[Uinv[row][i] for row in range(ngens)] for i in kept]
    return invariants, coord_fn, genvecs


# ---------------------------------------------------------------------------
# finite abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form d1 | d2 | ... | dk."""

    invariant_factors: tuple

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if any(d < 2 for d in facs):
            raise AbgroupError("invariant factors must be >= 2")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise AbgroupError("invariant factors must form a divisibility chain")

    @property
    def ngens(self):
        return len(self.invariant_factors)

    def order(self):
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def rank(self, p):
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def zero(self):
        return (0,) * self.ngens

    def reduce(self, vec):
        return tuple(v % d for v, d in zip(vec, self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % d
                     for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def scale(self, n, x):
        return tuple((n * a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = o * (d // gcd(a, d)) // gcd(o, d // gcd(a, d))
        return o

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))


@dataclass(frozen=True)
class Homomorphism:
    """Map between finite abelian groups; column j of `matrix` is the image
    of the j-th source generator."""

    source: AbelianGroup
    target: AbelianGroup
    matrix: tuple  # target.ngens rows x source.ngens cols

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        kt, ks = self.target.ngens, self.source.ngens
        if len(mat) != kt or any(len(row) != ks for row in mat):
            raise AbgroupError("homomorphism matrix has wrong shape")
        for j, dj in enumerate(self.source.invariant_factors):
            for i, di in enumerate(self.target.invariant_factors):
                if (dj * mat[i][j]) % di:
                    raise AbgroupError(
                        "matrix column %d does not respect source order %d" % (j, dj))

    def __call__(self, vec):
        return self.target.reduce(
            tuple(sum(self.matrix[i][j] * vec[j] for j in range(self.source.ngens))
                  for i in range(self.target.ngens)))

    def compose(self, other):
        """self o other."""
        if other.target != self.source:
            raise AbgroupError("composition mismatch")
        inner = self.source.ngens
        mat = [[sum(self.matrix[i][k] * other.matrix[k][j] for k in range(inner))
                for j in range(other.source.ngens)]
               for i in range(self.target.ngens)]
        return Homomorphism(other.source, self.target, mat)

    def __add__(self, other):
        if (other.source, other.target) != (self.source, self.target):
            raise AbgroupError("sum mismatch")
        return Homomorphism(self.source, self.target,
                            [[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.matrix, other.matrix)])

    def __sub__(self, other):
        if (other.source, other.target) != (self.source, self.target):
            raise AbgroupError("difference mismatch")
        return Homomorphism(self.source, self.target,
                            [[a - b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.matrix, other.matrix)])

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        if (other.source, other.target) != (self.source, self.target):
            return False
        for i, di in enumerate(self.target.invariant_factors):
            for j in range(self.source.ngens):
                if (self.matrix[i][j] - other.matrix[i][j]) % di:
                    return False
        return True

    def __hash__(self):
        norm = tuple(tuple(x % di for x in row)
                     for row, di in zip(self.matrix, self.target.invariant_factors))
        return hash((self.source, self.target, norm))

    def kernel(self):
        ks = self.source.ngens
        kt = self.target.ngens
        if ks == 0:
            return Subgroup.trivial(self.source)
        if kt == 0:
            return Subgroup.full(self.source)
        block = [list(self.matrix[i]) +
                 [self.target.invariant_factors[i] if j == i else 0
                  for j in range(kt)]
                 for i in range(kt)]
        gens = [vec[:ks] for vec in right_kernel(block)]
        return Subgroup.from_generators(self.source, gens)

    def image(self):
        cols = [[self.matrix[i][j] for i in range(self.target.ngens)]
                for j in range(self.source.ngens)]
        return Subgroup.from_generators(self.target, cols)

    def is_zero(self):
        return self == zero_hom(self.source, self.target)


def identity_hom(A):
    return Homomorphism(A, A, _identity(A.ngens))


def zero_hom(source, target):
    return Homomorphism(source, target,
                        [[0] * source.ngens for _ in range(target.ngens)])


def power_hom(A, n):
    """Multiplication by n (the n-th power map written additively)."""
    return Homomorphism(A, A, [[n if i == j else 0 for j in range(A.ngens)]
                               for i in range(A.ngens)])


def hom_power(h, n):
    """n-fold composition of an endomorphism."""
    if h.source != h.target:
        raise AbgroupError("iterate needs an endomorphism")
    out = identity_hom(h.source)
    for _ in range(n):
        out = h.compose(out)
    return out


# ---------------------------------------------------------------------------
# subgroups via canonical HNF lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an AbelianGroup, stored as the HNF basis of the full-rank
    lattice L with diag(d) <= L <= Z^k.  Equality of subgroups is equality
    of the canonical basis."""

    ambient: AbelianGroup
    basis: tuple  # k x k HNF rows

    @classmethod
    def from_generators(cls, ambient, gens):
        k = ambient.ngens
        rows = [list(g) for g in gens]
        rows += [[ambient.invariant_factors[i] if j == i else 0 for j in range(k)]
                 for i in range(k)]
        return cls(ambient, tuple(hnf_rows(rows, k)))

    @classmethod
    def trivial(cls, ambient):
        return cls.from_generators(ambient, [])

    @classmethod
    def full(cls, ambient):
        k = ambient.ngens
        return cls(ambient, tuple(tuple(int(i == j) for j in range(k))
                                  for i in range(k)))

    def order(self):
        det = prod(self.basis[i][i] for i in range(len(self.basis)))
        total = self.ambient.order()
        assert total % det == 0
        return total // det

    def contains(self, vec):
        v = list(vec)
        for i, row in enumerate(self.basis):
            if v[i] % row[i]:
                return False
            q = v[i] // row[i]
            v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def contains_subgroup(self, other):
        return all(self.contains(row) for row in other.basis)

    def generators(self):
        out = []
        for row in self.basis:
            v = self.ambient.reduce(row)
            if any(v):
                out.append(v)
        return out

    def join(self, other):
        if other.ambient != self.ambient:
            raise AbgroupError("ambient mismatch")
        return Subgroup.from_generators(self.ambient,
                                        list(self.basis) + list(other.basis))

    def intersection(self, other):
        if other.ambient != self.ambient:
            raise AbgroupError("ambient mismatch")
        k = self.ambient.ngens
        if k == 0:
            return self
        stacked = [list(r) for r in self.basis] + \
                  [[-x for x in r] for r in other.basis]
        # left kernel of `stacked`: rows (y, z) with y*B1 = z*B2
        D, U, V = smith_normal_form(transpose(stacked))
        nrows = len(stacked)
        gens = []
        for j in range(nrows):
            d = D[j][j] if j < min(k, nrows) else 0
            if d == 0:
                y = [V[i][j] for i in range(nrows)][:len(self.basis)]
                vec = [sum(y[i] * self.basis[i][c] for i in range(len(self.basis)))
                       for c in range(k)]
                gens.append(vec)
        return Subgroup.from_generators(self.ambient, gens)

    def _relation_rows(self):
        """Rows of diag(d) expressed in the basis of the lattice."""
        k = self.ambient.ngens
        rows = []
        for i in range(k):
            target = [self.ambient.invariant_factors[i] if j == i else 0
                      for j in range(k)]
            y = solve_integer(transpose([list(r) for r in self.basis]), target)
            assert y is not None
            rows.append(y)
        return rows

    def structure(self):
        """Invariant factors of the subgroup itself."""
        k = self.ambient.ngens
        if k == 0 or self.order() == 1:
            return AbelianGroup(())
        invariants, _, _ = quotient_coords(self._relation_rows(), k)
        return AbelianGroup(invariants)

    def structure_with_coords(self):
        """(structure, to_coords, generators): coordinates of subgroup elements
        with respect to an invariant-factor decomposition of the subgroup."""
        k = self.ambient.ngens
        if k == 0 or self.order() == 1:
            return AbelianGroup(()), (lambda vec: ()), []
        invariants, coord_fn, genvecs = quotient_coords(self._relation_rows(), k)
        B = [list(r) for r in self.basis]
        Bt = transpose(B)

        def to_coords(vec):
            y = solve_integer(Bt, list(vec))
            if y is None:
                raise AbgroupError("element not in subgroup")
            return coord_fn(y)

        gens = [self.ambient.reduce([sum(g[i] * B[i][c] for i in range(k))
                                     for c in range(k)])
                for g in genvecs]
        return AbelianGroup(invariants), to_coords, gens

    def elements(self):
        S, _, gens = self.structure_with_coords()
        seen = set()
        for coeffs in S.elements():
            v = self.ambient.zero()
            for c, g in zip(coeffs, gens):
                v = self.ambient.add(v, self.ambient.scale(c, g))
            seen.add(v)
        if len(seen) != self.order():
            raise AbgroupError("inconsistent subgroup enumeration")
        return sorted(seen)

    def image_under(self, hom):
        return Subgroup.from_generators(hom.target,
                                        [hom(g) for g in self.generators()])


# ---------------------------------------------------------------------------
# structure of an abstractly-presented finite abelian group
# ---------------------------------------------------------------------------

@dataclass
class StructureResult:
    group: AbelianGroup
    coords: dict          # element -> coordinate tuple
    generators: list      # one element per invariant factor


def abelian_structure(elements, op, identity):
    """Greedy generator selection with a relation lattice, invariant factors
    by Smith normal form.  `elements` must list every element exactly once
    (iteration order fixes the generator choice and hence determinism)."""
    span = {identity: ()}
    gens = []
    rels = []
    for x in elements:
        if x in span:
            continue
        # minimal e >= 1 with x^e inside the current span
        e = 1
        y = x
        while y not in span:
            y = op(y, x)
            e += 1
        v = span[y]
        rels.append(tuple(-c for c in v) + (e,))
        new_span = {}
        for elem, c in span.items():
            z = elem
            for j in range(e):
                new_span[z] = c + (j,)
                if j + 1 < e:
                    z = op(z, x)
        span = new_span
        gens.append(x)
    if len(span) != len(elements):
        raise AbgroupError("span does not exhaust the element list")
    T = len(gens)
    padded = [list(r) + [0] * (T - len(r)) for r in rels]
    invariants, coord_fn, genvecs = quotient_coords(padded, T)
    group = AbelianGroup(invariants)
    coords = {elem: coord_fn(c) for elem, c in span.items()}
    if group.order() != len(elements):
        raise AbgroupError("structure order mismatch")

    def pow_op(g, n):
        if n == 0:
            return identity
        o = 1
        y = g
        while y != identity:
            y = op(y, g)
            o += 1
        n %= o
        y = identity
        for _ in range(n):
            y = op(y, g)
        return y

    gen_elements = []
    for gv in genvecs:
        elem = identity
        for g, c in zip(gens, gv):
            elem = op(elem, pow_op(g, c))
        gen_elements.append(elem)
    return StructureResult(group, coords, gen_elements)

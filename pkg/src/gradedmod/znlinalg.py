"""Exact linear algebra over Z/nZ.

Matrices are tuples of row tuples with entries in [0, n).  The central
canonical form is the Howell normal form: unlike plain row echelon form it
is unique for a given row span even in the presence of zero divisors, which
makes structural equality of module presentations coincide with mathematical
equality.  On top of it we build finitely presented Z/nZ-modules together
with kernels, images, cokernels, hom modules and tensor products.

All arithmetic uses exact Python integers; moduli above 2**31 are rejected
at construction.
"""

from __future__ import annotations

import itertools
from math import gcd

MAX_MODULUS = 2**31


class LinAlgError(Exception):
    """Raised for malformed matrices, moduli or presentations."""


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise LinAlgError(f"modulus must be an integer >= 2, got {n!r}")
    if n > MAX_MODULUS:
        raise LinAlgError(f"modulus {n} exceeds the supported bound 2**31")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def _unit_scale(x: int, n: int) -> int:
    """A unit u mod n with u*x == gcd(x, n) (mod n), for x in [0, n)."""
    if x == 0:
        return 1
    d = gcd(x, n)
    c = x // d
    # c is invertible mod n/d; shift by multiples of n/d until it is a unit mod n
    while gcd(c, n) != 1:
        c += n // d
    return pow(c, -1, n)


def _pivot_col(row: tuple[int, ...]) -> int:
    for j, v in enumerate(row):
        if v:
            return j
    return -1


def howell(rows, ncols: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Howell normal form of the span of `rows` inside (Z/n)^ncols.

    The result is in echelon form, every pivot divides n, entries above a
    pivot are reduced modulo that pivot, and the row set is span-closed:
    any span element with leading zeros lies in the span of the later rows.
    The form is unique for a given row span.
    """
    pool = []
    for r in rows:
        rr = tuple(v % n for v in r)
        if len(rr) != ncols:
            raise LinAlgError("row length mismatch")
        if any(rr):
            pool.append(list(rr))
    result: list[list[int]] = []
    for j in range(ncols):
        pivot = None
        rest = []
        for r in pool:
            if r[j] == 0:
                if any(r):
                    rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            a, b = pivot[j], r[j]
            g, s, t = _xgcd(a, b)
            new = [(s * x + t * y) % n for x, y in zip(pivot, r)]
            red_p = [(x - (a // g) * z) % n for x, z in zip(pivot, new)]
            red_r = [(y - (b // g) * z) % n for y, z in zip(r, new)]
            if any(red_p):
                rest.append(red_p)
            if any(red_r):
                rest.append(red_r)
            pivot = new
        if pivot is not None:
            u = _unit_scale(pivot[j], n)
            pivot = [(u * x) % n for x in pivot]
            d = pivot[j]
            ann = [((n // d) * x) % n for x in pivot]
            if any(ann):
                rest.append(ann)
            result.append(pivot)
        pool = rest
    # reduce entries above each pivot, left to right: later pivot rows are
    # zero in earlier pivot columns, so these reductions never undo each other
    for idx in range(len(result)):
        row = result[idx]
        j = _pivot_col(tuple(row))
        d = row[j]
        for k in range(idx):
            q = result[k][j] // d
            if q:
                result[k] = [(x - q * y) % n for x, y in zip(result[k], row)]
    return tuple(tuple(r) for r in result)


def reduce_mod_span(vec, hrows, n: int) -> tuple[int, ...]:
    """Canonical representative of `vec` modulo the span of Howell rows."""
    v = [x % n for x in vec]
    for row in hrows:
        j = _pivot_col(row)
        d = row[j]
        q = v[j] // d
        if q:
            v = [(x - q * y) % n for x, y in zip(v, row)]
    return tuple(v)


def span_contains(vec, hrows, n: int) -> bool:
    return not any(reduce_mod_span(vec, hrows, n))


def row_kernel(rows, ncols: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Generators of {v in (Z/n)^k : v*A == 0} for A with k rows."""
    k = len(rows)
    aug = [tuple(rows[i]) + tuple(1 if j == i else 0 for j in range(k))
           for i in range(k)]
    h = howell(aug, ncols + k, n)
    gens = [row[ncols:] for row in h if not any(row[:ncols])]
    return howell(gens, k, n)


def preimage_gens(rows, rel_rows, ncols: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Generators of {x : x*A lies in span(rel_rows)} for A with k rows."""
    k = len(rows)
    stacked = list(rows) + list(rel_rows)
    ker = row_kernel(stacked, ncols, n)
    gens = [row[:k] for row in ker]
    return howell(gens, k, n)


def solve_row(rows, b, ncols: int, n: int):
    """Some x with x*A == b (mod n), canonical within its solution coset.

    Returns None when no solution exists.  The representative is obtained by
    reducing a particular solution modulo the Howell form of the row kernel,
    which makes the choice deterministic.
    """
    k = len(rows)
    aug = [tuple(rows[i]) + tuple(1 if j == i else 0 for j in range(k))
           for i in range(k)]
    h = howell(aug, ncols + k, n)
    r = [x % n for x in b]
    coeffs = [0] * k
    for row in h:
        j = _pivot_col(row)
        if j >= ncols:
            break
        d = row[j]
        q = r[j] // d
        if q:
            r = [(x - q * y) % n for x, y in zip(r, row[:ncols])]
            for i in range(k):
                coeffs[i] = (coeffs[i] + q * row[ncols + i]) % n
    if any(r):
        return None
    ker = row_kernel(rows, ncols, n)
    return reduce_mod_span(coeffs, ker, n)


def solve(matrix, b, n: int):
    """Some x with A@x == b (mod n) in the column convention, or None."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else len(b) and 0
    if rows and any(len(r) != cols for r in matrix):
        raise LinAlgError("ragged matrix")
    transposed = [tuple(matrix[i][j] for i in range(rows)) for j in range(cols)]
    return solve_row(transposed, b, rows, n)


def mat_mul(a, b, n: int) -> tuple[tuple[int, ...], ...]:
    """Product of matrices given as tuples of rows, reduced mod n."""
    if not a:
        return ()
    inner = len(a[0])
    if inner and len(b) != inner:
        raise LinAlgError("matrix dimension mismatch")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    acc[j] += x * y
        out.append(tuple(v % n for v in acc))
    return tuple(out)


def vec_mat(vec, matrix, n: int) -> tuple[int, ...]:
    (res,) = mat_mul((tuple(vec),), matrix, n) if matrix or vec else ((),)
    return res


def identity_matrix(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def zero_matrix(rows: int, cols: int) -> tuple[tuple[int, ...], ...]:
    return tuple((0,) * cols for _ in range(rows))


class FpZnModule:
    """Finitely presented Z/nZ-module in Howell canonical form.

    The module is (Z/n)^ngens modulo the row span of `rels`.  Presentations
    are recanonicalized eagerly, so structural equality of two instances is
    equality of the presented modules.
    """

    __slots__ = ("n", "ngens", "rels")

    def __init__(self, n: int, ngens: int, rels=()):
        _check_modulus(n)
        if ngens < 0:
            raise LinAlgError("negative generator count")
        self.n = n
        self.ngens = ngens
        self.rels = howell(rels, ngens, n)

    def __eq__(self, other):
        return (isinstance(other, FpZnModule) and self.n == other.n
                and self.ngens == other.ngens and self.rels == other.rels)

    def __hash__(self):
        return hash((self.n, self.ngens, self.rels))

    def __repr__(self):
        return f"FpZnModule(n={self.n}, ngens={self.ngens}, rels={self.rels})"

    def reduce(self, vec) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise LinAlgError("vector length mismatch")
        return reduce_mod_span(vec, self.rels, self.n)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def scale(self, c: int, a) -> tuple[int, ...]:
        return self.reduce([c * x for x in a])

    def contains_zero(self, vec) -> bool:
        return not any(self.reduce(vec))

    def cardinality(self) -> int:
        pivots = {_pivot_col(r): r[_pivot_col(r)] for r in self.rels}
        card = 1
        for j in range(self.ngens):
            card *= pivots.get(j, self.n)
        return card

    @property
    def is_zero(self) -> bool:
        return self.cardinality() == 1

    def elements(self):
        """Iterate over all canonical representatives (finite)."""
        pivots = {_pivot_col(r): r[_pivot_col(r)] for r in self.rels}
        ranges = [range(pivots.get(j, self.n)) for j in range(self.ngens)]
        return (tuple(t) for t in itertools.product(*ranges))


class ZnModuleMap:
    """Z/n-linear map between finitely presented modules, as a generator matrix.

    Row i of `matrix` is the image of generator i of the source.  The map is
    checked to send source relations to zero in the target.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FpZnModule, target: FpZnModule, matrix):
        if source.n != target.n:
            raise LinAlgError("modulus mismatch")
        matrix = tuple(target.reduce(row) for row in matrix)
        if len(matrix) != source.ngens:
            raise LinAlgError("matrix row count does not match source generators")
        for r in source.rels:
            if any(target.reduce(vec_mat(r, matrix, source.n) if matrix
                                 else target.zero())):
                raise LinAlgError("map is not well defined on relations")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __eq__(self, other):
        return (isinstance(other, ZnModuleMap) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"ZnModuleMap({self.matrix})"

    def apply(self, vec) -> tuple[int, ...]:
        if self.source.ngens == 0:
            return self.target.zero()
        return self.target.reduce(vec_mat(vec, self.matrix, self.source.n))

    def compose(self, first: "ZnModuleMap") -> "ZnModuleMap":
        """self after first."""
        if first.target != self.source:
            raise LinAlgError("composition mismatch")
        return ZnModuleMap(first.source, self.target,
                           mat_mul(first.matrix, self.matrix, self.source.n))

    @staticmethod
    def identity(module: FpZnModule) -> "ZnModuleMap":
        return ZnModuleMap(module, module, identity_matrix(module.ngens))

    @staticmethod
    def zero_map(source: FpZnModule, target: FpZnModule) -> "ZnModuleMap":
        return ZnModuleMap(source, target, zero_matrix(source.ngens, target.ngens))


def submodule(ambient: FpZnModule, gens) -> tuple[FpZnModule, ZnModuleMap]:
    """The submodule of `ambient` generated by `gens`, with its inclusion.

    The submodule is presented on the Howell basis of span(gens) + relations;
    generators lying in the relation span are dropped.
    """
    n = ambient.n
    basis = [row for row in howell(list(gens) + list(ambient.rels), ambient.ngens, n)
             if not span_contains(row, ambient.rels, n)]
    rels = preimage_gens(basis, ambient.rels, ambient.ngens, n)
    sub = FpZnModule(n, len(basis), rels)
    incl = ZnModuleMap(sub, ambient, tuple(basis))
    return sub, incl


def quotient(ambient: FpZnModule, gens) -> tuple[FpZnModule, ZnModuleMap]:
    """The quotient of `ambient` by the span of `gens`, with its projection."""
    quot = FpZnModule(ambient.n, ambient.ngens, list(ambient.rels) + list(gens))
    proj = ZnModuleMap(ambient, quot, identity_matrix(ambient.ngens))
    return quot, proj


def kernel(u: ZnModuleMap) -> tuple[FpZnModule, ZnModuleMap]:
    """Kernel of u with its inclusion into the source."""
    n = u.source.n
    pre = preimage_gens(u.matrix, u.target.rels, u.target.ngens, n)
    return submodule(u.source, pre)


def image(u: ZnModuleMap) -> tuple[FpZnModule, ZnModuleMap]:
    """Image of u with its inclusion into the target."""
    return submodule(u.target, u.matrix)


def cokernel(u: ZnModuleMap) -> tuple[FpZnModule, ZnModuleMap]:
    """Cokernel of u with the projection from the target."""
    return quotient(u.target, u.matrix)


class Subquotient:
    """Presentation of (span(wgens) + span(dgens)) / span(dgens) in (Z/n)^dim.

    Used wherever a module arises as "solutions modulo trivial solutions",
    e.g. hom modules.  Exposes lifts of the presentation generators into the
    ambient space and a coordinate solver for arbitrary ambient vectors.
    """

    __slots__ = ("n", "dim", "gens", "dgens", "module")

    def __init__(self, n: int, dim: int, wgens, dgens):
        self.n = n
        self.dim = dim
        self.dgens = howell(dgens, dim, n)
        basis = [row for row in howell(list(wgens) + list(self.dgens), dim, n)
                 if not span_contains(row, self.dgens, n)]
        self.gens = tuple(basis)
        rels = preimage_gens(self.gens, self.dgens, dim, n)
        self.module = FpZnModule(n, len(self.gens), rels)

    def lift(self, coords) -> tuple[int, ...]:
        """An ambient representative of the element with the given coordinates."""
        if not self.gens:
            return (0,) * self.dim
        return vec_mat(coords, self.gens, self.n)

    def coords(self, ambient_vec):
        """Coordinates of an ambient vector, or None if it is not represented."""
        stacked = list(self.gens) + list(self.dgens)
        sol = solve_row(stacked, ambient_vec, self.dim, self.n)
        if sol is None:
            return None
        return self.module.reduce(sol[:len(self.gens)])


def hom_module(m: FpZnModule, nn: FpZnModule):
    """The module of Z/n-linear maps m -> nn, with evaluation both ways.

    Returns (module, to_map, to_coords): `to_map(coords)` rebuilds a
    ZnModuleMap from an element, `to_coords(map)` locates a map.
    """
    if m.n != nn.n:
        raise LinAlgError("modulus mismatch")
    n = m.n
    gm, gn = m.ngens, nn.ngens
    dim = gm * gn
    # well-definedness: for each relation r of m, r @ X must lie in rels(nn)
    nrel = len(m.rels)
    eq_cols = nrel * gn
    rows = []
    for i in range(gm):
        for j in range(gn):
            row = [0] * eq_cols
            for ri, r in enumerate(m.rels):
                row[ri * gn + j] = r[i]
            rows.append(tuple(row))
    relblock = []
    for ri in range(nrel):
        for s in nn.rels:
            row = [0] * eq_cols
            row[ri * gn:(ri + 1) * gn] = list(s)
            relblock.append(tuple(row))
    wgens = preimage_gens(rows, relblock, eq_cols, n)
    dgens = []
    for i in range(gm):
        for s in nn.rels:
            vec = [0] * dim
            vec[i * gn:(i + 1) * gn] = list(s)
            dgens.append(tuple(vec))
    sq = Subquotient(n, dim, wgens, dgens)

    def to_map(coords) -> ZnModuleMap:
        flat = sq.lift(coords)
        matrix = tuple(tuple(flat[i * gn:(i + 1) * gn]) for i in range(gm))
        return ZnModuleMap(m, nn, matrix)

    def to_coords(u: ZnModuleMap):
        flat = tuple(v for row in u.matrix for v in row)
        return sq.coords(flat)

    return sq.module, to_map, to_coords


def tensor_zn(m: FpZnModule, nn: FpZnModule):
    """The tensor product m (x) nn over Z/n, with the pure-tensor locator.

    Presented on generator pairs (i, j) with relations induced from both
    factors.  Returns (module, pure) where pure(x, y) locates x (x) y.
    """
    if m.n != nn.n:
        raise LinAlgError("modulus mismatch")
    n = m.n
    gm, gn = m.ngens, nn.ngens
    dim = gm * gn
    rels = []
    for r in m.rels:
        for j in range(gn):
            vec = [0] * dim
            for i in range(gm):
                vec[i * gn + j] = r[i]
            rels.append(tuple(vec))
    for i in range(gm):
        for s in nn.rels:
            vec = [0] * dim
            vec[i * gn:(i + 1) * gn] = list(s)
            rels.append(tuple(vec))
    product = FpZnModule(n, dim, rels)

    def pure(x, y) -> tuple[int, ...]:
        vec = [0] * dim
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    vec[i * gn + j] = xi * yj
        return product.reduce(vec)

    return product, pure


def direct_sum_modules(mods) -> tuple[FpZnModule, list[ZnModuleMap], list[ZnModuleMap]]:
    """Direct sum with injections and projections."""
    mods = list(mods)
    if not mods:
        raise LinAlgError("empty direct sum needs an explicit modulus")
    n = mods[0].n
    if any(m.n != n for m in mods):
        raise LinAlgError("modulus mismatch")
    total = sum(m.ngens for m in mods)
    rels = []
    offset = 0
    offsets = []
    for m in mods:
        offsets.append(offset)
        for r in m.rels:
            vec = [0] * total
            vec[offset:offset + m.ngens] = list(r)
            rels.append(tuple(vec))
        offset += m.ngens
    total_mod = FpZnModule(n, total, rels)
    injections = []
    projections = []
    for m, off in zip(mods, offsets):
        inj = tuple(tuple(1 if j == off + i else 0 for j in range(total))
                    for i in range(m.ngens))
        proj = tuple(tuple(1 if off <= i < off + m.ngens and j == i - off else 0
                           for j in range(m.ngens)) for i in range(total))
        injections.append(ZnModuleMap(m, total_mod, inj))
        projections.append(ZnModuleMap(total_mod, m, proj))
    return total_mod, injections, projections

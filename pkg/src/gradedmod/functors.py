"""Change-of-ring functors on graded modules.

Given a graded ring morphism h: R -> S this module provides scalar
restriction (an S-module seen over R through h), scalar extension
S (x)_R - , scalar coextension Hom_R(S, -), graded tensor products and
graded Hom modules (plain and mixed variants), and the composite functors
built from them.  Tensor and Hom results are returned as witness objects
that keep enough bookkeeping to locate pure tensors and to convert between
Hom elements and the matrix families they encode; every element-level
canonical map downstream is built on these witnesses.
"""

from __future__ import annotations

from .graded import (GradedModule, GradedMorphism, GradedRing, GradedRingHom,
                     GradedError, RingMismatch, apply_tensor, ring_as_module,
                     zero_component)
from .znlinalg import (FpZnModule, Subquotient, howell, mat_mul, row_kernel,
                       vec_mat)


class FunctorError(GradedError):
    """Raised when a functor construction hits an internal inconsistency."""


def _unit_vec(k: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


# ---------------------------------------------------------------------------
# scalar restriction


def restrict(h: GradedRingHom, module: GradedModule) -> GradedModule:
    """View an S-module as an R-module through h (scalar restriction)."""
    if module.ring != h.target:
        raise RingMismatch("restriction expects a module over the target ring")
    ring = h.source
    grp = ring.group
    action = {}
    for c in sorted(ring.components):
        rc = ring.components[c]
        for a in sorted(module.components):
            ma = module.components[a]
            out = module.component(grp.add(c, a))
            if not out.ngens:
                continue
            t = module.action.get((c, a))
            tensor = []
            nonzero = False
            for p in range(rc.ngens):
                _, hr = h.apply((c, _unit_vec(rc.ngens, p)))
                block = []
                for j in range(ma.ngens):
                    coords = apply_tensor(t, hr, _unit_vec(ma.ngens, j), out) \
                        if t is not None else out.zero()
                    if any(coords):
                        nonzero = True
                    block.append(coords)
                tensor.append(block)
            if nonzero:
                action[(c, a)] = tensor
    return GradedModule(ring, dict(module.components), action)


def restrict_morphism(h: GradedRingHom, u: GradedMorphism) -> GradedMorphism:
    """Scalar restriction on morphisms: same underlying maps."""
    return GradedMorphism(restrict(h, u.source), restrict(h, u.target),
                          dict(u.maps))


# ---------------------------------------------------------------------------
# tensor products


class TensorWitness:
    """A graded tensor product together with its pure-tensor locator.

    For a ring morphism h: R -> S, `module` is left (x)_R right where `left`
    is an S-module and `right` an R-module; the result carries the S-action
    on the left factor.  The component at degree d is presented on the pairs
    (a, i, b, j) listed in `index[d]` (generator i of left_a tensor generator
    j of right_b with a + b = d).
    """

    __slots__ = ("h", "left", "right", "module", "index", "pos")

    def __init__(self, h, left, right, module, index, pos):
        self.h = h
        self.left = left
        self.right = right
        self.module = module
        self.index = index
        self.pos = pos

    def pure(self, x, y):
        """Locate the pure tensor of homogeneous elements x and y."""
        (a, xv), (b, yv) = x, y
        grp = self.module.ring.group
        a, b = grp.canon(a), grp.canon(b)
        d = grp.add(a, b)
        comp = self.module.component(d)
        vec = [0] * comp.ngens
        posd = self.pos.get(d, {})
        for i, xi in enumerate(xv):
            if xi:
                for j, yj in enumerate(yv):
                    if yj:
                        k = posd.get((a, i, b, j))
                        if k is not None:
                            vec[k] += xi * yj
        return d, comp.reduce(vec)


def mixed_tensor(h: GradedRingHom, left: GradedModule,
                 right: GradedModule) -> TensorWitness:
    """left (x)_R right for left over S and right over R, as an S-module."""
    ring_s, ring_r = h.target, h.source
    if left.ring != ring_s:
        raise RingMismatch("left tensor factor must live over the target ring")
    if right.ring != ring_r:
        raise RingMismatch("right tensor factor must live over the source ring")
    grp = ring_s.group
    n = ring_s.n
    index = {}
    pos = {}
    for a in sorted(left.components):
        ca = left.components[a]
        for b in sorted(right.components):
            cb = right.components[b]
            d = grp.add(a, b)
            lst = index.setdefault(d, [])
            posd = pos.setdefault(d, {})
            for i in range(ca.ngens):
                for j in range(cb.ngens):
                    posd[(a, i, b, j)] = len(lst)
                    lst.append((a, i, b, j))
    rels = {d: [] for d in index}
    for a in sorted(left.components):
        ca = left.components[a]
        for b in sorted(right.components):
            cb = right.components[b]
            d = grp.add(a, b)
            posd = pos[d]
            dim = len(index[d])
            for r in ca.rels:
                for j in range(cb.ngens):
                    vec = [0] * dim
                    for i in range(ca.ngens):
                        vec[posd[(a, i, b, j)]] = r[i]
                    rels[d].append(vec)
            for s in cb.rels:
                for i in range(ca.ngens):
                    vec = [0] * dim
                    for j in range(cb.ngens):
                        vec[posd[(a, i, b, j)]] = s[j]
                    rels[d].append(vec)
    # balance relations (x . h(r)) (x) y = x (x) (r . y) on generators
    for c in sorted(ring_r.components):
        rc = ring_r.components[c]
        hr_rows = [h.apply((c, _unit_vec(rc.ngens, p)))[1] for p in range(rc.ngens)]
        for a in sorted(left.components):
            ca = left.components[a]
            ta = left.action.get((c, a))
            a2 = grp.add(c, a)
            ca2 = left.component(a2)
            for b in sorted(right.components):
                cb = right.components[b]
                tb = right.action.get((c, b))
                b2 = grp.add(c, b)
                cb2 = right.component(b2)
                d = grp.add(grp.add(a, b), c)
                posd = pos.get(d)
                if posd is None:
                    continue
                dim = len(index[d])
                for p in range(rc.ngens):
                    lx = [apply_tensor(ta, hr_rows[p], _unit_vec(ca.ngens, i),
                                       ca2) if ta is not None else ca2.zero()
                          for i in range(ca.ngens)]
                    for i in range(ca.ngens):
                        for j in range(cb.ngens):
                            vec = [0] * dim
                            any_entry = False
                            for k, v in enumerate(lx[i]):
                                if v:
                                    vec[posd[(a2, k, b, j)]] += v
                                    any_entry = True
                            ry = apply_tensor(tb, _unit_vec(rc.ngens, p),
                                              _unit_vec(cb.ngens, j), cb2) \
                                if tb is not None else cb2.zero()
                            for l, v in enumerate(ry):
                                if v:
                                    vec[posd[(a, i, b2, l)]] -= v
                                    any_entry = True
                            if any_entry:
                                rels[d].append(vec)
    comps = {d: FpZnModule(n, len(index[d]), rels[d]) for d in index if index[d]}
    # S-action on the left factor
    action = {}
    for c in sorted(ring_s.components):
        sc = ring_s.components[c]
        for d in sorted(index):
            if d not in comps or not comps[d].ngens:
                continue
            out_deg = grp.add(c, d)
            out = comps.get(out_deg)
            if out is None:
                continue
            posd = pos[out_deg]
            tensor = []
            nonzero = False
            for p in range(sc.ngens):
                block = []
                for (a, i, b, j) in index[d]:
                    ta = left.action.get((c, a))
                    ca2 = left.component(grp.add(c, a))
                    vec = [0] * out.ngens
                    if ta is not None:
                        sx = apply_tensor(ta, _unit_vec(sc.ngens, p),
                                          _unit_vec(left.components[a].ngens, i),
                                          ca2)
                        a2 = grp.add(c, a)
                        for k, v in enumerate(sx):
                            if v:
                                vec[posd[(a2, k, b, j)]] += v
                    coords = out.reduce(vec)
                    if any(coords):
                        nonzero = True
                    block.append(coords)
                tensor.append(block)
            if nonzero:
                action[(c, d)] = tensor
    module = GradedModule(ring_s, comps, action)
    return TensorWitness(h, left, right, module, index, pos)


def tensor(left: GradedModule, right: GradedModule) -> TensorWitness:
    """Plain graded tensor product over the common ring."""
    if left.ring != right.ring:
        raise RingMismatch("tensor factors live over different rings")
    return mixed_tensor(GradedRingHom.identity(left.ring), left, right)


def tensor_map(h: GradedRingHom, u: GradedMorphism, v: GradedMorphism,
               source: TensorWitness | None = None,
               target: TensorWitness | None = None) -> GradedMorphism:
    """The morphism u (x) v between (mixed) tensor products."""
    if source is None:
        source = mixed_tensor(h, u.source, v.source)
    if target is None:
        target = mixed_tensor(h, u.target, v.target)
    maps = {}
    for d, pairs in source.index.items():
        comp = source.module.component(d)
        tc = target.module.component(d)
        if not comp.ngens or not tc.ngens:
            continue
        rows = []
        for (a, i, b, j) in pairs:
            urow = u.matrix(a)[i] if u.matrix(a) else ()
            vrow = v.matrix(b)[j] if v.matrix(b) else ()
            _, img = target.pure((a, urow), (b, vrow))
            rows.append(img)
        maps[d] = rows
    return GradedMorphism(source.module, target.module, maps)


# ---------------------------------------------------------------------------
# Hom modules


class HomWitness:
    """A graded Hom module with conversions between elements and matrices.

    For h: R -> S, `module` is Hom^G_R(h_*(source), target) with source an
    S-module, target an R-module, and the S-action (su)(x) = u(sx).  An
    element of degree g encodes a family of matrices U_a: source_a ->
    target_{g+a}; `layout[g]` lists the blocks (a, rows, cols, offset) of
    the flattened presentation.
    """

    __slots__ = ("h", "source", "target", "module", "layout", "sq", "dim")

    def __init__(self, h, source, target, module, layout, sq, dim):
        self.h = h
        self.source = source
        self.target = target
        self.module = module
        self.layout = layout
        self.sq = sq
        self.dim = dim

    def matrices(self, g, coords):
        """The matrix family {a: U_a} encoded by an element of degree g."""
        grp = self.source.ring.group
        g = grp.canon(g)
        if g not in self.sq:
            return {}
        flat = self.sq[g].lift(coords)
        mats = {}
        for (a, rows, cols, off) in self.layout[g]:
            mats[a] = tuple(tuple(flat[off + i * cols:off + (i + 1) * cols])
                            for i in range(rows))
        return mats

    def coords_of(self, g, mats):
        """Coordinates of the Hom element given by a matrix family, or None."""
        grp = self.source.ring.group
        g = grp.canon(g)
        if g not in self.sq:
            # only representable element is zero
            for a, mat in mats.items():
                tc = self.target.component(grp.add(g, a))
                for row in mat:
                    if any(tc.reduce(row)):
                        return None
            return ()
        flat = [0] * self.dim[g]
        for (a, rows, cols, off) in self.layout[g]:
            mat = mats.get(a)
            if mat is None:
                continue
            for i in range(rows):
                for j in range(cols):
                    flat[off + i * cols + j] = mat[i][j]
        return self.sq[g].coords(flat)

    def evaluate(self, u, x):
        """Apply the Hom element u = (g, coords) to x = (a, xv)."""
        (g, coords), (a, xv) = u, x
        grp = self.source.ring.group
        out_deg = grp.add(g, a)
        out = self.target.component(out_deg)
        mats = self.matrices(g, coords)
        mat = mats.get(grp.canon(a))
        if mat is None or not mat:
            return out_deg, out.zero()
        return out_deg, out.reduce(vec_mat(xv, mat, out.n))


def mixed_hom(h: GradedRingHom, source: GradedModule,
              target: GradedModule) -> HomWitness:
    """Hom^G_R(h_*(source), target) as an S-module, for h: R -> S."""
    ring_s, ring_r = h.target, h.source
    if source.ring != ring_s:
        raise RingMismatch("Hom source must live over the target ring")
    if target.ring != ring_r:
        raise RingMismatch("Hom target must live over the source ring")
    grp = ring_s.group
    n = ring_s.n
    degs = sorted({grp.sub(b, a) for a in source.components
                   for b in target.components})
    layout, sqs, dims, comps = {}, {}, {}, {}
    for g in degs:
        blocks = []
        off = 0
        for a in sorted(source.components):
            rows = source.components[a].ngens
            cols = target.component(grp.add(g, a)).ngens
            if rows and cols:
                blocks.append((a, rows, cols, off))
                off += rows * cols
        if not off:
            continue
        layout[g] = blocks
        dims[g] = off
        block_at = {a: (rows, cols, o) for (a, rows, cols, o) in blocks}

        equations = []  # list of ({unknown: coeff}, out_module) per scalar eq
        nslack = [0]

        def add_constraint(terms_list, out_mod):
            """terms_list[m] is a dict unknown->coeff; adds slack for rels."""
            base = dims[g] + nslack[0]
            nslack[0] += len(out_mod.rels)
            for m, terms in enumerate(terms_list):
                for t, rel in enumerate(out_mod.rels):
                    if rel[m]:
                        terms[base + t] = terms.get(base + t, 0) + rel[m]
                if terms:
                    equations.append(terms)

        # well-definedness on source relations
        for a in sorted(source.components):
            if a not in block_at:
                continue
            rows, cols, o = block_at[a]
            out_mod = target.component(grp.add(g, a))
            for r in source.components[a].rels:
                terms_list = []
                for m in range(cols):
                    terms = {}
                    for i in range(rows):
                        if r[i]:
                            idx = o + i * cols + m
                            terms[idx] = terms.get(idx, 0) + r[i]
                    terms_list.append(terms)
                add_constraint(terms_list, out_mod)
        # R-linearity: U(h(r) . x) = r . U(x)
        for c in sorted(ring_r.components):
            rc = ring_r.components[c]
            for a in sorted(source.components):
                ca = source.components[a]
                a2 = grp.add(c, a)
                e = grp.add(g, a2)
                out_mod = target.component(e)
                if not out_mod.ngens:
                    continue
                ta = source.action.get((c, a))
                ca2 = source.component(a2)
                tn = target.action.get((c, grp.add(g, a)))
                b_at = block_at.get(a)
                b2_at = block_at.get(a2)
                for p in range(rc.ngens):
                    _, hr = h.apply((c, _unit_vec(rc.ngens, p)))
                    for i in range(ca.ngens):
                        w = apply_tensor(ta, hr, _unit_vec(ca.ngens, i), ca2) \
                            if ta is not None else ca2.zero()
                        terms_list = [dict() for _ in range(out_mod.ngens)]
                        if b2_at is not None:
                            rows2, cols2, o2 = b2_at
                            for k, wk in enumerate(w):
                                if wk:
                                    for m in range(cols2):
                                        idx = o2 + k * cols2 + m
                                        terms_list[m][idx] = \
                                            (terms_list[m].get(idx, 0) + wk) % n
                        if b_at is not None and tn is not None:
                            rows1, cols1, o1 = b_at
                            for j in range(cols1):
                                coeffs = tn[p][j]
                                for m, v in enumerate(coeffs):
                                    if v:
                                        idx = o1 + i * cols1 + j
                                        terms_list[m][idx] = \
                                            (terms_list[m].get(idx, 0) - v) % n
                        if any(terms_list):
                            add_constraint(terms_list, out_mod)

        total = dims[g] + nslack[0]
        amat = [[0] * len(equations) for _ in range(total)]
        for col, terms in enumerate(equations):
            for idx, coeff in terms.items():
                amat[idx][col] = coeff % n
        ker = row_kernel(amat, len(equations), n)
        wgens = howell([row[:dims[g]] for row in ker], dims[g], n)
        dgens = []
        for (a, rows, cols, o) in blocks:
            out_mod = target.component(grp.add(g, a))
            for i in range(rows):
                for s in out_mod.rels:
                    vec = [0] * dims[g]
                    vec[o + i * cols:o + (i + 1) * cols] = list(s)
                    dgens.append(vec)
        sq = Subquotient(n, dims[g], wgens, dgens)
        sqs[g] = sq
        if sq.module.ngens:
            comps[g] = sq.module

    witness = HomWitness(h, source, target, None, layout, sqs, dims)
    # S-action: (su)(x) = u(sx)
    action = {}
    for c in sorted(ring_s.components):
        sc = ring_s.components[c]
        for g in sorted(comps):
            g2 = grp.add(c, g)
            hom_g = comps[g]
            out = comps.get(g2)
            tensor_rows = []
            nonzero = False
            for p in range(sc.ngens):
                block = []
                for k in range(hom_g.ngens):
                    mats = witness.matrices(g, _unit_vec(hom_g.ngens, k))
                    new = {}
                    for a in sorted(source.components):
                        ca = source.components[a]
                        a2 = grp.add(c, a)
                        tm = source.action.get((c, a))
                        cols = target.component(grp.add(g2, a)).ngens
                        if not cols or not ca.ngens:
                            continue
                        u2 = mats.get(a2)
                        mat = []
                        for i in range(ca.ngens):
                            acc = [0] * cols
                            if tm is not None and u2 is not None:
                                sx = apply_tensor(
                                    tm, _unit_vec(sc.ngens, p),
                                    _unit_vec(ca.ngens, i),
                                    source.component(a2))
                                for kk, vv in enumerate(sx):
                                    if vv:
                                        for m in range(cols):
                                            acc[m] += vv * u2[kk][m]
                            mat.append(tuple(v % n for v in acc))
                        new[a] = tuple(mat)
                    coords = witness.coords_of(g2, new)
                    if coords is None:
                        raise FunctorError("Hom action failed to land in Hom")
                    if out is None:
                        block.append(())
                        continue
                    if any(coords):
                        nonzero = True
                    block.append(coords)
                tensor_rows.append(block)
            if nonzero and out is not None:
                action[(c, g)] = tensor_rows
    module = GradedModule(ring_s, comps, action)
    witness.module = module
    return witness


def hom_graded(source: GradedModule, target: GradedModule) -> HomWitness:
    """Plain graded Hom module over the common ring."""
    if source.ring != target.ring:
        raise RingMismatch("Hom endpoints live over different rings")
    return mixed_hom(GradedRingHom.identity(source.ring), source, target)


def hom_map(h: GradedRingHom, u: GradedMorphism, v: GradedMorphism,
            source: HomWitness | None = None,
            target: HomWitness | None = None) -> GradedMorphism:
    """Hom(u, v): Hom(M, N) -> Hom(M', N') by w -> v o w o u.

    Here u: M' -> M (contravariant slot) and v: N -> N'.
    """
    if source is None:
        source = mixed_hom(h, u.target, v.source)
    if target is None:
        target = mixed_hom(h, u.source, v.target)
    grp = source.module.ring.group
    n = source.module.ring.n
    maps = {}
    for g, comp in source.module.components.items():
        rows = []
        for k in range(comp.ngens):
            mats = source.matrices(g, _unit_vec(comp.ngens, k))
            new = {}
            for a in sorted(u.source.components):
                umat = u.matrix(a)
                wmat = mats.get(a)
                vmat = v.matrix(grp.add(g, a))
                cols = v.target.component(grp.add(g, a)).ngens
                if not umat or not cols:
                    continue
                if wmat is None:
                    continue
                new[a] = mat_mul(mat_mul(umat, wmat, n), vmat, n)
            coords = target.coords_of(g, new)
            if coords is None:
                raise FunctorError("Hom functoriality failed to land in Hom")
            rows.append(coords)
        if rows:
            maps[g] = rows
    return GradedMorphism(source.module, target.module, maps)


# ---------------------------------------------------------------------------
# scalar extension and coextension


def extend(h: GradedRingHom, module: GradedModule) -> TensorWitness:
    """Scalar extension S (x)_R M along h, with its tensor witness."""
    if module.ring != h.source:
        raise RingMismatch("extension expects a module over the source ring")
    return mixed_tensor(h, ring_as_module(h.target), module)


def extend_morphism(h: GradedRingHom, u: GradedMorphism,
                    source: TensorWitness | None = None,
                    target: TensorWitness | None = None) -> GradedMorphism:
    ids = GradedMorphism.identity(ring_as_module(h.target))
    return tensor_map(h, ids, u, source, target)


def coextend(h: GradedRingHom, module: GradedModule) -> HomWitness:
    """Scalar coextension Hom^G_R(h_*(S), M) along h, with its Hom witness."""
    if module.ring != h.source:
        raise RingMismatch("coextension expects a module over the source ring")
    return mixed_hom(h, ring_as_module(h.target), module)


def coextend_morphism(h: GradedRingHom, u: GradedMorphism,
                      source: HomWitness | None = None,
                      target: HomWitness | None = None) -> GradedMorphism:
    ids = GradedMorphism.identity(ring_as_module(h.target))
    return hom_map(h, ids, u, source, target)


def h_plus(h: GradedRingHom, module: GradedModule) -> GradedModule:
    """The functor M -> h_*(M (x)_S coextend(h, R)) on S-modules."""
    if module.ring != h.target:
        raise RingMismatch("h_plus expects a module over the target ring")
    hr = coextend(h, ring_as_module(h.source))
    return restrict(h, tensor(module, hr.module).module)


def h_sharp(h: GradedRingHom, module: GradedModule) -> GradedModule:
    """The functor M -> h_*(Hom^G_S(coextend(h, R), M)) on S-modules."""
    if module.ring != h.target:
        raise RingMismatch("h_sharp expects a module over the target ring")
    hr = coextend(h, ring_as_module(h.source))
    return restrict(h, hom_graded(hr.module, module).module)

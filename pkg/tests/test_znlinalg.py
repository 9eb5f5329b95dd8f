"""Exact linear algebra over Z/nZ: Howell forms, solving, and modules.

The exhaustive block checks, for every modulus n in {2, 3, 4, 6, 8} and
every matrix shape up to 4 x 4: Howell canonicity (span-equal matrices
get the same form), soundness and completeness of row-solving, and the
counting identity |kernel| * |image| = n^rows, all by enumerating the
full domain of the map.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedmod.znlinalg import (FpZnModule, LinAlgError, howell,
                                identity_matrix, mat_mul, reduce_mod_span,
                                row_kernel, solve_row, span_contains,
                                vec_mat)

MODULI = (2, 3, 4, 6, 8)
SHAPES = [(r, c) for r in range(1, 5) for c in range(1, 5)]


def _all_vectors(k, n):
    return itertools.product(range(n), repeat=k)


def _random_matrix(rng, r, c, n):
    return tuple(tuple(rng.randrange(n) for _ in range(c)) for _ in range(r))


def _span_equal_variant(rng, mat, n):
    """A matrix with the same row span, produced by row operations."""
    rows = [list(row) for row in mat]
    rng.shuffle(rows)
    if len(rows) >= 2:
        i, j = rng.sample(range(len(rows)), 2)
        f = rng.randrange(n)
        rows[i] = [(a + f * b) % n for a, b in zip(rows[i], rows[j])]
    units = [u for u in range(1, n) if _coprime(u, n)]
    k = rng.randrange(len(rows))
    u = rng.choice(units)
    rows[k] = [(u * a) % n for a in rows[k]]
    combo = [0] * len(rows[0])
    for row in rows:
        f = rng.randrange(n)
        combo = [(a + f * b) % n for a, b in zip(combo, row)]
    rows.append(combo)
    return tuple(tuple(row) for row in rows)


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


@pytest.mark.parametrize("n", MODULI)
def test_exhaustive_kernel_image_and_solve(n):
    rng = random.Random(1000 + n)
    for r, c in SHAPES:
        if n ** r > 1500:
            continue
        for _ in range(2):
            mat = _random_matrix(rng, r, c, n)
            images = set()
            kernel_count = 0
            for x in _all_vectors(r, n):
                b = vec_mat(x, mat, n)
                images.add(b)
                if not any(b):
                    kernel_count += 1
                # soundness and completeness on elements of the image
                v = solve_row(mat, b, c, n)
                assert v is not None
                assert vec_mat(v, mat, n) == b
            assert kernel_count * len(images) == n ** r
            # the kernel module generates exactly the kernel
            ker = row_kernel(mat, c, n)
            for x in ker:
                assert not any(vec_mat(x, mat, n))
            hker = howell(ker, r, n)
            members = sum(1 for x in _all_vectors(r, n)
                          if span_contains(x, hker, n))
            assert members == kernel_count
            # completeness: solve_row answers None exactly off the image
            for _ in range(20):
                b = tuple(rng.randrange(n) for _ in range(c))
                v = solve_row(mat, b, c, n)
                assert (v is not None) == (b in images)


@pytest.mark.parametrize("n", MODULI)
def test_howell_canonical_under_row_operations(n):
    rng = random.Random(2000 + n)
    for r, c in SHAPES:
        for _ in range(3):
            mat = _random_matrix(rng, r, c, n)
            variant = _span_equal_variant(rng, mat, n)
            assert howell(mat, c, n) == howell(variant, c, n)


@pytest.mark.parametrize("n", (2, 3))
def test_howell_canonical_exhaustive_2x2(n):
    by_span = {}
    for entries in itertools.product(range(n), repeat=4):
        mat = (entries[:2], entries[2:])
        span = frozenset(vec_mat(x, mat, n)
                         for x in itertools.product(range(n), repeat=2))
        by_span.setdefault(span, set()).add(howell(mat, 2, n))
    for span, forms in by_span.items():
        assert len(forms) == 1, f"non-canonical forms for span {span}"


@st.composite
def _matrix_and_modulus(draw):
    n = draw(st.sampled_from((2, 3, 4, 6, 8)))
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    mat = tuple(tuple(draw(st.integers(0, n - 1)) for _ in range(c))
                for _ in range(r))
    return n, mat


@settings(max_examples=60, deadline=None)
@given(_matrix_and_modulus())
def test_howell_properties(data):
    n, mat = data
    c = len(mat[0])
    h = howell(mat, c, n)
    # idempotent, span-closed on the input rows, echelon with sorted pivots
    assert howell(h, c, n) == h
    for row in mat:
        assert span_contains(row, h, n)
    pivots = [next(j for j, v in enumerate(row) if v) for row in h]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    # permuting the rows never changes the canonical form
    assert howell(tuple(reversed(mat)), c, n) == h


def test_howell_idempotent_and_membership():
    rng = random.Random(3)
    for n in MODULI:
        mat = _random_matrix(rng, 3, 3, n)
        h = howell(mat, 3, n)
        assert howell(h, 3, n) == h
        for row in mat:
            assert span_contains(row, h, n)
            assert not any(reduce_mod_span(row, h, n))


def test_solve_row_canonical_representative():
    # over Z/4 the equation x * (2) = (2) has solutions 1 and 3; the
    # returned representative is deterministic
    first = solve_row(((2,),), (2,), 1, 4)
    for _ in range(5):
        assert solve_row(((2,),), (2,), 1, 4) == first


def test_module_reduce_and_cardinality():
    m = FpZnModule(4, 2, [(2, 0)])
    assert m.cardinality() == 8
    elems = set(m.elements())
    assert len(elems) == 8
    for v in elems:
        assert m.reduce(v) == v
    assert m.reduce((3, 1)) == m.reduce((1, 1))


def test_modulus_validation():
    with pytest.raises(LinAlgError):
        FpZnModule(1, 1, [])
    with pytest.raises(LinAlgError):
        FpZnModule(2 ** 40, 1, [])


def test_mat_mul_associativity():
    rng = random.Random(7)
    n = 6
    a = _random_matrix(rng, 2, 3, n)
    b = _random_matrix(rng, 3, 4, n)
    c = _random_matrix(rng, 4, 2, n)
    assert mat_mul(mat_mul(a, b, n), c, n) == mat_mul(a, mat_mul(b, c, n), n)
    assert mat_mul(identity_matrix(2), a, n) == a

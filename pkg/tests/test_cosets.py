import random
from fractions import Fraction

import pytest

from modelk.cosets import NEG_INF, AffineCoset, LinearSystem
from modelk.errors import WorkbenchError
from modelk.suites import random_coset, random_point

F = Fraction


def line(ambient, coeffs, rhs):
    return AffineCoset.from_rows(ambient, [list(coeffs) + [rhs]])


def test_canonical_form_is_representation_independent():
    a = AffineCoset.from_rows(2, [[1, 1, 3], [1, -1, 1]])
    b = AffineCoset.from_rows(2, [[2, 0, 4], [0, 2, 2]])
    assert a == b
    assert hash(a) == hash(b)
    assert a.dim == 0
    assert a.particular_point() == (F(2), F(1))


def test_inconsistent_system_is_empty():
    c = AffineCoset.from_rows(2, [[1, 0, 0], [1, 0, 1]])
    assert c.empty
    assert c.dim == NEG_INF
    assert c == AffineCoset.empty_set(2)


def test_full_space():
    c = AffineCoset.full(3)
    assert c.dim == 3
    assert c.is_full
    assert c.contains((F(1), F(2), F(3)))


def test_zero_rows_are_dropped():
    c = AffineCoset.from_rows(2, [[0, 0, 0]])
    assert c.is_full


def test_contains_and_membership():
    c = line(2, (1, -1), 0)  # x1 = x2
    assert c.contains((F(2), F(2)))
    assert not c.contains((F(2), F(3)))


def test_intersection_and_subset():
    h = line(2, (1, 0), 1)
    v = line(2, (0, 1), 2)
    p = h.intersect(v)
    assert p.dim == 0
    assert p.particular_point() == (F(1), F(2))
    assert p.is_subset(h) and p.is_subset(v)
    assert p.is_proper_subset(h)
    assert not h.is_subset(v)
    assert h.intersect(line(2, (1, 0), 2)).empty


def test_single_point_roundtrip():
    pt = (F(3, 2), F(-1))
    c = AffineCoset.single_point(pt)
    assert c.dim == 0
    assert c.particular_point() == pt
    assert c.contains(pt)


def test_direction_basis_spans_difference_of_points():
    c = line(3, (1, 1, 1), 0)
    basis = c.direction_basis()
    assert len(basis) == 2
    p = c.particular_point()
    for b in basis:
        q = tuple(x + d for x, d in zip(p, b))
        assert c.contains(q)


def test_translate():
    c = line(2, (1, 0), 0)
    t = c.translate((F(2), F(5)))
    assert t == line(2, (1, 0), 2)


def test_affine_image_and_preimage():
    c = line(2, (1, 0), 1)  # x1 = 1
    double = [[F(2), F(0)], [F(0), F(2)]]
    img = c.affine_image(double, (F(0), F(0)))
    assert img == line(2, (1, 0), 2)
    back = img.affine_preimage(double, (F(0), F(0)))
    assert back == c


def test_affine_image_of_empty_stays_empty():
    e = AffineCoset.empty_set(2)
    img = e.affine_image([[F(1), F(0)], [F(0), F(1)]], (F(1), F(1)))
    assert img.empty


def test_projection():
    # the plane x1 = y in Q^2 (coords x1, y) projects onto all of Q^1
    joint = AffineCoset.from_rows(2, [[1, -1, 0]])
    proj = joint.project(1)
    assert proj.is_full and proj.ambient == 1
    # a point projects to a point
    pt = AffineCoset.single_point((F(1), F(2)))
    assert pt.project(1) == AffineCoset.single_point((F(1),))


def test_product_and_embed():
    a = line(1, (1,), 2)           # the point 2
    b = AffineCoset.full(1)
    prod = a.product(b)            # the line x1 = 2 in Q^2
    assert prod == line(2, (1, 0), 2)
    emb = a.embed(3)
    assert emb.ambient == 3
    assert emb.contains((F(2), F(0), F(0)))
    emb_tail = a.embed(2, tail=(F(7),))
    assert emb_tail.contains((F(2), F(7)))


def test_integer_rows_clear_denominators():
    c = line(2, (F(1, 2), F(1, 3)), F(1, 6))
    rows = c.integer_rows()
    for row in rows:
        assert all(isinstance(x, int) for x in row)
    assert rows[0][0] > 0


def test_sort_key_total_order():
    cs = [line(2, (1, 0), k) for k in range(3)] + [AffineCoset.empty_set(2)]
    keys = [c.sort_key for c in cs]
    assert len(set(keys)) == len(keys)
    sorted(cs, key=lambda c: c.sort_key)


def test_row_width_validation():
    with pytest.raises(WorkbenchError):
        AffineCoset.from_rows(2, [[1, 0]])


def test_linear_system_projection_dim():
    # x1 = 2 y: projection is everything
    s = LinearSystem.make(1, 1, [[1, -2, 0]])
    assert s.coset().is_full
    # x1 = 2 y and x1 = y forces x1 = 0
    s2 = LinearSystem.make(1, 1, [[1, -2, 0], [1, -1, 0]])
    assert s2.coset() == AffineCoset.single_point((F(0),))
    assert s.is_integral()
    assert not LinearSystem.make(1, 0, [[F(1, 2), 1]]).is_integral()


def test_linear_system_width_check():
    with pytest.raises(WorkbenchError):
        LinearSystem.make(2, 1, [[1, 0, 0]])


def test_random_cosets_contain_their_particular_point():
    rng = random.Random(31)
    for _ in range(40):
        ambient = rng.randint(1, 3)
        c = random_coset(rng, ambient)
        if not c.empty:
            assert c.contains(c.particular_point())
            # directions keep you inside the coset
            for d in c.direction_basis():
                q = tuple(x + 3 * v for x, v in
                          zip(c.particular_point(), d))
                assert c.contains(q)


def test_intersect_is_commutative_and_monotone():
    rng = random.Random(32)
    for _ in range(30):
        ambient = rng.randint(1, 3)
        a = random_coset(rng, ambient)
        b = random_coset(rng, ambient)
        ab = a.intersect(b)
        assert ab == b.intersect(a)
        assert ab.is_subset(a) and ab.is_subset(b)
        if not ab.empty:
            assert ab.dim <= min(a.dim, b.dim)

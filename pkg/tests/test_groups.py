import random

import pytest

from cohodepth.errors import GroupFileError
from cohodepth.groups import (
    PermGroup,
    centralizer,
    enumerate_elem_abelian,
    iso_identify,
    isomorphic,
    omega1_center,
    parse_permutation,
    perm_conj,
    perm_mul,
    permutation_to_cycles,
    regular_group,
    sylow_p,
)


def pg(degree, *cycles):
    return PermGroup(degree, tuple(parse_permutation(c, degree) for c in cycles))


DIHEDRAL8 = pg(4, "(1,2,3,4)", "(1,3)")


def quaternion8():
    # regular representation from the unit quaternion multiplication table
    # elements: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mul = {
        ("1", x): x for x in names
    }
    for x in names:
        mul[(x, "1")] = x

    def neg(x):
        return x[1:] if x.startswith("-") else "-" + x

    base = {
        ("i", "i"): "-1",
        ("j", "j"): "-1",
        ("k", "k"): "-1",
        ("i", "j"): "k",
        ("j", "k"): "i",
        ("k", "i"): "j",
        ("j", "i"): "-k",
        ("k", "j"): "-i",
        ("i", "k"): "-j",
    }

    def product(a, b):
        sign = 1
        if a.startswith("-"):
            sign = -sign
            a = a[1:]
        if b.startswith("-"):
            sign = -sign
            b = b[1:]
        if a == "1":
            r = b
        elif b == "1":
            r = a
        elif a == b:
            r = "-1"
        else:
            r = base[(a, b)]
        if sign == -1:
            r = neg(r)
        if r.startswith("--"):
            r = r[2:]
        return r

    idx = {x: i for i, x in enumerate(names)}
    table = [
        [idx[product(a, b)] for b in names] for a in names
    ]
    return regular_group(table, generators=[idx["i"], idx["j"]])


def elementary_abelian(rank):
    gens = []
    for i in range(rank):
        gens.append(f"({2 * i + 1},{2 * i + 2})")
    return pg(2 * rank, *gens)


def sg32_6():
    """C2^3 : C4 with the order-4 regular unipotent action, as affine
    maps on the 8 points of F_2^3."""
    def pt(a, b, c):
        return a + 2 * b + 4 * c

    def perm_from_map(f):
        images = [0] * 8
        for a in (0, 1):
            for b in (0, 1):
                for c in (0, 1):
                    images[pt(a, b, c)] = pt(*f(a, b, c))
        return tuple(images)

    e1 = perm_from_map(lambda a, b, c: ((a + 1) % 2, b, c))
    e2 = perm_from_map(lambda a, b, c: (a, (b + 1) % 2, c))
    e3 = perm_from_map(lambda a, b, c: (a, b, (c + 1) % 2))
    # linear map t: e1->e1, e2->e1+e2, e3->e2+e3 (matrix acts on coordinates:
    # (a,b,c) -> (a+b, b+c, c))
    t = perm_from_map(lambda a, b, c: ((a + b) % 2, (b + c) % 2, c))
    return PermGroup(8, (e1, e2, e3, t))


class TestBasics:
    def test_parse_and_print_roundtrip(self):
        for text in ["(1,2)(3,4)", "(1,2,3,4)", "()", "(2,3)"]:
            p = parse_permutation(text, 4)
            assert parse_permutation(permutation_to_cycles(p), 4) == p

    def test_parse_rejects_garbage(self):
        with pytest.raises(GroupFileError):
            parse_permutation("(1,2", 4)
        with pytest.raises(GroupFileError):
            parse_permutation("(1,5)", 4)
        with pytest.raises(GroupFileError):
            parse_permutation("(1,2)(2,3)", 4)

    def test_orders(self):
        assert DIHEDRAL8.order == 8
        assert quaternion8().order == 8
        assert sg32_6().order == 32

    def test_conjugation(self):
        g = parse_permutation("(1,2,3,4)", 4)
        h = parse_permutation("(1,3)", 4)
        assert perm_conj(g, h) == parse_permutation("(2,4)", 4)


class TestEnumerate:
    def test_dihedral_classes(self):
        poset = enumerate_elem_abelian(DIHEDRAL8, 2)
        by_rank = {}
        for c in poset.classes:
            by_rank[c.rank] = by_rank.get(c.rank, 0) + 1
        assert by_rank == {1: 3, 2: 2}

    def test_quaternion_unique_class(self):
        poset = enumerate_elem_abelian(quaternion8(), 2)
        assert len(poset.classes) == 1
        assert poset.classes[0].rank == 1
        # the unique involution is central
        assert poset.classes[0].centralizer.order == 8

    def test_sg32_6_six_rank2_classes(self):
        poset = enumerate_elem_abelian(sg32_6(), 2)
        assert len(poset.classes_of_rank(2)) == 6
        assert len(poset.classes_of_rank(3)) == 2
        assert poset.ranks() == [1, 2, 3]

    def test_poset_relation_rank_monotone(self):
        poset = enumerate_elem_abelian(DIHEDRAL8, 2)
        for a in poset.classes:
            for b in poset.classes:
                if poset.leq(a, b):
                    assert a.rank <= b.rank

    def test_poset_reflexive_and_center_below_all_rank2(self):
        poset = enumerate_elem_abelian(DIHEDRAL8, 2)
        for c in poset.classes:
            assert poset.leq(c, c)
        center_cls = [
            c
            for c in poset.classes_of_rank(1)
            if c.centralizer.order == 8
        ]
        assert len(center_cls) == 1
        for c in poset.classes_of_rank(2):
            assert poset.leq(center_cls[0], c)

    def test_class_ids_stable_under_generator_shuffle(self):
        rng = random.Random(4)
        base = enumerate_elem_abelian(DIHEDRAL8, 2)
        gens = list(DIHEDRAL8.generators)
        for _ in range(3):
            rng.shuffle(gens)
            extra = perm_mul(gens[0], gens[-1])
            shuffled = PermGroup(4, tuple(gens) + (extra,))
            poset = enumerate_elem_abelian(shuffled, 2)
            assert [
                (c.class_id, c.rank, c.class_size, c.min_encoding)
                for c in poset.classes
            ] == [
                (c.class_id, c.rank, c.class_size, c.min_encoding)
                for c in base.classes
            ]

    def test_wrong_prime(self):
        with pytest.raises(ValueError):
            enumerate_elem_abelian(DIHEDRAL8, 3)

    def test_class_size_divides_order(self):
        for G in [DIHEDRAL8, quaternion8(), sg32_6()]:
            poset = enumerate_elem_abelian(G, 2)
            for c in poset.classes:
                assert G.order % c.class_size == 0
                assert c.representative.element_set <= c.centralizer.element_set


class TestCentralizer:
    def test_trivial_subgroup(self):
        H = PermGroup(4, ())
        assert centralizer(DIHEDRAL8, H).order == 8

    def test_whole_group_gives_center(self):
        Z = centralizer(DIHEDRAL8, DIHEDRAL8)
        assert Z.order == 2

    def test_klein_self_centralizing(self):
        K = pg(4, "(1,3)", "(1,3)(2,4)")
        C = centralizer(DIHEDRAL8, K)
        assert C.element_set == K.element_set

    def test_not_subgroup_rejected(self):
        H = pg(4, "(1,2)")
        with pytest.raises(ValueError):
            centralizer(DIHEDRAL8, H)


class TestSylow:
    def test_p_group_is_itself(self):
        assert sylow_p(DIHEDRAL8, 2).order == 8

    def test_symmetric3(self):
        S3 = pg(3, "(1,2,3)", "(1,2)")
        assert S3.order == 6
        assert sylow_p(S3, 2).order == 2
        assert sylow_p(S3, 3).order == 3

    def test_exact_p_part(self):
        S4 = pg(4, "(1,2,3,4)", "(1,2)")
        assert S4.order == 24
        assert sylow_p(S4, 2).order == 8
        assert sylow_p(S4, 3).order == 3

    def test_p_not_dividing(self):
        assert sylow_p(DIHEDRAL8, 3).order == 1


class TestOmega1:
    def test_elementary_abelian(self):
        E = elementary_abelian(3)
        E0, z = omega1_center(E, 2)
        assert z == 3 and E0.order == 8

    def test_quaternion(self):
        E0, z = omega1_center(quaternion8(), 2)
        assert z == 1 and E0.order == 2

    def test_dihedral(self):
        E0, z = omega1_center(DIHEDRAL8, 2)
        assert z == 1 and E0.order == 2

    def test_sg32_6_center(self):
        E0, z = omega1_center(sg32_6(), 2)
        assert z == 1 and E0.order == 2

    def test_rejects_non_p_group(self):
        S3 = pg(3, "(1,2,3)", "(1,2)")
        with pytest.raises(ValueError):
            omega1_center(S3, 2)


class TestIso:
    def test_self_isomorphic(self):
        assert isomorphic(DIHEDRAL8, DIHEDRAL8)
        assert isomorphic(quaternion8(), quaternion8())

    def test_d8_not_q8(self):
        assert not isomorphic(DIHEDRAL8, quaternion8())

    def test_d8_not_elementary(self):
        assert not isomorphic(DIHEDRAL8, elementary_abelian(3))

    def test_presentation_independent(self):
        other = pg(4, "(1,2,3,4)", "(2,4)")  # same D8, other reflection
        assert isomorphic(DIHEDRAL8, other)
        regular_d8 = None
        # D8 in its regular representation
        idx = {x: i for i, x in enumerate(DIHEDRAL8.elements)}
        table = [
            [idx[perm_mul(a, b)] for b in DIHEDRAL8.elements]
            for a in DIHEDRAL8.elements
        ]
        regular_d8 = regular_group(table)
        assert isomorphic(DIHEDRAL8, regular_d8)

    def test_abelian_distinguished(self):
        c4xc2 = pg(6, "(1,2,3,4)", "(5,6)")
        assert not isomorphic(c4xc2, elementary_abelian(3))
        assert isomorphic(c4xc2, pg(8, "(1,2,3,4)(5,6,7,8)", "(1,5)(2,6)(3,7)(4,8)"))

    def test_iso_identify(self):
        catalog = {
            (8, 3): DIHEDRAL8,
            (8, 4): quaternion8(),
            (8, 5): elementary_abelian(3),
        }
        assert iso_identify(elementary_abelian(3), catalog) == (8, 5)
        assert iso_identify(pg(6, "(1,2,3,4)", "(5,6)"), catalog) is None


class TestSG32_6Centralizers:
    def test_rank2_centralizer_orders(self):
        poset = enumerate_elem_abelian(sg32_6(), 2)
        orders = sorted(c.centralizer.order for c in poset.classes_of_rank(2))
        assert orders == [8, 8, 8, 16, 16, 16]

import itertools
import random

import pytest

from cohodepth.algebra import (
    PolyRing,
    PrimeField,
    RingMap,
    mono_div,
    mono_lcm,
    parse_poly,
    presentation,
)
from cohodepth.config import EngineConfig
from cohodepth.errors import DegreeCapExceeded
from cohodepth.groebner import (
    _reduce_full,
    buchberger,
    complete,
    ideal,
    ideal_contract,
    ideal_intersect,
    ideal_quotient,
    ideals_equal,
    is_zero_ideal,
    member,
    normal_form,
    radical_member,
    ring_map_kernel,
    validate_map,
)
from cohodepth.invariants import _rref, ideal_degree_basis, monomials_of_degree

F2 = PrimeField(2)
RXY = PolyRing(F2, ("x", "y"), (1, 1))
PXY = presentation(2, [("x", 1), ("y", 1)])
P3 = presentation(2, [("x", 1), ("y", 1), ("z", 1)])


def I(pres, *gens):
    return ideal(pres, tuple(pres.parse(g) for g in gens))


def gb_strs(J):
    return tuple(str(g) for g in complete(J).groebner)


class TestBuchberger:
    def test_hand_example(self):
        # S-polynomial of (x^2, x*y + y^2) reduces to y^3
        gb = gb_strs(I(PXY, "x^2", "x*y + y^2"))
        assert gb == ("x*y + y^2", "x^2", "y^3")

    def test_single_monic_generator(self):
        assert gb_strs(I(PXY, "x")) == ("x",)

    def test_empty(self):
        assert gb_strs(I(PXY)) == ()

    def test_inhomogeneous_rejected(self):
        f = parse_poly("x", RXY) + RXY.one
        with pytest.raises(ValueError):
            buchberger([f])

    def test_degree_cap(self):
        cfg = EngineConfig(max_gb_degree=2)
        gens = [PXY.parse("x^2 + x*y"), PXY.parse("x*y^2")]
        with pytest.raises(DegreeCapExceeded):
            buchberger(gens, config=cfg)


class TestNormalForm:
    def test_membership(self):
        J = complete(I(PXY, "x*y"))
        assert normal_form(PXY.parse("x*y"), J).is_zero()

    def test_one_reduction_step(self):
        J = complete(I(PXY, "x^2 + x*y"))
        assert str(normal_form(PXY.parse("x^2*y"), J)) == "x*y^2"

    def test_unit_survives_positive_ideal(self):
        J = complete(I(PXY, "x^2", "x*y + y^2"))
        assert str(normal_form(PXY.ring.one, J)) == "1"

    def test_requires_completion(self):
        with pytest.raises(ValueError):
            normal_form(PXY.parse("x"), I(PXY, "x"))


class TestIdealOps:
    def test_quotient_by_variable(self):
        Q = ideal_quotient(complete(I(PXY, "x*y")), PXY.parse("x"))
        assert gb_strs(Q) == ("y",)

    def test_quotient_by_ideal(self):
        Q = ideal_quotient(complete(I(PXY, "x*y")), complete(I(PXY, "x", "y")))
        assert gb_strs(Q) == ("x*y",)

    def test_quotient_by_one(self):
        J = complete(I(PXY, "x*y"))
        assert ideals_equal(ideal_quotient(J, PXY.ring.one), J)

    def test_intersect(self):
        got = ideal_intersect(complete(I(PXY, "x")), complete(I(PXY, "y")))
        assert gb_strs(got) == ("x*y",)

    def test_intersect_self_and_zero(self):
        J = complete(I(PXY, "x^2", "x*y + y^2"))
        assert ideals_equal(ideal_intersect(J, J), J)
        Z = complete(I(PXY))
        assert is_zero_ideal(ideal_intersect(J, Z))

    def test_radical_member(self):
        J = complete(I(PXY, "x^2"))
        assert radical_member(PXY.parse("x"), J)
        assert not radical_member(PXY.parse("y"), J)
        assert radical_member(PXY.parse("x^2"), J)

    def test_colon_zero_divisor_detection(self):
        # (I : f) == I iff f is a non-zero-divisor mod I
        J = complete(I(PXY, "x*y"))
        assert not ideals_equal(ideal_quotient(J, PXY.parse("x")), J)
        assert ideals_equal(ideal_quotient(J, PXY.parse("x + y")), J)


class TestKernelContract:
    def test_kernel_injective(self):
        src = presentation(2, [("u", 2)])
        dst = presentation(2, [("x", 1)])
        phi = RingMap(src, dst, (dst.parse("x^2"),))
        assert is_zero_ideal(ring_map_kernel(phi))

    def test_kernel_diagonal(self):
        src = presentation(2, [("u", 1), ("v", 1)])
        dst = presentation(2, [("x", 1)])
        phi = RingMap(src, dst, (dst.parse("x"), dst.parse("x")))
        assert gb_strs(ring_map_kernel(phi)) == ("u + v",)

    def test_kernel_identity_is_relations(self):
        pres = presentation(2, [("x", 1), ("y", 1)], ["x*y"])
        ident = RingMap(pres, pres, (pres.parse("x"), pres.parse("y")))
        K = ring_map_kernel(ident)
        assert ideals_equal(K, complete(ideal(pres, pres.relations)))

    def test_contract_zero_is_kernel(self):
        src = presentation(2, [("u", 1), ("v", 1)])
        dst = presentation(2, [("x", 1)])
        phi = RingMap(src, dst, (dst.parse("x"), dst.parse("x")))
        Z = ideal(dst, ())
        assert ideals_equal(ideal_contract(phi, Z), ring_map_kernel(phi))

    def test_contract_example(self):
        src = presentation(2, [("u", 1), ("v", 1)])
        dst = presentation(2, [("x", 1)])
        phi = RingMap(src, dst, (dst.parse("x"), dst.parse("x")))
        got = ideal_contract(phi, I(dst, "x"))
        assert set(gb_strs(got)) == {"u", "v"}

    def test_contract_unit(self):
        src = presentation(2, [("u", 1), ("v", 1)])
        dst = presentation(2, [("x", 1)])
        phi = RingMap(src, dst, (dst.parse("x"), dst.parse("x")))
        got = ideal_contract(phi, ideal(dst, (dst.ring.one,)))
        assert gb_strs(got) == ("1",)

    def test_kernel_maps_to_zero(self):
        # every kernel generator's image lies in the target relations
        src = presentation(2, [("x", 1), ("y", 1), ("w", 2)], ["x*y"])
        dst = presentation(2, [("e1", 1), ("e2", 1)])
        phi = RingMap(
            src,
            dst,
            (dst.parse("e1"), dst.parse("0"), dst.parse("e2^2 + e1*e2")),
        )
        K = ring_map_kernel(phi)
        rels = complete(ideal(dst, dst.relations))
        for g in K.groebner:
            assert normal_form(phi.apply(g), rels).is_zero()
        assert gb_strs(K) == ("y",)


class TestValidateMap:
    def test_well_defined(self):
        src = presentation(2, [("x", 1), ("y", 1)], ["x*y"])
        dst = presentation(2, [("e1", 1)])
        phi = RingMap(src, dst, (dst.parse("e1"), dst.parse("0")))
        assert validate_map(phi).well_defined

    def test_not_well_defined(self):
        src = presentation(2, [("x", 1), ("y", 1)], ["x*y"])
        dst = presentation(2, [("e1", 1)])
        phi = RingMap(src, dst, (dst.parse("e1"), dst.parse("e1")))
        rep = validate_map(phi)
        assert not rep.well_defined
        assert str(rep.failures[0][1]) == "e1^2"

    def test_no_relations_trivially_well_defined(self):
        src = presentation(2, [("x", 1)])
        dst = presentation(2, [("e1", 1)])
        phi = RingMap(src, dst, (dst.parse("e1"),))
        assert validate_map(phi).well_defined


# ---------------------------------------------------------------------------
# randomized cross-validation against simple reference computations


def naive_buchberger(gens):
    """All-pairs Buchberger without any criteria; reference implementation."""
    G = [g.monic() for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for f, g in itertools.combinations(list(G), 2):
            lf, lg = f.lm(), g.lm()
            l = mono_lcm(lf, lg)
            s = f.mul_term(mono_div(l, lf), 1) - g.mul_term(mono_div(l, lg), 1)
            r = _reduce_full(s, G)
            if not r.is_zero():
                G.append(r.monic())
                changed = True
    return G


def random_homogeneous(ring, rng, deg, max_terms=3):
    monos = monomials_of_degree(ring, deg)
    if not monos:
        return ring.zero
    d = {}
    for _ in range(rng.randint(1, max_terms)):
        d[rng.choice(monos)] = 1
    return ring.from_dict(d)


def random_gens(pres, rng, count=None, maxdeg=3):
    gens = []
    for _ in range(count or rng.randint(1, 3)):
        f = random_homogeneous(pres.ring, rng, rng.randint(1, maxdeg))
        if not f.is_zero():
            gens.append(f)
    return gens


def piece_dim(J, d):
    basis, _ = ideal_degree_basis(J, d)
    return len(basis)


def stack_dim(ideals, d):
    """Dimension of the sum of graded pieces, by one rref."""
    ring = ideals[0].presentation.ring
    monos = monomials_of_degree(ring, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for J in ideals:
        basis, _ = ideal_degree_basis(J, d)
        for f in basis:
            row = [0] * len(monos)
            for m, c in f.terms:
                row[index[m]] = c
            rows.append(row)
    if not rows:
        return 0
    reduced, _ = _rref(rows, ring.field.p)
    return len(reduced)


class TestAgainstOracles:
    def test_gm_equals_naive(self):
        rng = random.Random(7)
        for trial in range(20):
            gens = random_gens(P3, rng)
            fast = buchberger(gens)
            slow = naive_buchberger(gens)
            for g in fast:
                assert _reduce_full(g, slow).is_zero()
            for g in slow:
                assert _reduce_full(g, list(fast)).is_zero()

    def test_reduced_basis_is_canonical(self):
        rng = random.Random(11)
        for trial in range(15):
            gens = random_gens(P3, rng)
            if not gens:
                continue
            gb1 = buchberger(gens)
            mixed = list(gens)
            rng.shuffle(mixed)
            mixed.append(gens[0] * gens[-1])
            gb2 = buchberger(mixed)
            assert gb1 == gb2

    def test_membership_against_linear_algebra(self):
        # normal_form(f, I) == 0 iff f lies in the degreewise span of I
        rng = random.Random(13)
        ring3 = P3.ring
        p = 2
        for trial in range(10):
            gens = random_gens(P3, rng, maxdeg=2)
            if not gens:
                continue
            J = complete(ideal(P3, tuple(gens)))
            for d in range(0, 5):
                basis, monos = ideal_degree_basis(J, d)
                index = {m: i for i, m in enumerate(monos)}
                for _ in range(8):
                    f = random_homogeneous(ring3, rng, d, max_terms=2)
                    if f.is_zero():
                        continue
                    rows = []
                    for b in basis:
                        row = [0] * len(monos)
                        for m, c in b.terms:
                            row[index[m]] = c
                        rows.append(row)
                    frow = [0] * len(monos)
                    for m, c in f.terms:
                        frow[index[m]] = c
                    rank_without = len(_rref(rows, p)[0]) if rows else 0
                    rank_with = len(_rref(rows + [frow], p)[0])
                    in_span = rank_with == rank_without
                    assert in_span == member(f, J)

    def test_spoly_reduction_property(self):
        J = complete(
            ideal(
                P3,
                (
                    P3.parse("x*y + z^2"),
                    P3.parse("x^2"),
                    P3.parse("y^3 + x*z^2"),
                ),
            )
        )
        gb = list(J.groebner)
        for f, g in itertools.combinations(gb, 2):
            l = mono_lcm(f.lm(), g.lm())
            s = f.mul_term(mono_div(l, f.lm()), 1) - g.mul_term(
                mono_div(l, g.lm()), 1
            )
            assert _reduce_full(s, gb).is_zero()

    def test_intersect_against_degreewise_ranks(self):
        # dim (A cap B)_d == dim A_d + dim B_d - dim (A + B)_d
        rng = random.Random(5)
        for trial in range(8):
            A = complete(ideal(P3, tuple(random_gens(P3, rng, maxdeg=2))))
            B = complete(ideal(P3, tuple(random_gens(P3, rng, maxdeg=2))))
            got = ideal_intersect(A, B)
            for d in range(0, 6):
                expected = (
                    piece_dim(A, d) + piece_dim(B, d) - stack_dim([A, B], d)
                )
                assert piece_dim(got, d) == expected

    def test_quotient_times_J_in_I(self):
        # (I : f) * f subseteq I
        rng = random.Random(3)
        for trial in range(10):
            gens = random_gens(P3, rng, maxdeg=2)
            if not gens:
                continue
            Igen = complete(ideal(P3, tuple(gens)))
            f = random_homogeneous(P3.ring, rng, rng.randint(1, 2))
            if f.is_zero():
                continue
            Q = ideal_quotient(Igen, f)
            for q in Q.groebner:
                assert member(q * f, Igen)

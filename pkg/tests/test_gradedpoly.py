import itertools
import random
from fractions import Fraction

import pytest

from fmcalc import gradedpoly as gp
from fmcalc.errors import RingMismatch, TruncationExceeded, ZeroPolynomial
from fmcalc.gradedpoly import (
    EQ,
    GT,
    LT,
    GradedPoly,
    PolyRing,
    compare_monomials,
    divide_by_var,
    graded_basis,
    leading_monomial,
    monomial,
    monomial_weight,
    reduce_mod_ideal,
)


@pytest.fixture()
def ring(q2_sqrt2):
    return PolyRing(q2_sqrt2, N=4)


class TestMonomialOrder:
    def test_highest_index_dominates(self):
        assert compare_monomials(monomial({3: 1}), monomial({1: 100, 2: 100})) == GT

    def test_v2_squared_beats_v1n_v2(self):
        for n in (1, 5, 50):
            assert compare_monomials(monomial({2: 2}), monomial({1: n, 2: 1})) == GT

    def test_reflexive(self):
        assert compare_monomials(monomial({1: 1}), monomial({1: 1})) == EQ

    @pytest.mark.parametrize("q", [2, 3])
    def test_total_order_exhaustive(self, q, q2, q3):
        tower = q2 if q == 2 else q3
        ring = PolyRing(tower, N=3)
        bound = 2 * (q ** 3 - 1)
        monos = [m for w, ms in graded_basis(ring, bound).items() for m in ms]
        # antisymmetry + totality on pairs, transitivity on a sample of triples
        for x, y in itertools.combinations(monos[:60], 2):
            cxy = compare_monomials(x, y)
            cyx = compare_monomials(y, x)
            assert cxy == -cyx
            assert cxy != EQ or x == y
        rng = random.Random(0)
        for _ in range(300):
            x, y, z = (rng.choice(monos) for _ in range(3))
            if compare_monomials(x, y) != GT and compare_monomials(y, z) != GT:
                assert compare_monomials(x, z) != GT

    def test_order_respects_multiplication(self):
        rng = random.Random(1)
        ring = PolyRing.__new__(PolyRing)  # only need q for weights
        monos = [
            monomial({n: rng.randint(0, 4) for n in (1, 2, 3)}) for _ in range(200)
        ]
        for _ in range(300):
            x, y, z = (rng.choice(monos) for _ in range(3))
            if compare_monomials(x, y) != GT:
                assert compare_monomials(
                    gp.monomial_mul(x, z), gp.monomial_mul(y, z)
                ) != GT

    def test_weight_additive(self):
        rng = random.Random(2)
        for q in (2, 3):
            for _ in range(100):
                x = monomial({n: rng.randint(0, 3) for n in (1, 2, 3)})
                y = monomial({n: rng.randint(0, 3) for n in (1, 2, 3)})
                assert monomial_weight(gp.monomial_mul(x, y), q) == monomial_weight(
                    x, q
                ) + monomial_weight(y, q)


class TestArithmetic:
    def test_square_weight(self, ring):
        v1 = ring.gen(1)
        sq = v1 * v1
        assert sq.weight() == 2 * (ring.q - 1)

    def test_difference_of_squares(self, ring):
        v1, v2 = ring.gen(1), ring.gen(2)
        assert (v1 + v2) * (v1 - v2) == v1 ** 2 - v2 ** 2

    def test_scalar_power_with_uniformizer_relation(self, ring, q2_sqrt2):
        # ((p/pi) v_1)^e = p^{e-1} v_1^e when pi^e = p
        pi = q2_sqrt2.uniformizer()
        f = ring.gen(1).scale(q2_sqrt2.from_rational(2) / pi)
        assert f ** 2 == (ring.gen(1) ** 2).scale(q2_sqrt2.from_rational(2))

    def test_ring_mismatch(self, ring, q3_sqrt3):
        other = PolyRing(q3_sqrt3, N=4)
        with pytest.raises(RingMismatch):
            ring.gen(1) + other.gen(1)

    def test_truncation_guard(self, ring):
        with pytest.raises(TruncationExceeded):
            ring.gen(5)

    def test_multiplication_commutes_and_associates(self, ring, q2_sqrt2):
        rng = random.Random(3)
        basis = [m for w, ms in graded_basis(ring, 6).items() for m in ms]

        def rand_poly():
            return GradedPoly(
                ring,
                {
                    rng.choice(basis): q2_sqrt2.from_rational(rng.randint(-3, 3))
                    for _ in range(3)
                },
            )

        for _ in range(25):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


class TestLeadingMonomial:
    def test_higher_index_dominates(self, ring):
        assert leading_monomial(ring.gen(1) + ring.gen(2)) == monomial({2: 1})

    def test_worked_example(self, ring):
        f = ring.gen(2) ** 2 + ring.gen(1) ** 9 * ring.gen(2)
        assert leading_monomial(f) == monomial({2: 2})

    def test_scalar_multiple(self, ring):
        assert leading_monomial(ring.gen(1).scale(7)) == monomial({1: 1})

    def test_zero_polynomial(self, ring):
        with pytest.raises(ZeroPolynomial):
            leading_monomial(ring.zero())


class TestApplyRingMap:
    def test_single_generator(self, q2, q2_sqrt2):
        ring_a = PolyRing(q2, N=2)
        ring_b = PolyRing(q2_sqrt2, q=2, N=2)
        images = {1: ring_b.gen(1).scale(q2_sqrt2.theta()), 2: ring_b.gen(2)}
        out = gp.apply_ring_map(ring_a.gen(1), images)
        assert out == ring_b.gen(1).scale(q2_sqrt2.theta())

    def test_unit_preservation(self, q2, q2_sqrt2):
        ring_a = PolyRing(q2, N=2)
        ring_b = PolyRing(q2_sqrt2, q=2, N=2)
        images = {1: ring_b.gen(1), 2: ring_b.gen(2)}
        assert gp.apply_ring_map(ring_a.one(), images) == ring_b.one()

    def test_homomorphism_property(self, q2, q2_sqrt2):
        rng = random.Random(4)
        ring_a = PolyRing(q2, N=3)
        ring_b = PolyRing(q2_sqrt2, q=2, N=3)
        images = {
            1: ring_b.gen(1).scale(q2_sqrt2.theta()),
            2: ring_b.gen(2) + ring_b.gen(1) ** 3,
            3: ring_b.gen(3),
        }
        basis = [m for w, ms in graded_basis(ring_a, 7).items() for m in ms]

        def rand_poly():
            return GradedPoly(
                ring_a,
                {rng.choice(basis): q2.from_rational(rng.randint(-3, 3)) for _ in range(3)},
            )

        for _ in range(20):
            f, g = rand_poly(), rand_poly()
            assert gp.apply_ring_map(f * g, images) == gp.apply_ring_map(
                f, images
            ) * gp.apply_ring_map(g, images)


class TestReduceModIdeal:
    def test_drops_low_generators_and_p(self, ring, q2_sqrt2):
        f = ring.gen(3).scale(q2_sqrt2.from_rational(2)) + ring.gen(1) * ring.gen(2)
        assert reduce_mod_ideal(f, 2).is_zero()

    def test_unit_coefficient_survives(self, ring, q2_sqrt2):
        pi = q2_sqrt2.uniformizer()
        f = (ring.gen(2) ** 3).scale(q2_sqrt2.from_rational(2) / pi ** 2)
        red = reduce_mod_ideal(f, 1)
        assert len(red.terms) == 1
        ((m, c),) = red.terms.items()
        assert m == monomial({2: 3}) and c.vec == (1,)

    def test_uniformizer_multiple_vanishes(self, ring, q2_sqrt2):
        f = ring.gen(2) + ring.gen(2).scale(q2_sqrt2.uniformizer())
        assert reduce_mod_ideal(f, 1) == reduce_mod_ideal(ring.gen(2), 1)

    def test_ring_homomorphism(self, ring, q2_sqrt2):
        rng = random.Random(5)
        basis = [m for w, ms in graded_basis(ring, 6).items() for m in ms]

        def rand_poly():
            return GradedPoly(
                ring,
                {
                    rng.choice(basis): q2_sqrt2.from_rational(rng.randint(-3, 3))
                    for _ in range(3)
                },
            )

        for _ in range(25):
            a, b = rand_poly(), rand_poly()
            n = rng.choice((1, 2))
            assert reduce_mod_ideal(a + b, n) == reduce_mod_ideal(a, n) + reduce_mod_ideal(b, n)
            assert reduce_mod_ideal(a * b, n) == reduce_mod_ideal(a, n) * reduce_mod_ideal(b, n)


class TestGradedBasis:
    def test_q2_weight_1(self, ring):
        assert graded_basis(ring, 1)[1] == [monomial({1: 1})]

    def test_q2_weight_3(self, ring):
        assert graded_basis(ring, 3)[3] == [monomial({2: 1}), monomial({1: 3})]

    def test_q3_weight_1_empty(self, q3):
        ring3 = PolyRing(q3, N=3)
        assert graded_basis(ring3, 1)[1] == []

    def test_lists_are_order_sorted(self, ring):
        for w, monos in graded_basis(ring, 10).items():
            for a, b in zip(monos, monos[1:]):
                assert compare_monomials(a, b) == GT


class TestDivideByVar:
    def test_divides(self, ring):
        f = ring.gen(1) ** 3 + ring.gen(1) * ring.gen(2)
        assert divide_by_var(f, 1) == ring.gen(1) ** 2 + ring.gen(2)

    def test_not_divisible(self, ring):
        assert divide_by_var(ring.gen(1) + ring.gen(2), 1) is None

    def test_zero_is_divisible(self, ring):
        assert divide_by_var(ring.zero(), 1) == ring.zero()


class TestSerialization:
    def test_descending_term_order(self, ring):
        f = ring.gen(1) + ring.gen(2) ** 2 + ring.gen(1) ** 9 * ring.gen(2)
        data = f.to_json()
        exps = [t["exps"] for t in data["terms"]]
        assert exps == [{"2": 2}, {"1": 9, "2": 1}, {"1": 1}]

    def test_roundtrip(self, ring):
        f = ring.gen(2) ** 2 + ring.gen(1).scale(Fraction(1, 2))
        assert GradedPoly.from_json(ring, f.to_json()) == f

import random
from fractions import Fraction

import pytest

from fmcalc import numberring as nr
from fmcalc.errors import (
    DivisionByZero,
    NoSuitablePrimeFound,
    NotEisenstein,
    NotIntegral,
    NotIrreducibleModP,
    NotPrime,
    NotSubtower,
    TowerMismatch,
)


def random_element(tower, rng, denom_bound=1):
    coords = [
        [
            Fraction(rng.randint(-9, 9), rng.randint(1, denom_bound))
            for _ in range(tower.f)
        ]
        for _ in range(tower.e)
    ]
    return nr.FieldElement(tower, coords)


class TestMakeTower:
    def test_canonical_ramified_quadratic(self):
        t = nr.make_tower(2, [0, 1], [-2, 0, 1])
        assert (t.e, t.f, t.q, t.d) == (2, 1, 2, 2)

    def test_canonical_unramified_quadratic(self):
        t = nr.make_tower(2, [1, 1, 1], [0, 1])
        assert (t.e, t.f, t.q, t.d) == (1, 2, 4, 2)

    def test_x2_plus_2_is_irreducible_mod_5(self):
        # squares mod 5 are {0, 1, 4}, so -2 = 3 is not a square
        t = nr.make_tower(5, [2, 0, 1], [0, 1])
        assert t.q == 25

    def test_reducible_polynomial_rejected(self):
        with pytest.raises(NotIrreducibleModP):
            nr.make_tower(5, [1, 0, 1], [0, 1])  # x^2+1 = (x-2)(x+2) mod 5

    def test_non_eisenstein_rejected(self):
        with pytest.raises(NotEisenstein):
            nr.make_tower(2, [0, 1], [-4, 0, 1])  # constant term divisible by p^2
        with pytest.raises(NotEisenstein):
            nr.make_tower(2, [0, 1], [-2, 1, 1])  # middle coefficient a unit

    def test_not_prime_rejected(self):
        with pytest.raises(NotPrime):
            nr.make_tower(6, [0, 1], [0, 1])

    def test_json_roundtrip(self):
        t = nr.make_tower(2, [1, 1, 1], [[-2, 0], [0, 0], [1, 0]])
        t2 = nr.TowerDescriptor.from_json(t.to_json())
        assert t2 == t and t2.to_json() == t.to_json()


class TestFieldArithmetic:
    def setup_method(self):
        self.t = nr.make_tower(2, [0, 1], [-2, 0, 1], "Q2(sqrt2)")

    def test_defining_relation(self):
        th = self.t.theta()
        assert th * th == self.t.from_rational(2)

    def test_two_over_theta(self):
        th = self.t.theta()
        assert (1 / th) * 2 == th

    def test_conjugate_product(self):
        one = self.t.one()
        th = self.t.theta()
        assert (one + th) * (one - th) == self.t.from_rational(-1)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            self.t.one() / self.t.zero()

    def test_tower_mismatch(self):
        other = nr.make_tower(2, [0, 1], [-6, 0, 1])
        with pytest.raises(TowerMismatch):
            self.t.one() + other.one()

    def test_inverse_roundtrip_random(self):
        rng = random.Random(11)
        t3 = nr.make_tower(2, [1, 1, 1], [[-2, 0], [0, 0], [1, 0]])
        for _ in range(40):
            z = random_element(t3, rng, denom_bound=3)
            if z.is_zero():
                continue
            assert z * z.inverse() == t3.one()

    def test_pow(self):
        th = self.t.theta()
        assert th ** 6 == self.t.from_rational(8)
        assert th ** -2 == self.t.from_rational(Fraction(1, 2))
        assert th ** 0 == self.t.one()


class TestIntegralityValuationResidue:
    def test_integrality_examples(self):
        t = nr.make_tower(2, [0, 1], [-2, 0, 1])
        th = t.theta()
        assert not nr.is_integral(th / 2)
        assert nr.is_integral(2 / th)
        assert nr.is_integral(t.one())

    def test_valuation_examples(self):
        t = nr.make_tower(2, [0, 1], [-2, 0, 0, 1])
        assert nr.valuation(t.from_rational(2)) == 3
        assert nr.valuation(t.theta()) == 1
        assert nr.valuation(t.from_rational(2) / t.theta() ** 2) == 1
        assert nr.valuation(t.zero()) == nr.INFINITY

    def test_valuation_additive(self):
        rng = random.Random(5)
        for tower in (
            nr.make_tower(2, [0, 1], [-2, 0, 1]),
            nr.make_tower(3, [0, 1], [-3, 0, 0, 1]),
            nr.make_tower(2, [1, 1, 1], [0, 1]),
        ):
            checked = 0
            while checked < 200:
                a = random_element(tower, rng, denom_bound=4)
                b = random_element(tower, rng, denom_bound=4)
                if a.is_zero() or b.is_zero():
                    continue
                assert nr.valuation(a * b) == nr.valuation(a) + nr.valuation(b)
                checked += 1

    def test_integral_iff_nonnegative_valuation(self):
        rng = random.Random(6)
        tower = nr.make_tower(2, [0, 1], [-2, 0, 1])
        for _ in range(100):
            z = random_element(tower, rng, denom_bound=4)
            if z.is_zero():
                continue
            assert nr.is_integral(z) == (nr.valuation(z) >= 0)

    def test_residue_examples(self):
        t = nr.make_tower(2, [0, 1], [-2, 0, 1])
        assert nr.residue(t.theta()).is_zero()
        assert nr.residue(t.one() + 2 * t.theta()).vec == (1,)
        t3 = nr.make_tower(3, [0, 1], [-3, 0, 0, 1])
        assert nr.residue(t3.from_rational(3) / t3.theta() ** 3).vec == (1,)

    def test_residue_requires_integrality(self):
        t = nr.make_tower(2, [0, 1], [-2, 0, 1])
        with pytest.raises(NotIntegral):
            nr.residue(t.theta() / 2)

    def test_residue_is_ring_homomorphism(self):
        rng = random.Random(7)
        tower = nr.make_tower(2, [1, 1, 1], [0, 1])
        for _ in range(100):
            a = random_element(tower, rng)
            b = random_element(tower, rng)
            assert nr.residue(a + b) == nr.residue(a) + nr.residue(b)
            assert nr.residue(a * b) == nr.residue(a) * nr.residue(b)


class TestEmbed:
    def test_identity_on_one(self, q2, q2_sqrt2):
        assert nr.embed(q2.one(), q2_sqrt2) == q2_sqrt2.one()

    def test_valuation_scales(self, q2, q2_sqrt2):
        z = nr.embed(q2.from_rational(2), q2_sqrt2)
        assert nr.valuation(z) == 2 == 2 * nr.valuation(q2.from_rational(2))

    def test_multiplicative(self, q2, q2_cbrt2):
        rng = random.Random(8)
        for _ in range(50):
            a = q2.from_rational(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            b = q2.from_rational(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            assert nr.embed(a, q2_cbrt2) * nr.embed(b, q2_cbrt2) == nr.embed(
                a * b, q2_cbrt2
            )

    def test_injective_on_sample(self, q2, q2_sqrt2):
        rng = random.Random(9)
        seen = set()
        for _ in range(50):
            a = q2.from_rational(Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
            seen.add(nr.embed(a, q2_sqrt2).coords)
        values = {
            q2.from_rational(Fraction(n, d)).coords
            for n in range(-20, 21)
            for d in range(1, 6)
        }
        assert len(seen) <= len(values)
        # structural injectivity: distinct inputs give distinct outputs
        a = nr.embed(q2.from_rational(3), q2_sqrt2)
        b = nr.embed(q2.from_rational(5), q2_sqrt2)
        assert a != b

    def test_not_subtower(self, q2_sqrt2, q3_sqrt3):
        with pytest.raises(NotSubtower):
            nr.embed(q2_sqrt2.one(), q3_sqrt3)


class TestSplitting:
    def test_x2_plus_1(self):
        rep = nr.find_nonsplit_prime([1, 0, 1], 100)
        assert rep.prime == 3 and rep.factor_degrees == (2,)
        assert not rep.ramified and not rep.splits_completely and rep.equal_degrees

    def test_x3_minus_2(self):
        rep = nr.find_nonsplit_prime([-2, 0, 0, 1], 100)
        assert rep.prime == 7 and rep.factor_degrees == (3,)

    def test_x3_minus_2_scan_details(self):
        # 2 and 3 are ramified, 5 has unequal degrees {1, 2}
        assert nr.analyze_prime((-2, 0, 0, 1), 2).ramified
        assert nr.analyze_prime((-2, 0, 0, 1), 3).ramified
        rep5 = nr.analyze_prime((-2, 0, 0, 1), 5)
        assert rep5.factor_degrees == (1, 2) and not rep5.equal_degrees

    def test_degree_one_always_splits(self):
        with pytest.raises(NoSuitablePrimeFound) as exc:
            nr.find_nonsplit_prime([-1, 1], 30)
        assert all(r.splits_completely for r in exc.value.scan_table)

    def test_degrees_sum_to_degree(self):
        for p in (2, 3, 5, 7, 11, 13):
            rep = nr.analyze_prime((-2, 0, 0, 1), p)
            assert sum(rep.factor_degrees) == 3

    def test_brute_force_oracle(self):
        # -1 is a square mod p iff p = 1 mod 4; first prime where x^2+1 is
        # squarefree and irreducible must therefore be 3
        squares_mod3 = {x * x % 3 for x in range(3)}
        assert 2 not in squares_mod3  # -1 = 2 mod 3
        # 2 is not a cube mod 7
        cubes_mod7 = {x ** 3 % 7 for x in range(7)}
        assert 2 not in cubes_mod7

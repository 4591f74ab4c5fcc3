"""Exact arithmetic: fields, Laurent rings, and the diagonal form."""

import random
from fractions import Fraction

import pytest

from leavitt import LaurentRing, PrimeField, Rationals, smith_normal_form


def test_rationals_basics():
    Q = Rationals()
    a = Q.parse("5/6")
    assert a == Fraction(5, 6)
    assert Q.mul(a, Q.invert(a)) == Q.one()
    assert Q.format(Q.add(a, Fraction(1, 6))) == "1"
    assert Q.is_zero(Q.sub(a, a))
    with pytest.raises(ZeroDivisionError):
        Q.invert(Q.zero())


def test_rationals_trivial_grading():
    Q = Rationals()
    assert Q.has_component(0) and not Q.has_component(1)
    assert Q.component(Fraction(3), 0) == Fraction(3)
    assert Q.component(Fraction(3), 2) == 0
    assert Q.homogeneous_degree(Fraction(3)) == 0
    with pytest.raises(ValueError):
        Q.homogeneous_degree(Fraction(0))


def test_prime_field():
    F = PrimeField(5)
    assert F.invert(2) == 3
    assert F.add(3, 4) == 2
    assert F.neg(1) == 4
    assert F.parse("-1") == 4
    with pytest.raises(ZeroDivisionError):
        F.invert(0)
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_prime_field_inverse_table():
    F = PrimeField(10007)
    rng = random.Random(1)
    for _ in range(50):
        a = rng.randrange(1, 10007)
        assert F.mul(a, F.invert(a)) == 1


def test_prime_field_rejects_composite_order():
    # 10003 = 7 * 1429; there is no field with that many elements
    with pytest.raises(ValueError):
        PrimeField(10003)


def test_field_equality():
    assert Rationals() == Rationals()
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert Rationals() != PrimeField(5)


def test_laurent_construction():
    R = LaurentRing(Rationals(), 2)
    a = R.from_terms({2: Fraction(1), 0: Fraction(1)})
    b = R.monomial(Fraction(1), -2)
    prod = R.mul(a, b)
    # (x^2 + 1) x^-2 = 1 + x^-2
    assert prod == R.from_terms({0: Fraction(1), -2: Fraction(1)})
    with pytest.raises(ValueError):
        R.monomial(Fraction(1), 3)
    with pytest.raises(ValueError):
        R.from_terms({1: Fraction(1)})
    # canonical: zero coefficients never stored
    z = R.sub(a, a)
    assert z.terms == {} and R.is_zero(z)


def test_laurent_ring_axioms():
    R = LaurentRing(PrimeField(7), 1)
    rng = random.Random(2)

    def rand():
        return R.from_terms(
            {e: rng.randrange(7) for e in rng.sample(range(-4, 5), rng.randint(0, 4))}
        )

    for _ in range(200):
        a, b, c = rand(), rand(), rand()
        assert R.mul(a, R.mul(b, c)) == R.mul(R.mul(a, b), c)
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.mul(a, b) == R.mul(b, a)
        assert R.add(a, R.neg(a)) == R.zero()


def test_laurent_units():
    R = LaurentRing(Rationals(), 1)
    x = R.monomial(Fraction(2), 3)
    assert R.is_unit(x)
    assert R.mul(x, R.unit_inverse(x)) == R.one()
    assert not R.is_unit(R.from_terms({0: Fraction(1), 1: Fraction(1)}))
    assert not R.is_unit(R.zero())
    with pytest.raises(ValueError):
        R.unit_inverse(R.zero())


def test_laurent_star_and_components():
    R = LaurentRing(Rationals(), 2)
    a = R.from_terms({-2: Fraction(3), 4: Fraction(1, 2)})
    assert R.star(a) == R.from_terms({2: Fraction(3), -4: Fraction(1, 2)})
    assert R.component(a, 4) == R.monomial(Fraction(1, 2), 4)
    assert R.is_zero(R.component(a, 0))
    assert R.has_component(4) and not R.has_component(3)
    assert R.homogeneous_degree(R.monomial(Fraction(1), -6)) == -6
    with pytest.raises(ValueError):
        R.homogeneous_degree(a)


def test_laurent_divmod_properties():
    R = LaurentRing(Rationals(), 1)
    rng = random.Random(3)

    def rand(nonzero=False):
        while True:
            v = R.from_terms(
                {
                    e: Fraction(rng.randint(-3, 3))
                    for e in rng.sample(range(-3, 4), rng.randint(0, 3))
                }
            )
            if not nonzero or not R.is_zero(v):
                return v

    for _ in range(300):
        a, b = rand(), rand(nonzero=True)
        q, r = R.divmod(a, b)
        assert R.add(R.mul(q, b), r) == a
        assert R.is_zero(r) or R.width(r) < R.width(b)
    assert R.divides(R.monomial(Fraction(1), 1), R.monomial(Fraction(5), 9))
    assert not R.divides(R.from_terms({0: Fraction(1), 1: Fraction(1)}), R.one())


def test_laurent_json_round_trip():
    R = LaurentRing(Rationals(), 3)
    a = R.from_terms({-3: Fraction(1, 3), 6: Fraction(2)})
    assert R.parse(R.to_json(a)) == a
    with pytest.raises(ValueError):
        R.parse({"t": 2, "terms": {}})
    with pytest.raises(ValueError):
        R.parse([1, 2])


# -- smith normal form -------------------------------------------------------


def _mat_mul(a, b, ring):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [
            sum_ring(ring, [ring.mul(a[i][s], b[s][j]) for s in range(k)])
            for j in range(m)
        ]
        for i in range(n)
    ]


def sum_ring(ring, xs):
    acc = ring.zero()
    for x in xs:
        acc = ring.add(acc, x)
    return acc


def _det(m, ring):
    # cofactor expansion; fine for the sizes used here
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = ring.zero()
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = ring.mul(m[0][j], _det(minor, ring))
        acc = ring.add(acc, term if sign > 0 else ring.neg(term))
        sign = -sign
    return acc


def test_snf_permutation_example():
    R = LaurentRing(Rationals(), 1)
    x = R.monomial(Fraction(1), 1)
    m = [[R.zero(), R.one()], [x, R.zero()]]
    u, d, v = smith_normal_form(m, R)
    assert d[0][0] == R.one() and d[1][1] == x
    assert R.is_zero(d[0][1]) and R.is_zero(d[1][0])
    assert _mat_mul(_mat_mul(u, m, R), v, R) == d


def test_snf_rank_deficient():
    R = LaurentRing(Rationals(), 1)
    x = R.monomial(Fraction(1), 1)
    m = [[x, x], [x, x]]
    u, d, v = smith_normal_form(m, R)
    assert d[0][0] == x
    assert all(R.is_zero(d[i][j]) for i in range(2) for j in range(2) if (i, j) != (0, 0))


def test_snf_zero_matrix():
    R = LaurentRing(Rationals(), 2)
    z = R.zero()
    u, d, v = smith_normal_form([[z, z], [z, z]], R)
    assert all(R.is_zero(e) for row in d for e in row)
    assert u == [[R.one(), z], [z, R.one()]]


def test_snf_random_properties():
    rng = random.Random(4)
    for step in (1, 2):
        R = LaurentRing(Rationals(), step)
        for _ in range(40):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            mat = [
                [
                    R.from_terms(
                        {
                            step * e: Fraction(rng.randint(-2, 2))
                            for e in rng.sample(range(-2, 3), rng.randint(0, 2))
                        }
                    )
                    for _ in range(m)
                ]
                for _ in range(n)
            ]
            u, d, v = smith_normal_form([row[:] for row in mat], R)
            # transformation equation
            assert _mat_mul(_mat_mul(u, mat, R), v, R) == d
            # diagonal
            for i in range(n):
                for j in range(m):
                    if i != j:
                        assert R.is_zero(d[i][j])
            # divisibility chain along the diagonal
            diag = [d[i][i] for i in range(min(n, m))]
            for a, b in zip(diag, diag[1:]):
                if not R.is_zero(a):
                    assert R.divides(a, b)
                else:
                    assert R.is_zero(b)
            # U, V invertible: determinants are units
            assert R.is_unit(_det(u, R))
            assert R.is_unit(_det(v, R))

import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctorus.algebra import (
    PolyMatrix,
    TwistedPoly,
    TwistMatrix,
    TwistMismatchError,
    numeric_product,
)
from nctorus.phases import Phase, QQi

from conftest import random_poly


def unit(tw, k, l, power=1):
    return TwistedPoly.scalar(tw, Phase.unit(tw.nslots, tw.slot(k, l), power))


def normal_order_oracle(tw, letters):
    """Independent single-swap rewriting: bubble-sort letters (gen, +-1),
    accumulating one reordering phase per adjacent transposition."""
    letters = list(letters)
    phase = Phase.one(tw.nslots)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            (a, s), (b, t) = letters[i], letters[i + 1]
            if a > b:
                # u_a^s u_b^t = q_{ba}^(-s t) u_b^t u_a^s
                phase = phase.mul(Phase.unit(tw.nslots, tw.slot(b, a), -s * t))
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                changed = True
    exps = [0] * tw.n
    for k, s in letters:
        exps[k] += s
    return TwistedPoly.monomial(tw, exps, phase)


def letters_product(tw, letters):
    total = TwistedPoly.one(tw)
    for k, s in letters:
        total = total * TwistedPoly.generator(tw, k, s)
    return total


@pytest.fixture(scope="module")
def tw():
    return TwistMatrix(
        [
            [0, Fraction(1, 4), Fraction(-1, 3)],
            [Fraction(-1, 4), 0, Fraction(-1, 6)],
            [Fraction(1, 3), Fraction(1, 6), 0],
        ]
    )


class TestTwistMatrix:
    def test_requires_skew_symmetry(self):
        with pytest.raises(ValueError):
            TwistMatrix([[0, Fraction(1, 2)], [Fraction(1, 2), 0]])
        with pytest.raises(ValueError):
            TwistMatrix([[Fraction(1, 3), 0], [0, 0]])

    def test_slot_layout(self, tw):
        assert tw.nslots == 3
        assert tw.slot_pairs == [(0, 1), (0, 2), (1, 2)]
        assert tw.slot_names() == ["q12", "q13", "q23"]


class TestMul:
    def test_normal_ordered_product_has_no_phase(self, tw):
        u1, u2 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 1)
        assert u1 * u2 == TwistedPoly.monomial(tw, (1, 1, 0))

    def test_single_swap(self, tw):
        u1, u2 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 1)
        assert u2 * u1 == unit(tw, 0, 1, -1) * (u1 * u2)

    def test_double_swap_matches_rewriting_oracle(self, tw):
        u1, u3 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 2)
        product = u3 * u3 * u1
        oracle = normal_order_oracle(tw, [(2, 1), (2, 1), (0, 1)])
        assert product == oracle
        # lambda_31^2 = q13^-2
        assert product == unit(tw, 0, 2, -2) * (u1 * u3 * u3)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_words_match_rewriting_oracle(self, tw, seed):
        rng = random.Random(1000 + seed)
        letters = [
            (rng.randrange(tw.n), rng.choice((1, -1))) for _ in range(rng.randint(2, 7))
        ]
        assert letters_product(tw, letters) == normal_order_oracle(tw, letters)

    def test_twist_mismatch_is_an_error(self, tw):
        other = TwistMatrix([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]])
        with pytest.raises(TwistMismatchError):
            TwistedPoly.generator(tw, 0) * TwistedPoly.generator(other, 0)


class TestStar:
    def test_generator(self, tw):
        u1 = TwistedPoly.generator(tw, 0)
        assert u1.star() == TwistedPoly.generator(tw, 0, -1)

    def test_star_matches_reversed_inverse_product(self, tw):
        # star(c u^a) equals the normal form of conj(c) u_n^-an ... u_1^-a1
        rng = random.Random(42)
        for _ in range(12):
            exps = [rng.randint(-3, 3) for _ in range(tw.n)]
            mono = TwistedPoly.monomial(tw, exps, QQi(0, 1))
            letters = []
            for k in reversed(range(tw.n)):
                letters.extend([(k, -1 if exps[k] > 0 else 1)] * abs(exps[k]))
            expected = letters_product(tw, letters).scale(QQi(0, -1))
            assert mono.star() == expected

    def test_involution(self, tw):
        u1, u2, u3 = (TwistedPoly.generator(tw, k) for k in range(3))
        x = u1 * u2 * u3
        assert x.star().star() == x

    def test_antilinearity(self, tw):
        u1, u2 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 1)
        x = (u1 * u2).scale(QQi(0, 1))
        assert x.star() == (u1 * u2).star().scale(QQi(0, -1))


class TestRingOps:
    def test_additive_inverse(self, tw):
        u1 = TwistedPoly.generator(tw, 0)
        assert (u1 + (-u1)).is_zero()

    def test_one_is_neutral(self, tw):
        x = TwistedPoly.generator(tw, 0) + TwistedPoly.generator(tw, 2, -2)
        assert TwistedPoly.one(tw) * x == x
        assert x * TwistedPoly.one(tw) == x

    def test_collecting_terms(self, tw):
        u1, u2 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 1)
        assert (u1 + u2) + u1 == u1.scale(QQi(2)) + u2

    def test_scalar_coercion(self, tw):
        u1 = TwistedPoly.generator(tw, 0)
        assert 2 * u1 == u1 + u1
        assert u1 * Fraction(1, 2) + u1 * Fraction(1, 2) == u1


class TestEvaluate:
    def test_constants_and_characters(self, tw):
        th = tw.theta_float()
        z = [complex(-1), complex(1), complex(1)]
        assert TwistedPoly.one(tw).evaluate(th, z) == pytest.approx(1.0)
        assert TwistedPoly.generator(tw, 0).evaluate(th, z) == pytest.approx(-1.0)

    def test_relation_identity_vanishes(self, tw):
        rng = random.Random(5)
        u1, u2 = TwistedPoly.generator(tw, 0), TwistedPoly.generator(tw, 1)
        relation = u2 * u1 - unit(tw, 0, 1, -1) * (u1 * u2)
        assert relation.is_zero()
        for _ in range(5):
            z = [cmath.exp(2j * cmath.pi * rng.random()) for _ in range(3)]
            assert abs(relation.evaluate(tw.theta_float(), z)) < 1e-9

    def test_rejects_non_skew_numeric_theta(self, tw):
        bad = [[0.0, 0.25, 0.1], [-0.25, 0.0, 0.2], [-0.1, -0.2 + 1e-6, 0.0]]
        with pytest.raises(ValueError):
            TwistedPoly.generator(tw, 0).evaluate(bad, [1, 1, 1])

    @pytest.mark.parametrize("seed", range(6))
    def test_product_against_numeric_oracle(self, tw, seed):
        rng = random.Random(9000 + seed)
        x = random_poly(rng, tw, max_terms=5, exp_range=3, with_phases=True)
        y = random_poly(rng, tw, max_terms=5, exp_range=3, with_phases=True)
        th = tw.theta_float()
        z = [cmath.exp(2j * cmath.pi * rng.random()) for _ in range(3)]
        got = (x * y).evaluate(th, z)
        want = numeric_product(x, y, th, z)
        assert got == pytest.approx(want, abs=1e-9)


class TestPolyMatrix:
    def test_identity_neutral(self, tw):
        rng = random.Random(3)
        entries = [[random_poly(rng, tw, 2, 2) for _ in range(2)] for _ in range(2)]
        x = PolyMatrix(tw, entries)
        eye = PolyMatrix.identity(tw, 2)
        assert eye * x == x
        assert x * eye == x

    def test_adjoint_involution(self, tw):
        rng = random.Random(4)
        x = PolyMatrix(tw, [[random_poly(rng, tw, 2, 2) for _ in range(3)] for _ in range(2)])
        assert x.adjoint().adjoint() == x

    @pytest.mark.parametrize("seed", range(4))
    def test_product_adjoint_reverses(self, tw, seed):
        rng = random.Random(50 + seed)
        x = PolyMatrix(tw, [[random_poly(rng, tw, 2, 2) for _ in range(2)] for _ in range(2)])
        y = PolyMatrix(tw, [[random_poly(rng, tw, 2, 2) for _ in range(2)] for _ in range(2)])
        lhs = (x * y).adjoint()
        # entrywise expansion oracle
        rhs_entries = [
            [
                sum(
                    (y.entry(k, i).star() * x.entry(j, k).star() for k in range(2)),
                    TwistedPoly.zero(tw),
                )
                for j in range(2)
            ]
            for i in range(2)
        ]
        assert lhs == PolyMatrix(tw, rhs_entries)
        assert lhs == y.adjoint() * x.adjoint()

    def test_shape_mismatch(self, tw):
        x = PolyMatrix.identity(tw, 2)
        y = PolyMatrix.identity(tw, 3)
        with pytest.raises(ValueError):
            x * y


# hypothesis strategies for the exact ring axioms, kept small for speed

_coeffs = st.integers(min_value=-2, max_value=2)


@st.composite
def small_polys(draw):
    tw = TwistMatrix([[0, Fraction(1, 3)], [Fraction(-1, 3), 0]])
    n_terms = draw(st.integers(min_value=1, max_value=3))
    total = TwistedPoly.zero(tw)
    for _ in range(n_terms):
        exps = (draw(st.integers(-2, 2)), draw(st.integers(-2, 2)))
        re, im = draw(_coeffs), draw(_coeffs)
        if re == 0 and im == 0:
            re = 1
        total = total + TwistedPoly.monomial(tw, exps, QQi(re, im))
    return total


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_associativity_property(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys())
def test_star_antimultiplicative_property(x, y):
    assert (x * y).star() == y.star() * x.star()


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_distributivity_property(x, y):
    z = TwistedPoly.generator(x.twist, 0) + TwistedPoly.generator(x.twist, 1, -1)
    assert (x + y) * z == x * z + y * z


def test_generator_unitarity_all_twists():
    rng = random.Random(77)
    for _ in range(5):
        n = rng.randint(2, 4)
        theta = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            for l in range(k + 1, n):
                theta[k][l] = Fraction(rng.randint(-11, 11), rng.randint(1, 12))
                theta[l][k] = -theta[k][l]
        tw = TwistMatrix(theta)
        one = TwistedPoly.one(tw)
        for k in range(n):
            u = TwistedPoly.generator(tw, k)
            assert u * u.star() == one
            assert u.star() * u == one
        for k in range(n):
            for l in range(n):
                if k == l:
                    continue
                uk, ul = TwistedPoly.generator(tw, k), TwistedPoly.generator(tw, l)
                lam = unit(tw, min(k, l), max(k, l), 1 if k < l else -1)
                assert uk * ul - lam * (ul * uk) == TwistedPoly.zero(tw)

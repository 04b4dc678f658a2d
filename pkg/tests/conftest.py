import random
from fractions import Fraction

import pytest

from nctorus.algebra import TwistedPoly, TwistMatrix
from nctorus.dynamics import TorusAction
from nctorus.factor_system import from_cleft
from nctorus.phases import Phase, QQi


@pytest.fixture(scope="session")
def q3_twist():
    return TwistMatrix(
        [
            [0, Fraction(1, 4), Fraction(-1, 3)],
            [Fraction(-1, 4), 0, Fraction(-1, 6)],
            [Fraction(1, 3), Fraction(1, 6), 0],
        ]
    )


@pytest.fixture(scope="session")
def q3_action(q3_twist):
    return TorusAction(q3_twist, (2,))


@pytest.fixture(scope="session")
def q3_system(q3_action):
    return from_cleft(q3_action)


@pytest.fixture(scope="session")
def q3_gens(q3_twist):
    return tuple(TwistedPoly.generator(q3_twist, k) for k in range(3))


def random_qqi(rng: random.Random, span: int = 3) -> QQi:
    while True:
        c = QQi(rng.randint(-span, span), rng.randint(-span, span))
        if not c.is_zero():
            return c


def random_poly(
    rng: random.Random,
    twist: TwistMatrix,
    max_terms: int = 6,
    exp_range: int = 3,
    with_phases: bool = False,
) -> TwistedPoly:
    total = TwistedPoly.zero(twist)
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(-exp_range, exp_range) for _ in range(twist.n))
        coeff = random_qqi(rng)
        if with_phases:
            qexp = tuple(rng.randint(-1, 1) for _ in range(twist.nslots))
            phase = Phase(twist.nslots, {(qexp, 0): coeff})
        else:
            phase = Phase.coeff(twist.nslots, coeff)
        total = total + TwistedPoly(twist, {exps: phase})
    return total


def random_skew_scalar(rng: random.Random, twist: TwistMatrix) -> TwistedPoly:
    """Random nonzero skew-adjoint central scalar (star(h) = -h)."""
    nslots = twist.nslots
    kind = rng.randrange(3)
    c = Fraction(rng.randint(1, 4), rng.randint(1, 3)) * rng.choice((1, -1))
    if kind == 0:
        # purely imaginary rational, optionally times a tau power
        phase = Phase.tau(nslots, rng.randint(0, 2), QQi(0, c))
    elif kind == 1 and nslots:
        # i * (q^e + q^-e) is skew because conjugation flips the exponent
        e = [0] * nslots
        e[rng.randrange(nslots)] = rng.randint(1, 2)
        key_p, key_m = (tuple(e), 0), (tuple(-x for x in e), 0)
        phase = Phase(nslots, {key_p: QQi(0, c), key_m: QQi(0, c)})
    else:
        # q^e - q^-e is skew with a real coefficient
        e = [0] * nslots
        if nslots:
            e[rng.randrange(nslots)] = rng.randint(1, 2)
        key_p, key_m = (tuple(e), 0), (tuple(-x for x in e), 0)
        if key_p == key_m:
            phase = Phase.coeff(nslots, QQi(0, c))
        else:
            phase = Phase(nslots, {key_p: QQi(c), key_m: QQi(-c)})
    return TwistedPoly.scalar(twist, phase)

from random import Random

import pytest

from hallmorph.scalar import Scalar
from hallmorph.torus import LAMBDA, PLAIN, TorusError


def mono(ctx, exp, mode=LAMBDA, coef=None):
    return ctx.monomial(exp, coef, mode)


def test_plain_product(hall_a2_q2):
    t = hall_a2_q2.torus
    a = mono(t, (1, 0, 0, 0), PLAIN)
    b = mono(t, (0, 0, 1, 0), PLAIN)
    assert t.t_mult(t.one(PLAIN), a) == a
    assert t.t_mult(a, b) == t.t_mult(b, a) == mono(t, (1, 0, 1, 0), PLAIN)
    c = mono(t, (0, 1, 0, 0), PLAIN)
    assert t.t_mult(a + b, c) == t.t_mult(a, c) + t.t_mult(b, c)


def test_lambda_product_examples(hall_a2_q2):
    t = hall_a2_q2.torus
    e1 = mono(t, (1, 0, 0, 0))
    e3 = mono(t, (0, 0, 1, 0))
    # Lambda_13 = -1 for the default A2 seed
    assert t.tlambda_mult(e1, e3) == mono(t, (1, 0, 1, 0), coef=Scalar.v_power(-1, 2))
    swap = t.tlambda_mult(e3, e1).scale(Scalar.q_power(-1, 2))
    assert t.tlambda_mult(e1, e3) == swap
    inv = mono(t, (-1, 0, 0, 0))
    assert t.tlambda_mult(e1, inv) == t.one()


def test_mode_guards(hall_a2_q2):
    t = hall_a2_q2.torus
    with pytest.raises(TorusError):
        t.t_mult(t.one(PLAIN), t.one(LAMBDA))
    with pytest.raises(TorusError):
        t.tlambda_mult(t.one(PLAIN), t.one(PLAIN))
    with pytest.raises(TorusError):
        t.one(PLAIN) + t.one(LAMBDA)


def test_tlambda_associativity_random(hall_a3_q3):
    t = hall_a3_q3.torus
    rng = Random(3)
    for _ in range(200):
        a, b, c = (
            mono(t, tuple(rng.randint(-2, 2) for _ in range(t.m))) for _ in range(3)
        )
        assert t.tlambda_mult(t.tlambda_mult(a, b), c) == t.tlambda_mult(
            a, t.tlambda_mult(b, c)
        )


def test_tensor_star_trivial(hall_a2_q2):
    t = hall_a2_q2.torus
    zero = (0,) * 4
    one = t.tensor_monomial(zero, zero)
    assert t.tensor_star(one, one) == one
    # zero top blocks: prefactor v^{Lambda(-a2~-b2~, -c2~-d2~)}
    a = t.tensor_monomial((0, 0, 1, 0), (0, 0, 0, 1))
    b = t.tensor_monomial((0, 0, 0, 1), (0, 0, 1, 1))
    lam = hall_a2_q2.seed.lam_form
    left = tuple(-x for x in (0, 0, 1, 1))
    right = tuple(-x for x in (0, 0, 1, 2))
    got = t.tensor_star(a, b)
    expect = t.tensor_monomial(
        (0, 0, 1, 1), (0, 0, 1, 2), Scalar.v_power(lam(left, right), 2)
    )
    assert got == expect


def test_mu_examples(hall_a2_q2):
    t = hall_a2_q2.torus
    zero = (0,) * 4
    assert t.mu(t.tensor_monomial(zero, zero)) == t.one()
    # zero top blocks: mu = X^{a2~ + b2~}
    got = t.mu(t.tensor_monomial((0, 0, 1, 0), (0, 0, 0, 2)))
    assert got == mono(t, (0, 0, 1, 2))
    # pairing with zero: mu(X^{(e1,0)} (x) X^0) = X^{-E~ e1}
    got = t.mu(t.tensor_monomial((1, 0, 0, 0), zero))
    assert got == mono(t, (-1, 0, 1, 0))  # -E~ column 1 = -(1,0,-1,0)


def test_torus_deg(hall_a2_q2):
    t = hall_a2_q2.torus
    assert t.deg(mono(t, (1, 0, 0, 0))) == (1, 0)
    assert t.deg(mono(t, (0, 1, 0, 0))) == (0, 1)
    # deg X^{e_{n+j}} = -(column j of B)
    assert t.deg(mono(t, (0, 0, 1, 0))) == (0, 1)
    assert t.deg(mono(t, (0, 0, 0, 1))) == (-1, 0)
    mixed = mono(t, (1, 0, 0, 0)) + mono(t, (0, 1, 0, 0))
    with pytest.raises(TorusError):
        t.deg(mixed)
    s2 = hall_a2_q2.cat.class_of_label("S2")
    assert t.deg(hall_a2_q2.psi_closed(s2)) == (0, -1)


def test_divide_right(hall_a2_q3):
    t = hall_a2_q3.torus
    rng = Random(8)
    for _ in range(40):
        w = t.zero()
        for _ in range(rng.randint(1, 3)):
            w = w + mono(
                t,
                tuple(rng.randint(-2, 2) for _ in range(t.m)),
                coef=Scalar.v_power(rng.randint(-2, 2), 3),
            )
        if not w:
            continue
        y = mono(t, tuple(rng.randint(-2, 2) for _ in range(t.m))) + mono(
            t, tuple(rng.randint(-2, 2) for _ in range(t.m))
        )
        z = t.tlambda_mult(w, y)
        assert t.divide_right(z, y) == w
    with pytest.raises(TorusError):
        t.divide_right(t.one(), t.zero())

import json
from random import Random

import pytest

from hallmorph import matrices as im
from hallmorph.quiver import (
    QuiverError,
    SeedError,
    ValuedQuiver,
    check_form_lemmas,
    euler_form,
    exchange_data,
    frame_principal,
    load_config,
    sym_form,
)


def test_exchange_data_a2():
    ex = exchange_data(ValuedQuiver.linear(2))
    assert ex.r == ((0, 0), (1, 0))
    assert ex.r_prime == ((0, 1), (0, 0))
    assert ex.b == ((0, 1), (-1, 0))
    assert ex.e == ((1, -1), (0, 1))
    assert ex.e_prime == ((1, 0), (-1, 1))


def test_exchange_data_single_vertex():
    ex = exchange_data(ValuedQuiver.make(1, []))
    assert ex.r == ex.r_prime == ((0,),)
    assert ex.e == ex.e_prime == ((1,),)


def test_exchange_data_kronecker():
    ex = exchange_data(ValuedQuiver.make(2, [(0, 1, 2)]))
    assert ex.b == ((0, 2), (-2, 0))


def test_exchange_data_valued_b2():
    # valuations (1, 2): D R' = R^T D must hold and D B be skew
    ex = exchange_data(ValuedQuiver.make(2, [(0, 1)], valuations=(1, 2)))
    d = im.diagonal((1, 2))
    assert im.mat_mul(d, ex.r_prime) == im.mat_mul(im.transpose(ex.r), d)
    assert im.is_skew(im.mat_mul(d, ex.b))


def test_cyclic_quiver_rejected():
    with pytest.raises(QuiverError):
        exchange_data(ValuedQuiver.make(2, [(0, 1), (1, 0)]))


def test_euler_form_a2():
    q = ValuedQuiver.linear(2)
    assert euler_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (0, 1), (1, 0)) == 0
    assert sym_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (0, 0), (3, -2)) == 0


def test_euler_bilinearity_random():
    rng = Random(2024)
    q = ValuedQuiver.linear(3)
    ex = exchange_data(q)
    for _ in range(100):
        a, ap, b = (tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3))
        assert ex.euler(im.vec_add(a, ap), b) == ex.euler(a, b) + ex.euler(ap, b)
        assert ex.euler(b, im.vec_add(a, ap)) == ex.euler(b, a) + ex.euler(b, ap)


def test_frame_principal_a2():
    seed = frame_principal(ValuedQuiver.linear(2))
    assert seed.btilde == ((0, 1), (-1, 0), (1, 0), (0, 1))
    assert seed.lam == (
        (0, 0, -1, 0),
        (0, 0, 0, -1),
        (1, 0, 0, -1),
        (0, 1, 1, 0),
    )
    assert im.is_skew(seed.lam)
    assert seed.is_compatible()
    assert seed.appendix_compatible()
    assert im.mat_sub(seed.etilde_prime, seed.etilde) == seed.btilde


def test_frame_single_vertex():
    seed = frame_principal(ValuedQuiver.make(1, []))
    assert seed.btilde == ((0,), (1,))
    assert seed.lam == ((0, -1), (1, 0))
    assert seed.is_compatible()


def test_frame_appendix_identity():
    # -Lambda B(Q~) = diag(d) with B(Q~) = [[B, -I], [I, 0]]
    quiver = ValuedQuiver.linear(3)
    seed = frame_principal(quiver)
    n = quiver.n
    b = exchange_data(quiver).b
    expect = im.vstack(
        im.hstack(b, im.mat_neg(im.identity(n))),
        im.hstack(im.identity(n), im.zeros(n, n)),
    )
    assert seed.b_full == expect
    assert im.mat_neg(im.mat_mul(seed.lam, seed.b_full)) == im.diagonal(
        seed.framed.valuations
    )


def test_lambda_override_validation():
    quiver = ValuedQuiver.linear(2)
    good = frame_principal(quiver).lam
    assert frame_principal(quiver, lam=good).lam == good
    bad_skew = tuple(tuple(1 for _ in row) for row in good)
    with pytest.raises(SeedError):
        frame_principal(quiver, lam=bad_skew)
    # skew but incompatible
    bad = [list(r) for r in good]
    bad[0][2] += 1
    bad[2][0] -= 1
    with pytest.raises(SeedError):
        frame_principal(quiver, lam=im.freeze(bad))


def test_form_lemmas_trivial_and_examples():
    seed = frame_principal(ValuedQuiver.linear(2))
    n = seed.n
    assert check_form_lemmas(seed, (0,) * n, (0,) * n).ok
    assert check_form_lemmas(seed, (1, 0), (0, 1)).ok


@pytest.mark.parametrize("n", [2, 3])
def test_form_lemmas_random(n):
    seed = frame_principal(ValuedQuiver.linear(n))
    rng = Random(99)
    for _ in range(100):
        a = tuple(rng.randint(-3, 3) for _ in range(n))
        b = tuple(rng.randint(-3, 3) for _ in range(n))
        rep = check_form_lemmas(seed, a, b)
        assert rep.ok, rep.failures()


def test_config_round_trip(tmp_path):
    quiver = ValuedQuiver.make(3, [(0, 1), (1, 2, 2)])
    seed = frame_principal(quiver)
    cfg = quiver.to_config(q=3, lam=seed.lam)
    path = tmp_path / "quiver.json"
    path.write_text(json.dumps(cfg))
    loaded, q, lam = load_config(path)
    assert loaded == quiver
    assert q == 3
    assert lam == seed.lam


def test_config_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"arrows": [[1, 2]]}))
    with pytest.raises(QuiverError):
        load_config(path)


def test_topological_order():
    quiver = ValuedQuiver.make(4, [(2, 0), (0, 1), (3, 1)])
    order = quiver.topological_order()
    pos = {v: i for i, v in enumerate(order)}
    for (i, j, _) in quiver.arrows:
        assert pos[i] < pos[j]


def test_rep_finiteness_flag():
    assert exchange_data(ValuedQuiver.linear(3)).is_rep_finite()
    assert not exchange_data(ValuedQuiver.make(2, [(0, 1, 2)])).is_rep_finite()

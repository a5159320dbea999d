import itertools
from random import Random

from hallmorph.hall import MHElement
from hallmorph.repcat import ZERO_CLASS
from hallmorph.scalar import Scalar
from hallmorph.suites import TermSampler, SuiteConfig


def label_map(hall, x):
    return {hall.term_str(t): c for t, c in x.terms.items()}


def test_k_relations(hall_a2_q2):
    hall = hall_a2_q2
    assert hall.mult_untwisted(hall.K((1, 0)), hall.K((0, 1))) == hall.K((1, 1))
    assert hall.mult_untwisted(hall.K((2, -1)), hall.K((-2, 1))) == hall.one()
    # (x1): K_a star K_b = v^{Lambda(a~, b~)} K_{a+b}
    got = hall.mult_twisted(hall.K((1, 0)), hall.K((0, 1)))
    lam = hall.seed.lam_form(hall.seed.tilde((1, 0)), hall.seed.tilde((0, 1)))
    assert got == hall.K((1, 1)).scale(Scalar.v_power(lam, 2))


def test_shift_relations(hall_a2_q2):
    hall = hall_a2_q2
    p1 = hall.X(pmult=(1, 0))
    p2 = hall.X(pmult=(0, 1))
    both = hall.X(pmult=(1, 1))
    assert hall.mult_untwisted(p1, p2) == both
    assert hall.mult_untwisted(p2, p1) == both


def test_h5_h6_examples(hall_a2_q2):
    hall = hall_a2_q2
    cat = hall.cat
    s1 = cat.class_of_label("S1")
    # (h6) with Hom(P2, S1) = 0 and <p2, s1> = 0: clean pass-through
    got = hall.mult_untwisted(hall.X(pmult=(0, 1)), hall.X(s1))
    assert got == hall.X(s1, (0, 1))
    # (h5)
    assert hall.mult_untwisted(hall.X(s1), hall.X(pmult=(0, 1))) == hall.X(s1, (0, 1))


def test_h4_example_twisted(hall_a2_q2):
    hall = hall_a2_q2
    cat = hall.cat
    s1, s2 = cat.class_of_label("S1"), cat.class_of_label("S2")
    got = hall.mult_twisted(hall.X(s1), hall.X(s2))
    qinv = Scalar.q_power(-1, 2)
    expect = (
        hall.X(cat.class_of_label("P1")).scale(qinv)
        + hall.X(cat.make_class([("S1", 1), ("S2", 1)])).scale(qinv)
    )
    assert got == expect


def test_comult_examples(hall_a2_q2):
    hall = hall_a2_q2
    cat = hall.cat
    # Delta(K_a) = 1 (x) K_a
    ka = hall.K((1, -2))
    d = hall.comult(ka)
    assert d.terms == {(hall.term(), hall.term((1, -2), ZERO_CLASS, None)): hall.one_scalar()}
    # Delta(X_S1) = X_S1 (x) 1 + 1 (x) X_S1
    s1 = cat.class_of_label("S1")
    d = hall.comult(hall.X(s1))
    assert d.terms == {
        (hall.term(None, s1, None), hall.term()): hall.one_scalar(),
        (hall.term(), hall.term(None, s1, None)): hall.one_scalar(),
    }
    # Delta(X_P1) has the extra q^{-1} X_S1 (x) X_S2 term
    p1 = cat.class_of_label("P1")
    d = hall.comult(hall.X(p1))
    s2 = cat.class_of_label("S2")
    key = (hall.term(None, s1, None), hall.term(None, s2, None))
    assert d.terms[key] == Scalar.q_power(-1, 2)
    assert len(d.terms) == 3


def test_tensor_mult_example(hall_a2_q2):
    hall = hall_a2_q2
    cat = hall.cat
    s1, s2 = cat.class_of_label("S1"), cat.class_of_label("S2")
    # (1 (x) K_a) * (1 (x) K_b) = 1 (x) K_{a+b}
    x = hall.tensor(hall.term(), hall.term((1, 0), ZERO_CLASS, None))
    y = hall.tensor(hall.term(), hall.term((0, 1), ZERO_CLASS, None))
    got = hall.tensor_mult_untwisted(x, y)
    assert got.terms == {
        (hall.term(), hall.term((1, 1), ZERO_CLASS, None)): hall.one_scalar()
    }
    # (X_S1 (x) 1) * (1 (x) X_S2) = q^{<s1,s2>} X_S1 (x) X_S2
    x = hall.tensor(hall.term(None, s1, None), hall.term())
    y = hall.tensor(hall.term(), hall.term(None, s2, None))
    got = hall.tensor_mult_untwisted(x, y)
    key = (hall.term(None, s1, None), hall.term(None, s2, None))
    assert got.terms == {key: Scalar.q_power(-1, 2)}
    # twisted version adds v^{Lambda(E'~ s1, E'~ s2)} (which is 0 here)
    got_tw = hall.tensor_mult_twisted(x, y)
    assert got_tw.terms == {key: Scalar.q_power(-1, 2)}


def test_deg_mh(hall_a2_q2):
    hall = hall_a2_q2
    s2 = hall.cat.class_of_label("S2")
    assert hall.deg_mh(hall.term((1, 0), ZERO_CLASS, None)) == (0, 0, -1, 0)
    assert hall.deg_mh(hall.term(None, s2, None)) == (0, 1, 0, 0)
    assert hall.deg_mh(hall.term(None, ZERO_CLASS, (0, 1))) == (0, -1, 0, 0)


def test_psi_examples(hall_a2_q2):
    hall = hall_a2_q2
    t = hall.torus
    s2 = hall.cat.class_of_label("S2")
    got = hall.psi_closed(s2)
    expect = t.monomial((1, -1, 0, 1)) + t.monomial((0, -1, 0, 0))
    assert got == expect
    assert hall.psi_pipeline(hall.X(s2)) == expect
    assert hall.psi_pipeline(hall.X(pmult=(0, 1))) == t.monomial((0, 1, 0, 0))
    assert hall.psi_pipeline(hall.K((2, -1))) == t.monomial((0, 0, 2, -1))


def test_cc_character_examples(hall_a2_q2):
    hall = hall_a2_q2
    t = hall.torus
    # cc(0, P) = X^{t_P}
    assert hall.cc_character(ZERO_CLASS, (1, 0)) == t.monomial((1, 0, 0, 0))
    p1 = hall.cat.class_of_label("P1")
    cc = hall.cc_character(p1)
    assert set(cc.terms) == {(0, -1, 1, 1), (-1, -1, 1, 0), (-1, 0, 0, 0)}
    assert all(c == hall.one_scalar() for c in cc.terms.values())
    # Lemma: E'~ p = t_P for the principal framing, so cc = psi_closed
    s2 = hall.cat.class_of_label("S2")
    assert hall.cc_character(s2) == hall.psi_closed(s2)


def test_c2_vectors(hall_a2_q2):
    hall = hall_a2_q2
    s1 = hall.cat.class_of_label("S1")
    e1, e2 = (1, 0), (0, 1)
    assert hall.dim_vec_c2(hall.c2_object(kmult=e1)) == (0, 0, 1, 1)
    assert hall.dim_vec_c2(hall.c2_object(zmult=e1)) == (-1, -1, 0, 0)
    assert hall.dim_vec_c2(hall.c2_object(mcls=s1)) == (1, 0, 1, 1)
    assert hall.ind_vec(hall.c2_object(kmult=e2)) == (0, 0, 0, 1)
    assert hall.ind_vec(hall.c2_object(mcls=s1)) == (1, -1, 0, 1)
    assert hall.ind0(hall.c2_object(mcls=s1)) == (1, -1)
    # ind(C_{P_i}) = e_i
    p1 = hall.cat.class_of_label("P1")
    assert hall.ind_vec(hall.c2_object(mcls=p1)) == (1, 0, 0, 0)


def test_gradedness_and_associativity(hall_a3_q2):
    hall = hall_a3_q2
    rng = Random(17)
    sampler = TermSampler(hall, SuiteConfig(term_total=2), rng)
    for _ in range(30):
        t1, t2 = sampler.term(), sampler.term()
        prod = hall.mult_untwisted(
            MHElement.single(t1, hall.one_scalar()),
            MHElement.single(t2, hall.one_scalar()),
        )
        want = tuple(
            a + b for a, b in zip(hall.deg_mh(t1), hall.deg_mh(t2))
        )
        assert all(hall.deg_mh(t) == want for t in prod.terms)
    for _ in range(25):
        x, y, z = (sampler.element() for _ in range(3))
        assert hall.mult_twisted(hall.mult_twisted(x, y), z) == hall.mult_twisted(
            x, hall.mult_twisted(y, z)
        )


def test_psi_multiplicative_sample(hall_a3_q3):
    hall = hall_a3_q3
    rng = Random(23)
    sampler = TermSampler(hall, SuiteConfig(term_total=2), rng)
    t = hall.torus
    for _ in range(20):
        x, y = sampler.element(), sampler.element()
        assert hall.psi_pipeline(hall.mult_twisted(x, y)) == t.tlambda_mult(
            hall.psi_pipeline(x), hall.psi_pipeline(y)
        )


def test_comult_algebra_map_sample(hall_a2_q3):
    hall = hall_a2_q3
    rng = Random(29)
    sampler = TermSampler(hall, SuiteConfig(term_total=2), rng)
    for _ in range(20):
        x, y = sampler.element(), sampler.element()
        assert hall.comult(hall.mult_untwisted(x, y)) == hall.tensor_mult_untwisted(
            hall.comult(x), hall.comult(y)
        )
        assert hall.comult(hall.mult_twisted(x, y)) == hall.tensor_mult_twisted(
            hall.comult(x), hall.comult(y)
        )


def test_integration_multiplicative_sample(hall_a3_q2):
    hall = hall_a3_q2
    rng = Random(31)
    sampler = TermSampler(hall, SuiteConfig(term_total=2), rng)
    t = hall.torus
    for _ in range(25):
        x, y = sampler.element(), sampler.element()
        assert hall.integrate(hall.mult_untwisted(x, y)) == t.t_mult(
            hall.integrate(x), hall.integrate(y)
        )

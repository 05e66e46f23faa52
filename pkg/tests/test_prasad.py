from fractions import Fraction

import pytest

from latcount.interval import RealInterval
from latcount.liedata import OUTER_2, outer2_signs, root_system, with_form
from latcount.numfield import field_from_polynomial
from latcount.pisot_tower import (
    fixed_signature_sequence,
    quadratic_extension,
    tower_lookup,
)
from latcount.prasad import (
    CovolumeResult,
    abs_norm_bound,
    covolume,
    covolume_synthetic,
    covolume_upper_c1,
    dedekind_zeta_partial,
    finite_group_order,
    local_factor,
    prime_splitting,
)

from oracles import (
    dirichlet_l2_bracket,
    sl2_order_brute,
    sp4_order_f2,
    su3_order_f2,
    zeta2_bracket,
)

A1 = root_system("A", 1)
C2 = root_system("C", 2)


def test_orders_match_brute_force():
    for q in (2, 3, 4, 5):
        assert finite_group_order(A1, q) == sl2_order_brute(q)
    assert finite_group_order(C2, 2) == sp4_order_f2()


def test_outer_order_su3():
    outer_a2 = with_form(root_system("A", 2), OUTER_2)
    signs = outer2_signs(outer_a2)
    assert finite_group_order(outer_a2, 2, signs) == su3_order_f2() == 216


def test_order_pins_and_divisibility():
    a2 = root_system("A", 2)
    assert finite_group_order(a2, 2) == 168
    assert finite_group_order(a2, 3) == 5616
    for data in (A1, C2, a2, root_system("G", 2)):
        n_pos = (data.dim - data.rank) // 2
        for q in (2, 3, 4):
            assert finite_group_order(data, q) % q ** n_pos == 0


def test_order_rejections():
    with pytest.raises(ValueError):
        finite_group_order(A1, 1)
    with pytest.raises(ValueError):
        finite_group_order(C2, 2, signs=(-1,))
    with pytest.raises(ValueError):
        finite_group_order(A1, 2, signs=(0,))


def test_local_factor():
    assert local_factor(A1, 2) == Fraction(4, 3)
    assert local_factor(A1, 4) == Fraction(16, 15)
    assert local_factor(C2, 2) == Fraction(64, 45)
    for q in (2, 3, 5):
        assert local_factor(C2, q) > 1


def test_prime_splitting_golden():
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    inert = prime_splitting(k, 2)
    assert inert.residue_degrees == (2,) and not inert.ramified
    ram = prime_splitting(k, 5)
    assert ram.ramified and not ram.conservative
    split = prime_splitting(k, 11)
    assert split.residue_degrees == (1, 1)


def test_prime_splitting_conservative_flag():
    # x^2-5 has disc(Z[theta]) = 20; with the true field disc 5 supplied,
    # p = 2 is an index obstruction only
    with_disc = field_from_polynomial("x^2-5", known_disc=5)
    sp = prime_splitting(with_disc, 2)
    assert sp.ramified and sp.conservative
    without = field_from_polynomial("x^2-5")
    sp2 = prime_splitting(without, 2)
    assert sp2.ramified and not sp2.conservative


def test_prime_splitting_cubic():
    k = field_from_polynomial("x^3-x-1")
    assert prime_splitting(k, 23).ramified
    assert prime_splitting(k, 2).residue_degrees == (3,)
    for p in (3, 7, 13, 29):
        sp = prime_splitting(k, p)
        assert sum(sp.residue_degrees) == 3


def test_zeta_rationals_pi_squared_over_six():
    q = field_from_polynomial("x-1")
    iv = dedekind_zeta_partial(q, 2, 10 ** 4)
    oracle = RealInterval(*zeta2_bracket(5000))
    assert iv.intersect(oracle) is not None
    assert iv.width() < Fraction(1, 10 ** 3)
    with pytest.raises(ValueError):
        dedekind_zeta_partial(q, 1, 100)
    with pytest.raises(ValueError):
        dedekind_zeta_partial(q, 2, 1)


def test_zeta_nesting():
    q = field_from_polynomial("x-1")
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    for field in (q, k):
        coarse = dedekind_zeta_partial(field, 2, 10 ** 3)
        fine = dedekind_zeta_partial(field, 2, 10 ** 4)
        assert coarse.encloses(fine)


def test_zeta_golden_against_dirichlet_factorization():
    # zeta_k(2) = zeta(2) L(2, chi_5) for k = Q(sqrt 5)
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    iv = dedekind_zeta_partial(k, 2, 10 ** 4)
    chi5 = (0, 1, -1, -1, 1)
    oracle = RealInterval(*zeta2_bracket(4000)) * RealInterval(
        *dirichlet_l2_bracket(chi5, 5, 4000)
    )
    assert iv.intersect(oracle) is not None


def test_zeta_thread_determinism():
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    one = dedekind_zeta_partial(k, 2, 10 ** 5, threads=1)
    four = dedekind_zeta_partial(k, 2, 10 ** 5, threads=4)
    assert one.lo == four.lo and one.hi == four.hi


def test_covolume_rationals_a1():
    q = field_from_polynomial("x-1")
    res = covolume(q, None, A1, prime_bound=10 ** 4)
    assert res.value.contains(Fraction(1, 24))
    assert res.value.width() < Fraction(1, 10 ** 4)
    assert res.factor_product().encloses(res.value)
    assert res.disc_factor.contains(1)
    assert res.prime_bound_used == 10 ** 4


def test_covolume_lambda_bracket():
    q = field_from_polynomial("x-1")
    res = covolume(q, None, A1, p0=2, prime_bound=10 ** 3)
    assert res.lambda_bound.lo == 1 and res.lambda_bound.hi == 8
    assert res.value.hi <= res.factor_product().hi


def test_covolume_outer_needs_extension():
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    outer_a2 = with_form(root_system("A", 2), OUTER_2)
    with pytest.raises(ValueError):
        covolume(k, None, outer_a2, prime_bound=100)
    theta = k.element([0, 1])
    ext = quadratic_extension(k, theta)
    assert abs_norm_bound(ext) == 1
    res = covolume(k, ext, outer_a2, prime_bound=100)
    # 5^(dim/2) = 625 times the bracket [1, (4^d |N|)^(s/2)] = [1, 1024]
    assert res.disc_factor.lo == 625
    assert res.disc_factor.hi == 640000


def test_covolume_thread_determinism():
    k = field_from_polynomial("x^2-x-1", known_disc=5)
    one = covolume(k, None, A1, prime_bound=10 ** 4, threads=1)
    four = covolume(k, None, A1, prime_bound=10 ** 4, threads=4)
    assert one.value.lo == four.value.lo and one.value.hi == four.value.hi


def test_c1_martinet_pin():
    entry = tower_lookup("martinet")[0]
    c1 = covolume_upper_c1(entry.rd_constant, None, A1, 2)
    assert Fraction("11480.34") < c1.lo
    assert c1.hi < Fraction("11480.37")
    # pi^2 cancels in the A1, p0 = 2 case: c1 = c0^(3/2) / 3
    closed = entry.rd_constant.pow_frac(Fraction(3, 2), 160) * Fraction(1, 3)
    assert c1.intersect(closed) is not None
    with pytest.raises(ValueError):
        covolume_upper_c1(
            entry.rd_constant, None, with_form(root_system("A", 2), OUTER_2), 2
        )


def test_synthetic_upper_endpoint_matches_c1_power():
    entry = tower_lookup("martinet")[0]
    seq = fixed_signature_sequence(entry, t=1, levels=3)
    c1 = covolume_upper_c1(seq[0].rd_bound, None, A1, 2)
    for synth in seq:
        res = covolume_synthetic(synth, A1, 2)
        assert isinstance(res, CovolumeResult)
        assert res.value.hi == c1.hi ** synth.degree
        assert res.value.lo > 0
        assert res.lambda_bound.lo == 1
        assert res.euler_factor.lo == 1


def test_synthetic_euler_true_value_inside():
    # the bracketed Euler range [1, (pi^2/6)^(d r)] must hold a concrete
    # zeta product: zeta(2) for the rationals sits inside [1, pi^2/6]
    entry = tower_lookup("martinet")[0]
    synth = fixed_signature_sequence(entry, t=1, levels=1)[0]
    res = covolume_synthetic(synth, A1, 2)
    z2 = RealInterval(*zeta2_bracket(2000))
    assert res.euler_factor.lo <= z2.lo
    per_degree_hi = RealInterval.point(res.euler_factor.hi).nth_root(
        synth.degree, 64
    )
    assert z2.hi <= per_degree_hi.hi * (1 + Fraction(1, 10 ** 6))

import random
from fractions import Fraction

import pytest

from latcount.errors import (
    AlphaPossiblySquare,
    AlphaZero,
    InvalidT,
    NotTotallyReal,
    ReduciblePolynomial,
    SearchExhausted,
)
from latcount.interval import RealInterval
from latcount.numfield import element_norm, field_from_polynomial
from latcount.pisot_tower import (
    certified_signs,
    delta_for_field,
    delta_universal,
    find_pisot,
    fixed_signature_sequence,
    pisot_product_alpha,
    quadratic_extension,
    reverify_certificate,
    splitting_pattern,
    tower_catalog,
    tower_degrees,
    tower_lookup,
)


def _golden():
    return field_from_polynomial("x^2-x-1", known_disc=5)


def _assert_pisot_shape(cert):
    k = cert.field
    d = k.degree
    big = cert.enclosures[cert.place_index]
    assert big.lo > 1
    for j, iv in enumerate(cert.enclosures):
        if j != cert.place_index:
            assert iv.hi < 1 and iv.lo > -1
    # v1 <= 2^(d-1) sqrt(D), compared via squares to stay exact
    assert big.hi ** 2 <= 4 ** (d - 1) * k.abs_disc


def test_golden_certificate():
    k = _golden()
    cert = find_pisot(k)
    assert cert.element.coords == (1, -1)
    assert cert.norm_one_minus == -1
    _assert_pisot_shape(cert)
    assert Fraction("8.20") < cert.delta_bound.lo
    assert cert.delta_bound.hi < Fraction("8.22")
    assert reverify_certificate(cert)


def test_certificate_other_place():
    k = _golden()
    cert = find_pisot(k, place_index=1)
    _assert_pisot_shape(cert)
    assert reverify_certificate(cert)
    with pytest.raises(ValueError):
        find_pisot(k, place_index=2)


def test_sqrt3_certificate():
    k = field_from_polynomial("x^2-3", known_disc=12)
    cert = find_pisot(k)
    _assert_pisot_shape(cert)
    assert cert.norm_one_minus == element_norm(1 - cert.element)
    assert reverify_certificate(cert)


def test_not_totally_real():
    with pytest.raises(NotTotallyReal):
        find_pisot(field_from_polynomial("x^2+1"))
    with pytest.raises(NotTotallyReal):
        find_pisot(field_from_polynomial("x-1"))
    with pytest.raises(NotTotallyReal):
        pisot_product_alpha(field_from_polynomial("x^2+1"), 1)


def test_random_quartic_certificates():
    rng = random.Random(501)
    done = 0
    for _ in range(200):
        a = rng.randint(3, 12)
        b = rng.randint(1, (a * a) // 4 - 1) if a * a > 4 else 1
        try:
            k = field_from_polynomial([b, 0, -a, 0, 1])
        except ReduciblePolynomial:
            continue
        if k.signature != (4, 0):
            continue
        try:
            cert = find_pisot(k, search_radius=3)
        except SearchExhausted:
            continue
        _assert_pisot_shape(cert)
        assert reverify_certificate(cert)
        done += 1
        if done == 6:
            return
    raise AssertionError(f"only {done} quartic certificates found")


def test_certified_signs_and_pattern():
    k = _golden()
    theta = k.element([0, 1])
    assert certified_signs(k, theta) == (-1, 1)
    assert splitting_pattern(k, theta) == ("nonsplit", "split")
    assert certified_signs(k, k.element([2, -1])) == (1, 1)
    with pytest.raises(AlphaZero):
        certified_signs(k, k.zero())


def test_product_alpha_sign_counts():
    k = _golden()
    for t in (1, 2):
        alpha, signs = pisot_product_alpha(k, t)
        assert sum(1 for s in signs if s < 0) == t
        assert splitting_pattern(k, alpha).count("nonsplit") == t
    with pytest.raises(InvalidT):
        pisot_product_alpha(k, 0)
    with pytest.raises(InvalidT):
        pisot_product_alpha(k, 3)


def test_quadratic_extension_golden():
    k = _golden()
    theta = k.element([0, 1])
    ext = quadratic_extension(k, theta)
    assert ext.t == 1
    assert ext.disc_bound == 400           # ceil(D^2 4^d |N|) = 25 * 16 * 1
    assert ext.sign_pattern == (-1, 1)
    # rd cap is the better of the two routes; here the disc route wins
    assert Fraction("4.47") < ext.rd_bound.lo
    assert ext.rd_bound.hi < Fraction("4.48")
    assert ext.rd_bound.hi ** (2 * k.degree) <= ext.disc_bound + 1


def test_quadratic_extension_rationals():
    q = field_from_polynomial("x-1")
    ext = quadratic_extension(q, q.element([-1]))
    assert ext.t == 1
    assert ext.disc_bound == 4             # 1 * 4 * |N(-1)|
    assert ext.rd_bound.lo <= 2 <= ext.rd_bound.hi ** 2 * 2


def test_quadratic_extension_rejections():
    k = _golden()
    with pytest.raises(AlphaZero):
        quadratic_extension(k, k.zero())
    theta = k.element([0, 1])
    with pytest.raises(AlphaPossiblySquare):
        quadratic_extension(k, theta * theta)
    with pytest.raises(AlphaPossiblySquare):
        quadratic_extension(k, k.element([4, 0]))


def test_nonsplit_counts_match_t_random():
    rng = random.Random(907)
    fields = [
        _golden(),
        field_from_polynomial("x^2-3", known_disc=12),
        field_from_polynomial("x^2-x-3"),
    ]
    for _ in range(30):
        k = rng.choice(fields)
        t = rng.randint(1, k.degree)
        alpha, _ = pisot_product_alpha(k, t)
        ext = quadratic_extension(k, alpha)
        assert ext.t == t
        assert ext.sign_pattern.count(-1) == t


def test_delta_values():
    k = _golden()
    d_field = delta_for_field(k, 96)
    assert Fraction("1.30") < d_field.lo and d_field.hi < Fraction("1.31")
    # defining inequality: 3^(d-1) sqrt(D) + (3/2)^(d-1) <= D^delta
    lhs = RealInterval.point(5).sqrt(160) * 3 + Fraction(3, 2)
    rhs = RealInterval.point(5).pow_interval(d_field, 160)
    assert lhs.lo <= rhs.hi
    d_univ = delta_universal(96)
    assert Fraction("2.93") < d_univ.lo and d_univ.hi < Fraction("2.94")
    assert d_univ.lo > d_field.hi


def test_tower_catalog():
    entries = tower_catalog()
    names = {e.name for e in entries}
    assert {"martinet", "hajir-maire", "golod-shafarevich"} <= names
    for e in entries:
        assert e.rd_constant.lo > 1
        assert e.base_degree >= 1
    martinet = tower_lookup("martinet")[0]
    assert martinet.rd_constant.lo > 1058 and martinet.rd_constant.hi < 1059
    assert tower_lookup("no-such-tower") == []


def test_tower_degrees_double():
    entry = tower_lookup("martinet")[0]
    degs = tower_degrees(entry, 4)
    assert len(degs) == 4
    assert all(b == 2 * a for a, b in zip(degs, degs[1:]))
    assert degs[0] == entry.base_degree


def test_fixed_signature_sequence_level_independent():
    entry = tower_lookup("martinet")[0]
    seq = fixed_signature_sequence(entry, t=1, levels=3)
    assert len(seq) == 3
    assert [s.level for s in seq] == [0, 1, 2]
    assert [s.degree for s in seq] == [2 * d for d in tower_degrees(entry, 3)]
    assert all(s.r2 == 1 for s in seq)
    first = seq[0].rd_bound
    assert all(s.rd_bound == first for s in seq[1:])
    with pytest.raises(InvalidT):
        fixed_signature_sequence(entry, t=0)

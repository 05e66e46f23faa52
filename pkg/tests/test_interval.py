import random
from fractions import Fraction

import pytest
from mpmath import mp

from latcount.interval import (
    ComplexBox,
    RealInterval,
    decimal_str,
    exp_fraction,
    interval_strs,
    iroot_ceil,
    iroot_floor,
    ln_fraction,
    log2_fraction,
    pi_interval,
    round_down,
    round_up,
)

PI_50 = Fraction("3.14159265358979323846264338327950288419716939937511")


def test_exact_ring_ops():
    rng = random.Random(11)

    def rand_interval():
        p = Fraction(rng.randint(-80, 120), rng.randint(1, 9))
        q = Fraction(rng.randint(-80, 120), rng.randint(1, 9))
        return RealInterval(min(p, q), max(p, q))

    for _ in range(200):
        a = rand_interval()
        b = rand_interval()
        x = a.lo + (a.hi - a.lo) / 3
        y = b.lo + (b.hi - b.lo) / 2
        assert (a + b).contains(x + y)
        assert (a - b).contains(x - y)
        assert (a * b).contains(x * y)
        assert (-a).contains(-x)


def test_rounding_directions():
    q = Fraction(1, 3)
    assert round_down(q, 8) <= q <= round_up(q, 8)
    assert round_up(q, 8) - round_down(q, 8) <= Fraction(1, 256)
    assert round_down(Fraction(1, 2), 4) == Fraction(1, 2)


def test_iroot():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 10 ** 12)
        k = rng.randint(1, 6)
        f = iroot_floor(n, k)
        c = iroot_ceil(n, k)
        assert f ** k <= n < (f + 1) ** k
        assert (c - 1) ** k < n <= c ** k


def test_pi_and_transcendentals():
    pi = pi_interval(160)
    assert pi.contains(PI_50)
    assert pi.width() < Fraction(1, 2 ** 150)
    mp.prec = 250
    for q in (Fraction(1, 3), Fraction(7, 2), Fraction(-2, 5)):
        iv = exp_fraction(q, 128)
        ref = Fraction(mp.nstr(mp.exp(mp.mpf(q.numerator) / q.denominator), 60))
        assert abs(iv.mid() - ref) < Fraction(1, 10 ** 20)
        assert iv.width() < Fraction(1, 2 ** 120)
    for q in (Fraction(2), Fraction(1, 7), Fraction(355, 113)):
        iv = ln_fraction(q, 128)
        ref = Fraction(mp.nstr(mp.log(mp.mpf(q.numerator) / q.denominator), 60))
        assert abs(iv.mid() - ref) < Fraction(1, 10 ** 20)
        assert iv.width() < Fraction(1, 2 ** 120)
    l2 = log2_fraction(Fraction(8), 128)
    assert l2.contains(Fraction(3))


def test_interval_functions_enclose():
    rng = random.Random(23)
    mp.prec = 300
    for _ in range(40):
        q = Fraction(rng.randint(1, 500), rng.randint(1, 50))
        iv = RealInterval.point(q)
        s = iv.sqrt(128)
        assert s.lo * s.lo <= q <= s.hi * s.hi
        r = iv.nth_root(3, 128)
        assert r.lo ** 3 <= q <= r.hi ** 3
        p = iv.pow_frac(Fraction(2, 3), 128)
        assert (p.lo ** 3) <= q ** 2 <= (p.hi ** 3)
        rec = iv.recip(128)
        assert rec.contains(1 / q)


def test_pow_int_and_div():
    iv = RealInterval(Fraction(-3, 2), Fraction(2))
    assert iv.pow_int(2, 64).encloses(RealInterval(0, Fraction(9, 4)))
    with pytest.raises(ZeroDivisionError):
        iv.recip(64)
    a = RealInterval(2, 3)
    b = RealInterval(4, 5)
    d = a.div(b, 96)
    assert d.lo <= Fraction(2, 5) + Fraction(1, 2 ** 90)
    assert d.hi >= Fraction(3, 4) - Fraction(1, 2 ** 90)
    assert d.contains(Fraction(1, 2))


def test_interval_set_ops():
    a = RealInterval(0, 4)
    b = RealInterval(1, 2)
    assert a.encloses(b) and not b.encloses(a)
    assert a.intersect(RealInterval(3, 9)).lo == 3
    assert a.intersect(RealInterval(5, 9)) is None
    assert a.hull(RealInterval(5, 9)).hi == 9


def test_decimal_str_outward():
    q = Fraction(1, 3)
    lo = Fraction(decimal_str(q, 6, "down"))
    hi = Fraction(decimal_str(q, 6, "up"))
    assert lo <= q <= hi and hi - lo == Fraction(1, 10 ** 6)
    iv = RealInterval(Fraction(-1, 3), Fraction(1, 7))
    slo, shi = interval_strs(iv, 8)
    assert Fraction(slo) <= iv.lo and Fraction(shi) >= iv.hi


def test_complex_box():
    one = RealInterval.point(1)
    i_box = ComplexBox(RealInterval.point(0), one)
    sq = i_box * i_box
    assert sq.re.contains(Fraction(-1)) and sq.im.contains(Fraction(0))
    assert i_box.abs_sq().contains(Fraction(1))
    assert i_box.conjugate().im.contains(Fraction(-1))

"""Covolume evaluation for principal arithmetic subgroups.

The pieces: exact orders of the finite groups of Lie type (hence local
factors), prime splitting from the defining polynomial, truncated Dedekind
zeta Euler products with certified tail bounds, and the assembly of the
volume formula

    D^(dim/2) * (D_rel)^(s/2) * (prod_i m_i!/(2 pi)^(m_i+1))^d * E * Lambda.

All truncated products are exact rationals; every transcendental enters as
a certified interval, so the reported covolume is a true enclosure.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence, Tuple

from .errors import NonIntegralOrder
from .interval import RealInterval, exp_fraction, pi_interval
from .liedata import LieTypeData, split_signs
from .numfield import NumberField, element_norm
from .pisot_tower import QuadraticExtensionData, SyntheticField
from .polymod import distinct_degree_degrees, prime_list

_CHUNK = 4096


# ========================================================== finite group data

def finite_group_order(
    data: LieTypeData, q: int, signs: Optional[Sequence[int]] = None
) -> int:
    """#M(F_q) = q^dim prod_i (1 + s_i q^-(m_i+1)), exact."""
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    if signs is None:
        signs = split_signs(data)
    if len(signs) != data.rank or any(s not in (-1, 1) for s in signs):
        raise ValueError("sign vector must be +-1 of length rank")
    val = Fraction(q) ** data.dim
    for s, m in zip(signs, data.exponents):
        val *= 1 + Fraction(s, q ** (m + 1))
    if val.denominator != 1:
        raise NonIntegralOrder(
            f"sign vector {tuple(signs)} gives a non-integral order for {data.name}"
        )
    return int(val)


def local_factor(
    data: LieTypeData, q: int, signs: Optional[Sequence[int]] = None
) -> Fraction:
    """e_v = q^dim / #M(F_q), exact rational."""
    return Fraction(q ** data.dim, finite_group_order(data, q, signs))


# ============================================================= prime splitting

@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    residue_degrees: Tuple[int, ...]
    ramified: bool
    conservative: bool  # ramified verdict forced by disc(Z[theta]), not the field disc


_split_cache: dict = {}


def prime_splitting(k: NumberField, p: int) -> PrimeSplitting:
    """Residue degrees of p from the defining polynomial.

    Primes dividing disc(Z[theta]) are reported ramified; when the field
    discriminant is prime to p this is only an index obstruction, flagged
    `conservative` (the true splitting is unknown without the maximal order).
    """
    key = (k.min_poly.coefficients, k.disc, p)
    hit = _split_cache.get(key)
    if hit is not None:
        return hit
    if k.zk_disc % p == 0:
        res = PrimeSplitting(p, (), True, k.abs_disc % p != 0)
    else:
        degs = distinct_degree_degrees(list(k.min_poly.coefficients), p)
        assert degs is not None and sum(degs) == k.degree
        res = PrimeSplitting(p, degs, False, False)
    _split_cache[key] = res
    return res


# ======================================================== zeta Euler products

def _quot_floor(num: int, den: int, prec: int) -> Fraction:
    # floor(num/den) on the 2^-prec grid without normalizing Fraction(num, den);
    # the gcd of two multi-megabit products dominates runtime otherwise.
    return Fraction((num << prec) // den, 1 << prec)


def _quot_ceil(num: int, den: int, prec: int) -> Fraction:
    return Fraction(-((-num << prec) // den), 1 << prec)


def _prod_tree(values: list) -> int:
    if not values:
        return 1
    while len(values) > 1:
        values = [
            values[i] * values[i + 1] if i + 1 < len(values) else values[i]
            for i in range(0, len(values), 2)
        ]
    return values[0]


def _zeta_chunk(k: NumberField, primes: Sequence[int], s: int):
    """Exact (numerator, denominator, ramified_list) over one prime block."""
    nums, dens, ram = [], [], []
    for p in primes:
        sp = prime_splitting(k, p)
        if sp.ramified:
            ram.append(p)
            continue
        for f in sp.residue_degrees:
            pf = p ** (f * s)
            nums.append(pf)
            dens.append(pf - 1)
    return _prod_tree(nums), _prod_tree(dens), ram


def dedekind_zeta_partial(
    k: NumberField,
    s: int,
    prime_bound: int,
    precision: int = 128,
    threads: int = 1,
) -> RealInterval:
    """Certified enclosure [P, P*R*T] of the degree-s zeta value of k.

    P is the exact Euler product over unramified p <= prime_bound; R brackets
    the ramified factors by [1, (1-p^-s)^-d]; T bounds the tail via
    sum_{p > bound} p^-s <= bound^(1-s)/(s-1).  The truncated part is exact
    rational arithmetic combined in a fixed chunk order, so the result does
    not depend on the thread count.
    """
    if s < 2:
        raise ValueError("zeta truncation needs s >= 2")
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    primes = [p for p in prime_list(prime_bound) if p <= prime_bound]
    chunks = [primes[i : i + _CHUNK] for i in range(0, len(primes), _CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _zeta_chunk(k, c, s), chunks))
    else:
        parts = [_zeta_chunk(k, c, s) for c in chunks]
    num = _prod_tree([part[0] for part in parts])
    den = _prod_tree([part[1] for part in parts])
    d = k.degree
    ram_upper = Fraction(1)
    for part in parts:
        for p in part[2]:
            ps = p ** s
            ram_upper *= Fraction(ps, ps - 1) ** d
    tail_exponent = Fraction(2 * d, (s - 1) * prime_bound ** (s - 1))
    tail = exp_fraction(tail_exponent, precision + 16)
    up = ram_upper * tail.hi
    lo = _quot_floor(num, den, precision)
    hi = _quot_ceil(num * up.numerator, den * up.denominator, precision)
    return RealInterval(lo, hi)


def euler_product_E(
    k: NumberField,
    data: LieTypeData,
    prime_bound: int,
    precision: int = 128,
    threads: int = 1,
) -> RealInterval:
    """prod_i zeta_k(m_i + 1) as a certified interval (split-form local factors)."""
    wp = precision + 16
    out = RealInterval.point(1)
    for m in data.exponents:
        out = out * dedekind_zeta_partial(k, m + 1, prime_bound, wp, threads)
    return out.round_out(precision)


# ================================================================= covolume

@dataclass(frozen=True)
class CovolumeResult:
    value: RealInterval
    disc_factor: RealInterval
    arch_factor: RealInterval
    euler_factor: RealInterval
    lambda_bound: RealInterval
    prime_bound_used: int

    def factor_product(self) -> RealInterval:
        return (
            self.disc_factor * self.arch_factor * self.euler_factor * self.lambda_bound
        )


def _arch_unit(data: LieTypeData, wp: int) -> RealInterval:
    """prod_i m_i! / (2 pi)^(m_i+1), the per-degree archimedean factor."""
    two_pi = pi_interval(wp) * 2
    total_exp = sum(m + 1 for m in data.exponents)
    scale = 1
    for m in data.exponents:
        scale *= factorial(m)
    return (two_pi.pow_int(total_exp, wp).recip(wp) * scale).round_out(wp)


def covolume(
    k: NumberField,
    ext: Optional[QuadraticExtensionData],
    data: LieTypeData,
    p0: Optional[int] = None,
    prime_bound: int = 100000,
    precision: int = 128,
    threads: int = 1,
) -> CovolumeResult:
    """Volume-formula enclosure for a concrete base field.

    The relative-discriminant factor (D_rel)^(s/2) is folded into
    disc_factor as the bracket [1, rel_bound^(s/2)]; lambda_bound is
    [1, p0^(d dim)] when a distinguished ramified place is declared.
    """
    wp = precision + 16
    d = k.degree
    s = data.s_param
    disc = RealInterval.point(k.abs_disc).pow_frac(Fraction(data.dim, 2), wp)
    if s:
        if ext is None:
            raise ValueError(
                "outer forms need quadratic extension data for the (D_rel)^(s/2) factor"
            )
        rel = Fraction(1 << (2 * d)) * abs_norm_bound(ext)
        rel_int = -((-rel.numerator) // rel.denominator)
        disc = disc * RealInterval(1, 1).hull(
            RealInterval.point(rel_int).pow_frac(Fraction(s, 2), wp)
        )
    arch = _arch_unit(data, wp).pow_int(d, wp)
    euler = euler_product_E(k, data, prime_bound, wp, threads)
    lam = (
        RealInterval(1, Fraction(p0) ** (d * data.dim))
        if p0 is not None
        else RealInterval.point(1)
    )
    value = disc * arch * euler * lam
    return CovolumeResult(
        value=value,
        disc_factor=disc,
        arch_factor=arch,
        euler_factor=euler,
        lambda_bound=lam,
        prime_bound_used=prime_bound,
    )


def abs_norm_bound(ext: QuadraticExtensionData) -> Fraction:
    return abs(element_norm(ext.alpha))


def _pow_exact(iv: RealInterval, n: int) -> RealInterval:
    """iv**n without grid rounding; requires a nonnegative interval."""
    assert iv.lo >= 0
    return RealInterval(iv.lo ** n, iv.hi ** n)


def _zeta2_unit(data: LieTypeData, wp: int) -> RealInterval:
    """(pi^2/6)^rank: the zeta(2)^d-style per-degree Euler upper bound."""
    z2 = (pi_interval(wp).pow_int(2, wp) * Fraction(1, 6)).round_out(wp)
    return z2.pow_int(data.rank, wp)


def _c1_units(
    c0: RealInterval,
    c0p: Optional[RealInterval],
    data: LieTypeData,
    p0: int,
    wp: int,
) -> list:
    units = [c0.pow_frac(Fraction(data.dim, 2), wp)]
    if data.s_param:
        if c0p is None:
            raise ValueError("outer form needs the relative-discriminant constant c0'")
        units.append(c0p.pow_frac(Fraction(data.s_param, 2), wp))
    units.append(_arch_unit(data, wp))
    units.append(RealInterval.point(p0 ** data.dim))
    units.append(_zeta2_unit(data, wp))
    return units


def covolume_upper_c1(
    c0: RealInterval,
    c0p: Optional[RealInterval],
    data: LieTypeData,
    p0: int,
    precision: int = 128,
) -> RealInterval:
    """c1 = c0^(dim/2) c0'^(s/2) prod(m_i!/(2 pi)^(m_i+1)) p0^dim (pi^2/6)^r.

    A degree-d field with rd <= c0 then has covolume at most c1^d.  The unit
    intervals here are shared with covolume_synthetic so that the c1^d
    comparison is exact at the endpoint level.
    """
    wp = precision + 16
    out = RealInterval.point(1)
    for unit in _c1_units(c0, c0p, data, p0, wp):
        out = out * unit
    return out


def covolume_synthetic(
    synth: SyntheticField,
    data: LieTypeData,
    p0: int,
    c0p: Optional[RealInterval] = None,
    precision: int = 128,
) -> CovolumeResult:
    """Volume bracket for a tower-level descriptor carrying only (d, rd bound).

    No splitting data exists, so the Euler product is bracketed by
    [1, (pi^2/6)^(d r)] and the distinguished place by [1, p0^(d dim)]; the
    upper endpoint then equals c1^d by construction.
    """
    wp = precision + 16
    d = synth.degree
    units = _c1_units(synth.rd_bound, c0p, data, p0, wp)
    if data.s_param:
        disc_units, arch_unit = units[0] * units[1], units[2]
    else:
        disc_units, arch_unit = units[0], units[1]
    # exact endpoint powers keep value.hi equal to c1.hi**d
    disc = _pow_exact(disc_units, d)
    arch = _pow_exact(arch_unit, d)
    euler = RealInterval(1, units[-1].hi ** d)
    lam = RealInterval(1, units[-2].hi ** d)
    value = disc * arch * euler * lam
    return CovolumeResult(
        value=value,
        disc_factor=disc,
        arch_factor=arch,
        euler_factor=euler,
        lambda_bound=lam,
        prime_bound_used=0,
    )

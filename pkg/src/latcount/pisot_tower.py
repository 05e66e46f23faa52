"""Pisot elements, quadratic extensions, and bounded root-discriminant towers.

The pipeline: search a totally real field for an element that is > 1 at one
real place and inside the unit interval at the others (with interval proofs),
multiply t of them into a product that is negative at exactly t places, and
pass to k[sqrt(alpha)], whose discriminant and root discriminant admit the
explicit bounds implemented here.  Tower entries with bounded root
discriminant are catalog data, not constructions.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence, Tuple

from .errors import (
    AlphaPossiblySquare,
    AlphaZero,
    InvalidT,
    NotTotallyReal,
    PrecisionExhausted,
    SearchExhausted,
    SignUncertifiable,
)
from .interval import RealInterval, log2_fraction
from .numfield import (
    FieldElement,
    NumberField,
    derived_minkowski_C,
    element_norm,
    evaluate_at_embeddings,
)

_PREC_CAP = 1 << 13
_PREFILTER_MARGIN = 1e-6


# ==================================================================== types

@dataclass(frozen=True)
class PisotCertificate:
    """An element with interval proofs of the one-big-place condition."""

    element: FieldElement
    place_index: int
    enclosures: Tuple[RealInterval, ...]
    norm_one_minus: Fraction      # exact N(1 - theta)
    delta_bound: RealInterval     # D^delta with the per-field delta
    precision: int

    @property
    def field(self) -> NumberField:
        return self.element.field


@dataclass(frozen=True)
class QuadraticExtensionData:
    base: NumberField
    alpha: FieldElement
    t: int
    disc_bound: int
    rd_bound: RealInterval
    sign_pattern: Tuple[int, ...]


@dataclass(frozen=True)
class TowerEntry:
    name: str
    base_degree: int
    degree_rule: str
    rd_constant: RealInterval
    total_real: bool
    source: str


@dataclass(frozen=True)
class SyntheticField:
    """Degree/signature/rd data without a defining polynomial."""

    degree: int
    r2: int
    rd_bound: RealInterval
    level: int


# ==================================================================== delta

def delta_for_field(k: NumberField, prec: int = 64) -> RealInterval:
    """Smallest exponent with 3^(d-1) sqrt(D) + (3/2)^(d-1) <= D^delta."""
    d, D = k.degree, k.abs_disc
    if D < 2:
        raise ValueError("delta needs |disc| >= 2")
    wp = prec + 16
    bound = RealInterval.point(D).sqrt(wp) * (3 ** (d - 1)) + Fraction(3, 2) ** (d - 1)
    return bound.log2(wp).div(log2_fraction(D, wp), prec)


def delta_universal(prec: int = 64) -> RealInterval:
    """Field-independent delta = C log2(3) + 1/2, C the degree-bound constant.

    Dominates delta_for_field for every valid field: with d <= C log2 D,
    3^(d-1) sqrt(D) + (3/2)^(d-1) < D^(C log2 3) * sqrt(D).
    """
    wp = prec + 16
    c = derived_minkowski_C(wp)
    return (c * log2_fraction(3, wp) + Fraction(1, 2)).round_out(prec)


# =============================================================== pisot search

def _float_roots(k: NumberField) -> list:
    reals, _ = k.embeddings(64)
    return [float(r.mid()) for r in reals]


def _is_square_fraction(q: Fraction) -> bool:
    if q < 0:
        return False
    return (
        isqrt(q.numerator) ** 2 == q.numerator
        and isqrt(q.denominator) ** 2 == q.denominator
    )


def _sqrt_d_exact(D: int) -> Optional[int]:
    r = isqrt(D)
    return r if r * r == D else None


def _certify_pisot(
    k: NumberField,
    element: FieldElement,
    place_index: int,
    start_prec: int,
):
    """Certified decision: Pisot at place_index within the proof bounds.

    Returns (enclosures, precision) on acceptance, None on rejection.  The
    only undecidable boundary cases (an embedding exactly +-1, the value
    exactly at the v1 cap, the norm exactly at its cap) are resolved by
    exact rational tests, so escalation always terminates.
    """
    d, D = k.degree, k.abs_disc
    sqrtD = _sqrt_d_exact(D)
    one_minus = 1 - element
    n1 = abs(element_norm(one_minus))
    prec = start_prec
    while prec <= _PREC_CAP:
        vals = evaluate_at_embeddings(element, prec)
        vp = vals[place_index]
        ok = True
        if not vp.lo > 1:
            if vp.hi <= 1:
                return None
            ok = False
        for j, v in enumerate(vals):
            if j == place_index:
                continue
            a = v.abs()
            if not a.hi < 1:
                if a.lo >= 1:
                    return None
                ok = False
        if ok:
            wp = prec + 16
            v1_cap = RealInterval.point(D).sqrt(wp) * (1 << (d - 1))
            if not vp.hi <= v1_cap.lo:
                if vp.lo > v1_cap.hi:
                    return None
                # boundary v1 = 2^(d-1) sqrt(D) iff element^2 = 2^(2d-2) D;
                # the positive branch is known since vp.lo > 1 held above
                sq = element * element
                cap_el = k.element([(1 << (2 * d - 2)) * D] + [0] * (d - 1))
                if sq != cap_el:
                    ok = False
            if ok:
                norm_cap = RealInterval.point(D).sqrt(wp) * (3 ** (d - 1)) + Fraction(3, 2) ** (d - 1)
                if not n1 <= norm_cap.lo:
                    if n1 > norm_cap.hi:
                        return None
                    if sqrtD is not None:
                        exact_cap = 3 ** (d - 1) * sqrtD + Fraction(3, 2) ** (d - 1)
                        if n1 > exact_cap:
                            return None
                    else:
                        ok = False  # rational n1 cannot equal the irrational cap
        if ok:
            return vals, prec
        prec *= 2
    raise PrecisionExhausted(f"pisot certification of {element.coords}")


def find_pisot(
    k: NumberField,
    place_index: int = 0,
    search_radius: int = 5,
    precision: int = 64,
) -> PisotCertificate:
    """Lexicographically first certified Pisot element with coordinates of
    sup-norm <= search_radius."""
    if k.r2 != 0 or k.degree < 2:
        raise NotTotallyReal(f"{k!r} is not totally real of degree >= 2")
    if not 0 <= place_index < k.r1:
        raise ValueError(f"place_index {place_index} out of range")
    d = k.degree
    roots = _float_roots(k)
    m = _PREFILTER_MARGIN
    unit = tuple([1] + [0] * (d - 1))
    for coords in itertools.product(range(-search_radius, search_radius + 1), repeat=d):
        if not any(coords):
            continue
        if coords == unit or coords == tuple(-c for c in unit):
            continue  # the elements +-1 sit exactly on the unit circle
        vals = [sum(c * r ** i for i, c in enumerate(coords)) for r in roots]
        if vals[place_index] <= 1 - m:
            continue
        if any(
            abs(v) >= 1 + m for j, v in enumerate(vals) if j != place_index
        ):
            continue
        element = k.element(coords)
        res = _certify_pisot(k, element, place_index, precision)
        if res is None:
            continue
        enclosures, used_prec = res
        wp = used_prec + 16
        delta = delta_for_field(k, wp)
        delta_bound = RealInterval.point(k.abs_disc).pow_interval(delta, used_prec)
        return PisotCertificate(
            element=element,
            place_index=place_index,
            enclosures=enclosures,
            norm_one_minus=element_norm(1 - element),
            delta_bound=delta_bound,
            precision=used_prec,
        )
    raise SearchExhausted(
        f"no Pisot element at place {place_index} within radius {search_radius}"
    )


def reverify_certificate(cert: PisotCertificate) -> bool:
    """Re-run the certified checks at doubled precision."""
    try:
        res = _certify_pisot(
            cert.field, cert.element, cert.place_index, 2 * cert.precision
        )
    except PrecisionExhausted:
        return False
    if res is None:
        return False
    vals, _ = res
    # refined enclosures must sit inside the stored ones
    return all(old.encloses(new) for old, new in zip(cert.enclosures, vals))


# ============================================================= alpha products

def pisot_product_alpha(
    k: NumberField, t: int, search_radius: int = 5
) -> Tuple[FieldElement, Tuple[int, ...]]:
    """alpha = (1-theta_1)...(1-theta_t), negative at exactly the first t places."""
    if k.r2 != 0 or k.degree < 2:
        raise NotTotallyReal(f"{k!r} is not totally real of degree >= 2")
    if not 1 <= t <= k.degree:
        raise InvalidT(f"t must be in 1..{k.degree}, got {t}")
    certs = [find_pisot(k, i, search_radius) for i in range(t)]
    alpha = k.one()
    for cert in certs:
        alpha = alpha * (1 - cert.element)
    signs = certified_signs(k, alpha)
    if sum(1 for s in signs if s < 0) != t:
        raise AssertionError("sign pattern disagrees with the construction")
    return alpha, signs


def certified_signs(k: NumberField, element: FieldElement, precision: int = 64):
    """Sign of the element at every real place, certified."""
    if element.is_zero():
        raise AlphaZero("the zero element has no signs")
    prec = precision
    while prec <= _PREC_CAP:
        vals = evaluate_at_embeddings(element, prec)[: k.r1]
        signs = []
        for v in vals:
            if v.lo > 0:
                signs.append(1)
            elif v.hi < 0:
                signs.append(-1)
            else:
                break
        else:
            return tuple(signs)
        prec *= 2
    raise SignUncertifiable(f"sign of {element.coords} straddles zero")


def splitting_pattern(k: NumberField, element: FieldElement) -> Tuple[str, ...]:
    """Per real place: 'split' where the element is positive, else 'nonsplit'."""
    return tuple(
        "split" if s > 0 else "nonsplit" for s in certified_signs(k, element)
    )


def quadratic_extension(
    k: NumberField,
    alpha: FieldElement,
    delta: Optional[RealInterval] = None,
    precision: int = 128,
) -> QuadraticExtensionData:
    """Bound data for l = k[sqrt(alpha)]: t complex places, disc and rd caps."""
    if alpha.is_zero():
        raise AlphaZero("alpha must be nonzero")
    signs = certified_signs(k, alpha)
    t = sum(1 for s in signs if s < 0)
    norm = abs(element_norm(alpha))
    if t == 0 and _is_square_fraction(norm):
        raise AlphaPossiblySquare(
            "totally positive alpha with square norm: cannot certify non-squareness"
        )
    d, D = k.degree, k.abs_disc
    scaled = D * D * (1 << (2 * d)) * norm
    disc_bound = -((-scaled.numerator) // scaled.denominator)  # exact ceiling
    if delta is None:
        # for |disc| = 1 the rd formula's D^expo factor is 1 whatever delta is
        delta = (
            delta_for_field(k, precision)
            if k.abs_disc >= 2
            else RealInterval.point(1)
        )
    wp = precision + 16
    via_disc = RealInterval.point(disc_bound).nth_root(2 * d, wp)
    expo = (delta * t + 2) * Fraction(1, 2 * d)
    via_rd = RealInterval.point(D).pow_interval(expo, wp) * 2
    rd_bound = RealInterval(
        min(via_disc.lo, via_rd.lo), min(via_disc.hi, via_rd.hi)
    ).round_out(precision)
    return QuadraticExtensionData(
        base=k,
        alpha=alpha,
        t=t,
        disc_bound=disc_bound,
        rd_bound=rd_bound,
        sign_pattern=signs,
    )


# ================================================================== towers

def _entry_from_row(row: dict) -> TowerEntry:
    lo, hi = (Fraction(s) for s in row["rd_constant"])
    return TowerEntry(
        name=row["name"],
        base_degree=int(row["base_degree"]),
        degree_rule=row["degree_rule"],
        rd_constant=RealInterval(lo, hi),
        total_real=bool(row["total_real"]),
        source=row.get("source", ""),
    )


def tower_catalog(extra_path: Optional[str] = None) -> list:
    """Packaged tower entries, optionally extended from a user JSON file."""
    from importlib.resources import files

    text = files("latcount.data").joinpath("tower_catalog.json").read_text()
    entries = [_entry_from_row(r) for r in json.loads(text)]
    if extra_path is not None:
        with open(extra_path, "r", encoding="utf-8") as fh:
            entries.extend(_entry_from_row(r) for r in json.load(fh))
    for e in entries:
        assert e.rd_constant.lo > 1
    return entries


def tower_lookup(name: str, extra_path: Optional[str] = None) -> list:
    return [e for e in tower_catalog(extra_path) if e.name == name]


def tower_degrees(entry: TowerEntry, levels: int) -> list:
    """Level degrees; every catalog rule doubles the degree per level."""
    return [entry.base_degree << i for i in range(levels)]


def fixed_signature_sequence(
    entry: TowerEntry,
    t: int,
    levels: int = 3,
    delta: Optional[RealInterval] = None,
    precision: int = 128,
) -> list:
    """Synthetic degree-2d fields with r2 = t and a level-independent rd cap.

    rd bound = 2 c0^((2 + t delta)/2); no defining polynomials exist for
    these levels, so descriptors carry numbers only.
    """
    if t < 1:
        raise InvalidT(f"t must be >= 1, got {t}")
    if delta is None:
        delta = delta_universal(precision)
    wp = precision + 16
    expo = (delta * t + 2) * Fraction(1, 2)
    bound = (entry.rd_constant.pow_interval(expo, wp) * 2).round_out(precision)
    return [
        SyntheticField(degree=2 * d, r2=t, rd_bound=bound, level=i)
        for i, d in enumerate(tower_degrees(entry, levels))
    ]

"""Number fields presented by a monic integer polynomial.

Everything downstream (Pisot search, covolume bounds) leans on the guarantees
made here: discriminants and norms are exact integers/rationals, embeddings
are certified enclosures (Sturm isolation for real roots, exact residual
bounds around refined seeds for complex ones), and irreducibility is decided,
not guessed.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from typing import Optional, Sequence, Tuple, Union

from mpmath import mp

from .errors import (
    InvalidDiscriminant,
    PrecisionExhausted,
    ReduciblePolynomial,
    SearchExhausted,
)
from .interval import (
    ComplexBox,
    RealInterval,
    exp_fraction,
    pi_interval,
    round_down,
    round_up,
)
from .polymod import distinct_degree_degrees, prime_list

_MAX_REFINE_ROUNDS = 10


# ===================================================================== basic
# polynomial type

@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial, constant coefficient first; leading coeff nonzero."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs or coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            raise ValueError("derivative of a constant")
        return Polynomial(
            tuple(i * c for i, c in enumerate(self.coefficients))[1:]
        )

    def __call__(self, x):
        """Horner evaluation; works for Fraction, RealInterval and ComplexBox."""
        if isinstance(x, (int, Fraction)):
            acc: object = Fraction(self.coefficients[-1])
        else:
            acc = x * 0 + self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    @classmethod
    def from_string(cls, text: str) -> "Polynomial":
        """Parse e.g. 'x^3 - x - 1', '2x^2+3', 'x**4 - 5', '2*x - 7'."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        # every character must belong to a term, else e.g. 'y^2-1' would
        # silently collapse to its constant part
        term = r"[+-](?:\d+x(?:\^\d+)?|x(?:\^\d+)?|\d+)"
        if not re.fullmatch(f"(?:{term})+", s):
            raise ValueError(f"cannot parse polynomial: {text!r}")
        coeffs: dict = {}
        for sign, coef, has_x, exp in re.findall(
            r"([+-])(\d*)(x?)(?:\^(\d+))?", s
        ):
            if not coef and not has_x:
                continue
            k = int(exp) if exp else (1 if has_x else 0)
            c = int(coef) if coef else 1
            if sign == "-":
                c = -c
            coeffs[k] = coeffs.get(k, 0) + c
        coeffs = {k: v for k, v in coeffs.items() if v}
        if not coeffs:
            raise ValueError(f"polynomial is zero: {text!r}")
        deg = max(coeffs)
        return cls(tuple(coeffs.get(i, 0) for i in range(deg + 1)))

    def __str__(self):
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                base = "x" if i == 1 else f"x^{i}"
                term = base if abs(c) == 1 else f"{abs(c)}{base}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"


# ============================================================== exact algebra
# on rational coefficient tuples (constant first)

def _fp_trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def _fp_rem(a: list, b: list) -> list:
    """a mod b over Q."""
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    while len(a) - 1 >= db:
        c = a[-1] * inv
        if c:
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                a[shift + i] -= c * bc
        a.pop()
        _fp_trim(a)
    return a


def _resultant(a: list, b: list) -> Fraction:
    """Res(a, b) over Q by the Euclidean recurrence."""
    a = _fp_trim([Fraction(c) for c in a])
    b = _fp_trim([Fraction(c) for c in b])
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        r = _fp_rem(a, b)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        res *= (Fraction(-1) ** (da * db)) * b[-1] ** (da - dr)
        a, b = b, r


def poly_discriminant(poly: Polynomial) -> int:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); exact."""
    d = poly.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = _resultant(list(poly.coefficients), list(poly.derivative().coefficients))
    disc = (Fraction(-1) ** (d * (d - 1) // 2)) * res / poly.coefficients[-1]
    assert disc.denominator == 1
    return int(disc)


def element_norm(element: "FieldElement") -> Fraction:
    """N_{k/Q}(e) = Res(min_poly, coordinate polynomial); exact rational."""
    f = list(element.field.min_poly.coefficients)
    g = _fp_trim(list(element.coords))
    if not g:
        return Fraction(0)
    return _resultant(f, g)


# ================================================================ real roots

def _sturm_chain(coeffs: Sequence[int]) -> list:
    p0 = _fp_trim([Fraction(c) for c in coeffs])
    p1 = _fp_trim([Fraction(i * c) for i, c in enumerate(coeffs)][1:])
    chain = [p0, p1]
    while len(chain[-1]) - 1 > 0:
        r = [-c for c in _fp_rem(chain[-2], chain[-1])]
        if not r:
            break  # nontrivial gcd; caller must have ensured squarefreeness
        chain.append(r)
    return chain


def _eval_fp(f: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _sign_changes(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sturm_count_below(chain, x: Fraction) -> int:
    return _sign_changes(_eval_fp(f, x) for f in chain)


def _sturm_at_minus_inf(chain) -> int:
    return _sign_changes(
        (f[-1] if (len(f) - 1) % 2 == 0 else -f[-1]) for f in chain
    )


def _sturm_at_plus_inf(chain) -> int:
    return _sign_changes(f[-1] for f in chain)


def _cauchy_bound(coeffs) -> int:
    """Power-of-two integer M with all roots in (-M, M)."""
    lead = abs(coeffs[-1])
    m = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else 0
    bound = 1 + (m + lead - 1) // lead
    return 1 << bound.bit_length()


def _isolate_real_roots(poly: Polynomial) -> list:
    """Disjoint dyadic intervals (a, b) with a sign change, one real root each."""
    chain = _sturm_chain(poly.coefficients)
    big = Fraction(_cauchy_bound(poly.coefficients))
    total = _sturm_at_minus_inf(chain) - _sturm_at_plus_inf(chain)
    if total == 0:
        return []
    out = []
    stack = [(-big, big, _sturm_count_below(chain, -big) - _sturm_count_below(chain, big))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1 and _eval_fp(chain[0], a) * _eval_fp(chain[0], b) < 0:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if _eval_fp(chain[0], mid) == 0:
            # a rational root: legal only for degree-1 input, handled upstream
            raise ReduciblePolynomial(f"rational root {mid} of {poly}")
        va = _sturm_count_below(chain, a)
        vm = _sturm_count_below(chain, mid)
        vb = _sturm_count_below(chain, b)
        stack.append((a, mid, va - vm))
        stack.append((mid, b, vm - vb))
    out.sort()
    assert len(out) == total
    return out


def _bisect_refine(poly: Polynomial, lo: Fraction, hi: Fraction, prec: int):
    """Shrink a sign-change bracket to width <= 2^-prec."""
    target = Fraction(1, 1 << prec)
    f = [Fraction(c) for c in poly.coefficients]
    sign_lo = 1 if _eval_fp(f, lo) > 0 else -1
    while hi - lo > target:
        mid = (lo + hi) / 2
        v = _eval_fp(f, mid)
        if v == 0:
            raise ReduciblePolynomial(f"rational root {mid} of {poly}")
        if (1 if v > 0 else -1) == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ============================================================= complex roots

def _mpf_to_fraction(x, bits: int) -> Fraction:
    return Fraction(int(mp.floor(mp.ldexp(x, bits))), 1 << bits)


def _complex_seeds(poly: Polynomial, r2: int, workprec: int):
    """Uncertified upper-half-plane root approximations, as exact rationals."""
    try:
        with mp.workprec(workprec):
            coeffs = [mp.mpf(c) for c in reversed(poly.coefficients)]
            roots = mp.polyroots(coeffs, maxsteps=100 + workprec, extraprec=workprec)
            cands = [z for z in roots if mp.im(z) > 0]
            if len(cands) != r2:
                return None
            seeds = [
                (_mpf_to_fraction(mp.re(z), workprec), _mpf_to_fraction(mp.im(z), workprec))
                for z in cands
            ]
    except mp.NoConvergence:
        return None
    seeds.sort()
    return seeds


def _eval_complex(coeffs, a: Fraction, b: Fraction):
    """f(a + bi) exactly, returned as (re, im)."""
    re, im = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        re, im = re * a - im * b + c, re * b + im * a
    return re, im


def _sqrt_up(q: Fraction, prec: int) -> Fraction:
    n = -((-q.numerator << (2 * prec)) // q.denominator)
    r = isqrt(n)
    if r * r != n:
        r += 1
    return Fraction(r, 1 << prec)


def _certify_boxes(poly: Polynomial, seeds, prec: int):
    """Turn seeds into disjoint upper-half-plane boxes, one root each.

    Uses the exact residual bound min_j |z - root_j| <= d |f(z)/f'(z)|, so a
    disc of that radius around each seed contains a root; disjointness plus a
    root count then pins exactly one per box.
    """
    d = poly.degree
    coeffs = [Fraction(c) for c in poly.coefficients]
    dcoeffs = [Fraction(i * c) for i, c in enumerate(poly.coefficients)][1:]
    grid = prec + 2
    halfwidth_cap = Fraction(1, 1 << grid)
    boxes = []
    for a, b in seeds:
        fr, fi = _eval_complex(coeffs, a, b)
        gr, gi = _eval_complex(dcoeffs, a, b)
        den = gr * gr + gi * gi
        if den == 0:
            return None
        rho = _sqrt_up(Fraction(d * d) * (fr * fr + fi * fi) / den, grid + 8)
        if rho > halfwidth_cap:
            return None
        if b - rho <= 0:
            return None
        boxes.append(
            ComplexBox(
                RealInterval(round_down(a - rho, grid), round_up(a + rho, grid)),
                RealInterval(round_down(b - rho, grid), round_up(b + rho, grid)),
            )
        )
    for i in range(len(boxes)):
        if boxes[i].im.lo <= 0:
            return None
        for j in range(i + 1, len(boxes)):
            if not boxes[i].disjoint(boxes[j]):
                return None
    return boxes


# ================================================================ number field

class NumberField:
    """Q[x]/(f) for a certified-irreducible monic integer f."""

    def __init__(self, min_poly, degree, r1, r2, disc, zk_disc, precision,
                 real_brackets, emb_cache):
        self.min_poly = min_poly
        self.degree = degree
        self.r1 = r1
        self.r2 = r2
        self.disc = disc          # signed; known_disc if supplied, else disc(Z[theta])
        self.zk_disc = zk_disc    # signed disc(Z[theta])
        self.precision = precision
        self._real_brackets = real_brackets
        self._emb_cache = emb_cache

    @property
    def signature(self):
        return (self.r1, self.r2)

    @property
    def abs_disc(self) -> int:
        return abs(self.disc)

    def root_disc(self, prec: Optional[int] = None) -> RealInterval:
        prec = prec or self.precision
        return RealInterval.point(self.abs_disc).nth_root(self.degree, prec)

    def embeddings(self, prec: Optional[int] = None):
        """(real enclosures ascending, upper-half boxes), one per infinite place."""
        prec = prec or self.precision
        if prec in self._emb_cache:
            return self._emb_cache[prec]
        reals = tuple(
            RealInterval(*_bisect_refine(self.min_poly, lo, hi, prec))
            for lo, hi in self._real_brackets
        ) if self.degree > 1 else (
            RealInterval.point(-self.min_poly.coefficients[0]),
        )
        boxes = self._certified_complex(prec)
        self._emb_cache[prec] = (reals, boxes)
        return reals, boxes

    def _certified_complex(self, prec: int):
        if self.r2 == 0:
            return ()
        workprec = max(2 * prec, 128, 2 * max(abs(c) for c in self.min_poly.coefficients).bit_length())
        prev = None
        if self._emb_cache:
            prev = self._emb_cache[max(self._emb_cache)][1]
        for _ in range(_MAX_REFINE_ROUNDS):
            seeds = _complex_seeds(self.min_poly, self.r2, workprec)
            if seeds is not None:
                boxes = _certify_boxes(self.min_poly, seeds, prec)
                if boxes is not None:
                    if prev:
                        boxes = _nest_boxes(boxes, prev)
                        if boxes is None:
                            workprec *= 2
                            continue
                    return tuple(boxes)
            workprec *= 2
        raise PrecisionExhausted(
            f"complex embeddings of {self.min_poly} at {prec} bits"
        )

    def root_enclosures(self, prec: Optional[int] = None):
        """All d root enclosures: real intervals, then conjugate box pairs."""
        reals, boxes = self.embeddings(prec)
        full = list(reals)
        for box in boxes:
            full.append(box)
            full.append(box.conjugate())
        return tuple(full)

    def element(self, coords) -> "FieldElement":
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return self.element([0] * self.degree)

    def one(self) -> "FieldElement":
        return self.element([1] + [0] * (self.degree - 1))

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.min_poly == other.min_poly
            and self.disc == other.disc
        )

    def __hash__(self):
        return hash((self.min_poly, self.disc))

    def __repr__(self):
        return f"NumberField({self.min_poly}, disc={self.disc})"


def _nest_boxes(new, old):
    """Intersect refined boxes with their predecessors to force nesting."""
    out = []
    for box in new:
        hits = [
            o for o in old
            if box.re.intersect(o.re) is not None and box.im.intersect(o.im) is not None
        ]
        if len(hits) != 1:
            return None
        out.append(ComplexBox(box.re.intersect(hits[0].re), box.im.intersect(hits[0].im)))
    return out


# ---------------------------------------------------------- irreducibility

def _modular_degree_patterns(poly: Polynomial, tries: int = 8):
    """Intersection of achievable proper-factor degrees across good primes.

    Empty set proves irreducibility; otherwise the certified subset test
    below examines only the surviving sizes.
    """
    d = poly.degree
    possible = set(range(1, d))
    used = 0
    for p in prime_list(1000):
        if used >= tries:
            break
        degs = distinct_degree_degrees(list(poly.coefficients), p)
        if degs is None:
            continue
        used += 1
        sums = {0}
        for e in degs:
            sums |= {s + e for s in sums}
        possible &= {s for s in sums if 0 < s < d}
        if not possible:
            break
    return possible


def _interval_poly_mul(a: list, b: list) -> list:
    out = [RealInterval.point(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def _try_integer_candidate(coeff_ivs):
    """Unique integer inside each interval, or None/'wide'."""
    cand = []
    for iv in coeff_ivs:
        lo = -((-iv.lo.numerator) // iv.lo.denominator)  # ceil
        hi = iv.hi.numerator // iv.hi.denominator        # floor
        if lo > hi:
            return None
        if lo != hi:
            return "wide"
        cand.append(lo)
    return cand


def _divides_exactly(f: Polynomial, g: list) -> bool:
    """Does the monic integer poly g (constant first) divide f over Z?"""
    a = list(f.coefficients)
    dg = len(g) - 1
    if dg < 1:
        return False
    for shift in range(len(a) - 1 - dg, -1, -1):
        c = a[shift + dg]
        if c:
            for i, gc in enumerate(g):
                a[shift + i] -= c * gc
    return all(c == 0 for c in a[:dg])


def _assert_irreducible(poly: Polynomial, field_prec: int, get_enclosures):
    d = poly.degree
    if d == 1:
        return
    sizes = _modular_degree_patterns(poly)
    sizes = {s for s in sizes if s <= d // 2}
    if not sizes:
        return
    if d > 22:  # pragma: no cover - the subset test enumerates 2^(r1+r2) masks
        raise PrecisionExhausted(
            f"irreducibility of {poly}: degree too large for the subset test"
        )
    prec = field_prec
    for _ in range(_MAX_REFINE_ROUNDS):
        reals, boxes = get_enclosures(prec)
        units = [(1, [(-r), RealInterval.point(1)]) for r in reals]
        units += [
            (2, [b.abs_sq(), b.re * (-2), RealInterval.point(1)]) for b in boxes
        ]
        widened = False
        for mask in range(1, 1 << len(units)):
            size = sum(units[i][0] for i in range(len(units)) if mask >> i & 1)
            if size not in sizes:
                continue
            prod = [RealInterval.point(1)]
            for i in range(len(units)):
                if mask >> i & 1:
                    prod = _interval_poly_mul(prod, units[i][1])
            cand = _try_integer_candidate(prod[:-1])
            if cand == "wide":
                widened = True
                continue
            if cand is not None and _divides_exactly(poly, cand + [1]):
                raise ReduciblePolynomial(
                    f"{poly} has factor of degree {size}"
                )
        if not widened:
            return
        prec *= 2
    raise PrecisionExhausted(f"irreducibility of {poly}")


def field_from_polynomial(
    poly: Union[Polynomial, Sequence[int], str],
    precision: int = 128,
    known_disc: Optional[int] = None,
) -> NumberField:
    """Build a NumberField, certifying irreducibility and the signature.

    The discriminant defaults to disc(Z[theta]); pass known_disc when the
    maximal-order value is available (it is validated against the sign and
    square-index constraints before being trusted).
    """
    if isinstance(poly, str):
        poly = Polynomial.from_string(poly)
    elif not isinstance(poly, Polynomial):
        poly = Polynomial(tuple(poly))
    if not poly.is_monic:
        raise ValueError("defining polynomial must be monic")
    d = poly.degree
    if d < 1:
        raise ValueError("defining polynomial must have degree >= 1")

    if d == 1:
        field = NumberField(
            poly, 1, 1, 0, known_disc or 1, 1, precision, [], {}
        )
        field.embeddings(precision)
        return field

    zk_disc = poly_discriminant(poly)
    if zk_disc == 0:
        raise ReduciblePolynomial(f"{poly} has a repeated factor")

    brackets = _isolate_real_roots(poly)
    r1 = len(brackets)
    r2 = (d - r1) // 2
    if (zk_disc < 0) != (r2 % 2 == 1):
        raise AssertionError("discriminant sign inconsistent with signature")

    field = NumberField(poly, d, r1, r2, zk_disc, zk_disc, precision, brackets, {})
    field.embeddings(precision)
    _assert_irreducible(poly, precision, field.embeddings)

    if known_disc is not None:
        if (known_disc < 0) != (r2 % 2 == 1):
            raise InvalidDiscriminant(
                f"known_disc sign {known_disc} contradicts signature (r2={r2})"
            )
        if known_disc == 0 or zk_disc % known_disc != 0:
            raise InvalidDiscriminant("known_disc must divide disc(Z[theta])")
        q = zk_disc // known_disc
        if q <= 0 or isqrt(q) ** 2 != q:
            raise InvalidDiscriminant(
                "disc(Z[theta]) / known_disc must be a positive square"
            )
        field.disc = known_disc
    return field


# ================================================================== elements

class FieldElement:
    """Element of a NumberField in the power basis 1, theta, ..., theta^(d-1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != field.degree:
            raise ValueError(
                f"need {field.degree} coordinates, got {len(coords)}"
            )
        self.field = field
        self.coords = coords

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        if isinstance(other, FieldElement):
            return FieldElement(
                self.field, (a + b for a, b in zip(self.coords, other.coords))
            )
        if isinstance(other, (int, Fraction)):
            coords = list(self.coords)
            coords[0] += other
            return FieldElement(self.field, coords)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-c for c in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (c * other for c in self.coords))
        if not isinstance(other, FieldElement):
            return NotImplemented
        d = self.field.degree
        f = self.field.min_poly.coefficients
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        # reduce modulo the monic minimal polynomial
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i in range(d):
                    prod[k - d + i] -= c * f[i]
        return FieldElement(self.field, prod[:d])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"


def evaluate_at_embeddings(element: FieldElement, precision: int):
    """Certified per-place images: r1 real intervals then r2 boxes.

    Width of every returned enclosure is <= 2^(1-precision); refining the
    precision keeps each enclosure inside its predecessor.
    """
    k = element.field
    # inner target + grid rounding keep the final width under 2^(1-precision)
    target = Fraction(1, 1 << (precision + 1))
    grid = precision + 2
    wp = precision + 16
    for _ in range(_MAX_REFINE_ROUNDS):
        reals, boxes = k.embeddings(wp)
        r_out = [_horner_interval(element.coords, r) for r in reals]
        b_out = [_horner_box(element.coords, b) for b in boxes]
        if all(iv.width() <= target for iv in r_out) and all(
            b.re.width() <= target and b.im.width() <= target for b in b_out
        ):
            return tuple(r.round_out(grid) for r in r_out) + tuple(
                b.round_out(grid) for b in b_out
            )
        wp *= 2
    raise PrecisionExhausted(f"embedding images at {precision} bits")


def _horner_interval(coords, x: RealInterval) -> RealInterval:
    acc = RealInterval.point(0)
    for c in reversed(coords):
        acc = acc * x + c
    return acc


def _horner_box(coords, x: ComplexBox) -> ComplexBox:
    acc = ComplexBox(RealInterval.point(0), RealInterval.point(0))
    for c in reversed(coords):
        acc = acc * x + c
    return acc


# ========================================================== geometry of numbers

def minkowski_norm_bound(field: NumberField, prec: int = 128) -> RealInterval:
    """(4/pi)^r2 (d!/d^d) sqrt(|disc|): some nonzero integral element has
    absolute norm at most this."""
    wp = prec + 16
    d = field.degree
    base = RealInterval.point(4).div(pi_interval(wp), wp).pow_int(field.r2, wp)
    scale = Fraction(factorial(d), d ** d)
    root = RealInterval.point(field.abs_disc).sqrt(wp)
    return (base * scale * root).round_out(prec)


def _stirling_floor(d: int, r2: int, prec: int) -> RealInterval:
    """(pi/4)^(2 r2) e^(2d - 1/(6d)) / (2 pi d): every degree-d signature-r2
    field has |disc| strictly above this."""
    wp = prec + 32
    pi = pi_interval(wp)
    a = (pi * Fraction(1, 4)).pow_int(2 * r2, wp)
    b = exp_fraction(Fraction(2 * d) - Fraction(1, 6 * d), wp)
    return (a * b).div(pi * (2 * d), prec)


def minkowski_degree_bound(abs_disc: int, prec: int = 64) -> int:
    """Largest degree compatible with |disc| = abs_disc for any signature."""
    if abs_disc < 3:
        raise InvalidDiscriminant("degree bound needs |disc| >= 3")
    d = 2
    while True:
        wp = prec
        while True:
            floor_iv = _stirling_floor(d + 1, (d + 1) // 2, wp)
            if abs_disc > floor_iv.hi:
                d += 1
                break
            if abs_disc <= floor_iv.lo:
                return d
            wp *= 2


def derived_minkowski_C(prec: int = 64) -> RealInterval:
    """Certified C with d <= C log2 |disc| for every field of degree >= 2.

    C = sup over d of d / log2(stirling floor at the most imaginary
    signature); the ratio is maximal at d = 2 and decays below 0.41 by
    d = 64, so scanning that far certifies the supremum.
    """
    best = None
    for d in range(2, 65):
        g = RealInterval.point(d).div(
            _stirling_floor(d, d // 2, prec + 16).log2(prec + 16), prec
        )
        if best is None or g.hi > best.hi:
            best = g
    return best


def root_discriminant(field: NumberField, prec: int = 128) -> RealInterval:
    return field.root_disc(prec)


def minkowski_witness(field: NumberField, radius: int = 5, prec: int = 128):
    """Lexicographically first nonzero integral element with certified
    |N| <= minkowski_norm_bound; (element, |N|)."""
    bound = minkowski_norm_bound(field, prec)
    d = field.degree
    for coords in itertools.product(range(-radius, radius + 1), repeat=d):
        if all(c == 0 for c in coords):
            continue
        el = field.element(coords)
        n = abs(element_norm(el))
        if n <= bound.lo:
            return el, n
    raise SearchExhausted(f"no Minkowski witness within radius {radius}")


# ================================================================== catalog

@dataclass(frozen=True)
class FieldCatalogEntry:
    name: str
    min_poly: Tuple[int, ...]
    known_disc: Optional[int]
    notes: str

    def build(self, precision: int = 128) -> NumberField:
        return field_from_polynomial(
            Polynomial(self.min_poly), precision, self.known_disc
        )


def load_field_catalog(path: Optional[str] = None) -> list:
    if path is None:
        from importlib.resources import files

        text = files("latcount.data").joinpath("field_catalog.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    entries = []
    for row in json.loads(text):
        entries.append(
            FieldCatalogEntry(
                name=row["name"],
                min_poly=tuple(row["min_poly"]),
                known_disc=row.get("known_disc"),
                notes=row.get("notes", ""),
            )
        )
    return entries


def dump_field_catalog(entries) -> str:
    rows = []
    for e in entries:
        row = {"name": e.name, "min_poly": list(e.min_poly)}
        if e.known_disc is not None:
            row["known_disc"] = e.known_disc
        row["notes"] = e.notes
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def catalog_lookup(name: str, path: Optional[str] = None, precision: int = 128):
    for entry in load_field_catalog(path):
        if entry.name == name:
            return entry.build(precision)
    return None

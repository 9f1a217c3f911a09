"""Sparse graded polynomials in generators v_1..v_N with exact coefficients.

Monomials carry the weight w(v_n) = q^n - 1 (topological degree 2w) and are
compared by a pure lexicographic order in which the highest generator index
is the most significant: v_3 beats every monomial in v_1, v_2, and v_2^2
beats v_1^n * v_2 for every n.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import (
    MissingImage,
    NotIntegral,
    RingMismatch,
    TruncationExceeded,
    ZeroPolynomial,
)
from .numberring import FieldElement, ResidueElement, embed, is_integral, residue

LT, EQ, GT = -1, 0, 1


# ---------------------------------------------------------------------------
# Monomials: sorted tuples of (generator index, positive exponent)


def monomial(exps):
    """Canonical monomial from a mapping or iterable of (index, exponent)."""
    if isinstance(exps, dict):
        items = exps.items()
    else:
        items = exps
    out = {}
    for n, a in items:
        n, a = int(n), int(a)
        if a < 0:
            raise ValueError("negative exponent")
        if a:
            out[n] = out.get(n, 0) + a
    return tuple(sorted(out.items()))


ONE_MONOMIAL = ()


def monomial_weight(m, q):
    return sum(a * (q ** n - 1) for n, a in m)


def monomial_mul(x, y):
    out = dict(x)
    for n, a in y:
        out[n] = out.get(n, 0) + a
    return tuple(sorted(out.items()))


def monomial_divide(x, y):
    """x / y, or None when y does not divide x."""
    out = dict(x)
    for n, a in y:
        b = out.get(n, 0) - a
        if b < 0:
            return None
        if b:
            out[n] = b
        else:
            out.pop(n, None)
    return tuple(sorted(out.items()))


def monomial_lcm(x, y):
    out = dict(x)
    for n, a in y:
        out[n] = max(out.get(n, 0), a)
    return tuple(sorted(out.items()))


def compare_monomials(x, y):
    """Total order: compare exponents from the largest generator index
    present in either monomial, descending; first difference decides."""
    dx, dy = dict(x), dict(y)
    for n in sorted(set(dx) | set(dy), reverse=True):
        a, b = dx.get(n, 0), dy.get(n, 0)
        if a != b:
            return GT if a > b else LT
    return EQ


MONOMIAL_KEY = functools.cmp_to_key(compare_monomials)


# ---------------------------------------------------------------------------
# Rings and polynomials


class PolyRing:
    """Metadata for a polynomial ring: coefficient tower, q, truncation N.

    `coefficients` is "field" (FieldElement coefficients) or "residue"
    (ResidueElement coefficients over the tower's residue field).
    """

    def __init__(self, tower, q=None, N=6, coefficients="field"):
        self.tower = tower
        self.q = q if q is not None else tower.q
        self.N = N
        self.coefficients = coefficients

    def same_ring(self, other):
        return (
            self.tower.same_tower(other.tower)
            and self.q == other.q
            and self.N == other.N
            and self.coefficients == other.coefficients
        )

    def residue_ring(self):
        return PolyRing(self.tower, self.q, self.N, "residue")

    def coeff_one(self):
        if self.coefficients == "residue":
            return ResidueElement(self.tower, (1,))
        return self.tower.one()

    def coeff_from_int(self, c):
        if self.coefficients == "residue":
            return ResidueElement(self.tower, (c % self.tower.p,))
        return self.tower.from_rational(c)

    def zero(self):
        return GradedPoly(self, {})

    def one(self):
        return GradedPoly(self, {ONE_MONOMIAL: self.coeff_one()})

    def gen(self, n, exp=1, coeff=None):
        if not (1 <= n <= self.N):
            raise TruncationExceeded("generator index %d exceeds truncation N=%d" % (n, self.N))
        if coeff is None:
            coeff = self.coeff_one()
        return GradedPoly(self, {monomial({n: exp}): coeff})

    def from_terms(self, terms):
        return GradedPoly(self, terms)

    def __repr__(self):
        return "PolyRing(%s, q=%d, N=%d, %s)" % (
            self.tower.label,
            self.q,
            self.N,
            self.coefficients,
        )


class GradedPoly:
    """Sparse polynomial: map from monomial to nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        clean = {}
        for m, c in terms.items():
            m = monomial(m) if not isinstance(m, tuple) else m
            if m and max(n for n, _ in m) > ring.N:
                raise TruncationExceeded(
                    "monomial uses generator index beyond N=%d" % ring.N
                )
            if c:
                clean[m] = c
        self.ring = ring
        self.terms = clean

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring.same_ring(other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if not isinstance(other, GradedPoly):
            raise RingMismatch("expected a polynomial")
        if not self.ring.same_ring(other.ring):
            raise RingMismatch("polynomials over different rings")

    def sorted_terms(self):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: MONOMIAL_KEY(t[0]), reverse=True)

    def weight(self):
        """Weight when homogeneous; None for 0; raises otherwise."""
        ws = {monomial_weight(m, self.ring.q) for m in self.terms}
        if not ws:
            return None
        if len(ws) != 1:
            raise ValueError("polynomial is not homogeneous: weights %s" % sorted(ws))
        return ws.pop()

    def is_homogeneous(self):
        ws = {monomial_weight(m, self.ring.q) for m in self.terms}
        return len(ws) <= 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return GradedPoly(self.ring, out)

    def __neg__(self):
        return GradedPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement, ResidueElement)):
            return self.scale(other)
        self._check(other)
        if self.ring.coefficients == "field":
            return self._mul_field(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                c = c1 * c2
                if m in out:
                    s = out[m] + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
                elif c:
                    out[m] = c
        return GradedPoly(self.ring, out)

    def _mul_field(self, other):
        """Field-coefficient product accumulating flat coordinate vectors,
        avoiding per-partial-product element objects."""
        T = self.ring.tower
        struct = T.structure_constants()
        d, f = T.d, T.f
        zero = Fraction(0)
        # For each term of the shorter factor, precompute the linear map
        # "multiply by this coefficient" as rows over the second index.
        a_poly, b_poly = self, other
        if len(a_poly.terms) > len(b_poly.terms):
            a_poly, b_poly = b_poly, a_poly
        b_flat = [
            (m2, [c for row in c2.coords for c in row])
            for m2, c2 in b_poly.terms.items()
        ]
        out = {}
        for m1, c1 in a_poly.terms.items():
            a = [c for row in c1.coords for c in row]
            rows = [[zero] * d for _ in range(d)]
            for k in range(d):
                ak = a[k]
                if not ak:
                    continue
                sk = struct[k]
                for l in range(d):
                    row = rows[l]
                    for m, s in sk[l]:
                        row[m] += ak * s
            sparse_rows = [
                [(m, v) for m, v in enumerate(row) if v] for row in rows
            ]
            for m2, b in b_flat:
                key = monomial_mul(m1, m2)
                acc = out.get(key)
                if acc is None:
                    acc = [zero] * d
                    out[key] = acc
                for l in range(d):
                    bl = b[l]
                    if not bl:
                        continue
                    for m, v in sparse_rows[l]:
                        acc[m] += bl * v
        terms = {}
        for key, acc in out.items():
            if any(acc):
                terms[key] = FieldElement(T, [acc[j * f : (j + 1) * f] for j in range(T.e)])
        return GradedPoly(self.ring, terms)

    __rmul__ = __mul__

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = (
                self.ring.coeff_from_int(c)
                if isinstance(c, int)
                else self.ring.tower.from_rational(c)
            )
        return GradedPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return GradedPoly(self.ring, {monomial({k: a * n for k, a in m}): c ** n})
        result = self.ring.one()
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        terms = []
        for m, c in self.sorted_terms():
            coeff = c.to_json()
            terms.append({"exps": {str(n): a for n, a in m}, "coeff": coeff})
        return {"terms": terms, "q": self.ring.q, "N": self.ring.N}

    @staticmethod
    def from_json(ring, obj):
        terms = {}
        for t in obj["terms"]:
            m = monomial({int(n): a for n, a in t["exps"].items()})
            if ring.coefficients == "residue":
                c = ResidueElement(ring.tower, tuple(t["coeff"]))
            else:
                c = FieldElement.from_json(ring.tower, t["coeff"])
            terms[m] = c
        return GradedPoly(ring, terms)

    def __repr__(self):
        if not self.terms:
            return "<poly 0>"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                ("v%d" % n) if a == 1 else ("v%d^%d" % (n, a)) for n, a in m
            )
            parts.append("(%r)%s" % (c, "*" + mono if mono else ""))
        return "<poly " + " + ".join(parts) + ">"


class ResidueGradedPoly(GradedPoly):
    """Alias for polynomials with residue-field coefficients."""


def leading_monomial(f):
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial has no leading monomial")
    return max(f.terms, key=MONOMIAL_KEY)


def leading_term(f):
    m = leading_monomial(f)
    return m, f.terms[m]


def apply_ring_map(f, images, coeff_map=None):
    """Substitute v_n -> images[n] and map coefficients into the target ring.

    `images` maps generator indices to polynomials over one common target
    ring; `coeff_map` takes a source coefficient to a target coefficient
    (default: structural embedding of towers).
    """
    if not images:
        raise MissingImage("no generator images supplied")
    target_ring = next(iter(images.values())).ring
    if coeff_map is None:
        coeff_map = lambda c: embed(c, target_ring.tower)
    out = target_ring.zero()
    for m, c in f.terms.items():
        term = target_ring.one().scale(coeff_map(c))
        for n, a in m:
            if n not in images:
                raise MissingImage("no image for generator v_%d" % n)
            term = term * images[n] ** a
        out = out + term
    return out


def reduce_mod_ideal(f, n):
    """Reduce modulo (pi, v_1, ..., v_{n-1}): drop terms divisible by a
    generator of index < n, reduce surviving coefficients to the residue
    field.  n = 1 reduces coefficients only."""
    out_ring = f.ring.residue_ring()
    terms = {}
    for m, c in f.terms.items():
        if any(idx < n for idx, _ in m):
            continue
        if not is_integral(c):
            raise NotIntegral("surviving term has a non-integral coefficient")
        r = residue(c)
        if r:
            terms[m] = r
    return ResidueGradedPoly(out_ring, terms)


def reduce_coeffs_mod_p(f):
    """Reduce coefficients of an integral polynomial to the residue field,
    keeping all monomials."""
    out_ring = f.ring.residue_ring()
    terms = {}
    for m, c in f.terms.items():
        if not is_integral(c):
            raise NotIntegral("non-integral coefficient")
        r = residue(c)
        if r:
            terms[m] = r
    return ResidueGradedPoly(out_ring, terms)


def graded_basis(ring, weight_bound):
    """All monomials of each weight <= weight_bound, per weight, each list
    sorted descending in the monomial order."""
    q, N = ring.q, ring.N
    by_weight = {w: [] for w in range(weight_bound + 1)}

    # Enumerate once up to the bound, bucketing by exact weight.
    def rec2(n, used, acc):
        if n == 0:
            by_weight[used].append(monomial(list(acc)))
            return
        wn = q ** n - 1
        a = 0
        while used + a * wn <= weight_bound:
            if a:
                acc.append((n, a))
            rec2(n - 1, used + a * wn, acc)
            if a:
                acc.pop()
            a += 1

    rec2(N, 0, [])
    for w in by_weight:
        by_weight[w].sort(key=MONOMIAL_KEY, reverse=True)
    return by_weight


def divide_by_var(f, n):
    """f / v_n when every term is divisible by v_n, else None."""
    out = {}
    for m, c in f.terms.items():
        q = monomial_divide(m, monomial({n: 1}))
        if q is None:
            return None
        out[q] = c
    return type(f)(f.ring, out)

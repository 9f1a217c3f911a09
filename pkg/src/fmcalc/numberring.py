"""Exact arithmetic in towers Q_p < unramified < totally ramified.

A tower is described by a prime p, a monic integer polynomial g of degree f
(irreducible mod p, generator omega) and a monic Eisenstein polynomial h of
degree e over the unramified subring (generator theta).  Elements of the
fraction field are stored with exact rational coordinates in the power basis
omega^i * theta^j, which is an integral basis for such towers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import modp
from .errors import (
    DivisionByZero,
    FmcalcError,
    NoSuitablePrimeFound,
    NotEisenstein,
    NotIntegral,
    NotIrreducibleModP,
    NotPrime,
    NotSubtower,
    TowerMismatch,
)

INFINITY = math.inf


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def padic_valuation_rational(r, p):
    """p-adic valuation of a Fraction; +infinity for 0."""
    if r == 0:
        return INFINITY
    v = 0
    num, den = r.numerator, r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def parse_rational(s):
    return Fraction(str(s))


def format_rational(r):
    if r.denominator == 1:
        return str(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


def _fraction_mod_p(r, p):
    if r.denominator % p == 0:
        raise NotIntegral("denominator divisible by %d" % p)
    return (r.numerator * pow(r.denominator, p - 2, p)) % p


# ---------------------------------------------------------------------------
# Polynomials over Q and over the unramified subring Q[omega]/(g)


def _qpoly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _qpoly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_rem_monic(f, g):
    """Remainder of f modulo a monic polynomial g, over Q."""
    f = list(f)
    for k in range(len(f) - len(g), -1, -1):
        c = f[k + len(g) - 1]
        if c:
            for j in range(len(g)):
                f[k + j] -= c * g[j]
    return _qpoly_trim(f)


def _upoly_pad(vec, f):
    return tuple(vec) + (Fraction(0),) * (f - len(vec))


class TowerDescriptor:
    """Immutable description of a tower Q_p < Q_p(omega) < Q_p(omega, theta)."""

    def __init__(self, p, unram_poly, eis_poly, label=""):
        if not is_prime(p):
            raise NotPrime("%r is not prime" % (p,))
        g = tuple(int(c) for c in unram_poly)
        if len(g) < 2 or g[-1] != 1:
            raise NotIrreducibleModP("unramified polynomial must be monic of degree >= 1")
        f = len(g) - 1
        gbar = modp.make(g, p)
        if modp.deg(gbar) != f or not modp.is_irreducible(gbar, p):
            raise NotIrreducibleModP("polynomial is not irreducible modulo %d" % p)
        h = tuple(_upoly_pad(tuple(Fraction(c) for c in coeff), f) for coeff in eis_poly)
        if len(h) < 2 or h[-1] != _upoly_pad((Fraction(1),), f):
            raise NotEisenstein("Eisenstein polynomial must be monic of degree >= 1")
        e = len(h) - 1

        self.p = p
        self.unram_poly = g
        self.eis_poly = h
        self.label = label or "p=%d,f=%d,e=%d" % (p, f, e)
        self.f = f
        self.e = e
        self.q = p ** f
        self.d = e * f
        self.gbar = gbar
        self._gq = tuple(Fraction(c) for c in g)

        if e > 1:
            self._check_eisenstein()
        self._struct = None  # lazily built multiplication table

    def _check_eisenstein(self):
        p, f, e = self.p, self.f, self.e
        for j in range(e):
            coeff = self.eis_poly[j]
            for c in coeff:
                if padic_valuation_rational(c, p) < 1:
                    raise NotEisenstein(
                        "non-leading coefficient of theta^%d not divisible by %d" % (j, p)
                    )
        unit = tuple(c / p for c in self.eis_poly[0])
        residue = modp.trim(_fraction_mod_p(c, p) for c in unit)
        if not residue:
            raise NotEisenstein("constant term divisible by p^2: not a uniformizer")

    # -- element constructors ------------------------------------------------

    def element(self, coords):
        return FieldElement(self, coords)

    def zero(self):
        return self.from_rational(0)

    def one(self):
        return self.from_rational(1)

    def from_rational(self, r):
        r = Fraction(r)
        coords = [[Fraction(0)] * self.f for _ in range(self.e)]
        coords[0][0] = r
        return FieldElement(self, coords)

    def omega(self):
        coords = [[Fraction(0)] * self.f for _ in range(self.e)]
        if self.f == 1:
            return self.zero()
        coords[0][1] = Fraction(1)
        return FieldElement(self, coords)

    def theta(self):
        coords = [[Fraction(0)] * self.f for _ in range(self.e)]
        if self.e == 1:
            return self.zero()
        coords[1][0] = Fraction(1)
        return FieldElement(self, coords)

    def uniformizer(self):
        """theta when e > 1, otherwise p (the recorded choice)."""
        if self.e > 1:
            return self.theta()
        return self.from_rational(self.p)

    def uniformizer_name(self):
        return "theta" if self.e > 1 else "p"

    def structure_constants(self):
        """Sparse multiplication table of the power basis: entry [k][l] lists
        (m, c) with basis_k * basis_l = sum c * basis_m (flat index j*f+i)."""
        if self._struct is None:
            f, e, d = self.f, self.e, self.d
            table = []
            for k in range(d):
                jk, ik = divmod(k, f)
                row = []
                for l in range(d):
                    jl, il = divmod(l, f)
                    a = [[Fraction(0)] * f for _ in range(e)]
                    b = [[Fraction(0)] * f for _ in range(e)]
                    a[jk][ik] = Fraction(1)
                    b[jl][il] = Fraction(1)
                    flat = [c for rw in _basis_mul(self, a, b) for c in rw]
                    row.append(tuple((m, c) for m, c in enumerate(flat) if c))
                table.append(row)
            self._struct = table
        return self._struct

    # -- structural relations ------------------------------------------------

    def same_tower(self, other):
        return (
            self.p == other.p
            and self.unram_poly == other.unram_poly
            and self.eis_poly == other.eis_poly
        )

    def is_subtower_of(self, other):
        if self.p != other.p:
            return False
        if self.e > 1:
            return self.same_tower(other)
        if self.f > 1:
            return self.unram_poly == other.unram_poly
        return True

    def relative_ramification(self, other):
        if not self.is_subtower_of(other):
            raise NotSubtower("%s is not a structural subtower of %s" % (self.label, other.label))
        return other.e // self.e

    def relative_residue_degree(self, other):
        if not self.is_subtower_of(other):
            raise NotSubtower("%s is not a structural subtower of %s" % (self.label, other.label))
        return other.f // self.f

    # -- serialization ---------------------------------------------------------

    def to_json(self):
        return {
            "p": self.p,
            "unram_poly": list(self.unram_poly),
            "eis_poly": [[format_rational(c) for c in coeff] for coeff in self.eis_poly],
            "label": self.label,
        }

    @staticmethod
    def from_json(obj):
        eis = [[parse_rational(c) for c in coeff] for coeff in obj["eis_poly"]]
        return TowerDescriptor(
            int(obj["p"]),
            [int(c) for c in obj["unram_poly"]],
            eis,
            obj.get("label", ""),
        )

    def __repr__(self):
        return "TowerDescriptor(%s)" % self.label

    def __eq__(self, other):
        return isinstance(other, TowerDescriptor) and self.same_tower(other)

    def __hash__(self):
        return hash((self.p, self.unram_poly, self.eis_poly))


def make_tower(p, unram_poly, eis_poly, label=""):
    """Build and validate a TowerDescriptor.

    `unram_poly` is a list of integer coefficients (constant first) and
    `eis_poly` a list of coefficients over the unramified subring, each
    itself a rational-coefficient list (constant first) in powers of omega.
    Plain numbers are accepted for eis_poly entries over a trivial
    unramified step.
    """
    eis = []
    for coeff in eis_poly:
        if isinstance(coeff, (list, tuple)):
            eis.append(tuple(Fraction(c) for c in coeff))
        else:
            eis.append((Fraction(coeff),))
    return TowerDescriptor(p, unram_poly, eis, label)


def _basis_mul(T, ca, cb):
    """Multiply two coordinate arrays by polynomial reduction: as
    polynomials in theta over Q[omega]/(g), then theta-degree reduction via
    the Eisenstein relation.  Used only to seed the structure-constant
    table."""
    e = T.e
    prod = [()] * (2 * e - 1)
    for j1, row1 in enumerate(ca):
        a = _qpoly_trim(row1)
        if not a:
            continue
        for j2, row2 in enumerate(cb):
            b = _qpoly_trim(row2)
            if not b:
                continue
            ab = _qpoly_rem_monic(_qpoly_mul(a, b), T._gq)
            cur = prod[j1 + j2]
            n = max(len(cur), len(ab))
            cur = _upoly_pad(cur, n)
            ab = _upoly_pad(ab, n)
            prod[j1 + j2] = _qpoly_trim(x + y for x, y in zip(cur, ab))
    prod = [list(_upoly_pad(c, T.f)) for c in prod]
    for k in range(2 * e - 2, e - 1, -1):
        top = prod[k]
        if all(c == 0 for c in top):
            continue
        for j in range(e):
            hj = _qpoly_trim(T.eis_poly[j])
            if not hj:
                continue
            corr = _qpoly_rem_monic(_qpoly_mul(_qpoly_trim(top), hj), T._gq)
            corr = _upoly_pad(corr, T.f)
            tgt = prod[k - e + j]
            for i in range(T.f):
                tgt[i] -= corr[i]
        prod[k] = [Fraction(0)] * T.f
    return prod[:e]


class FieldElement:
    """Element of the fraction field, coords[j][i] the coefficient of
    omega^i * theta^j."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower, coords):
        self.tower = tower
        self.coords = tuple(
            tuple(Fraction(c) for c in _upoly_pad(tuple(row), tower.f)) for row in coords
        )
        if len(self.coords) != tower.e:
            raise FmcalcError("coordinate array has wrong theta-degree")

    # -- basic structure -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TowerMismatch("expected a FieldElement")
        if not self.tower.same_tower(other.tower):
            raise TowerMismatch(
                "elements of different towers: %s vs %s"
                % (self.tower.label, other.tower.label)
            )

    def is_zero(self):
        return all(c == 0 for row in self.coords for c in row)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.tower.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.tower.same_tower(other.tower) and self.coords == other.coords

    def __hash__(self):
        return hash((self.tower, self.coords))

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.tower.from_rational(other)
        self._check(other)
        return FieldElement(
            self.tower,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.coords, other.coords)
            ],
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, [[-c for c in row] for row in self.coords])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.tower.from_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.tower.from_rational(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return FieldElement(self.tower, [[c * r for c in row] for row in self.coords])
        self._check(other)
        T = self.tower
        struct = T.structure_constants()
        f, d = T.f, T.d
        a = [c for row in self.coords for c in row]
        b = [c for row in other.coords for c in row]
        out = [Fraction(0)] * d
        for k in range(d):
            ak = a[k]
            if not ak:
                continue
            for l in range(d):
                bl = b[l]
                if not bl:
                    continue
                c = ak * bl
                for m, s in struct[k][l]:
                    out[m] += c * s
        return FieldElement(T, [out[j * f : (j + 1) * f] for j in range(T.e)])

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        T = self.tower
        d = T.d
        # Column k of M is self * basis_k in flat coordinates (index j*f + i).
        cols = []
        for j in range(T.e):
            for i in range(T.f):
                coords = [[Fraction(0)] * T.f for _ in range(T.e)]
                coords[j][i] = Fraction(1)
                prod = self * FieldElement(T, coords)
                cols.append([c for row in prod.coords for c in row])
        # Solve M x = e_0 by Gaussian elimination over Q.
        M = [[cols[k][r] for k in range(d)] + [Fraction(1 if r == 0 else 0)] for r in range(d)]
        for col in range(d):
            piv = next((r for r in range(col, d) if M[r][col] != 0), None)
            if piv is None:
                raise DivisionByZero("singular multiplication matrix (zero divisor?)")
            M[col], M[piv] = M[piv], M[col]
            inv = 1 / M[col][col]
            M[col] = [x * inv for x in M[col]]
            for r in range(d):
                if r != col and M[r][col] != 0:
                    factor = M[r][col]
                    M[r] = [x - factor * y for x, y in zip(M[r], M[col])]
        flat = [M[r][d] for r in range(d)]
        coords = [flat[j * T.f : (j + 1) * T.f] for j in range(T.e)]
        return FieldElement(T, coords)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            if r == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / r)
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.tower.from_rational(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        return [[format_rational(c) for c in row] for row in self.coords]

    @staticmethod
    def from_json(tower, obj):
        if isinstance(obj, (str, int)):
            return tower.from_rational(parse_rational(obj))
        return FieldElement(tower, [[parse_rational(c) for c in row] for row in obj])

    def __repr__(self):
        names = []
        for j, row in enumerate(self.coords):
            for i, c in enumerate(row):
                if c == 0:
                    continue
                basis = "".join(
                    s
                    for s in (
                        ("w" if i == 1 else "w^%d" % i) if i else "",
                        ("t" if j == 1 else "t^%d" % j) if j else "",
                    )
                    if s
                )
                names.append("%s%s%s" % (format_rational(c), "*" if basis else "", basis))
        return "<%s>" % (" + ".join(names) if names else "0")


# ---------------------------------------------------------------------------
# Integrality, valuation, residue, embedding


def is_integral(z):
    """True iff every power-basis coordinate is a p-integral rational."""
    p = z.tower.p
    return all(c.denominator % p != 0 for row in z.coords for c in row)


def valuation(z):
    """pi-adic valuation normalized so valuation(uniformizer) = 1 and
    valuation(p) = e; valuation(0) = +infinity."""
    if z.is_zero():
        return INFINITY
    T = z.tower
    pi = T.uniformizer()
    vals = [padic_valuation_rational(c, T.p) for row in z.coords for c in row if c != 0]
    max_den = max(0, -min(vals))
    cap = T.e * (1 + max_den) + T.e
    w = z * pi ** cap
    if not is_integral(w):
        raise FmcalcError("valuation cap failed to clear denominators")
    max_num = max(0, max(vals))
    bound = cap + T.e * (1 + max_num) + T.e
    t = 0
    while True:
        wn = w / pi
        if not is_integral(wn):
            break
        w = wn
        t += 1
        if t > bound:
            raise FmcalcError("valuation search exceeded its bound")
    return t - cap


def residue(z):
    """Image in F_q = F_p[omega]/(gbar) under theta -> 0, coefficients mod p."""
    if not is_integral(z):
        raise NotIntegral("residue of a non-integral element")
    T = z.tower
    vec = [_fraction_mod_p(c, T.p) for c in z.coords[0]]
    return ResidueElement(T, modp.fq_reduce(vec, T.gbar, T.p))


@dataclass(frozen=True)
class ResidueElement:
    """Element of the residue field F_q, as a vector over F_p modulo gbar."""

    tower: TowerDescriptor
    vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "vec", modp.fq_reduce(self.vec, self.tower.gbar, self.tower.p))

    def is_zero(self):
        return not self.vec

    def __bool__(self):
        return bool(self.vec)

    def _check(self, other):
        if self.tower.p != other.tower.p or self.tower.gbar != other.tower.gbar:
            raise TowerMismatch("residue fields differ")

    def __add__(self, other):
        self._check(other)
        return ResidueElement(self.tower, modp.fq_add(self.vec, other.vec, self.tower.p))

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __neg__(self):
        return ResidueElement(self.tower, modp.fq_neg(self.vec, self.tower.p))

    def __mul__(self, other):
        if isinstance(other, int):
            return ResidueElement(
                self.tower, modp.scalar_mul(other, self.vec, self.tower.p)
            )
        self._check(other)
        return ResidueElement(
            self.tower, modp.fq_mul(self.vec, other.vec, self.tower.gbar, self.tower.p)
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero residue")
        return ResidueElement(
            self.tower, modp.fq_inv(self.vec, self.tower.gbar, self.tower.p)
        )

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = ResidueElement(self.tower, (1,))
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_json(self):
        return list(self.vec)


def embed(z, target):
    """Reinterpret an element of a structural subtower inside `target`."""
    src = z.tower
    if not src.is_subtower_of(target):
        raise NotSubtower(
            "%s is not a structural subtower of %s" % (src.label, target.label)
        )
    if src.same_tower(target):
        return FieldElement(target, z.coords)
    coords = [[Fraction(0)] * target.f for _ in range(target.e)]
    for i, c in enumerate(z.coords[0]):
        coords[0][i] = c
    return FieldElement(target, coords)


# ---------------------------------------------------------------------------
# Prime splitting of a global polynomial


@dataclass(frozen=True)
class SplittingReport:
    prime: int
    factor_degrees: tuple
    ramified: bool
    splits_completely: bool
    equal_degrees: bool

    def to_json(self):
        return {
            "prime": self.prime,
            "factor_degrees": list(self.factor_degrees),
            "ramified": self.ramified,
            "splits_completely": self.splits_completely,
            "equal_degrees": self.equal_degrees,
        }


def analyze_prime(global_poly, p):
    """Splitting behaviour of a monic integer polynomial modulo p."""
    fbar = modp.make(global_poly, p)
    if modp.deg(fbar) != len(global_poly) - 1:
        # Leading coefficient vanished mod p; treat as ramified/degenerate.
        return SplittingReport(p, tuple(modp.factor_degrees(fbar, p)) if fbar else (), True, False, False)
    derivative = modp.derivative(fbar, p)
    squarefree = modp.deg(modp.gcd(fbar, derivative, p)) == 0 if derivative else False
    degrees = tuple(modp.factor_degrees(fbar, p))
    splits = all(d == 1 for d in degrees)
    equal = len(set(degrees)) == 1
    return SplittingReport(p, degrees, not squarefree, splits, equal)


def find_nonsplit_prime(global_poly, p_max):
    """Smallest prime p <= p_max at which the polynomial is squarefree mod p,
    not totally split, and has all factor degrees equal."""
    global_poly = tuple(int(c) for c in global_poly)
    if len(global_poly) < 2 or global_poly[-1] != 1:
        raise FmcalcError("global polynomial must be monic of degree >= 1")
    scan_table = []
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        report = analyze_prime(global_poly, p)
        scan_table.append(report)
        if not report.ramified and not report.splits_completely and report.equal_degrees:
            return report
    raise NoSuitablePrimeFound(
        "no unramified, non-split, equal-degree prime up to %d" % p_max,
        scan_table,
    )

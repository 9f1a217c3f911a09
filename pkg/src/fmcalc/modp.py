"""Polynomial arithmetic over prime fields F_p.

Polynomials are tuples of ints in [0, p), constant coefficient first,
with no trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import itertools


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def make(coeffs, p):
    return trim(c % p for c in coeffs)


def deg(f):
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    f = f + (0,) * (n - len(f))
    g = g + (0,) * (n - len(g))
    return trim((a + b) % p for a, b in zip(f, g))


def sub(f, g, p):
    n = max(len(f), len(g))
    f = f + (0,) * (n - len(f))
    g = g + (0,) * (n - len(g))
    return trim((a - b) % p for a, b in zip(f, g))


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def scalar_mul(c, f, p):
    c %= p
    return trim((c * a) % p for a in f)


def poly_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv_lead = pow(g[-1], p - 2, p)
    for k in range(len(f) - len(g), -1, -1):
        c = (f[k + len(g) - 1] * inv_lead) % p
        if c:
            q[k] = c
            for j, b in enumerate(g):
                f[k + j] = (f[k + j] - c * b) % p
    return trim(q), trim(f)


def gcd(f, g, p):
    while g:
        f, g = g, poly_divmod(f, g, p)[1]
    return monic(f, p)


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return scalar_mul(inv, f, p)


def pow_mod(f, n, mod, p):
    result = (1,)
    f = poly_divmod(f, mod, p)[1]
    while n > 0:
        if n & 1:
            result = poly_divmod(mul(result, f, p), mod, p)[1]
        f = poly_divmod(mul(f, f, p), mod, p)[1]
        n >>= 1
    return result


def derivative(f, p):
    return trim((i * c) % p for i, c in enumerate(f) if i >= 1)


def is_irreducible(f, p):
    """Rabin test via distinct-degree steps: x^{p^n} = x mod f and
    gcd(x^{p^{n/r}} - x, f) = 1 for every prime divisor r of n."""
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    h = pow_mod(x, p ** n, f, p)
    if sub(h, x, p):
        return False
    for r in _prime_divisors(n):
        h = pow_mod(x, p ** (n // r), f, p)
        if deg(gcd(sub(h, x, p), f, p)) > 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_decomposition(f, p):
    """Yun-style decomposition over F_p, handling p-th power parts.

    Returns a list of (squarefree factor, multiplicity) with the product of
    factor^multiplicity equal to monic(f).
    """
    f = monic(f, p)
    out = []
    if deg(f) <= 0:
        return out
    fprime = derivative(f, p)
    if not fprime:
        # f = g(x^p) = g_frob(x)^p with coefficients' p-th roots (identity on F_p)
        g = trim(f[i] for i in range(0, len(f), p))
        for base, mult in squarefree_decomposition(g, p):
            out.append((base, mult * p))
        return out
    c = gcd(f, fprime, p)
    w = poly_divmod(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = poly_divmod(w, y, p)[0]
        if deg(z) > 0:
            out.append((z, i))
        c = poly_divmod(c, y, p)[0]
        w = y
        i += 1
    if deg(c) > 0:
        for base, mult in squarefree_decomposition(c, p):
            out.append((base, mult * p))
    return out


def distinct_degree_degrees(f, p):
    """Factor degrees (with count) of a squarefree monic f over F_p.

    Returns a sorted list of degrees, one entry per irreducible factor.
    """
    degrees = []
    x = (0, 1)
    h = x
    rest = f
    d = 0
    while deg(rest) > 0:
        d += 1
        if 2 * d > deg(rest):
            degrees.extend([deg(rest)])
            break
        h = pow_mod(h, p, rest, p)
        g = gcd(sub(h, x, p), rest, p)
        if deg(g) > 0:
            degrees.extend([d] * (deg(g) // d))
            rest = poly_divmod(rest, g, p)[0]
            h = poly_divmod(h, rest, p)[1]
    return sorted(degrees)


def factor_degrees(f, p):
    """Degrees of all irreducible factors of f mod p, with multiplicity."""
    degrees = []
    for base, mult in squarefree_decomposition(f, p):
        degrees.extend(distinct_degree_degrees(base, p) * mult)
    return sorted(degrees)


def smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    if n == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=n):
        f = trim(tuple(tail) + (1,))
        if is_irreducible(f, p):
            return f
    raise AssertionError("irreducible polynomials of every degree exist")


# ---------------------------------------------------------------------------
# Arithmetic in F_q = F_p[w]/(gbar), elements as int tuples of length deg(gbar)


def fq_reduce(vec, gbar, p):
    return poly_divmod(make(vec, p), gbar, p)[1]


def fq_add(a, b, p):
    return add(a, b, p)


def fq_mul(a, b, gbar, p):
    return poly_divmod(mul(a, b, p), gbar, p)[1]


def fq_neg(a, p):
    return trim((-c) % p for c in a)


def fq_inv(a, gbar, p):
    if not a:
        raise ZeroDivisionError("inverse of zero in F_q")
    q = p ** deg(gbar)
    return pow_mod(a, q - 2, gbar, p)

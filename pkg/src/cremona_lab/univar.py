"""Dense univariate arithmetic over a Field: gcd, squarefree part, roots.

Polynomials are coefficient lists [c0, c1, ...] (c_k the coefficient of
x^k), normalized to have a nonzero top coefficient.  Only tiny degrees occur
here (eliminants of zero-dimensional schemes), so everything is quadratic
and plain.
"""

from __future__ import annotations

from .fields import GF, GF2, Field
from .rng import Rng


def trim(f: list, F: Field) -> list:
    while f and f[-1] == F.zero:
        f.pop()
    return f


def deg(f: list) -> int:
    return len(f) - 1


def monic(f: list, F: Field) -> list:
    if not f:
        return f
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def add(f, g, F):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return trim(out, F)


def mul(f, g, F):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out, F)


def divmod_(f, g, F):
    if not g:
        raise ZeroDivisionError
    f = f[:]
    q = [F.zero] * max(0, len(f) - len(g) + 1)
    ginv = F.inv(g[-1])
    while len(f) >= len(g) and f:
        c = F.mul(f[-1], ginv)
        k = len(f) - len(g)
        q[k] = c
        for i in range(len(g)):
            f[k + i] = F.sub(f[k + i], F.mul(c, g[i]))
        trim(f, F)
    return trim(q, F), f


def gcd(f, g, F):
    f, g = f[:], g[:]
    while g:
        f, g = g, divmod_(f, g, F)[1]
    return monic(f, F)


def derivative(f, F):
    return trim([F.mul(c, F.of(i)) for i, c in enumerate(f)][1:], F)


def squarefree_part(f, F):
    if deg(f) <= 0:
        return monic(f, F)
    d = derivative(f, F)
    if not d:
        raise ValueError("inseparable polynomial (characteristic divides exponents)")
    g = gcd(f, d, F)
    q, r = divmod_(f, g, F)
    assert not r
    return monic(q, F)


def powmod(base, e: int, f, F):
    """base^e mod f."""
    result = [F.one]
    base = divmod_(base, f, F)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, F), f, F)[1]
        base = divmod_(mul(base, base, F), f, F)[1]
        e >>= 1
    return result


def roots_gf(f, F: GF, rng: Rng) -> list:
    """All roots in GF(p) of a nonzero polynomial (with multiplicity dropped)."""
    assert isinstance(F, GF) and not isinstance(F, GF2)
    f = monic(squarefree_part(f, F), F)
    # linear-factor part: gcd(f, x^p - x)
    xp = powmod([F.zero, F.one], F.p, f, F)
    lin = gcd(add(xp, [F.zero, F.neg(F.one)], F), f, F)
    out: list = []
    _split_roots(lin, F, rng, out)
    out.sort()
    return out


def _split_roots(f, F: GF, rng: Rng, out: list) -> None:
    """Equal-degree splitting of a product of distinct linear factors."""
    d = deg(f)
    if d <= 0:
        return
    if d == 1:
        out.append(F.neg(F.mul(f[0], F.inv(f[1]))))
        return
    p = F.p
    while True:
        a = F.rand(rng)
        # gcd(f, (x+a)^((p-1)/2) - 1) splits the root set
        g = powmod([a, F.one], (p - 1) // 2, f, F)
        g = add(g, [F.neg(F.one)], F)
        h = gcd(g, f, F)
        if 0 < deg(h) < d:
            _split_roots(h, F, rng, out)
            _split_roots(divmod_(f, h, F)[0], F, rng, out)
            return


def quadratic_roots_ext(f, F: GF, F2: GF2) -> list:
    """Roots in GF(p^2) of an irreducible quadratic over GF(p)."""
    assert deg(f) == 2
    a, b, c = f[2], f[1], f[0]
    disc = F.sub(F.mul(b, b), F.mul(F.of(4), F.mul(a, c)))
    s = F2.sqrt(F2.lift(disc))
    inv2a = F2.inv(F2.lift(F.mul(F.of(2), a)))
    r1 = F2.mul(F2.add(F2.lift(F.neg(b)), s), inv2a)
    r2 = F2.mul(F2.sub(F2.lift(F.neg(b)), s), inv2a)
    return [r1, r2]


def irreducible_quadratics(f, F: GF, rng: Rng) -> list:
    """The distinct irreducible quadratic factors of f over GF(p)."""
    f = monic(squarefree_part(f, F), F)
    # remove linear part
    xp = powmod([F.zero, F.one], F.p, f, F)
    lin = gcd(add(xp, [F.zero, F.neg(F.one)], F), f, F)
    f = divmod_(f, lin, F)[0]
    if deg(f) <= 0:
        return []
    # quadratic part: gcd(f, x^{p^2} - x)
    xp2 = powmod([F.zero, F.one], F.p * F.p, f, F)
    quad = gcd(add(xp2, [F.zero, F.neg(F.one)], F), f, F)
    return _split_quadratics(quad, F, rng)


def _split_quadratics(f, F: GF, rng: Rng) -> list:
    d = deg(f)
    if d <= 0:
        return []
    if d == 2:
        return [monic(f, F)]
    # Cantor-Zassenhaus equal-degree split for degree-2 factors
    p2 = F.p * F.p
    while True:
        a = [F.rand(rng), F.rand(rng), F.one]
        g = powmod(a, (p2 - 1) // 2, f, F)
        g = add(g, [F.neg(F.one)], F)
        h = gcd(g, f, F)
        if 0 < deg(h) < d:
            return _split_quadratics(h, F, rng) + _split_quadratics(divmod_(f, h, F)[0], F, rng)


def roots_qq(f, F) -> list:
    """Rational roots via the integer root bound (small inputs only)."""
    from fractions import Fraction
    from math import gcd as igcd

    f = trim(f[:], F)
    if deg(f) <= 0:
        return []
    den = 1
    for c in f:
        den = den * c.denominator // igcd(den, c.denominator)
    zf = [int(c * den) for c in f]
    g = 0
    for c in zf:
        g = igcd(g, c)
    zf = [c // g for c in zf]
    roots = set()
    k = 0
    while zf[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        zf = zf[k:]
    a0, an = abs(zf[0]), abs(zf[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for num in divisors(a0):
        for dn in divisors(an):
            for s in (1, -1):
                cand = Fraction(s * num, dn)
                v = Fraction(0)
                for c in reversed(f):
                    v = v * cand + c
                if v == 0:
                    roots.add(cand)
    return sorted(roots)

"""Conrey-labelled Dirichlet characters, values as exact phases."""

from fractions import Fraction
from functools import lru_cache
from math import gcd


def factor(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def phi(n):
    r = n
    for p, _ in factor(n):
        r = r // p * (p - 1)
    return r


@lru_cache(maxsize=None)
def primitive_root(p):
    """Least g generating (Z/p^2)*, hence (Z/p^e)* for all e."""
    for g in range(2, p * p):
        if gcd(g, p) != 1:
            continue
        order, y = 1, g % (p * p)
        while y != 1:
            y = y * g % (p * p)
            order += 1
        if order == p * (p - 1):
            return g
    raise ValueError(p)


@lru_cache(maxsize=None)
def _log_table(g, m):
    table, y = {}, 1 % m
    for k in range(m):
        if y in table:
            break
        table[y] = k
        y = y * g % m
    return table


@lru_cache(maxsize=None)
def phase(q, n, m):
    """chi_q(n, m) = exp(2 pi i * phase); None when gcd(m, q) > 1."""
    if gcd(m, q) != 1:
        return None
    total = Fraction(0)
    for p, e in factor(q):
        pe = p ** e
        nn, mm = n % pe, m % pe
        if p == 2:
            if e == 1:
                continue
            en = 1 if nn % 4 == 1 else -1
            em = 1 if mm % 4 == 1 else -1
            if en == -1 and em == -1:
                total += Fraction(1, 2)
            if e >= 3:
                logs = _log_table(5, pe)
                a = logs[(en * nn) % pe]
                b = logs[(em * mm) % pe]
                total += Fraction(a * b, pe // 4)
        else:
            g = primitive_root(p)
            logs = _log_table(g, pe)
            total += Fraction(logs[nn] * logs[mm], pe // p * (p - 1))
    return total - (total.numerator // total.denominator)


def units(q):
    return [m for m in range(1, q + 1) if gcd(m, q) == 1] if q > 1 else [1]


@lru_cache(maxsize=None)
def order(q, n):
    o = 1
    for m in units(q):
        o = o * phase(q, n, m).denominator // gcd(o, phase(q, n, m).denominator)
    return o


@lru_cache(maxsize=None)
def conductor(q, n):
    for c in sorted(d for d in range(1, q + 1) if q % d == 0):
        if all(phase(q, n, m) == 0 for m in units(q) if (m - 1) % c == 0):
            return c
    return q


def is_even(q, n):
    return phase(q, n, q - 1 if q > 2 else 1) == 0


@lru_cache(maxsize=None)
def galois_orbits(q):
    """Orbits sorted by (order, trace vector), each a sorted list of indexes."""
    seen, orbits = set(), []
    for n in units(q):
        if n in seen:
            continue
        o = order(q, n)
        orb = sorted({pow(n, k, q) if q > 1 else 1 for k in range(1, o + 1) if gcd(k, o) == 1})
        seen.update(orb)
        orbits.append(orb)

    def key(orb):
        import cmath
        tr = []
        for m in range(1, q + 1):
            s = 0
            for n in orb:
                ph = phase(q, n, m)
                if ph is not None:
                    s += cmath.exp(2j * cmath.pi * float(ph))
            tr.append(round(s.real))
        return (order(q, orb[0]), tr)

    return sorted(orbits, key=key)


def orbit_letters(index):
    out = ""
    while True:
        out = chr(ord("a") + index % 26) + out
        index //= 26
        if index == 0:
            return out


def value(q, n, m):
    import cmath
    ph = phase(q, n, m)
    return 0 if ph is None else cmath.exp(2j * cmath.pi * float(ph))

"""Polynomials over F2 packed into Python ints (bit i is the coefficient of x^i)."""

from __future__ import annotations


def degree(a: int) -> int:
    """Degree of ``a``; the zero polynomial has degree -1."""
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def divmod2(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = degree(b)
    q = 0
    while a and degree(a) >= db:
        shift = degree(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def mod(a: int, b: int) -> int:
    return divmod2(a, b)[1]


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    return mod(clmul(a, b), m)


def powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = mod(a, m)
    while e:
        if e & 1:
            r = mulmod(r, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return mod(r, m)


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(m: int) -> bool:
    """Rabin's irreducibility test over F2."""
    n = degree(m)
    if n < 1:
        return False
    if n == 1:
        return True
    x = 0b10
    # x^(2^n) == x mod m
    r = x
    for _ in range(n):
        r = mulmod(r, r, m)
    if r != x:
        return False
    for p in prime_factors(n):
        r = x
        for _ in range(n // p):
            r = mulmod(r, r, m)
        if gcd(r ^ x, m) != 1:
            return False
    return True


def to_str(a: int, var: str = "x") -> str:
    if a == 0:
        return "0"
    terms = []
    for i in range(degree(a), -1, -1):
        if (a >> i) & 1:
            if i == 0:
                terms.append("1")
            elif i == 1:
                terms.append(var)
            else:
                terms.append(f"{var}^{i}")
    return " + ".join(terms)

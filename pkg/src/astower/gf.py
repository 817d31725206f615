"""Arithmetic in GF(2^s) in a polynomial basis.

Elements are handled internally as plain ints (bit i is the coordinate of
X^i); :class:`FieldElement` wraps an int together with its :class:`FieldCtx`
for the public, operator-based API.  The int encoding is also the canonical
total order on a field.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from . import gf2x
from ._kernels import make_kernel

MAX_DEGREE = 32          # user-facing fields
MAX_INTERNAL_DEGREE = 64  # constant-field extensions made by the genus runs
TABLE_DEGREE = 16         # antilog tables up to this degree

# Lowest-weight irreducible per degree; among equal weight, the smallest integer.
DEFAULT_MODULI = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B,
}


class FieldError(ValueError):
    pass


class ContextMismatch(FieldError):
    pass


class NoEmbedding(FieldError):
    pass


class DivisionByH(ZeroDivisionError):
    """f was evaluated at a root of T^2 + T + 1."""


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@lru_cache(maxsize=None)
def default_modulus(s: int) -> int:
    if s in DEFAULT_MODULI:
        return DEFAULT_MODULI[s]
    if not 1 <= s <= MAX_INTERNAL_DEGREE:
        raise FieldError(f"no default modulus for degree {s}")
    for k in range(1, s):
        m = (1 << s) | (1 << k) | 1
        if gf2x.is_irreducible(m):
            return m
    for a in range(3, s):
        for b in range(2, a):
            for c in range(1, b):
                m = (1 << s) | (1 << a) | (1 << b) | (1 << c) | 1
                if gf2x.is_irreducible(m):
                    return m
    raise FieldError(f"no trinomial or pentanomial of degree {s}")  # pragma: no cover


def _antilog_tables(s: int, modulus: int) -> tuple[list[int], list[int]]:
    q1 = (1 << s) - 1
    if s == 1:
        return [1, 1], [0, 0]
    factors = gf2x.prime_factors(q1)
    gen = None
    for g in range(2, 1 << s):
        if all(gf2x.powmod(g, q1 // p, modulus) != 1 for p in factors):
            gen = g
            break
    exp = [0] * (2 * q1)
    log = [0] * (q1 + 1)
    x = 1
    for i in range(q1):
        exp[i] = x
        exp[i + q1] = x
        log[x] = i
        x = gf2x.mulmod(x, gen, modulus)
    return exp, log


class FieldCtx:
    """The field GF(2^s) defined by an irreducible ``modulus``.

    Instances are immutable and interned: ``FieldCtx(s, m) is FieldCtx(s, m)``.
    """

    _cache: dict[tuple[int, int], "FieldCtx"] = {}

    def __new__(cls, s: int, modulus: int | None = None, *, internal: bool = False):
        limit = MAX_INTERNAL_DEGREE if internal else MAX_DEGREE
        if not isinstance(s, int) or not 1 <= s <= limit:
            raise FieldError(f"extension degree must satisfy 1 <= s <= {limit}, got {s!r}")
        if modulus is None:
            modulus = default_modulus(s)
        key = (s, modulus)
        ctx = cls._cache.get(key)
        if ctx is not None:
            return ctx
        if gf2x.degree(modulus) != s:
            raise FieldError(f"modulus {modulus:#x} does not have degree {s}")
        if not gf2x.is_irreducible(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible over F2")
        ctx = super().__new__(cls)
        ctx._setup(s, modulus)
        cls._cache[key] = ctx
        return ctx

    def _setup(self, s, modulus):
        self.s = s
        self.modulus = modulus
        self.q = 1 << s
        if s <= TABLE_DEGREE:
            exp, log = _antilog_tables(s, modulus)
        else:
            exp = log = None
        self.kernel = make_kernel(s, modulus, exp, log)
        self.mul = self.kernel.mul
        self.inv = self.kernel.inv
        self._trace_mask = self._compute_trace_mask()
        self._as_basis = self._compute_as_basis()
        self._sqrt_basis = [self._pow2k(1 << i, s - 1) for i in range(s)]
        self._doubled = None

    def __reduce__(self):
        return (_restore_ctx, (self.s, self.modulus))

    def __repr__(self):
        return f"FieldCtx(s={self.s}, modulus={self.modulus:#x})"

    # -- int-level arithmetic --------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def _pow2k(self, a: int, k: int) -> int:
        for _ in range(k):
            a = self.mul(a, a)
        return a

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        # Frobenius is F2-linear, so is its inverse: combine basis images
        r = 0
        i = 0
        while a:
            if a & 1:
                r ^= self._sqrt_basis[i]
            a >>= 1
            i += 1
        return r

    def _compute_trace_mask(self) -> int:
        mask = 0
        for i in range(self.s):
            x = 1 << i
            t = 0
            for _ in range(self.s):
                t ^= x
                x = self.mul(x, x)
            if t not in (0, 1):  # pragma: no cover - field axioms
                raise FieldError("trace left the prime field")
            mask |= t << i
        return mask

    def trace(self, a: int) -> int:
        return (a & self._trace_mask).bit_count() & 1

    def trace_direct(self, a: int) -> int:
        """Trace as the sum of Frobenius conjugates (slow reference)."""
        t = 0
        for _ in range(self.s):
            t ^= a
            a = self.mul(a, a)
        return t

    def _compute_as_basis(self) -> dict[int, tuple[int, int]]:
        # echelon basis of the image of x -> x^2 + x, keyed by leading bit,
        # each row paired with one preimage
        basis: dict[int, tuple[int, int]] = {}
        for i in range(self.s):
            pre = 1 << i
            vec = self.mul(pre, pre) ^ pre
            while vec:
                top = vec.bit_length() - 1
                if top not in basis:
                    basis[top] = (vec, pre)
                    break
                bv, bp = basis[top]
                vec ^= bv
                pre ^= bp
        return basis

    def solve_as(self, c: int) -> tuple[int, int] | None:
        """Both roots of T^2 + T + c in increasing order, or None."""
        x = 0
        while c:
            top = c.bit_length() - 1
            row = self._as_basis.get(top)
            if row is None:
                return None
            c ^= row[0]
            x ^= row[1]
        return (x, x ^ 1) if x < x ^ 1 else (x ^ 1, x)

    def h(self, a: int) -> int:
        """h(a) = a^2 + a + 1."""
        return self.mul(a, a) ^ a ^ 1

    def h_roots(self) -> list[int]:
        roots = self.solve_as(1)
        return list(roots) if roots else []

    def f(self, a: int) -> int:
        """a / (a^2 + a + 1)."""
        d = self.h(a)
        if d == 0:
            raise DivisionByH(f"{a} is a root of T^2 + T + 1")
        return self.mul(a, self.inv(d))

    # -- elements ----------------------------------------------------------------

    def __call__(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def gen(self) -> "FieldElement":
        """The class of X, a root of the modulus."""
        return FieldElement(self, 0b10 if self.s > 1 else 1)

    def format(self, a) -> str:
        if a is INFINITY:
            return "inf"
        if a is None:
            return "?"
        return str(a)

    # -- extensions ----------------------------------------------------------------

    def extension(self, t: int, modulus: int | None = None) -> "Embedding":
        """An embedding of this field into a field of degree ``s * t``."""
        big = FieldCtx(self.s * t, modulus, internal=True)
        return Embedding(self, big)

    def doubled(self) -> "Embedding":
        if self._doubled is None:
            self._doubled = self.extension(2)
        return self._doubled


def _restore_ctx(s, modulus):
    return FieldCtx(s, modulus, internal=True)


class FieldElement:
    """An element of a :class:`FieldCtx`, usable with the arithmetic operators."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        if not 0 <= bits < ctx.q:
            raise FieldError(f"{bits} is not an element of GF(2^{ctx.s})")
        self.ctx = ctx
        self.bits = bits

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other.bits
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.bits, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.div(self.bits, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.div(b, self.bits))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.bits, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash(self.bits)

    def __lt__(self, other: "FieldElement"):
        return self.bits < self._other(other)

    def __int__(self):
        return self.bits

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"GF(2^{self.ctx.s})({self.bits})"

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.bits))


class Embedding:
    """A ring homomorphism GF(2^s) -> GF(2^(s*t)).

    The image of X is the smallest root, in the int order, of the source
    modulus inside the target field.
    """

    def __init__(self, src: FieldCtx, dst: FieldCtx):
        if dst.s % src.s:
            raise NoEmbedding(f"GF(2^{src.s}) does not embed in GF(2^{dst.s})")
        self.src = src
        self.dst = dst
        root = min(_roots_of_gf2_poly(src.modulus, dst))
        self.root = root
        self._images = []
        x = 1
        for _ in range(src.s):
            self._images.append(x)
            x = dst.mul(x, root)

    def __call__(self, a):
        if a is INFINITY or a is None:
            return a
        r = 0
        i = 0
        while a:
            if a & 1:
                r ^= self._images[i]
            a >>= 1
            i += 1
        return r

    def __repr__(self):
        return f"Embedding({self.src} -> {self.dst})"


# -- polynomials over GF(2^n), coefficient lists lowest degree first ------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    return [x ^ (b[i] if i < len(b) else 0) for i, x in enumerate(a)]


def _pmod(a: list[int], m: list[int], F: FieldCtx) -> list[int]:
    a = _ptrim(list(a))
    dm = len(m) - 1
    lead_inv = F.inv(m[-1])
    while len(a) - 1 >= dm:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            if mi:
                a[shift + i] ^= F.mul(c, mi)
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], F: FieldCtx) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] ^= F.mul(x, y)
    return _pmod(prod, m, F)


def _pgcd(a: list[int], b: list[int], F: FieldCtx) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, F)
    if a:
        c = F.inv(a[-1])
        a = [F.mul(x, c) for x in a]
    return a


def _pdiv_exact(a: list[int], b: list[int], F: FieldCtx) -> list[int]:
    a = _ptrim(list(a))
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bi in enumerate(b):
            if bi:
                a[shift + i] ^= F.mul(c, bi)
        _ptrim(a)
    if a:  # pragma: no cover - callers divide by true factors
        raise FieldError("inexact polynomial division")
    return q


def _split_roots(P: list[int], F: FieldCtx) -> list[int]:
    """Roots of a monic squarefree P that splits into linear factors over F."""
    deg = len(P) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [F.div(P[0], P[1])]
    for c in range(1, F.q):
        # Tr(c T) mod P
        acc = _pmod([0, c], P, F)
        tr = list(acc)
        for _ in range(F.s - 1):
            acc = _pmulmod(acc, acc, P, F)
            tr = _padd(tr, acc)
        g = _pgcd(P, _ptrim(tr), F)
        if 0 < len(g) - 1 < deg:
            return _split_roots(g, F) + _split_roots(_pdiv_exact(P, g, F), F)
    raise NoEmbedding("polynomial does not split over the target field")  # pragma: no cover


def _roots_of_gf2_poly(m: int, F: FieldCtx) -> list[int]:
    P = [(m >> i) & 1 for i in range(gf2x.degree(m) + 1)]
    roots = _split_roots(P, F)
    if len(roots) != len(P) - 1:  # pragma: no cover
        raise NoEmbedding("modulus has no full set of roots in the target field")
    return sorted(roots)


# -- functional API on FieldElement -------------------------------------------------


def _check(a: FieldElement, b: FieldElement) -> FieldCtx:
    if a.ctx is not b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")
    return a.ctx


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(_check(a, b), a.bits ^ b.bits)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    ctx = _check(a, b)
    return FieldElement(ctx, ctx.mul(a.bits, b.bits))


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def trace(a: FieldElement) -> int:
    return a.ctx.trace(a.bits)


def sqrt(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.sqrt(a.bits))


def solve_artin_schreier(c: FieldElement) -> tuple[FieldElement, FieldElement] | None:
    """Both roots of T^2 + T + c, or None when trace(c) == 1."""
    roots = c.ctx.solve_as(c.bits)
    if roots is None:
        return None
    return FieldElement(c.ctx, roots[0]), FieldElement(c.ctx, roots[1])


def h_roots(ctx: FieldCtx) -> list[FieldElement]:
    return [FieldElement(ctx, r) for r in ctx.h_roots()]


def f_map(beta: FieldElement) -> FieldElement:
    return FieldElement(beta.ctx, beta.ctx.f(beta.bits))


def embed(a: FieldElement, t: int, modulus: int | None = None) -> FieldElement:
    emb = a.ctx.extension(t, modulus)
    return FieldElement(emb.dst, emb(a.bits))

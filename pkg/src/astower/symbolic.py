"""Exact arithmetic in F_2(x)[y, z] / (y^2 + y + f(x), z^2 + z + f(y)).

Polynomials over F_2 are ints (bit i is the coefficient of x^i).  Elements of
the degree-4 extension are coordinate vectors over F_2(x) in the basis
1, y, z, yz.  f(y) is rewritten inside the basis using
y^2 + y + 1 = (x + 1)^2 / (x^2 + x + 1), so z^2 = z + y (x^2 + x + 1)/(x + 1)^2.

The identity catalog is written once against the arithmetic operators, so the
same definitions evaluate symbolically here and numerically over GF(2^s).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import gf2x
from .gf import FieldCtx, FieldElement


class SymbolicError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RationalFunction:
    """num/den over F_2 with gcd(num, den) = 1 (den is automatically monic)."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        g = gf2x.gcd(self.num, self.den) if self.num else self.den
        if g != 1:
            object.__setattr__(self, "num", gf2x.divmod2(self.num, g)[0])
            object.__setattr__(self, "den", gf2x.divmod2(self.den, g)[0])

    @staticmethod
    def lift(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, int):
            return RationalFunction(v)
        raise TypeError(f"cannot read {v!r} as a rational function")

    def __add__(self, other):
        o = self.lift(other)
        return RationalFunction(gf2x.clmul(self.num, o.den) ^ gf2x.clmul(o.num, self.den),
                                gf2x.clmul(self.den, o.den))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self.lift(other)
        return RationalFunction(gf2x.clmul(self.num, o.num), gf2x.clmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self.lift(other).inverse()

    def __rtruediv__(self, other):
        return self.lift(other) * self.inverse()

    def __bool__(self):
        return self.num != 0

    def evaluate(self, ctx: FieldCtx, beta: int) -> int:
        def ev(p):
            acc = 0
            for i in range(gf2x.degree(p), -1, -1):
                acc = ctx.mul(acc, beta) ^ ((p >> i) & 1)
            return acc

        d = ev(self.den)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return ctx.div(ev(self.num), d)

    def __str__(self):
        n = gf2x.to_str(self.num)
        return n if self.den == 1 else f"({n})/({gf2x.to_str(self.den)})"


X = RationalFunction(0b10)
ZERO = RationalFunction(0)
ONE = RationalFunction(1)
H_X = RationalFunction(0b111)  # x^2 + x + 1
F_X = X / H_X  # y^2 + y
F_Y_COEFF = H_X / RationalFunction(0b101)  # f(y) = y * (x^2+x+1)/(x+1)^2


def _k1_mul(p0, p1, q0, q1):
    """(p0 + p1 y)(q0 + q1 y) with y^2 = y + f(x)."""
    hi = p1 * q1
    return p0 * q0 + hi * F_X, p0 * q1 + p1 * q0 + hi


class TowerRingElement:
    """c0 + c1 y + c2 z + c3 yz with coefficients in F_2(x)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = tuple(RationalFunction.lift(c) for c in coeffs)
        if len(cs) != 4:
            raise ValueError("need four coordinates")
        self.coeffs = cs

    @classmethod
    def lift(cls, v) -> "TowerRingElement":
        if isinstance(v, TowerRingElement):
            return v
        return cls((RationalFunction.lift(v), ZERO, ZERO, ZERO))

    def __add__(self, other):
        o = self.lift(other)
        return TowerRingElement(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self.lift(other)
        a0, a1, a2, a3 = self.coeffs
        b0, b1, b2, b3 = o.coeffs
        # (P0 + P1 z)(Q0 + Q1 z), P_j, Q_j in F_2(x)[y]
        c00 = _k1_mul(a0, a1, b0, b1)
        c01 = _k1_mul(a0, a1, b2, b3)
        c10 = _k1_mul(a2, a3, b0, b1)
        c11 = _k1_mul(a2, a3, b2, b3)
        # z^2 = z + F_Y_COEFF * y
        c11y = _k1_mul(c11[0], c11[1], ZERO, F_Y_COEFF)
        return TowerRingElement((
            c00[0] + c11y[0],
            c00[1] + c11y[1],
            c01[0] + c10[0] + c11[0],
            c01[1] + c10[1] + c11[1],
        ))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = TowerRingElement.lift(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        return self * ring_inv(self.lift(other))

    def __rtruediv__(self, other):
        return self.lift(other) * ring_inv(self)

    def __eq__(self, other):
        try:
            o = self.lift(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, ctx: FieldCtx, x: int, y: int, z: int) -> int:
        c = [r.evaluate(ctx, x) for r in self.coeffs]
        return c[0] ^ ctx.mul(c[1], y) ^ ctx.mul(c[2], z) ^ ctx.mul(c[3], ctx.mul(y, z))

    def __repr__(self):
        names = ["1", "y", "z", "yz"]
        parts = [f"{c}*{n}" for c, n in zip(self.coeffs, names) if c]
        return " + ".join(parts) or "0"


BASIS = tuple(TowerRingElement(tuple(ONE if i == j else ZERO for i in range(4)))
              for j in range(4))
x = TowerRingElement.lift(X)
y, z = BASIS[1], BASIS[2]


def ring_add(a, b):
    return TowerRingElement.lift(a) + b


def ring_mul(a, b):
    return TowerRingElement.lift(a) * b


def ring_inv(a: TowerRingElement) -> TowerRingElement:
    """Solve a * b = 1 as a 4x4 linear system over F_2(x)."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in the tower ring")
    cols = [(a * e).coeffs for e in BASIS]
    rows = [[cols[j][i] for j in range(4)] + [ONE if i == 0 else ZERO] for i in range(4)]
    for c in range(4):
        piv = next((r for r in range(c, 4) if rows[r][c]), None)
        if piv is None:
            raise SymbolicError("singular multiplication matrix; the ring is not a field")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c].inverse()
        rows[c] = [v * inv for v in rows[c]]
        for r in range(4):
            if r != c and rows[r][c]:
                k = rows[r][c]
                rows[r] = [v + k * w for v, w in zip(rows[r], rows[c])]
    return TowerRingElement(rows[r][4] for r in range(4))


# -- identity catalog -----------------------------------------------------------------------


def _f(u):
    return u / (u * u + u + 1)


def _delta(x, y, z):
    return z + (y + 1) / (x + 1)


Side = Callable[..., object]

IDENTITIES: dict[str, tuple[Side, Side]] = {
    "L4_8": (
        lambda x, y, z: _f(y) + ((y + 1) / (x + 1)) ** 2 + (y + 1) / (x + 1),
        lambda x, y, z: y + 1 / (x * x + x + 1) + 1 / (x + 1),
    ),
    "E4_5": (
        lambda x, y, z: y * y * _f(y),
        lambda x, y, z: 1 + y + 1 / (y * y + y + 1),
    ),
    "E4_6": (
        lambda x, y, z: 1 / (y * y + y + 1) + 1 / (x + 1) ** 2 + 1 / (x + 1),
        lambda x, y, z: x * 0 + 1,
    ),
    "L4_9v": (
        lambda x, y, z: z + (y * _delta(x, y, z)) ** 2 + y * _delta(x, y, z),
        lambda x, y, z: (z * (x + 1) ** 2 / (x * x + x + 1) + y
                         + (x + 1) ** 2 / (x * x + x + 1) ** 2 + (x + 1) / (x * x + x + 1)),
    ),
    "DELTA": (
        lambda x, y, z: _delta(x, y, z) ** 2 + _delta(x, y, z),
        lambda x, y, z: y + 1 / (x * x + x + 1) + 1 / (x + 1),
    ),
}


def identity_sides(name: str, mutate: bool = False):
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    lhs, rhs = IDENTITIES[name]
    left = lhs(x, y, z)
    right = rhs(x, y, z)
    if mutate:
        right = right + 1
    return left, right


def verify_identity(name: str, mutate: bool = False) -> bool:
    """Exact check of a catalog identity; ``mutate`` adds 1 to the right side."""
    left, right = identity_sides(name, mutate)
    return left == right


def sample_point(ctx: FieldCtx, rng: random.Random, tries: int = 10000):
    """Random (x, y, z) in ctx satisfying both relations with every catalog
    denominator nonzero, or None if none was found."""
    for _ in range(tries):
        b = rng.randrange(ctx.q)
        if b in (0, 1) or ctx.h(b) == 0:
            continue
        roots = ctx.solve_as(ctx.f(b))
        if roots is None:
            continue
        yv = roots[rng.randrange(2)]
        if ctx.h(yv) == 0 or yv == 0:
            continue
        zr = ctx.solve_as(ctx.f(yv))
        if zr is None:
            continue
        return b, yv, zr[rng.randrange(2)]
    return None


def verify_identity_numeric(name: str, ctx: FieldCtx, samples: int = 20, seed: int = 0,
                            mutate: bool = False) -> bool:
    """Evaluate both sides at random points of the curve over ``ctx``.

    True iff the sides agree at every sampled point.
    """
    rng = random.Random(seed)
    lhs, rhs = IDENTITIES[name]
    for _ in range(samples):
        pt = sample_point(ctx, rng)
        if pt is None:
            raise SymbolicError(f"no usable points over GF(2^{ctx.s})")
        xv, yv, zv = (FieldElement(ctx, v) for v in pt)
        a, b = lhs(xv, yv, zv), rhs(xv, yv, zv)
        if mutate:
            b = b + 1
        if a != b:
            return False
    return True

"""Truncated Laurent series over GF(2^s).

A series is ``t^val * (c_0 + c_1 t + ...) + O(t^prec)``.  ``prec`` is the
absolute precision and is ``None`` for exactly known (finite) series.  Nonzero
series are normalized so that ``c_0 != 0``; zero is the distinguished value with
no coefficients, either exact (valuation +inf) or ``O(t^prec)`` (valuation only
known to be at least ``prec``).

Every result is cut to ``window`` coefficients past its valuation.  A nonzero
result carrying fewer than ``MIN_PRECISION`` known coefficients raises
:class:`PrecisionExhausted`, as does any question (a valuation, a leading or
constant coefficient) whose answer lies beyond the known precision.
"""

from __future__ import annotations

import math
from typing import Sequence

from .gf import INFINITY, FieldCtx

DEFAULT_WINDOW = 64
MIN_PRECISION = 8


class PrecisionExhausted(ArithmeticError):
    """Not enough coefficients are known to answer; retry with a larger window."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("ctx", "val", "coeffs", "prec", "window")

    def __init__(self, ctx: FieldCtx, val: int, coeffs: Sequence[int],
                 prec: int | None = None, window: int = DEFAULT_WINDOW):
        coeffs = list(coeffs)
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        if prec is not None:
            coeffs = coeffs[: max(prec - val, 0)]
        if lead >= len(coeffs):
            # zero, possibly with known precision
            self.ctx, self.window = ctx, window
            self.coeffs = ()
            self.prec = prec
            self.val = prec
            return
        val += lead
        coeffs = coeffs[lead:]
        if prec is None:
            while coeffs[-1] == 0:
                coeffs.pop()
            if len(coeffs) > window:
                prec = val + window
                coeffs = coeffs[:window]
        else:
            prec = min(prec, val + window)
            n = prec - val
            coeffs = coeffs[:n] + [0] * (n - len(coeffs))
        self.ctx = ctx
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec
        self.window = window

    # -- constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, ctx, prec=None, window=DEFAULT_WINDOW):
        return cls(ctx, 0 if prec is None else prec, (), prec, window)

    @classmethod
    def constant(cls, ctx, c, window=DEFAULT_WINDOW):
        return cls(ctx, 0, [c], None, window)

    @classmethod
    def monomial(cls, ctx, c, n, window=DEFAULT_WINDOW):
        """c * t^n, exactly."""
        return cls(ctx, n, [c], None, window)

    @classmethod
    def uniformizer(cls, ctx, window=DEFAULT_WINDOW):
        return cls(ctx, 1, [1], None, window)

    def _new(self, val, coeffs, prec, window=None, check=True):
        r = LaurentSeries(self.ctx, val, coeffs, prec, window or self.window)
        if check and r.coeffs and r.prec is not None and r.prec - r.val < MIN_PRECISION:
            raise PrecisionExhausted(
                f"only {r.prec - r.val} coefficients known (need {MIN_PRECISION})")
        return r

    # -- inspection -----------------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True for the exact zero series only."""
        return not self.coeffs and self.prec is None

    def is_nonzero(self) -> bool:
        return bool(self.coeffs)

    @property
    def valuation(self):
        if self.coeffs:
            return self.val
        if self.prec is None:
            return math.inf
        raise PrecisionExhausted(f"series is O(t^{self.prec}); valuation unknown")

    def valuation_at_least(self, n: int) -> bool:
        """Decide whether the valuation is >= n."""
        if self.coeffs:
            return self.val >= n
        if self.prec is None or self.prec >= n:
            return True
        raise PrecisionExhausted(f"series is O(t^{self.prec}); cannot compare with {n}")

    @property
    def rel_prec(self):
        if self.prec is None:
            return math.inf
        return self.prec - self.val

    def lead(self) -> int:
        if not self.coeffs:
            raise PrecisionExhausted("zero series has no leading coefficient")
        return self.coeffs[0]

    def coeff(self, n: int) -> int:
        """Coefficient of t^n."""
        if self.prec is not None and n >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{n} unknown (precision {self.prec})")
        if not self.coeffs or n < self.val:
            return 0
        k = n - self.val
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def constant_term(self) -> int:
        if self.coeffs and self.val < 0:
            raise ValueError("series has a pole")
        return self.coeff(0)

    def residue(self):
        """Value at t = 0 as a point of the projective line."""
        if self.coeffs and self.val < 0:
            return INFINITY
        return self.coeff(0)

    def abs_coeffs(self, n: int) -> list[int]:
        """Coefficients of t^0 .. t^(n-1) of a series with non-negative valuation."""
        if self.coeffs and self.val < 0:
            raise ValueError("series has a pole")
        return [self.coeff(k) for k in range(n)]

    def __repr__(self):
        if not self.coeffs:
            return "0" if self.prec is None else f"O(t^{self.prec})"
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                terms.append(f"{c}*t^{self.val + i}")
        more = " + ..." if len(self.coeffs) > 8 else ""
        tail = f" + O(t^{self.prec})" if self.prec is not None else ""
        return " + ".join(terms) + more + tail

    def same_as(self, other: "LaurentSeries") -> bool:
        """Structural equality: identical known data and precision."""
        return (self.coeffs == other.coeffs and self.prec == other.prec
                and (not self.coeffs or self.val == other.val))

    def agrees(self, other: "LaurentSeries", upto: int | None = None) -> bool:
        """Equal modulo t^upto (default: the common precision)."""
        d = self + other
        bound = d.prec if upto is None else upto
        if bound is None:
            return d.is_zero()
        return d.valuation_at_least(bound)

    # -- arithmetic -------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.ctx is not self.ctx:
                raise ValueError("series over different fields")
            return other
        if isinstance(other, int):
            return LaurentSeries.constant(self.ctx, other, self.window)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        window = max(self.window, other.window)
        prec = _min_prec(self.prec, other.prec)
        parts = [p for p in (self, other) if p.coeffs]
        if not parts:
            return LaurentSeries.zero(self.ctx, prec, window)
        lo = min(p.val for p in parts)
        hi = max(p.val + len(p.coeffs) for p in parts)
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return LaurentSeries.zero(self.ctx, prec, window)
        out = [0] * (hi - lo)
        for p in parts:
            off = p.val - lo
            for i, c in enumerate(p.coeffs[: max(hi - p.val, 0)]):
                out[off + i] ^= c
        return self._new(lo, out, prec, window)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        window = max(self.window, other.window)
        a, b = self, other
        if not a.coeffs or not b.coeffs:
            if a.is_zero() or b.is_zero():
                return LaurentSeries.zero(self.ctx, None, window)
            # O(t^N) times something with known valuation
            z, o = (a, b) if not a.coeffs else (b, a)
            if not o.coeffs:
                return LaurentSeries.zero(self.ctx, z.prec + o.prec, window)
            return LaurentSeries.zero(self.ctx, z.prec + o.val, window)
        val = a.val + b.val
        rel = min(a.rel_prec, b.rel_prec)
        if math.isinf(rel):
            n = len(a.coeffs) + len(b.coeffs) - 1
            coeffs = self.ctx.kernel.mul_trunc(list(a.coeffs), list(b.coeffs), n)
            return self._new(val, coeffs, None, window)
        rel = min(rel, window)
        coeffs = self.ctx.kernel.mul_trunc(list(a.coeffs), list(b.coeffs), rel)
        return self._new(val, coeffs, val + rel, window)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries.zero(self.ctx, None, self.window)
        if not self.coeffs:
            return self
        return self._new(self.val, self.ctx.kernel.scale(list(self.coeffs), c, len(self.coeffs)),
                         self.prec, check=False)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        if not self.coeffs:
            return LaurentSeries.zero(self.ctx, None if self.prec is None else self.prec + k,
                                      self.window)
        return self._new(self.val + k, self.coeffs,
                         None if self.prec is None else self.prec + k, check=False)

    def frobenius(self) -> "LaurentSeries":
        """The square; linear in characteristic 2 and doubles the absolute precision."""
        mul = self.ctx.mul
        prec = None if self.prec is None else 2 * self.prec
        if not self.coeffs:
            return LaurentSeries.zero(self.ctx, prec, self.window)
        out = [0] * (2 * len(self.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            out[2 * i] = mul(c, c)
        if prec is not None:
            out += [0] * (prec - 2 * self.val - len(out))
        return self._new(2 * self.val, out, prec)

    def invert(self) -> "LaurentSeries":
        if not self.coeffs:
            if self.prec is None:
                raise ZeroDivisionError("inverse of the zero series")
            raise PrecisionExhausted("cannot invert O(t^%d)" % self.prec)
        if self.prec is None and len(self.coeffs) == 1:
            return self._new(-self.val, [self.ctx.inv(self.coeffs[0])], None)
        rel = min(self.rel_prec, self.window)
        coeffs = self.ctx.kernel.inv_trunc(list(self.coeffs), rel)
        return self._new(-self.val, coeffs, -self.val + rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        result = LaurentSeries.constant(self.ctx, 1, self.window)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, prec: int) -> "LaurentSeries":
        """Forget everything from t^prec on."""
        return self._new(self.val if self.coeffs else prec, self.coeffs,
                         _min_prec(self.prec, prec), check=False)

    def with_window(self, window: int) -> "LaurentSeries":
        return LaurentSeries(self.ctx, self.val, self.coeffs, self.prec, window)

    def map_coeffs(self, fn, ctx: FieldCtx) -> "LaurentSeries":
        """Apply a field homomorphism coefficientwise."""
        return LaurentSeries(ctx, self.val if self.coeffs else 0,
                             [fn(c) for c in self.coeffs], self.prec, self.window)

    def derivative(self) -> "LaurentSeries":
        """Formal d/dt; only odd exponents survive in characteristic 2."""
        if not self.coeffs:
            return LaurentSeries.zero(self.ctx, None if self.prec is None else self.prec - 1,
                                      self.window)
        out = [c if (self.val + i) % 2 else 0 for i, c in enumerate(self.coeffs)]
        return LaurentSeries(self.ctx, self.val - 1, out,
                             None if self.prec is None else self.prec - 1, self.window)


# -- substitution -------------------------------------------------------------------------


def compose(g: LaurentSeries, T: LaurentSeries) -> LaurentSeries:
    """g(T) for a series T of positive valuation."""
    ctx = g.ctx
    window = max(g.window, T.window)
    if not T.coeffs or T.val < 1:
        raise ValueError("substituted series must have positive valuation")
    vT = T.val
    if not g.coeffs:
        if g.prec is None:
            return LaurentSeries.zero(ctx, None, window)
        if g.prec < 0:
            raise PrecisionExhausted("cannot substitute into O(t^%d)" % g.prec)
        return LaurentSeries.zero(ctx, g.prec * vT, window)
    # g = t^v * G0(t), G0(0) != 0
    G0 = list(g.coeffs)
    exact = g.prec is None and T.prec is None
    if exact:
        n = (len(G0) - 1) * (vT + len(T.coeffs) - 1) + 1
        if n > window:
            exact = False
            n = window
    else:
        n = window
        if g.prec is not None:
            n = min(n, (g.prec - g.val) * vT)
        if T.prec is not None and len(G0) > 1:
            n = min(n, T.prec)
    Tabs = [0] * vT + list(T.coeffs)
    if T.prec is not None:
        Tabs = Tabs[: T.prec]
    inner = ctx.kernel.compose_trunc(G0, Tabs[:n], n)
    core = LaurentSeries(ctx, 0, inner, None if exact else n, window)
    if g.val == 0:
        return core
    return core * (T ** g.val)


def inverse_composition(G: LaurentSeries) -> LaurentSeries:
    """The series H with G(H(t)) = t, for G of valuation exactly 1."""
    ctx = G.ctx
    kern = ctx.kernel
    if not G.coeffs or G.val != 1:
        raise ValueError("inverse_composition needs a series of valuation 1")
    window = G.window
    target = min(window, G.rel_prec) + 1  # absolute precision of H
    Gabs = [0] + list(G.coeffs[: target - 1])
    dG = [Gabs[j] if j % 2 else 0 for j in range(1, len(Gabs))]
    H = [0, ctx.inv(Gabs[1])]
    p = 2
    while p < target:
        p = min(2 * p, target)
        GH = kern.compose_trunc(Gabs, H, p)
        GH += [0] * (p - len(GH))
        GH[1] ^= 1
        dGH = kern.compose_trunc(dG, H, p)
        corr = kern.mul_trunc(GH, kern.inv_trunc(dGH, p), p)
        H = H + [0] * (p - len(H))
        H = [h ^ (corr[i] if i < len(corr) else 0) for i, h in enumerate(H)]
    return LaurentSeries(ctx, 0, H[:target], target, window)


def hensel_solve_as(g: LaurentSeries, theta: int) -> LaurentSeries:
    """The root y of y^2 + y = g with y(0) = theta (g regular at t = 0)."""
    ctx = g.ctx
    if not g.valuation_at_least(0):
        raise ValueError("hensel_solve_as needs a series without pole")
    c0 = g.constant_term()
    if ctx.mul(theta, theta) ^ theta != c0:
        raise ValueError(f"{theta} is not a root of T^2 + T + {c0}")
    # y = theta + e with e^2 + e = g~, where g~ = g + theta^2 + theta has no constant term
    gt = g + LaurentSeries.constant(ctx, c0, g.window)
    e = gt
    for _ in range(2 * max(g.window, 1).bit_length() + 4):
        nxt = gt + e.frobenius()
        if nxt.same_as(e):
            break
        e = nxt
    else:  # pragma: no cover - the residual valuation doubles each pass
        raise PrecisionExhausted("Artin-Schreier lifting did not stabilize")
    return e + LaurentSeries.constant(ctx, theta, g.window)

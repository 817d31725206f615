"""Decomposition of degree-one places in y^2 + y = x/(x^2 + x + 1).

A place of F_i is carried as the Laurent expansion of x_i in a local
uniformizer t.  One step up the tower adjoins x_{i+1} with
x_{i+1}^2 + x_{i+1} = f(x_i); locally this is an Artin-Schreier extension of
k((t)), and its decomposition is read off after removing even pole orders from
f(x_i):

* an odd pole order m left over means total ramification with different
  exponent m + 1;
* otherwise the residue c of the reduced right-hand side decides: trace 0
  splits into two places (roots of T^2 + T + c), trace 1 is inert.

Above a ramified place the new uniformizer is s = t^((m+1)/2) * y', where y' is
the reduced generator, and t is recovered as a power series in s.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from math import prod

from .gf import INFINITY, FieldCtx
from .series import (
    DEFAULT_WINDOW,
    LaurentSeries,
    PrecisionExhausted,
    compose,
    hensel_solve_as,
    inverse_composition,
)

MAX_RETRIES = 4


class ConstantFieldOverflow(RuntimeError):
    """Following inert places would need a constant field beyond degree 64."""


@dataclass(frozen=True)
class RamEvent:
    level: int  # level of the upper field of the ramified step
    e: int
    m: int
    d: int


class Kind(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True, eq=False)
class Place:
    """A place of F_level, degree one over ``ctx`` unless ``residue_degree`` says otherwise.

    ``residue_chain`` lists x_0(P), ..., x_level(P); INFINITY marks a pole and
    None a residue outside ``ctx`` (inert places).  ``branch`` is the root
    token (int encoding of x_0(P), or q for the pole) followed by the string of
    choices taken: '0'/'1' for the two children of a split, 'r' for a
    ramified step, 'i' for an inert place, 'a'/'b' for the two children of an
    inert place followed over the doubled constant field.
    """

    level: int
    residue_chain: tuple
    x_series: LaurentSeries | None
    ctx: FieldCtx
    origin: FieldCtx
    branch: tuple
    ram_record: tuple = ()
    residue_degree: int = 1
    inert_parent: "Place | None" = field(default=None, repr=False)

    @property
    def branch_id(self) -> str:
        root, path = self.branch
        token = "inf" if root == self.origin.q else str(root)
        return f"{token}:{path}"

    @property
    def sort_key(self):
        return self.branch

    @property
    def ramification_index(self) -> int:
        return prod(ev.e for ev in self.ram_record)

    @property
    def residue(self):
        return self.residue_chain[-1]

    def different_exponent(self) -> int:
        """d(P | P cap F_0), by transitivity of the different along the chain."""
        total = 0
        for k, ev in enumerate(self.ram_record):
            later = prod(e.e for e in self.ram_record[k + 1:])
            total += later * ev.d
        return total


@dataclass(frozen=True)
class SplitOutcome:
    kind: Kind
    children: tuple
    event: RamEvent | None = None

    def degree(self) -> int:
        """Sum of e * (growth of residue degree) over the children; always 2."""
        if self.kind is Kind.SPLIT:
            return len(self.children)
        if self.kind is Kind.INERT:
            return 2 * len(self.children)
        return self.event.e * len(self.children)


# -- roots ------------------------------------------------------------------------------


def root_place(ctx: FieldCtx, beta, window: int = DEFAULT_WINDOW) -> Place:
    if beta is INFINITY:
        x = LaurentSeries.monomial(ctx, 1, -1, window)
        token = ctx.q
    else:
        x = LaurentSeries(ctx, 0, [beta, 1], None, window)
        token = beta
    return Place(0, (beta,), x, ctx, ctx, (token, ""))


def root_places(ctx: FieldCtx, window: int = DEFAULT_WINDOW) -> list[Place]:
    """The q + 1 rational places of k(x_0): x_0 = beta + t, and x_0 = 1/t at the pole."""
    return [root_place(ctx, b, window) for b in ctx.elements()] + [
        root_place(ctx, INFINITY, window)]


# -- local Artin-Schreier data ------------------------------------------------------------


def f_series(x: LaurentSeries) -> LaurentSeries:
    """x / (x^2 + x + 1) for a local expansion x."""
    return x * (x * x + x + 1).invert()


def as_reduce(g: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Strip even pole orders from g by Artin-Schreier substitutions.

    Returns ``(g_red, U)`` with ``g_red + U^2 + U == g`` and either an odd pole
    order or no pole at all in ``g_red``.
    """
    ctx = g.ctx
    U = LaurentSeries.zero(ctx, None, g.window)
    while not g.valuation_at_least(0):
        v = g.valuation
        if v % 2:
            break
        u = LaurentSeries.monomial(ctx, ctx.sqrt(g.lead()), v // 2, g.window)
        g = g + u.frobenius() + u
        U = U + u
    return g, U


def ramified_uniformizer(g_red: LaurentSeries, window: int | None = None):
    """Local data above a place where g_red has odd pole order m.

    Returns ``(t, y)``: the old uniformizer t and the reduced generator y' as
    series in s = t^((m+1)/2) * y'.  Solves G(t) = s^2 + s t^a with
    G = t^(m+1) g_red and a = (m+1)/2 by Newton iteration, started from the
    compositional inverse of G applied to s^2.
    """
    ctx = g_red.ctx
    kern = ctx.kernel
    window = window or g_red.window
    m = -g_red.valuation
    a = (m + 1) // 2
    G = g_red.shift(m + 1)
    n = window + 2
    if G.prec is not None:
        n = min(n, 2 * G.prec)
    if n - 2 < 1:
        raise PrecisionExhausted("no room to continue above a ramified place")
    H = inverse_composition(G.truncate(G.val + (n + 1) // 2))
    s = LaurentSeries.uniformizer(ctx, window)
    t0 = compose(H, LaurentSeries.monomial(ctx, 1, 2, window))

    Gabs = [0] + list(G.coeffs[: n])
    dG = [Gabs[j] if j % 2 else 0 for j in range(1, len(Gabs))]

    def pad(v, k):
        return (list(v) + [0] * k)[:k]

    def phi_and_slope(t, p):
        Gt = pad(kern.compose_trunc(Gabs, t, p), p)
        ta1 = [1] + [0] * (p - 1)
        for _ in range(a - 1):
            ta1 = pad(kern.mul_trunc(ta1, t, p), p)
        ta = pad(kern.mul_trunc(ta1, t, p), p)
        phi = list(Gt)
        for i in range(p - 1):
            phi[i + 1] ^= ta[i]
        if p > 2:
            phi[2] ^= 1
        slope = pad(kern.compose_trunc(dG, t, p), p)
        if a % 2:
            for i in range(p - 1):
                slope[i + 1] ^= ta1[i]
        return phi, slope

    t = pad([0] * 2 + list(t0.coeffs), n) if t0.coeffs else [0] * n
    p = min(1 + 2 * a, n)
    while True:
        p = min(2 * p, n)
        tp = t[:p]
        phi, slope = phi_and_slope(tp, p)
        corr = kern.mul_trunc(phi, kern.inv_trunc(slope, p), p)
        t = [x ^ (corr[i] if i < p else 0) for i, x in enumerate(t)]
        if p >= n:
            break
    phi, _ = phi_and_slope(t, n)
    if any(phi):  # pragma: no cover - Newton converges quadratically
        raise RuntimeError("ramified continuation failed its self-test")

    t_s = LaurentSeries(ctx, 0, t, n, window)
    y = s * t_s.invert() ** a
    return t_s, y


def _child(place, residue, x, ctx, suffix, ram_record=None, degree=1, inert_parent=None):
    root, path = place.branch
    return Place(place.level + 1, place.residue_chain + (residue,), x, ctx, place.origin,
                 (root, path + suffix),
                 place.ram_record if ram_record is None else ram_record,
                 degree, inert_parent)


def _extend(place: Place) -> SplitOutcome:
    x = place.x_series
    ctx = place.ctx
    g_red, U = as_reduce(f_series(x))
    if not g_red.valuation_at_least(0):
        m = -g_red.valuation
        t_s, y = ramified_uniformizer(g_red)
        x_new = y if U.is_zero() else y + compose(U, t_s)
        event = RamEvent(place.level + 1, 2, m, m + 1)
        child = _child(place, INFINITY, x_new, ctx, "r", place.ram_record + (event,))
        return SplitOutcome(Kind.RAMIFIED, (child,), event)
    c0 = g_red.constant_term()
    roots = ctx.solve_as(c0)
    if roots is None:
        child = _child(place, None, None, ctx, "i", degree=2 * place.residue_degree,
                       inert_parent=place)
        return SplitOutcome(Kind.INERT, (child,))
    children = []
    for k, theta in enumerate(roots):
        x_new = hensel_solve_as(g_red, theta)
        if not U.is_zero():
            x_new = x_new + U
        children.append(_child(place, x_new.residue(), x_new, ctx, str(k)))
    return SplitOutcome(Kind.SPLIT, tuple(children))


def rebuild(place: Place, window: int) -> Place:
    """Recompute ``place`` from its root with a different series window."""
    root, path = place.branch
    beta = INFINITY if root == place.origin.q else root
    p = root_place(place.origin, beta, window)
    i = 0
    while i < len(path):
        step = path[i]
        if step in "ab":
            p = embed_place(p, p.ctx.doubled())
            out = _extend(p)
            p = out.children["ab".index(step)]
            p = replace(p, branch=(root, path[: i + 1]))
        else:
            out = _extend(p)
            if step == "r":
                p = out.children[0]
            elif step == "i":
                p = out.children[0]
            else:
                p = out.children[int(step)]
        i += 1
    return p


def extend(place: Place, retries: int | None = None) -> SplitOutcome:
    """All places above ``place`` one level up.

    On :class:`PrecisionExhausted` the place is rebuilt from its root with the
    window doubled, up to ``retries`` times (default :data:`MAX_RETRIES`).
    """
    if retries is None:
        retries = MAX_RETRIES
    if place.x_series is None:
        raise ValueError("place has no local expansion (inert); follow it first")
    try:
        return _extend(place)
    except PrecisionExhausted:
        if retries <= 0:
            raise
        window = place.x_series.window
    last = None
    for _ in range(retries):
        window *= 2
        try:
            return _extend(rebuild(place, window))
        except PrecisionExhausted as exc:
            last = exc
    raise last


def embed_place(place: Place, emb) -> Place:
    """The same place after extending the constant field along ``emb``."""
    x = place.x_series.map_coeffs(emb, emb.dst)
    chain = tuple(emb(r) for r in place.residue_chain)
    return replace(place, x_series=x, residue_chain=chain, ctx=emb.dst)


def follow_inert(place: Place) -> SplitOutcome:
    """Split an inert place's parent over the doubled constant field.

    The two children are the two geometric places making up ``place``.
    """
    parent = place.inert_parent
    if parent is None:
        raise ValueError("not an inert place")
    if 2 * parent.ctx.s > 64:
        raise ConstantFieldOverflow(f"constant field degree {2 * parent.ctx.s} exceeds 64")
    lifted = embed_place(parent, parent.ctx.doubled())
    out = extend(lifted)
    if out.kind is not Kind.SPLIT:  # pragma: no cover - unramified stays unramified
        raise RuntimeError("inert place did not split over the quadratic extension")
    root, path = parent.branch
    kids = tuple(replace(c, branch=(root, path + "ab"[k])) for k, c in enumerate(out.children))
    return SplitOutcome(Kind.SPLIT, kids)


# -- trees ----------------------------------------------------------------------------------


@dataclass
class TreeRun:
    """Breadth-first expansion: ``levels[i]`` are the kept places of F_i and
    ``outcomes[i]`` pairs every place of ``levels[i]`` with its decomposition."""

    levels: list
    outcomes: list
    inert: list

    def places(self):
        for lvl in self.levels:
            yield from lvl


def extend_tree(roots, depth: int, keep: str = "drop", select=None) -> TreeRun:
    """Extend ``roots`` ``depth`` levels.

    ``keep`` decides what happens to inert places: ``"drop"`` tallies and
    discards them (rational censuses), ``"follow"`` continues with their
    geometric components over the doubled constant field (genus runs).
    ``select``, if given, filters each new level before it is extended further.
    """
    if keep not in ("drop", "follow"):
        raise ValueError(f"unknown keep policy {keep!r}")
    frontier = sorted(roots, key=lambda p: p.sort_key)
    levels = [frontier]
    outcomes = []
    inert = []
    for _ in range(depth):
        nxt = []
        step = []
        n_inert = 0
        for p in frontier:
            out = extend(p)
            step.append((p, out))
            if out.kind is Kind.INERT:
                n_inert += 1
                if keep == "follow":
                    nxt.extend(follow_inert(out.children[0]).children)
            else:
                nxt.extend(out.children)
        if select is not None:
            nxt = [p for p in nxt if select(p)]
        nxt.sort(key=lambda p: p.sort_key)
        levels.append(nxt)
        outcomes.append(step)
        inert.append(n_inert)
        frontier = nxt
    return TreeRun(levels, outcomes, inert)

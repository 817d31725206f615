"""Tower-level counts and verifiers built on the place engine.

Rational censuses count degree-one places level by level; genus runs sum the
different over all geometric ramified places (Riemann-Hurwitz).  The chain
oracle and the pattern automaton below are deliberately independent of
:mod:`astower.engine` so they can be used to check it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .engine import (
    ConstantFieldOverflow,
    Kind,
    Place,
    TreeRun,
    extend_tree,
    root_place,
    root_places,
)
from .gf import INFINITY, FieldCtx
from .series import DEFAULT_WINDOW

__all__ = [
    "SSet",
    "LevelRow",
    "CensusReport",
    "GenusRun",
    "Disagreement",
    "UnclassifiablePattern",
    "ConstantFieldOverflow",
    "compute_s_set",
    "rational_run",
    "rational_census",
    "ramification_closure",
    "genus_run",
    "genus_table",
    "oracle_chain_count",
    "engine_chain_count",
    "verify_theorem_4_2",
    "verify_even_splitting",
    "verify_level_one",
    "verify_locus",
    "verify_weak_ramification",
    "automaton_crosscheck",
    "limit_report",
]


class UnclassifiablePattern(RuntimeError):
    """A residue chain over Q_1^0 fits none of the known split/ramify patterns."""


@dataclass(frozen=True)
class SSet:
    s: int
    members: tuple

    def __len__(self):
        return len(self.members)


def compute_s_set(ctx: FieldCtx) -> SSet:
    """All beta with h(beta) != 0 and Tr(f(beta)) = 0, by exhaustive scan."""
    members = tuple(b for b in ctx.elements() if ctx.h(b) and ctx.trace(ctx.f(b)) == 0)
    return SSet(ctx.s, members)


# -- reports ------------------------------------------------------------------------------


def _frac(x):
    return None if x is None else str(x)


@dataclass
class LevelRow:
    i: int
    N: int | None = None
    inert2: int | None = None
    g: int | None = None

    @property
    def nu(self):
        return None if self.N is None else Fraction(self.N, 2 ** self.i)

    @property
    def gamma(self):
        return None if self.g is None else Fraction(self.g, 2 ** self.i)

    @property
    def lambda_(self):
        if self.N is None or not self.g:
            return None
        return Fraction(self.N, self.g)

    def as_dict(self):
        return {"i": self.i, "N": self.N, "inert2": self.inert2, "g": self.g,
                "nu": _frac(self.nu), "gamma": _frac(self.gamma),
                "lambda": _frac(self.lambda_)}


@dataclass
class CensusReport:
    s: int
    levels: list
    verdicts: dict = field(default_factory=dict)

    def column(self, name):
        return [getattr(r, name) for r in self.levels]

    def to_tsv(self) -> str:
        cols = ["i", "N", "inert2", "g", "nu", "gamma", "lambda"]
        lines = ["\t".join(cols)]
        for r in self.levels:
            d = r.as_dict()
            cells = []
            for c in cols:
                v = d[c]
                if c == "lambda" and v is None and r.g == 0:
                    v = "—"
                cells.append("" if v is None else str(v))
            lines.append("\t".join(cells))
        for name, ok in self.verdicts.items():
            lines.append(f"# {name}\t{'PASS' if ok else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"s": self.s, "levels": [r.as_dict() for r in self.levels],
               "verdicts": dict(self.verdicts)}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- rational census ---------------------------------------------------------------------


def rational_run(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW) -> TreeRun:
    return extend_tree(root_places(ctx, window), depth, keep="drop")


def rational_census(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW,
                    run: TreeRun | None = None) -> CensusReport:
    run = run or rational_run(ctx, depth, window)
    rows = [LevelRow(0, len(run.levels[0]), 0)]
    for i in range(1, depth + 1):
        rows.append(LevelRow(i, len(run.levels[i]), run.inert[i - 1]))
    rep = CensusReport(ctx.s, rows)
    rep.verdicts["count_identity"] = census_identity_holds(run)
    return rep


def census_identity_holds(run: TreeRun) -> bool:
    """2 N_{i-1} = N_i + 2 inert2_i + ram_i at every step."""
    for i, step in enumerate(run.outcomes, start=1):
        ram = sum(o.kind is Kind.RAMIFIED for _, o in step)
        if 2 * len(run.levels[i - 1]) != len(run.levels[i]) + 2 * run.inert[i - 1] + ram:
            return False
        if any(o.degree() != 2 for _, o in step):
            return False
    return True


# -- genus ------------------------------------------------------------------------------


def ramification_closure(ctx: FieldCtx) -> list:
    """Base points whose fibres can ever reach a root of h.

    Closes the roots of h under beta -> {gamma : gamma^2 + gamma = f(beta)}
    taken backwards: beta is added when f(beta) = c^2 + c for some c already
    present, i.e. c beta^2 + (c + 1) beta + c = 0 (with the obvious readings at
    c = 0, 1 and infinity).  Raises FieldError if a preimage leaves ``ctx``.
    """
    from .gf import FieldError

    todo = list(ctx.h_roots())
    seen = set()
    while todo:
        c = todo.pop()
        if c in seen:
            continue
        seen.add(c)
        if c is INFINITY:
            pre = ctx.h_roots()
        else:
            v = ctx.sqr(c) ^ c  # f(beta) = v
            if v == 0:
                pre = [0, INFINITY]
            elif v == 1:
                pre = [1]
            else:
                # v beta^2 + (v + 1) beta + v = 0; beta = k w turns it into w^2 + w = 1/k^2
                k = ctx.div(v ^ 1, v)
                ws = ctx.solve_as(ctx.inv(ctx.sqr(k)))
                if ws is None:
                    raise FieldError("backward closure escapes the constant field")
                pre = [ctx.mul(k, w) for w in ws]
        todo.extend(p for p in pre if p not in seen)
    finite = sorted(b for b in seen if b is not INFINITY)
    return finite + ([INFINITY] if INFINITY in seen else [])


@dataclass
class GenusRun:
    ctx: FieldCtx
    genus: list
    diff_sums: list  # sum of d(Q) over ramified Q in F_i / F_{i-1}, index i
    run: TreeRun
    cumulative_ok: bool


def genus_run(s: int, depth: int, modulus: int | None = None,
              window: int = DEFAULT_WINDOW, prune: bool = True) -> GenusRun:
    """Genus of F_0 .. F_depth, summing differents over geometric places.

    Works over GF(2^lcm(s, 2)) so the roots of h are rational.  With ``prune``
    only places whose residues stay inside :func:`ramification_closure` are
    followed; their complement never ramifies again.
    """
    s2 = lcm(s, 2)
    ctx = FieldCtx(s2, modulus if s2 == s else None, internal=True)
    closure = ramification_closure(ctx)
    allowed = {}

    def select(p):
        if p.ctx not in allowed:
            allowed[p.ctx] = set(ramification_closure(p.ctx))
        return p.residue in allowed[p.ctx]

    base = [root_place(ctx, b, window) for b in closure] if prune else root_places(ctx, window)
    run = extend_tree(base, depth, keep="follow", select=select if prune else None)

    genus = [0]
    diffs = [0]
    for i in range(1, depth + 1):
        d = sum(p.ram_record[-1].d for p in run.levels[i]
                if p.ram_record and p.ram_record[-1].level == i)
        diffs.append(d)
        two_g = 2 * (2 * genus[-1] - 2) + d + 2
        genus.append(two_g // 2)
    ok = True
    for i in range(depth + 1):
        total = sum(p.different_exponent() for p in run.levels[i])
        if 2 * genus[i] - 2 != -(2 ** (i + 1)) + total:
            ok = False
    return GenusRun(ctx, genus, diffs, run, ok)


def genus_table(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW) -> CensusReport:
    gr = genus_run(ctx.s, depth, ctx.modulus, window)
    rows = [LevelRow(i, g=g) for i, g in enumerate(gr.genus)]
    rep = CensusReport(ctx.s, rows)
    rep.verdicts.update(_genus_verdicts(gr.genus))
    rep.verdicts["genus_cumulative"] = gr.cumulative_ok
    return rep


def _genus_verdicts(genus):
    gam = [Fraction(g, 2 ** i) for i, g in enumerate(genus)]
    return {
        "genus_start": genus[:2] == [0, 1][: len(genus)],
        "gamma_monotone": all(a <= b for a, b in zip(gam, gam[1:])),
        "gamma_at_most_4": all(x <= 4 for x in gam),
    }


# -- oracle ---------------------------------------------------------------------------------


def oracle_chain_count(ctx: FieldCtx, depth: int) -> list[int]:
    """Chains beta_0..beta_i in k with h(beta_j) != 0 and
    (beta_{j+1}^2 + beta_{j+1}) h(beta_j) = beta_j, counted per length by DFS."""
    counts = [0] * (depth + 1)
    elems = list(ctx.elements())

    def step(b, i):
        counts[i] += 1
        if i == depth:
            return
        hb = ctx.h(b)
        for c in elems:
            if ctx.h(c) and ctx.mul(ctx.sqr(c) ^ c, hb) == b:
                step(c, i + 1)

    for b in elems:
        if ctx.h(b):
            step(b, 0)
    return counts


def engine_chain_count(ctx: FieldCtx, run: TreeRun) -> list[int]:
    """Places whose residue chain is finite and avoids the roots of h."""
    bad = set(ctx.h_roots())
    return [sum(1 for p in lvl
                if all(r is not INFINITY and r not in bad for r in p.residue_chain))
            for lvl in run.levels]


# -- verifiers -------------------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_theorem_4_2(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW,
                       run: TreeRun | None = None) -> Verdict:
    """Odd s: N_i = 2(|S|+1) at every level, and above level 1 every split
    pair has one child that splits and one that is inert."""
    if ctx.s % 2 == 0:
        raise ValueError("the odd-case count needs s odd")
    run = run or rational_run(ctx, depth, window)
    expected = 2 * (len(compute_s_set(ctx)) + 1)
    counts = [len(run.levels[i]) for i in range(1, depth + 1)]
    counts_ok = all(n == expected for n in counts)
    structure_ok = True
    for i in range(1, depth):
        kinds = {}
        for p, out in run.outcomes[i]:
            kinds.setdefault((p.branch[0], p.branch[1][:-1]), []).append(out.kind)
        for pair in kinds.values():
            if sorted(k.value for k in pair) != ["inert", "split"]:
                structure_ok = False
    return Verdict(counts_ok and structure_ok,
                   {"expected": expected, "counts": counts, "structure": structure_ok})


def verify_even_splitting(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW,
                          run: TreeRun | None = None) -> Verdict:
    """Poles of x_2 over the zero of x_0 + 1 split completely up to ``depth``."""
    if ctx.s % 2:
        raise ValueError("the even-case splitting needs s even")
    run = run or rational_run(ctx, depth, window)
    poles = [p for p in run.levels[2] if p.residue_chain[0] == 1 and p.residue is INFINITY]
    poles_ok = len(poles) == 2 and all(
        [(e.e, e.m, e.d) for e in p.ram_record] == [(2, 1, 2)] for p in poles)
    prefixes = tuple(p.branch for p in poles)
    split_ok = True
    for i in range(2, depth):
        for p, out in run.outcomes[i]:
            if (p.branch[0], p.branch[1][:2]) in prefixes and out.kind is not Kind.SPLIT:
                split_ok = False
    counts = [len(lvl) for lvl in run.levels]
    bound_ok = all(counts[i] >= 2 ** (i - 1) for i in range(2, depth + 1))
    return Verdict(poles_ok and split_ok and bound_ok,
                   {"poles": len(poles), "poles_ok": poles_ok, "split_ok": split_ok,
                    "bound_ok": bound_ok, "counts": counts})


def _y_side(q: Place):
    """(e, d) of a degree-one place of F_1 over its image in k(x_1).

    e is the order of x_1 - x_1(Q) (or of 1/x_1 at a pole) in the uniformizer
    at Q, and d is the order of the derivative of that local parameter.
    """
    y = q.x_series
    param = y.invert() if q.residue is INFINITY else y + q.residue
    return param.valuation, param.derivative().valuation


def verify_level_one(ctx: FieldCtx) -> Verdict:
    """The six-part description of F_1 / k(x_0) and F_1 / k(x_1), checked
    clause by clause on the engine's level-one output (s even)."""
    if ctx.s % 2:
        raise ValueError("the roots of h are rational only for s even")
    from .engine import extend

    roots = ctx.h_roots()
    out = {p.residue: extend(p) for p in root_places(ctx)}

    def splits_to(b, residues):
        o = out[b]
        return o.kind is Kind.SPLIT and [c.residue for c in o.children] == residues

    level1 = [c for o in out.values() for c in o.children if c.x_series is not None]
    clauses = {
        "i": splits_to(0, [0, 1]),
        "ii": splits_to(INFINITY, [0, 1]),
        "iii": splits_to(1, list(roots)),
        "iv": all(out[a].kind is Kind.RAMIFIED and
                  (out[a].event.e, out[a].event.d) == (2, 2) and
                  out[a].children[0].residue is INFINITY for a in roots),
    }
    over_roots = [q for q in level1 if q.residue in roots]
    clauses["v"] = (sorted(q.residue for q in over_roots) == sorted(roots)
                    and all(_y_side(q) == (2, 2) for q in over_roots))
    others_x = all(out[b].kind is not Kind.RAMIFIED for b in out if b not in roots)
    others_y = all(_y_side(q)[0] == 1 for q in level1 if q.residue not in roots)
    weak = all(d == 2 * (e - 1) for e, d in map(_y_side, over_roots)) and all(
        o.event.d == 2 * (o.event.e - 1) for o in out.values() if o.kind is Kind.RAMIFIED)
    clauses["vi"] = others_x and others_y and weak
    return Verdict(all(clauses.values()), clauses)


def _locus(ctx):
    return {0, 1, INFINITY, *ctx.h_roots()}


def verify_locus(runs) -> Verdict:
    """Every ramified place lies over 0, 1, a root of h, or the pole of x_0."""
    bad = []
    for run in runs:
        for lvl in run.levels:
            for p in lvl:
                if p.ram_record and p.residue_chain[0] not in _locus(p.origin):
                    bad.append(p.branch_id)
    return Verdict(not bad, {"outside": bad})


def verify_weak_ramification(runs) -> Verdict:
    """Every ramified step has reduced pole order 1, so d = 2(e - 1)."""
    bad = []
    for run in runs:
        for step in run.outcomes:
            for p, out in step:
                if out.kind is Kind.RAMIFIED and not (out.event.m == 1
                                                      and out.event.d == 2 * (out.event.e - 1)):
                    bad.append((p.branch_id, out.event))
    return Verdict(not bad, {"violations": bad})


# -- pattern automaton ----------------------------------------------------------------------

Q1, GAMMA, POLE, ZERO = "Q1", "gamma", "inf", "zero"


@dataclass(frozen=True)
class AutomatonState:
    kind: str
    nu: int | None = None  # nu(x_k + 1) at the most recent Q_1 place


@dataclass
class Disagreement:
    branch_id: str
    level: int
    state: AutomatonState | None
    predicted: object
    engine: object


def classify_chain(chain, roots) -> AutomatonState:
    """Walk a residue chain starting at 1 through the patterns
    Q_1 < Q_gamma < Q_inf < (Q_0 ...) < Q_1 < ..."""
    if chain[0] != 1:
        raise UnclassifiablePattern(f"chain {chain} does not start at 1")
    st = AutomatonState(Q1, 1)
    for r in chain[1:]:
        if st.kind == Q1 and r in roots:
            st = AutomatonState(GAMMA, st.nu)
        elif st.kind == GAMMA and r is INFINITY:
            st = AutomatonState(POLE)
        elif st.kind in (POLE, ZERO) and r is not INFINITY and r == 0:
            st = AutomatonState(ZERO)
        elif st.kind in (POLE, ZERO) and r is not INFINITY and r == 1:
            st = AutomatonState(Q1, 2)
        else:
            raise UnclassifiablePattern(f"chain {chain} leaves the known patterns")
    return st


def predict(st: AutomatonState, roots):
    """(kind, sorted child residues) expected for a place in state ``st``."""
    if st.kind == Q1:
        return Kind.SPLIT, tuple(sorted(roots))
    if st.kind == GAMMA:
        if st.nu == 1:
            return Kind.RAMIFIED, (INFINITY,)
        return Kind.SPLIT, (INFINITY, INFINITY)
    return Kind.SPLIT, (0, 1)


def _res_key(r):
    return (1, 0) if r is INFINITY else (0, r)


def automaton_crosscheck(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW,
                         strict: bool = False) -> list[Disagreement]:
    """Compare the pattern predictor with the engine on all places over Q_1^0."""
    if ctx.s != 2:
        raise ValueError("the pattern automaton is stated over GF(4)")
    roots = ctx.h_roots()
    run = extend_tree([root_place(ctx, 1, window)], depth, keep="drop")
    out = []
    for step in run.outcomes:
        for p, res in step:
            try:
                st = classify_chain(p.residue_chain, roots)
            except UnclassifiablePattern as exc:
                if strict:
                    raise
                out.append(Disagreement(p.branch_id, p.level, None, str(exc), res.kind))
                continue
            kind, kids = predict(st, roots)
            got = (res.kind, tuple(sorted((c.residue for c in res.children), key=_res_key)))
            if (kind, kids) != got:
                out.append(Disagreement(p.branch_id, p.level, st, (kind, kids), got))
            if st.kind == Q1:
                nu = (p.x_series + 1).valuation
                if nu != st.nu:
                    out.append(Disagreement(p.branch_id, p.level, st, ("nu", st.nu), ("nu", nu)))
            if st.kind == POLE:
                nu = p.x_series.valuation
                if nu != -2:
                    out.append(Disagreement(p.branch_id, p.level, st, ("pole", -2), ("pole", nu)))
    return out


# -- limits ---------------------------------------------------------------------------------


def limit_report(ctx: FieldCtx, depth: int, window: int = DEFAULT_WINDOW,
                 genus_depth: int | None = None) -> CensusReport:
    """N, g and the ratios nu, gamma, lambda side by side, with verdicts."""
    rep = rational_census(ctx, depth, window)
    gd = depth if genus_depth is None else min(genus_depth, depth)
    gr = genus_run(ctx.s, gd, ctx.modulus, window)
    for row, g in zip(rep.levels, gr.genus):
        row.g = g
    rep.verdicts.update(_genus_verdicts(gr.genus))
    rep.verdicts["genus_cumulative"] = gr.cumulative_ok
    if ctx.s % 2:
        nus = [r.nu for r in rep.levels[1:]]
        rep.verdicts["nu_halves"] = all(b * 2 == a for a, b in zip(nus, nus[1:]))
    else:
        lams = [r.lambda_ for r in rep.levels[2:] if r.lambda_ is not None]
        rep.verdicts["lambda_at_least_1/8"] = all(x >= Fraction(1, 8) for x in lams)
    return rep

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from astower import gf2x
from astower.gf import (
    DEFAULT_MODULI,
    INFINITY,
    DivisionByH,
    FieldCtx,
    FieldElement,
    FieldError,
    ContextMismatch,
    add,
    default_modulus,
    embed,
    f_map,
    h_roots,
    inv,
    mul,
    solve_artin_schreier,
    sqrt,
    trace,
)


def _with_weight(s, w):
    for mid in combinations(range(1, s), w - 2):
        yield (1 << s) | 1 | sum(1 << i for i in mid)


def test_shipped_moduli_are_lowest_weight_irreducibles():
    for s, m in DEFAULT_MODULI.items():
        assert gf2x.degree(m) == s and gf2x.is_irreducible(m)
        w = bin(m).count("1")
        if s == 1:
            continue
        for lighter in range(3, w, 2):
            assert not any(gf2x.is_irreducible(c) for c in _with_weight(s, lighter))
        assert min(c for c in _with_weight(s, w) if gf2x.is_irreducible(c)) == m


def test_runtime_modulus_search_beyond_table():
    assert default_modulus(32) == 0x10000008D
    assert gf2x.is_irreducible(default_modulus(20))


def test_rejects_bad_fields():
    with pytest.raises(FieldError):
        FieldCtx(0)
    with pytest.raises(FieldError):
        FieldCtx(33)
    with pytest.raises(FieldError):
        FieldCtx(4, 0x11)  # x^4 + 1 = (x + 1)^4
    with pytest.raises(FieldError):
        FieldCtx(4, 0x7)


def test_contexts_are_interned(F4):
    assert FieldCtx(2) is F4
    assert FieldCtx(2, 0x7) is F4


def test_add_basics(F4):
    a = F4(2)
    assert a + a == 0
    assert a + 1 == 3
    assert a + F4(0) == a


def test_mul_inv_basics(F4):
    a = F4(2)
    assert a * a == 3  # alpha^2 = alpha + 1
    assert inv(F4(1)) == 1
    with pytest.raises(ZeroDivisionError):
        inv(F4(0))


def test_mixed_contexts_rejected(F4, F8):
    with pytest.raises(ContextMismatch):
        add(F4(1), F8(1))
    with pytest.raises(ContextMismatch):
        mul(F4(1), F8(1))


@pytest.mark.parametrize("s", [1, 3, 8, 10, 17, 32])
def test_inverse_property(s):
    ctx = FieldCtx(s)
    rng = random.Random(s)
    for _ in range(50):
        a = FieldElement(ctx, rng.randrange(1, ctx.q))
        assert a * inv(a) == 1


def test_trace_examples(F4):
    assert trace(F4(0)) == 0
    assert trace(F4(2)) == 1
    for s in (1, 3, 5, 7):
        assert trace(FieldCtx(s)(1)) == 1


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5, 6])
def test_trace_mask_matches_definition(s):
    ctx = FieldCtx(s)
    for a in ctx.elements():
        assert ctx.trace(a) == ctx.trace_direct(a)
        assert ctx.trace(ctx.sqr(a)) == ctx.trace(a)


@settings(max_examples=60, deadline=None)
@given(s=st.integers(1, 32), a=st.integers(0), b=st.integers(0))
def test_trace_is_linear(s, a, b):
    ctx = FieldCtx(s)
    a, b = a % ctx.q, b % ctx.q
    assert ctx.trace(a ^ b) == ctx.trace(a) ^ ctx.trace(b)


@settings(max_examples=60, deadline=None)
@given(s=st.integers(1, 32), a=st.integers(0))
def test_sqrt_property(s, a):
    ctx = FieldCtx(s)
    a %= ctx.q
    assert ctx.sqr(ctx.sqrt(a)) == a
    assert ctx.sqrt(ctx.sqr(a)) == a


def test_sqrt_examples(F4):
    assert sqrt(F4(0)) == 0 and sqrt(F4(1)) == 1


def test_artin_schreier_examples(F4):
    assert solve_artin_schreier(F4(0)) == (F4(0), F4(1))
    assert solve_artin_schreier(F4(1)) == (F4(2), F4(3))
    assert solve_artin_schreier(F4(2)) is None


@settings(max_examples=60, deadline=None)
@given(s=st.integers(1, 32), c=st.integers(0))
def test_artin_schreier_property(s, c):
    ctx = FieldCtx(s)
    c %= ctx.q
    roots = ctx.solve_as(c)
    if ctx.trace(c):
        assert roots is None
    else:
        t0, t1 = roots
        assert t0 ^ t1 == 1 and t0 < t1
        for t in roots:
            assert ctx.sqr(t) ^ t == c


def test_h_roots():
    assert h_roots(FieldCtx(1)) == []
    assert h_roots(FieldCtx(2)) == [FieldCtx(2)(2), FieldCtx(2)(3)]
    assert h_roots(FieldCtx(3)) == []
    ctx = FieldCtx(3)
    assert all(ctx.h(b) for b in ctx.elements())
    for s in (4, 6, 8):
        roots = FieldCtx(s).h_roots()
        assert len(roots) == 2 and roots[0] ^ roots[1] == 1


def test_f_map(F4):
    assert f_map(F4(0)) == 0
    assert f_map(F4(1)) == 1
    with pytest.raises(DivisionByH):
        f_map(F4(2))


@pytest.mark.parametrize("s", [2, 3, 4, 6])
def test_split_count_two_ways(s):
    ctx = FieldCtx(s)
    domain = [b for b in ctx.elements() if ctx.h(b)]
    via_solver = sum(ctx.solve_as(ctx.f(b)) is not None for b in domain)
    via_trace = sum(ctx.trace_direct(ctx.f(b)) == 0 for b in domain)
    assert via_solver == via_trace


@pytest.mark.parametrize("s", [1, 3, 5])
def test_sibling_traces_differ_for_odd_s(s):
    ctx = FieldCtx(s)
    for b in ctx.elements():
        roots = ctx.solve_as(ctx.f(b))
        if roots is None:
            continue
        th, th1 = roots
        assert ctx.trace(ctx.f(th)) != ctx.trace(ctx.f(th1))


def test_embed_examples(F4):
    assert embed(F4(0), 2) == 0
    assert embed(F4(1), 2) == 1


@pytest.mark.parametrize("s,t", [(2, 2), (3, 2), (4, 2), (3, 3), (8, 2), (16, 2)])
def test_embedding_is_a_homomorphism(s, t):
    src = FieldCtx(s)
    emb = src.extension(t)
    dst = emb.dst
    rng = random.Random(s * 100 + t)
    for _ in range(30):
        a, b = rng.randrange(src.q), rng.randrange(src.q)
        assert emb(a ^ b) == emb(a) ^ emb(b)
        assert emb(src.mul(a, b)) == dst.mul(emb(a), emb(b))
        assert dst.trace(emb(a)) == (t * src.trace(a)) % 2
    assert emb(INFINITY) is INFINITY
    assert emb(None) is None


def test_field_elements_order_and_hash(F4):
    a, b = F4(2), F4(3)
    assert a < b
    assert hash(a) == hash(2)
    assert int(b) == 3

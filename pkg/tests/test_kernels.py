"""The compiled and pure-Python kernels must agree call for call."""

from __future__ import annotations

import random

import pytest

from astower._kernels import _pykernels, available_backends, make_kernel
from astower.gf import FieldCtx, _antilog_tables

needs_cython = pytest.mark.skipif("cython" not in available_backends(),
                                  reason="compiled kernels not built")


def pair(s):
    ctx = FieldCtx(s)
    tables = _antilog_tables(s, ctx.modulus) if s <= 16 else (None, None)
    return (make_kernel(s, ctx.modulus, *tables, backend="python"),
            make_kernel(s, ctx.modulus, *tables, backend="cython"), ctx)


def rand_list(rng, q, n, unit=False):
    out = [rng.randrange(q) for _ in range(n)]
    if unit and out:
        out[0] = rng.randrange(1, q)
    return out


@needs_cython
@pytest.mark.parametrize("s", [1, 2, 5, 16, 17, 31, 32])
def test_backends_agree(s):
    py, cy, ctx = pair(s)
    rng = random.Random(s)
    for _ in range(20):
        a, b = rng.randrange(ctx.q), rng.randrange(1, ctx.q)
        assert py.mul(a, b) == cy.mul(a, b)
        assert py.inv(b) == cy.inv(b)
        A, B = rand_list(rng, ctx.q, 17, True), rand_list(rng, ctx.q, 9)
        n = rng.randrange(1, 30)
        assert py.scale(A, b, n) == cy.scale(A, b, n)
        assert py.mul_trunc(A, B, n) == cy.mul_trunc(A, B, n)
        assert py.inv_trunc(A, n) == cy.inv_trunc(A, n)
        T = [0] + rand_list(rng, ctx.q, 12)
        assert py.compose_trunc(B, T, n) == cy.compose_trunc(B, T, n)


@needs_cython
def test_compiled_kernel_range():
    ctx = FieldCtx(33, internal=True)
    assert isinstance(make_kernel(33, ctx.modulus, backend="cython"), _pykernels.FieldKernel)


@pytest.mark.parametrize("s", [3, 20])
def test_inverse_series_kernel(s):
    ctx = FieldCtx(s)
    k = make_kernel(s, ctx.modulus, backend="python")
    rng = random.Random(7)
    A = rand_list(rng, ctx.q, 10, True)
    inv = k.inv_trunc(A, 10)
    assert k.mul_trunc(A, inv, 10) == [1] + [0] * 9


def test_compose_with_zero_substitution():
    ctx = FieldCtx(4)
    k = make_kernel(4, ctx.modulus, backend="python")
    assert k.compose_trunc([5, 1, 2], [0, 0, 0], 3) == [5, 0, 0]


def test_pure_python_engine_matches_compiled(F4):
    """A small census through both backends yields identical counts."""
    import subprocess
    import sys

    code = ("from astower.census import rational_run; from astower.gf import FieldCtx;"
            "import astower._kernels as k;"
            "r = rational_run(FieldCtx(2), 5);"
            "print(k.BACKEND, [len(l) for l in r.levels])")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={**__import__("os").environ, "ASTOWER_PURE_PYTHON": "1"},
                         check=True).stdout.split(None, 1)
    assert out[0] == "python"
    assert out[1].strip() == "[5, 8, 14, 24, 40, 72]"

"""Pure-Python truncated power-series kernels over GF(2^s).

Coefficient lists hold field elements as ints, lowest degree first.  Every
routine returns a fresh list and never reads past ``n`` output terms.
"""

from __future__ import annotations

BACKEND = "python"


class FieldKernel:
    """Scalar and power-series arithmetic for one binary field.

    ``exp``/``log`` are Zech-free antilog tables (``exp`` has length
    ``2*(q-1)``) and are only given for small fields; otherwise products go
    through carry-less multiplication and reduction.
    """

    def __init__(self, s, modulus, exp=None, log=None):
        self.s = s
        self.modulus = modulus
        self.order = (1 << s) - 1
        self.exp = exp
        self.log = log
        if exp is not None:
            self.mul = self._mul_table
        else:
            self.mul = self._mul_clmul

    def _mul_table(self, a, b):
        if a and b:
            return self.exp[self.log[a] + self.log[b]]
        return 0

    def _mul_clmul(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        m = self.modulus
        s = self.s
        while r.bit_length() > s:
            r ^= m << (r.bit_length() - 1 - s)
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.s)
        if self.exp is not None:
            return self.exp[self.order - self.log[a]]
        # a^(q-2)
        e = self.order - 1
        r = 1
        mul = self.mul
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    def scale(self, a, c, n):
        """c * a, truncated to n terms."""
        if c == 0:
            return [0] * min(len(a), n)
        if self.exp is not None:
            exp, log = self.exp, self.log
            lc = log[c]
            return [exp[log[x] + lc] if x else 0 for x in a[:n]]
        mul = self.mul
        return [mul(x, c) for x in a[:n]]

    def mul_trunc(self, a, b, n):
        """Product of two power series modulo t^n."""
        la, lb = len(a), len(b)
        m = min(n, la + lb - 1) if la and lb else 0
        res = [0] * m
        if m == 0:
            return res
        if self.exp is not None:
            exp, log = self.exp, self.log
            lgb = [log[x] if x else -1 for x in b]
            for i in range(min(la, m)):
                x = a[i]
                if not x:
                    continue
                lx = log[x]
                top = min(lb, m - i)
                for j in range(top):
                    y = lgb[j]
                    if y >= 0:
                        res[i + j] ^= exp[lx + y]
            return res
        mul = self.mul
        for i in range(min(la, m)):
            x = a[i]
            if not x:
                continue
            for j in range(min(lb, m - i)):
                y = b[j]
                if y:
                    res[i + j] ^= mul(x, y)
        return res

    def inv_trunc(self, a, n):
        """Multiplicative inverse of a power series with a[0] != 0, mod t^n."""
        c = self.inv(a[0])
        la = len(a)
        res = [0] * n
        if n == 0:
            return res
        res[0] = c
        mul = self.mul
        if self.exp is not None:
            exp, log = self.exp, self.log
            lga = [log[x] if x else -1 for x in a]
            lc = log[c]
            for k in range(1, n):
                acc = 0
                for j in range(1, min(k, la - 1) + 1):
                    y = lga[j]
                    z = res[k - j]
                    if y >= 0 and z:
                        acc ^= exp[y + log[z]]
                res[k] = exp[log[acc] + lc] if acc else 0
            return res
        for k in range(1, n):
            acc = 0
            for j in range(1, min(k, la - 1) + 1):
                if a[j] and res[k - j]:
                    acc ^= mul(a[j], res[k - j])
            res[k] = mul(acc, c)
        return res

    def compose_trunc(self, g, T, n):
        """sum_j g[j] * T^j modulo s^n, for a series T with T[0] == 0."""
        if n <= 0:
            return []
        v = 0
        while v < len(T) and T[v] == 0:
            v += 1
        if v == len(T):
            # T vanishes to the known order: only g[0] survives
            return [g[0] if g else 0] + [0] * (n - 1)
        # only g[j] with j*v < n contribute
        top = min(len(g), (n - 1) // v + 1)
        acc = [0] * n
        for j in range(top - 1, -1, -1):
            acc = self.mul_trunc(acc, T, n)
            acc += [0] * (n - len(acc))
            acc[0] ^= g[j]
        return acc

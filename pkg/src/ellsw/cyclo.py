"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as its residue modulo the N-th cyclotomic polynomial
Phi_N: a coefficient vector of length deg(Phi_N) = phi(N) over Q.  That
representation is canonical, so two values at the same order are equal
iff their stored coefficients are equal.  Cross-order comparisons embed
into the lcm order first; `reduced()` rewrites a value at its conductor
(the smallest order whose field contains it).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import NotRationalError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def factorize(n: int) -> dict:
    """Prime factorization by trial division; fine for the orders used here."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _poly_divexact(num, den):
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        t = c // lead
        q[i - dd] = t
        for j, cd in enumerate(den):
            num[i - dd + j] -= t * cd
    assert all(c == 0 for c in num), "polynomial division was not exact"
    return q


@lru_cache(maxsize=None)
def _cyclotomic_squarefree(n: int):
    # n squarefree; Phi built by Phi_{pm}(x) = Phi_m(x^p) / Phi_m(x).
    if n == 1:
        return (-1, 1)
    p = min(factorize(n))
    m = n // p
    base = _cyclotomic_squarefree(m)
    spread = [0] * ((len(base) - 1) * p + 1)
    for i, c in enumerate(base):
        spread[i * p] = c
    return tuple(_poly_divexact(spread, base))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Coefficients of Phi_n, constant term first."""
    if n <= 0:
        raise ValueError("cyclotomic_polynomial expects a positive integer")
    rad = 1
    for p in factorize(n):
        rad *= p
    base = _cyclotomic_squarefree(rad) if n > 1 else (-1, 1)
    s = n // rad
    if s == 1:
        return tuple(base)
    spread = [0] * ((len(base) - 1) * s + 1)
    for i, c in enumerate(base):
        spread[i * s] = c
    return tuple(spread)


# Per order N: list of reduction rows; row j holds the canonical integer
# coefficient vector of x^(deg+j) modulo Phi_N.  Extended on demand.
_ROWS: dict = {}


def _reduction_rows(n: int, upto: int):
    deg = euler_phi(n)
    rows = _ROWS.get(n)
    if rows is None:
        phi = cyclotomic_polynomial(n)
        first = tuple(-c for c in phi[:-1])
        rows = [first]
        _ROWS[n] = rows
    while len(rows) <= upto - deg:
        prev = rows[-1]
        top = prev[-1]
        shifted = (0,) + prev[:-1]
        if top:
            shifted = tuple(s + top * r for s, r in zip(shifted, rows[0]))
        rows.append(shifted)
    return rows


def _canonical_monomial(n: int, e: int):
    """Canonical coefficient vector of zeta_n^e as a tuple of ints."""
    deg = euler_phi(n)
    e %= n
    if e < deg:
        row = [0] * deg
        row[e] = 1
        return tuple(row)
    return _reduction_rows(n, e)[e - deg]


class CyclotomicNumber:
    """An exact element of Q(zeta_order); immutable."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        deg = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coefficients for order {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- construction ------------------------------------------------

    @staticmethod
    def from_rational(q) -> "CyclotomicNumber":
        return CyclotomicNumber(1, (Fraction(q),))

    @staticmethod
    def zero() -> "CyclotomicNumber":
        return CyclotomicNumber(1, (_ZERO,))

    @staticmethod
    def one() -> "CyclotomicNumber":
        return CyclotomicNumber(1, (_ONE,))

    @staticmethod
    def _from_dense(order: int, dense) -> "CyclotomicNumber":
        """Reduce an arbitrary-length coefficient list modulo Phi_order."""
        deg = euler_phi(order)
        out = [Fraction(c) for c in dense[:deg]]
        out += [_ZERO] * (deg - len(out))
        for e in range(deg, len(dense)):
            c = dense[e]
            if c:
                row = _canonical_monomial(order, e)
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CyclotomicNumber(order, out)

    # -- order handling ----------------------------------------------

    def embed(self, order: int) -> "CyclotomicNumber":
        """Re-express at a larger order (self.order must divide order)."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only embed into a multiple of the order")
        step = order // self.order
        dense = [_ZERO] * ((len(self.coeffs) - 1) * step + 1)
        for j, c in enumerate(self.coeffs):
            dense[j * step] = c
        return CyclotomicNumber._from_dense(order, dense)

    @staticmethod
    def _common(a: "CyclotomicNumber", b: "CyclotomicNumber"):
        if a.order == b.order:
            return a, b
        m = math.lcm(a.order, b.order)
        return a.embed(m), b.embed(m)

    def galois(self, t: int) -> "CyclotomicNumber":
        """The image under zeta |-> zeta^t (t coprime to the order)."""
        n = self.order
        if math.gcd(t, n) != 1:
            raise ValueError("galois exponent must be coprime to the order")
        deg = len(self.coeffs)
        out = [_ZERO] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                row = _canonical_monomial(n, (j * t) % n)
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CyclotomicNumber(n, out)

    def reduced(self) -> "CyclotomicNumber":
        """Rewrite at the conductor: the least order whose field contains self."""
        x = self
        changed = True
        while changed and x.order > 1:
            changed = False
            for p in factorize(x.order):
                d = x.order // p
                y = x._descend(d)
                if y is not None:
                    x = y
                    changed = True
                    break
        return x

    def _descend(self, d: int):
        """Return self re-expressed at order d (d = order/p), or None."""
        n = self.order
        fixers = [t for t in range(1, n) if t % d == 1 and math.gcd(t, n) == 1]
        for t in fixers:
            if t != 1 and self.galois(t).coeffs != self.coeffs:
                return None
        # Solve for coordinates in the zeta_d power basis embedded at order n.
        degd = euler_phi(d)
        cols = [_canonical_monomial(n, (j * (n // d)) % n) for j in range(degd)]
        return _solve_subfield(d, cols, self.coeffs)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self == _ONE_CYC

    def is_rational(self) -> bool:
        if self.order == 1:
            return True
        return self.reduced().order == 1

    def as_rational(self) -> Fraction:
        if self.order == 1:
            return self.coeffs[0]
        r = self.reduced()
        if r.order != 1:
            raise NotRationalError(self)
        return r.coeffs[0]

    def multiplicative_order(self):
        """Order as a root of unity, or None if not one."""
        bound = 2 * self.order
        v = self
        for d in range(1, bound + 1):
            if v.is_one():
                return d
            v = v * self
        return None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = CyclotomicNumber._common(self, other)
        return CyclotomicNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = CyclotomicNumber._common(self, other)
        if a.order == 1:
            return CyclotomicNumber(1, (a.coeffs[0] * b.coeffs[0],))
        # Sparse operand: accumulate shifted monomial reductions.
        na = sum(1 for c in a.coeffs if c)
        nb = sum(1 for c in b.coeffs if c)
        if min(na, nb) <= 2:
            small, big = (a, b) if na <= nb else (b, a)
            deg = len(a.coeffs)
            out = [_ZERO] * deg
            for j, cj in enumerate(small.coeffs):
                if not cj:
                    continue
                for k, ck in enumerate(big.coeffs):
                    if not ck:
                        continue
                    row = _canonical_monomial(a.order, j + k)
                    c = cj * ck
                    for i, r in enumerate(row):
                        if r:
                            out[i] += c * r
            return CyclotomicNumber(a.order, out)
        dense = _poly_mul(a.coeffs, b.coeffs)
        return CyclotomicNumber._from_dense(a.order, dense)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.order == 1:
            return CyclotomicNumber(1, (1 / self.coeffs[0],))
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        s = _poly_modinv(list(self.coeffs), phi)
        return CyclotomicNumber._from_dense(self.order, s)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CyclotomicNumber":
        if self.order <= 2:
            return self
        return self.galois(self.order - 1)

    # -- comparisons / hashing -----------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = CyclotomicNumber._common(self, other)
        return a.coeffs == b.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            r = self.reduced()
            object.__setattr__(self, "_hash", hash((r.order, r.coeffs)))
        return self._hash

    # -- conversions -----------------------------------------------------

    def to_complex(self) -> complex:
        """Floating-point embedding; sanity checks only, never ground truth."""
        z = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                z += float(c) * cmath.exp(2j * cmath.pi * j / self.order)
        return z

    def to_dict(self) -> dict:
        r = self.reduced()
        return {
            "order": r.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in r.coeffs],
        }

    @staticmethod
    def from_dict(d) -> "CyclotomicNumber":
        coeffs = [Fraction(s) for s in d["coeffs"]]
        return CyclotomicNumber(int(d["order"]), coeffs)

    def __repr__(self):
        if self.order == 1:
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{j}" if j else f"{c}")
        return "Cyc(" + (" + ".join(terms) or "0") + ")"


def _coerce(x):
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.from_rational(x)
    return NotImplemented


def _poly_modinv(a, mod):
    """Inverse of a modulo mod in Q[x]; both as low-first Fraction lists."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def polydivmod(num, den):
        num = num[:]
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        dl = den[-1]
        while len(num) >= len(den) and trim(num):
            t = num[-1] / dl
            k = len(num) - len(den)
            q[k] = t
            for i, c in enumerate(den):
                num[k + i] -= t * c
            trim(num)
        return trim(q), num

    r0, r1 = [Fraction(c) for c in mod], trim([Fraction(c) for c in a])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = polydivmod(r0, r1)
        r0, r1 = r1, trim(r)
        qn = _poly_mul_frac(q, s1)
        s0, s1 = s1, trim([x - y for x, y in _zip_pad(s0, qn)])
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo Phi_N")
    g = r1[0]
    return [c / g for c in s1]


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _solve_subfield(d, cols, target):
    """Solve sum_j a_j cols[j] = target over Q; return value at order d or None."""
    nrows = len(target)
    ncols = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [target[i]] for i in range(nrows)]
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        piv.append(c)
        r += 1
        if r == nrows:
            break
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        sol[c] = mat[i][-1]
    # Rows past the pivots must be consistent (they are, if membership held).
    for i in range(len(piv), nrows):
        if mat[i][-1]:
            return None
    return CyclotomicNumber(d, sol)


def root_of_unity(k: int, n: int) -> CyclotomicNumber:
    """zeta_n^k in canonical form at the conductor."""
    if n < 1:
        raise ValueError("order must be a positive integer")
    row = _canonical_monomial(n, k % n)
    return CyclotomicNumber(n, row).reduced()


_ONE_CYC = CyclotomicNumber.one()

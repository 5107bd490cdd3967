"""Exact scalar arithmetic for the coefficient tower Q < Q(q) < Q(q)(u).

The deformation parameter q is kept formal: every scalar is an element of
the rational-function field Q(q), stored as a reduced ratio of
integer-coefficient Laurent polynomials.  Identities verified over this
field hold for every generic (non-root-of-unity) value of q, so no
floating-point tolerances enter anywhere.

On top of Q(q) sits a generic fraction-field construction ``FracField``
over a polynomial ring in one variable.  It is instantiated three times:

* ``UFIELD``  = Q(q)(u)   -- spectral-parameter rational functions,
* ``XFIELD``  = Q(q)(x)   -- crossing-symmetry checks,
* ``XYFIELD`` = Q(q)(x)(y) -- bivariate field for Yang-Baxter checks.

Rendering is deterministic: Laurent polynomials in q print in descending
powers ("q^2 + 1 + q^-2"); polynomials in u print in ascending powers
with the denominator display-normalised so its lowest coefficient is 1
("(1 - q^2*u)/(1 - u)").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import faults


class DivergentLimitError(ArithmeticError):
    """Raised when a scalar has a pole at q = 1."""


class NoSeriesError(ValueError):
    """Raised when a rational function has no power series at u = 0."""


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# Laurent polynomials in q with integer coefficients
# ---------------------------------------------------------------------------

class IntLaurent:
    """Laurent polynomial in q over Z: coefficients plus lowest exponent.

    Normal form: the coefficient tuple is empty for zero, otherwise its
    first and last entries are nonzero.
    """

    __slots__ = ("low", "c")

    def __init__(self, low, coeffs):
        c = list(coeffs)
        i, j = 0, len(c)
        while j > i and c[j - 1] == 0:
            j -= 1
        while i < j and c[i] == 0:
            i += 1
        if i == j:
            self.low = 0
            self.c = ()
        else:
            self.low = low + i
            self.c = tuple(c[i:j])

    @classmethod
    def from_int(cls, n):
        return cls(0, (n,))

    @classmethod
    def q_power(cls, k, coeff=1):
        return cls(k, (coeff,))

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return (isinstance(other, IntLaurent)
                and self.low == other.low and self.c == other.c)

    def __hash__(self):
        return hash((self.low, self.c))

    @property
    def degree(self):
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.c) - 1

    def is_one(self):
        return self.low == 0 and self.c == (1,)

    def __neg__(self):
        return IntLaurent(self.low, tuple(-a for a in self.c))

    def __add__(self, other):
        if not self.c:
            return other
        if not other.c:
            return self
        low = min(self.low, other.low)
        high = max(self.low + len(self.c), other.low + len(other.c))
        c = [0] * (high - low)
        for i, a in enumerate(self.c):
            c[self.low - low + i] = a
        for i, a in enumerate(other.c):
            c[other.low - low + i] += a
        return IntLaurent(low, c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return _L_ZERO
        if len(self.c) == 1:
            a = self.c[0]
            return IntLaurent(self.low + other.low, tuple(a * b for b in other.c))
        if len(other.c) == 1:
            b = other.c[0]
            return IntLaurent(self.low + other.low, tuple(a * b for a in self.c))
        c = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        c[i + j] += a * b
        return IntLaurent(self.low + other.low, c)

    def scale(self, n):
        if n == 0:
            return _L_ZERO
        return IntLaurent(self.low, tuple(n * a for a in self.c))

    def shifted(self, k):
        """Multiply by q^k."""
        if not self.c:
            return self
        return IntLaurent(self.low + k, self.c)

    def reverse(self):
        """Substitute q -> q^-1."""
        if not self.c:
            return self
        return IntLaurent(-(self.low + len(self.c) - 1), tuple(reversed(self.c)))

    def content(self):
        g = 0
        for a in self.c:
            g = _igcd(g, a)
        return g

    def at_one(self):
        return sum(self.c)

    def eval_fraction(self, q0):
        """Exact evaluation at a nonzero rational q0."""
        if q0 == 0:
            raise ZeroDivisionError("cannot evaluate Laurent polynomial at q=0")
        acc = Fraction(0)
        for i, a in enumerate(self.c):
            if a:
                acc += a * q0 ** (self.low + i)
        return acc

    def taylor_at_one(self, order):
        """Coefficients of p(1+t) up to t^order; requires low >= 0."""
        if self.low < 0:
            raise ValueError("shift to nonnegative exponents first")
        out = [0] * (order + 1)
        for i, a in enumerate(self.c):
            if a:
                e = self.low + i
                for j in range(min(e, order) + 1):
                    out[j] += a * math.comb(e, j)
        return out

    # -- division helpers used by the gcd machinery -----------------------

    def _divmod_poly(self, other):
        """Long division of ordinary (low >= 0) polynomials over Z.

        Only valid when every quotient coefficient is an exact integer,
        which holds for the pseudo-remainder and exact-division call sites.
        """
        a = list(self.c)
        alow, blow = self.low, other.low
        b = other.c
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        da, db = len(a) - 1, len(b) - 1
        if da + alow < db + blow:
            return _L_ZERO, self
        # work with plain polynomials shifted to exponent 0
        a = [0] * alow + a
        bfull = [0] * blow + list(b)
        da, db = len(a) - 1, len(bfull) - 1
        quot = [0] * (da - db + 1)
        for k in range(da - db, -1, -1):
            if a[db + k] % bfull[db] != 0:
                raise ArithmeticError("inexact integer polynomial division")
            f = a[db + k] // bfull[db]
            quot[k] = f
            if f:
                for i in range(db + 1):
                    a[i + k] -= f * bfull[i]
        return IntLaurent(0, quot), IntLaurent(0, a)

    def divexact(self, other):
        """Exact division; both arguments Laurent, remainder must vanish."""
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.c:
            return _L_ZERO
        shift = self.low - other.low
        q, r = IntLaurent(0, self.c)._divmod_poly(IntLaurent(0, other.c))
        if r:
            raise ArithmeticError("inexact Laurent division")
        return q.shifted(shift)

    @staticmethod
    def gcd(a, b):
        """A gcd in Z[q, q^-1], normalised to lowest exponent 0 and
        positive leading coefficient (primitive PRS on primitive parts)."""
        if not a.c:
            return IntLaurent.gcd(b, a) if b.c else _L_ZERO
        if not b.c:
            g = IntLaurent(0, a.c)
            return g if g.c[-1] > 0 else -g
        ca, cb = a.content(), b.content()
        p = IntLaurent(0, tuple(x // ca for x in a.c))
        r = IntLaurent(0, tuple(x // cb for x in b.c))
        while r.c:
            if len(p.c) < len(r.c):
                p, r = r, p
                continue
            # pseudo-remainder keeps everything over Z; q-power units are
            # irrelevant, so every intermediate is renormalised to low = 0
            d = len(p.c) - len(r.c) + 1
            scaled = p.scale(r.c[-1] ** d)
            _, rem = scaled._divmod_poly(r)
            p = r
            c = rem.content()
            r = IntLaurent(0, tuple(x // c for x in rem.c)) if c else _L_ZERO
        g = p.scale(_igcd(ca, cb)).shifted(-p.low)
        return g if g.c[-1] > 0 else -g

    def __repr__(self):
        return f"IntLaurent({render_laurent(self)})"


_L_ZERO = IntLaurent(0, ())
_L_ONE = IntLaurent(0, (1,))


def render_laurent(p, var="q"):
    """Deterministic text form, descending powers: 'q^2 + 1 + q^-2'."""
    if not p.c:
        return "0"
    parts = []
    for i in range(len(p.c) - 1, -1, -1):
        a = p.c[i]
        if not a:
            continue
        e = p.low + i
        if e == 0:
            body = str(abs(a))
        else:
            pow_txt = var if e == 1 else f"{var}^{e}"
            body = pow_txt if abs(a) == 1 else f"{abs(a)}*{pow_txt}"
        if not parts:
            parts.append(body if a > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if a > 0 else f"- {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# The field Q(q)
# ---------------------------------------------------------------------------

class Scalar:
    """Element of Q(q): reduced ratio of integer Laurent polynomials.

    Canonical form: the denominator has lowest exponent 0 and positive
    leading coefficient, the polynomial gcd of numerator and denominator
    is trivial, and the integer contents are coprime.  Equality is
    structural on this normal form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=_L_ONE, _reduced=False):
        if not den:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not num:
            self.num = _L_ZERO
            self.den = _L_ONE
            return
        if _reduced or den.is_one():
            self.num, self.den = num, den
            return
        # shift all q powers into the numerator
        num = num.shifted(-den.low)
        den = den.shifted(-den.low)
        g = IntLaurent.gcd(num, den)
        if not g.is_one():
            num = num.divexact(g)
            den = den.divexact(g)
        if den.c[-1] < 0:
            num, den = -num, -den
        self.num = num.shifted(-den.low)
        self.den = den.shifted(-den.low)

    @classmethod
    def from_int(cls, n):
        return cls(IntLaurent.from_int(n))

    @classmethod
    def from_fraction(cls, f):
        f = Fraction(f)
        return cls(IntLaurent.from_int(f.numerator),
                   IntLaurent.from_int(f.denominator))

    @classmethod
    def q_power(cls, k):
        return cls(IntLaurent.q_power(k))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (isinstance(other, Scalar)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num + other.num)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num)
        return Scalar(self.num * other.num, self.den * other.den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return Scalar(self.num * other.den, self.den * other.num)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def subs_qinv(self):
        """Substitute q -> q^-1."""
        return Scalar(self.num.reverse(), self.den.reverse())

    def eval_at(self, q0):
        """Exact rational evaluation at q = q0 (q0 nonzero, denominator
        must not vanish there)."""
        d = self.den.eval_fraction(q0)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={q0}")
        return self.num.eval_fraction(q0) / d

    def size_hint(self):
        return len(self.num.c) + len(self.den.c)

    def render(self):
        if self.den.is_one():
            return render_laurent(self.num)
        return f"({render_laurent(self.num)})/({render_laurent(self.den)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()})"


ZERO = Scalar(_L_ZERO)
ONE = Scalar(_L_ONE)
Q = Scalar.q_power(1)
QINV = Scalar.q_power(-1)
Q_MINUS_QINV = Q - QINV


def qnum(k):
    """The q-integer (q^k - q^-k)/(q - q^-1) as an element of Q(q)."""
    if k == 0:
        return ZERO
    if k < 0:
        return -qnum(-k)
    if faults.active("qnum"):
        # test hook: off-by-one in every nonzero q-integer
        k = k + 1
    coeffs = [0] * (2 * k - 1)
    for i in range(0, 2 * k - 1, 2):
        coeffs[i] = 1
    return Scalar(IntLaurent(-(k - 1), coeffs))


# ---------------------------------------------------------------------------
# Limits at q = 1
# ---------------------------------------------------------------------------

def _substitution_limit(num, den, cap=64):
    """Limit via q = 1 + t with adaptively truncated expansions.

    Doubles the truncation order until the lowest nonzero t-coefficient
    of both expansions is found (or the cap is reached).
    """
    shift = min(num.low, den.low, 0)
    num = num.shifted(-shift)
    den = den.shifted(-shift)

    def lowest(p, order):
        for j, a in enumerate(p.taylor_at_one(order)):
            if a:
                return j, a
        return None

    order = 1
    while order <= cap:
        ln = lowest(num, order)
        ld = lowest(den, order)
        if ld is not None and (ln is not None or order >= num.degree):
            if ln is None:
                return Fraction(0)
            jn, an = ln
            jd, ad = ld
            if jn < jd:
                raise DivergentLimitError("pole at q=1")
            if jn > jd:
                return Fraction(0)
            return Fraction(an, ad)
        order *= 2
    raise DivergentLimitError("q=1 limit did not resolve within order cap")


def limit_q1(s):
    """Exact limit of a Scalar as q -> 1, as a Fraction.

    The stored fraction is already reduced, so evaluating at q = 1
    resolves almost every case; the 1+t substitution handles any
    residual 0/0 cancellation.
    """
    d1 = s.den.at_one()
    if d1 != 0:
        return Fraction(s.num.at_one(), d1)
    if s.num.at_one() != 0:
        raise DivergentLimitError("pole at q=1")
    return _substitution_limit(s.num, s.den)


# ---------------------------------------------------------------------------
# Scalar field descriptor (so matrices and polynomials stay ring-generic)
# ---------------------------------------------------------------------------

class _ScalarField:
    """Field descriptor for Q(q)."""

    name = "Q(q)"
    zero = None  # filled below
    one = None

    @staticmethod
    def from_int(n):
        return Scalar.from_int(n)

    @staticmethod
    def render(x):
        return x.render()


SCALARS = _ScalarField()
_ScalarField.zero = ZERO
_ScalarField.one = ONE


# ---------------------------------------------------------------------------
# Generic dense polynomials and fractions over a coefficient field
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over a coefficient field descriptor."""

    __slots__ = ("f", "c")

    def __init__(self, field, coeffs):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.f = field
        self.c = tuple(c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    @property
    def degree(self):
        return len(self.c) - 1

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == self.f.one

    def __neg__(self):
        return Poly(self.f, tuple(-a for a in self.c))

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = c[i] + x
        return Poly(self.f, c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return Poly(self.f, ())
        zero = self.f.zero
        c = [zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        c[i + j] = c[i + j] + a * b
        return Poly(self.f, c)

    def scale(self, s):
        return Poly(self.f, tuple(a * s for a in self.c))

    def divmod(self, other):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db = other.degree
        lead_inv = self.f.one / other.c[-1]
        if len(rem) - 1 < db:
            return Poly(self.f, ()), self
        quot = [self.f.zero] * (len(rem) - db)
        for k in range(len(rem) - db - 1, -1, -1):
            f = rem[db + k] * lead_inv
            quot[k] = f
            if f:
                for i in range(db + 1):
                    rem[i + k] = rem[i + k] - f * other.c[i]
        return Poly(self.f, quot), Poly(self.f, rem)

    @staticmethod
    def gcd(a, b):
        """Monic gcd by the Euclidean algorithm over the coefficient field."""
        while b:
            _, r = a.divmod(b)
            a, b = b, r
        if a and not a.c[-1] == a.f.one:
            a = a.scale(a.f.one / a.c[-1])
        return a


class Frac:
    """Element of the fraction field of ``Poly``: reduced, monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None, _reduced=False):
        if den is None:
            den = field.poly_one
        if not den:
            raise ZeroDivisionError(f"zero denominator in {field.name}")
        if not num:
            self.field = field
            self.num = field.poly_zero
            self.den = field.poly_one
            return
        if not (_reduced or den.is_one()):
            g = Poly.gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead = den.c[-1]
            if not lead == field.coeff.one:
                inv = field.coeff.one / lead
                num = num.scale(inv)
                den = den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (isinstance(other, Frac) and self.field is other.field
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def __neg__(self):
        return Frac(self.field, -self.num, self.den, _reduced=True)

    def __add__(self, other):
        if self.den == other.den:
            return Frac(self.field, self.num + other.num, self.den)
        return Frac(self.field,
                    self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.den.is_one() and other.den.is_one():
            return Frac(self.field, self.num * other.num)
        return Frac(self.field, self.num * other.num, self.den * other.den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError(f"inverse of zero in {self.field.name}")
        return Frac(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def size_hint(self):
        n = sum(a.size_hint() for a in self.num.c if a)
        d = sum(a.size_hint() for a in self.den.c if a)
        return n + d

    def render(self):
        return self.field.render(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Frac({self.render()})"


class FracField:
    """The field of rational functions in one variable over ``coeff``."""

    def __init__(self, coeff, var):
        self.coeff = coeff
        self.var = var
        self.name = f"{coeff.name}({var})"
        self.poly_zero = Poly(coeff, ())
        self.poly_one = Poly(coeff, (coeff.one,))
        self.zero = Frac(self, self.poly_zero, _reduced=True)
        self.one = Frac(self, self.poly_one, _reduced=True)
        self.gen = Frac(self, Poly(coeff, (coeff.zero, coeff.one)), _reduced=True)

    def from_int(self, n):
        return self.from_coeff(self.coeff.from_int(n))

    def from_coeff(self, c):
        # lift through nested fields, e.g. a Scalar into Q(q)(x)(y)
        if isinstance(self.coeff, FracField) and not (
                isinstance(c, Frac) and c.field is self.coeff):
            c = self.coeff.from_coeff(c)
        return Frac(self, Poly(self.coeff, (c,)))

    def poly(self, coeffs):
        """Polynomial from ascending coefficient list, as a field element."""
        return Frac(self, Poly(self.coeff, coeffs))

    def render_poly(self, p):
        if not p.c:
            return "0"
        parts = []
        for e, a in enumerate(p.c):
            if not a:
                continue
            if e == 0:
                body = self.coeff.render(a)
                neg = body.startswith("-")
                if neg:
                    body = body[1:]
            else:
                pow_txt = self.var if e == 1 else f"{self.var}^{e}"
                ca = self.coeff.render(a)
                neg = False
                if ca == "1":
                    body = pow_txt
                elif ca == "-1":
                    body, neg = pow_txt, True
                else:
                    if ca.startswith("-") and all(s not in ca[1:] for s in (" + ", " - ")):
                        ca, neg = ca[1:], True
                    if " " in ca:
                        ca = f"({ca})"
                    body = f"{ca}*{pow_txt}"
            if not parts:
                parts.append(body if not neg else f"-{body}")
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")

        return " ".join(parts)

    def render(self, x):
        num, den = x.num, x.den
        if den.is_one():
            return self.render_poly(num)
        # display form: scale so the lowest nonzero denominator coeff is 1
        pivot = next(a for a in den.c if a)
        inv = self.coeff.one / pivot
        num, den = num.scale(inv), den.scale(inv)
        return f"({self.render_poly(num)})/({self.render_poly(den)})"


UFIELD = FracField(SCALARS, "u")
XFIELD = FracField(SCALARS, "x")
XYFIELD = FracField(XFIELD, "y")


# ---------------------------------------------------------------------------
# Truncated power series in u
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class USeries:
    """Truncated series in u with Scalar coefficients (u^0 .. u^order)."""

    order: int
    coeffs: tuple

    def coeff(self, m):
        return self.coeffs[m]

    def render(self):
        return " + ".join(
            f"({c.render()})*u^{m}" if m else f"({c.render()})"
            for m, c in enumerate(self.coeffs))


def expand(r, order):
    """Truncated power-series expansion of a rational function at u = 0.

    Requires the denominator to have a nonzero constant term; the result
    satisfies r * den = num modulo u^(order+1).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    field = r.field.coeff
    den = r.den.c
    if not den or not den[0]:
        raise NoSeriesError("no series at u=0: denominator vanishes there")
    num = r.num.c
    inv0 = field.one / den[0]
    out = []
    for m in range(order + 1):
        acc = num[m] if m < len(num) else field.zero
        for j in range(1, min(m, len(den) - 1) + 1):
            if den[j] and out[m - j]:
                acc = acc - den[j] * out[m - j]
        out.append(acc * inv0)
    return USeries(order, tuple(out))

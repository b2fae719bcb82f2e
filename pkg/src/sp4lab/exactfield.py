"""Exact arithmetic in a global model of a non-archimedean local field.

Two kinds of field are supported, and both stay exact forever:

* mixed characteristic: the model is Q with the p-adic valuation; an
  element is ``num/den * p^v`` with num, den integers prime to p;
* equal characteristic: the model is F_q(t) with the t-adic valuation;
  an element is ``num/den * t^v`` with num, den polynomials over F_q
  that have a nonzero constant term (den normalized to constant term 1).

The uniformizer is p respectively t, the residue field has q elements,
and ``|x| = q^(-v(x))``.  Residue rings O/pi^n carry canonical digit /
truncation representatives, and the canonical section lifts those
representatives back into the field.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from sp4lab.gfq import (
    gf,
    is_prime,
    poly_add,
    poly_mul,
    poly_neg,
    poly_series_inv,
    poly_sub,
    poly_t_valuation,
    poly_trim,
    poly_gcd,
    poly_divmod,
    poly_scale,
    all_polys,
)

INF = math.inf

MIXED = "mixed"
EQUAL = "equal"


class FieldConfigError(ValueError):
    """Invalid field description (bad prime, unsupported q, bad grammar)."""


class NonIntegralError(ValueError):
    """Reduction mod pi^n was asked of an element with negative valuation."""


@dataclass(frozen=True)
class FieldSpec:
    """A validated local-field description: kind, residue characteristic, degree."""

    kind: str
    p: int
    f: int

    @property
    def q(self):
        return self.p ** self.f

    @property
    def char(self):
        """Characteristic of the field itself (0 for mixed, p for equal)."""
        return 0 if self.kind == MIXED else self.p

    @functools.cached_property
    def residue_gf(self):
        return gf(self.p, self.f)

    # -- element constructors ------------------------------------------------

    def zero(self):
        if self.kind == MIXED:
            return PadicElem(self, 0, 0, 1)
        return LaurentElem(self, 0, (), (1,))

    def one(self):
        return self.integer(1)

    def integer(self, n):
        """Image of the rational integer n."""
        if self.kind == MIXED:
            return _padic_from_fraction(self, Fraction(n))
        k = self.residue_gf
        c = k.from_int(n)
        if c == 0:
            return self.zero()
        return LaurentElem(self, 0, (c,), (1,))

    def rational(self, num, den=1):
        if self.kind != MIXED:
            raise FieldConfigError("rational literals only make sense in mixed characteristic")
        return _padic_from_fraction(self, Fraction(num, den))

    def pi(self, k=1):
        """pi^k as a field element."""
        if self.kind == MIXED:
            return PadicElem(self, k, 1, 1)
        return LaurentElem(self, k, (1,), (1,))

    def from_residue_code(self, code):
        """Embed a residue-field element (integer code) as a canonical lift."""
        ring = residue_ring(self, 1)
        return ring.section(ring.embed_residue_code(code))

    def __str__(self):
        if self.kind == MIXED:
            return f"Q{self.p}"
        return f"F{self.q}((t))"


def make_field(kind, p, f=1):
    """Validated FieldSpec; kind is "mixed" or "equal"."""
    if kind not in (MIXED, EQUAL):
        raise FieldConfigError(f"unknown field kind {kind!r}")
    if not is_prime(p):
        raise FieldConfigError(f"{p} is not prime")
    if f < 1:
        raise FieldConfigError("residue degree must be >= 1")
    if kind == MIXED and f != 1:
        raise FieldConfigError("mixed characteristic supports residue field F_p only (f = 1)")
    if kind == EQUAL:
        try:
            gf(p, f)
        except ValueError as exc:
            raise FieldConfigError(str(exc)) from exc
    return _cached_spec(kind, p, f)


@functools.lru_cache(maxsize=None)
def _cached_spec(kind, p, f):
    return FieldSpec(kind, p, f)


def parse_field(text):
    """Parse the CLI field grammar: Q<p> or F<q>((t)), case sensitive."""
    if text.startswith("Q") and text[1:].isdigit():
        p = int(text[1:])
        if not is_prime(p):
            raise FieldConfigError(f"bad field {text!r}: {p} is not prime")
        return make_field(MIXED, p, 1)
    if text.startswith("F") and text.endswith("((t))"):
        mid = text[1:-5]
        if mid.isdigit():
            q = int(mid)
            for p in range(2, q + 1):
                if q % p == 0:
                    f = 0
                    m = q
                    while m % p == 0:
                        m //= p
                        f += 1
                    if m == 1 and is_prime(p):
                        return make_field(EQUAL, p, f)
                    break
            raise FieldConfigError(f"bad field {text!r}: {q} is not a prime power")
    raise FieldConfigError(f"cannot parse field spec {text!r} (expected e.g. Q3 or F4((t)))")


def valuation_and_norm(x):
    """(v, |x|) with the norm as the exact power q^(-v); |0| = 0."""
    v = x.valuation()
    if v is INF:
        return v, Fraction(0)
    q = x.spec.q
    return v, (Fraction(q) ** (-v) if v > 0 else Fraction(q ** (-v)))


def two_valuation(spec):
    """Valuation of the element 2; undefined in equal characteristic 2."""
    if spec.kind == EQUAL:
        if spec.p == 2:
            raise FieldConfigError("v0 undefined in characteristic 2 (2 = 0)")
        return 0
    return 1 if spec.p == 2 else 0


# ---------------------------------------------------------------------------
# elements


def _strip_p(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _padic_from_fraction(spec, fr):
    if fr == 0:
        return PadicElem(spec, 0, 0, 1)
    p = spec.p
    vn, num = _strip_p(fr.numerator, p)
    vd, den = _strip_p(fr.denominator, p)
    return PadicElem(spec, vn - vd, num, den)


class PadicElem:
    """num/den * p^v with p-free num, den; num == 0 encodes zero."""

    __slots__ = ("spec", "v", "num", "den")

    def __init__(self, spec, v, num, den):
        if num == 0:
            v, num, den = 0, 0, 1
        else:
            g = math.gcd(num, den)
            if g > 1:
                num //= g
                den //= g
            if den < 0:
                num, den = -num, -den
        self.spec = spec
        self.v = v
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num == 0

    def valuation(self):
        return INF if self.num == 0 else self.v

    def is_integral(self):
        return self.num == 0 or self.v >= 0

    def is_unit(self):
        return self.num != 0 and self.v == 0

    def shift(self, k):
        """Multiply by pi^k."""
        if self.num == 0:
            return self
        return PadicElem(self.spec, self.v + k, self.num, self.den)

    def __add__(self, other):
        other = _coerce(self.spec, other)
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        p = self.spec.p
        v = min(self.v, other.v)
        a = self.num * other.den * p ** (self.v - v)
        b = other.num * self.den * p ** (other.v - v)
        s = a + b
        if s == 0:
            return PadicElem(self.spec, 0, 0, 1)
        dv, s = _strip_p(s, p)
        return PadicElem(self.spec, v + dv, s, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return PadicElem(self.spec, self.v, -self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce(self.spec, other))

    def __rsub__(self, other):
        return _coerce(self.spec, other) + (-self)

    def __mul__(self, other):
        other = _coerce(self.spec, other)
        if self.num == 0 or other.num == 0:
            return PadicElem(self.spec, 0, 0, 1)
        return PadicElem(self.spec, self.v + other.v,
                         self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self.spec, other)
        if other.num == 0:
            raise ZeroDivisionError("division by zero field element")
        if self.num == 0:
            return self
        return PadicElem(self.spec, self.v - other.v,
                         self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(self.spec, other) / self

    def __eq__(self, other):
        if not isinstance(other, PadicElem):
            if isinstance(other, (int, Fraction)):
                other = _coerce(self.spec, other)
            else:
                return NotImplemented
        return (self.spec == other.spec and self.v == other.v
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.v, self.num, self.den))

    def as_fraction(self):
        p = self.spec.p
        if self.v >= 0:
            return Fraction(self.num * p ** self.v, self.den)
        return Fraction(self.num, self.den * p ** (-self.v))

    def to_str(self):
        fr = self.as_fraction()
        return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"

    __str__ = to_str

    def __repr__(self):
        return f"PadicElem({self.spec}, {self.to_str()})"

    def reduce(self, ring):
        """Canonical representative mod pi^n; needs valuation >= 0."""
        if self.num == 0:
            return ring.zero
        if self.v < 0:
            raise NonIntegralError(f"{self} has valuation {self.v} < 0")
        if self.v >= ring.n:
            return ring.zero
        m = ring.modulus
        return (self.num * pow(self.den, -1, m) * pow(self.spec.p, self.v, m)) % m


class LaurentElem:
    """num/den * t^v with num, den in F_q[t], num[0] != 0, den[0] == 1."""

    __slots__ = ("spec", "v", "num", "den")

    # above this total degree, cancel gcd factors to stop growth
    _REDUCE_DEGREE = 48

    def __init__(self, spec, v, num, den, normalize=True):
        if normalize and num:
            k = spec.residue_gf
            dv = poly_t_valuation(den)
            if dv:
                den = den[dv:]
                v -= dv
            nv = poly_t_valuation(num)
            if nv:
                num = num[nv:]
                v += nv
            if den[0] != 1:
                c = k.inv(den[0])
                num = poly_scale(k, num, c)
                den = poly_scale(k, den, c)
            if len(num) + len(den) > self._REDUCE_DEGREE and len(den) > 1:
                g = poly_gcd(k, num, den)
                if len(g) > 1:
                    num, _ = poly_divmod(k, num, g)
                    den, _ = poly_divmod(k, den, g)
                    c = k.inv(den[0])
                    num = poly_scale(k, num, c)
                    den = poly_scale(k, den, c)
        if not num:
            v, num, den = 0, (), (1,)
        self.spec = spec
        self.v = v
        self.num = num
        self.den = den

    def is_zero(self):
        return not self.num

    def valuation(self):
        return INF if not self.num else self.v

    def is_integral(self):
        return not self.num or self.v >= 0

    def is_unit(self):
        return bool(self.num) and self.v == 0

    def shift(self, k):
        if not self.num:
            return self
        return LaurentElem(self.spec, self.v + k, self.num, self.den, normalize=False)

    def __add__(self, other):
        other = _coerce(self.spec, other)
        if not self.num:
            return other
        if not other.num:
            return self
        k = self.spec.residue_gf
        v = min(self.v, other.v)
        a = poly_mul(k, self.num, other.den)
        if self.v > v:
            a = (0,) * (self.v - v) + a
        b = poly_mul(k, other.num, self.den)
        if other.v > v:
            b = (0,) * (other.v - v) + b
        num = poly_add(k, a, b)
        den = poly_mul(k, self.den, other.den)
        return LaurentElem(self.spec, v, num, den)

    __radd__ = __add__

    def __neg__(self):
        k = self.spec.residue_gf
        return LaurentElem(self.spec, self.v, poly_neg(k, self.num), self.den,
                           normalize=False)

    def __sub__(self, other):
        return self + (-_coerce(self.spec, other))

    def __rsub__(self, other):
        return _coerce(self.spec, other) + (-self)

    def __mul__(self, other):
        other = _coerce(self.spec, other)
        if not self.num or not other.num:
            return self.spec.zero()
        k = self.spec.residue_gf
        return LaurentElem(self.spec, self.v + other.v,
                           poly_mul(k, self.num, other.num),
                           poly_mul(k, self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self.spec, other)
        if not other.num:
            raise ZeroDivisionError("division by zero field element")
        if not self.num:
            return self
        k = self.spec.residue_gf
        return LaurentElem(self.spec, self.v - other.v,
                           poly_mul(k, self.num, other.den),
                           poly_mul(k, self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(self.spec, other) / self

    def __eq__(self, other):
        if not isinstance(other, LaurentElem):
            if isinstance(other, int):
                other = _coerce(self.spec, other)
            else:
                return NotImplemented
        if self.spec != other.spec:
            return False
        if not self.num or not other.num:
            return self.num == other.num
        if self.v != other.v:
            return False
        k = self.spec.residue_gf
        return poly_mul(k, self.num, other.den) == poly_mul(k, other.num, self.den)

    __hash__ = None

    def to_str(self):
        if not self.num:
            return "0"
        k = self.spec.residue_gf
        num, den = self.num, self.den
        g = poly_gcd(k, num, den)
        if len(g) > 1:
            num, _ = poly_divmod(k, num, g)
            den, _ = poly_divmod(k, den, g)
            c = k.inv(den[0])
            num = poly_scale(k, num, c)
            den = poly_scale(k, den, c)
        if self.v >= 0:
            num = (0,) * self.v + num
        else:
            den = (0,) * (-self.v) + den
        ns, ds = _poly_str(num), _poly_str(den)
        if den == (1,):
            return ns
        return f"({ns})/({ds})"

    __str__ = to_str

    def __repr__(self):
        return f"LaurentElem({self.spec}, {self.to_str()})"

    def reduce(self, ring):
        if not self.num:
            return ring.zero
        if self.v < 0:
            raise NonIntegralError(f"{self} has valuation {self.v} < 0")
        n = ring.n
        if self.v >= n:
            return ring.zero
        k = self.spec.residue_gf
        inv = poly_series_inv(k, self.den, n)
        prod = poly_mul(k, self.num, inv)
        shifted = (0,) * self.v + prod
        return poly_trim(shifted[:n])


def _coerce(spec, x):
    if isinstance(x, (PadicElem, LaurentElem)):
        if x.spec != spec:
            raise TypeError("mixing elements of different fields")
        return x
    if isinstance(x, int):
        return spec.integer(x)
    if isinstance(x, Fraction) and spec.kind == MIXED:
        return _padic_from_fraction(spec, x)
    raise TypeError(f"cannot coerce {x!r} into {spec}")


def _poly_str(c):
    if not c:
        return "0"
    terms = []
    for i, x in enumerate(c):
        if not x:
            continue
        if i == 0:
            terms.append(str(x))
        elif i == 1:
            terms.append("t" if x == 1 else f"{x}*t")
        else:
            terms.append(f"t^{i}" if x == 1 else f"{x}*t^{i}")
    return "+".join(terms)


def parse_element(spec, text):
    """Parse the serialization produced by FieldElem.to_str()."""
    text = text.strip()
    if spec.kind == MIXED:
        try:
            return _padic_from_fraction(spec, Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldConfigError(f"bad rational literal {text!r}") from exc
    if "/" in text:
        ns, ds = text.split("/", 1)
    else:
        ns, ds = text, "1"
    num, nv = _parse_poly(spec, ns)
    den, dv = _parse_poly(spec, ds)
    if not den:
        raise FieldConfigError(f"zero denominator in {text!r}")
    if not num:
        return spec.zero()
    return LaurentElem(spec, nv - dv, num, den)


def _parse_poly(spec, text):
    k = spec.residue_gf
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    text = text.replace("-", "+-")
    coeffs = {}
    for term in text.split("+"):
        term = term.strip()
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:].strip()
        if "t" in term:
            cpart, _, epart = term.partition("t")
            cpart = cpart.rstrip("*").strip()
            c = int(cpart) if cpart else 1
            epart = epart.lstrip("^").strip()
            e = int(epart) if epart else 1
        else:
            c, e = int(term), 0
        code = c % k.q if c >= 0 else k.neg((-c) % k.q)
        if neg:
            code = k.neg(code)
        coeffs[e] = k.add(coeffs.get(e, 0), code)
    if not coeffs:
        return (), 0
    deg = max(coeffs)
    raw = poly_trim(tuple(coeffs.get(i, 0) for i in range(deg + 1)))
    v = poly_t_valuation(raw)
    if v is None:
        return (), 0
    return raw[v:], v


# ---------------------------------------------------------------------------
# residue rings O/pi^n


class ResidueRing:
    """O/pi^n with canonical representatives and exact ring arithmetic.

    Mixed characteristic: representatives are ints in [0, p^n).
    Equal characteristic: representatives are polynomials of degree < n
    (little-endian tuples of residue-field codes).
    """

    __slots__ = ("spec", "n", "size", "modulus", "zero", "one", "_elements",
                 "_section_cache")

    def __init__(self, spec, n):
        if n < 1:
            raise ValueError("residue level must be >= 1")
        self.spec = spec
        self.n = n
        self.size = spec.q ** n
        if spec.kind == MIXED:
            self.modulus = spec.p ** n
            self.zero = 0
            self.one = 1 % self.modulus
        else:
            self.modulus = None
            self.zero = ()
            self.one = (1,)
        self._elements = None
        self._section_cache = {}

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.spec.kind == MIXED:
            return (a + b) % self.modulus
        return poly_add(self.spec.residue_gf, a, b)

    def sub(self, a, b):
        if self.spec.kind == MIXED:
            return (a - b) % self.modulus
        return poly_sub(self.spec.residue_gf, a, b)

    def neg(self, a):
        if self.spec.kind == MIXED:
            return (-a) % self.modulus
        return poly_neg(self.spec.residue_gf, a)

    def mul(self, a, b):
        if self.spec.kind == MIXED:
            return (a * b) % self.modulus
        return poly_trim(poly_mul(self.spec.residue_gf, a, b)[:self.n])

    def inv(self, a):
        if self.valuation(a) != 0:
            raise ZeroDivisionError("inverse of a non-unit in O/pi^n")
        if self.spec.kind == MIXED:
            return pow(a, -1, self.modulus)
        return poly_trim(poly_series_inv(self.spec.residue_gf, a, self.n)[:self.n])

    def shift(self, a, k):
        """Multiply by pi^k (k >= 0)."""
        if self.spec.kind == MIXED:
            return (a * self.spec.p ** k) % self.modulus
        if not a:
            return a
        return poly_trim(((0,) * k + a)[:self.n])

    def valuation(self, a):
        """pi-adic valuation of the class, capped at n (n for the zero class)."""
        if self.spec.kind == MIXED:
            if a == 0:
                return self.n
            v = 0
            p = self.spec.p
            while a % p == 0:
                a //= p
                v += 1
            return v
        v = poly_t_valuation(a)
        return self.n if v is None else v

    def is_unit(self, a):
        return self.valuation(a) == 0

    # -- enumeration ---------------------------------------------------------

    def elements(self):
        if self._elements is None:
            if self.spec.kind == MIXED:
                self._elements = tuple(range(self.size))
            else:
                self._elements = tuple(all_polys(self.spec.residue_gf, self.n))
        return self._elements

    def pi_multiples(self, k):
        """All classes in pi^k * O/pi^n (the zero class alone once k >= n)."""
        if k <= 0:
            return self.elements()
        if k >= self.n:
            return (self.zero,)
        if self.spec.kind == MIXED:
            return tuple(range(0, self.modulus, self.spec.p ** k))
        return tuple((0,) * k + p if p else () for p in all_polys(self.spec.residue_gf, self.n - k))

    def element_at(self, index):
        """Deterministic index -> representative bijection (for seeded sampling)."""
        if self.spec.kind == MIXED:
            return index % self.size
        q = self.spec.q
        coeffs = []
        for _ in range(self.n):
            index, r = divmod(index, q)
            coeffs.append(r)
        return poly_trim(coeffs)

    def embed_residue_code(self, code):
        """Image in this ring of a residue-field element given by its code."""
        if self.spec.kind == MIXED:
            return code % self.modulus
        return (code,) if code else ()

    # -- section -------------------------------------------------------------

    def section(self, rep):
        """Canonical lift O/pi^n -> O (digit respectively truncation section)."""
        cached = self._section_cache.get(rep)
        if cached is None:
            if self.spec.kind == MIXED:
                cached = _padic_from_fraction(self.spec, Fraction(rep))
            else:
                v = poly_t_valuation(rep)
                if v is None:
                    cached = self.spec.zero()
                else:
                    cached = LaurentElem(self.spec, v, rep[v:], (1,), normalize=False)
            self._section_cache[rep] = cached
        return cached

    def to_str(self, rep):
        if self.spec.kind == MIXED:
            return str(rep)
        return _poly_str(rep)

    def __repr__(self):
        return f"ResidueRing({self.spec}, {self.n})"


@functools.lru_cache(maxsize=None)
def residue_ring(spec, n):
    return ResidueRing(spec, n)


def reduce_mod(x, n):
    """Class of x in O/pi^n; raises NonIntegralError if v(x) < 0."""
    return x.reduce(residue_ring(x.spec, n))


def section_lift(spec, n, rep):
    """Canonical section sigma: O/pi^n -> O."""
    return residue_ring(spec, n).section(rep)

"""Exact arithmetic in supercommutative Laurent rings.

Elements live in Q[x1^{+-1}, ..., xn^{+-1}] tensor Grassmann(X1, ..., Xm):
finitely many terms, each an integer exponent vector on the even variables
together with a squarefree ascending word of odd indices, with an exact
rational coefficient.  Odd generators anticommute and square to zero; all
Koszul signs are derived from the permutation parity that sorts an odd word.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import gmpy2

QQ = gmpy2.mpq

Expo = tuple  # integer exponent vector, length n
Word = tuple  # strictly ascending 0-based odd indices


class NotAUnitError(ArithmeticError):
    """Raised when inverting an element whose body is not a single monomial."""


class NotDivisibleError(ArithmeticError):
    """Raised when exact division has a nonzero remainder."""


class NonInvertibleImageError(ArithmeticError):
    """Raised when a negatively powered variable maps to a zero-body element."""


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _to_coeff(c):
    if isinstance(c, (int, Fraction)) or type(c) is type(QQ(0)):
        return QQ(c)
    if isinstance(c, str):
        return QQ(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def merge_words(u: Word, v: Word):
    """Concatenate two ascending odd words, returning (sign, sorted word).

    The sign is the parity of the merge permutation; a repeated index gives
    (0, None) because every odd generator squares to zero.
    """
    if not u:
        return 1, v
    if not v:
        return 1, u
    out = []
    sign = 1
    i = j = 0
    while i < len(u) and j < len(v):
        if u[i] == v[j]:
            return 0, None
        if u[i] < v[j]:
            out.append(u[i])
            i += 1
        else:
            # v[j] jumps over the remaining len(u) - i letters of u
            if (len(u) - i) % 2:
                sign = -sign
            out.append(v[j])
            j += 1
    out.extend(u[i:])
    out.extend(v[j:])
    return sign, tuple(out)


class SuperPolynomial:
    """Immutable supercommutative Laurent polynomial with exact coefficients."""

    __slots__ = ("n", "m", "terms", "_hash")

    def __init__(self, n: int, m: int, terms: Mapping | None = None):
        self.n = n
        self.m = m
        clean = {}
        if terms:
            for (ev, od), c in terms.items():
                c = _to_coeff(c)
                if c == 0:
                    continue
                ev = tuple(ev)
                od = tuple(od)
                if len(ev) != n:
                    raise ValueError("exponent vector length differs from arity")
                if any(od[i] >= od[i + 1] for i in range(len(od) - 1)):
                    raise ValueError("odd word must be strictly ascending")
                if od and (od[0] < 0 or od[-1] >= m):
                    raise ValueError("odd index out of range")
                clean[(ev, od)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        if name in ("n", "m"):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("SuperPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n, m):
        return cls(n, m)

    @classmethod
    def constant(cls, c, n, m):
        return cls(n, m, {((0,) * n, ()): _to_coeff(c)})

    @classmethod
    def one(cls, n, m):
        return cls.constant(1, n, m)

    @classmethod
    def x(cls, i, n, m):
        e = [0] * n
        e[i] = 1
        return cls(n, m, {(tuple(e), ()): QQ(1)})

    @classmethod
    def xi(cls, a, n, m):
        return cls(n, m, {((0,) * n, (a,)): QQ(1)})

    @classmethod
    def monomial(cls, coeff, even, odd, n, m):
        return cls(n, m, {(tuple(even), tuple(odd)): _to_coeff(coeff)})

    # -- basic structure ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def body(self):
        """Terms with empty odd word (the classical part)."""
        return SuperPolynomial(
            self.n, self.m, {k: c for k, c in self.terms.items() if not k[1]}
        )

    def soul(self):
        """Nilpotent complement of the body."""
        return SuperPolynomial(
            self.n, self.m, {k: c for k, c in self.terms.items() if k[1]}
        )

    def even_part(self):
        return SuperPolynomial(
            self.n, self.m, {k: c for k, c in self.terms.items() if len(k[1]) % 2 == 0}
        )

    def odd_part(self):
        return SuperPolynomial(
            self.n, self.m, {k: c for k, c in self.terms.items() if len(k[1]) % 2 == 1}
        )

    def is_grassmann_even(self):
        return all(len(k[1]) % 2 == 0 for k in self.terms)

    def is_grassmann_odd(self):
        return all(len(k[1]) % 2 == 1 for k in self.terms)

    def is_homogeneous(self):
        return self.is_grassmann_even() or self.is_grassmann_odd()

    def parity(self):
        """Grassmann parity 0 or 1; raises on inhomogeneous elements."""
        if self.is_grassmann_even():
            return 0
        if self.is_grassmann_odd():
            return 1
        raise ValueError("element is not parity homogeneous")

    def coefficient(self, even, odd):
        return self.terms.get((tuple(even), tuple(odd)), QQ(0))

    def constant_term(self):
        return self.coefficient((0,) * self.n, ())

    def grassmann_components(self):
        """Mapping odd word -> {exponent vector: coefficient}."""
        comps = {}
        for (ev, od), c in self.terms.items():
            comps.setdefault(od, {})[ev] = c
        return comps

    # -- ring operations ---------------------------------------------------

    def _check_arity(self, other):
        if self.n != other.n or self.m != other.m:
            raise ValueError(
                f"arity mismatch: ({self.n},{self.m}) vs ({other.n},{other.m})"
            )

    def _coerce(self, other):
        if isinstance(other, SuperPolynomial):
            self._check_arity(other)
            return other
        return SuperPolynomial.constant(other, self.n, self.m)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            if s is None:
                terms[k] = c
            else:
                s = s + c
                if s == 0:
                    del terms[k]
                else:
                    terms[k] = s
        out = SuperPolynomial.zero(self.n, self.m)
        object.__setattr__(out, "terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SuperPolynomial.zero(self.n, self.m)
        object.__setattr__(out, "terms", {k: -c for k, c in self.terms.items()})
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        # group by odd word so each Koszul sign is computed once per word pair
        left = {}
        for (e1, w1), c1 in self.terms.items():
            left.setdefault(w1, []).append((e1, c1))
        right = {}
        for (e2, w2), c2 in other.terms.items():
            right.setdefault(w2, []).append((e2, c2))
        terms = {}
        for w1, group1 in left.items():
            for w2, group2 in right.items():
                sign, w = merge_words(w1, w2)
                if sign == 0:
                    continue
                for e1, c1 in group1:
                    cc = sign * c1
                    for e2, c2 in group2:
                        k = (tuple(map(int.__add__, e1, e2)), w)
                        c = cc * c2
                        s = terms.get(k)
                        if s is None:
                            terms[k] = c
                        else:
                            s = s + c
                            if s == 0:
                                del terms[k]
                            else:
                                terms[k] = s
        out = SuperPolynomial.zero(self.n, self.m)
        object.__setattr__(out, "terms", terms)
        return out

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return invert(self) ** (-e)
        result = SuperPolynomial.one(self.n, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, expo):
        """Multiply by the even monomial x^expo."""
        expo = tuple(expo)
        terms = {
            (tuple(a + b for a, b in zip(ev, expo)), od): c
            for (ev, od), c in self.terms.items()
        }
        out = SuperPolynomial.zero(self.n, self.m)
        object.__setattr__(out, "terms", terms)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) or type(other) is type(QQ(0)):
            other = SuperPolynomial.constant(other, self.n, self.m)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.m, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"SuperPolynomial({render(self)!r})"

    def __str__(self):
        return render(self)

    # fraction-field conveniences

    def __truediv__(self, other):
        if not isinstance(other, (SuperPolynomial, SuperRational)):
            other = SuperPolynomial.constant(other, self.n, self.m)
        if isinstance(other, SuperRational):
            return SuperRational.from_poly(self) / other
        try:
            return exact_div(self, other)
        except NotDivisibleError:
            return SuperRational(self, other)


def generators(n, m):
    """Return ([x_0..x_{n-1}], [xi_0..xi_{m-1}]) for the (n, m) ring."""
    xs = [SuperPolynomial.x(i, n, m) for i in range(n)]
    xis = [SuperPolynomial.xi(a, n, m) for a in range(m)]
    return xs, xis


# ---------------------------------------------------------------------------
# inversion and exact division
# ---------------------------------------------------------------------------


def invert(p: SuperPolynomial) -> SuperPolynomial:
    """Invert a unit: single-monomial body plus nilpotent soul.

    q = c^{-1} x^{-a} sum_j (-u)^j with u = c^{-1} x^{-a} soul(p); the series
    stops as soon as a power of the nilpotent u vanishes.
    """
    body = p.body()
    if len(body.terms) != 1:
        raise NotAUnitError(
            "body must be a single monomial, got %d terms" % len(body.terms)
        )
    ((expo, _),) = body.terms.keys()
    c = body.terms[(expo, ())]
    inv0 = SuperPolynomial.monomial(1 / c, tuple(-e for e in expo), (), p.n, p.m)
    u = inv0 * p.soul()
    acc = SuperPolynomial.one(p.n, p.m)
    power = SuperPolynomial.one(p.n, p.m)
    for _ in range(p.m + 1):
        power = power * (-u)
        if power.is_zero():
            break
        acc = acc + power
    return inv0 * acc


def _leading(terms: dict):
    """Leading exponent under graded lex (sum first, then lex)."""
    return max(terms, key=lambda e: (sum(e), e))


def _div_even(num: dict, den: dict, n: int):
    """Exact division of even Laurent polynomials given as {expo: coeff}.

    Shifts both operands to the polynomial ring (zero minimum exponent per
    variable), then runs greedy leading-term division under graded lex.  For
    a single divisor this finds the quotient whenever one exists.  Returns
    the quotient dict or None.
    """
    if not num:
        return {}
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")

    def min_expo(terms):
        its = iter(terms)
        first = next(its)
        lo = list(first)
        for e in its:
            for i in range(n):
                if e[i] < lo[i]:
                    lo[i] = e[i]
        return lo

    lo_n = min_expo(num)
    lo_d = min_expo(den)
    num = {tuple(a - b for a, b in zip(e, lo_n)): c for e, c in num.items()}
    den = {tuple(a - b for a, b in zip(e, lo_d)): c for e, c in den.items()}

    lt_d = _leading(den)
    cd = den[lt_d]
    rem = dict(num)
    quo = {}
    while rem:
        lt_r = _leading(rem)
        diff = tuple(a - b for a, b in zip(lt_r, lt_d))
        if any(d < 0 for d in diff):
            return None
        c = rem[lt_r] / cd
        quo[diff] = c
        for e, ce in den.items():
            k = tuple(a + b for a, b in zip(e, diff))
            s = rem.get(k, QQ(0)) - c * ce
            if s == 0:
                rem.pop(k, None)
            else:
                rem[k] = s
    shift = tuple(a - b for a, b in zip(lo_n, lo_d))
    return {tuple(a + b for a, b in zip(e, shift)): c for e, c in quo.items()}


def exact_div(a: SuperPolynomial, b: SuperPolynomial) -> SuperPolynomial:
    """Return q with b*q = a, raising NotDivisibleError if no such q exists.

    Solves grade by grade in the Grassmann degree: the body of b is a
    nonzerodivisor, so the quotient is unique and each Grassmann component
    reduces to one exact division of even Laurent polynomials.
    """
    a._check_arity(b)
    b0 = b.body()
    if b0.is_zero():
        raise ZeroDivisionError("divisor has zero body")
    n, m = a.n, a.m
    b0_terms = {ev: c for (ev, _), c in b0.terms.items()}

    # residual starts at a; peel off one Grassmann degree at a time
    residual = a
    q_terms = {}
    for d in range(m + 1):
        level = {}
        for (ev, od), c in residual.terms.items():
            if len(od) == d:
                level.setdefault(od, {})[ev] = c
        if not level:
            continue
        layer = {}
        for od, comp in level.items():
            quo = _div_even(comp, b0_terms, n)
            if quo is None:
                raise NotDivisibleError(f"component {od} not divisible by the body")
            for ev, c in quo.items():
                layer[(ev, od)] = c
        if layer:
            q_layer = SuperPolynomial(n, m, layer)
            q_terms.update(q_layer.terms)
            residual = residual - q_layer * b
        # degree-d part of residual is now zero by construction
    if not residual.is_zero():
        raise NotDivisibleError("nonzero remainder")
    q = SuperPolynomial.zero(n, m)
    object.__setattr__(q, "terms", q_terms)
    return q


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def derivative(p: SuperPolynomial, kind: str, index: int) -> SuperPolynomial:
    """Partial derivative; kind is "even" or "odd" (left derivative)."""
    terms = {}
    if kind == "even":
        for (ev, od), c in p.terms.items():
            e = ev[index]
            if e == 0:
                continue
            k = (ev[:index] + (e - 1,) + ev[index + 1 :], od)
            terms[k] = terms.get(k, QQ(0)) + c * e
    elif kind == "odd":
        for (ev, od), c in p.terms.items():
            if index not in od:
                continue
            pos = od.index(index)
            sign = -1 if pos % 2 else 1
            k = (ev, od[:pos] + od[pos + 1 :])
            terms[k] = terms.get(k, QQ(0)) + sign * c
    else:
        raise ValueError("kind must be 'even' or 'odd'")
    return SuperPolynomial(p.n, p.m, {k: c for k, c in terms.items() if c != 0})


# ---------------------------------------------------------------------------
# fraction field
# ---------------------------------------------------------------------------


class SuperRational:
    """Fraction num/den with Grassmann-even denominator of nonzero body.

    No canonical reduced form is kept; equality and zero tests go through
    cross multiplication, which stays exact and avoids any gcd machinery.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SuperPolynomial, den: SuperPolynomial):
        num._check_arity(den)
        if den.body().is_zero():
            raise ZeroDivisionError("denominator has zero body")
        if not den.is_grassmann_even():
            raise ValueError("denominator must be Grassmann even")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("SuperRational is immutable")

    @classmethod
    def from_poly(cls, p: SuperPolynomial):
        return cls(p, SuperPolynomial.one(p.n, p.m))

    @property
    def n(self):
        return self.num.n

    @property
    def m(self):
        return self.num.m

    def _coerce(self, other):
        if isinstance(other, SuperRational):
            return other
        if isinstance(other, SuperPolynomial):
            return SuperRational.from_poly(other)
        return SuperRational.from_poly(
            SuperPolynomial.constant(other, self.num.n, self.num.m)
        )

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return SuperRational(self.num + other.num, self.den)
        return SuperRational(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return SuperRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return SuperRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.num.body().is_zero():
            raise NonInvertibleImageError("cannot invert: numerator body is zero")
        num, den = self.den, self.num
        if not den.is_grassmann_even():
            # odd part of an even element's inverse cannot appear; guard anyway
            raise ValueError("reciprocal denominator must be Grassmann even")
        return SuperRational(num, den)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return self.reciprocal() ** (-e)
        out = SuperRational.from_poly(SuperPolynomial.one(self.num.n, self.num.m))
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SuperPolynomial)) or type(other) is type(
            QQ(0)
        ):
            other = self._coerce(other)
        if not isinstance(other, SuperRational):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("SuperRational is unhashable (no canonical form)")

    def simplify(self):
        """Clear the denominator when the division happens to be exact."""
        try:
            return SuperRational.from_poly(exact_div(self.num, self.den))
        except NotDivisibleError:
            return self

    def as_polynomial(self):
        """Exact Laurent form of this fraction; NotDivisibleError otherwise."""
        return exact_div(self.num, self.den)

    def __repr__(self):
        return f"SuperRational({render_rational(self)!r})"

    def __str__(self):
        return render_rational(self)


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------


def substitute(
    p: SuperPolynomial,
    even: Mapping[int, object] | None = None,
    odd: Mapping[int, object] | None = None,
) -> SuperRational:
    """Apply the parity-preserving ring map sending listed variables to images.

    Images may be SuperPolynomial or SuperRational over the same (n, m) ring;
    unassigned variables map to themselves.  Negative powers invert the image
    in the fraction field, which requires a nonzero body.
    """
    n, m = p.n, p.m
    one = SuperRational.from_poly(SuperPolynomial.one(n, m))

    def as_rat(v):
        if isinstance(v, SuperRational):
            return v
        if isinstance(v, SuperPolynomial):
            return SuperRational.from_poly(v)
        return SuperRational.from_poly(SuperPolynomial.constant(v, n, m))

    ev_img = {}
    for i, v in (even or {}).items():
        r = as_rat(v)
        if not (r.num.is_grassmann_even() and r.den.is_grassmann_even()):
            raise ValueError(f"image of even variable {i} must be Grassmann even")
        ev_img[i] = r
    od_img = {}
    for a, v in (odd or {}).items():
        r = as_rat(v)
        if not (r.num.is_grassmann_odd() or r.num.is_zero()):
            raise ValueError(f"image of odd variable {a} must be Grassmann odd")
        od_img[a] = r

    # power cache for the even images actually used
    total = SuperRational(
        SuperPolynomial.zero(n, m), SuperPolynomial.one(n, m)
    )
    for (ev, od), c in p.terms.items():
        term = SuperRational.from_poly(SuperPolynomial.constant(c, n, m))
        for i, e in enumerate(ev):
            if e == 0:
                continue
            img = ev_img.get(i)
            if img is None:
                term = term * SuperRational.from_poly(
                    SuperPolynomial.monomial(1, tuple(e if j == i else 0 for j in range(n)), (), n, m)
                )
                continue
            if e < 0 and img.num.body().is_zero():
                raise NonInvertibleImageError(
                    f"negative power of variable {i} with zero-body image"
                )
            term = term * img**e
        for a in od:
            img = od_img.get(a)
            if img is None:
                img = SuperRational.from_poly(SuperPolynomial.xi(a, n, m))
            term = term * img
        total = total + term
    return total


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def even_name(i, n):
    return "x" if n == 1 else f"x{i + 1}"


def odd_name(a):
    return f"X{a + 1}"


def _term_sort_key(item):
    (ev, od), _ = item
    return (len(od), od, sum(ev), tuple(-e for e in ev))


def _render_poly_plain(p: SuperPolynomial) -> str:
    """Sum-of-terms rendering; exponents may be negative."""
    if p.is_zero():
        return "0"
    parts = []
    for (ev, od), c in sorted(p.terms.items(), key=_term_sort_key):
        factors = []
        for i, e in enumerate(ev):
            if e == 0:
                continue
            name = even_name(i, p.n)
            factors.append(name if e == 1 else f"{name}^{e}")
        factors.extend(odd_name(a) for a in od)
        if not factors:
            body = str(c)
        else:
            mono = "*".join(factors)
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
        parts.append(body)
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out


def render(p: SuperPolynomial) -> str:
    """Canonical text form: numerator over a monomial denominator.

    Negative exponents are cleared into a single even monomial denominator,
    matching how Laurent cluster variables are usually written.
    """
    if p.is_zero():
        return "0"
    lo = [0] * p.n
    for (ev, _), _c in p.terms.items():
        for i, e in enumerate(ev):
            if e < lo[i]:
                lo[i] = e
    if all(e == 0 for e in lo):
        return _render_poly_plain(p)
    num = p.shift(tuple(-e for e in lo))
    den_factors = []
    for i, e in enumerate(lo):
        if e < 0:
            name = even_name(i, p.n)
            den_factors.append(name if e == -1 else f"{name}^{-e}")
    den = "*".join(den_factors)
    num_text = _render_poly_plain(num)
    if len(num.terms) > 1 or num_text.startswith("-"):
        num_text = f"({num_text})"
    if len(den_factors) > 1:
        den = f"({den})"
    return f"{num_text}/{den}"


def render_rational(r: SuperRational) -> str:
    if r.den == SuperPolynomial.one(r.num.n, r.num.m):
        return render(r.num)
    num = _render_poly_plain(r.num)
    den = _render_poly_plain(r.den)
    return f"({num})/({den})"


class _Parser:
    """Recursive descent parser for the canonical polynomial grammar.

    expr   := ['+'|'-'] term { ('+'|'-') term }
    term   := factor { ('*'|'/') factor }
    factor := base [ '^' signed_int ]
    base   := integer | variable | '(' expr ')'

    Division is by units of the Laurent ring (single-monomial body), which
    covers monomial denominators and nilpotent corrections like 1+X1*X2.
    """

    def __init__(self, text, n, m):
        self.text = text
        self.pos = 0
        self.n = n
        self.m = m

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("empty input")
        p = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return p

    def expr(self):
        neg = False
        if self.take("+"):
            pass
        elif self.take("-"):
            neg = True
        p = self.term()
        if neg:
            p = -p
        while True:
            if self.take("+"):
                p = p + self.term()
            elif self.take("-"):
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            if self.take("*"):
                p = p * self.factor()
            elif self.take("/"):
                q = self.factor()
                try:
                    p = p * invert(q)
                except NotAUnitError:
                    self.error("division by a non-unit")
            else:
                return p

    def factor(self):
        p = self.base()
        if self.take("^"):
            e = self.signed_int()
            if e < 0:
                try:
                    p = invert(p) ** (-e)
                except NotAUnitError:
                    self.error("negative power of a non-unit")
            else:
                p = p**e
        return p

    def signed_int(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.error("expected integer")
        return int(self.text[start : self.pos])

    def base(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return p
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return SuperPolynomial.constant(
                int(self.text[start : self.pos]), self.n, self.m
            )
        if ch == "x":
            self.pos += 1
            idx = self.opt_index()
            if idx is None:
                if self.n != 1:
                    self.error("bare 'x' only valid with one even variable")
                idx = 1
            if not (1 <= idx <= self.n):
                self.error(f"even index {idx} out of range")
            return SuperPolynomial.x(idx - 1, self.n, self.m)
        if ch == "X":
            self.pos += 1
            idx = self.opt_index()
            if idx is None:
                self.error("odd variable needs an index, e.g. X1")
            if not (1 <= idx <= self.m):
                self.error(f"odd index {idx} out of range")
            return SuperPolynomial.xi(idx - 1, self.n, self.m)
        self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")

    def opt_index(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return None
        return int(self.text[start : self.pos])


def parse(text: str, n: int, m: int) -> SuperPolynomial:
    """Parse the canonical text form into a polynomial over the (n, m) ring."""
    return _Parser(text, n, m).parse()


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def poly_to_json(p: SuperPolynomial) -> dict:
    return {
        "n": p.n,
        "m": p.m,
        "terms": [
            {"coef": str(c), "even": list(ev), "odd": list(od)}
            for (ev, od), c in sorted(p.terms.items(), key=_term_sort_key)
        ],
    }


def poly_from_json(data: Mapping) -> SuperPolynomial:
    n, m = int(data["n"]), int(data["m"])
    terms = {}
    for t in data["terms"]:
        key = (tuple(int(e) for e in t["even"]), tuple(int(a) for a in t["odd"]))
        terms[key] = terms.get(key, QQ(0)) + QQ(t["coef"])
    return SuperPolynomial(n, m, terms)

"""Graded exterior calculus over the super-rational fraction field.

Basis one-forms are dx_i (total parity odd) and dX_a (total parity even):
total parity is cohomological degree plus Grassmann parity mod 2, two
homogeneous factors commute up to (-1)^{parity * parity}, and d is an odd
derivation.  A wedge word is kept canonical as (ascending distinct dx block,
ascending dX block with repeats allowed); coefficients sit on the left.

This module mechanically verifies the mutation invariance of the canonical
presymplectic 2-form attached to an extended quiver.
"""

from __future__ import annotations

from .quiver import ExtendedQuiver, MutationForbiddenError, _odd_factor_unchecked
from .superring import (
    SuperPolynomial,
    SuperRational,
    substitute,
)


class ArityMismatchError(ValueError):
    pass


def _word_parity(word):
    dxs, _ = word
    return len(dxs) % 2


def _sort_signed(indices):
    """Sort an odd-parity letter block, tracking sign; repeats kill the term."""
    arr = list(indices)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(arr)):
        if arr[i - 1] == arr[i]:
            return 0, None
    return sign, tuple(arr)


def _merge_word(w1, w2):
    """Concatenate two canonical wedge words, returning (sign, word)."""
    dx1, dxi1 = w1
    dx2, dxi2 = w2
    # move the dx block of w2 left across the dX block of w1: dX letters are
    # even, so no sign; then sort the combined dx block (odd letters).
    sign, dx = _sort_signed(dx1 + dx2)
    if sign == 0:
        return 0, None
    dxi = tuple(sorted(dxi1 + dxi2))
    return sign, (dx, dxi)


class DifferentialForm:
    """Finite sum of terms coefficient * wedge word, coefficients on the left."""

    __slots__ = ("n", "m", "terms")

    def __init__(self, n, m, terms=None):
        self.n = n
        self.m = m
        clean = {}
        if terms:
            for w, c in terms.items():
                if isinstance(c, SuperPolynomial):
                    c = SuperRational.from_poly(c)
                if c.is_zero():
                    continue
                clean[w] = c
        self.terms = clean

    @classmethod
    def zero(cls, n, m):
        return cls(n, m)

    @classmethod
    def from_scalar(cls, c):
        return cls(c.n, c.m, {((), ()): c})

    def _check(self, other):
        if self.n != other.n or self.m != other.m:
            raise ArityMismatchError("forms live over different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            if w in terms:
                s = terms[w] + c
                if s.is_zero():
                    del terms[w]
                else:
                    terms[w] = s
            else:
                terms[w] = c
        out = DifferentialForm(self.n, self.m)
        out.terms = terms
        return out

    def __neg__(self):
        out = DifferentialForm(self.n, self.m)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Left multiplication by a scalar from the coefficient field."""
        if isinstance(c, SuperPolynomial):
            c = SuperRational.from_poly(c)
        out = DifferentialForm(self.n, self.m)
        out.terms = {}
        for w, cw in self.terms.items():
            s = c * cw
            if not s.is_zero():
                out.terms[w] = s
        return out

    def wedge(self, other):
        self._check(other)
        result = {}
        for w1, c1 in self.terms.items():
            p1 = _word_parity(w1)
            for w2, c2 in other.terms.items():
                sign, w = _merge_word(w1, w2)
                if sign == 0:
                    continue
                # move c2 left across w1; only its Grassmann-odd part costs a sign
                c2e = SuperRational(c2.num.even_part(), c2.den)
                c2o = SuperRational(c2.num.odd_part(), c2.den)
                coeff = c1 * c2e
                if not c2o.is_zero():
                    coeff = coeff + (-1) ** p1 * (c1 * c2o)
                coeff = sign * coeff
                if w in result:
                    s = result[w] + coeff
                    if s.is_zero():
                        result.pop(w)
                    else:
                        result[w] = s
                elif not coeff.is_zero():
                    result[w] = coeff
        out = DifferentialForm(self.n, self.m)
        out.terms = result
        return out

    def is_zero(self):
        return all(c.is_zero() for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"DifferentialForm({render_form(self)!r})"

    def __str__(self):
        return render_form(self)


# ---------------------------------------------------------------------------
# exterior derivative
# ---------------------------------------------------------------------------


def d_poly(p: SuperPolynomial) -> DifferentialForm:
    """d on a polynomial, termwise on monomials.

    A monomial c x^a X_w contributes (-1)^{|w|} c a_i x^{a-e_i} X_w dx_i for
    every even variable and the left derivative times dX_a for every odd one;
    the dx sign is the cost of writing the Grassmann coefficient on the left.
    """
    n, m = p.n, p.m
    terms = {}

    def add(word, coeff_poly):
        key = word
        cur = terms.get(key)
        val = SuperRational.from_poly(coeff_poly)
        if cur is None:
            terms[key] = val
        else:
            terms[key] = cur + val

    for (ev, od), c in p.terms.items():
        sign_dx = -1 if len(od) % 2 else 1
        for i, e in enumerate(ev):
            if e == 0:
                continue
            coeff = SuperPolynomial(
                n, m, {(ev[:i] + (e - 1,) + ev[i + 1 :], od): c * e * sign_dx}
            )
            add(((i,), ()), coeff)
        for pos, a in enumerate(od):
            sgn = -1 if pos % 2 else 1
            coeff = SuperPolynomial(n, m, {(ev, od[:pos] + od[pos + 1 :]): c * sgn})
            add(((), (a,)), coeff)
    out = DifferentialForm(n, m)
    out.terms = {w: c for w, c in terms.items() if not c.is_zero()}
    return out


def d(f) -> DifferentialForm:
    """Exterior derivative of a scalar (polynomial or fraction)."""
    if isinstance(f, SuperPolynomial):
        return d_poly(f)
    if not isinstance(f, SuperRational):
        raise TypeError("d expects a SuperPolynomial or SuperRational")
    p, q = f.num, f.den
    inv_q = SuperRational(SuperPolynomial.one(f.n, f.m), q)
    dq = d_poly(q)
    out = d_poly(p).scale(inv_q)
    p_even, p_odd = p.even_part(), p.odd_part()
    inv_q2 = SuperRational(SuperPolynomial.one(f.n, f.m), q * q)
    if not p_even.is_zero():
        out = out - dq.scale(SuperRational(p_even, SuperPolynomial.one(f.n, f.m)) * inv_q2)
    if not p_odd.is_zero():
        out = out + dq.scale(SuperRational(p_odd, SuperPolynomial.one(f.n, f.m)) * inv_q2)
    return out


def wedge(*forms):
    out = forms[0]
    for g in forms[1:]:
        out = out.wedge(g)
    return out


def one_form_dx(i, n, m):
    out = DifferentialForm(n, m)
    out.terms = {(((i,), ())): SuperRational.from_poly(SuperPolynomial.one(n, m))}
    return out


def one_form_dxi(a, n, m):
    out = DifferentialForm(n, m)
    out.terms = {(((), (a,))): SuperRational.from_poly(SuperPolynomial.one(n, m))}
    return out


# ---------------------------------------------------------------------------
# the presymplectic form of an extended quiver
# ---------------------------------------------------------------------------


def omega_of(q: ExtendedQuiver, *, strict=True) -> DifferentialForm:
    """sum B[i][j] dx_i^dx_j/(x_i x_j) + sum N_k[i][j] d(X_i X_j)^dx_k/x_k."""
    if strict:
        violations = q.validate()
        if violations:
            from .quiver import ConditionCViolatedError

            raise ConditionCViolatedError("; ".join(violations))
    n, m = q.n, q.m
    one = SuperPolynomial.one(n, m)
    out = DifferentialForm.zero(n, m)
    for i in range(n):
        for j in range(i + 1, n):
            v = q.B[i][j]
            if v == 0:
                continue
            coeff = SuperRational(
                SuperPolynomial.constant(v, n, m),
                SuperPolynomial.x(i, n, m) * SuperPolynomial.x(j, n, m),
            )
            term = DifferentialForm(n, m)
            term.terms = {(((i, j), ())): coeff}
            out = out + term
    for k in range(n):
        xk = SuperPolynomial.x(k, n, m)
        for i in range(m):
            for j in range(m):
                v = q.N[k][i][j]
                if v <= 0:
                    continue
                # d(X_i X_j) ^ dx_k = (X_j dX_i - X_i dX_j) ^ dx_k
                ci = SuperRational(v * SuperPolynomial.xi(j, n, m), xk)
                cj = SuperRational(-v * SuperPolynomial.xi(i, n, m), xk)
                term = DifferentialForm(n, m)
                term.terms = {(((k,), (i,))): ci, (((k,), (j,))): cj}
                out = out + term
    return out


def pullback(form: DifferentialForm, even=None, odd=None) -> DifferentialForm:
    """Substitute coefficients and replace each basis letter dv by d(image v)."""
    n, m = form.n, form.m
    even = dict(even or {})
    odd = dict(odd or {})

    d_even = {}
    for i, img in even.items():
        if isinstance(img, SuperPolynomial):
            img = SuperRational.from_poly(img)
        even[i] = img
        d_even[i] = d(img)
    d_odd = {}
    for a, img in odd.items():
        if isinstance(img, SuperPolynomial):
            img = SuperRational.from_poly(img)
        odd[a] = img
        d_odd[a] = d(img)

    out = DifferentialForm.zero(n, m)
    for (dxs, dxis), c in form.terms.items():
        imgc_num = substitute(c.num, even=even, odd=odd)
        imgc_den = substitute(c.den, even=even, odd=odd)
        imgc = imgc_num / imgc_den
        piece = DifferentialForm.from_scalar(imgc)
        for i in dxs:
            piece = piece.wedge(d_even.get(i) or one_form_dx(i, n, m))
        for a in dxis:
            piece = piece.wedge(d_odd.get(a) or one_form_dxi(a, n, m))
        out = out + piece
    return out


def mutation_substitution(q: ExtendedQuiver, k: int):
    """The coordinate change of mutation at k, with slot k reread as x_k'.

    x_k maps to (outgoing monomial + odd term * incoming monomial) / x_k'.
    """
    n, m = q.n, q.m
    out_mono = SuperPolynomial.one(n, m)
    for j, mult in q.outgoing(k):
        out_mono = out_mono * SuperPolynomial.x(j, n, m) ** mult
    in_mono = SuperPolynomial.one(n, m)
    for i, mult in q.incoming(k):
        in_mono = in_mono * SuperPolynomial.x(i, n, m) ** mult
    numerator = out_mono + _odd_factor_unchecked(q, k) * in_mono
    return {k: SuperRational(numerator, SuperPolynomial.x(k, n, m))}


def invariance_defect(q: ExtendedQuiver, k: int) -> DifferentialForm:
    """Pullback of omega under the exchange substitution minus omega of mu_k(q)."""
    omega = omega_of(q, strict=False)
    pulled = pullback(omega, even=mutation_substitution(q, k))
    omega_prime = omega_of(q.mutate(k), strict=False)
    return pulled - omega_prime


def check_invariance(q: ExtendedQuiver, k: int, *, require_allowed=True) -> bool:
    """Theorem-level check: omega is preserved by the mutation at k."""
    if require_allowed and not q.is_allowed(k):
        raise MutationForbiddenError(f"mutation at {k} is not allowed")
    return invariance_defect(q, k).is_zero()


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_form(form: DifferentialForm) -> str:
    from .superring import render_rational

    if not form.terms:
        return "0"
    parts = []
    for (dxs, dxis), c in sorted(form.terms.items()):
        letters = [f"dx{i + 1}" if form.n > 1 else "dx" for i in dxs]
        letters += [f"dX{a + 1}" for a in dxis]
        word = "^".join(letters) if letters else "1"
        parts.append(f"({render_rational(c)})*{word}")
    return " + ".join(parts)


def form_to_json(form: DifferentialForm) -> dict:
    from .superring import poly_to_json

    return {
        "n": form.n,
        "m": form.m,
        "terms": [
            {
                "dx": list(dxs),
                "dX": list(dxis),
                "num": poly_to_json(c.num),
                "den": poly_to_json(c.den),
            }
            for (dxs, dxis), c in sorted(form.terms.items())
        ],
    }

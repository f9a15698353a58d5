"""Graded multivariate polynomial arithmetic over Z and Z/2.

Each variable carries cohomological degree 2, so a monomial with exponent
sum e sits in degree 2e; every degree argument in the public interface is a
cohomological (even) degree. Terms map exponent tuples to nonzero
coefficients; the zero polynomial has no terms.
"""

from __future__ import annotations

import re

from .errors import DimensionMismatch, GkmError
from .intlinalg import IntMatrix


def monomials(k, degree):
    """Exponent tuples of cohomological degree `degree` in k variables,
    in descending lexicographic order (graded-lex within one degree)."""
    if degree < 0 or degree % 2:
        return []
    total = degree // 2

    def gen(nvars, s):
        if nvars == 1:
            yield (s,)
            return
        for first in range(s, -1, -1):
            for rest in gen(nvars - 1, s - first):
                yield (first,) + rest

    if k == 0:
        return [()] if total == 0 else []
    return list(gen(k, total))


def _term_sort_key(exps):
    # ascending total degree, then descending lex inside a degree
    return (sum(exps), tuple(-e for e in exps))


class IntPolynomial:
    """Sparse integer polynomial in k commuting variables."""

    __slots__ = ("k", "terms")

    def __init__(self, k, terms=None):
        self.k = k
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != k or any(e < 0 for e in exps):
                raise ValueError("bad exponent tuple %r for %d variables" % (exps, k))
            c = int(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def constant(cls, k, c):
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k, i):
        exps = [0] * k
        exps[i] = 1
        return cls(k, {tuple(exps): 1})

    @classmethod
    def linear_form(cls, coeffs):
        """Sum c_i * Y_i from an integer vector."""
        coeffs = list(coeffs)
        k = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                exps = [0] * k
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls(k, terms)

    def _check(self, other):
        if self.k != other.k:
            raise DimensionMismatch(
                "polynomials in %d and %d variables" % (self.k, other.k)
            )

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.k, other)
        return (
            isinstance(other, IntPolynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.k, other)
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return IntPolynomial(self.k, terms)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.k, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(self.k, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return IntPolynomial(self.k, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = IntPolynomial.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def degrees(self):
        """Sorted cohomological degrees with a nonzero part."""
        return sorted({2 * sum(e) for e in self.terms})

    def degree(self):
        """Top cohomological degree, or None for the zero polynomial."""
        ds = self.degrees()
        return ds[-1] if ds else None

    def is_homogeneous(self, degree=None):
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds == [] or ds == [degree]

    def homogeneous_component(self, degree):
        if degree % 2:
            return IntPolynomial.zero(self.k)
        s = degree // 2
        return IntPolynomial(
            self.k, {e: c for e, c in self.terms.items() if sum(e) == s}
        )

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def linear_substitute(self, B: IntMatrix):
        """Replace Y_j by sum_i B[i][j]*Y_i (a ring homomorphism)."""
        if B.rows != self.k or B.cols != self.k:
            raise DimensionMismatch("substitution matrix must be %dx%d" % (self.k, self.k))
        images = [
            IntPolynomial.linear_form(B.column(j)) for j in range(self.k)
        ]
        return self.substitute(images)

    def substitute(self, images):
        """Substitute images[i] for variable i; images live in any common
        variable count."""
        images = list(images)
        if len(images) != self.k:
            raise DimensionMismatch("need %d images, got %d" % (self.k, len(images)))
        if not images:
            kk = 0
        else:
            kk = images[0].k
            if any(p.k != kk for p in images):
                raise DimensionMismatch("substitution images disagree on variables")
        out = IntPolynomial.zero(kk)
        for exps, c in self.terms.items():
            term = IntPolynomial.constant(kk, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * images[i] ** e
            out = out + term
        return out

    def mod2(self):
        return Mod2Polynomial(
            self.k, {e for e, c in self.terms.items() if c % 2}
        )

    def render(self, names=None):
        return render_terms(self.k, self.terms, names)

    def __repr__(self):
        return "IntPolynomial(%r)" % self.render()


class Mod2Polynomial:
    """Polynomial with Z/2 coefficients; terms is the set of monomials
    with coefficient 1."""

    __slots__ = ("k", "terms")

    def __init__(self, k, terms=None):
        self.k = k
        self.terms = frozenset(tuple(e) for e in (terms or ()))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Mod2Polynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, self.terms))

    def __add__(self, other):
        if self.k != other.k:
            raise DimensionMismatch("mod-2 polynomials in different variables")
        return Mod2Polynomial(self.k, self.terms ^ other.terms)

    def __mul__(self, other):
        if self.k != other.k:
            raise DimensionMismatch("mod-2 polynomials in different variables")
        out = set()
        for e1 in self.terms:
            for e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                if e in out:
                    out.remove(e)
                else:
                    out.add(e)
        return Mod2Polynomial(self.k, out)

    def homogeneous_component(self, degree):
        if degree % 2:
            return Mod2Polynomial(self.k)
        s = degree // 2
        return Mod2Polynomial(self.k, {e for e in self.terms if sum(e) == s})

    def degrees(self):
        return sorted({2 * sum(e) for e in self.terms})

    def render(self, names=None):
        return render_terms(self.k, {e: 1 for e in self.terms}, names)

    def __repr__(self):
        return "Mod2Polynomial(%r)" % self.render()


def mod2_reduce(p: IntPolynomial) -> Mod2Polynomial:
    """Coefficientwise reduction Z -> Z/2 (a ring homomorphism)."""
    return p.mod2()


def divide_by_linear(p, ell):
    """Exact quotient p / ell over Z[Y1..Yk], or None.

    ell must be a nonzero homogeneous linear form (cohomological degree 2).
    Division proceeds by cancelling leading terms in a lex order that puts
    ell's pivot variable first; any step where the leading coefficient is
    not divisible proves inexactness.
    """
    if ell.is_zero() or not ell.is_homogeneous(2):
        raise ValueError("divisor must be a nonzero linear form")
    pivot = None
    pivot_coeff = 0
    for exps, c in ell.terms.items():
        j = exps.index(1)
        if pivot is None or j < pivot:
            pivot, pivot_coeff = j, c
    order = [pivot] + [j for j in range(p.k) if j != pivot]

    def key(exps):
        return tuple(exps[j] for j in order)

    quotient = {}
    rem = dict(p.terms)
    while rem:
        lead = max(rem, key=key)
        c = rem[lead]
        if lead[pivot] == 0 or c % pivot_coeff:
            return None
        qexps = list(lead)
        qexps[pivot] -= 1
        qexps = tuple(qexps)
        qc = c // pivot_coeff
        quotient[qexps] = quotient.get(qexps, 0) + qc
        for exps, cc in ell.terms.items():
            e = tuple(a + b for a, b in zip(qexps, exps))
            nv = rem.get(e, 0) - qc * cc
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
    return IntPolynomial(p.k, quotient)


def default_names(k, prefix="Y"):
    return ["%s%d" % (prefix, i + 1) for i in range(k)]


def render_terms(k, terms, names=None):
    """Canonical text form: terms by ascending degree, lex-descending
    within a degree, e.g. '4*X1 + 2*X2' or '-6*X1^2*X2'."""
    if names is None:
        names = default_names(k)
    if not terms:
        return "0"
    parts = []
    for exps in sorted(terms, key=_term_sort_key):
        c = terms[exps]
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|\-|\(|\))")


class PolynomialSyntaxError(GkmError, ValueError):
    pass


def parse_polynomial(text, names):
    """Parse the canonical rendering syntax back into an IntPolynomial.

    Supports integers, named variables, +, -, *, ^ and parentheses.
    """
    names = list(names)
    k = len(names)
    index = {n: i for i, n in enumerate(names)}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolynomialSyntaxError(
                    "unexpected character %r at position %d" % (text[pos], pos)
                )
            break
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)  # sentinel
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def take():
        t = tokens[state["i"]]
        state["i"] += 1
        return t

    def parse_expr():
        neg = False
        while peek() in ("+", "-"):
            if take() == "-":
                neg = not neg
        out = parse_term()
        if neg:
            out = -out
        while peek() in ("+", "-"):
            op = take()
            t = parse_term()
            out = out + (-t if op == "-" else t)
        return out

    def parse_term():
        out = parse_factor()
        while peek() == "*":
            take()
            out = out * parse_factor()
        return out

    def parse_factor():
        base = parse_atom()
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise PolynomialSyntaxError("exponent must be a nonnegative integer")
            return base ** int(e)
        return base

    def parse_atom():
        t = take()
        if t is None:
            raise PolynomialSyntaxError("unexpected end of expression")
        if t == "(":
            out = parse_expr()
            if take() != ")":
                raise PolynomialSyntaxError("missing closing parenthesis")
            return out
        if t == "-":
            return -parse_atom()
        if t.isdigit():
            return IntPolynomial.constant(k, int(t))
        if t in index:
            return IntPolynomial.variable(k, index[t])
        raise PolynomialSyntaxError("unknown symbol %r" % t)

    out = parse_expr()
    if peek() is not None:
        raise PolynomialSyntaxError("trailing input after expression")
    return out

"""Sparse multivariate polynomials over Q with a weighted grading.

Monomials are exponent tuples.  Coefficients are ``fractions.Fraction``.
The only monomial order is graded reverse lexicographic (weighted degree
first, ties broken revlex with the last variable cheapest).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exp = Tuple[int, ...]

# exponents are stored as Python ints; this bound keeps them "machine width"
MAX_EXPONENT = 2**31 - 1


class PolynomialError(ValueError):
    pass


class PolynomialSyntaxError(PolynomialError):
    """Raised by :func:`parse_polynomial`; ``offset`` is the byte offset."""

    def __init__(self, message, offset):
        super().__init__("%s (at offset %d)" % (message, offset))
        self.offset = offset


class UnknownVariableError(PolynomialSyntaxError):
    pass


class NotHomogeneousError(PolynomialError):
    def __init__(self, first, second):
        super().__init__("not homogeneous: terms %s and %s have different degrees" % (first, second))
        self.terms = (first, second)


@dataclass(frozen=True)
class Grading:
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights or any(w < 1 for w in self.weights):
            raise PolynomialError("weights must be positive integers, got %r" % (self.weights,))

    @classmethod
    def standard(cls, nvars):
        return cls((1,) * nvars)

    @property
    def is_standard(self):
        return all(w == 1 for w in self.weights)

    @property
    def max_weight(self):
        return max(self.weights)

    def degree(self, exp: Exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))


class MonomialOrder:
    """Graded reverse lexicographic order (the only one supported)."""

    name = "grevlex"

    def key(self, exp: Exp, grading: Grading):
        return (grading.degree(exp), tuple(-e for e in reversed(exp)))

    def __repr__(self):
        return "MonomialOrder(%r)" % self.name


GREVLEX = MonomialOrder()


def _check_exp(exp):
    for e in exp:
        if e < 0 or e > MAX_EXPONENT:
            raise PolynomialError("exponent out of range: %r" % (exp,))
    return exp


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("terms", "variables", "grading", "_hash")

    def __init__(self, terms: Mapping[Exp, object], variables: Sequence[str], grading: Grading = None):
        variables = tuple(variables)
        if grading is None:
            grading = Grading.standard(len(variables))
        if len(grading.weights) != len(variables):
            raise PolynomialError("grading has %d weights for %d variables" % (len(grading.weights), len(variables)))
        clean = {}
        for exp, c in terms.items():
            c = Fraction(c)
            if c:
                exp = tuple(exp)
                if len(exp) != len(variables):
                    raise PolynomialError("monomial %r has wrong length" % (exp,))
                clean[_check_exp(exp)] = c
        self.terms: Dict[Exp, Fraction] = clean
        self.variables = variables
        self.grading = grading
        self._hash = None

    # construction helpers

    def _new(self, terms):
        p = Polynomial.__new__(Polynomial)
        p.terms = terms
        p.variables = self.variables
        p.grading = self.grading
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables, grading=None):
        return cls({}, variables, grading)

    @classmethod
    def constant(cls, c, variables, grading=None):
        return cls({(0,) * len(variables): c}, variables, grading)

    @classmethod
    def monomial(cls, exp, variables, grading=None, coeff=1):
        return cls({tuple(exp): coeff}, variables, grading)

    @classmethod
    def variable(cls, name, variables, grading=None):
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise UnknownVariableError("unknown variable %r" % name, 0)
        return cls({exp: 1}, variables, grading)

    # basic queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def nvars(self):
        return len(self.variables)

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms in decreasing monomial order."""
        g = self.grading
        return sorted(self.terms.items(), key=lambda t: order.key(t[0], g), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exp:
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading monomial")
        g = self.grading
        return max(self.terms, key=lambda e: order.key(e, g))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def weighted_degree(self) -> int:
        """Common weighted degree of all terms; raises if not homogeneous."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no degree")
        first = None
        for exp in self.sorted_terms():
            exp = exp[0]
            deg = self.grading.degree(exp)
            if first is None:
                first, first_deg = exp, deg
            elif deg != first_deg:
                raise NotHomogeneousError(self._mono_str(first), self._mono_str(exp))
        return first_deg

    def is_homogeneous(self):
        if not self.terms:
            return True
        return len({self.grading.degree(e) for e in self.terms}) == 1

    def constant_coefficient(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return False
        if other.variables != self.variables or other.grading != self.grading:
            raise PolynomialError("mismatched variable sets: %r vs %r" % (self.variables, other.variables))
        return True

    def __add__(self, other):
        if not self._check(other):
            other = Polynomial.constant(other, self.variables, self.grading)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self._new({})
        return self._new({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not self._check(other):
            return self.scale(other)
        terms: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return self._new({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise PolynomialError("negative power")
        out = Polynomial.constant(1, self.variables, self.grading)
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, exp, coeff=1):
        coeff = Fraction(coeff)
        return self._new({tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()} if coeff else {})

    def substitute_powers(self, powers, variables=None, grading=None):
        """Substitute ``y_i -> x_i^powers[i]`` into a new variable set."""
        variables = self.variables if variables is None else tuple(variables)
        return Polynomial({tuple(e * k for e, k in zip(exp, powers)): c for exp, c in self.terms.items()},
                          variables, grading)

    def with_grading(self, grading):
        return Polynomial(self.terms, self.variables, grading)

    # comparison and printing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def _mono_str(self, exp):
        parts = []
        for name, e in zip(self.variables, exp):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (exp, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            mono = self._mono_str(exp)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (a, mono)
            if i == 0:
                out.append("-" + body if neg else body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return "Polynomial(%r)" % str(self)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError("unexpected character %r" % text[pos], pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(variables)}
        self.nvars = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            what = value if value is not None else kind
            raise PolynomialSyntaxError("expected %s, found %r" % (what, tok[1] or "end of input"), tok[2])
        return tok

    def expr(self):
        terms: Dict[Exp, Fraction] = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            exp, c = self.term()
            terms[exp] = terms.get(exp, 0) + sign * c
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            raise PolynomialSyntaxError("expected '+', '-' or end of input, found %r" % tok[1], tok[2])
        return terms

    def term(self):
        tok = self.peek()
        exp = [0] * self.nvars
        coeff = Fraction(1)
        if tok[0] == "int":
            coeff = self.coeff()
            if not (self.peek()[0] == "op" and self.peek()[1] == "*"):
                return tuple(exp), coeff
            self.take()
        self.factor(exp)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            self.factor(exp)
        return tuple(exp), coeff

    def coeff(self):
        num = self.take()
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            slash = self.take()
            den = self.peek()
            if den[0] != "int":
                raise PolynomialSyntaxError("malformed rational literal", slash[2])
            self.take()
            if int(den[1]) == 0:
                raise PolynomialSyntaxError("malformed rational literal: zero denominator", den[2])
            return Fraction(int(num[1]), int(den[1]))
        return Fraction(int(num[1]))

    def factor(self, exp):
        tok = self.take()
        if tok[0] != "name":
            raise PolynomialSyntaxError("expected a variable, found %r" % (tok[1] or "end of input"), tok[2])
        if tok[1] not in self.index:
            raise UnknownVariableError("unknown variable %r" % tok[1], tok[2])
        power = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            p = self.expect("int")
            power = int(p[1])
        exp[self.index[tok[1]]] += power


def parse_polynomial(text: str, grading: Grading = None, variables: Sequence[str] = ()) -> Polynomial:
    """Parse a sum of monomial terms such as ``"x*u + y*v"`` or ``"-3/2*x^2*y"``.

    A leading sign on the first term is accepted.  No parentheses.
    """
    variables = tuple(variables)
    if grading is None:
        grading = Grading.standard(len(variables))
    terms = _Parser(text, variables).expr()
    return Polynomial(terms, variables, grading)


# ---------------------------------------------------------- normal forms

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class Reducer:
    """Normal forms modulo a single polynomial ``f``.

    A single polynomial is a Groebner basis of the principal ideal it
    generates, so dividing by ``f`` alone gives canonical representatives.
    Normal forms of monomials are memoised.
    """

    def __init__(self, f: Polynomial, order: MonomialOrder = GREVLEX):
        if f.is_zero():
            raise PolynomialError("cannot reduce modulo the zero polynomial")
        self.f = f
        self.order = order
        self.lead = f.leading_monomial(order)
        lc = f.terms[self.lead]
        # m = lead * q  ->  sum over tail of (-c/lc) t*q
        self.tail = tuple((e, _compact(-c / lc)) for e, c in f.terms.items() if e != self.lead)
        self._cache: Dict[Exp, Dict[Exp, object]] = {}

    def divisible(self, exp):
        return _divides(self.lead, exp)

    def monomial(self, exp: Exp) -> Dict[Exp, object]:
        """Normal form of a monomial as {exp: coeff} (coefficients int or Fraction)."""
        hit = self._cache.get(exp)
        if hit is not None:
            return hit
        lead = self.lead
        if not _divides(lead, exp):
            out = {exp: 1}
        else:
            q = tuple(a - b for a, b in zip(exp, lead))
            out = {}
            for t, c in self.tail:
                for e2, c2 in self.monomial(tuple(a + b for a, b in zip(t, q))).items():
                    s = out.get(e2, 0) + c * c2
                    if s:
                        out[e2] = s
                    else:
                        del out[e2]
        self._cache[exp] = out
        return out

    def reduce_terms(self, terms) -> Dict[Exp, object]:
        out: Dict[Exp, object] = {}
        for exp, c in terms.items():
            for e2, c2 in self.monomial(exp).items():
                s = out.get(e2, 0) + c * c2
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return out

    def normal_form(self, p: Polynomial) -> Polynomial:
        return Polynomial(self.reduce_terms(p.terms), p.variables, p.grading)


def _compact(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


_REDUCERS: Dict[tuple, Reducer] = {}


def reducer_for(f: Polynomial) -> Reducer:
    key = (f.variables, f.grading.weights, frozenset(f.terms.items()))
    r = _REDUCERS.get(key)
    if r is None:
        r = _REDUCERS[key] = Reducer(f)
    return r


def normal_form(p: Polynomial, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """The unique representative of ``p`` mod ``(f)`` with no term divisible by lead(f)."""
    if order is not GREVLEX:
        raise PolynomialError("only grevlex is supported")
    if not f.is_homogeneous():
        raise PolynomialError("f must be homogeneous")
    p._check(f)
    return reducer_for(f).normal_form(p)


def divide(p: Polynomial, f: Polynomial):
    """Division with remainder by ``f`` in the polynomial ring: returns (q, r), p = q*f + r."""
    p._check(f)
    lead = f.leading_monomial()
    lc = f.terms[lead]
    g = p.grading
    rem = dict(p.terms)
    quo: Dict[Exp, Fraction] = {}
    out: Dict[Exp, Fraction] = {}
    key = lambda e: GREVLEX.key(e, g)
    while rem:
        exp = max(rem, key=key)
        c = rem.pop(exp)
        if _divides(lead, exp):
            q = tuple(a - b for a, b in zip(exp, lead))
            qc = c / lc
            quo[q] = quo.get(q, 0) + qc
            for t, tc in f.terms.items():
                if t == lead:
                    continue
                e2 = tuple(a + b for a, b in zip(t, q))
                s = rem.get(e2, 0) - qc * tc
                if s:
                    rem[e2] = s
                else:
                    rem.pop(e2, None)
        else:
            out[exp] = c
    return Polynomial(quo, p.variables, g), Polynomial(out, p.variables, g)


def monomials_of_degree(weights: Sequence[int], degree: int) -> Iterable[Exp]:
    """All exponent vectors of the given weighted degree, in a fixed order."""
    weights = tuple(weights)
    nv = len(weights)

    def rec(i, left):
        if i == nv - 1:
            w = weights[i]
            if left % w == 0:
                yield (left // w,)
            return
        w = weights[i]
        for e in range(left // w, -1, -1):
            for rest in rec(i + 1, left - e * w):
                yield (e,) + rest

    if degree < 0:
        return iter(())
    return rec(0, degree)

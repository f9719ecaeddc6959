"""Exact coefficient arithmetic: rationals and sparse parametric polynomials.

Two kinds of coefficients are supported:

  * ``Rational`` -- an alias of :class:`fractions.Fraction`; arbitrary
    precision, always reduced, positive denominator.
  * ``Poly`` -- a multivariate polynomial in a fixed ordered tuple of named
    parameters with ``Fraction`` coefficients, stored sparsely as a dict
    mapping exponent tuples to nonzero coefficients.

A :class:`CoefficientRing` pins down which kind a computation uses (and, for
polynomials, the parameter list).  Mixing coefficients from different rings
is an error; the only crossing is the explicit embedding Q -> Q[params] via
:meth:`CoefficientRing.embed`.

All values are immutable and all operations pure.
"""

import re
from fractions import Fraction

from .errors import (
    InexactDivisionError,
    RingMismatchError,
    SchemaError,
    UnassignedParameterError,
)

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the text form: optional sign, digits, optional '/denominator'."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise SchemaError(f"not a rational literal: {text!r}")
    num, _, den = text.strip().partition("/")
    if den:
        if int(den) == 0:
            raise SchemaError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def _grlex_key(exponents):
    # graded lexicographic: total degree first, then lexicographic on the tuple
    return (sum(exponents), exponents)


class Poly:
    """Sparse multivariate polynomial over Q in named parameters.

    ``terms`` maps exponent tuples (one entry per parameter, in order) to
    nonzero Fractions.  The zero polynomial has an empty term dict.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params, terms=None):
        self.params = tuple(params)
        width = len(self.params)
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != width:
                    raise ValueError(
                        f"exponent vector {exps} does not match {width} parameters"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, params):
        return cls(params, {})

    @classmethod
    def constant(cls, params, value):
        value = Fraction(value)
        if not value:
            return cls(params, {})
        return cls(params, {(0,) * len(tuple(params)): value})

    @classmethod
    def variable(cls, params, name):
        params = tuple(params)
        if name not in params:
            raise ValueError(f"unknown parameter {name!r} (have {params})")
        exps = tuple(1 if p == name else 0 for p in params)
        return cls(params, {exps: Fraction(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        """The value as a Fraction, for constant polynomials only."""
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        width = len(self.params)
        return self.terms.get((0,) * width, Fraction(0))

    def total_degree(self):
        """Max total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            raise RingMismatchError(
                f"cannot combine Poly with {type(other).__name__}; "
                "embed rationals explicitly"
            )
        if other.params != self.params:
            raise RingMismatchError(
                f"parameter lists differ: {self.params} vs {other.params}"
            )

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[exps] = acc
            elif exps in out:
                del out[exps]
        result = Poly.__new__(Poly)
        result.params = self.params
        result.terms = out
        return result

    def __neg__(self):
        result = Poly.__new__(Poly)
        result.params = self.params
        result.terms = {e: -c for e, c in self.terms.items()}
        return result

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(exps)
                prod = c1 * c2
                acc = prod if acc is None else acc + prod
                if acc:
                    out[exps] = acc
                elif exps in out:
                    del out[exps]
        result = Poly.__new__(Poly)
        result.params = self.params
        result.terms = out
        return result

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.params, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, q):
        """Multiply by a Fraction scalar (internal scaling, not ring mixing)."""
        q = Fraction(q)
        result = Poly.__new__(Poly)
        result.params = self.params
        result.terms = {} if not q else {e: c * q for e, c in self.terms.items()}
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    # -- division and evaluation --------------------------------------

    def leading_term(self):
        """(exponents, coefficient) maximal in graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def div_exact(self, other):
        """Quotient self/other when it exists in the ring; else raise."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly.zero(self.params)
        lt_exp, lt_coeff = other.leading_term()
        remainder = dict(self.terms)
        quotient = {}
        while remainder:
            r_exp = max(remainder, key=_grlex_key)
            r_coeff = remainder[r_exp]
            q_exp = tuple(a - b for a, b in zip(r_exp, lt_exp))
            if any(e < 0 for e in q_exp):
                raise InexactDivisionError(
                    f"{self} is not divisible by {other}"
                )
            q_coeff = r_coeff / lt_coeff
            quotient[q_exp] = q_coeff
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(q_exp, e2))
                acc = remainder.get(exps, Fraction(0)) - q_coeff * c2
                if acc:
                    remainder[exps] = acc
                elif exps in remainder:
                    del remainder[exps]
        result = Poly.__new__(Poly)
        result.params = self.params
        result.terms = quotient
        return result

    def eval(self, assignment):
        """Evaluate at a parameter assignment; a ring homomorphism to Q.

        Only parameters actually appearing need values.
        """
        values = []
        needed = [False] * len(self.params)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    needed[i] = True
        for i, name in enumerate(self.params):
            if needed[i]:
                if name not in assignment:
                    raise UnassignedParameterError(f"parameter {name!r} unassigned")
                values.append(Fraction(assignment[name]))
            else:
                values.append(None)
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    # -- formatting ----------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.params!r}, {format_poly(self)!r})"


def format_poly(p: Poly) -> str:
    """Text form: sum of terms like ``-1/2*a^2*b`` in graded lex order."""
    if not p.terms:
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        coeff = p.terms[exps]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(p.params, exps)
            if e
        )
        if not mono:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{abs(coeff)}*{mono}"
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


class CoefficientRing:
    """Descriptor for a coefficient ring: Q, or Q[p1, ..., pk].

    ``params`` is None for the rationals and an ordered tuple of distinct
    parameter names for a polynomial ring.
    """

    __slots__ = ("params",)

    def __init__(self, params=None):
        if params is not None:
            params = tuple(params)
            if len(set(params)) != len(params):
                raise ValueError(f"duplicate parameter names in {params}")
        self.params = params

    @classmethod
    def rationals(cls):
        return cls(None)

    @classmethod
    def polynomials(cls, params):
        return cls(tuple(params))

    @property
    def is_rational(self):
        return self.params is None

    def __eq__(self, other):
        if not isinstance(other, CoefficientRing):
            return NotImplemented
        return self.params == other.params

    def __hash__(self):
        return hash(self.params)

    def __repr__(self):
        if self.is_rational:
            return "CoefficientRing(Q)"
        return f"CoefficientRing(Q[{', '.join(self.params)}])"

    # -- element construction -------------------------------------------

    def zero(self):
        return Fraction(0) if self.is_rational else Poly.zero(self.params)

    def one(self):
        return Fraction(1) if self.is_rational else Poly.constant(self.params, 1)

    def embed(self, value):
        """Coerce an int, Fraction, or member Poly into this ring."""
        if isinstance(value, Poly):
            if self.is_rational or value.params != self.params:
                raise RingMismatchError(
                    f"polynomial in {value.params} does not belong to {self!r}"
                )
            return value
        value = Fraction(value)
        if self.is_rational:
            return value
        return Poly.constant(self.params, value)

    def variable(self, name):
        if self.is_rational:
            raise RingMismatchError("the rational ring has no parameters")
        return Poly.variable(self.params, name)

    def contains(self, value):
        if self.is_rational:
            return isinstance(value, Fraction)
        return isinstance(value, Poly) and value.params == self.params

    def check_member(self, value):
        if not self.contains(value):
            raise RingMismatchError(f"{value!r} is not a member of {self!r}")
        return value

    # -- JSON interchange ------------------------------------------------

    def coefficient_to_json(self, value):
        self.check_member(value)
        if isinstance(value, Fraction):
            return str(value)
        return {
            "poly": [
                {
                    "monomial": {
                        name: e
                        for name, e in zip(self.params, exps)
                        if e
                    },
                    "coefficient": str(coeff),
                }
                for exps, coeff in sorted(
                    value.terms.items(),
                    key=lambda item: (sum(item[0]), tuple(-x for x in item[0])),
                )
            ]
        }

    def coefficient_from_json(self, data):
        if isinstance(data, str):
            q = parse_rational(data)
            return q if self.is_rational else Poly.constant(self.params, q)
        if not isinstance(data, dict):
            raise SchemaError(f"bad coefficient value: {data!r}")
        unknown = set(data) - {"poly"}
        if unknown or "poly" not in data:
            raise SchemaError(f"bad coefficient object keys: {sorted(data)}")
        if self.is_rational:
            raise SchemaError("polynomial coefficient in a rational-ring series")
        terms = {}
        if not isinstance(data["poly"], list):
            raise SchemaError("'poly' must be a list of terms")
        for entry in data["poly"]:
            if not isinstance(entry, dict) or set(entry) != {"monomial", "coefficient"}:
                raise SchemaError(f"bad poly term: {entry!r}")
            mono = entry["monomial"]
            if not isinstance(mono, dict):
                raise SchemaError(f"bad monomial: {mono!r}")
            exps = [0] * len(self.params)
            for name, e in mono.items():
                if name not in self.params:
                    raise SchemaError(f"unknown parameter {name!r}")
                if not isinstance(e, int) or e < 0:
                    raise SchemaError(f"bad exponent for {name!r}: {e!r}")
                exps[self.params.index(name)] = e
            coeff = parse_rational(entry["coefficient"])
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Poly(self.params, terms)

    def format(self, value):
        self.check_member(value)
        return str(value) if isinstance(value, Fraction) else format_poly(value)


RATIONALS = CoefficientRing.rationals()


def _common_kind(c1, c2):
    if isinstance(c1, Fraction) and isinstance(c2, Fraction):
        return "q"
    if isinstance(c1, Poly) and isinstance(c2, Poly):
        if c1.params != c2.params:
            raise RingMismatchError(
                f"parameter lists differ: {c1.params} vs {c2.params}"
            )
        return "p"
    raise RingMismatchError(
        f"cannot mix {type(c1).__name__} and {type(c2).__name__} coefficients"
    )


def coef_add(c1, c2):
    """Exact sum of two coefficients from the same ring."""
    _common_kind(c1, c2)
    return c1 + c2


def coef_mul(c1, c2):
    """Exact product of two coefficients from the same ring."""
    _common_kind(c1, c2)
    return c1 * c2


def coef_div_exact(c1, c2):
    """The unique c with c*c2 == c1, when it exists in the ring."""
    kind = _common_kind(c1, c2)
    if kind == "q":
        if not c2:
            raise ZeroDivisionError("rational division by zero")
        return c1 / c2
    return c1.div_exact(c2)


def eval_params(p, assignment):
    """Evaluate a polynomial at rational parameter values.

    This is the concrete ring homomorphism Q[params] -> Q; rationals pass
    through unchanged.
    """
    if isinstance(p, Fraction):
        return p
    if not isinstance(p, Poly):
        raise TypeError(f"expected Poly or Fraction, got {type(p).__name__}")
    return p.eval(assignment)


def is_zero_coefficient(c) -> bool:
    return c.is_zero() if isinstance(c, Poly) else not c

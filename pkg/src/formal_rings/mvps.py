"""Truncated multivariate power series with exact coefficients.

A :class:`Series` holds terms of total degree <= ``trunc_degree`` (written D
below); every operation is exact modulo terms of total degree > D.  Storage is
sparse: a dict from exponent tuples (length ``num_vars``) to nonzero
coefficients, all from one :class:`~formal_rings.scalars.CoefficientRing`.

Design notes that matter for correctness:

  * Truncation is by *total* degree, so every identity can be compared
    degree by degree.
  * Composition requires the inner components to vanish at the origin;
    each output coefficient then depends on finitely many inputs.
  * Compositional inversion solves one exact linear system per degree,
    with the linear-part matrix eliminated by exact division; a pivot
    that is not exactly invertible is a hard error, never an approximation.
  * Multiplication walks the second factor grouped by total degree so that
    pairs beyond the truncation bound are never formed; this is what keeps
    high-order products (whose low-degree part is empty) cheap.

Equality of series is exact coefficient equality; there are no tolerances.
"""

import math
from fractions import Fraction

from .errors import (
    ConstantTermError,
    PrecisionError,
    SchemaError,
    ShapeMismatchError,
    SingularLinearPartError,
)
from .scalars import (
    CoefficientRing,
    InexactDivisionError,
    coef_div_exact,
    is_zero_coefficient,
    RATIONALS,
)

INFINITY = math.inf


class Series:
    """One truncated power series in ``num_vars`` variables."""

    __slots__ = ("num_vars", "trunc_degree", "ring", "terms")

    def __init__(self, num_vars, trunc_degree, ring, terms=None):
        if num_vars < 1:
            raise ShapeMismatchError("num_vars must be >= 1")
        if trunc_degree < 1:
            raise ShapeMismatchError("trunc_degree must be >= 1")
        if not isinstance(ring, CoefficientRing):
            raise TypeError("ring must be a CoefficientRing")
        self.num_vars = num_vars
        self.trunc_degree = trunc_degree
        self.ring = ring
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != num_vars:
                    raise ShapeMismatchError(
                        f"exponent vector {exps} has wrong arity (expected {num_vars})"
                    )
                if any(e < 0 for e in exps):
                    raise ShapeMismatchError(f"negative exponent in {exps}")
                if sum(exps) > trunc_degree:
                    continue
                ring.check_member(coeff)
                if not is_zero_coefficient(coeff):
                    clean[exps] = coeff
        self.terms = clean

    @classmethod
    def _make(cls, num_vars, trunc_degree, ring, terms):
        # internal fast path: terms already canonical (trusted callers only)
        s = cls.__new__(cls)
        s.num_vars = num_vars
        s.trunc_degree = trunc_degree
        s.ring = ring
        s.terms = terms
        return s

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, num_vars, trunc_degree, ring=RATIONALS):
        return cls._make(num_vars, trunc_degree, ring, {})

    @classmethod
    def constant(cls, value, num_vars, trunc_degree, ring=RATIONALS):
        value = ring.embed(value)
        if is_zero_coefficient(value):
            return cls.zero(num_vars, trunc_degree, ring)
        return cls._make(num_vars, trunc_degree, ring, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, index, num_vars, trunc_degree, ring=RATIONALS):
        if not 0 <= index < num_vars:
            raise ShapeMismatchError(f"variable index {index} out of range")
        exps = tuple(1 if i == index else 0 for i in range(num_vars))
        return cls._make(num_vars, trunc_degree, ring, {exps: ring.one()})

    @classmethod
    def from_coefficients(cls, coeffs, trunc_degree, ring=RATIONALS):
        """One-variable series from a map degree -> coefficient."""
        terms = {(d,): ring.embed(c) for d, c in coeffs.items()}
        return cls(1, trunc_degree, ring, terms)

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.num_vars, self.ring.zero())

    def coefficient(self, exps):
        exps = tuple(exps)
        if len(exps) != self.num_vars:
            raise ShapeMismatchError(f"bad exponent arity {exps}")
        if sum(exps) > self.trunc_degree:
            raise PrecisionError(
                f"degree {sum(exps)} exceeds truncation {self.trunc_degree}"
            )
        return self.terms.get(exps, self.ring.zero())

    def order(self):
        """Minimal total degree of a nonzero term; infinity for zero."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def max_degree(self):
        """Max total degree actually present; -1 for the zero series."""
        return max((sum(e) for e in self.terms), default=-1)

    def _check_shape(self, other):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if (
            self.num_vars != other.num_vars
            or self.trunc_degree != other.trunc_degree
            or self.ring != other.ring
        ):
            raise ShapeMismatchError(
                f"series shapes differ: ({self.num_vars} vars, D={self.trunc_degree}, "
                f"{self.ring!r}) vs ({other.num_vars} vars, D={other.trunc_degree}, "
                f"{other.ring!r})"
            )

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.trunc_degree == other.trunc_degree
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __repr__(self):
        return (
            f"Series({self.num_vars} vars, D={self.trunc_degree}, "
            f"{len(self.terms)} terms)"
        )

    def __str__(self):
        return format_series(self)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_shape(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            acc = coeff if acc is None else acc + coeff
            if is_zero_coefficient(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return Series._make(self.num_vars, self.trunc_degree, self.ring, out)

    def __neg__(self):
        return Series._make(
            self.num_vars,
            self.trunc_degree,
            self.ring,
            {e: -c for e, c in self.terms.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_shape(other)
        if not self.terms or not other.terms:
            return Series.zero(self.num_vars, self.trunc_degree, self.ring)
        D = self.trunc_degree
        by_degree = {}
        for e2, c2 in other.terms.items():
            by_degree.setdefault(sum(e2), []).append((e2, c2))
        degrees = sorted(by_degree)
        out = {}
        for e1, c1 in self.terms.items():
            budget = D - sum(e1)
            for d2 in degrees:
                if d2 > budget:
                    break
                for e2, c2 in by_degree[d2]:
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    prod = c1 * c2
                    acc = out.get(exps)
                    acc = prod if acc is None else acc + prod
                    if is_zero_coefficient(acc):
                        out.pop(exps, None)
                    else:
                        out[exps] = acc
        return Series._make(self.num_vars, self.trunc_degree, self.ring, out)

    def scale(self, coeff):
        """Multiply every coefficient by a ring element."""
        coeff = self.ring.embed(coeff)
        if is_zero_coefficient(coeff):
            return Series.zero(self.num_vars, self.trunc_degree, self.ring)
        out = {}
        for exps, c in self.terms.items():
            acc = c * coeff
            if not is_zero_coefficient(acc):
                out[exps] = acc
        return Series._make(self.num_vars, self.trunc_degree, self.ring, out)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Series.constant(1, self.num_vars, self.trunc_degree, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structural operations ----------------------------------------------

    def truncate(self, new_degree):
        """Drop terms of total degree > new_degree; refuse to extend."""
        if new_degree > self.trunc_degree:
            raise PrecisionError(
                f"cannot extend truncation {self.trunc_degree} to {new_degree}"
            )
        if new_degree < 1:
            raise ShapeMismatchError("trunc_degree must be >= 1")
        if new_degree == self.trunc_degree:
            return self
        out = {e: c for e, c in self.terms.items() if sum(e) <= new_degree}
        return Series._make(self.num_vars, new_degree, self.ring, out)

    def embed(self, num_vars, var_map):
        """Relabel variables into a wider alphabet.

        ``var_map[i]`` gives the new index of old variable i; the map must be
        injective.
        """
        var_map = tuple(var_map)
        if len(var_map) != self.num_vars:
            raise ShapeMismatchError("var_map length must equal num_vars")
        if len(set(var_map)) != len(var_map) or any(
            not 0 <= v < num_vars for v in var_map
        ):
            raise ShapeMismatchError(f"var_map {var_map} is not injective into range({num_vars})")
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * num_vars
            for i, e in enumerate(exps):
                new[var_map[i]] = e
            out[tuple(new)] = coeff
        return Series._make(num_vars, self.trunc_degree, self.ring, out)

    def map_coefficients(self, func, ring):
        """Apply ``func`` to every coefficient, landing in ``ring``."""
        out = {}
        for exps, coeff in self.terms.items():
            acc = func(coeff)
            if not is_zero_coefficient(acc):
                out[exps] = acc
        return Series._make(self.num_vars, self.trunc_degree, ring, out)

    def homogeneous_part(self, degree):
        out = {e: c for e, c in self.terms.items() if sum(e) == degree}
        return Series._make(self.num_vars, self.trunc_degree, self.ring, out)

    def evaluate(self, values, ring=None):
        """Evaluate at a point, i.e. substitute a coefficient for each variable.

        Meaningful when the stored terms are the whole polynomial.  ``ring``
        defaults to the series ring; pass a wider ring to evaluate at, e.g.,
        parametric points.
        """
        ring = ring or self.ring
        values = [ring.embed(v) for v in values]
        if len(values) != self.num_vars:
            raise ShapeMismatchError("one value per variable required")
        powers = [{0: ring.one()} for _ in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * values[i]
            return cache[e]

        total = ring.zero()
        for exps, coeff in self.terms.items():
            term = ring.embed(coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total


class SeriesTuple:
    """An ordered tuple of series with identical shape: a map of formal spaces."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise ShapeMismatchError("a SeriesTuple needs at least one component")
        first = components[0]
        for c in components[1:]:
            first._check_shape(c)
        self.components = components

    @property
    def num_vars(self):
        return self.components[0].num_vars

    @property
    def trunc_degree(self):
        return self.components[0].trunc_degree

    @property
    def ring(self):
        return self.components[0].ring

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        if not isinstance(other, SeriesTuple):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return f"SeriesTuple({len(self.components)} components, {self.components[0]!r})"

    @classmethod
    def identity(cls, num_vars, trunc_degree, ring=RATIONALS):
        return cls(
            tuple(
                Series.variable(i, num_vars, trunc_degree, ring)
                for i in range(num_vars)
            )
        )

    def truncate(self, new_degree):
        return SeriesTuple(tuple(c.truncate(new_degree) for c in self.components))

    def embed(self, num_vars, var_map):
        return SeriesTuple(tuple(c.embed(num_vars, var_map) for c in self.components))

    def map_coefficients(self, func, ring):
        return SeriesTuple(
            tuple(c.map_coefficients(func, ring) for c in self.components)
        )

    def scale(self, coeff):
        return SeriesTuple(tuple(c.scale(coeff) for c in self.components))


def series_add(f: Series, g: Series) -> Series:
    """Coefficientwise sum (same shape required)."""
    return f + g


def series_mul(f: Series, g: Series) -> Series:
    """Convolution product, truncated at the shared degree bound."""
    return f * g


def order(f: Series):
    """Minimal total degree of a nonzero term; math.inf for the zero series."""
    return f.order()


def truncate(f: Series, new_degree: int) -> Series:
    return f.truncate(new_degree)


def compose(f: Series, inner, cache=None) -> Series:
    """Substitute ``inner`` (a SeriesTuple, one component per variable of f).

    Every inner component must vanish at the origin.  The result lives in the
    inner alphabet.  ``cache`` may be shared between calls with the same inner
    tuple to reuse monomial powers.
    """
    if isinstance(inner, Series):
        inner = SeriesTuple((inner,))
    if not isinstance(inner, SeriesTuple):
        inner = SeriesTuple(tuple(inner))
    if len(inner) != f.num_vars:
        raise ShapeMismatchError(
            f"outer series has {f.num_vars} variables but {len(inner)} inner components given"
        )
    if f.trunc_degree != inner.trunc_degree:
        raise ShapeMismatchError(
            f"truncation degrees differ: {f.trunc_degree} vs {inner.trunc_degree}"
        )
    if f.ring != inner.ring:
        raise ShapeMismatchError(f"coefficient rings differ: {f.ring!r} vs {inner.ring!r}")
    for c in inner:
        if not is_zero_coefficient(c.constant_term()):
            raise ConstantTermError("inner series must have zero constant term")

    n, D, ring = inner.num_vars, inner.trunc_degree, inner.ring
    if cache is None:
        cache = {}

    def monomial_value(exps):
        value = cache.get(exps)
        if value is not None:
            return value
        i = max(j for j, e in enumerate(exps) if e)
        prev = tuple(e - 1 if j == i else e for j, e in enumerate(exps))
        if any(prev):
            value = monomial_value(prev) * inner[i]
        else:
            value = inner[i]
        cache[exps] = value
        return value

    out = {}
    orders = [c.order() for c in inner]
    for exps, coeff in f.terms.items():
        if not any(exps):
            acc = out.get((0,) * n)
            acc = coeff if acc is None else acc + coeff
            if is_zero_coefficient(acc):
                out.pop((0,) * n, None)
            else:
                out[(0,) * n] = acc
            continue
        weight = 0
        for e, o in zip(exps, orders):
            if e:
                if o is INFINITY:
                    weight = INFINITY
                    break
                weight += e * o
        if weight > D:
            continue
        for mono_exps, mono_coeff in monomial_value(exps).terms.items():
            prod = coeff * mono_coeff
            acc = out.get(mono_exps)
            acc = prod if acc is None else acc + prod
            if is_zero_coefficient(acc):
                out.pop(mono_exps, None)
            else:
                out[mono_exps] = acc
    return Series._make(n, D, ring, out)


def compose_tuple(outer: SeriesTuple, inner: SeriesTuple, cache=None) -> SeriesTuple:
    """Componentwise composition with one shared monomial-power cache."""
    if cache is None:
        cache = {}
    return SeriesTuple(tuple(compose(f, inner, cache=cache) for f in outer))


def _solve_exact(matrix, rhs, ring):
    """Solve matrix * x = rhs exactly over the ring (Gaussian elimination).

    ``matrix`` is a list of rows of coefficients, ``rhs`` a list of columns
    (each a list).  Raises SingularLinearPartError when no exact solution
    process exists (zero pivot column or inexact division).
    """
    n = len(matrix)
    m = [row[:] for row in matrix]
    cols = [col[:] for col in rhs]
    for k in range(n):
        pivot_row = next(
            (r for r in range(k, n) if not is_zero_coefficient(m[r][k])), None
        )
        if pivot_row is None:
            raise SingularLinearPartError("linear part is singular")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            for col in cols:
                col[k], col[pivot_row] = col[pivot_row], col[k]
        pivot = m[k][k]
        for r in range(k + 1, n):
            factor = m[r][k]
            if is_zero_coefficient(factor):
                continue
            # row_r := pivot * row_r - factor * row_k keeps everything in-ring
            for c in range(k, n):
                m[r][c] = pivot * m[r][c] - factor * m[k][c]
            for col in cols:
                col[r] = pivot * col[r] - factor * col[k]
    solutions = []
    try:
        for col in cols:
            x = [ring.zero()] * n
            for k in range(n - 1, -1, -1):
                acc = col[k]
                for c in range(k + 1, n):
                    acc = acc - m[k][c] * x[c]
                x[k] = coef_div_exact(acc, m[k][k])
            solutions.append(x)
    except (InexactDivisionError, ZeroDivisionError) as exc:
        raise SingularLinearPartError(
            f"linear part is not exactly invertible: {exc}"
        ) from exc
    return solutions


def linear_part_matrix(g: SeriesTuple):
    """The matrix of linear coefficients: entry [i][j] = coeff of x_j in g_i."""
    n = g.num_vars
    ring = g.ring
    rows = []
    for comp in g:
        row = []
        for j in range(n):
            unit = tuple(1 if k == j else 0 for k in range(n))
            row.append(comp.terms.get(unit, ring.zero()))
        rows.append(row)
    return rows


def invert_tuple(g: SeriesTuple) -> SeriesTuple:
    """Compositional inverse of an n-component tuple in n variables.

    Requires zero constant terms and an exactly invertible linear part.
    Solved degree by degree: once the inverse is correct below degree d, the
    degree-d error of g(h(x)) - x is linear in the degree-d correction, with
    the linear-part matrix as its matrix.
    """
    n = g.num_vars
    if len(g) != n:
        raise ShapeMismatchError(
            f"need as many components ({len(g)}) as variables ({n})"
        )
    for comp in g:
        if not is_zero_coefficient(comp.constant_term()):
            raise ConstantTermError("cannot invert: nonzero constant term")
    D, ring = g.trunc_degree, g.ring
    jac = linear_part_matrix(g)

    # first-order inverse: the columns of J^{-1}
    unit_cols = []
    for i in range(n):
        col = [ring.zero()] * n
        col[i] = ring.one()
        unit_cols.append(col)
    inv_cols = _solve_exact(jac, unit_cols, ring)

    h = []
    for i in range(n):
        terms = {}
        for j in range(n):
            c = inv_cols[j][i]
            if not is_zero_coefficient(c):
                unit = tuple(1 if k == j else 0 for k in range(n))
                terms[unit] = c
        h.append(Series._make(n, D, ring, terms))
    h = SeriesTuple(h)

    identity = SeriesTuple.identity(n, D, ring)
    for degree in range(2, D + 1):
        err = compose_tuple(g, h)
        if all(err[i] == identity[i] for i in range(n)):
            break
        residual_cols = []
        correction_needed = False
        for i in range(n):
            diff = err[i] - identity[i]
            part = diff.homogeneous_part(degree)
            residual_cols.append(part)
            if part.terms:
                correction_needed = True
        if not correction_needed:
            continue
        # collect the degree-d monomials present, solve J * c = -residual per monomial
        monomials = set()
        for part in residual_cols:
            monomials.update(part.terms)
        rhs = []
        for mono in monomials:
            rhs.append([-(residual_cols[i].terms.get(mono, ring.zero())) for i in range(n)])
        solved = _solve_exact(jac, rhs, ring)
        new_terms = [dict(h[i].terms) for i in range(n)]
        for mono, col in zip(monomials, solved):
            for i in range(n):
                if not is_zero_coefficient(col[i]):
                    new_terms[i][mono] = col[i]
        h = SeriesTuple(
            tuple(Series._make(n, D, ring, t) for t in new_terms)
        )
    return h


# -- classical series built on demand -----------------------------------------


def exp_series(u: Series) -> Series:
    """exp(u) - includes the constant term 1; u must vanish at the origin."""
    if not is_zero_coefficient(u.constant_term()):
        raise ConstantTermError("exp of a series needs zero constant term")
    result = Series.constant(1, u.num_vars, u.trunc_degree, u.ring)
    power = Series.constant(1, u.num_vars, u.trunc_degree, u.ring)
    factorial = 1
    for k in range(1, u.trunc_degree + 1):
        power = power * u
        factorial *= k
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial))
    return result


def log1p_series(u: Series) -> Series:
    """log(1 + u); u must vanish at the origin."""
    if not is_zero_coefficient(u.constant_term()):
        raise ConstantTermError("log1p of a series needs zero constant term")
    result = Series.zero(u.num_vars, u.trunc_degree, u.ring)
    power = Series.constant(1, u.num_vars, u.trunc_degree, u.ring)
    for k in range(1, u.trunc_degree + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power.scale(Fraction(-1 if k % 2 == 0 else 1, k))
    return result


def mul_inverse(f: Series) -> Series:
    """Multiplicative inverse 1/f for f with exactly invertible constant term."""
    c0 = f.constant_term()
    if is_zero_coefficient(c0):
        raise ZeroDivisionError("series has no multiplicative inverse: f(0) = 0")
    one = f.ring.one()
    c0_inv = coef_div_exact(one, c0)
    u = f.scale(c0_inv) - Series.constant(1, f.num_vars, f.trunc_degree, f.ring)
    # 1/f = c0_inv * sum_k (-u)^k
    result = Series.constant(1, f.num_vars, f.trunc_degree, f.ring)
    power = Series.constant(1, f.num_vars, f.trunc_degree, f.ring)
    sign = 1
    for _ in range(f.trunc_degree):
        power = power * u
        sign = -sign
        if power.is_zero():
            break
        result = result + (power if sign > 0 else -power)
    return result.scale(c0_inv)


def pow_binomial(u: Series, exponent: Fraction) -> Series:
    """(1 + u)^exponent via the binomial series; u must vanish at the origin."""
    if not is_zero_coefficient(u.constant_term()):
        raise ConstantTermError("binomial series needs zero constant term")
    exponent = Fraction(exponent)
    result = Series.constant(1, u.num_vars, u.trunc_degree, u.ring)
    power = Series.constant(1, u.num_vars, u.trunc_degree, u.ring)
    binom = Fraction(1)
    for k in range(1, u.trunc_degree + 1):
        power = power * u
        binom *= Fraction(exponent - (k - 1), k)
        if power.is_zero() or not binom:
            break
        result = result + power.scale(binom)
    return result


def differentiate(f: Series, var: int = 0) -> Series:
    """Formal partial derivative with respect to one variable."""
    if not 0 <= var < f.num_vars:
        raise ShapeMismatchError(f"variable index {var} out of range")
    out = {}
    for exps, coeff in f.terms.items():
        e = exps[var]
        if not e:
            continue
        new = tuple(x - 1 if i == var else x for i, x in enumerate(exps))
        acc = coeff * f.ring.embed(e)
        if not is_zero_coefficient(acc):
            out[new] = acc
    return Series._make(f.num_vars, f.trunc_degree, f.ring, out)


def integrate_1var(f: Series) -> Series:
    """Formal antiderivative of a one-variable series, constant term 0.

    The degree-D input coefficient would land at degree D+1, so inputs are
    expected to carry one spare degree; terms beyond the bound are dropped.
    """
    if f.num_vars != 1:
        raise ShapeMismatchError("termwise integration is one-variable only")
    out = {}
    for (e,), coeff in f.terms.items():
        if e + 1 > f.trunc_degree:
            continue
        acc = coef_div_exact(coeff, f.ring.embed(e + 1))
        if not is_zero_coefficient(acc):
            out[(e + 1,)] = acc
    return Series._make(1, f.trunc_degree, f.ring, out)


# -- printing ------------------------------------------------------------------


def default_var_names(num_vars, blocks=None):
    """Deterministic variable names.

    ``blocks`` may be 2 or 3 to split the alphabet into x/y(/z) blocks of
    equal size, as used for composition-law identities.
    """
    if blocks and num_vars % blocks == 0 and num_vars > blocks - 1:
        n = num_vars // blocks
        letters = ["x", "y", "z"][:blocks]
        if n == 1:
            return tuple(letters)
        return tuple(f"{letter}{i + 1}" for letter in letters for i in range(n))
    if num_vars == 1:
        return ("x",)
    return tuple(f"x{i + 1}" for i in range(num_vars))


def sorted_exponents(terms):
    """Graded lexicographic presentation order: by degree, then x before y."""
    return sorted(terms, key=lambda e: (sum(e), tuple(-x for x in e)))


def format_series(f: Series, var_names=None) -> str:
    """Render as a sum of monomials in graded lexicographic order."""
    from .scalars import Poly, format_poly

    if not f.terms:
        return "0"
    names = var_names or default_var_names(f.num_vars)
    if len(names) != f.num_vars:
        raise ShapeMismatchError("one name per variable required")
    pieces = []
    for exps in sorted_exponents(f.terms):
        coeff = f.terms[exps]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, exps)
            if e
        )
        if isinstance(coeff, Poly):
            if len(coeff.terms) == 1:
                ((p_exps, p_coeff),) = coeff.terms.items()
                sign = "-" if p_coeff < 0 else "+"
                inner = format_poly(
                    Poly(coeff.params, {p_exps: abs(p_coeff)})
                )
                body = f"{inner}*{mono}" if mono else inner
            else:
                sign = "+"
                body = f"({format_poly(coeff)})*{mono}" if mono else f"({format_poly(coeff)})"
        else:
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# -- JSON interchange ----------------------------------------------------------


def series_tuple_to_json(g: SeriesTuple) -> dict:
    ring = g.ring
    return {
        "num_vars": g.num_vars,
        "trunc_degree": g.trunc_degree,
        "parameters": list(ring.params) if not ring.is_rational else [],
        "components": [
            {
                "terms": [
                    {
                        "exponents": list(exps),
                        "coefficient": ring.coefficient_to_json(comp.terms[exps]),
                    }
                    for exps in sorted_exponents(comp.terms)
                ]
            }
            for comp in g
        ],
    }


def series_tuple_from_json(data) -> SeriesTuple:
    if not isinstance(data, dict):
        raise SchemaError("series tuple JSON must be an object")
    allowed = {"num_vars", "trunc_degree", "parameters", "components"}
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    for field in ("num_vars", "trunc_degree", "components"):
        if field not in data:
            raise SchemaError(f"missing field {field!r}")
    num_vars = data["num_vars"]
    trunc_degree = data["trunc_degree"]
    if not isinstance(num_vars, int) or num_vars < 1:
        raise SchemaError(f"bad num_vars: {num_vars!r}")
    if not isinstance(trunc_degree, int) or trunc_degree < 1:
        raise SchemaError(f"bad trunc_degree: {trunc_degree!r}")
    params = data.get("parameters", [])
    if params:
        if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
            raise SchemaError(f"bad parameters: {params!r}")
        ring = CoefficientRing.polynomials(params)
    else:
        ring = RATIONALS
    if not isinstance(data["components"], list) or not data["components"]:
        raise SchemaError("components must be a non-empty list")
    components = []
    for comp in data["components"]:
        if not isinstance(comp, dict) or set(comp) != {"terms"}:
            raise SchemaError(f"bad component object: {comp!r}")
        terms = {}
        if not isinstance(comp["terms"], list):
            raise SchemaError("terms must be a list")
        for term in comp["terms"]:
            if not isinstance(term, dict) or set(term) != {"exponents", "coefficient"}:
                raise SchemaError(f"bad term object: {term!r}")
            exps = term["exponents"]
            if (
                not isinstance(exps, list)
                or len(exps) != num_vars
                or not all(isinstance(e, int) and e >= 0 for e in exps)
            ):
                raise SchemaError(f"bad exponent vector: {exps!r}")
            if sum(exps) > trunc_degree:
                raise SchemaError(
                    f"term degree {sum(exps)} exceeds trunc_degree {trunc_degree}"
                )
            key = tuple(exps)
            if key in terms:
                raise SchemaError(f"duplicate exponent vector: {exps!r}")
            terms[key] = ring.coefficient_from_json(term["coefficient"])
        components.append(Series(num_vars, trunc_degree, ring, terms))
    return SeriesTuple(tuple(components))


def series_to_json(f: Series) -> dict:
    return series_tuple_to_json(SeriesTuple((f,)))


def series_from_json(data) -> Series:
    g = series_tuple_from_json(data)
    if len(g) != 1:
        raise SchemaError(f"expected a single component, got {len(g)}")
    return g[0]

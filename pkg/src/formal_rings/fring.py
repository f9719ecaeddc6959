"""Formal rings: a compatible multiplication on top of a formal group law.

The same logarithm that produces the addition law also produces

    mul(x, y) = G_inv(G_1(x)*G_1(y), ..., G_n(x)*G_n(y))

and the pair passes the associativity/distributivity axioms.  This module
also houses the scaled multiplications mul_a = G_inv(G(x)*a*G(y)) (all
compatible with the same addition law), homomorphisms between rings, base
change along a parameter evaluation, and the heuristic approximation of the
multiplicative unit G_inv(1).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidParameterError,
    NonConvergenceError,
    PrecisionError,
    ShapeMismatchError,
)
from .fglaw import (
    FormalGroup,
    VerificationReport,
    _at_degree,
    _compare_tuples,
    law_from_log,
    x_block,
    y_block,
)
from .mvps import (
    Series,
    SeriesTuple,
    compose_tuple,
    differentiate,
    invert_tuple,
)
from .scalars import eval_params, RATIONALS


@dataclass(frozen=True)
class FormalRing:
    """Addition law + compatible multiplication over one coefficient ring."""

    dim: int
    add_law: FormalGroup
    mul_law: SeriesTuple  # n components in 2n variables
    log: SeriesTuple | None = None

    def __post_init__(self):
        if self.mul_law.num_vars != 2 * self.dim or len(self.mul_law) != self.dim:
            raise ShapeMismatchError(
                f"mul_law must have {self.dim} components in {2 * self.dim} variables"
            )
        if (
            self.mul_law.trunc_degree != self.add_law.trunc_degree
            or self.mul_law.ring != self.add_law.ring
        ):
            raise ShapeMismatchError(
                "addition and multiplication laws must share degree and ring"
            )

    @property
    def phi(self):
        return self.add_law.law

    @property
    def psi(self):
        return self.mul_law

    @property
    def trunc_degree(self):
        return self.mul_law.trunc_degree

    @property
    def ring(self):
        return self.mul_law.ring


@dataclass(frozen=True)
class RingHomomorphism:
    """A zero-at-origin series tuple intertwining both laws of two rings."""

    map: SeriesTuple  # n components in n variables
    source: FormalRing
    target: FormalRing

    @property
    def is_strict(self):
        """True when the linear part is the identity matrix."""
        n = self.map.num_vars
        ring = self.map.ring
        one, zero = ring.one(), ring.zero()
        for i, comp in enumerate(self.map):
            for j in range(n):
                unit = tuple(1 if k == j else 0 for k in range(n))
                expected = one if i == j else zero
                if comp.terms.get(unit, zero) != expected:
                    return False
        return True


def product_from_log(log: SeriesTuple, exp: SeriesTuple | None = None) -> FormalRing:
    """Build the full formal ring of a logarithm with a single inversion."""
    n = log.num_vars
    if exp is None:
        exp = invert_tuple(log)
    group = law_from_log(log, exp=exp)
    gx = x_block(log, 2 * n)
    gy = y_block(log, 2 * n)
    products = SeriesTuple(tuple(gx[i] * gy[i] for i in range(n)))
    mul = compose_tuple(exp, products)
    return FormalRing(dim=n, add_law=group, mul_law=mul, log=log)


def psi_scaled(log: SeriesTuple, a, exp: SeriesTuple | None = None) -> FormalRing:
    """The a-scaled ring: same addition law, multiplication G_inv(G(x) a G(y))."""
    n = log.num_vars
    if exp is None:
        exp = invert_tuple(log)
    a = log.ring.embed(a)
    group = law_from_log(log, exp=exp)
    gx = x_block(log, 2 * n)
    gy = y_block(log, 2 * n)
    products = SeriesTuple(tuple((gx[i] * gy[i]).scale(a) for i in range(n)))
    mul = compose_tuple(exp, products)
    return FormalRing(dim=n, add_law=group, mul_law=mul, log=log)


def verify_ring_axioms(ring_obj: FormalRing, degree: int | None = None) -> VerificationReport:
    """Check multiplication associativity/commutativity, distributivity, and
    absorption of zero, all as exact coefficient identities."""
    phi, D = _at_degree(ring_obj.phi, degree)
    psi, _ = _at_degree(ring_obj.psi, degree)
    n = phi.num_vars // 2
    ring = phi.ring
    report = VerificationReport(max_degree=D)
    failures = report.failures
    total = 3 * n

    ident3 = SeriesTuple.identity(total, D, ring)
    x3 = tuple(ident3[:n])
    z3 = tuple(ident3[2 * n:])
    phi_yz = SeriesTuple(tuple(c.embed(total, tuple(range(n, 3 * n))) for c in phi))
    psi_xy = SeriesTuple(tuple(c.embed(total, tuple(range(2 * n))) for c in psi))
    psi_yz = SeriesTuple(tuple(c.embed(total, tuple(range(n, 3 * n))) for c in psi))
    xz_map = tuple(range(n)) + tuple(range(2 * n, 3 * n))
    psi_xz = SeriesTuple(tuple(c.embed(total, xz_map) for c in psi))

    # mul associativity
    lhs = compose_tuple(psi, SeriesTuple(tuple(psi_xy) + z3))
    rhs = compose_tuple(psi, SeriesTuple(x3 + tuple(psi_yz)))
    _compare_tuples("mul_associativity", lhs, rhs, failures)
    report.checked.append("mul_associativity")

    # left distributivity: mul(x, add(y,z)) = add(mul(x,y), mul(x,z))
    lhs = compose_tuple(psi, SeriesTuple(x3 + tuple(phi_yz)))
    rhs = compose_tuple(phi, SeriesTuple(tuple(psi_xy) + tuple(psi_xz)))
    _compare_tuples("left_distributivity", lhs, rhs, failures)
    report.checked.append("left_distributivity")

    # right distributivity: mul(add(x,y), z) = add(mul(x,z), mul(y,z))
    phi_xy = SeriesTuple(tuple(c.embed(total, tuple(range(2 * n))) for c in phi))
    lhs = compose_tuple(psi, SeriesTuple(tuple(phi_xy) + z3))
    rhs = compose_tuple(phi, SeriesTuple(tuple(psi_xz) + tuple(psi_yz)))
    _compare_tuples("right_distributivity", lhs, rhs, failures)
    report.checked.append("right_distributivity")

    # commutativity of mul
    swap = tuple(range(n, 2 * n)) + tuple(range(n))
    swapped = psi.embed(2 * n, swap)
    _compare_tuples("mul_commutativity", psi, swapped, failures)
    report.checked.append("mul_commutativity")

    # mul(x, 0) = 0
    xs = SeriesTuple.identity(2 * n, D, ring)[:n]
    zeros = tuple(Series.zero(2 * n, D, ring) for _ in range(n))
    lhs = compose_tuple(psi, SeriesTuple(tuple(xs) + zeros))
    rhs = SeriesTuple(zeros)
    _compare_tuples("zero_absorption", lhs, rhs, failures)
    report.checked.append("zero_absorption")

    return report


def sigma(log1: SeriesTuple, log2: SeriesTuple, a=1) -> RingHomomorphism:
    """The canonical map G2_inv(a * G1(x)) between two logarithms' rings.

    With a = 1 this is a strict isomorphism of the constructed rings.
    """
    if (
        log1.num_vars != log2.num_vars
        or log1.trunc_degree != log2.trunc_degree
        or log1.ring != log2.ring
    ):
        raise ShapeMismatchError("logs must share dimension, degree, and ring")
    exp2 = invert_tuple(log2)
    a = log1.ring.embed(a)
    mapping = compose_tuple(exp2, log1.scale(a))
    return RingHomomorphism(
        map=mapping,
        source=product_from_log(log1),
        target=product_from_log(log2, exp=exp2),
    )


def verify_homomorphism(hom: RingHomomorphism, degree: int | None = None) -> VerificationReport:
    """Check that the map intertwines both composition laws."""
    n = hom.map.num_vars
    phi1, D = _at_degree(hom.source.phi, degree)
    psi1, _ = _at_degree(hom.source.psi, degree)
    phi2, _ = _at_degree(hom.target.phi, degree)
    psi2, _ = _at_degree(hom.target.psi, degree)
    mapping = SeriesTuple(tuple(c.truncate(D) for c in hom.map))
    report = VerificationReport(max_degree=D)

    map_x = x_block(mapping, 2 * n)
    map_y = y_block(mapping, 2 * n)
    both = SeriesTuple(tuple(map_x) + tuple(map_y))

    lhs = compose_tuple(mapping, phi1)
    rhs = compose_tuple(phi2, both)
    _compare_tuples("add_law_intertwined", lhs, rhs, report.failures)
    report.checked.append("add_law_intertwined")

    lhs = compose_tuple(mapping, psi1)
    rhs = compose_tuple(psi2, both)
    _compare_tuples("mul_law_intertwined", lhs, rhs, report.failures)
    report.checked.append("mul_law_intertwined")

    return report


def map_base(assignment, ring_obj: FormalRing) -> FormalRing:
    """Evaluate every coefficient at a parameter assignment (base change to Q)."""
    if ring_obj.ring.is_rational:
        raise InvalidParameterError("ring already has rational coefficients")
    assignment = {k: Fraction(v) for k, v in assignment.items()}

    def mapper(tup):
        return tup.map_coefficients(lambda c: eval_params(c, assignment), RATIONALS)

    phi = mapper(ring_obj.phi)
    psi = mapper(ring_obj.psi)
    log = mapper(ring_obj.log) if ring_obj.log is not None else None
    group = FormalGroup(dim=ring_obj.dim, law=phi, log=log)
    return FormalRing(dim=ring_obj.dim, add_law=group, mul_law=psi, log=log)


def approx_unit(log, iterations: int = 30, tolerance=Fraction(1, 10**6)) -> Fraction:
    """Rational approximation of the root of G(x) = 1 by Newton iteration.

    Heuristic by design: it works on the truncated polynomial, starts at 1/2,
    and only promises that the residual |G(x) - 1| shrinks monotonically until
    it falls below ``tolerance``.  Intermediate iterates are rounded to bounded
    denominators to keep exact arithmetic from ballooning; the rounding level
    (10^40) sits far below any meaningful tolerance.

    Raises ZeroDivisionError when the derivative vanishes at an iterate and
    NonConvergenceError when the budget runs out or progress stalls.
    """
    if isinstance(log, SeriesTuple):
        if len(log) != 1 or log.num_vars != 1:
            raise ShapeMismatchError("unit approximation is one-dimensional only")
        series = log[0]
    else:
        series = log
    if series.num_vars != 1:
        raise ShapeMismatchError("unit approximation is one-dimensional only")
    if series.trunc_degree < 3:
        raise PrecisionError("need truncation degree >= 3")
    if not series.ring.is_rational:
        raise InvalidParameterError("unit approximation needs rational coefficients")

    deriv = differentiate(series)
    x = Fraction(1, 2)
    residual = series.evaluate([x]) - 1
    if abs(residual) <= tolerance:
        return x
    for _ in range(iterations):
        slope = deriv.evaluate([x])
        if not slope:
            raise ZeroDivisionError("derivative vanished at an iterate")
        x = (x - residual / slope).limit_denominator(10**40)
        new_residual = series.evaluate([x]) - 1
        if abs(new_residual) <= tolerance:
            return x
        if abs(new_residual) >= abs(residual):
            raise NonConvergenceError(
                f"residual stalled at {new_residual} (was {residual})"
            )
        residual = new_residual
    raise NonConvergenceError(
        f"residual {residual} still above tolerance after {iterations} iterations"
    )

"""Formal group laws built from a group logarithm, plus axiom verification.

Given an n-component logarithm G (zero constant term, exactly invertible
linear part), the addition law is

    law(x, y) = G_inv(G(x) + G(y))

computed in 2n variables; the first n indices form the x block, the last n
the y block.  Axiom checks compare exact coefficients up to the truncation
degree and report mismatches as data, never as exceptions.
"""

from dataclasses import dataclass, field

from .errors import PrecisionError, ShapeMismatchError
from .mvps import (
    Series,
    SeriesTuple,
    compose,
    compose_tuple,
    invert_tuple,
    sorted_exponents,
)


@dataclass(frozen=True)
class FormalGroup:
    """An n-dimensional formal group law, optionally with its logarithm."""

    dim: int
    law: SeriesTuple  # n components in 2n variables
    log: SeriesTuple | None = None

    def __post_init__(self):
        if self.law.num_vars != 2 * self.dim or len(self.law) != self.dim:
            raise ShapeMismatchError(
                f"law must have {self.dim} components in {2 * self.dim} variables"
            )
        if self.log is not None and (
            self.log.num_vars != self.dim or len(self.log) != self.dim
        ):
            raise ShapeMismatchError(
                f"log must have {self.dim} components in {self.dim} variables"
            )

    @property
    def trunc_degree(self):
        return self.law.trunc_degree

    @property
    def ring(self):
        return self.law.ring


@dataclass(frozen=True)
class Failure:
    """One mismatching coefficient in an identity check."""

    identity: str
    exponents: tuple
    lhs: object
    rhs: object


@dataclass
class VerificationReport:
    checked: list[str] = field(default_factory=list)
    max_degree: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def merge(self, other):
        self.checked.extend(other.checked)
        self.max_degree = max(self.max_degree, other.max_degree)
        self.failures.extend(other.failures)
        return self

    def summary(self):
        if self.ok:
            return f"{len(self.checked)} identities OK up to degree {self.max_degree}"
        return (
            f"{len(self.failures)} failing coefficients across "
            f"{len({f.identity for f in self.failures})} identities"
        )


def x_block(g: SeriesTuple, total_vars: int) -> SeriesTuple:
    """Embed an n-variable tuple as functions of the first block."""
    n = g.num_vars
    return g.embed(total_vars, tuple(range(n)))


def y_block(g: SeriesTuple, total_vars: int) -> SeriesTuple:
    n = g.num_vars
    return g.embed(total_vars, tuple(range(n, 2 * n)))


def z_block(g: SeriesTuple, total_vars: int) -> SeriesTuple:
    n = g.num_vars
    return g.embed(total_vars, tuple(range(2 * n, 3 * n)))


def law_from_log(log: SeriesTuple, exp: SeriesTuple | None = None) -> FormalGroup:
    """Addition law G_inv(G(x) + G(y)) from a logarithm.

    ``exp`` may pass a precomputed compositional inverse of ``log`` so
    several constructions can share one inversion.
    """
    n, D, ring = log.num_vars, log.trunc_degree, log.ring
    if len(log) != n:
        raise ShapeMismatchError("logarithm must be an n-component tuple in n variables")
    if exp is None:
        exp = invert_tuple(log)
    gx = x_block(log, 2 * n)
    gy = y_block(log, 2 * n)
    total = SeriesTuple(tuple(gx[i] + gy[i] for i in range(n)))
    law = compose_tuple(exp, total)
    return FormalGroup(dim=n, law=law, log=log)


def group_inverse_series(log: SeriesTuple, exp: SeriesTuple | None = None) -> SeriesTuple:
    """The series i(x) with law(x, i(x)) = 0, namely G_inv(-G(x))."""
    if exp is None:
        exp = invert_tuple(log)
    negated = SeriesTuple(tuple(-c for c in log))
    return compose_tuple(exp, negated)


def rho(log: SeriesTuple, a, exp: SeriesTuple | None = None) -> SeriesTuple:
    """The module action G_inv(a * G(x)) for a ring element a."""
    if exp is None:
        exp = invert_tuple(log)
    a = log.ring.embed(a)
    return compose_tuple(exp, log.scale(a))


def _compare_tuples(identity, lhs: SeriesTuple, rhs: SeriesTuple, failures):
    n = len(lhs)
    for i in range(n):
        left, right = lhs[i], rhs[i]
        exps_seen = set(left.terms) | set(right.terms)
        if not exps_seen:
            continue
        zero = left.ring.zero()
        for exps in sorted_exponents(exps_seen):
            lc = left.terms.get(exps, zero)
            rc = right.terms.get(exps, zero)
            if lc != rc:
                name = identity if n == 1 else f"{identity}[{i + 1}]"
                failures.append(Failure(name, exps, lc, rc))


def _at_degree(law: SeriesTuple, degree):
    if degree is None:
        return law, law.trunc_degree
    if degree > law.trunc_degree:
        raise PrecisionError(
            f"cannot verify at degree {degree}: law only stored to {law.trunc_degree}"
        )
    return law.truncate(degree), degree


def verify_group_axioms(group: FormalGroup, degree: int | None = None) -> VerificationReport:
    """Check the unit, commutativity, and associativity identities exactly.

    Mismatching coefficients are collected in the report; nothing raises.
    """
    law, D = _at_degree(group.law, degree)
    n = law.num_vars // 2
    ring = law.ring
    report = VerificationReport(max_degree=D)
    failures = report.failures

    xs = SeriesTuple.identity(2 * n, D, ring)[:n]
    zeros = tuple(Series.zero(2 * n, D, ring) for _ in range(n))
    x_vars = SeriesTuple(tuple(xs))

    # law(x, 0) = x and law(0, x) = x
    right_zero = SeriesTuple(tuple(xs) + zeros)
    lhs = compose_tuple(law, right_zero)
    _compare_tuples("right_unit", lhs, x_vars, failures)
    report.checked.append("right_unit")

    left_zero = SeriesTuple(zeros + tuple(xs))
    lhs = compose_tuple(law, left_zero)
    _compare_tuples("left_unit", lhs, x_vars, failures)
    report.checked.append("left_unit")

    # commutativity: swap the two blocks
    swap = tuple(range(n, 2 * n)) + tuple(range(n))
    swapped = law.embed(2 * n, swap)
    _compare_tuples("commutativity", law, swapped, failures)
    report.checked.append("commutativity")

    # associativity in 3n variables
    total = 3 * n
    law_xy = SeriesTuple(tuple(c.embed(total, tuple(range(2 * n))) for c in law))
    law_yz = SeriesTuple(
        tuple(c.embed(total, tuple(range(n, 3 * n))) for c in law)
    )
    z_vars = SeriesTuple.identity(total, D, ring)[2 * n:]
    x_vars3 = SeriesTuple.identity(total, D, ring)[:n]
    lhs = compose_tuple(law, SeriesTuple(tuple(law_xy) + tuple(z_vars)))
    rhs = compose_tuple(law, SeriesTuple(tuple(x_vars3) + tuple(law_yz)))
    _compare_tuples("associativity", lhs, rhs, failures)
    report.checked.append("associativity")

    return report

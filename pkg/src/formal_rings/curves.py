"""Curves over an n-dimensional formal ring and their order filtration.

A curve is an n-tuple of one-variable series vanishing at 0.  Substituting a
pair of curves into the ring's two laws makes the set of curves a ring; the
minimal t-order across components filters it by subrings, and that level
function is the whole computable content of the induced topology here.
"""

from dataclasses import dataclass

from .errors import ConstantTermError, ShapeMismatchError
from .fglaw import group_inverse_series
from .fring import FormalRing
from .mvps import Series, SeriesTuple, compose_tuple
from .scalars import is_zero_coefficient


@dataclass(frozen=True)
class Curve:
    """n one-variable series, all vanishing at the origin, sharing one degree."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ShapeMismatchError("a curve needs at least one component")
        first = self.components[0]
        for comp in self.components:
            if comp.num_vars != 1:
                raise ShapeMismatchError("curve components are one-variable series")
            first._check_shape(comp)
            if not is_zero_coefficient(comp.constant_term()):
                raise ConstantTermError("curves vanish at the origin")

    @property
    def dim(self):
        return len(self.components)

    @property
    def trunc_degree(self):
        return self.components[0].trunc_degree

    @property
    def ring(self):
        return self.components[0].ring

    def as_tuple(self) -> SeriesTuple:
        return SeriesTuple(self.components)

    @classmethod
    def zero(cls, dim, trunc_degree, ring):
        return cls(tuple(Series.zero(1, trunc_degree, ring) for _ in range(dim)))

    def is_zero(self):
        return all(c.is_zero() for c in self.components)


def _check_compatible(ring_obj: FormalRing, *curves):
    for curve in curves:
        if curve.dim != ring_obj.dim:
            raise ShapeMismatchError(
                f"curve dimension {curve.dim} does not match ring dimension {ring_obj.dim}"
            )
        if curve.trunc_degree != ring_obj.trunc_degree:
            raise ShapeMismatchError(
                "curve and ring truncation degrees must match exactly"
            )
        if curve.ring != ring_obj.ring:
            raise ShapeMismatchError("curve and ring coefficient rings differ")


def curve_add(ring_obj: FormalRing, curve1: Curve, curve2: Curve) -> Curve:
    """Substitute both curves into the addition law."""
    _check_compatible(ring_obj, curve1, curve2)
    inner = SeriesTuple(curve1.components + curve2.components)
    return Curve(compose_tuple(ring_obj.phi, inner).components)


def curve_mul(ring_obj: FormalRing, curve1: Curve, curve2: Curve) -> Curve:
    """Substitute both curves into the multiplication law."""
    _check_compatible(ring_obj, curve1, curve2)
    inner = SeriesTuple(curve1.components + curve2.components)
    return Curve(compose_tuple(ring_obj.psi, inner).components)


def curve_neg(ring_obj: FormalRing, curve: Curve) -> Curve:
    """The additive inverse, via the group-inverse series of the ring's log."""
    _check_compatible(ring_obj, curve)
    if ring_obj.log is None:
        raise ShapeMismatchError("ring carries no logarithm; cannot negate curves")
    inverse = group_inverse_series(ring_obj.log)
    return Curve(compose_tuple(inverse, curve.as_tuple()).components)


def filtration_level(curve: Curve):
    """The largest m with the curve in the m-th filtration subring.

    Equals the minimal t-order over components; math.inf for the zero curve.
    """
    return min(c.order() for c in curve.components)

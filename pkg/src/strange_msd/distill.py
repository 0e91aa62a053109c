"""Distillation of the qutrit strange state from simple weight enumerators.

A twirled noisy strange state has Wigner function ``x`` at the origin and
``y`` elsewhere, with ``3x = -1 + 4 eps/3`` and ``6y = 1 - eps/3``. Projecting
``n`` copies onto an ``[[n, 1]]`` code and decoding gives

    eps' = 3 (3 A(z) + B(z)) / (4 B(z)),   z = (3 - eps) / (8 eps - 6).

Everything here is exact: enumerators have integer coefficients and
evaluation points are Fractions. Only the threshold is reported as a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .enumerators import WeightEnumerator, at_minus_half, eval_homogeneous
from .errors import (
    InconsistentEnumeratorError,
    InvalidInputError,
    NotDistillableError,
    ZeroSuccessProbabilityError,
)

# tighter than the 1e-9 reporting precision so derived quantities (z at the root) stay accurate
THRESHOLD_TOL = Fraction(1, 10**12)
WIGNER_BOUNDARY = Fraction(3, 4)


def _rational(eps) -> Fraction:
    return eps if isinstance(eps, Fraction) else Fraction(eps)


@dataclass(frozen=True)
class StrangeParams:
    epsilon: Fraction
    x: Fraction
    y: Fraction


def strange_params(epsilon) -> StrangeParams:
    eps = _rational(epsilon)
    if not 0 <= eps <= 1:
        raise InvalidInputError(f"epsilon={eps} outside [0, 1]")
    x = (-1 + Fraction(4, 3) * eps) / 3
    y = (1 - eps / 3) / 6
    return StrangeParams(eps, x, y)


def z_of_eps(epsilon) -> Fraction:
    eps = _rational(epsilon)
    den = 8 * eps - 6
    if den == 0:
        raise ZeroDivisionError("z(eps) has a pole at eps = 3/4")
    return (3 - eps) / den


@dataclass(frozen=True)
class RationalFunction:
    """``num(eps) / den(eps)`` with integer coefficients, ascending degree."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        if not poly.trim(self.den):
            raise ZeroDivisionError("denominator is identically zero")

    def __call__(self, eps):
        return Fraction(poly.evaluate(self.num, _rational(eps)),
                        poly.evaluate(self.den, _rational(eps)))

    def reduced(self) -> RationalFunction:
        """Lowest terms, coprime integer coefficients, positive top denominator coefficient."""
        g = poly.gcd_poly(self.num, self.den)
        num, den = self.num, self.den
        if len(g) > 1:
            num, den = poly.exact_div(num, g), poly.exact_div(den, g)
        num = [Fraction(c) for c in num]
        den = [Fraction(c) for c in den]
        joint = poly.primitive(den + num)
        den_i, num_i = joint[:len(den)], joint[len(den):]
        if den_i[-1] < 0:
            den_i, num_i = [-c for c in den_i], [-c for c in num_i]
        return RationalFunction(poly.trim(num_i), poly.trim(den_i))

    def same_function(self, other: RationalFunction) -> bool:
        return poly.mul(self.num, other.den) == poly.mul(other.num, self.den)


def _homogenized(a: WeightEnumerator) -> tuple:
    """``(8 eps - 6)**n * a(z(eps))`` as an integer polynomial in eps."""
    n = a.n
    top, bottom = (3, -1), (-6, 8)
    out: tuple = ()
    for w, c in enumerate(a.coeffs):
        if c:
            term = poly.mul(poly.power(top, w), poly.power(bottom, n - w))
            out = poly.add(out, poly.scale(term, c))
    return out


def distillation_map(a: WeightEnumerator, b: WeightEnumerator, n: int | None = None
                     ) -> RationalFunction:
    """eps' as an exact rational function of eps, in lowest terms."""
    n = a.n if n is None else n
    if a.n != n or b.n != n:
        raise InvalidInputError("enumerator lengths do not match n")
    ah, bh = _homogenized(a), _homogenized(b)
    num = poly.scale(poly.add(poly.scale(ah, 3), bh), 3)
    den = poly.scale(bh, 4)
    return RationalFunction(num, den).reduced()


@dataclass(frozen=True)
class Conditions:
    b_nonzero: bool
    order0: bool
    order1: bool
    order2: bool
    a_at: Fraction
    b_at: Fraction
    da_at: Fraction
    db_at: Fraction
    d2a_at: Fraction
    d2b_at: Fraction


def check_conditions(a: WeightEnumerator, b: WeightEnumerator, n: int | None = None
                     ) -> Conditions:
    """Exact tests at ``z = -1/2`` for B != 0 and the vanishing of ``3A + B`` and derivatives."""
    vals = [at_minus_half(e, d) for d in range(3) for e in (a, b)]
    a0, b0, a1, b1, a2, b2 = vals
    return Conditions(
        b_nonzero=b0 != 0,
        order0=3 * a0 + b0 == 0,
        order1=3 * a1 + b1 == 0,
        order2=3 * a2 + b2 == 0,
        a_at=a0, b_at=b0, da_at=a1, db_at=b1, d2a_at=a2, d2b_at=b2,
    )


def noise_exponent(fmap: RationalFunction) -> tuple[int, Fraction]:
    """Order of vanishing of eps' at 0 and the coefficient of that power."""
    if fmap.den[0] == 0:
        raise NotDistillableError("eps' has a pole at eps = 0")
    delta = poly.order_at_zero(fmap.num)
    if delta is None:
        raise NotDistillableError("eps' vanishes identically")
    return delta, Fraction(fmap.num[delta], fmap.den[0])


def _excess_sign_near_zero(diff: tuple, den: tuple) -> int:
    lo_num = diff[poly.order_at_zero(diff)]
    lo_den = den[poly.order_at_zero(den)]
    return poly.sign(lo_num) * poly.sign(lo_den)


def threshold_bracket(fmap: RationalFunction, tol=THRESHOLD_TOL) -> tuple[Fraction, Fraction]:
    """Exact bracket ``(lo, hi)`` around the threshold.

    The threshold is the smallest root of ``eps' - eps`` in ``(0, 3/4)``;
    0 when eps' exceeds eps right of 0, 3/4 when eps' stays below eps.
    """
    diff = poly.sub(fmap.num, poly.shift(fmap.den, 1))
    if not diff:
        return Fraction(0), Fraction(0)
    if _excess_sign_near_zero(diff, fmap.den) > 0:
        return Fraction(0), Fraction(0)
    den_seq = poly.sturm_sequence(poly.squarefree(poly.trim(fmap.den[poly.order_at_zero(fmap.den):])))
    if poly.count_roots(den_seq, 0, WIGNER_BOUNDARY):
        raise InconsistentEnumeratorError("eps' has a pole inside (0, 3/4)")
    core = diff[poly.order_at_zero(diff):]
    bracket = poly.smallest_root(core, 0, WIGNER_BOUNDARY, tol)
    if bracket is None or bracket[0] >= WIGNER_BOUNDARY:
        return WIGNER_BOUNDARY, WIGNER_BOUNDARY
    lo, hi = bracket
    if hi == WIGNER_BOUNDARY and poly.evaluate(core, WIGNER_BOUNDARY) == 0:
        # the only crossing is the boundary itself
        return WIGNER_BOUNDARY, WIGNER_BOUNDARY
    return lo, hi


def threshold(fmap: RationalFunction, tol=THRESHOLD_TOL) -> float:
    lo, hi = threshold_bracket(fmap, tol)
    return float((lo + hi) / 2)


def excess_sign(fmap: RationalFunction, eps) -> int:
    """Exact sign of ``eps'(eps) - eps``."""
    eps = _rational(eps)
    return poly.sign(fmap(eps) - eps)


def success_probability(b: WeightEnumerator, n: int | None, k: int | None, epsilon) -> Fraction:
    """``w(S_perp; x, y)``: chance that n noisy copies land in the code space."""
    n = b.n if n is None else n
    if b.n != n:
        raise InvalidInputError("enumerator length does not match n")
    if k is not None and b.total() != 3 ** (n + k):
        raise InconsistentEnumeratorError(
            f"B(1) = {b.total()} but a dual of an [[{n},{k}]] code has 3^{n + k} elements")
    p = strange_params(epsilon)
    nu = eval_homogeneous(b, p.x, p.y)
    if not 0 <= nu <= 1:
        raise InconsistentEnumeratorError(f"success probability {nu} outside [0, 1]")
    return nu


@dataclass(frozen=True)
class OutputState:
    x: Fraction
    y: Fraction
    epsilon: Fraction


def output_state(a: WeightEnumerator, b: WeightEnumerator, epsilon) -> OutputState:
    """Wigner parameters of the decoded output for input noise ``epsilon``."""
    p = strange_params(epsilon)
    nu = eval_homogeneous(b, p.x, p.y)
    if nu == 0:
        raise ZeroSuccessProbabilityError(f"success probability vanishes at eps={p.epsilon}")
    x_out = eval_homogeneous(a, p.x, p.y) / nu
    y_out = (1 - x_out) / 8
    return OutputState(x_out, y_out, 3 * (x_out + 2 * y_out))


@dataclass(frozen=True)
class DistillationProfile:
    map: RationalFunction
    b_at_minus_half: Fraction
    distills: bool
    delta: int | None
    leading: Fraction | None
    threshold: float
    success_at_zero: Fraction
    conditions: Conditions

    @property
    def classification(self) -> str:
        if not self.distills:
            return "none"
        if self.delta == 1:
            return "linear"
        return f"order-{self.delta}"


def profile(a: WeightEnumerator, b: WeightEnumerator, k: int | None = 1) -> DistillationProfile:
    """Run every check and summary on one (A, B) pair."""
    n = a.n
    cond = check_conditions(a, b, n)
    fmap = distillation_map(a, b, n)
    try:
        delta, leading = noise_exponent(fmap)
    except NotDistillableError:
        delta, leading = None, None
    distills = bool(cond.b_nonzero and delta is not None
                    and (delta >= 2 or (delta == 1 and leading < 1)))
    return DistillationProfile(
        map=fmap,
        b_at_minus_half=cond.b_at,
        distills=distills,
        delta=delta,
        leading=leading,
        threshold=threshold(fmap),
        success_at_zero=success_probability(b, n, k, 0),
        conditions=cond,
    )

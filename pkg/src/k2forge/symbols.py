"""Function-field elements, divisors, tame symbols and K2 certificates.

The tame symbol of {f, h} at a rational place P is the unit

    T_P({f,h}) = (-1)^(ord f * ord h) * (f^(ord h) / h^(ord f))(P),

an exact nonzero rational at rational places.  Since the value of an
ord-zero quotient at the place equals the ratio of leading series
coefficients, one branch expansion per constituent polynomial is all
the evaluation ever needs.

Orders of vanishing at affine points are computed twice on purpose:
through the intersection-multiplicity reduction and through the series
valuation; a mismatch raises VerificationError, because it would mean
the ord bookkeeping (and so the certificate) is wrong.

An element of K2 of the function field is an integer combination of
symbol pairs; `verify_k2t` certifies membership in the tame kernel over
the declared (rational) support and reports the product of all tame
values, which must equal 1 independently by the reciprocity law.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .bipoly import BiPoly
from .branches import (Branch, _eval_series, branch_at_affine,
                       branches_at_infinity)
from .curves import CurvePoint, PlaneCurve, fulton_multiplicity, rational_common_zeros
from .errors import (NonRationalSupportError, PreconditionError,
                     VerificationError)
from .rationals import rat, rat_str
from .series import default_order


# ---------------------------------------------------------------------------
# function field elements
# ---------------------------------------------------------------------------

class FnElt:
    """Element of Q(C), kept in factored form scalar * prod poly_i^e_i.

    Orders of vanishing and leading series coefficients are additive and
    multiplicative over the factors, so every evaluation decomposes into
    work on the small building-block polynomials (which the engine
    caches).  Numerator/denominator products are materialized lazily for
    membership tests and serialization.
    """

    __slots__ = ("curve", "scalar", "factors", "_num", "_den")

    def __init__(self, curve: PlaneCurve, num: BiPoly, den: BiPoly = None):
        den = BiPoly.const(1) if den is None else den
        if den.is_zero():
            raise PreconditionError("zero denominator")
        if num.is_zero() or _vanishes_on_curve(curve, num):
            raise PreconditionError("zero function")
        if _vanishes_on_curve(curve, den):
            raise PreconditionError("denominator vanishes on the curve")
        self.curve = curve
        self.scalar = Fraction(1)
        factors = []
        for poly, e in ((num, 1), (den, -1)):
            if poly.total_degree == 0:
                self.scalar *= poly.terms[(0, 0)] ** e
            else:
                factors.append((poly, e))
        self.factors = tuple(factors)
        self._num = None
        self._den = None

    @classmethod
    def _make(cls, curve: PlaneCurve, scalar: Fraction, factors) -> "FnElt":
        if scalar == 0:
            raise PreconditionError("zero function")
        obj = cls.__new__(cls)
        obj.curve = curve
        obj.scalar = scalar
        merged: List[Tuple[BiPoly, int]] = []
        for poly, e in factors:
            if e == 0:
                continue
            for k, (q, eq) in enumerate(merged):
                if q is poly or q == poly:
                    merged[k] = (q, eq + e)
                    break
            else:
                merged.append((poly, e))
        obj.factors = tuple((p, e) for p, e in merged if e != 0)
        obj._num = None
        obj._den = None
        return obj

    # -- lazily materialized numerator / denominator -------------------
    @property
    def num(self) -> BiPoly:
        if self._num is None:
            prod = BiPoly.const(self.scalar.numerator)
            for poly, e in self.factors:
                if e > 0:
                    prod = prod * poly**e
            self._num = prod
        return self._num

    @property
    def den(self) -> BiPoly:
        if self._den is None:
            prod = BiPoly.const(self.scalar.denominator)
            for poly, e in self.factors:
                if e < 0:
                    prod = prod * poly**(-e)
            self._den = prod
        return self._den

    # -- arithmetic in the function field --------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            if q == 0:
                raise PreconditionError("zero function")
            return FnElt._make(self.curve, self.scalar * q, self.factors)
        self._same_curve(other)
        return FnElt._make(self.curve, self.scalar * other.scalar,
                           self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            if q == 0:
                raise PreconditionError("division by zero")
            return FnElt._make(self.curve, self.scalar / q, self.factors)
        self._same_curve(other)
        return FnElt._make(self.curve, self.scalar / other.scalar,
                           self.factors + tuple((p, -e) for p, e in other.factors))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FnElt.constant(self.curve, other)
        self._same_curve(other)
        return self._combine(other, 1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FnElt.constant(self.curve, other)
        self._same_curve(other)
        return self._combine(other, -1)

    def _combine(self, other: "FnElt", sign: int) -> "FnElt":
        """f +- g with the common denominator kept in factored form."""
        new_num = self.num * other.den + other.num * self.den * sign
        if new_num.is_zero() or _vanishes_on_curve(self.curve, new_num):
            raise PreconditionError("zero function")
        den_factors = tuple((p, e) for p, e in self.factors if e < 0)
        den_factors += tuple((p, e) for p, e in other.factors if e < 0)
        scal = Fraction(1, self.scalar.denominator * other.scalar.denominator)
        return FnElt._make(self.curve, scal, ((new_num, 1),) + den_factors)

    def __pow__(self, n: int):
        if n == 0:
            return FnElt.constant(self.curve, 1)
        return FnElt._make(self.curve, self.scalar**n,
                           tuple((p, e * n) for p, e in self.factors))

    def inverse(self) -> "FnElt":
        return FnElt._make(self.curve, 1 / self.scalar,
                           tuple((p, -e) for p, e in self.factors))

    def _same_curve(self, other: "FnElt"):
        if other.curve is not self.curve:
            raise PreconditionError("function field elements live on different curves")

    @staticmethod
    def constant(curve: PlaneCurve, c) -> "FnElt":
        c = rat(c)
        if c == 0:
            raise PreconditionError("zero function")
        return FnElt._make(curve, c, ())

    @staticmethod
    def poly(curve: PlaneCurve, p: BiPoly) -> "FnElt":
        return FnElt(curve, p)

    def is_constant(self) -> bool:
        return not self.factors

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PreconditionError("not a constant function")
        return self.scalar

    def __repr__(self):
        if self.den == BiPoly.const(1):
            return f"FnElt({self.num.canonical()})"
        return f"FnElt(({self.num.canonical()}) / ({self.den.canonical()}))"


def _vanishes_on_curve(curve: PlaneCurve, p: BiPoly) -> bool:
    if p.is_zero():
        return True
    if p.total_degree < curve.degree:
        return False
    if p.degree_in("y") < curve.affine.degree_in("y"):
        # the curve polynomial is monic in y in every model used here
        return False
    return curve.affine.divides(p)


# ---------------------------------------------------------------------------
# divisors, symbols, elements
# ---------------------------------------------------------------------------

@dataclass
class Divisor:
    entries: Dict[CurvePoint, int] = field(default_factory=dict)

    def degree(self) -> int:
        return sum(self.entries.values())

    def nonzero(self) -> Dict[CurvePoint, int]:
        return {p: v for p, v in self.entries.items() if v}

    def pretty(self) -> str:
        parts = [f"{v}*({p.label()})" for p, v in sorted(self.nonzero().items(), key=lambda kv: kv[0].label())]
        return " + ".join(parts) if parts else "0"


@dataclass
class SymbolPair:
    f: FnElt
    h: FnElt
    coefficient: int = 1


@dataclass
class K2Element:
    terms: List[SymbolPair]
    declared_support: List[CurvePoint]
    name: str = ""

    def scaled(self, k: int) -> "K2Element":
        return K2Element(
            [SymbolPair(t.f, t.h, t.coefficient * k) for t in self.terms],
            list(self.declared_support),
            name=f"{k}*{self.name}" if self.name else "",
        )


@dataclass
class CertificateRow:
    point: CurvePoint
    pair_index: int
    coefficient: int
    ord_f: int
    ord_h: int
    value: Fraction  # T_P(pair)^coefficient


@dataclass
class Certificate:
    rows: List[CertificateRow]
    point_totals: Dict[CurvePoint, Fraction]
    product: Fraction
    verdict: str  # "PASS" | "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_jsonable(self) -> dict:
        return {
            "entries": [
                {
                    "point": row.point.label(),
                    "pair": row.pair_index,
                    "coefficient": row.coefficient,
                    "ord_f": row.ord_f,
                    "ord_h": row.ord_h,
                    "tame_value": rat_str(row.value),
                }
                for row in self.rows
            ],
            "point_totals": {p.label(): rat_str(v) for p, v in self.point_totals.items()},
            "product": rat_str(self.product),
            "verdict": self.verdict,
        }


@dataclass
class TorsionFunction:
    """fn with divisor m*(plus) - m*(minus); minus=None means the poles sit
    over the line at infinity (split over its branches)."""

    fn: FnElt
    plus: CurvePoint
    minus: Optional[CurvePoint]
    order: int


# ---------------------------------------------------------------------------
# the symbol engine (per-curve caching of branches)
# ---------------------------------------------------------------------------

class SymbolEngine:
    """Order/tame-symbol evaluator with cached branch expansions."""

    def __init__(self, curve: PlaneCurve):
        self.curve = curve
        self._affine: Dict[CurvePoint, Branch] = {}
        self._infinity: Optional[Dict[CurvePoint, Branch]] = None
        self._val_lead_cache: Dict[Tuple[int, CurvePoint], Tuple[int, Fraction]] = {}
        self._ord_cache: Dict[Tuple[int, CurvePoint], int] = {}
        self._keepalive: List[BiPoly] = []  # pins id()-keyed cache entries

    # -- branches -----------------------------------------------------
    def infinity_branches(self) -> List[Branch]:
        if self._infinity is None:
            self._infinity = {b.point: b for b in branches_at_infinity(self.curve)}
        return list(self._infinity.values())

    def branch(self, p: CurvePoint) -> Branch:
        if p.is_affine:
            br = self._affine.get(p)
            if br is None:
                br = branch_at_affine(self.curve, p)
                self._affine[p] = br
            return br
        self.infinity_branches()
        br = self._infinity.get(p)
        if br is None:
            raise PreconditionError(f"no rational branch {p.label()} on this curve")
        return br

    def infinity_points(self) -> List[CurvePoint]:
        return sorted((b.point for b in self.infinity_branches()),
                      key=lambda p: (p.x, p.y, p.branch))

    # -- series valuation / leading coefficient ------------------------
    def val_lead(self, poly: BiPoly, p: CurvePoint) -> Tuple[int, Fraction]:
        """Valuation and leading coefficient of poly along the branch at p."""
        if poly.is_zero():
            raise PreconditionError("zero function")
        if poly.total_degree == 0:
            return 0, poly.terms[(0, 0)]
        key = (id(poly), p)
        hit = self._val_lead_cache.get(key)
        if hit is not None:
            return hit
        out = self._val_lead_uncached(poly, p)
        self._val_lead_cache[key] = out
        self._keepalive.append(poly)
        return out

    def _val_lead_uncached(self, poly: BiPoly, p: CurvePoint) -> Tuple[int, Fraction]:
        br = self.branch(p)
        d = self.curve.degree
        bound = poly.total_degree * d + d + 2
        prec = default_order(max(d, poly.total_degree))
        while True:
            x, y = br.xy(prec)
            ser = _eval_series(poly, x, y, min(x.prec, y.prec))
            if not ser.is_zero():
                return ser.val, ser.leading()
            if prec > 8 * bound + 64:
                raise VerificationError(
                    "series vanished beyond the Bezout bound: function is zero on a branch")
            prec = 2 * prec + 4

    # -- orders ----------------------------------------------------------
    def ord_poly(self, poly: BiPoly, p: CurvePoint) -> int:
        if poly.total_degree == 0:
            if poly.is_zero():
                raise PreconditionError("zero function")
            return 0
        key = (id(poly), p)
        hit = self._ord_cache.get(key)
        if hit is not None:
            return hit
        if p.is_affine:
            if self.curve.affine(p.x, p.y) != 0:
                raise PreconditionError(f"point {p.label()} not on the curve")
            if poly(p.x, p.y) != 0:
                m = 0
            else:
                from .curves import intersection_multiplicity
                m = intersection_multiplicity(self.curve, poly, p)
                v, _ = self.val_lead(poly, p)
                if v != m:
                    raise VerificationError(
                        f"ord bookkeeping wrong at {p.label()}: reduction gives {m}, series gives {v}")
        else:
            m, _ = self.val_lead(poly, p)
        self._ord_cache[key] = m
        self._keepalive.append(poly)
        return m

    def ord(self, f: FnElt, p: CurvePoint) -> int:
        return sum(e * self.ord_poly(poly, p) for poly, e in f.factors)

    def fn_val_lead(self, f: FnElt, p: CurvePoint) -> Tuple[int, Fraction]:
        """Series valuation and leading coefficient of f along the branch at p."""
        val, lead = 0, f.scalar
        for poly, e in f.factors:
            v, l = self.val_lead(poly, p)
            val += e * v
            lead *= l**e
        return val, lead

    def value(self, f: FnElt, p: CurvePoint) -> Fraction:
        """Value of f at p; requires ord_p(f) = 0 (unit)."""
        if p.is_affine:
            fast = f.scalar
            for poly, e in f.factors:
                v = poly(p.x, p.y)
                if v == 0:
                    break
                fast *= v**e
            else:
                return fast
        v, lead = self.fn_val_lead(f, p)
        if v != 0:
            raise PreconditionError(f"function is not a unit at {p.label()}")
        return lead

    # -- tame symbols -----------------------------------------------------
    def tame(self, pair: SymbolPair, p: CurvePoint) -> Fraction:
        """T_P({f, h}), exact.

        At affine points the orders come from the reduction algorithm and
        the leading coefficients from the branch series; the two routes
        are reconciled factor by factor inside ord_poly, so a mismatch
        surfaces as a VerificationError rather than a wrong certificate.
        """
        f, h = pair.f, pair.h
        vf, lead_f = self.fn_val_lead(f, p)
        vh, lead_h = self.fn_val_lead(h, p)
        m = self.ord(f, p)
        n = self.ord(h, p)
        if (m, n) != (vf, vh):
            raise VerificationError(
                f"ord bookkeeping wrong at {p.label()}: ({m},{n}) vs ({vf},{vh})")
        sign = -1 if (m * n) % 2 else 1
        value = sign * lead_f**n / lead_h**m
        if value == 0:
            raise VerificationError("tame symbol evaluated to zero: contract violation")
        return value

    def tame_element(self, elem: K2Element, p: CurvePoint) -> Fraction:
        total = Fraction(1)
        for pair in elem.terms:
            total *= self.tame(pair, p) ** pair.coefficient
        return total

    # -- divisors ----------------------------------------------------------
    def divisor(self, f: FnElt, candidates: Sequence[CurvePoint]) -> Divisor:
        entries: Dict[CurvePoint, int] = {}
        for p in candidates:
            entries[p] = self.ord(f, p)
        div = Divisor(entries)
        if div.degree() != 0:
            raise NonRationalSupportError(
                f"support incomplete: divisor degree {div.degree()} over candidate points",
                details={"divisor": div.pretty()},
            )
        return div

    def support_candidates(self, fns: Sequence[FnElt],
                           extra: Sequence[CurvePoint] = ()) -> List[CurvePoint]:
        """Rational zero/pole candidates of the given functions."""
        pts: List[CurvePoint] = list(extra)
        seen = set(pts)
        for f in fns:
            for poly, _ in f.factors:
                if poly.total_degree == 0:
                    continue
                zs = rational_common_zeros(self.curve.affine, poly)
                if zs is None:
                    raise VerificationError("degenerate support: shared component with the curve")
                for (x0, y0) in zs:
                    p = CurvePoint.affine(x0, y0)
                    if p not in seen:
                        seen.add(p)
                        pts.append(p)
        for p in self.infinity_points():
            if p not in seen:
                seen.add(p)
                pts.append(p)
        return pts


# ---------------------------------------------------------------------------
# module-level operations (spec surface)
# ---------------------------------------------------------------------------

def ord_at(curve: PlaneCurve, f: FnElt, p: CurvePoint) -> int:
    return SymbolEngine(curve).ord(f, p)


def divisor_of(curve: PlaneCurve, f: FnElt, candidates: Sequence[CurvePoint]) -> Divisor:
    return SymbolEngine(curve).divisor(f, candidates)


def tame_symbol(curve: PlaneCurve, pair: SymbolPair, p: CurvePoint) -> Fraction:
    return SymbolEngine(curve).tame(pair, p)


def verify_k2t(curve: PlaneCurve, elem: K2Element,
               engine: SymbolEngine = None) -> Certificate:
    """Certify that every tame symbol of `elem` over its declared support is 1.

    Also re-checks support completeness (each constituent function must
    have a degree-zero divisor over the declared points) and reports the
    product of all point totals, which reciprocity forces to 1.
    """
    eng = engine or SymbolEngine(curve)
    # support completeness per constituent function
    seen = []
    for pair in elem.terms:
        for f in (pair.f, pair.h):
            if any(f is g for g in seen):
                continue
            seen.append(f)
            if not f.is_constant():
                eng.divisor(f, elem.declared_support)
    rows: List[CertificateRow] = []
    totals: Dict[CurvePoint, Fraction] = {}
    for p in elem.declared_support:
        total = Fraction(1)
        for idx, pair in enumerate(elem.terms):
            mf = eng.ord(pair.f, p)
            mh = eng.ord(pair.h, p)
            val = eng.tame(pair, p) ** pair.coefficient
            rows.append(CertificateRow(p, idx, pair.coefficient, mf, mh, val))
            total *= val
        totals[p] = total
    product = Fraction(1)
    for v in totals.values():
        product *= v
    verdict = "PASS" if all(v == 1 for v in totals.values()) else "FAIL"
    return Certificate(rows, totals, product, verdict)


def construction_torsion(curve: PlaneCurve,
                         t1: TorsionFunction, t2: TorsionFunction, t3: TorsionFunction,
                         engine: SymbolEngine = None,
                         extra_support: Sequence[CurvePoint] = ()) -> List[K2Element]:
    """Build the three symbols S_i from a torsion triple.

    The inputs index as: t_i has divisor m_i (P_(i+1)) - m_i (P_(i-1))
    for the point triple (P_1, P_2, P_3); each shape is re-verified
    before any symbol is formed.  S_i pairs the functions normalized to
    take value 1 at their own index point.
    """
    eng = engine or SymbolEngine(curve)
    tfs = [t1, t2, t3]
    points = [t3.plus, t1.plus, t2.plus]  # P_1, P_2, P_3
    # consistency of the cyclic labelling
    for i, tf in enumerate(tfs, start=1):
        expect_plus = points[i % 3]
        expect_minus = points[(i - 2) % 3]
        if tf.plus != expect_plus or (tf.minus is not None and tf.minus != expect_minus):
            raise PreconditionError("not a torsion triple: divisor endpoints mislabelled")
    candidates = eng.support_candidates([tf.fn for tf in tfs],
                                        extra=list(points) + list(extra_support))
    for tf in tfs:
        verify_torsion_shape(eng, tf, candidates)
    normalized = []
    for i, tf in enumerate(tfs, start=1):
        own_point = points[i - 1]
        val = eng.value(tf.fn, own_point)
        if val == 0:
            raise PreconditionError("torsion function vanishes at its index point")
        normalized.append(tf.fn / val)
    elements = []
    for i in range(1, 4):
        n_plus = normalized[i % 3]         # h_(i+1)/h_(i+1)(P_(i+1))
        n_minus = normalized[(i - 2) % 3]  # h_(i-1)/h_(i-1)(P_(i-1))
        elem = K2Element([SymbolPair(n_plus, n_minus, 1)], list(candidates))
        elements.append(elem)
    return elements


def verify_torsion_shape(eng: SymbolEngine, tf: TorsionFunction,
                         candidates: Sequence[CurvePoint]):
    """Check div(fn) = m (plus) - m (minus) exactly (or poles all at infinity)."""
    div = eng.divisor(tf.fn, candidates)
    nz = div.nonzero()
    if nz.get(tf.plus, 0) != tf.order:
        raise PreconditionError(
            f"not a torsion triple: zero at {tf.plus.label()} has order "
            f"{nz.get(tf.plus, 0)}, expected {tf.order}")
    if tf.minus is not None:
        if nz.get(tf.minus, 0) != -tf.order:
            raise PreconditionError(
                f"not a torsion triple: pole at {tf.minus.label()} has order "
                f"{nz.get(tf.minus, 0)}, expected {-tf.order}")
        stray = {p: v for p, v in nz.items() if p not in (tf.plus, tf.minus)}
    else:
        stray = {p: v for p, v in nz.items()
                 if p != tf.plus and not (v < 0 and not p.is_affine)}
    if stray:
        raise PreconditionError(
            "not a torsion triple: unexpected zeros/poles at "
            + ", ".join(p.label() for p in stray))


def steinberg_values(curve: PlaneCurve, f: FnElt,
                     points: Sequence[CurvePoint] = (),
                     engine: SymbolEngine = None) -> List[Tuple[CurvePoint, Fraction]]:
    """T_p({f, 1-f}) at the given points plus every discovered rational
    zero/pole of f and 1-f.  Each value must be 1 (Steinberg relation);
    values are returned for the caller to assert."""
    eng = engine or SymbolEngine(curve)
    one_minus = FnElt.constant(curve, 1) - f
    pts: List[CurvePoint] = list(points)
    seen = set(pts)
    for g in (f, one_minus):
        for poly, _ in g.factors:
            if poly.total_degree == 0:
                continue
            zs = rational_common_zeros(curve.affine, poly)
            for (x0, y0) in zs or []:
                p = CurvePoint.affine(x0, y0)
                if p not in seen:
                    seen.add(p)
                    pts.append(p)
    for p in eng.infinity_points():
        if p not in seen:
            pts.append(p)
            seen.add(p)
    pair = SymbolPair(f, one_minus, 1)
    return [(p, eng.tame(pair, p)) for p in pts]


def nekovar_element(curve: PlaneCurve,
                    g_poly: BiPoly,
                    h_poly: BiPoly,
                    torsion_data: Sequence[TorsionFunction],
                    kappa: Fraction,
                    h_scale: Fraction = Fraction(1),
                    engine: SymbolEngine = None):
    """Element m*{g/kappa, h} - sum (m/m_i)*{kappa_i, g_i} from contact data.

    `g_poly` and `h_poly` are the affine polynomials of the auxiliary
    curves G and H; the implicit E is the line at infinity (all families
    here have maximal contact between C and L_infinity at one rational
    point, which is verified).  The three hypotheses checked:

    (a) maximal contact of the curve with the line at infinity at a
        single rational point;
    (b) every intersection point of G with the curve is rational and
        comes with a torsion function (divisor shapes re-verified);
    (c) g takes one constant value (up to sign) at every intersection
        point of H with the curve; a sign mix triggers the squaring
        adjustment, which is recorded in the returned metadata.

    Returns (element, info dict).
    """
    eng = engine or SymbolEngine(curve)
    kappa = rat(kappa)
    d = curve.degree
    # (a) maximal contact with the line at infinity at one rational point
    inf_pts, complete = curve.rational_infinity_points()
    if not complete or len(inf_pts) != 1:
        raise PreconditionError("maximal contact hypothesis fails: "
                                "line at infinity must meet the curve in one rational point")
    X0, Y0 = inf_pts[0]
    chart = curve.chart("Y") if Y0 != 0 else curve.chart("X")
    u0 = X0 / Y0 if Y0 != 0 else Fraction(0)
    contact = fulton_multiplicity(
        chart.substitute(BiPoly.x() + BiPoly.const(u0), BiPoly.y()),
        BiPoly.y(),
        bound=d,
    )
    if contact != d:
        raise PreconditionError(
            f"maximal contact hypothesis fails: contact {contact} != degree {d}")
    g = FnElt.poly(curve, g_poly)
    h = FnElt(curve, h_poly * h_scale)
    # (b) intersection of G with the curve: all rational, all with torsion data
    g_points = _full_affine_intersection(eng, g_poly)
    supplied = {tf.plus: tf for tf in torsion_data}
    for (pt, mult) in g_points:
        if pt not in supplied:
            raise NonRationalSupportError(
                f"rational support required: no torsion function at {pt.label()}")
    branches = eng.infinity_points()
    candidates = eng.support_candidates(
        [tf.fn for tf in torsion_data] + [g, h],
        extra=[tf.plus for tf in torsion_data])
    for tf in torsion_data:
        verify_torsion_shape(eng, tf, candidates)
    # (c) constancy of g on H cap C
    h_points = _full_affine_intersection(eng, h_poly)
    values = [(pt, mult, eng.value(g, pt)) for (pt, mult) in h_points]
    target = abs(kappa)
    if any(abs(v) != target for (_, _, v) in values):
        raise PreconditionError(
            "constancy hypothesis fails: g is not constant (up to sign) on H")
    signs = {1 if v > 0 else -1 for (_, _, v) in values}
    power = 1 if len(signs) == 1 else 2
    if power == 1:
        kappa_eff = values[0][2]
    else:
        kappa_eff = values[0][2] ** 2
    g_tilde = g**power / kappa_eff
    m = lcm(*[tf.order for tf in torsion_data])
    base_pair = SymbolPair(g_tilde, h, 1)
    terms = [SymbolPair(g_tilde, h, m)]
    info = {
        "power_adjusted": power == 2,
        "kappa": kappa_eff,
        "m": m,
        "h_pattern": sorted((mult for (_, mult) in h_points), reverse=False),
        "kappa_i": {},
    }
    for tf in torsion_data:
        k_i = eng.tame(base_pair, tf.plus)
        info["kappa_i"][tf.plus] = k_i
        terms.append(SymbolPair(FnElt.constant(curve, k_i), tf.fn, -(m // tf.order)))
    support = list(dict.fromkeys(
        [tf.plus for tf in torsion_data]
        + [pt for (pt, _) in h_points]
        + candidates))
    elem = K2Element(terms, support)
    return elem, info


def _full_affine_intersection(eng: SymbolEngine, poly: BiPoly):
    """All affine intersection points of poly=0 with the curve, with
    multiplicities; raises when irrational points must exist (Bezout gap)."""
    curve = eng.curve
    zs = rational_common_zeros(curve.affine, poly)
    if zs is None:
        raise VerificationError("auxiliary curve shares a component with the curve")
    from .curves import intersection_multiplicity
    out = []
    total = 0
    for (x0, y0) in zs:
        p = CurvePoint.affine(x0, y0)
        mult = intersection_multiplicity(curve, poly, p)
        out.append((p, mult))
        total += mult
    # intersections at infinity, counted through the homogeneous forms
    inf_total = 0
    ph = poly.homogenize()
    for p in eng.infinity_points():
        if p.branch != 0:
            continue
        X, Y, _ = p.projective()
        if ph(X, Y, 0) == 0:
            inf_total += intersection_multiplicity(curve, poly, CurvePoint.at_infinity(X, Y))
    expected = curve.degree * poly.total_degree
    if total + inf_total != expected:
        raise NonRationalSupportError(
            "rational support required: intersection has non-rational points "
            f"(found {total + inf_total} of {expected})")
    return out
